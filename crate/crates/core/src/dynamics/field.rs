use serde::{Deserialize, Serialize};

use crate::clifford::{Bivector, Multivector};

/// Polynomial four-potential of degree at most two:
/// `A(x) = c + x^ν L_ν + x^ν x^ρ Q_νρ` with vector coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PolynomialPotential {
    #[serde(default)]
    pub constant: [f64; 4],
    #[serde(default)]
    pub linear: [[f64; 4]; 4],
    #[serde(default)]
    pub quadratic: [[[f64; 4]; 4]; 4],
}

impl PolynomialPotential {
    fn value(&self, x: &[f64; 4]) -> [f64; 4] {
        let mut a = self.constant;
        for nu in 0..4 {
            for k in 0..4 {
                a[k] += x[nu] * self.linear[nu][k];
                for rho in 0..4 {
                    a[k] += x[nu] * x[rho] * self.quadratic[nu][rho][k];
                }
            }
        }
        a
    }

    /// `∂_ν A` at `x`.
    fn gradient(&self, x: &[f64; 4]) -> [[f64; 4]; 4] {
        let mut d = self.linear;
        for nu in 0..4 {
            for rho in 0..4 {
                for k in 0..4 {
                    d[nu][k] += (self.quadratic[nu][rho][k] + self.quadratic[rho][nu][k]) * x[rho];
                }
            }
        }
        d
    }
}

/// Which external field acts on the particle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum FieldKind {
    /// `A = 0`.
    Free,
    /// Uniform `F` with `A(x) = ½ x·F`.
    Constant { f: [f64; 6] },
    Polynomial(PolynomialPotential),
}

/// External electromagnetic field together with the particle charge.
#[derive(Debug, Clone, PartialEq)]
pub struct EMField {
    pub charge: f64,
    pub kind: FieldKind,
}

impl EMField {
    pub fn free() -> Self {
        EMField {
            charge: 0.0,
            kind: FieldKind::Free,
        }
    }

    pub fn constant(f: Bivector, charge: f64) -> Self {
        EMField {
            charge,
            kind: FieldKind::Constant { f: f.components() },
        }
    }

    pub fn polynomial(p: PolynomialPotential, charge: f64) -> Self {
        EMField {
            charge,
            kind: FieldKind::Polynomial(p),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, FieldKind::Free)
    }

    /// Four-potential `A(x)`.
    pub fn potential(&self, x: &Multivector) -> Multivector {
        match &self.kind {
            FieldKind::Free => Multivector::ZERO,
            FieldKind::Constant { f } => {
                (x.grade(1).inner(Bivector::new(*f).as_multivector()) * 0.5).grade(1)
            }
            FieldKind::Polynomial(p) => Multivector::vector(p.value(&x.vector_components())),
        }
    }

    /// Field bivector `F(x) = ∂ ∧ A`.
    pub fn field_strength(&self, x: &Multivector) -> Bivector {
        match &self.kind {
            FieldKind::Free => Bivector::ZERO,
            FieldKind::Constant { f } => Bivector::new(*f),
            FieldKind::Polynomial(p) => {
                let grad = p.gradient(&x.vector_components());
                let mut f = Multivector::ZERO;
                for (nu, d) in grad.iter().enumerate() {
                    f += Multivector::gamma_up(nu).wedge(&Multivector::vector(*d));
                }
                Bivector::project(&f)
            }
        }
    }

    /// Max coefficient difference between `F(x)` and a central-difference
    /// evaluation of `∂ ∧ A` with spacing `h`.
    pub fn curl_residual(&self, x: &Multivector, h: f64) -> f64 {
        let mut curl = Multivector::ZERO;
        for mu in 0..4 {
            let step = Multivector::gamma(mu) * h;
            let d = (self.potential(&(*x + step)) - self.potential(&(*x - step))) / (2.0 * h);
            curl += Multivector::gamma_up(mu).wedge(&d);
        }
        (curl - *self.field_strength(x).as_multivector()).max_abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_potential_is_consistent() {
        let f = Bivector::new([0.3, -0.2, 0.5, 1.1, 0.0, -0.7]);
        let field = EMField::constant(f, 1.0);
        for x in [[0.0, 0.0, 0.0, 0.0], [1.0, -2.0, 0.5, 3.0], [-0.3, 0.2, 7.0, -1.0]] {
            assert!(field.curl_residual(&Multivector::vector(x), 1e-3) < 1e-6);
        }
    }

    #[test]
    fn polynomial_field_is_consistent() {
        let mut p = PolynomialPotential::default();
        p.constant = [0.1, 0.0, 0.2, 0.0];
        p.linear[1] = [0.0, 0.0, 0.5, 0.0];
        p.linear[2] = [0.0, -0.5, 0.0, 0.3];
        p.quadratic[0][3] = [0.0, 0.2, 0.0, 0.0];
        p.quadratic[1][1] = [0.1, 0.0, 0.0, -0.4];
        let field = EMField::polynomial(p, -1.0);
        for x in [[0.5, 0.0, 1.0, 0.0], [1.0, -2.0, 0.5, 3.0]] {
            assert!(field.curl_residual(&Multivector::vector(x), 1e-4) < 1e-6);
        }
    }

    #[test]
    fn free_field_vanishes() {
        let f = EMField::free();
        let x = Multivector::vector([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(f.potential(&x), Multivector::ZERO);
        assert_eq!(f.field_strength(&x), Bivector::ZERO);
    }
}
