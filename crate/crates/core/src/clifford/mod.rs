//! Real Clifford algebra Cl(1,3), signature (+,-,-,-).
//!
//! A [`Multivector`] is 16 real coefficients in the canonical blade order
//! documented in [`table`]. That order (and the sign table derived from it) is
//! also the serialisation contract: a multivector on disk is 16 numbers in this
//! order, a spinor the 8 even ones listed in [`table::EVEN_BLADES`].

pub mod matrix;
pub mod table;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use matrix::{from_matrix, inverse, matrix_rep, MatrixRep};
use table::{BIVECTOR_BLADES, BIVECTOR_PAIRS, DIM, GRADES, PRODUCT_TABLE};

/// General element of Cl(1,3).
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Multivector([f64; DIM]);

impl Multivector {
    pub const ZERO: Multivector = Multivector([0.0; DIM]);
    pub const ONE: Multivector = {
        let mut c = [0.0; DIM];
        c[0] = 1.0;
        Multivector(c)
    };

    pub const fn new(coeffs: [f64; DIM]) -> Self {
        Multivector(coeffs)
    }

    pub fn coeffs(&self) -> &[f64; DIM] {
        &self.0
    }

    pub fn scalar(s: f64) -> Self {
        let mut c = [0.0; DIM];
        c[0] = s;
        Multivector(c)
    }

    /// Unit blade with canonical index `k`.
    pub fn blade(k: usize) -> Self {
        let mut c = [0.0; DIM];
        c[k] = 1.0;
        Multivector(c)
    }

    /// Basis vector `γ_μ`.
    pub fn gamma(mu: usize) -> Self {
        Self::blade(mu + 1)
    }

    /// Reciprocal basis vector `γ^μ = η^μν γ_ν`.
    pub fn gamma_up(mu: usize) -> Self {
        Self::gamma(mu) * table::METRIC[mu]
    }

    /// Pseudoscalar `γ5 = γ0 γ1 γ2 γ3`.
    pub fn pseudoscalar() -> Self {
        Self::blade(15)
    }

    /// Vector `a^μ γ_μ` from its contravariant components.
    pub fn vector(a: [f64; 4]) -> Self {
        let mut c = [0.0; DIM];
        c[1..5].copy_from_slice(&a);
        Multivector(c)
    }

    /// Contravariant components `a^μ` of the grade-1 part.
    pub fn vector_components(&self) -> [f64; 4] {
        [self.0[1], self.0[2], self.0[3], self.0[4]]
    }

    /// Covariant components `a_μ = a · γ_μ` of the grade-1 part.
    pub fn lower_components(&self) -> [f64; 4] {
        let a = self.vector_components();
        [a[0], -a[1], -a[2], -a[3]]
    }

    pub fn scalar_part(&self) -> f64 {
        self.0[0]
    }

    pub fn pseudoscalar_part(&self) -> f64 {
        self.0[15]
    }

    /// Grade-`k` projection `⟨A⟩_k`; zero for `k > 4`.
    pub fn grade(&self, k: usize) -> Self {
        let mut c = [0.0; DIM];
        for i in 0..DIM {
            if GRADES[i] as usize == k {
                c[i] = self.0[i];
            }
        }
        Multivector(c)
    }

    /// Even part (grades 0, 2 and 4).
    pub fn even(&self) -> Self {
        let mut c = self.0;
        for (i, v) in c.iter_mut().enumerate() {
            if GRADES[i] % 2 == 1 {
                *v = 0.0;
            }
        }
        Multivector(c)
    }

    /// Largest magnitude among coefficients of grade `k`.
    pub fn grade_max_abs(&self, k: usize) -> f64 {
        (0..DIM)
            .filter(|&i| GRADES[i] as usize == k)
            .map(|i| self.0[i].abs())
            .fold(0.0, f64::max)
    }

    /// Reversion: the grade-`k` part is multiplied by `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        let mut c = self.0;
        for (i, v) in c.iter_mut().enumerate() {
            if matches!(GRADES[i], 2 | 3) {
                *v = -*v;
            }
        }
        Multivector(c)
    }

    /// Geometric product.
    pub fn gp(&self, other: &Multivector) -> Multivector {
        let mut out = [0.0; DIM];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let row = &PRODUCT_TABLE.entries[i];
            for (j, &b) in other.0.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let e = row[j];
                out[e.index as usize] += e.sign as f64 * a * b;
            }
        }
        Multivector(out)
    }

    /// Grade-wise product keeping `⟨A_r B_s⟩_g` with `g = select(r, s)`.
    fn graded_product(&self, other: &Multivector, select: impl Fn(u8, u8) -> Option<u8>) -> Self {
        let mut out = [0.0; DIM];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let e = PRODUCT_TABLE.get(i, j);
                if select(GRADES[i], GRADES[j]) == Some(GRADES[e.index as usize]) {
                    out[e.index as usize] += e.sign as f64 * a * b;
                }
            }
        }
        Multivector(out)
    }

    /// Inner product, `⟨A_r B_s⟩_{|r-s|}` extended bilinearly.
    pub fn inner(&self, other: &Multivector) -> Self {
        self.graded_product(other, |r, s| Some(r.abs_diff(s)))
    }

    /// Outer product, `⟨A_r B_s⟩_{r+s}` extended bilinearly.
    pub fn wedge(&self, other: &Multivector) -> Self {
        self.graded_product(other, |r, s| (r + s <= 4).then_some(r + s))
    }

    /// Scalar product `⟨A B⟩_0`.
    pub fn scalar_product(&self, other: &Multivector) -> f64 {
        let mut s = 0.0;
        for i in 0..DIM {
            // blade_i * blade_j is scalar only for j == i
            s += PRODUCT_TABLE.square_sign(i) as f64 * self.0[i] * other.0[i];
        }
        s
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// `a R̃`-style sandwich `self * x * reverse(self)`.
    pub fn sandwich(&self, x: &Multivector) -> Multivector {
        self.gp(x).gp(&self.reverse())
    }

    pub fn inverse(&self) -> Result<Multivector> {
        matrix::inverse(self)
    }

    pub fn matrix_rep(&self) -> MatrixRep {
        matrix::matrix_rep(self)
    }
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}", table::BLADE_NAMES[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        for a in self.0.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, rhs: f64) -> Multivector {
        for a in self.0.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, rhs: f64) -> Multivector {
        self * (1.0 / rhs)
    }
}

/// Grade-2 element.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bivector(Multivector);

impl Bivector {
    pub const ZERO: Bivector = Bivector(Multivector::ZERO);

    /// From coefficients on γ01 γ02 γ03 γ12 γ13 γ23.
    pub fn new(b: [f64; 6]) -> Self {
        let mut c = [0.0; DIM];
        for (k, &idx) in BIVECTOR_BLADES.iter().enumerate() {
            c[idx] = b[k];
        }
        Bivector(Multivector(c))
    }

    /// Grade-2 projection of `m`.
    pub fn project(m: &Multivector) -> Self {
        Bivector(m.grade(2))
    }

    /// `a ∧ b` for two vectors.
    pub fn from_wedge(a: &Multivector, b: &Multivector) -> Self {
        Bivector(a.grade(1).wedge(&b.grade(1)))
    }

    pub fn components(&self) -> [f64; 6] {
        let mut b = [0.0; 6];
        for (k, &idx) in BIVECTOR_BLADES.iter().enumerate() {
            b[k] = self.0[idx];
        }
        b
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn into_multivector(self) -> Multivector {
        self.0
    }

    /// Lowered tensor components `B_μν = B · (γ_ν ∧ γ_μ)`, so that for
    /// `B = a ∧ b` one gets `B_μν = a_μ b_ν - a_ν b_μ`.
    pub fn tensor(&self) -> [[f64; 4]; 4] {
        let mut t = [[0.0; 4]; 4];
        for (k, &(mu, nu)) in BIVECTOR_PAIRS.iter().enumerate() {
            // γ_ν ∧ γ_μ = -γ_μν; the blade square supplies the index lowering.
            let idx = BIVECTOR_BLADES[k];
            let v = -(PRODUCT_TABLE.square_sign(idx) as f64) * self.0[idx];
            t[mu][nu] = v;
            t[nu][mu] = -v;
        }
        t
    }

    /// Scalar `⟨B B⟩_0`.
    pub fn square_scalar(&self) -> f64 {
        self.0.scalar_product(&self.0)
    }
}

impl fmt::Debug for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bivector({})", self.0)
    }
}

impl From<Bivector> for Multivector {
    fn from(b: Bivector) -> Multivector {
        b.0
    }
}

impl Add for Bivector {
    type Output = Bivector;
    fn add(self, rhs: Bivector) -> Bivector {
        Bivector(self.0 + rhs.0)
    }
}

impl Sub for Bivector {
    type Output = Bivector;
    fn sub(self, rhs: Bivector) -> Bivector {
        Bivector(self.0 - rhs.0)
    }
}

impl Mul<f64> for Bivector {
    type Output = Bivector;
    fn mul(self, rhs: f64) -> Bivector {
        Bivector(self.0 * rhs)
    }
}

/// Default series tolerance for [`exp_bivector`].
pub const EXP_DEFAULT_TOL: f64 = 1e-14;
/// Maximum number of series terms for [`exp_bivector`].
pub const EXP_MAX_TERMS: usize = 64;

/// Exponential of a bivector.
///
/// When `B²` is a scalar the trigonometric / hyperbolic closed form is used.
/// Otherwise the power series is summed (after scaling `B` down by a power of
/// two and squaring back up) until the term norm drops below `tol`.
pub fn exp_bivector(b: &Bivector, tol: f64) -> Result<Multivector> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("must be positive, got {tol}"),
        });
    }
    let bm = b.0;
    let sq = bm.gp(&bm);
    let non_scalar = (sq - Multivector::scalar(sq.scalar_part())).max_abs();
    if non_scalar <= tol * sq.max_abs().max(1.0) {
        let s = sq.scalar_part();
        let theta = s.abs().sqrt();
        let (c, k) = if theta < 1e-300 {
            (1.0, 1.0)
        } else if s < 0.0 {
            (theta.cos(), theta.sin() / theta)
        } else {
            (theta.cosh(), theta.sinh() / theta)
        };
        return Ok(Multivector::scalar(c) + bm * k);
    }

    let norm = bm.norm();
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = bm * scale;
    let mut sum = Multivector::ONE;
    let mut term = Multivector::ONE;
    let mut converged = false;
    for n in 1..EXP_MAX_TERMS {
        term = term.gp(&x) / n as f64;
        sum += term;
        if term.norm() < tol {
            converged = true;
            break;
        }
    }
    if !converged || !sum.is_finite() {
        return Err(Error::Divergence {
            terms: EXP_MAX_TERMS,
        });
    }
    for _ in 0..squarings {
        sum = sum.gp(&sum);
    }
    Ok(sum.even())
}
