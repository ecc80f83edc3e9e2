//! Closed-form free-particle solutions.

use nalgebra::RowVector4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::matrix::{dirac_gammas, CMatrix4};
use crate::clifford::{exp_bivector, Bivector, Multivector, EXP_DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::spinor::{velocity_bilinear, DHSpinor, DiracSpinorZ};

/// Absolute tolerance on `p² = m²`.
pub const MASS_SHELL_TOL: f64 = 1e-9;

pub fn check_mass_shell(p: &Multivector, m: f64) -> Result<()> {
    let p2 = p.scalar_product(p);
    if !(m > 0.0) || (p2 - m * m).abs() > MASS_SHELL_TOL || p.vector_components()[0] <= 0.0 {
        return Err(Error::MassShell { p2, m2: m * m });
    }
    Ok(())
}

/// `p̸ = 𝛄_μ p^μ` as a Dirac matrix.
pub fn slash(p: &Multivector) -> CMatrix4 {
    let g = dirac_gammas();
    let c = p.vector_components();
    let mut out = CMatrix4::zeros();
    for mu in 0..4 {
        out += g[mu] * Complex64::new(c[mu], 0.0);
    }
    out
}

/// `z(τ) = [cos mτ - i (p̸/m) sin mτ] z0`.
pub fn analytic_free_z(z0: &DiracSpinorZ, p: &Multivector, m: f64, tau: f64) -> Result<DiracSpinorZ> {
    check_mass_shell(p, m)?;
    let (s, c) = (m * tau).sin_cos();
    let op = CMatrix4::identity() * Complex64::new(c, 0.0) - slash(p) * Complex64::new(0.0, s / m);
    Ok(DiracSpinorZ::from_column(&(op * z0.column())))
}

/// `z̄(τ) = z̄0 [cos mτ + i (p̸/m) sin mτ]`.
pub fn analytic_free_zbar(
    z0: &DiracSpinorZ,
    p: &Multivector,
    m: f64,
    tau: f64,
) -> Result<RowVector4<Complex64>> {
    check_mass_shell(p, m)?;
    let (s, c) = (m * tau).sin_cos();
    let op = CMatrix4::identity() * Complex64::new(c, 0.0) + slash(p) * Complex64::new(0.0, s / m);
    Ok(z0.adjoint() * op)
}

/// `ψ(τ) = ψ0 cos mτ + (p ψ0 γ0γ1γ2 / m) sin mτ`.
pub fn analytic_free_psi(psi0: &DHSpinor, p: &Multivector, m: f64, tau: f64) -> Result<DHSpinor> {
    check_mass_shell(p, m)?;
    let (s, c) = (m * tau).sin_cos();
    let psi = psi0.as_multivector();
    let turned = p.gp(psi).gp(&Multivector::blade(11));
    Ok(DHSpinor::from_even_part(&(*psi * c + turned * (s / m))))
}

/// `v(τ) = Hp/m² + (v0 - Hp/m²) cos 2mτ + (a0 / 2m) sin 2mτ`.
pub fn analytic_free_velocity(
    v0: &Multivector,
    a0: &Multivector,
    p: &Multivector,
    m: f64,
    h: f64,
    tau: f64,
) -> Multivector {
    let drift = *p * (h / (m * m));
    let (s, c) = (2.0 * m * tau).sin_cos();
    drift + (*v0 - drift) * c + *a0 * (s / (2.0 * m))
}

/// Initial data `(v0, a0, H)` for [`analytic_free_velocity`] from a spinor and
/// a free momentum.
pub fn free_velocity_data(psi0: &DHSpinor, p: &Multivector) -> (Multivector, Multivector, f64) {
    let psi = psi0.as_multivector();
    let v0 = velocity_bilinear(psi0);
    let dpsi = p.gp(psi).gp(&Multivector::blade(11));
    let g0 = Multivector::gamma(0);
    let a0 = (dpsi.gp(&g0).gp(&psi.reverse()) + psi.gp(&g0).gp(&dpsi.reverse())).grade(1);
    (v0, a0, p.scalar_product(&v0))
}

/// `ψ(τ) = exp(-γ2γ1 m τ) = cos mτ + γ1γ2 sin mτ`, the solution for `ψ(0) = 1`,
/// `p = m γ0`.
pub fn trivial_solution(m: f64, tau: f64) -> DHSpinor {
    let (s, c) = (m * tau).sin_cos();
    DHSpinor::from_even_part(&(Multivector::scalar(c) + Multivector::blade(8) * s))
}

/// `(cosh w)^{-1/2} exp(γ0γ1 w / 2)`: with `p = m γ0` the orbit is a circle of
/// radius `tanh w / 2m` traversed at `H = m`.
pub fn circular_helix_spinor(rapidity: f64) -> Result<DHSpinor> {
    let boost = exp_bivector(
        &Bivector::new([rapidity / 2.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        EXP_DEFAULT_TOL,
    )?;
    Ok(DHSpinor::from_even_part(&(boost / rapidity.cosh().sqrt())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HelixVariant {
    /// `u = e0 - e2`.
    LightLike,
    /// `u = e0 - e1 - e2`.
    SpaceLike,
}

/// Point on the electron helix and its rotating frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixPoint {
    pub tau: f64,
    /// `e0 = γ0`, `e1`, `e2` rotating at `2m` in the γ1γ2 plane, `e3 = γ3`.
    pub frame: [Multivector; 4],
    /// Tangent `u = dζ/dτ`.
    pub u: Multivector,
    pub zeta: Multivector,
    /// `R_H(τ)`, the helix radius vector.
    pub radius_vector: Multivector,
    /// `|R_H|`.
    pub radius: f64,
}

fn rotating_frame(m: f64, tau: f64) -> [Multivector; 4] {
    let (s, c) = (2.0 * m * tau).sin_cos();
    let g = Multivector::gamma;
    [g(0), g(1) * c + g(2) * s, g(2) * c - g(1) * s, g(3)]
}

fn helix_radius(variant: HelixVariant, m: f64, frame: &[Multivector; 4]) -> Multivector {
    match variant {
        HelixVariant::LightLike => frame[1] * (-1.0 / (2.0 * m)),
        HelixVariant::SpaceLike => (frame[2] - frame[1]) / (2.0 * m),
    }
}

/// `ζ(τ) = ζ0 + γ0 τ + R_H(τ) - R_H(0)` on the light-like or space-like helix.
pub fn lightlike_helix(
    m: f64,
    zeta0: &Multivector,
    tau: f64,
    variant: HelixVariant,
) -> Result<HelixPoint> {
    if !(m > 0.0) {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("mass must be positive, got {m}"),
        });
    }
    let frame = rotating_frame(m, tau);
    let r = helix_radius(variant, m, &frame);
    let r0 = helix_radius(variant, m, &rotating_frame(m, 0.0));
    let u = match variant {
        HelixVariant::LightLike => frame[0] - frame[2],
        HelixVariant::SpaceLike => frame[0] - frame[1] - frame[2],
    };
    Ok(HelixPoint {
        tau,
        frame,
        u,
        zeta: *zeta0 + Multivector::gamma(0) * tau + r - r0,
        radius_vector: r,
        radius: (-r.scalar_product(&r)).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::{psi_to_z, z_to_psi};

    fn boosted_p(m: f64, w: f64) -> Multivector {
        Multivector::vector([m * w.cosh(), 0.0, 0.0, m * w.sinh()])
    }

    #[test]
    fn off_shell_rejected() {
        let z0 = DiracSpinorZ::from_re_im([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let r = analytic_free_z(&z0, &Multivector::gamma(0), 2.0, 0.1);
        assert!(matches!(r, Err(Error::MassShell { .. })));
    }

    #[test]
    fn z_and_psi_solutions_agree() {
        let m = 1.0;
        let p = boosted_p(m, 0.4);
        let z0 = DiracSpinorZ::from_re_im([0.6, 0.1, -0.2, 0.3, 0.2, -0.4, 0.1, 0.05]);
        let psi0 = z_to_psi(&z0).unwrap();
        for tau in [0.0, 0.3, 1.7, 4.0] {
            let z = analytic_free_z(&z0, &p, m, tau).unwrap();
            let from_psi = psi_to_z(&analytic_free_psi(&psi0, &p, m, tau).unwrap());
            assert!(z.max_abs_diff(&from_psi) < 1e-13, "tau {tau}");
        }
    }

    #[test]
    fn zbar_is_adjoint_of_z() {
        let p = boosted_p(1.0, 0.7);
        let z0 = DiracSpinorZ::from_re_im([0.3, 0.1, 0.2, 0.3, 0.0, -0.4, 0.1, 0.5]);
        let z = analytic_free_z(&z0, &p, 1.0, 0.9).unwrap();
        let zbar = analytic_free_zbar(&z0, &p, 1.0, 0.9).unwrap();
        assert!((z.adjoint() - zbar).iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn trivial_solution_at_zero_is_one() {
        assert_eq!(*trivial_solution(1.0, 0.0).as_multivector(), Multivector::ONE);
    }

    #[test]
    fn velocity_closed_form_matches_bilinear() {
        let m = 1.0;
        let p = Multivector::gamma(0);
        let psi0 = DHSpinor::from_components([0.7, 0.1, -0.2, 0.05, 0.3, 0.2, -0.1, 0.15]);
        let (v0, a0, h) = free_velocity_data(&psi0, &p);
        for tau in [0.1, 1.0, 2.5] {
            let psi = analytic_free_psi(&psi0, &p, m, tau).unwrap();
            let v = analytic_free_velocity(&v0, &a0, &p, m, h, tau);
            assert!((v - velocity_bilinear(&psi)).max_abs() < 1e-13);
        }
    }

    #[test]
    fn circular_helix_has_unit_energy() {
        let psi = circular_helix_spinor(0.8).unwrap();
        let (_, _, h) = free_velocity_data(&psi, &Multivector::gamma(0));
        assert!((h - 1.0).abs() < 1e-14);
    }

    #[test]
    fn helix_tangent_and_radius() {
        let m = 0.5;
        for (variant, norm, radius) in [
            (HelixVariant::LightLike, 0.0, 1.0),
            (HelixVariant::SpaceLike, -1.0, 2f64.sqrt()),
        ] {
            let h = 1e-5;
            let a = lightlike_helix(m, &Multivector::ZERO, 1.2 - h, variant).unwrap();
            let b = lightlike_helix(m, &Multivector::ZERO, 1.2 + h, variant).unwrap();
            let mid = lightlike_helix(m, &Multivector::ZERO, 1.2, variant).unwrap();
            let fd = (b.zeta - a.zeta) / (2.0 * h);
            assert!((fd - mid.u).max_abs() < 1e-9);
            assert!((mid.u.scalar_product(&mid.u) - norm).abs() < 1e-14);
            assert!((mid.radius - radius / (2.0 * m)).abs() < 1e-14);
        }
        let z0 = Multivector::vector([1.0, 2.0, 3.0, 4.0]);
        let start = lightlike_helix(1.0, &z0, 0.0, HelixVariant::LightLike).unwrap();
        assert_eq!(start.zeta, z0);
    }
}
