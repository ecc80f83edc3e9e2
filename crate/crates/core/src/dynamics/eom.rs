use serde::{Deserialize, Serialize};

use super::field::EMField;
use crate::clifford::{Bivector, Multivector};
use crate::spinor::{psi_to_z, spin_density, velocity_bilinear, DHSpinor};

/// Phase point of the spinning particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BZState {
    pub tau: f64,
    /// Position vector.
    pub x: Multivector,
    /// Kinetic momentum `π = p - eA`.
    pub pi: Multivector,
    pub psi: DHSpinor,
}

impl BZState {
    pub fn new(tau: f64, x: Multivector, pi: Multivector, psi: DHSpinor) -> Self {
        BZState { tau, x, pi, psi }
    }

    pub fn is_finite(&self) -> bool {
        self.tau.is_finite() && self.x.is_finite() && self.pi.is_finite() && self.psi.is_finite()
    }

    /// `self + h * d`, advancing τ by `h`.
    pub fn advanced(&self, d: &Derivative, h: f64) -> BZState {
        BZState {
            tau: self.tau + h,
            x: self.x + d.dx * h,
            pi: self.pi + d.dpi * h,
            psi: DHSpinor::from_even_part(&(*self.psi.as_multivector() + d.dpsi * h)),
        }
    }
}

/// Right-hand side of the equations of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub dx: Multivector,
    pub dpi: Multivector,
    pub dpsi: Multivector,
}

impl Derivative {
    pub fn combine(k: [&Derivative; 4], w: [f64; 4]) -> Derivative {
        let mut out = Derivative {
            dx: Multivector::ZERO,
            dpi: Multivector::ZERO,
            dpsi: Multivector::ZERO,
        };
        for (d, c) in k.iter().zip(w) {
            out.dx += d.dx * c;
            out.dpi += d.dpi * c;
            out.dpsi += d.dpsi * c;
        }
        out
    }
}

/// `γ0 γ1 γ2`: `ψ̇ γ1γ2 + πψγ0 = 0` solves to `ψ̇ = π ψ γ0 γ1 γ2`.
fn g012() -> Multivector {
    Multivector::blade(11)
}

/// Equations of motion:
/// `ψ̇ γ1γ2 + π ψ γ0 = 0`, `ẋ = ψ γ0 ψ̃`, `π̇ = e F · ẋ`.
pub fn eom_derivatives(s: &BZState, field: &EMField) -> Derivative {
    let psi = s.psi.as_multivector();
    let dx = velocity_bilinear(&s.psi);
    let dpsi = s.pi.gp(psi).gp(&g012()).even();
    let dpi = if field.is_free() {
        Multivector::ZERO
    } else {
        (field.field_strength(&s.x).as_multivector().inner(&dx) * field.charge).grade(1)
    };
    Derivative { dx, dpi, dpsi }
}

/// Residual of `ψ̇ γ1γ2 + π ψ γ0` for a given derivative.
pub fn spinor_equation_residual(psi: &Multivector, dpsi: &Multivector, pi: &Multivector) -> Multivector {
    let g12 = Multivector::blade(8);
    dpsi.gp(&g12) + pi.gp(psi).gp(&Multivector::gamma(0))
}

/// Constants of motion and related bilinears at one phase point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conserved {
    /// `H = ⟨π v⟩_0`.
    pub h: f64,
    /// `p²` with `p = π + eA`.
    pub p2: f64,
    /// `J_μν = x_μ π_ν - x_ν π_μ + S_μν`.
    pub j: [[f64; 4]; 4],
    /// `z̄ z` of the column spinor.
    pub zbarz: f64,
}

/// Conserved quantities and bilinears at `s`.
pub fn conserved_quantities(s: &BZState, field: &EMField) -> Conserved {
    let v = velocity_bilinear(&s.psi);
    let h = s.pi.scalar_product(&v);
    let p = canonical_momentum(s, field);
    let p2 = p.scalar_product(&p);
    let s_t = spin_density(&s.psi).tensor();
    let l_t = Bivector::from_wedge(&s.x, &s.pi).tensor();
    let mut j = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            j[mu][nu] = l_t[mu][nu] + s_t[mu][nu];
        }
    }
    let zbarz = psi_to_z(&s.psi).scalar_density();
    Conserved { h, p2, j, zbarz }
}

/// `p = π + eA(x)`.
pub fn canonical_momentum(s: &BZState, field: &EMField) -> Multivector {
    s.pi + field.potential(&s.x) * field.charge
}
