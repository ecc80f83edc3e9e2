//! Dirac–Hestenes spinors and their translation to column Dirac spinors.
//!
//! A column spinor `z = (z1, z2, z3, z4)` corresponds to the even multivector
//! `ψ` whose Dirac matrix is
//!
//! ```text
//! | z1  -z2*  z3   z4* |
//! | z2   z1*  z4  -z3* |
//! | z3   z4*  z1  -z2* |
//! | z4  -z3*  z2   z1* |
//! ```
//!
//! so `z` is the first column of `ψ`, i.e. of `ψ ε` with `ε = (1 + γ0)/2`.
//!
//! Spin tensor convention: the Clifford spin bivector `S = ½ ψ γ2γ1 ψ̃` has
//! lowered components `S_μν` (see [`Bivector::tensor`]), and these satisfy
//! `Ṡ_μν = π_μ v_ν - π_ν v_μ`, `v̇_μ = 4 S_μν π^ν`. The column-spinor expression
//! `¼ i z̄ [𝛄_μ, 𝛄_ν] z` ([`spin_tensor`]) equals `-S_μν` for every `z`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::matrix::{dirac_gammas, CMatrix4};
use crate::clifford::table::EVEN_BLADES;
use crate::clifford::{from_matrix, matrix_rep, Bivector, MatrixRep, Multivector};
use crate::error::{Error, Result};

/// Tolerance on odd-grade residue when accepting a multivector as a spinor.
const EVEN_TOL: f64 = 1e-10;
/// Tolerance on `R R̃ = 1`.
pub const ROTOR_TOL: f64 = 1e-10;

/// Even-grade multivector `ψ = ρ^{1/2} e^{βγ5/2} R`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DHSpinor(Multivector);

impl DHSpinor {
    /// Accepts `m` if its odd part is negligible; the odd residue is dropped.
    pub fn new(m: Multivector) -> Result<Self> {
        let odd = (m - m.even()).max_abs();
        if odd > EVEN_TOL * m.max_abs().max(1.0) {
            return Err(Error::Representation { residual: odd });
        }
        Ok(DHSpinor(m.even()))
    }

    /// Even projection of `m`, without checking the discarded part.
    pub fn from_even_part(m: &Multivector) -> Self {
        DHSpinor(m.even())
    }

    /// From the 8 even coefficients (1, γ01, γ02, γ03, γ12, γ13, γ23, γ0123).
    pub fn from_components(c: [f64; 8]) -> Self {
        let mut full = [0.0; 16];
        for (k, &idx) in EVEN_BLADES.iter().enumerate() {
            full[idx] = c[k];
        }
        DHSpinor(Multivector::new(full))
    }

    pub fn components(&self) -> [f64; 8] {
        let mut c = [0.0; 8];
        for (k, &idx) in EVEN_BLADES.iter().enumerate() {
            c[k] = self.0[idx];
        }
        c
    }

    /// Build `ρ^{1/2} e^{βγ5/2} R`.
    pub fn from_parts(rho: f64, beta: f64, rotor: &Multivector) -> Self {
        let phase = Multivector::scalar((beta / 2.0).cos())
            + Multivector::pseudoscalar() * (beta / 2.0).sin();
        DHSpinor((phase * *rotor * rho.sqrt()).even())
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn reverse(&self) -> Multivector {
        self.0.reverse()
    }

    /// `ψ ψ̃ = ρ e^{βγ5}`.
    pub fn density(&self) -> Multivector {
        self.0.gp(&self.0.reverse())
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

impl From<DHSpinor> for Multivector {
    fn from(p: DHSpinor) -> Multivector {
        p.0
    }
}

/// Column Dirac spinor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracSpinorZ {
    pub z: [Complex64; 4],
}

impl DiracSpinorZ {
    pub fn new(z: [Complex64; 4]) -> Self {
        DiracSpinorZ { z }
    }

    /// From `[re1, im1, re2, im2, re3, im3, re4, im4]`.
    pub fn from_re_im(v: [f64; 8]) -> Self {
        let z = std::array::from_fn(|k| Complex64::new(v[2 * k], v[2 * k + 1]));
        DiracSpinorZ { z }
    }

    pub fn zero() -> Self {
        DiracSpinorZ {
            z: [Complex64::new(0.0, 0.0); 4],
        }
    }

    pub fn column(&self) -> nalgebra::Vector4<Complex64> {
        nalgebra::Vector4::new(self.z[0], self.z[1], self.z[2], self.z[3])
    }

    pub fn from_column(c: &nalgebra::Vector4<Complex64>) -> Self {
        DiracSpinorZ {
            z: [c[0], c[1], c[2], c[3]],
        }
    }

    /// Dirac adjoint `z̄ = z† 𝛄0` as a row.
    pub fn adjoint(&self) -> nalgebra::RowVector4<Complex64> {
        self.column().adjoint() * dirac_gammas()[0]
    }

    /// `z̄ M z`.
    pub fn bilinear(&self, m: &CMatrix4) -> Complex64 {
        (self.adjoint() * m * self.column())[(0, 0)]
    }

    /// `z̄ z`.
    pub fn scalar_density(&self) -> f64 {
        self.bilinear(&CMatrix4::identity()).re
    }

    pub fn max_abs_diff(&self, other: &DiracSpinorZ) -> f64 {
        self.z
            .iter()
            .zip(other.z.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Primitive idempotent used to carry column spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Idempotent(Multivector);

impl Idempotent {
    /// `ε = ½(1 + γ0)`.
    pub fn dirac() -> Self {
        Idempotent((Multivector::ONE + Multivector::gamma(0)) * 0.5)
    }

    pub fn new(eps: Multivector) -> Result<Self> {
        let residual = (eps.gp(&eps) - eps).max_abs();
        if residual > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "eps",
                reason: format!("not idempotent (residual {residual:.3e})"),
            });
        }
        Ok(Idempotent(eps))
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }
}

/// Dirac matrix of the spinor built from `z`.
pub fn z_matrix(z: &DiracSpinorZ) -> CMatrix4 {
    let [z1, z2, z3, z4] = z.z;
    let c = |w: Complex64| w.conj();
    #[rustfmt::skip]
    let m = CMatrix4::new(
        z1, -c(z2), z3, c(z4),
        z2, c(z1), z4, -c(z3),
        z3, c(z4), z1, -c(z2),
        z4, -c(z3), z2, c(z1),
    );
    m
}

/// Column spinor to Dirac–Hestenes spinor.
pub fn z_to_psi(z: &DiracSpinorZ) -> Result<DHSpinor> {
    let mv = from_matrix(&MatrixRep(z_matrix(z)))?;
    DHSpinor::new(mv)
}

/// Dirac–Hestenes spinor to column spinor: first column of its matrix.
pub fn psi_to_z(psi: &DHSpinor) -> DiracSpinorZ {
    let m = matrix_rep(psi.as_multivector()).0;
    DiracSpinorZ::from_column(&m.column(0).into_owned())
}

/// Result of splitting `ψ = ρ^{1/2} e^{βγ5/2} R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorParts {
    pub rho: f64,
    pub beta: f64,
    pub rotor: Multivector,
}

/// Relative size below which `ψ ψ̃` counts as zero.
const SINGULAR_TOL: f64 = 1e-12;

/// Split a spinor into density, Yvon–Takabayasi angle `β ∈ (-π, π]`, and rotor.
pub fn rotor_decompose(psi: &DHSpinor) -> Result<RotorParts> {
    let m = psi.as_multivector();
    let d = psi.density();
    let a = d.scalar_part();
    let b = d.pseudoscalar_part();
    let rho = a.hypot(b);
    let scale = m.norm() * m.norm();
    if !(rho > SINGULAR_TOL * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::SingularSpinor { norm: rho });
    }
    let beta = b.atan2(a);
    let unphase = Multivector::scalar((beta / 2.0).cos())
        - Multivector::pseudoscalar() * (beta / 2.0).sin();
    let rotor = (unphase * *m / rho.sqrt()).even();
    Ok(RotorParts { rho, beta, rotor })
}

/// Rate of change `Ṙ` of the rotor factor of `ψ = ρ^{1/2} e^{βγ5/2} R` given
/// `ψ̇`. With `φ = ρ^{1/2} e^{βγ5/2}`: `φ̇ = (ψ̇ψ̃ + ψψ̇~) φ⁻¹ / 2` and
/// `Ṙ = φ⁻¹ (ψ̇ - φ̇ R)`.
pub fn rotor_rate(psi: &DHSpinor, dpsi: &Multivector) -> Result<(Multivector, Multivector)> {
    let parts = rotor_decompose(psi)?;
    let m = psi.as_multivector();
    let (hs, hc) = (parts.beta / 2.0).sin_cos();
    let sqrt_rho = parts.rho.sqrt();
    let phi_inv = (Multivector::scalar(hc) - Multivector::pseudoscalar() * hs) / sqrt_rho;
    let dd = dpsi.gp(&m.reverse()) + m.gp(&dpsi.reverse());
    let dphi = dd.gp(&phi_inv) * 0.5;
    let dr = phi_inv.gp(&(*dpsi - dphi.gp(&parts.rotor))).even();
    Ok((parts.rotor, dr))
}

/// `|R R̃ - 1|` measured as max coefficient.
pub fn rotor_residual(r: &Multivector) -> f64 {
    (r.gp(&r.reverse()) - Multivector::ONE).max_abs()
}

/// `ψ γ0 ψ̃`.
pub fn velocity_bilinear(psi: &DHSpinor) -> Multivector {
    psi.as_multivector()
        .sandwich(&Multivector::gamma(0))
        .grade(1)
}

/// Contravariant Dirac current `v^μ = z̄ 𝛄^μ z`, computed directly from the
/// column spinor with Dirac matrices.
pub fn dirac_current(z: &DiracSpinorZ) -> [f64; 4] {
    let g = dirac_gammas();
    let metric = [1.0, -1.0, -1.0, -1.0];
    std::array::from_fn(|mu| z.bilinear(&g[mu]).re * metric[mu])
}

fn gamma21() -> Multivector {
    Multivector::gamma(2) * Multivector::gamma(1)
}

/// Spin bivector of a rotor, `S = ½ R γ2γ1 R̃` (ħ = 1).
pub fn spin_bivector(rotor: &Multivector) -> Result<Bivector> {
    let residual = rotor_residual(rotor);
    if residual > ROTOR_TOL {
        return Err(Error::RotorConstraint { residual });
    }
    Ok(Bivector::project(&(rotor.sandwich(&gamma21()) * 0.5)))
}

/// Spin density of a full spinor, `S = ½ ψ γ2γ1 ψ̃ = ρ e^{βγ5} ½ R γ2γ1 R̃`.
pub fn spin_density(psi: &DHSpinor) -> Bivector {
    Bivector::project(&(psi.as_multivector().sandwich(&gamma21()) * 0.5))
}

/// `S_μν = ¼ i z̄ [𝛄_μ, 𝛄_ν] z` from the column spinor.
pub fn spin_tensor(z: &DiracSpinorZ) -> [[f64; 4]; 4] {
    let g = dirac_gammas();
    let quarter_i = Complex64::new(0.0, 0.25);
    let mut s = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let comm = g[mu] * g[nu] - g[nu] * g[mu];
            s[mu][nu] = (z.bilinear(&comm) * quarter_i).re;
        }
    }
    s
}
