//! Standard Dirac representation of Cl(1,3) as 4x4 complex matrices.
//!
//! `γ0 -> diag(1, 1, -1, -1)`, `γi -> [[0, -σi], [σi, 0]]`. Every other blade is
//! represented by the ordered product of its factors. The 16 blade matrices are
//! linearly independent, so the map is injective and can be inverted with trace
//! inner products.

use std::sync::OnceLock;

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::table::{SignTable, BLADE_MASKS, DIM, PRODUCT_TABLE};
use super::Multivector;
use crate::error::{Error, Result};

pub type CMatrix4 = Matrix4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative tolerance for accepting a matrix as a real multivector.
const REPRESENTATION_TOL: f64 = 1e-10;

/// Condition estimate above which a multivector is treated as singular.
const MAX_CONDITION: f64 = 1e12;

/// Matrix image of a multivector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixRep(pub CMatrix4);

/// The four Dirac matrices `𝛄_μ` (lower index).
pub fn dirac_gammas() -> &'static [CMatrix4; 4] {
    static GAMMAS: OnceLock<[CMatrix4; 4]> = OnceLock::new();
    GAMMAS.get_or_init(|| {
        let n = -ONE;
        #[rustfmt::skip]
        let g0 = CMatrix4::new(
            ONE, ZERO, ZERO, ZERO,
            ZERO, ONE, ZERO, ZERO,
            ZERO, ZERO, n, ZERO,
            ZERO, ZERO, ZERO, n,
        );
        #[rustfmt::skip]
        let g1 = CMatrix4::new(
            ZERO, ZERO, ZERO, n,
            ZERO, ZERO, n, ZERO,
            ZERO, ONE, ZERO, ZERO,
            ONE, ZERO, ZERO, ZERO,
        );
        #[rustfmt::skip]
        let g2 = CMatrix4::new(
            ZERO, ZERO, ZERO, I,
            ZERO, ZERO, -I, ZERO,
            ZERO, -I, ZERO, ZERO,
            I, ZERO, ZERO, ZERO,
        );
        #[rustfmt::skip]
        let g3 = CMatrix4::new(
            ZERO, ZERO, n, ZERO,
            ZERO, ZERO, ZERO, ONE,
            ONE, ZERO, ZERO, ZERO,
            ZERO, n, ZERO, ZERO,
        );
        [g0, g1, g2, g3]
    })
}

/// Matrices of the 16 canonical blades.
pub fn blade_matrices() -> &'static [CMatrix4; DIM] {
    static BLADES: OnceLock<[CMatrix4; DIM]> = OnceLock::new();
    BLADES.get_or_init(|| {
        let g = dirac_gammas();
        let mut out = [CMatrix4::identity(); DIM];
        for (k, mask) in BLADE_MASKS.iter().enumerate() {
            let mut m = CMatrix4::identity();
            for (bit, gamma) in g.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    m *= gamma;
                }
            }
            out[k] = m;
        }
        out
    })
}

/// Matrix representation of `a`.
pub fn matrix_rep(a: &Multivector) -> MatrixRep {
    let blades = blade_matrices();
    let mut m = CMatrix4::zeros();
    for (c, b) in a.coeffs().iter().zip(blades.iter()) {
        if *c != 0.0 {
            m += b * Complex64::new(*c, 0.0);
        }
    }
    MatrixRep(m)
}

/// Recover blade coefficients from a matrix via `c_k = tr(Γ_k⁻¹ M) / 4`.
///
/// Fails when the matrix has an imaginary blade component or does not
/// reconstruct, i.e. is not the image of a real multivector.
pub fn from_matrix(m: &MatrixRep) -> Result<Multivector> {
    let blades = blade_matrices();
    let scale = m.0.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1.0);
    let mut coeffs = [0.0; DIM];
    let mut imag = 0.0_f64;
    for k in 0..DIM {
        let inv_sign = PRODUCT_TABLE.square_sign(k) as f64;
        let c = (blades[k] * m.0).trace() * (inv_sign / 4.0);
        coeffs[k] = c.re;
        imag = imag.max(c.im.abs());
    }
    let mv = Multivector::new(coeffs);
    let back = matrix_rep(&mv).0;
    let residual = (back - m.0).iter().map(|z| z.norm()).fold(imag, f64::max);
    if residual > REPRESENTATION_TOL * scale {
        return Err(Error::Representation { residual });
    }
    Ok(mv)
}

/// Inverse through the matrix representation.
pub fn inverse(a: &Multivector) -> Result<Multivector> {
    let m = matrix_rep(a).0;
    let norm = frobenius(&m);
    let inv = m.try_inverse().ok_or(Error::Singular {
        condition: f64::INFINITY,
    })?;
    let condition = norm * frobenius(&inv);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::Singular { condition });
    }
    from_matrix(&MatrixRep(inv))
}

fn frobenius(m: &CMatrix4) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Outcome of comparing a product table with the matrix representation.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub pairs_checked: usize,
    pub mismatches: Vec<(usize, usize)>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check every ordered blade pair of `table` against the matrix product.
/// Entries are in `{0, ±1, ±i}`, so agreement is required to be exact.
pub fn check_table_against_matrices(table: &SignTable) -> OracleCheck {
    let blades = blade_matrices();
    let mut mismatches = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let e = table.get(i, j);
            let expected = blades[e.index as usize] * Complex64::new(e.sign as f64, 0.0);
            let actual = blades[i] * blades[j];
            if expected != actual {
                mismatches.push((i, j));
            }
        }
    }
    OracleCheck {
        pairs_checked: DIM * DIM,
        mismatches,
    }
}

/// Verifies the built-in product table against the matrix representation
/// the first time it is called; later calls return the cached result.
pub fn verified_product_table() -> &'static OracleCheck {
    static CHECK: OnceLock<OracleCheck> = OnceLock::new();
    CHECK.get_or_init(|| check_table_against_matrices(&PRODUCT_TABLE))
}
