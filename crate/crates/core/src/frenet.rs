//! Moving tetrads, Frenet curvatures and the Darboux bivector.
//!
//! Inner-product convention: `Ω·Ω = ⟨Ω Ω⟩_0`, so with
//! `Ω = K1 e¹∧e⁰ + K2 e²∧e¹ + K3 e³∧e²` one has `Ω·Ω = K1² - K2² - K3²`.

use serde::{Deserialize, Serialize};

use crate::clifford::{Bivector, Multivector};
use crate::error::{Error, Result};
use crate::numeric::derivative;
use crate::spinor::{rotor_residual, ROTOR_TOL};

/// Orthonormality tolerance for frames.
pub const FRAME_TOL: f64 = 1e-9;

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Tetrad `{e0, e1, e2, e3}` at proper time `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub e: [Multivector; 4],
    pub tau: f64,
}

impl FrenetFrame {
    pub fn new(e: [Multivector; 4], tau: f64) -> Self {
        FrenetFrame { e, tau }
    }

    /// Reciprocal frame `e^μ = η^μμ e_μ`.
    pub fn reciprocal(&self) -> [Multivector; 4] {
        std::array::from_fn(|mu| self.e[mu] * METRIC[mu])
    }

    /// Largest deviation of `e_μ·e_ν` from `η_μν`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut r = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let target = if mu == nu { METRIC[mu] } else { 0.0 };
                r = r.max((self.e[mu].scalar_product(&self.e[nu]) - target).abs());
            }
        }
        r
    }
}

/// `e_μ = R γ_μ R̃`.
pub fn frame_from_rotor(r: &Multivector, tau: f64) -> Result<FrenetFrame> {
    let residual = rotor_residual(r);
    if residual > ROTOR_TOL {
        return Err(Error::RotorConstraint { residual });
    }
    let e = std::array::from_fn(|mu| r.sandwich(&Multivector::gamma(mu)).grade(1));
    Ok(FrenetFrame { e, tau })
}

/// `Ω = ½ Σ_μ ė_μ ∧ e^μ`.
pub fn darboux_bivector(frame_dot: &[Multivector; 4], frame: &FrenetFrame) -> Bivector {
    let recip = frame.reciprocal();
    let mut omega = Multivector::ZERO;
    for mu in 0..4 {
        omega += frame_dot[mu].wedge(&recip[mu]);
    }
    Bivector::project(&(omega * 0.5))
}

/// `ė_μ = Ṙ γ_μ R̃ + R γ_μ Ṙ~` for a rotor path with known rate.
pub fn frame_rates_from_rotor(r: &Multivector, dr: &Multivector) -> [Multivector; 4] {
    std::array::from_fn(|mu| {
        let g = Multivector::gamma(mu);
        (dr.gp(&g).gp(&r.reverse()) + r.gp(&g).gp(&dr.reverse())).grade(1)
    })
}

/// Finite-difference `ė_μ` for each sample.
pub fn frame_derivatives(frames: &[FrenetFrame], h: f64) -> Result<Vec<[Multivector; 4]>> {
    let mut cols = Vec::with_capacity(4);
    for mu in 0..4 {
        let series: Vec<Multivector> = frames.iter().map(|f| f.e[mu]).collect();
        cols.push(derivative(&series, h)?);
    }
    Ok((0..frames.len())
        .map(|k| std::array::from_fn(|mu| cols[mu][k]))
        .collect())
}

/// Darboux bivector at each sample from finite-difference frame derivatives.
pub fn darboux_series(frames: &[FrenetFrame], h: f64) -> Result<Vec<Bivector>> {
    let dots = frame_derivatives(frames, h)?;
    Ok(frames
        .iter()
        .zip(&dots)
        .map(|(f, d)| darboux_bivector(d, f))
        .collect())
}

/// Per-sample `max_μ |ė_μ - Ω·e_μ|`, with `ė_μ` by finite differences.
pub fn darboux_relation_residual(frames: &[FrenetFrame], h: f64) -> Result<Vec<f64>> {
    let dots = frame_derivatives(frames, h)?;
    Ok(frames
        .iter()
        .zip(&dots)
        .map(|(f, d)| {
            let omega = darboux_bivector(d, f);
            (0..4)
                .map(|mu| (d[mu] - omega.as_multivector().inner(&f.e[mu]).grade(1)).norm())
                .fold(0.0, f64::max)
        })
        .collect())
}

/// Curvatures of a sampled world-line together with its Frenet tetrads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curvatures {
    pub tau: Vec<f64>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    pub k3: Vec<f64>,
    /// Frenet tetrads; empty when the world-line is straight.
    pub frames: Vec<FrenetFrame>,
    /// Tangent is constant: `K1 = K2 = K3 = 0` and no Frenet frame exists.
    pub straight: bool,
    /// Curve is planar in the Frenet sense: `K2 = K3 = 0`.
    pub planar: bool,
}

impl Curvatures {
    pub fn len(&self) -> usize {
        self.k1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k1.is_empty()
    }

    /// Darboux invariant `K1² - K2² - K3²` per sample.
    pub fn invariants(&self) -> Vec<DarbouxInvariant> {
        (0..self.len())
            .map(|k| darboux_invariant(self.k1[k], self.k2[k], self.k3[k]))
            .collect()
    }

    /// `Ω = K1 e¹∧e⁰ + K2 e²∧e¹ + K3 e³∧e²` per sample.
    pub fn rebuilt_darboux(&self) -> Vec<Bivector> {
        self.frames
            .iter()
            .enumerate()
            .map(|(k, f)| darboux_from_curvatures(self.k1[k], self.k2[k], self.k3[k], f))
            .collect()
    }
}

/// Threshold below which a curvature counts as zero: absolute for `K1`,
/// relative to the largest curvature otherwise.
const CURVATURE_TOL: f64 = 1e-9;

fn unit_timelike(v: &Multivector, tau: f64) -> Result<Multivector> {
    let n2 = v.scalar_product(v);
    if !(n2 > 0.0) {
        return Err(Error::DegenerateFrame { tau });
    }
    Ok(*v / n2.sqrt())
}

/// Remove from `a` its components along the orthonormal vectors `basis`.
fn orthogonalize(a: &Multivector, basis: &[Multivector]) -> Multivector {
    let mut out = *a;
    for b in basis {
        out -= *b * (a.scalar_product(b) / b.scalar_product(b));
    }
    out
}

fn spacelike_norm(a: &Multivector) -> f64 {
    (-a.scalar_product(a)).max(0.0).sqrt()
}

/// `K1, K2, K3` from the tangent `e0` of each frame:
/// `ė0 = K1 e¹`, `ė1 = -K1 e⁰ + K2 e²`, `ė2 = -K2 e¹ + K3 e³`, `ė3 = -K3 e²`,
/// with `K1, K2 ≥ 0` and `e3` completing a right-handed tetrad.
pub fn curvatures_from_frame(frames: &[FrenetFrame], h: f64) -> Result<Curvatures> {
    let n = frames.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, got: n });
    }
    let tau: Vec<f64> = frames.iter().map(|f| f.tau).collect();
    let e0 = frames
        .iter()
        .map(|f| unit_timelike(&f.e[0], f.tau))
        .collect::<Result<Vec<_>>>()?;
    let zeros = vec![0.0; n];
    let flat = |straight: bool, planar: bool, k1: Vec<f64>, frames: Vec<FrenetFrame>| Curvatures {
        tau: tau.clone(),
        k1,
        k2: zeros.clone(),
        k3: zeros.clone(),
        frames,
        straight,
        planar,
    };

    let de0 = derivative(&e0, h)?;
    let a: Vec<Multivector> = de0.iter().zip(&e0).map(|(d, e)| orthogonalize(d, &[*e])).collect();
    let k1: Vec<f64> = a.iter().map(spacelike_norm).collect();
    let k1_max = k1.iter().cloned().fold(0.0, f64::max);
    if k1_max <= CURVATURE_TOL {
        return Ok(flat(true, true, zeros.clone(), Vec::new()));
    }
    if let Some(k) = k1.iter().position(|&k| k <= CURVATURE_TOL * k1_max) {
        return Err(Error::DegenerateFrame { tau: tau[k] });
    }
    // e¹ = ė0/K1 and e1 = -e¹.
    let e1: Vec<Multivector> = a.iter().zip(&k1).map(|(a, k)| *a / -k).collect();

    let de1 = derivative(&e1, h)?;
    let b: Vec<Multivector> = (0..n)
        .map(|k| orthogonalize(&(de1[k] + e0[k] * k1[k]), &[e0[k], e1[k]]))
        .collect();
    let k2: Vec<f64> = b.iter().map(spacelike_norm).collect();
    let k2_max = k2.iter().cloned().fold(0.0, f64::max);
    let scale = k1_max.max(k2_max);
    if k2_max <= CURVATURE_TOL * scale {
        return Ok(flat(false, true, k1, Vec::new()));
    }
    if let Some(k) = k2.iter().position(|&v| v <= CURVATURE_TOL * k2_max) {
        return Err(Error::DegenerateFrame { tau: tau[k] });
    }
    let e2: Vec<Multivector> = b.iter().zip(&k2).map(|(b, k)| *b / -k).collect();
    let i = Multivector::pseudoscalar();
    let e3: Vec<Multivector> = (0..n)
        .map(|k| (e0[k].wedge(&e1[k]).wedge(&e2[k]).gp(&i) * -1.0).grade(1))
        .collect();

    let de2 = derivative(&e2, h)?;
    let k3: Vec<f64> = (0..n).map(|k| de2[k].scalar_product(&e3[k])).collect();
    let frenet = (0..n)
        .map(|k| FrenetFrame::new([e0[k], e1[k], e2[k], e3[k]], tau[k]))
        .collect();
    Ok(Curvatures {
        tau,
        k1,
        k2,
        k3,
        frames: frenet,
        straight: false,
        planar: false,
    })
}

/// `K1 e¹∧e⁰ + K2 e²∧e¹ + K3 e³∧e²`.
pub fn darboux_from_curvatures(k1: f64, k2: f64, k3: f64, frame: &FrenetFrame) -> Bivector {
    let r = frame.reciprocal();
    Bivector::project(
        &(r[1].wedge(&r[0]) * k1 + r[2].wedge(&r[1]) * k2 + r[3].wedge(&r[2]) * k3),
    )
}

/// `Ω·Ω` in terms of curvatures, and the extrinsic curvature `-K1²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DarbouxInvariant {
    /// `K1² - K2² - K3²`.
    pub value: f64,
    /// `-K1²`.
    pub extrinsic: f64,
}

pub fn darboux_invariant(k1: f64, k2: f64, k3: f64) -> DarbouxInvariant {
    DarbouxInvariant {
        value: k1 * k1 - k2 * k2 - k3 * k3,
        extrinsic: -k1 * k1,
    }
}

/// `F_int = (m/e) Ω` per sample.
pub fn internal_field(frames: &[FrenetFrame], m: f64, e: f64, h: f64) -> Result<Vec<Bivector>> {
    if e == 0.0 {
        return Err(Error::ZeroCharge);
    }
    Ok(darboux_series(frames, h)?
        .into_iter()
        .map(|omega| omega * (m / e))
        .collect())
}
