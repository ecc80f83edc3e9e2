use serde::{Deserialize, Serialize};

use super::eom::{conserved_quantities, eom_derivatives, BZState, Conserved, Derivative};
use super::field::EMField;
use crate::clifford::{Bivector, Multivector};
use crate::error::{Error, Result};
use crate::spinor::{spin_density, velocity_bilinear, DHSpinor};

/// One classical RK4 step of size `h`.
pub fn step_rk4(s: &BZState, field: &EMField, h: f64) -> Result<BZState> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter {
            name: "step",
            reason: format!("must be positive and finite, got {h}"),
        });
    }
    let inc = rk4_increment(s, field, h);
    let next = s.advanced(&inc, h);
    if !next.is_finite() {
        return Err(Error::NumericalOverflow { tau: s.tau });
    }
    Ok(next)
}

/// Weighted RK4 slope, so that `y(τ+h) ≈ y + h * slope`.
fn rk4_increment(s: &BZState, field: &EMField, h: f64) -> Derivative {
    let k1 = eom_derivatives(s, field);
    let k2 = eom_derivatives(&s.advanced(&k1, h / 2.0), field);
    let k3 = eom_derivatives(&s.advanced(&k2, h / 2.0), field);
    let k4 = eom_derivatives(&s.advanced(&k3, h), field);
    Derivative::combine(
        [&k1, &k2, &k3, &k4],
        [1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
    )
}

/// Flat view of the 48 integrated coefficients (x, π, ψ).
fn pack(s: &BZState) -> [f64; 48] {
    let mut y = [0.0; 48];
    y[..16].copy_from_slice(s.x.coeffs());
    y[16..32].copy_from_slice(s.pi.coeffs());
    y[32..].copy_from_slice(s.psi.as_multivector().coeffs());
    y
}

fn unpack(tau: f64, y: &[f64; 48]) -> BZState {
    let part = |r: std::ops::Range<usize>| {
        let mut c = [0.0; 16];
        c.copy_from_slice(&y[r]);
        Multivector::new(c)
    };
    BZState {
        tau,
        x: part(0..16),
        pi: part(16..32),
        psi: DHSpinor::from_even_part(&part(32..48)),
    }
}

fn pack_derivative(d: &Derivative) -> [f64; 48] {
    let mut y = [0.0; 48];
    y[..16].copy_from_slice(d.dx.coeffs());
    y[16..32].copy_from_slice(d.dpi.coeffs());
    y[32..].copy_from_slice(d.dpsi.coeffs());
    y
}

/// RK4 with Kahan-compensated accumulation of the state, so that rounding
/// in long runs does not swamp the O(h⁴) truncation error.
#[derive(Debug, Clone)]
pub struct Integrator<'a> {
    field: &'a EMField,
    h: f64,
    tau0: f64,
    steps: u64,
    y: [f64; 48],
    carry: [f64; 48],
}

impl<'a> Integrator<'a> {
    pub fn new(initial: &BZState, field: &'a EMField, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParameter {
                name: "step",
                reason: format!("must be positive and finite, got {h}"),
            });
        }
        Ok(Integrator {
            field,
            h,
            tau0: initial.tau,
            steps: 0,
            y: pack(initial),
            carry: [0.0; 48],
        })
    }

    pub fn state(&self) -> BZState {
        unpack(self.tau0 + self.steps as f64 * self.h, &self.y)
    }

    pub fn step(&mut self) -> Result<BZState> {
        let s = self.state();
        let inc = pack_derivative(&rk4_increment(&s, self.field, self.h));
        for k in 0..48 {
            let d = inc[k] * self.h - self.carry[k];
            let t = self.y[k] + d;
            self.carry[k] = (t - self.y[k]) - d;
            self.y[k] = t;
        }
        self.steps += 1;
        let next = self.state();
        if !next.is_finite() {
            return Err(Error::NumericalOverflow { tau: s.tau });
        }
        Ok(next)
    }
}

/// Trajectory sample with derived diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub state: BZState,
    /// `v = ψ γ0 ψ̃`.
    pub velocity: Multivector,
    /// `S = ½ ψ γ2γ1 ψ̃`.
    pub spin: Bivector,
    pub conserved: Conserved,
}

impl Sample {
    pub fn new(state: BZState, field: &EMField) -> Self {
        Sample {
            velocity: velocity_bilinear(&state.psi),
            spin: spin_density(&state.psi),
            conserved: conserved_quantities(&state, field),
            state,
        }
    }
}

/// Uniformly sampled solution of the equations of motion.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub m: f64,
    pub step: f64,
    pub field: EMField,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn taus(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.state.tau).collect()
    }

    pub fn velocities(&self) -> Vec<Multivector> {
        self.samples.iter().map(|s| s.velocity).collect()
    }

    pub fn spinors(&self) -> Vec<DHSpinor> {
        self.samples.iter().map(|s| s.state.psi).collect()
    }

    pub fn span(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => b.state.tau - a.state.tau,
            _ => 0.0,
        }
    }

    /// Largest drift of `H` and `p²` from their initial values.
    pub fn max_drift(&self) -> (f64, f64) {
        let Some(first) = self.samples.first() else {
            return (0.0, 0.0);
        };
        self.samples.iter().fold((0.0_f64, 0.0_f64), |(dh, dp), s| {
            (
                dh.max((s.conserved.h - first.conserved.h).abs()),
                dp.max((s.conserved.p2 - first.conserved.p2).abs()),
            )
        })
    }
}

/// Number of steps used to reach `tau_end` with step `h`.
pub fn step_count(tau_end: f64, h: f64) -> usize {
    (tau_end / h).round() as usize
}

fn check_run_params(initial: &BZState, m: f64, tau_end: f64) -> Result<()> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("mass must be positive, got {m}"),
        });
    }
    if !(tau_end >= 0.0) || !tau_end.is_finite() {
        return Err(Error::InvalidParameter {
            name: "tau_end",
            reason: format!("must be non-negative and finite, got {tau_end}"),
        });
    }
    if !initial.is_finite() {
        return Err(Error::NumericalOverflow { tau: initial.tau });
    }
    Ok(())
}

/// Like [`simulate`], but on a failure mid-run returns the samples computed
/// so far together with the error.
pub fn simulate_partial(
    initial: &BZState,
    field: &EMField,
    m: f64,
    h: f64,
    tau_end: f64,
) -> Result<(Trajectory, Option<Error>)> {
    check_run_params(initial, m, tau_end)?;
    let mut integ = Integrator::new(initial, field, h)?;
    let n = step_count(tau_end, h);
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(Sample::new(integ.state(), field));
    let mut failure = None;
    for _ in 0..n {
        match integ.step() {
            Ok(s) => samples.push(Sample::new(s, field)),
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    let traj = Trajectory {
        m,
        step: h,
        field: field.clone(),
        samples,
    };
    Ok((traj, failure))
}

/// Integrate from `initial` over `[τ0, τ0 + τ_end]` with fixed step `h`.
/// Sample `k` sits at `τ0 + k h`; `τ_end = 0` gives the initial sample only.
pub fn simulate(
    initial: &BZState,
    field: &EMField,
    m: f64,
    h: f64,
    tau_end: f64,
) -> Result<Trajectory> {
    match simulate_partial(initial, field, m, h, tau_end)? {
        (traj, None) => Ok(traj),
        (_, Some(e)) => Err(e),
    }
}
