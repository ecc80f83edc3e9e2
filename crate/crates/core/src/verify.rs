//! Residual evaluators for the spinor field equations and the bilinear
//! identities along trajectories.
//!
//! Residual norms are Euclidean over the 16 blade coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clifford::{exp_bivector, Bivector, Multivector, EXP_DEFAULT_TOL};
use crate::dynamics::analytic::check_mass_shell;
use crate::dynamics::{canonical_momentum, eom_derivatives, mean_velocity, EMField, Trajectory};
use crate::error::{Error, Result};
use crate::frenet::{darboux_bivector, frame_from_rotor, frame_rates_from_rotor};
use crate::numeric::{central_derivative4, derivative};
use crate::spinor::{rotor_rate, spin_density, velocity_bilinear, DHSpinor};

/// Tolerance for residuals evaluated with exact derivatives.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
/// Coefficient `C` (per `m³`) of the finite-difference tolerance `C m³ h²`.
pub const FD_CONSTANT: f64 = 2.0;
/// Floor of the finite-difference tolerance.
pub const FD_FLOOR: f64 = 1e-6;
/// Coordinate spacing for spacetime derivatives of spinor fields.
pub const FIELD_SPACING: f64 = 1e-4;
/// Tolerance for the mean-velocity and spin–mass identities on trajectories.
pub const IDENTITY_TOL: f64 = 1e-6;

/// `max(1e-6, C m³ h²)`.
pub fn fd_tolerance(h: f64, m: f64) -> f64 {
    FD_FLOOR.max(FD_CONSTANT * m.powi(3) * h * h)
}

/// Per-sample residual norms checked against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub tag: String,
    /// Sample coordinate: `τ` on trajectories, point index for fields.
    pub points: Vec<f64>,
    pub norms: Vec<f64>,
    pub max: f64,
    pub rms: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Named component series whose pointwise maximum gives `norms`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub series: BTreeMap<String, Vec<f64>>,
}

impl ResidualReport {
    pub fn new(tag: impl Into<String>, points: Vec<f64>, norms: Vec<f64>, tolerance: f64) -> Self {
        let max = norms.iter().cloned().fold(0.0, f64::max);
        let rms = if norms.is_empty() {
            0.0
        } else {
            (norms.iter().map(|n| n * n).sum::<f64>() / norms.len() as f64).sqrt()
        };
        let pass = norms.iter().all(|n| n.is_finite()) && max <= tolerance;
        ResidualReport {
            tag: tag.into(),
            points,
            norms,
            max,
            rms,
            tolerance,
            pass,
            series: BTreeMap::new(),
        }
    }

    /// Report whose norms are the pointwise maximum of named series.
    pub fn from_series(
        tag: impl Into<String>,
        points: Vec<f64>,
        series: BTreeMap<String, Vec<f64>>,
        tolerance: f64,
    ) -> Self {
        let n = points.len();
        let norms = (0..n)
            .map(|k| series.values().map(|s| s[k]).fold(0.0, f64::max))
            .collect();
        let mut r = ResidualReport::new(tag, points, norms, tolerance);
        r.series = series;
        r
    }

    pub fn series_max(&self, name: &str) -> Option<f64> {
        self.series.get(name).map(|s| s.iter().cloned().fold(0.0, f64::max))
    }
}

fn g12() -> Multivector {
    Multivector::blade(8)
}

fn g0() -> Multivector {
    Multivector::gamma(0)
}

/// `ψ⁻¹ v ψ̃⁻¹`.
pub fn reduced_velocity(psi: &DHSpinor, v: &Multivector, tau: f64) -> Result<Multivector> {
    let inv = psi
        .as_multivector()
        .inverse()
        .map_err(|_| Error::SingularSpinorAt { tau })?;
    Ok(inv.gp(v).gp(&inv.reverse()))
}

/// `ψ̇ γ1γ2 + m (ψ⁻¹ v ψ̃⁻¹) ψ γ0` with `v = ψ γ0 ψ̃`.
pub fn nonlinear_dirac_residual(psi: &DHSpinor, dpsi: &Multivector, m: f64, tau: f64) -> Result<Multivector> {
    let v = velocity_bilinear(psi);
    let c = reduced_velocity(psi, &v, tau)?;
    Ok(dpsi.gp(&g12()) + c.gp(psi.as_multivector()).gp(&g0()) * m)
}

/// Nonlinear equation along a uniformly sampled stream-line, with `ψ̇` by
/// finite differences.
pub fn nonlinear_dirac_residual_samples(
    taus: &[f64],
    psis: &[DHSpinor],
    m: f64,
    h: f64,
) -> Result<ResidualReport> {
    let values: Vec<Multivector> = psis.iter().map(|p| *p.as_multivector()).collect();
    let dpsi = derivative(&values, h)?;
    let norms = psis
        .iter()
        .zip(&dpsi)
        .zip(taus)
        .map(|((p, d), &t)| nonlinear_dirac_residual(p, d, m, t).map(|r| r.norm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::new("nonlinear_dirac", taus.to_vec(), norms, fd_tolerance(h, m)))
}

fn require_free(traj: &Trajectory) -> Result<()> {
    if !traj.field.is_free() {
        return Err(Error::InvalidParameter {
            name: "field",
            reason: "check requires a free trajectory".into(),
        });
    }
    Ok(())
}

/// Nonlinear Dirac-like equation along a free trajectory.
pub fn nonlinear_dirac_residual_on_line(traj: &Trajectory) -> Result<ResidualReport> {
    require_free(traj)?;
    nonlinear_dirac_residual_samples(&traj.taus(), &traj.spinors(), traj.m, traj.step)
}

/// `∂_μ ψ` at `x` by fourth-order central differences.
pub fn field_gradient<F>(psi_field: &F, x: [f64; 4], spacing: f64) -> Result<[Multivector; 4]>
where
    F: Fn([f64; 4]) -> DHSpinor,
{
    let mut out = [Multivector::ZERO; 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        let along = |t: f64| {
            let mut y = x;
            y[mu] += t;
            *psi_field(y).as_multivector()
        };
        *slot = central_derivative4(along, 0.0, spacing);
        if !slot.is_finite() {
            return Err(Error::Evaluation { point: x });
        }
    }
    Ok(out)
}

/// `∂ψ = γ^μ ∂_μ ψ`.
pub fn vector_derivative(grad: &[Multivector; 4]) -> Multivector {
    let mut d = Multivector::ZERO;
    for (mu, g) in grad.iter().enumerate() {
        d += Multivector::gamma_up(mu).gp(g);
    }
    d
}

/// `∂ψ γ1γ2 + m ψ γ0 + e A ψ`.
pub fn dirac_hestenes_pointwise(
    psi: &DHSpinor,
    grad: &[Multivector; 4],
    m: f64,
    field: &EMField,
    x: [f64; 4],
) -> Multivector {
    let p = psi.as_multivector();
    let a = field.potential(&Multivector::vector(x)) * field.charge;
    vector_derivative(grad).gp(&g12()) + p.gp(&g0()) * m + a.gp(p)
}

fn point_indices(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64).collect()
}

/// Dirac–Hestenes equation at each point, derivatives by central differences
/// of spacing [`FIELD_SPACING`].
pub fn dirac_hestenes_residual<F>(
    psi_field: &F,
    points: &[[f64; 4]],
    m: f64,
    field: &EMField,
) -> Result<ResidualReport>
where
    F: Fn([f64; 4]) -> DHSpinor,
{
    let mut norms = Vec::with_capacity(points.len());
    for &x in points {
        let psi = psi_field(x);
        if !psi.is_finite() {
            return Err(Error::Evaluation { point: x });
        }
        let grad = field_gradient(psi_field, x, FIELD_SPACING)?;
        norms.push(dirac_hestenes_pointwise(&psi, &grad, m, field, x).norm());
    }
    Ok(ResidualReport::new(
        "dirac_hestenes",
        point_indices(points.len()),
        norms,
        CLOSED_FORM_TOL,
    ))
}

/// Momentum eigenfunction `ψ(x) = Λ R_s exp(γ1γ2 p·x)` with `p = m Λ γ0 Λ̃`,
/// `Λ` a boost and `R_s` a spatial rotor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub boost: Multivector,
    pub spatial: Multivector,
    pub m: f64,
}

impl PlaneWave {
    /// Rest-frame family `ψ(x) = ψ(0) exp(-γ2γ1 m t)` with `ψ(0) = R_s`.
    pub fn rest(m: f64, spatial: Multivector) -> Self {
        PlaneWave {
            boost: Multivector::ONE,
            spatial,
            m,
        }
    }

    /// Rest-frame family carried by a boost of rapidity `w` along `dir`.
    pub fn boosted(m: f64, rapidity: f64, dir: [f64; 3], spatial: Multivector) -> Result<Self> {
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        if !(n > 0.0) {
            return Err(Error::InvalidParameter {
                name: "dir",
                reason: "boost direction must be non-zero".into(),
            });
        }
        let half = rapidity / (2.0 * n);
        let b = Bivector::new([dir[0] * half, dir[1] * half, dir[2] * half, 0.0, 0.0, 0.0]);
        Ok(PlaneWave {
            boost: exp_bivector(&b, EXP_DEFAULT_TOL)?,
            spatial,
            m,
        })
    }

    pub fn momentum(&self) -> Multivector {
        self.boost.sandwich(&g0()).grade(1) * self.m
    }

    pub fn psi(&self, x: [f64; 4]) -> DHSpinor {
        let phase = self.momentum().scalar_product(&Multivector::vector(x));
        let e = Multivector::scalar(phase.cos()) + g12() * phase.sin();
        DHSpinor::from_even_part(&self.boost.gp(&self.spatial).gp(&e))
    }

    /// Exact `∂_μ ψ = p_μ ψ γ1γ2`.
    pub fn gradient(&self, x: [f64; 4]) -> [Multivector; 4] {
        let turned = self.psi(x).as_multivector().gp(&g12());
        let p = self.momentum().lower_components();
        std::array::from_fn(|mu| turned * p[mu])
    }

    /// Point `x0 + (p/m) τ` on the stream-line through `x0`.
    pub fn stream_point(&self, x0: [f64; 4], tau: f64) -> [f64; 4] {
        let u = self.momentum().vector_components();
        std::array::from_fn(|mu| x0[mu] + u[mu] * tau / self.m)
    }

    /// Exact `dψ/dτ = (p/m)·∂ψ` along a stream-line.
    pub fn stream_derivative(&self, x: [f64; 4]) -> Multivector {
        let grad = self.gradient(x);
        let u = self.momentum().vector_components();
        let mut d = Multivector::ZERO;
        for mu in 0..4 {
            d += grad[mu] * (u[mu] / self.m);
        }
        d
    }
}

/// `∂ψ γ2γ1 - p ψ`.
pub fn eigenfunction_pointwise(psi: &DHSpinor, grad: &[Multivector; 4], p: &Multivector) -> Multivector {
    vector_derivative(grad).gp(&(g12() * -1.0)) - p.gp(psi.as_multivector())
}

/// `(p·∂)ψ γ1γ2 + m p ψ γ0`.
pub fn reduced_equation_pointwise(
    psi: &DHSpinor,
    grad: &[Multivector; 4],
    p: &Multivector,
    m: f64,
) -> Multivector {
    let u = p.vector_components();
    let mut directional = Multivector::ZERO;
    for mu in 0..4 {
        directional += grad[mu] * u[mu];
    }
    directional.gp(&g12()) + p.gp(psi.as_multivector()).gp(&g0()) * m
}

/// How spacetime derivatives are obtained in [`linearization_report`].
pub enum Gradient<'a> {
    /// Central differences of the sampled field.
    Numerical,
    /// Caller-supplied exact derivative.
    Exact(&'a dyn Fn([f64; 4]) -> [Multivector; 4]),
}

/// Eigenfunction property, the reduced equation and the Dirac–Hestenes
/// equation on one field, as named series `eigen`, `reduced`, `dirac`.
pub fn linearization_report<F>(
    p: &Multivector,
    m: f64,
    psi_field: &F,
    points: &[[f64; 4]],
    gradient: Gradient<'_>,
) -> Result<ResidualReport>
where
    F: Fn([f64; 4]) -> DHSpinor,
{
    check_mass_shell(p, m)?;
    let free = EMField::free();
    let mut series: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for &x in points {
        let psi = psi_field(x);
        if !psi.is_finite() {
            return Err(Error::Evaluation { point: x });
        }
        let grad = match &gradient {
            Gradient::Numerical => field_gradient(psi_field, x, FIELD_SPACING)?,
            Gradient::Exact(g) => g(x),
        };
        series
            .entry("eigen".into())
            .or_default()
            .push(eigenfunction_pointwise(&psi, &grad, p).norm());
        series
            .entry("reduced".into())
            .or_default()
            .push(reduced_equation_pointwise(&psi, &grad, p, m).norm());
        series
            .entry("dirac".into())
            .or_default()
            .push(dirac_hestenes_pointwise(&psi, &grad, m, &free, x).norm());
    }
    Ok(ResidualReport::from_series(
        "linearization",
        point_indices(points.len()),
        series,
        CLOSED_FORM_TOL,
    ))
}

/// [`linearization_report`] with finite-difference derivatives.
pub fn linearization_check<F>(
    p: &Multivector,
    m: f64,
    psi_field: &F,
    points: &[[f64; 4]],
) -> Result<ResidualReport>
where
    F: Fn([f64; 4]) -> DHSpinor,
{
    linearization_report(p, m, psi_field, points, Gradient::Numerical)
}

/// Time average of `v` over whole zitterbewegung periods, `p/m`, and
/// `ψ⁻¹ v ψ̃⁻¹` at every sample, compared pairwise.
pub fn mean_velocity_identity(traj: &Trajectory) -> Result<ResidualReport> {
    require_free(traj)?;
    let m = traj.m;
    let avg = mean_velocity(traj)?;
    let first = traj.samples.first().ok_or(Error::InsufficientData { needed: 2, got: 0 })?;
    let p_over_m = canonical_momentum(&first.state, &traj.field) / m;
    let mut series: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for s in &traj.samples {
        let c = reduced_velocity(&s.state.psi, &s.velocity, s.state.tau)?;
        series.entry("mean_vs_p".into()).or_default().push((avg - p_over_m).norm());
        series.entry("mean_vs_reduced".into()).or_default().push((avg - c).norm());
        series.entry("p_vs_reduced".into()).or_default().push((p_over_m - c).norm());
    }
    Ok(ResidualReport::from_series(
        "mean_velocity",
        traj.taus(),
        series,
        IDENTITY_TOL,
    ))
}

/// `|⟨p v⟩_0 - m|` and `|⟨Ω S⟩_0 - m|` for one phase point, with
/// `Ω = ½ ė_μ ∧ e^μ` of the rotor frame and `S = ½ ψ γ2γ1 ψ̃`.
pub fn spin_mass_pointwise(
    psi: &DHSpinor,
    dpsi: &Multivector,
    p: &Multivector,
    m: f64,
    tau: f64,
) -> Result<(f64, f64)> {
    let v = velocity_bilinear(psi);
    let (r, dr) = rotor_rate(psi, dpsi).map_err(|_| Error::SingularSpinorAt { tau })?;
    let frame = frame_from_rotor(&r, tau)?;
    let omega = darboux_bivector(&frame_rates_from_rotor(&r, &dr), &frame);
    let s = spin_density(psi);
    let os = omega.as_multivector().scalar_product(s.as_multivector());
    Ok(((p.scalar_product(&v) - m).abs(), (os - m).abs()))
}

/// Spin–mass identity along a free trajectory. Frame rates are evaluated
/// from the equations of motion at each sample.
pub fn spin_mass_identity(traj: &Trajectory) -> Result<ResidualReport> {
    require_free(traj)?;
    let mut series: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for s in &traj.samples {
        let d = eom_derivatives(&s.state, &traj.field);
        let p = canonical_momentum(&s.state, &traj.field);
        let (pv, os) = spin_mass_pointwise(&s.state.psi, &d.dpsi, &p, traj.m, s.state.tau)?;
        series.entry("pv".into()).or_default().push(pv);
        series.entry("omega_s".into()).or_default().push(os);
    }
    Ok(ResidualReport::from_series("spin_mass", traj.taus(), series, IDENTITY_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{simulate, trivial_solution, BZState};

    fn trivial_traj(m: f64, h: f64, tau_end: f64) -> Trajectory {
        let s = BZState::new(0.0, Multivector::ZERO, g0() * m, DHSpinor::new(Multivector::ONE).unwrap());
        simulate(&s, &EMField::free(), m, h, tau_end).unwrap()
    }

    #[test]
    fn fd_constant_covers_trivial_solution() {
        // Calibration: measured C on the trivial solution with a coarse step.
        let (m, h) = (1.0, 1e-2);
        let taus: Vec<f64> = (0..400).map(|k| k as f64 * h).collect();
        let psis: Vec<DHSpinor> = taus.iter().map(|&t| trivial_solution(m, t)).collect();
        let r = nonlinear_dirac_residual_samples(&taus, &psis, m, h).unwrap();
        let measured = r.max / (m.powi(3) * h * h);
        assert!(measured * 5.0 < FD_CONSTANT, "measured C = {measured}");
    }

    #[test]
    fn trivial_solution_nonlinear_residual() {
        let t = trivial_traj(1.0, 1e-3, 3.0);
        let r = nonlinear_dirac_residual_on_line(&t).unwrap();
        assert!(r.pass);
        for (tau, psi) in t.taus().iter().zip(t.spinors()) {
            let d = trivial_solution(1.0, *tau).as_multivector().gp(&g12());
            let exact = nonlinear_dirac_residual(&psi, &d, 1.0, *tau).unwrap();
            assert!(exact.norm() < 1e-10);
        }
    }

    #[test]
    fn perturbed_spinor_fails() {
        let t = trivial_traj(1.0, 1e-3, 1.0);
        let psis: Vec<DHSpinor> = t
            .spinors()
            .iter()
            .map(|p| DHSpinor::from_even_part(&(*p.as_multivector() + g12() * 1e-3)))
            .collect();
        let r = nonlinear_dirac_residual_samples(&t.taus(), &psis, 1.0, t.step).unwrap();
        assert!(r.max > 10.0 * r.tolerance);
    }

    #[test]
    fn singular_spinor_reports_tau() {
        let taus = [0.0, 0.1, 0.2];
        let null = DHSpinor::from_even_part(&(Multivector::ONE + Multivector::blade(5)));
        let r = nonlinear_dirac_residual_samples(&taus, &[null; 3], 1.0, 0.1);
        assert!(matches!(r, Err(Error::SingularSpinorAt { tau }) if tau == 0.0));
    }

    #[test]
    fn rest_plane_wave_passes_dirac_hestenes() {
        let w = PlaneWave::rest(1.0, Multivector::ONE);
        let pts = [[0.0, 0.0, 0.0, 0.0], [0.3, 1.0, -2.0, 0.5], [2.0, 0.1, 0.2, 0.3]];
        let r = dirac_hestenes_residual(&|x| w.psi(x), &pts, 1.0, &EMField::free()).unwrap();
        assert!(r.pass, "{}", r.max);
    }

    #[test]
    fn constant_spinor_fails_dirac_hestenes() {
        let psi = DHSpinor::from_components([0.8, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0]);
        let r = dirac_hestenes_residual(&|_| psi, &[[0.0; 4]], 2.0, &EMField::free()).unwrap();
        let expected = (psi.as_multivector().gp(&g0()) * 2.0).norm();
        assert!((r.max - expected).abs() < 1e-9);
        assert!(!r.pass);
    }

    #[test]
    fn non_finite_field_is_reported() {
        let nan = DHSpinor::from_components([f64::NAN; 8]);
        let r = dirac_hestenes_residual(&|_| nan, &[[1.0, 2.0, 3.0, 4.0]], 1.0, &EMField::free());
        assert!(matches!(r, Err(Error::Evaluation { point }) if point == [1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn off_shell_linearization_rejected() {
        let w = PlaneWave::rest(1.0, Multivector::ONE);
        let r = linearization_check(&(g0() * 2.0), 1.0, &|x| w.psi(x), &[[0.0; 4]]);
        assert!(matches!(r, Err(Error::MassShell { .. })));
    }

    #[test]
    fn boosted_plane_wave_linearizes() {
        let w = PlaneWave::boosted(1.0, 1.2, [0.3, -0.5, 1.0], Multivector::ONE).unwrap();
        let pts = [[0.1, 0.2, 0.3, 0.4], [-1.0, 0.5, 0.0, 2.0]];
        let r = linearization_check(&w.momentum(), 1.0, &|x| w.psi(x), &pts).unwrap();
        assert!(r.pass, "{:?}", r.series);
    }

    #[test]
    fn report_json_round_trip() {
        let r = ResidualReport::new("x", vec![0.0, 1.0], vec![1e-9, 2e-9], 1e-8);
        let s = serde_json::to_string(&r).unwrap();
        let back: ResidualReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(r.pass);
        assert_eq!(r.max, 2e-9);
    }

    #[test]
    fn trivial_mean_velocity_is_gamma0() {
        let t = trivial_traj(1.0, 1e-3, 4.0);
        let r = mean_velocity_identity(&t).unwrap();
        assert!(r.pass, "{}", r.max);
        assert!((mean_velocity(&t).unwrap() - g0()).norm() < 1e-12);
    }

    #[test]
    fn doubled_mass_breaks_spin_mass_identity() {
        let mut t = trivial_traj(1.0, 1e-3, 1.0);
        assert!(spin_mass_identity(&t).unwrap().pass);
        t.m = 2.0;
        assert!(!spin_mass_identity(&t).unwrap().pass);
    }
}
