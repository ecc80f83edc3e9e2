//! Verification suites driven by `zitter verify`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use zitter_core::clifford::matrix::check_table_against_matrices;
use zitter_core::clifford::table::{SignTable, GRADES, PRODUCT_TABLE};
use zitter_core::clifford::{from_matrix, matrix_rep};
use zitter_core::dynamics::{
    analytic_free_velocity, circular_helix_spinor, eom::spinor_equation_residual, free_velocity_data,
    lightlike_helix, simulate, trivial_solution, zbw_frequency, zero_crossing_frequency, BZState,
    EMField, HelixVariant, Trajectory,
};
use zitter_core::frenet::{
    curvatures_from_frame, darboux_relation_residual, darboux_series, frame_from_rotor, FrenetFrame,
};
use zitter_core::spinor::{rotor_decompose, rotor_residual, z_to_psi};
use zitter_core::verify::{
    dirac_hestenes_residual, fd_tolerance, linearization_check, linearization_report,
    mean_velocity_identity, nonlinear_dirac_residual, nonlinear_dirac_residual_on_line,
    spin_mass_identity, Gradient, PlaneWave, CLOSED_FORM_TOL,
};
use zitter_core::{exp_bivector, Bivector, DHSpinor, DiracSpinorZ, Multivector, Result};

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    /// Non-gating checks are reported but do not affect the exit code.
    pub gating: bool,
    pub detail: String,
}

impl Check {
    fn le(suite: &str, name: &str, value: f64, tolerance: f64) -> Self {
        Check {
            suite: suite.into(),
            name: name.into(),
            passed: value.is_finite() && value <= tolerance,
            value,
            tolerance,
            gating: true,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn non_gating(mut self) -> Self {
        self.gating = false;
        self
    }

    fn error(suite: &str, name: &str, err: impl std::fmt::Display) -> Self {
        Check {
            suite: suite.into(),
            name: name.into(),
            passed: false,
            value: f64::NAN,
            tolerance: f64::NAN,
            gating: true,
            detail: err.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    Free,
    Frenet,
    Dirac,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Free => "free",
            Suite::Frenet => "frenet",
            Suite::Dirac => "dirac",
            Suite::All => "all",
        }
    }
}

/// Options shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub table: SignTable,
    pub step: f64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            table: PRODUCT_TABLE,
            step: 1e-3,
            seed: 7,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<Check> {
    match suite {
        Suite::Algebra => algebra(opts),
        Suite::Free => free(opts),
        Suite::Frenet => frenet(opts),
        Suite::Dirac => dirac(opts),
        Suite::All => [Suite::Algebra, Suite::Free, Suite::Frenet, Suite::Dirac]
            .into_iter()
            .flat_map(|s| run_suite(s, opts))
            .collect(),
    }
}

fn random_multivector(rng: &mut ChaCha8Rng) -> Multivector {
    Multivector::new(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

fn algebra(opts: &SuiteOptions) -> Vec<Check> {
    const S: &str = "algebra";
    let mut out = Vec::new();
    let oracle = check_table_against_matrices(&opts.table);
    out.push(
        Check::le(S, "product_table_oracle", oracle.mismatches.len() as f64, 0.0).with_detail(
            format!(
                "{} pairs checked, mismatches {:?}",
                oracle.pairs_checked, oracle.mismatches
            ),
        ),
    );

    let mut worst = 0.0_f64;
    for k in 0..16 {
        let g = GRADES[k] as i32;
        let sign = if (g * (g - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let b = Multivector::blade(k);
        worst = worst.max((b.reverse() - b * sign).max_abs());
    }
    out.push(Check::le(S, "reversion_grade_law", worst, 0.0));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut round, mut anti, mut hom) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..64 {
        let a = random_multivector(&mut rng);
        let b = random_multivector(&mut rng);
        match from_matrix(&matrix_rep(&a)) {
            Ok(back) => round = round.max((back - a).max_abs()),
            Err(_) => round = f64::INFINITY,
        }
        anti = anti.max((a.gp(&b).reverse() - b.reverse().gp(&a.reverse())).max_abs());
        let lhs = matrix_rep(&a.gp(&b)).0;
        let rhs = matrix_rep(&a).0 * matrix_rep(&b).0;
        hom = hom.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    out.push(Check::le(S, "matrix_round_trip", round, 1e-12));
    out.push(Check::le(S, "reverse_anti_automorphism", anti, 1e-12));
    out.push(Check::le(S, "matrix_homomorphism", hom, 1e-12));

    let mut rotor = 0.0_f64;
    for _ in 0..16 {
        let b = Bivector::new(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
        match exp_bivector(&b, 1e-14) {
            Ok(r) => rotor = rotor.max(rotor_residual(&r)),
            Err(_) => rotor = f64::INFINITY,
        }
    }
    out.push(Check::le(S, "bivector_exponential_is_rotor", rotor, 1e-12));
    out
}

/// Unit-norm generic column spinor used by the free suites.
pub fn generic_z() -> DiracSpinorZ {
    let v = [0.6, 0.1, -0.2, 0.3, 0.2, -0.4, 0.1, 0.05];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    DiracSpinorZ::from_re_im(v.map(|x| x / n))
}

fn rest_state(m: f64, psi: DHSpinor) -> BZState {
    BZState::new(0.0, Multivector::ZERO, Multivector::gamma(0) * m, psi)
}

/// Free run from the generic spinor over `10π/m`.
pub fn generic_run(m: f64, h: f64) -> Result<Trajectory> {
    let psi = z_to_psi(&generic_z())?;
    simulate(&rest_state(m, psi), &EMField::free(), m, h, 10.0 * PI / m)
}

/// Max componentwise distance between simulated and closed-form velocity.
pub fn closed_form_velocity_error(traj: &Trajectory) -> f64 {
    let first = &traj.samples[0].state;
    let (v0, a0, h) = free_velocity_data(&first.psi, &first.pi);
    traj.samples
        .iter()
        .map(|s| {
            let v = analytic_free_velocity(&v0, &a0, &first.pi, traj.m, h, s.state.tau);
            (v - s.velocity).max_abs()
        })
        .fold(0.0, f64::max)
}

/// Largest drift of any `J_μν` component.
pub fn angular_momentum_drift(traj: &Trajectory) -> f64 {
    let j0 = traj.samples[0].conserved.j;
    traj.samples
        .iter()
        .flat_map(|s| {
            (0..4).flat_map(move |a| (0..4).map(move |b| (s.conserved.j[a][b] - j0[a][b]).abs()))
        })
        .fold(0.0, f64::max)
}

fn free(opts: &SuiteOptions) -> Vec<Check> {
    const S: &str = "free";
    let m = 1.0;
    let h = opts.step;
    let mut out = Vec::new();
    let (run, half) = match (generic_run(m, h), generic_run(m, h / 2.0)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return vec![Check::error(S, "simulate", e)],
    };
    let e1 = closed_form_velocity_error(&run);
    let e2 = closed_form_velocity_error(&half);
    out.push(Check::le(S, "closed_form_velocity", e1, 1e-6));
    let ratio = e1 / e2;
    out.push(Check {
        passed: (12.0..=20.0).contains(&ratio),
        ..Check::le(S, "step_halving_ratio", ratio, 20.0)
    }
    .with_detail(format!("error {e1:.3e} -> {e2:.3e}, expected ratio in [12, 20]")));

    let hmax = run.samples.iter().map(|s| (s.conserved.h - m).abs()).fold(0.0, f64::max);
    let pmax = run.samples.iter().map(|s| (s.conserved.p2 - m * m).abs()).fold(0.0, f64::max);
    out.push(Check::le(S, "energy_H_equals_m", hmax, 1e-8));
    out.push(Check::le(S, "mass_shell", pmax, 1e-9));
    out.push(Check::le(S, "angular_momentum_drift", angular_momentum_drift(&run), 1e-8));

    for mass in [0.5, 1.0, 2.0] {
        let name = format!("zbw_frequency_m{mass}");
        match generic_run(mass, h / mass).and_then(|t| zbw_frequency(&t)) {
            Ok(w) => out.push(
                Check::le(S, &name, (w / (2.0 * mass) - 1.0).abs(), 1e-3)
                    .with_detail(format!("measured {w:.6}, expected {:.6}", 2.0 * mass)),
            ),
            Err(e) => out.push(Check::error(S, &name, e)),
        }
    }

    for (name, r) in [
        ("mean_velocity_identity", mean_velocity_identity(&run)),
        ("nonlinear_dirac_on_line", nonlinear_dirac_residual_on_line(&run)),
        ("spin_mass_identity", spin_mass_identity(&run)),
    ] {
        match r {
            Ok(r) => out.push(Check::le(S, name, r.max, r.tolerance)),
            Err(e) => out.push(Check::error(S, name, e)),
        }
    }

    out.extend(trivial_checks(S, m, h));
    out
}

fn trivial_checks(suite: &str, m: f64, h: f64) -> Vec<Check> {
    let start = rest_state(m, DHSpinor::from_even_part(&Multivector::ONE));
    let traj = match simulate(&start, &EMField::free(), m, h, 2.0 * PI / m) {
        Ok(t) => t,
        Err(e) => return vec![Check::error(suite, "trivial_solution", e)],
    };
    let mut res = 0.0_f64;
    let mut vdev = 0.0_f64;
    for s in &traj.samples {
        let exact = trivial_solution(m, s.state.tau);
        let dpsi = exact.as_multivector().gp(&Multivector::blade(8)) * m;
        res = res.max(spinor_equation_residual(exact.as_multivector(), &dpsi, &start.pi).norm());
        vdev = vdev.max((s.velocity - Multivector::gamma(0)).max_abs());
    }
    vec![
        Check::le(suite, "trivial_solution_equation", res, 1e-12),
        Check::le(suite, "trivial_solution_velocity", vdev, 1e-12),
    ]
}

/// Circular helix of rapidity `w` with `p = m γ0`.
pub fn circular_run(m: f64, w: f64, h: f64) -> Result<Trajectory> {
    let psi = circular_helix_spinor(w)?;
    simulate(&rest_state(m, psi), &EMField::free(), m, h, 10.0 * PI / m)
}

/// Tangent-only frames for curvature extraction.
pub fn tangent_frames(traj: &Trajectory) -> Vec<FrenetFrame> {
    traj.samples
        .iter()
        .map(|s| FrenetFrame::new([s.velocity, Multivector::ZERO, Multivector::ZERO, Multivector::ZERO], s.state.tau))
        .collect()
}

/// Rotor frames `e_μ = R γ_μ R̃` along a trajectory.
pub fn rotor_frames(traj: &Trajectory) -> Result<Vec<FrenetFrame>> {
    traj.samples
        .iter()
        .map(|s| {
            let parts = rotor_decompose(&s.state.psi)?;
            frame_from_rotor(&parts.rotor, s.state.tau)
        })
        .collect()
}

/// Mean and population standard deviation.
pub fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len().max(1) as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Relative spread of a curvature series. Identically vanishing series are
/// measured against `scale`, the largest curvature of the curve.
pub fn relative_spread(v: &[f64], scale: f64) -> f64 {
    let (mean, std) = mean_std(v);
    std / mean.abs().max(scale)
}

fn frenet(opts: &SuiteOptions) -> Vec<Check> {
    const S: &str = "frenet";
    let (m, w, h) = (1.0, 0.3, opts.step);
    let mut out = Vec::new();
    let run = match circular_run(m, w, h) {
        Ok(t) => t,
        Err(e) => return vec![Check::error(S, "simulate", e)],
    };
    let curv = match curvatures_from_frame(&tangent_frames(&run), h) {
        Ok(c) => c,
        Err(e) => return vec![Check::error(S, "curvatures", e)],
    };
    let scale = curv
        .k1
        .iter()
        .chain(&curv.k2)
        .chain(&curv.k3)
        .fold(0.0_f64, |a, k| a.max(k.abs()));
    for (name, series) in [("K1", &curv.k1), ("K2", &curv.k2), ("K3", &curv.k3)] {
        let (mean, _) = mean_std(series);
        out.push(
            Check::le(S, &format!("{name}_constant"), relative_spread(series, scale), 1e-4)
                .with_detail(format!("mean {mean:.9}")),
        );
    }
    let expected = [2.0 * m * w.sinh(), 2.0 * m * w.cosh()];
    let (k1, _) = mean_std(&curv.k1);
    let (k2, _) = mean_std(&curv.k2);
    out.push(Check::le(
        S,
        "circular_helix_curvatures",
        (k1 - expected[0]).abs().max((k2 - expected[1]).abs()),
        1e-5,
    ));

    match darboux_series(&curv.frames, h) {
        Ok(omega) => {
            let rebuilt = curv.rebuilt_darboux();
            let d = omega
                .iter()
                .zip(&rebuilt)
                .map(|(a, b)| (*a.as_multivector() - *b.as_multivector()).max_abs())
                .fold(0.0, f64::max);
            out.push(Check::le(S, "darboux_rebuilt_from_curvatures", d, 1e-6));
            let inv = curv.invariants();
            let di = omega
                .iter()
                .zip(&inv)
                .map(|(o, i)| (o.as_multivector().scalar_product(o.as_multivector()) - i.value).abs())
                .fold(0.0, f64::max);
            out.push(Check::le(S, "darboux_invariant", di, 1e-6));
        }
        Err(e) => out.push(Check::error(S, "darboux_series", e)),
    }

    let relation = |step: f64| -> Result<f64> {
        let t = circular_run(m, w, step)?;
        let c = curvatures_from_frame(&tangent_frames(&t), step)?;
        Ok(darboux_relation_residual(&c.frames, step)?.into_iter().fold(0.0, f64::max))
    };
    match (relation(h), relation(h / 2.0)) {
        (Ok(r1), Ok(r2)) => {
            out.push(Check::le(S, "darboux_relation", r1, fd_tolerance(h, m)));
            out.push(Check {
                passed: r1 / r2 >= 3.5,
                ..Check::le(S, "darboux_relation_order", r1 / r2, f64::INFINITY)
            }
            .with_detail(format!("residual {r1:.3e} -> {r2:.3e} under step halving")));
        }
        (Err(e), _) | (_, Err(e)) => out.push(Check::error(S, "darboux_relation", e)),
    }

    // Rotor frames of the trivial solution: straight world-line, e1 at 2m.
    let trivial: Vec<FrenetFrame> = (0..(2.0 * PI / h) as usize)
        .map(|k| {
            let t = k as f64 * h;
            frame_from_rotor(trivial_solution(m, t).as_multivector(), t).expect("rotor")
        })
        .collect();
    match curvatures_from_frame(&trivial, h) {
        Ok(c) => {
            let kmax = c.k1.iter().chain(&c.k2).chain(&c.k3).fold(0.0_f64, |a, k| a.max(k.abs()));
            out.push(Check {
                passed: c.straight && kmax == 0.0,
                ..Check::le(S, "trivial_curvatures_zero", kmax, 0.0)
            });
        }
        Err(e) => out.push(Check::error(S, "trivial_curvatures_zero", e)),
    }
    let taus: Vec<f64> = trivial.iter().map(|f| f.tau).collect();
    let e1x: Vec<f64> = trivial.iter().map(|f| f.e[1].vector_components()[1]).collect();
    match zero_crossing_frequency(&taus, &e1x, 0.0) {
        Ok(freq) => out.push(Check::le(S, "frame_rotation_2m", (freq / (2.0 * m) - 1.0).abs(), 1e-3)),
        Err(e) => out.push(Check::error(S, "frame_rotation_2m", e)),
    }

    for (variant, name, target) in [
        (HelixVariant::LightLike, "lightlike_tangent_null", 0.0),
        (HelixVariant::SpaceLike, "spacelike_tangent_unit", -1.0),
    ] {
        let worst = (0..200)
            .map(|k| {
                let p = lightlike_helix(m, &Multivector::ZERO, k as f64 * 0.05, variant).expect("m > 0");
                (p.u.scalar_product(&p.u) - target).abs()
            })
            .fold(0.0, f64::max);
        out.push(Check::le(S, name, worst, 1e-12));
    }
    let radius = lightlike_helix(m, &Multivector::ZERO, 0.7, HelixVariant::LightLike)
        .map(|p| (p.radius - 1.0 / (2.0 * m)).abs())
        .unwrap_or(f64::INFINITY);
    out.push(Check::le(S, "helix_radius", radius, 1e-9));
    out
}

/// Eigenfunction families used by the Dirac suite: rest frame plus boosts.
pub fn plane_wave_families(m: f64) -> Vec<(String, PlaneWave)> {
    let spatial = exp_bivector(&Bivector::new([0.0, 0.0, 0.0, 0.4, -0.3, 0.2]), 1e-14)
        .expect("spatial rotor");
    let mut out = vec![("rest".to_string(), PlaneWave::rest(m, spatial))];
    for (w, dir) in [
        (0.5, [1.0, 0.0, 0.0]),
        (1.0, [0.0, 0.0, 1.0]),
        (1.5, [1.0, 1.0, 0.0]),
        (0.8, [1.0, -2.0, 0.5]),
    ] {
        let wave = PlaneWave::boosted(m, w, dir, spatial).expect("boost");
        out.push((format!("boost_w{w}"), wave));
    }
    out
}

pub fn sample_points() -> Vec<[f64; 4]> {
    vec![
        [0.0, 0.0, 0.0, 0.0],
        [0.3, 1.0, -2.0, 0.5],
        [2.0, 0.1, 0.2, 0.3],
        [-1.2, 0.7, 0.4, -0.9],
    ]
}

fn dirac(_opts: &SuiteOptions) -> Vec<Check> {
    const S: &str = "dirac";
    let m = 1.0;
    let mut out = Vec::new();
    let pts = sample_points();
    let free = EMField::free();
    for (name, wave) in plane_wave_families(m) {
        let field = |x: [f64; 4]| wave.psi(x);
        let p = wave.momentum();
        match dirac_hestenes_residual(&field, &pts, m, &free) {
            Ok(r) => out.push(Check::le(S, &format!("dirac_hestenes_{name}"), r.max, r.tolerance)),
            Err(e) => out.push(Check::error(S, &format!("dirac_hestenes_{name}"), e)),
        }
        match linearization_check(&p, m, &field, &pts) {
            Ok(r) => out.push(Check::le(S, &format!("linearization_fd_{name}"), r.max, r.tolerance)),
            Err(e) => out.push(Check::error(S, &format!("linearization_fd_{name}"), e)),
        }
        let exact = |x: [f64; 4]| wave.gradient(x);
        match linearization_report(&p, m, &field, &pts, Gradient::Exact(&exact)) {
            Ok(r) => out.push(Check::le(S, &format!("linearization_exact_{name}"), r.max, r.tolerance)),
            Err(e) => out.push(Check::error(S, &format!("linearization_exact_{name}"), e)),
        }
        // Nonlinear equation along the stream-line through the origin.
        let worst = (0..50)
            .map(|k| {
                let x = wave.stream_point([0.0; 4], k as f64 * 0.1);
                nonlinear_dirac_residual(&wave.psi(x), &wave.stream_derivative(x), m, k as f64 * 0.1)
                    .map(|r| r.norm())
                    .unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max);
        let check = Check::le(S, &format!("nonlinear_stream_line_{name}"), worst, CLOSED_FORM_TOL);
        out.push(if name == "rest" {
            check
        } else {
            check.non_gating().with_detail(
                "psi^-1 v psi~^-1 equals gamma0 identically, so the equation only holds for p = m gamma0",
            )
        });
    }

    let constant = DHSpinor::from_components([0.8, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0]);
    match dirac_hestenes_residual(&|_| constant, &pts, m, &free) {
        Ok(r) => out.push(Check {
            passed: r.max >= 10.0 * r.tolerance,
            ..Check::le(S, "negative_control_constant_spinor", r.max, f64::INFINITY)
        }),
        Err(e) => out.push(Check::error(S, "negative_control_constant_spinor", e)),
    }
    let bumpy = |x: [f64; 4]| {
        DHSpinor::from_even_part(&(Multivector::ONE + Multivector::blade(9) * (0.3 * x[0] + 0.1 * x[2] * x[2])))
    };
    match linearization_check(&(Multivector::gamma(0) * m), m, &bumpy, &pts) {
        Ok(r) => {
            let eigen = r.series_max("eigen").unwrap_or(0.0);
            out.push(Check {
                passed: eigen >= 10.0 * r.tolerance,
                ..Check::le(S, "negative_control_non_eigenfunction", eigen, f64::INFINITY)
            });
        }
        Err(e) => out.push(Check::error(S, "negative_control_non_eigenfunction", e)),
    }
    out
}

/// First gating failure, if any.
pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| c.gating && !c.passed)
}
