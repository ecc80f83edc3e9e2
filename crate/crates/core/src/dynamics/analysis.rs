use super::integrate::Trajectory;
use crate::clifford::Multivector;
use crate::error::{Error, Result};

/// Period of the zitterbewegung oscillation, `π / m`.
pub fn zbw_period(m: f64) -> f64 {
    std::f64::consts::PI / m
}

/// Time average of `v` over the largest whole number of zitterbewegung
/// periods contained in the trajectory.
pub fn mean_velocity(traj: &Trajectory) -> Result<Multivector> {
    let period = zbw_period(traj.m);
    let span = traj.span();
    if traj.len() < 2 || span < period * (1.0 - 1e-12) {
        return Err(Error::InsufficientSpan { span, period });
    }
    let n_periods = (span / period + 1e-9).floor().max(1.0);
    let window = n_periods * period;
    let t0 = traj.samples[0].state.tau;
    let end = t0 + window;
    let mut acc = Multivector::ZERO;
    for pair in traj.samples.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (ta, tb) = (a.state.tau, b.state.tau);
        if ta >= end {
            break;
        }
        if tb <= end {
            acc += (a.velocity + b.velocity) * (0.5 * (tb - ta));
        } else {
            let f = (end - ta) / (tb - ta);
            let v_end = a.velocity + (b.velocity - a.velocity) * f;
            acc += (a.velocity + v_end) * (0.5 * (end - ta));
        }
    }
    Ok(acc / window)
}

/// Angular frequency of a sampled oscillation from the spacing of its zero
/// crossings about `offset`, located by linear interpolation.
pub fn zero_crossing_frequency(taus: &[f64], values: &[f64], offset: f64) -> Result<f64> {
    let mut crossings = Vec::new();
    for k in 1..values.len().min(taus.len()) {
        let (a, b) = (values[k - 1] - offset, values[k] - offset);
        if a == 0.0 {
            crossings.push(taus[k - 1]);
        } else if a * b < 0.0 {
            crossings.push(taus[k - 1] + (taus[k] - taus[k - 1]) * a / (a - b));
        }
    }
    crossings.dedup();
    if crossings.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: crossings.len(),
        });
    }
    let elapsed = crossings[crossings.len() - 1] - crossings[0];
    Ok(std::f64::consts::PI * (crossings.len() - 1) as f64 / elapsed)
}

/// Velocity amplitudes at or below this count as no oscillation.
pub const OSCILLATION_TOL: f64 = 1e-9;

/// Zitterbewegung frequency measured on the spatial velocity component with
/// the largest oscillation about the mean.
pub fn zbw_frequency(traj: &Trajectory) -> Result<f64> {
    let mean = mean_velocity(traj)?.vector_components();
    let taus = traj.taus();
    let comps: Vec<[f64; 4]> = traj.samples.iter().map(|s| s.velocity.vector_components()).collect();
    let amp = |k: usize| comps.iter().map(|c| (c[k] - mean[k]).abs()).fold(0.0, f64::max);
    let k = (1..4).max_by(|&a, &b| amp(a).total_cmp(&amp(b))).unwrap_or(1);
    if amp(k) <= OSCILLATION_TOL {
        return Err(Error::NoOscillation { amplitude: amp(k) });
    }
    let values: Vec<f64> = comps.iter().map(|c| c[k]).collect();
    zero_crossing_frequency(&taus, &values, mean[k])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_frequency() {
        let taus: Vec<f64> = (0..5000).map(|k| k as f64 * 1e-3).collect();
        let vals: Vec<f64> = taus.iter().map(|t| (3.0 * t + 0.2).sin() + 0.5).collect();
        let w = zero_crossing_frequency(&taus, &vals, 0.5).unwrap();
        assert!((w - 3.0).abs() < 1e-6);
    }

    #[test]
    fn trivial_solution_has_no_frequency() {
        use crate::dynamics::{simulate, BZState, EMField};
        use crate::spinor::DHSpinor;
        let s = BZState::new(0.0, Multivector::ZERO, Multivector::gamma(0), DHSpinor::from_even_part(&Multivector::ONE));
        let t = simulate(&s, &EMField::free(), 1.0, 1e-3, 7.0).unwrap();
        assert!(matches!(zbw_frequency(&t), Err(Error::NoOscillation { .. })));
    }

    #[test]
    fn flat_signal_has_no_frequency() {
        let taus = [0.0, 1.0, 2.0];
        assert!(zero_crossing_frequency(&taus, &[1.0, 1.0, 1.0], 0.0).is_err());
    }
}
