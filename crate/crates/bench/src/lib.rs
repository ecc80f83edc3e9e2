//! Benchmarks for the algebra kernel and the integrator; see `benches/`.

use zitter_core::dynamics::BZState;
use zitter_core::{exp_bivector, Bivector, DHSpinor, Multivector};

/// Rest-frame state on the circular helix of rapidity 0.3.
pub fn helix_state() -> BZState {
    let r = exp_bivector(&Bivector::new([0.15, 0.0, 0.0, 0.0, 0.0, 0.0]), 1e-14).expect("boost");
    let psi = DHSpinor::from_even_part(&(r / 0.3f64.cosh().sqrt()));
    BZState::new(0.0, Multivector::ZERO, Multivector::gamma(0), psi)
}

pub fn dense(seed: f64) -> Multivector {
    Multivector::new(std::array::from_fn(|k| ((k as f64 + 1.0) * seed).sin()))
}
