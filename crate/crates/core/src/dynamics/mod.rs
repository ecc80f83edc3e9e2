//! Classical spinning-particle dynamics: equations of motion, integrator,
//! closed-form free solutions and trajectory analysis.

pub mod analysis;
pub mod analytic;
pub mod eom;
pub mod field;
pub mod integrate;

pub use analysis::{mean_velocity, zbw_frequency, zbw_period, zero_crossing_frequency};
pub use analytic::{
    analytic_free_psi, analytic_free_velocity, analytic_free_z, analytic_free_zbar,
    circular_helix_spinor, free_velocity_data, lightlike_helix, trivial_solution, HelixPoint,
    HelixVariant,
};
pub use eom::{canonical_momentum, conserved_quantities, eom_derivatives, BZState, Conserved, Derivative};
pub use field::{EMField, FieldKind, PolynomialPotential};
pub use integrate::{simulate, simulate_partial, step_rk4, Integrator, Sample, Trajectory};
