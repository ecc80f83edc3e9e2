//! Spacetime-algebra kernel and zitterbewegung simulator.
//!
//! Natural units `ħ = c = 1` throughout.

pub mod clifford;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod frenet;
pub mod numeric;
pub mod spinor;
pub mod verify;

pub use clifford::{exp_bivector, Bivector, Multivector};
pub use error::{Error, Result};
pub use spinor::{DHSpinor, DiracSpinorZ};
pub use config::ScenarioConfig;
pub use dynamics::{BZState, EMField, Trajectory};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
