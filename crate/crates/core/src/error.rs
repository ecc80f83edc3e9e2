use thiserror::Error;

/// Errors raised by the algebra kernel, the integrator and the residual checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bivector exponential did not converge after {terms} terms")]
    Divergence { terms: usize },

    #[error("multivector is not invertible (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("matrix is outside the image of the real algebra (residual {residual:.3e})")]
    Representation { residual: f64 },

    #[error("spinor is singular: psi * reverse(psi) = 0 (norm {norm:.3e})")]
    SingularSpinor { norm: f64 },

    #[error("singular spinor at tau = {tau}")]
    SingularSpinorAt { tau: f64 },

    #[error("input is not a rotor: |R reverse(R) - 1| = {residual:.3e}")]
    RotorConstraint { residual: f64 },

    #[error("non-finite value produced at tau = {tau}")]
    NumericalOverflow { tau: f64 },

    #[error("momentum is off the mass shell: p^2 = {p2}, m^2 = {m2}")]
    MassShell { p2: f64, m2: f64 },

    #[error("trajectory spans {span} but at least one period {period} is required")]
    InsufficientSpan { span: f64, period: f64 },

    #[error("need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("velocity does not oscillate (amplitude {amplitude:.3e})")]
    NoOscillation { amplitude: f64 },

    #[error("frame is degenerate at tau = {tau}: tangent derivative vanishes")]
    DegenerateFrame { tau: f64 },

    #[error("field evaluation produced a non-finite value at {point:?}")]
    Evaluation { point: [f64; 4] },

    #[error("charge must be non-zero to build the internal field")]
    ZeroCharge,

    #[error("invalid config: {message}")]
    Config { message: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
