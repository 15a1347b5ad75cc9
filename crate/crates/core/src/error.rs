use core::fmt;

/// Failure modes shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverError {
    /// A model parameter is outside its admissible range.
    InvalidParameter { name: &'static str, value: f64 },
    /// Grid or time-control construction failed.
    InvalidDiscretisation(&'static str),
    /// A field has the wrong length for the grid it is used with.
    LengthMismatch { expected: usize, found: usize },
    /// Volume fraction too close to one for the `(1 - alpha)^2` denominators.
    SingularCoefficient { alpha: f64 },
    /// Explicit transport step would exceed the CFL limit.
    CflViolation { cfl: f64 },
    /// The state contains NaN or infinite entries.
    NonFiniteState { index: usize },
    /// No cell reaches the threshold, so there is no tumour to track.
    FrontLost,
    /// The truncated mesh has fewer than two elements.
    DomainTooSmall { elements: usize },
    /// A tridiagonal system that should be positive definite is not.
    NotPositiveDefinite { row: usize },
    /// The scaled-domain radius became non-positive.
    RadiusCollapse { ell: f64 },
    /// A step inside a time loop failed.
    StepFailed { step: usize, cause: alloc::boxed::Box<SolverError> },
}

impl SolverError {
    /// Short machine-readable category, stable across releases.
    pub fn category(&self) -> &'static str {
        match self {
            SolverError::InvalidParameter { .. } => "invalid_parameter",
            SolverError::InvalidDiscretisation(_) => "invalid_discretisation",
            SolverError::LengthMismatch { .. } => "length_mismatch",
            SolverError::SingularCoefficient { .. } => "singular_coefficient",
            SolverError::CflViolation { .. } => "cfl_violation",
            SolverError::NonFiniteState { .. } => "non_finite_state",
            SolverError::FrontLost => "front_lost",
            SolverError::DomainTooSmall { .. } => "domain_too_small",
            SolverError::NotPositiveDefinite { .. } => "not_positive_definite",
            SolverError::RadiusCollapse { .. } => "radius_collapse",
            SolverError::StepFailed { cause, .. } => cause.category(),
        }
    }

    /// Innermost error, skipping `StepFailed` wrappers.
    pub fn root(&self) -> &SolverError {
        match self {
            SolverError::StepFailed { cause, .. } => cause.root(),
            other => other,
        }
    }

    pub(crate) fn at_step(self, step: usize) -> SolverError {
        SolverError::StepFailed { step, cause: alloc::boxed::Box::new(self) }
    }
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::InvalidParameter { name, value } => {
                write!(f, "parameter `{name}` has inadmissible value {value}")
            }
            SolverError::InvalidDiscretisation(msg) => write!(f, "invalid discretisation: {msg}"),
            SolverError::LengthMismatch { expected, found } => {
                write!(f, "field length {found} does not match expected {expected}")
            }
            SolverError::SingularCoefficient { alpha } => {
                write!(f, "volume fraction {alpha} is too close to 1")
            }
            SolverError::CflViolation { cfl } => write!(f, "CFL number {cfl} exceeds 1"),
            SolverError::NonFiniteState { index } => write!(f, "non-finite value at index {index}"),
            SolverError::FrontLost => write!(f, "no cell reaches the front threshold"),
            SolverError::DomainTooSmall { elements } => {
                write!(f, "truncated mesh has {elements} element(s), need at least 2")
            }
            SolverError::NotPositiveDefinite { row } => {
                write!(f, "tridiagonal system lost positive definiteness at row {row}")
            }
            SolverError::RadiusCollapse { ell } => write!(f, "radius collapsed to {ell}"),
            SolverError::StepFailed { step, cause } => write!(f, "step {step}: {cause}"),
        }
    }
}

impl core::error::Error for SolverError {}
