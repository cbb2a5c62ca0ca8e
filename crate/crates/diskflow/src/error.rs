use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model could not be evaluated at a requested point.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A trajectory reached the escape radius. This is a mathematical signal
    /// (non-generator field, or a ray outside the admissible sector), not a
    /// numerical fault; the ray parameter at the crossing is carried along.
    #[error("trajectory escaped the disk at s = {time} (|w| reached {radius})")]
    Escape { time: f64, radius: f64 },

    /// The integrator exhausted its step budget.
    #[error("step limit of {max_steps} exhausted at s = {time}")]
    StepLimit { time: f64, max_steps: usize },

    /// One or more candidates failed a required class-membership precondition.
    #[error("membership violated: {}", .0.join("; "))]
    Membership(Vec<String>),

    /// A measure or configuration value violated a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
