use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gaussian with `Re(S) <= 0` has no finite norm.
    #[error("non-normalizable state: Re(S) = {re_s} must be positive")]
    NonNormalizable { re_s: f64 },

    #[error("degenerate operator coefficient: {0} is zero")]
    DegenerateCoefficient(&'static str),

    #[error("grid too small: {points} points, need at least {min}")]
    GridTooSmall { points: usize, min: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid functions live on different grids")]
    GridMismatch,

    #[error("Fock truncation inadequate: tail mass {tail_mass:e} above n = {from} exceeds {limit:e} (n_max = {n_max})")]
    TruncationInadequate {
        tail_mass: f64,
        from: usize,
        limit: f64,
        n_max: usize,
    },

    #[error("state does not decay at the grid boundary: density {density:e} exceeds {limit:e}")]
    BoundaryDecay { density: f64, limit: f64 },

    #[error("closed-form density needs real S0 and D0")]
    NotClosedForm,

    #[error("symplectic invariant violated: |det - 1| = {deviation:e}")]
    InvariantViolation { deviation: f64 },

    #[error("singular transformation: a + i S b vanishes")]
    SingularTransformation,
}
