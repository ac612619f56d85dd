use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("entry count {len} is not a perfect square")]
    NotSquare { len: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (max |H - H†| = {deviation:e})")]
    NonHermitian { deviation: f64 },
    #[error("Jacobi iteration stalled after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("chain length {n} exceeds the dense-matrix guard of {max} sites")]
    DimensionGuard { n: usize, max: usize },
    #[error("chain needs at least two sites, got {n}")]
    TooFewSites { n: usize },
    #[error("γ = {gamma}, Δ = {delta}, J = {j} does not match any model class")]
    Unclassified { gamma: f64, delta: f64, j: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermalError {
    #[error("temperature must be > 0, got {0}")]
    NonPositiveTemperature(f64),
    #[error("closed-form thermal state assumes B = 1, got B = {0}")]
    PreconditionB(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("closed form not applicable: {0}")]
    Regime(String),
    #[error("efficiency is not defined for zero ergotropy")]
    NotDefined,
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Thermal(#[from] ThermalError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),
    #[error("metric evaluation failed at {coords}: {source}")]
    Metric {
        coords: String,
        #[source]
        source: MetricsError,
    },
    #[error("no threshold: series never drops below {fraction} of its peak for good")]
    NoThreshold { fraction: f64 },
    #[error("threshold detection needs equal-length series of at least {min} points, got {xs} and {ys}")]
    SeriesShape { min: usize, xs: usize, ys: usize },
}
