use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cutoff mismatch between states: n_max {0} vs {1}")]
    CutoffMismatch(usize, usize),

    #[error("photon number {n} exceeds the cutoff n_max = {n_max}")]
    AboveCutoff { n: usize, n_max: usize },

    /// A construction would lose more probability weight to truncation than
    /// the configured tolerance allows.
    #[error("truncation leakage {leakage:.3e} exceeds tolerance {tol:.3e}")]
    Leakage {
        leakage: f64,
        tol: f64,
        /// Smallest cutoff estimated to satisfy the tolerance, when known.
        recommended_n_max: Option<usize>,
    },

    #[error("invalid state specification: {0}")]
    Spec(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("operation requires a pure state")]
    MixedInput,
}

pub type Result<T> = std::result::Result<T, Error>;
