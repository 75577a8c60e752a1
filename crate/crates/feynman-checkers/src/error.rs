use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The requested point lies outside the region where a formula or
    /// theorem applies (wrong parity, outside the light cone, outside an
    /// asymptotic regime, ...).
    #[error("outside domain of validity: {0}")]
    OutsideDomain(String),

    /// Node doubling exceeded the hard cap without meeting the
    /// convergence target.
    #[error("quadrature failed to converge within {nodes} nodes")]
    QuadratureDiverged { nodes: usize },

    /// An enumeration bound (torus size, Young-diagram size, ...) was
    /// exceeded.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("zero denominator in loop-configuration sum")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
