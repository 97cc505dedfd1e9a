use thiserror::Error;

/// Errors raised by grid construction, transforms, and norm evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field contains non-finite samples")]
    NonFinite,

    #[error("spectral data violates Hermitian symmetry (defect {defect:.3e} relative)")]
    SymmetryViolation { defect: f64 },

    #[error("multiplier is not finite at grid frequency {xi}")]
    BadMultiplier { xi: f64 },

    #[error("dispersion symbol must be even: m({xi}) = {plus} but m(-{xi}) = {minus}")]
    OddSymbol { xi: f64, plus: f64, minus: f64 },

    #[error("unknown symbol `{0}`, expected one of: identity, whitham, kdv, bo, fractional, constant")]
    UnknownSymbol(String),

    #[error("unknown nonlinearity `{0}`, expected one of: power, signed_power, exponential")]
    UnknownNonlinearity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grids do not match: {0} vs {1} points")]
    GridMismatch(usize, usize),

    #[error("nonlinearity overflow: blow-up signalled at t = {t}")]
    Overflow { t: f64 },

    #[error("line field support [{lo}, {hi}] escapes the box [-{box_half}, {box_half}] under shifting")]
    SupportEscape { lo: f64, hi: f64, box_half: f64 },

    #[error("Besov index out of range: {0}")]
    BadIndex(String),

    #[error("experiment precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
