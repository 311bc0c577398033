//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("operation requires a nonzero (or positive) constant term")]
    ZeroConstantTerm,
    #[error("series does not vanish at zero")]
    NonvanishingAtZero,
    #[error("alpha = {alpha} is (numerically) a nonnegative integer")]
    AlphaNonnegativeInteger { alpha: f64 },
    #[error("x = {x} outside the interval ({lo}, {hi})")]
    OutsideInterval { x: f64, lo: f64, hi: f64 },
    #[error("jet mismatch at construction: coefficient {index} is {jet} but finite differences give {fd}")]
    JetMismatch { index: usize, jet: f64, fd: f64 },
    #[error("kappa1*alpha0 + kappa2 = {value} is not a nonnegative integer")]
    NotAPole { value: f64 },
    #[error("branch of order {order} inconsistent with i1 = {i1}")]
    WrongBranch { order: u8, i1: i64 },
    #[error("lambda = {lambda} is resonant for this operation: {context}")]
    ResonantLambda { lambda: f64, context: String },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("L = {l} outside the admissible range [{lo}, {hi}) for lambda0 = {lambda0}")]
    LOutOfRange { l: f64, lo: f64, hi: f64, lambda0: f64 },
    #[error("no expansion case matches lambda0 = {lambda0}, L = {l}; admissible: {admissible}")]
    CaseNotMatched { lambda0: f64, l: f64, admissible: String },
    #[error("resonant lambda0 = {lambda0} forces grid members outside the covered coefficient set")]
    UnsupportedResonance { lambda0: f64 },
    #[error("family not supported here: {0}")]
    UnsupportedFamily(String),
    #[error("residue value not available: {0}")]
    UncoveredCase(String),
    #[error("compensator requires s > 0, got {s}")]
    NonpositiveS { s: f64 },
    #[error("monomial order tie: equal exponent and omega degree")]
    TieInOrdering,
    #[error("no section crossing within tau_max = {tau_max}")]
    NoCrossingWithinTauMax { tau_max: f64 },
    #[error("integrator failure: {0}")]
    IntegratorFailure(String),
    #[error("no orbit connection between the sections")]
    NoConnection,
    #[error("point outside the field domain")]
    OutsideDomain,
    #[error("least-squares system ill-conditioned: cond = {cond:.3e}")]
    IllConditioned { cond: f64 },
    #[error("degenerate data for slope regression: {0}")]
    DegenerateData(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
