use thiserror::Error;

use crate::state::StateLabel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A normalization radicand collapsed to zero, e.g. two fermions in the
    /// same one-particle state.
    #[error("zero-norm state: radicand of {coefficient} is {radicand:e}")]
    ZeroNormState {
        coefficient: &'static str,
        radicand: f64,
    },
    #[error("invalid overlap table: {0}")]
    InvalidTable(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unequal packet widths: {left} vs {right}")]
    UnequalWidths { left: f64, right: f64 },
    #[error("quadrature grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),
    #[error("curves do not share a time grid")]
    GridMismatch,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dipole action needs an excited component with no photon present")]
    NoExcitedComponent,
    #[error("excited atom carries {0:?}, which has no emission-recoil descendant")]
    InvalidDipoleTarget(StateLabel),
}

pub type Result<T> = std::result::Result<T, Error>;
