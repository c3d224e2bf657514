use thiserror::Error;

/// Everything that can go wrong in the workbench.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QcaError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("lattice dimension mismatch: {left} vs {right}")]
    LatticeDimensionMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cell {cell:?} lies outside the window [0, {cells})")]
    OutOfWindow { cell: Vec<i64>, cells: usize },

    #[error("symbol {symbol} outside alphabet of size {size}")]
    SymbolOutOfRange { symbol: u32, size: usize },

    #[error("operator is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("operator is not hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("scattering unitary does not preserve quiescence (defect {defect:e})")]
    NotQuiescent { defect: f64 },

    #[error("h|00> != 0 (norm {defect:e})")]
    VacuumNotAnnihilated { defect: f64 },

    #[error("not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },

    #[error("a ring of {cells} cells cannot be tiled by two-cell blocks")]
    OddRing { cells: usize },

    #[error("Hilbert dimension {dim} exceeds the dense cap of {cap}")]
    TooLarge { dim: usize, cap: usize },

    #[error("momentum {k} is not commensurate with the grid; nearest mode number is j = {nearest}")]
    NotCommensurate { k: f64, nearest: i64 },

    #[error("step function is not injective on the window: {first:?} and {second:?} both map to {image:?}")]
    NotInjective {
        first: Vec<u32>,
        second: Vec<u32>,
        image: Vec<u32>,
    },

    #[error("step function maps {word:?} outside the window alphabet")]
    LeavesWindow { word: Vec<u32> },

    #[error("operator is not causal for the claimed neighbourhood: cell {cell} has Heisenberg support {support:?}")]
    NotCausal { cell: usize, support: Vec<usize> },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, QcaError>;

impl From<std::io::Error> for QcaError {
    fn from(err: std::io::Error) -> Self {
        QcaError::Io(err.to_string())
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> QcaError {
    QcaError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
