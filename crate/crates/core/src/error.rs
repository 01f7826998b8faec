use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("group rank too small: N = {n}, need N >= 2")]
    GroupRankTooSmall { n: usize },
    #[error("representation index {alpha} out of range 1..={max}")]
    AlphaOutOfRange { alpha: usize, max: usize },
    #[error("invalid irrep label: {0}")]
    InvalidLabel(String),
    #[error("subset size mismatch: expected {expected}, got {got}")]
    SubsetMismatch { expected: usize, got: usize },
    #[error("sector too large: {dim} states exceeds cap {cap}")]
    SectorTooLarge { dim: u128, cap: usize },
    #[error("label/sector mismatch: {0}")]
    LabelMismatch(String),
    #[error("permutation group too large: S_{n} exceeds S_{max}")]
    PermutationGroupTooLarge { n: usize, max: usize },
    #[error("frame not orthonormal: Gram residual {residual:e}")]
    FrameNotOrthonormal { residual: f64 },
    #[error("insufficient samples: {samples} < {min}")]
    InsufficientSamples { samples: usize, min: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
