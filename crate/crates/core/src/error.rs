use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HymError {
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid shape: {0}")]
    BadShape(String),
    #[error("index {index:?} out of range for dims {dims:?}")]
    IndexOutOfRange { index: Vec<usize>, dims: Vec<usize> },
    #[error("invalid index partition: {0}")]
    BadPartition(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("order {order} too low, need at least {required}")]
    OrderTooLow { order: usize, required: usize },
    #[error("permutation of degree {perm} applied to order {order}")]
    ArityMismatch { perm: usize, order: usize },
    #[error("hypermatrix with dims {0:?} is not hypercubic")]
    NotHypercubic(Vec<usize>),
    #[error("hypermatrix with dims {0:?} is not a hypersquare")]
    NotHypersquare(Vec<usize>),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("middle dimensions differ: {left} vs {right}")]
    MidMismatch { left: usize, right: usize },
    #[error("middle dimension vectors differ: {left:?} vs {right:?}")]
    MidsVectorMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("singular operand")]
    Singular,
    #[error("enumeration too large: n={n}, d={d} exceeds budget n<={max_n}, d<={max_d}")]
    TooLarge {
        n: usize,
        d: usize,
        max_n: usize,
        max_d: usize,
    },
    #[error("slice is {rows}x{cols}; tall slices have no slice determinant")]
    TallSlice { rows: usize, cols: usize },
    #[error("compound order k={k} invalid for bound {bound}")]
    BadK { k: usize, bound: usize },
    #[error("eigenvector slice {0} is zero")]
    ZeroSliceVector(usize),
    #[error("sample {0} is not a member of the group")]
    NotMember(usize),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl HymError {
    /// Stable machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            HymError::LengthMismatch { .. } => "LengthMismatch",
            HymError::BadShape(_) => "BadShape",
            HymError::IndexOutOfRange { .. } => "IndexOutOfRange",
            HymError::BadPartition(_) => "BadPartition",
            HymError::BadPermutation(_) => "BadPermutation",
            HymError::OrderTooLow { .. } => "OrderTooLow",
            HymError::ArityMismatch { .. } => "ArityMismatch",
            HymError::NotHypercubic(_) => "NotHypercubic",
            HymError::NotHypersquare(_) => "NotHypersquare",
            HymError::NotSquare { .. } => "NotSquare",
            HymError::DimensionMismatch(_) => "DimensionMismatch",
            HymError::MidMismatch { .. } => "MidMismatch",
            HymError::MidsVectorMismatch { .. } => "MidsVectorMismatch",
            HymError::ShapeMismatch(_) => "ShapeMismatch",
            HymError::Singular => "Singular",
            HymError::TooLarge { .. } => "TooLarge",
            HymError::TallSlice { .. } => "TallSlice",
            HymError::BadK { .. } => "BadK",
            HymError::ZeroSliceVector(_) => "ZeroSliceVector",
            HymError::NotMember(_) => "NotMember",
            HymError::UnknownSuite(_) => "UnknownSuite",
            HymError::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, HymError>;
