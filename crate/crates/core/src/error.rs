use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("vector of length {found} where {expected} was expected")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis vectors are linearly dependent")]
    Dependent,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("bracket key ({0},{1}) is out of range or not of the form i<j")]
    BadBracketKey(usize, usize),
    #[error("basis has {names} names for dimension {dim}")]
    NameCount { names: usize, dim: usize },
    #[error("Jacobi identity fails\n{0}")]
    Jacobi(ValidationReport),
    #[error("subspace is not closed under the bracket\n{0}")]
    NotClosed(ValidationReport),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("representation law fails\n{0}")]
    Representation(ValidationReport),
    #[error("module action has {found} matrices for an algebra of dimension {expected}")]
    ActionCount { expected: usize, found: usize },
    #[error("action matrix {index} is {rows}x{cols}, expected {dim}x{dim}")]
    ActionShape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("objects belong to different Lie algebras")]
    AlgebraMismatch,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CochainError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("degree {degree} exceeds dim(g/h) = {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("image of d^{0} leaves the equivariant cochain space (subalgebra not closed?)")]
    ImageNotEquivariant(usize),
    #[error("cochain has {found} coordinates, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("cochain is not h-equivariant")]
    NotEquivariant,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("maps do not compose: {0}")]
    Shape(String),
    #[error("not a complex\n{0}")]
    NotAComplex(ValidationReport),
    #[error("augmentation is not injective")]
    NotInjectiveAugmentation,
    #[error("complex is not exact: homology in degree {degree} has dimension {dim}")]
    NotExact { degree: usize, dim: usize },
    #[error("internal: constructed homotopy fails verification\n{0}")]
    HomotopyCheck(ValidationReport),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnvelopingError {
    #[error("product of degrees {left} + {right} exceeds truncation bound {bound}")]
    TruncationOverflow { left: usize, right: usize, bound: usize },
    #[error("elements live in different enveloping algebras")]
    AlgebraMismatch,
    #[error("monomial with {found} exponents, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("monomial of degree {degree} exceeds bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResolutionError {
    #[error(transparent)]
    Enveloping(#[from] EnvelopingError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("evaluable window exhausted: bound {bound} cannot shrink by {by}")]
    WindowExhausted { bound: usize, by: usize },
    #[error("point outside the evaluable window (degree {degree} > bound {bound})")]
    OutsideWindow { degree: usize, bound: usize },
    #[error("cochains have incompatible shapes: {0}")]
    Shape(String),
    #[error("input is not invariant on the window")]
    NotInvariant,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("{message}")]
    Json { message: String, line: usize, column: usize },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Enveloping(#[from] EnvelopingError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json { message: e.to_string(), line: e.line(), column: e.column() }
    }
}
