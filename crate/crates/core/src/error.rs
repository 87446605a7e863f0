use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator {index} is not a permutation of 0..{degree}")]
    InvalidPermutation { index: usize, degree: usize },
    #[error("group closure exceeds the size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },
    #[error("subgroup search needs |G| <= {cap}, got {order}")]
    SearchCapExceeded { order: u64, cap: u64 },
    #[error("class {0} is not represented by a p-element")]
    NotAPElement(usize),
    #[error("{k} is not a unit modulo {n}")]
    NotAUnit { k: i64, n: u64 },
    #[error("value is not fixed by the Galois subgroup defining the field")]
    NotInField,
    #[error("Galois subgroups are not nested or live at different moduli")]
    NotNested,
    #[error("modulus {value} is incompatible with reduction modulus {reduction}")]
    IncompatibleModulus { value: u64, reduction: u64 },
    #[error("character lift failed: {0}")]
    LiftFailure(String),
    #[error("central character value is not integral: {0}")]
    IntegralityViolation(String),
    #[error("no defect class found for block {0}")]
    NoDefectClass(usize),
    #[error("element is not in Z(D) for the block's defect group")]
    ElementNotInZD,
    #[error("group does not act doubly transitively on its points")]
    NotDoublyTransitive,
    #[error("permutation character minus trivial is not irreducible")]
    NotIrreducible,
    #[error("schema error: {0}")]
    Schema(String),
    #[error("orthogonality failure: {0}")]
    OrthogonalityFailure(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("cycle notation: {0}")]
    CycleSyntax(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
