use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("subsets must be non-empty")]
    EmptySubset,
    #[error("colour {colour} is outside the palette [{c}]")]
    ColourOutOfPalette { colour: u32, c: u32 },
    #[error("palette size {0} is not supported (must be 1..=64)")]
    PaletteTooLarge(u32),
    #[error("families must be non-empty")]
    EmptyFamily,
    #[error("family {second} duplicates family {first}")]
    DuplicateFamily { first: usize, second: usize },
    #[error("construction needs an even palette size c >= 4, got {0}")]
    InvalidConstructPalette(u32),
    #[error("complement pairs need an even palette size c >= 2, got {0}")]
    InvalidPairPalette(u32),
    #[error("index {index} is outside the collection of size {size}")]
    IndexOutOfRange { index: BigUint, size: BigUint },
    #[error("collection of size {size} exceeds the materialization bound {bound}; use sampled verification")]
    TooLargeToMaterialize { size: BigUint, bound: u64 },
    #[error("colours {x} and {y} have no disjoint label pair: collection is not colourful")]
    NoDisjointPair { x: BigUint, y: BigUint },
    #[error("incoming labels at colour {y} do not intersect: collection violates (P1)")]
    EmptyIntersection { y: BigUint },
    #[error("adjacent colours must differ, got {0} twice")]
    EqualNeighbours(BigUint),
    #[error("collection is not colourful: {0}")]
    NotColourful(String),
    #[error("algorithm table precondition failed: {0}")]
    TableCheck(String),
    #[error("graph palette {graph} exceeds the algorithm's input palette {algorithm}")]
    PaletteMismatch { graph: BigUint, algorithm: BigUint },
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("round produced an improper colouring (this is a bug): {0}")]
    RoundFailed(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("palette size {0} is too large for search")]
    SearchTooLarge(u32),
    #[error("table of size {k} exceeds the tabulation bound {bound}")]
    TableTooLarge { k: BigUint, bound: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
}
