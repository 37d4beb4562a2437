use thiserror::Error;

/// Every domain error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {}", .0.join("; "))]
    MalformedPermutation(Vec<String>),
    #[error("not 4-regular: vertices {0:?} do not have exactly four half-edges")]
    NotFourRegular(Vec<usize>),
    #[error("odd or impossible Euler characteristic {0}")]
    OddEulerCharacteristic(i64),
    #[error("the map is not connected")]
    Disconnected,
    #[error("half-edge {0} cannot orient a strand")]
    InvalidOrientation(i32),
    #[error("region {0} out of range (map has {1} regions)")]
    RegionOutOfRange(usize, usize),
    #[error("unknown region name {0:?}")]
    UnknownRegion(String),
    #[error("genus {0} surfaces are not supported by this operation")]
    GenusUnsupported(usize),
    #[error("an empty pin set is unsupported on surfaces of positive genus")]
    EmptyPinSetUnsupported,
    #[error("the word is trivial")]
    TrivialWord,
    #[error("the word is empty")]
    EmptyWord,
    #[error("the cyclic word is not primitive")]
    NotPrimitive,
    #[error("the pin set is not pinning")]
    NotPinning,
    #[error("instance too large: {0}")]
    BudgetExceeded(String),
    #[error("operation requires a loop but the multiloop has {0} strands")]
    MultiStrand(usize),
    #[error("the monorbigon does not bound an immersed disc")]
    NotImmersed,
    #[error("parallel edges {0} and {1}")]
    ParallelEdges(usize, usize),
    #[error("crossing edges {0} and {1}")]
    CrossingEdges(usize, usize),
    #[error("could not choose a small enough gadget width")]
    EpsilonUnderflow,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("degenerate arrangement: {0}")]
    DegenerateArrangement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedPermutation(_) => "MalformedPermutation",
            Error::NotFourRegular(_) => "NotFourRegular",
            Error::OddEulerCharacteristic(_) => "OddEulerCharacteristic",
            Error::Disconnected => "Disconnected",
            Error::InvalidOrientation(_) => "InvalidOrientation",
            Error::RegionOutOfRange(..) => "RegionOutOfRange",
            Error::UnknownRegion(_) => "UnknownRegion",
            Error::GenusUnsupported(_) => "GenusUnsupported",
            Error::EmptyPinSetUnsupported => "EmptyPinSetUnsupported",
            Error::TrivialWord => "TrivialWord",
            Error::EmptyWord => "EmptyWord",
            Error::NotPrimitive => "NotPrimitive",
            Error::NotPinning => "NotPinning",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::MultiStrand(_) => "MultiStrand",
            Error::NotImmersed => "NotImmersed",
            Error::ParallelEdges(..) => "ParallelEdges",
            Error::CrossingEdges(..) => "CrossingEdges",
            Error::EpsilonUnderflow => "EpsilonUnderflow",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::DegenerateArrangement(_) => "DegenerateArrangement",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
