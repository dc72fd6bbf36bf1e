use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("contract violation in {op}: {detail}")]
    Contract { op: &'static str, detail: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("distance undefined for trivial code")]
    DistanceUndefined,

    #[error("no information set inside the given index set (rank deficiency {deficiency})")]
    NoInformationSet { deficiency: usize },

    #[error("region too large to avoid: |R| = {size} but d = {distance}")]
    RegionTooLarge { size: usize, distance: usize },

    #[error("not cleanable")]
    NotCleanable,

    #[error("disjoint sectors")]
    DisjointSectors,

    #[error("level {level} out of range for a {t}-dimensional product")]
    LevelOutOfRange { level: usize, t: usize },

    #[error("no product structure")]
    NoProductStructure,

    #[error("no logical operators")]
    NoLogicalOperators,

    #[error("search infeasible: {0}")]
    SearchInfeasible(String),

    #[error("seed distance unavailable for factor {factor}")]
    SeedDistanceUnavailable { factor: usize },

    #[error("modulus 2^{modulus_log2} too small for gate needing level {level}")]
    ModulusTooSmall { modulus_log2: u32, level: u32 },

    #[error("cleaning infeasible on line through {line:?}; residual syndrome {residual:?}")]
    CleaningInfeasible { line: Vec<usize>, residual: Vec<usize> },

    #[error("overlapping regions")]
    OverlappingRegions,

    #[error("unsupported dimension t = {0}")]
    UnsupportedDimension(usize),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn contract(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Contract { op, detail: detail.into() }
    }
}
