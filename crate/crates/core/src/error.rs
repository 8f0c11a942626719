use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {edge}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: u64, n: usize },

    #[error("edge {edge}: duration must be at least 1")]
    ZeroDuration { edge: usize },

    #[error("edge {edge}: arrival time exceeds the configured maximum {max}")]
    TimeOverflow { edge: usize, max: u64 },

    #[error("edge id {0} is out of range")]
    InvalidEdgeId(u64),

    #[error("source vertex {vertex} out of range for {n} vertices")]
    SourceOutOfRange { vertex: u64, n: usize },

    #[error("ready time {0} is not representable")]
    ReadyTimeOutOfRange(u64),

    #[error("path is not time-respecting")]
    NotTimeRespecting,

    #[error("path does not go through the given route")]
    NotOnRoute,

    #[error("invalid route: {0}")]
    InvalidRoute(String),

    #[error("enumeration exceeded cap of {cap} combinations")]
    EnumerationCap { cap: usize },

    #[error("fixpoint iteration did not converge within {rounds} rounds")]
    MaxRoundsExceeded { rounds: usize },

    #[error("graph too large: {0}")]
    TooLarge(String),

    #[error("bad magic bytes {0:?}")]
    BadMagic([u8; 4]),

    #[error("unsupported format version {0}")]
    VersionMismatch(u32),

    #[error("truncated stream")]
    Truncated,

    #[error("corrupt ESDG stream: {0}")]
    Corrupt(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gtfs: {0}")]
    Gtfs(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that indicate a bug in this library rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::MaxRoundsExceeded { .. })
    }
}
