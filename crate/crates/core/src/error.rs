use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("index {index} out of range for domain of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("subset is not sorted and distinct: {0:?}")]
    MalformedSubset(Vec<usize>),

    #[error("state space of {requested} amplitudes exceeds the cap of {cap}")]
    MemoryCap { requested: u128, cap: u128 },

    #[error("malformed state: {0}")]
    MalformedState(String),

    #[error("generator could not satisfy the plant constraint after {attempts} attempts")]
    GeneratorExhausted { attempts: usize },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("root bracketing failed between poles {left} and {right}: {detail}")]
    RootBracketing {
        left: f64,
        right: f64,
        detail: String,
    },

    #[error("property cannot be serialized: {0}")]
    Unserializable(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
