use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("numerical failure at parameter {param}: {message}")]
    AtPoint { param: f64, message: String },

    #[error("{0}")]
    Numerical(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad invocations, 1 for everything that failed while computing.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }

    /// Attaches the parameter point to a model error.
    pub fn at(param: f64, e: cohprobe::Error) -> Self {
        match e {
            cohprobe::Error::InvalidParameter(m) | cohprobe::Error::Dimension(m) => Self::Usage(m),
            cohprobe::Error::AtPoint { param, message } => Self::AtPoint { param, message },
            other => Self::AtPoint {
                param,
                message: other.to_string(),
            },
        }
    }
}

impl From<cohprobe::Error> for CliError {
    fn from(e: cohprobe::Error) -> Self {
        match e {
            cohprobe::Error::InvalidParameter(m) | cohprobe::Error::Dimension(m) => Self::Usage(m),
            cohprobe::Error::AtPoint { param, message } => Self::AtPoint { param, message },
            other => Self::Numerical(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
