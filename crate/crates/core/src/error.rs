use thiserror::Error;

/// Errors raised by the solver, the analyzers and the configuration layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-physical state at {location}: density {density:e}, pressure {pressure:e}")]
    Positivity {
        location: String,
        density: f64,
        pressure: f64,
    },

    #[error("{law} does not support {what}")]
    Capability { law: String, what: String },

    #[error("degenerate wave speeds: s_left = {s_left:e}, s_right = {s_right:e}")]
    DegenerateSpeeds { s_left: f64, s_right: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("stability analysis failed: {0}")]
    Analysis(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

pub(crate) fn capability<T>(law: &str, what: &str) -> Result<T> {
    Err(Error::Capability {
        law: law.to_string(),
        what: what.to_string(),
    })
}

impl Error {
    pub fn positivity(density: f64, pressure: f64) -> Self {
        Error::Positivity {
            location: "state".to_string(),
            density,
            pressure,
        }
    }

    /// Replaces the location of a positivity error; other variants pass through.
    pub fn at(self, where_: impl std::fmt::Display) -> Self {
        match self {
            Error::Positivity { density, pressure, .. } => Error::Positivity {
                location: where_.to_string(),
                density,
                pressure,
            },
            other => other,
        }
    }

    /// Prefixes the location of a positivity error or the message of a
    /// numerical error.
    pub fn context(self, prefix: impl std::fmt::Display) -> Self {
        match self {
            Error::Positivity {
                location,
                density,
                pressure,
            } => Error::Positivity {
                location: format!("{prefix}, {location}"),
                density,
                pressure,
            },
            Error::Numerical(msg) => Error::Numerical(format!("{prefix}: {msg}")),
            other => other,
        }
    }
}
