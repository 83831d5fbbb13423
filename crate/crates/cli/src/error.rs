use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file {path}: {message}")]
    File { path: String, message: String },
    #[error("parameter '{name}': {message}")]
    Field { name: String, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl ConfigError {
    pub fn field(name: &str, message: impl Into<String>) -> Self {
        ConfigError::Field {
            name: name.to_string(),
            message: message.into(),
        }
    }
}
