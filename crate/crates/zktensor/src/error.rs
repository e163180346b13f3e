//! Error types shared across the proof system.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZkError {
    #[error("division by zero at index {index}")]
    DivisionByZero { index: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("invalid parameters: {0}")]
    Param(String),

    #[error("element at index {index} not present in lookup table")]
    NotInTable { index: usize },

    #[error("challenge collided with a table pole after {retries} retries")]
    ChallengeCollision { retries: u32 },

    #[error("malformed proof data: {0}")]
    Decode(String),

    #[error("proof rejected: {0}")]
    Reject(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl ZkError {
    pub fn shape(msg: impl Into<String>) -> Self {
        ZkError::Shape(msg.into())
    }

    pub fn reject(msg: impl Into<String>) -> Self {
        ZkError::Reject(msg.into())
    }

    pub fn decode(msg: impl Into<String>) -> Self {
        ZkError::Decode(msg.into())
    }

    /// True when the error means "the proof is invalid" rather than
    /// "the inputs were unusable".
    pub fn is_rejection(&self) -> bool {
        matches!(self, ZkError::Reject(_))
    }
}

pub type Result<T> = std::result::Result<T, ZkError>;
