use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type {letter}{rank}: {reason}")]
    InvalidType {
        letter: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("rank {rank} exceeds the rank cap {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("rank cap {0} is above the hard limit of 6")]
    RankCapTooLarge(usize),

    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    GroupCap { order: u64, cap: u64 },

    #[error("weight box of volume {volume} exceeds the enumeration cap {cap}")]
    BoxCap { volume: u128, cap: u64 },

    #[error("strong linkage search exceeded its budget of {budget} nodes")]
    LinkageBudget { budget: usize },

    #[error("index {index} out of range (expected < {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("weight has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Resource-cap failures, as opposed to bad input or broken invariants.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::GroupCap { .. } | Error::BoxCap { .. } | Error::LinkageBudget { .. }
        )
    }

    /// Errors caused by an unusable configuration.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidType { .. }
                | Error::RankCap { .. }
                | Error::RankCapTooLarge(_)
                | Error::DimensionMismatch { .. }
                | Error::Precondition(_)
        )
    }
}
