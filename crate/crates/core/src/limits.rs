//! Enumeration limits shared by every exhaustive computation.

use crate::error::{Error, Result};

/// Rank above which a warning is logged when the cap is raised.
pub const DEFAULT_RANK_CAP: usize = 4;
/// Ranks beyond this are never accepted.
pub const HARD_RANK_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub rank_cap: usize,
    /// Largest Weyl group that may be enumerated.
    pub group_cap: u64,
    /// Largest weight box (number of lattice points) that may be scanned.
    pub box_cap: u64,
    /// Node budget of one strong-linkage search.
    pub linkage_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            rank_cap: DEFAULT_RANK_CAP,
            group_cap: 60_000,
            box_cap: 20_000_000,
            linkage_budget: 1_000_000,
        }
    }
}

impl Limits {
    pub fn with_rank_cap(mut self, cap: usize) -> Result<Self> {
        if cap > HARD_RANK_CAP {
            return Err(Error::RankCapTooLarge(cap));
        }
        if cap > DEFAULT_RANK_CAP {
            log::warn!("rank cap raised to {cap}; Weyl group enumeration may be slow");
        }
        self.rank_cap = cap;
        Ok(self)
    }

    pub fn with_box_cap(mut self, cap: u64) -> Self {
        self.box_cap = cap;
        self
    }

    pub(crate) fn check_box(&self, volume: u128) -> Result<()> {
        if volume > self.box_cap as u128 {
            Err(Error::BoxCap {
                volume,
                cap: self.box_cap,
            })
        } else {
            Ok(())
        }
    }
}
