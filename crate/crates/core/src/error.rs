use thiserror::Error;

use crate::partition::CellIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cell {0} has a degenerate region and cannot be split")]
    DegenerateCell(CellIndex),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A tree or algorithm contract was broken by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("reward {reward} for arm {arm} lies outside [0, 1]")]
    RewardOutOfRange { arm: f64, reward: f64 },

    /// Lemma-style depth guard tripped while running in strict mode.
    #[error("tree depth {depth} exceeds bound {h_max:.4} at t = {t}")]
    DepthBound { t: u64, depth: u32, h_max: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
