use thiserror::Error;

use crate::notation::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("index {index} is below the birthday {birthday} of the game")]
    IndexBelowBirthday { index: u32, birthday: u32 },

    #[error("index {index} exceeds the supported maximum {max}")]
    IndexTooLarge { index: u64, max: u32 },

    #[error("precondition violated: {0}")]
    Precondition(Precondition),

    #[error("{what} would hold {size} elements, above the ceiling of {ceiling}")]
    ResourceCeiling { what: String, size: String, ceiling: u64 },

    #[error("no distinguishing game found up to birthday {bound}")]
    WitnessNotFound { bound: u32 },

    #[error("unknown check {0:?}")]
    UnknownCheck(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParam { name: String, reason: String },
}

/// Which hypothesis of an exact procedure failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Precondition {
    #[error("first game is not dicot")]
    NotDicot,
    #[error("{which} game is not binary")]
    NotBinary { which: &'static str },
    #[error("{which} game is not impartial")]
    NotImpartial { which: &'static str },
    #[error("second game has a follower with misère outcome L ({follower})")]
    LOutcomeFollower { follower: String },
    #[error("the games are not downlinked")]
    NotDownlinked,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
