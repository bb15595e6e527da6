use thiserror::Error;

use crate::rootsys::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no irreducible root system of type {family}{rank}")]
    InvalidType { family: Family, rank: usize },

    #[error("unknown root system family `{0}`")]
    UnknownFamily(String),

    #[error("letter {letter} is outside the alphabet 0..{alphabet_size}")]
    LetterOutOfRange { letter: usize, alphabet_size: usize },

    #[error("arrangement bounds are not constant on each root length class")]
    NonConstantBounds,

    #[error("arrangement bounds have {got} entries, expected {expected}")]
    BoundsLength { got: usize, expected: usize },

    #[error("unknown export format `{0}`")]
    UnknownFormat(String),

    #[error("element is outside the ball of radius {radius}")]
    OutsideBall { radius: usize },

    #[error("stability radius {stable} must exceed ball radius {radius}")]
    BadRadii { radius: usize, stable: usize },

    #[error(
        "cell {label} is not a union of regions on the ball ({conflicts} conflicting alcoves)"
    )]
    NotExact { label: usize, conflicts: usize },

    #[error("malformed automaton: {0}")]
    MalformedAutomaton(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
