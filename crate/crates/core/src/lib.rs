//! Invariant functions on quiver representation spaces: Lusztig's trace and
//! contraction generators, the representation-scheme ideal, generators of the
//! kernel of the restriction map, and finite presentations of invariant rings
//! computed by Gröbner elimination.

pub mod cli;
pub mod invariant;
pub mod kernel;
pub mod poly;
pub mod quiver;
pub mod verify;

use poly::PolyError;
use quiver::QuiverError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("index ({i},{j}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        i: u32,
        j: u32,
        rows: u32,
        cols: u32,
    },
    #[error("`{0}` is not a cycle")]
    NotACycle(String),
    #[error("not expressible at this bound")]
    NotExpressible,
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Poly(PolyError::BudgetExceeded { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
