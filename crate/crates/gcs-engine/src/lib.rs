//! Quivers with multiplicities, extended seeds with strings of exchange
//! coefficients, generalized exchange relations and mutation.

mod io;
mod laurent;
mod quiver;
mod random;
mod seed;

pub use io::{seed_from_json, seed_to_json, to_dot};
pub use laurent::Laurent;
pub use quiver::{GQuiver, Vertex};
pub use random::{random_quiver, random_seed};
pub use seed::{coeff_mutate, Monomial, Strings, ExtendedSeed, TauMonomials};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GcsError {
    #[error("vertex {0} is frozen")]
    NotMutable(usize),
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("cluster variable at vertex {0} is zero")]
    ZeroClusterValue(usize),
    #[error("exchange at vertex {0} is not an exact quotient")]
    NotDivisible(usize),
    #[error("bad seed: {0}")]
    Invalid(String),
    #[error(transparent)]
    Arith(#[from] exact_arith::ArithError),
}
