use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a braid group needs at least one strand")]
    NoStrands,
    #[error("generator index {index} out of range for B_{strands}")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("band generator ({i},{j}) is not valid in B_{strands}: need 1 <= i < j <= {strands}")]
    InvalidBand { i: usize, j: usize, strands: usize },
    #[error("factor uses B_{found} but the factorization lives in B_{expected}")]
    StrandMismatch { expected: usize, found: usize },
    #[error("torus parameters must satisfy p, q >= 1, got ({p},{q})")]
    InvalidTorus { p: i64, q: i64 },
    #[error("{what} requires knot closure (closure has {components} components)")]
    NotAKnot {
        what: &'static str,
        components: usize,
    },
    #[error("invalid knot expression: {0}")]
    InvalidExpression(String),
    #[error("contradictory derivations for {fact}: {first} vs {second}")]
    Contradiction {
        fact: String,
        first: String,
        second: String,
    },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
