use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates a precondition (zero element, empty instance, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// No cover exists; `element` is an uncoverable universe index.
    #[error("infeasible: element {element} is not covered by any set")]
    Uncoverable { element: usize },

    /// The circulant graph is disconnected. Nodes reachable from 0 are the
    /// multiples of `gcd`, so `unreachable_node` is never reached.
    #[error("infeasible: graph is disconnected (gcd of links and m is {gcd}, node {unreachable_node} unreachable from 0)")]
    Disconnected { gcd: String, unreachable_node: u64 },

    /// An exponential oracle refused to run on an oversized input.
    #[error("{what} refused: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_infeasibility(&self) -> bool {
        matches!(self, Error::Uncoverable { .. } | Error::Disconnected { .. })
    }
}
