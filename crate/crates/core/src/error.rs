use crate::graphs::{GraphClass, GraphError};
use crate::netsim::SimError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgoError {
    #[error("algorithm needs a {expected} graph, input is {found}")]
    WrongClass { expected: &'static str, found: GraphClass },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Checks the input class before any simulation starts.
pub fn require(g: &crate::WeightedGraph, expected: &'static str, ok: impl Fn(GraphClass) -> bool) -> Result<GraphClass, AlgoError> {
    let found = crate::graphs::classify(g)?.class;
    if ok(found) {
        Ok(found)
    } else {
        Err(AlgoError::WrongClass { expected, found })
    }
}
