//! Vertex and edge stability numbers of small simple graphs.
//!
//! For an invariant `f`, the vertex stability number `vs_f(G)` is the fewest
//! vertices whose deletion changes `f(G)` and the edge stability number
//! `es_f(G)` is the edge analogue (infinite when no deletion changes `f`).
//! This crate computes both by exhaustive search, evaluates closed formulas
//! and bounds for multiplicative and mining invariants, and cross-checks the
//! two over generated graph corpora.

pub mod bounds;
pub mod codec;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod stability;
pub mod theorem;
pub mod value;

pub use error::{Error, Result};
pub use graph::{disjoint_union, ComponentSplit, Edge, EdgeSet, Graph, VertexSet};
pub use invariants::{InvariantDescriptor, InvariantId, Monotonicity};
pub use stability::{SearchPolicy, StabilityResult, SubsetRange};
pub use theorem::{Side, TheoremTag};
pub use value::{ExtValue, Stability};
