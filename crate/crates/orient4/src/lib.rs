//! Orientation number of vertex-multiplied trees of diameter 4.
//!
//! A tree of diameter 4 has a unique center `c`, branches `[i]` adjacent to
//! the center and leaves `[α,i]` hanging off branch `[i]`. Replacing every
//! vertex by an independent set of copies gives the vertex-multiplication
//! `T(s_1, ..., s_n)`. Its orientation number is either 4 (class C0) or 5
//! (class C1). This crate decides the class, builds an explicit
//! diameter-4 orientation whenever one is known to exist, and checks small
//! instances with an exhaustive search.
//!
//! Module map:
//! - [`sperner`]: k-subsets in squashed (colex) order, shadows, Kruskal-Katona.
//! - [`tree`]: the tree model, validation and the `A2/A3/A≥4/E` partition.
//! - [`classifier`]: the decision tables.
//! - [`digraph`]: orientations, BFS metrics, duality and the extension lemma.
//! - [`constructions`]: the explicit orientations for every sufficient case.
//! - [`oracle`]: exhaustive orientation search for small instances.
//! - [`cli`]: the `orient4` command-line front end.

pub mod classifier;
pub mod cli;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod oracle;
pub mod sperner;
pub mod tree;

pub use classifier::{classify, select_case, CaseId, Classification, GapDetail, Verdict};
pub use constructions::{construct_optimal, Construction};
pub use digraph::{Diameter, Orientation};
pub use error::{Error, Result};
pub use oracle::{bipartite_orientation_number, orientation_number, OracleOptions, OracleResult};
pub use sperner::{Family, KSubset};
pub use tree::{BranchSpec, NeighborPartition, Role, TreeSpec, VertexId};
