//! Integer magnitude homology of finite connected graphs.
//!
//! Two independent routes are provided for every `(a, b)` component of the
//! magnitude chain complex `MC_{*,l}`:
//!
//! * [`direct`] enumerates vertex sequences of length `l` and reduces the
//!   resulting boundary matrices over the integers;
//! * [`geometric`] builds the simplicial pair `(K_l(a,b), K'_l(a,b))` on
//!   `(vertex, position)` labels read off unit-step walks, and computes
//!   relative simplicial homology instead.
//!
//! Trees additionally get a closed form and a per-walk decomposition in
//! [`tree`]. All homology goes through the Smith normal form kernel in
//! [`smith`], so torsion is reported exactly.

pub mod check;
pub mod direct;
pub mod error;
pub mod exec;
pub mod export;
pub mod geometric;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod report;
pub mod simplicial;
pub mod smith;
pub mod tree;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{Graph, Sequence, Walk};
pub use homology::HomologyGroup;
pub use matrix::IntegerMatrix;
pub use simplicial::{ChainComplex, Simplex, SimplicialComplex, SimplicialPair};
pub use smith::SmithForm;

/// Identifies one direct summand `MC_{*,l}(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentKey {
    pub a: usize,
    pub b: usize,
    pub l: usize,
}

impl ComponentKey {
    pub fn new(a: usize, b: usize, l: usize) -> Self {
        ComponentKey { a, b, l }
    }
}
