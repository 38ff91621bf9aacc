//! Polynomial invariants of rooted and undirected cactus networks.

pub mod cactus;
pub mod format;
pub mod invariants;
pub mod labelled_tree;
pub mod oracle;
pub mod poly;
pub mod transform;

use num_bigint::BigInt;

pub use cactus::{CactusError, Digraph, Graph, Network, RootedCactus, UndirectedCactus};
pub use labelled_tree::{Tree, VertexLabelledTree};
pub use poly::{Coefficient, Monomial, PolyError, Polynomial, Species, VarId};

/// Polynomials with arbitrary-precision integer coefficients.
pub type Poly = Polynomial<BigInt>;
/// Polynomials with machine-integer coefficients, for small inputs.
pub type Poly64 = Polynomial<i64>;
