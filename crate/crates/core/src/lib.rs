//! Exact combinatorics of the generalized permutohedra `Pi_{n-1}(k-1)`,
//! the Minkowski sums of all `(k-1)`-dimensional coordinate simplices.

pub mod counting;
pub mod error;
pub mod exact;
pub mod egf;
pub mod faces;
pub mod minkowski;
pub mod oracle;
pub mod sets;

pub use counting::{IntPolynomial, MultiPolynomial};
pub use error::{Error, Result};
pub use exact::{ExactInteger, ExactRational};
pub use egf::{BiSeries, Caps};
pub use faces::{FlagMethod, FunctionalVector, Opp, VertexVector};
pub use minkowski::{BasisCoefficients, SubsetCollection, WeightVector};
pub use oracle::{FaceDecomposition, SimplexFamily};
pub use sets::{OrderType, Subset};
