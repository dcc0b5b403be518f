//! Exact computations on hyperplane arrangements: the codimension-2
//! intersection lattice, Tjurina numbers and their bounds, general residuals
//! of Jacobian ideals, graded Betti tables obtained from closed forms and
//! update rules, freeness tests for line arrangements, and a brute-force
//! linear-algebra oracle that checks all of it degree by degree.

pub mod arrangement;
pub mod error;
pub mod freeness;
pub mod invariants;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod residual;
pub mod resolution;

pub use error::{Error, Result};
