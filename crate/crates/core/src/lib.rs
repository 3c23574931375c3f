//! Exact construction and verification of q-Charlier multiple orthogonal
//! polynomials on the lattice `x(s) = (q^s - 1)/(q - 1)`.
//!
//! Polynomials are built four independent ways (Rodrigues operator pipeline,
//! explicit double sum for `r = 2`, the orthogonality linear system, and the
//! nearest-neighbour recurrence) and every structural identity is checked to
//! literal equality over the rationals.

pub mod classical;
pub mod cli;
pub mod constructors;
pub mod context;
pub mod error;
pub mod kernels;
pub mod lattice_fn;
pub mod multi_index;
pub mod poly;
pub mod relations;
pub mod scalar;
pub mod zeros;

pub use context::QContext;
pub use error::{Error, Guard, Result};
pub use multi_index::MultiIndex;
pub use poly::{Basis, LatticePoly};
pub use scalar::{ApproxScalar, ExactScalar, Scalar};
