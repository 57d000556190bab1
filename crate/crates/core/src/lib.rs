//! Exact graded homological algebra over quotients of polynomial rings.

pub mod error;
pub mod complex;
pub mod equivalence;
pub mod kernel;
pub mod k0;
pub mod koszul;
pub mod module;
pub mod serre;

pub use error::{Error, Result};
pub use kernel::lift::LiftSystem;
pub use kernel::matrix::Matrix;
pub use kernel::monomial::{Monomial, MonomialOrder};
pub use kernel::poly::{Poly, PolyRing};
pub use kernel::ring::{Ideal, QuotientRing};
pub use kernel::scalar::{Field, Scalar};
pub use kernel::Budget;
