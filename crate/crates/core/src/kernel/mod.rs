//! Exact polynomial arithmetic, Gröbner bases, quotient rings and the
//! linear-algebra primitive (kernels and lifts over a quotient ring) that
//! everything else is built on.

pub mod groebner;
pub mod lift;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod scalar;

use serde::{Deserialize, Serialize};

/// Resource caps for a computation. Exceeding one is reported as
/// [`crate::Error::Budget`]; no partial state escapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_degree: i64,
    pub max_steps: u64,
    pub max_retries: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 64, max_steps: 20_000_000, max_retries: 32 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_degree: i64::MAX, max_steps: u64::MAX, max_retries: u32::MAX }
    }
}
