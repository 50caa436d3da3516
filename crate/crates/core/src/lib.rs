//! Construction and verification of q-ary 1-perfect codes: Hamming and
//! simplex codes, the dual constant-weight property of non-full-rank perfect
//! codes, their split along a dual word, and the concatenation construction
//! that yields a ternary perfect code of length 13 and rank 12.

pub mod cli;
pub mod codes;
pub mod concat;
pub mod constructions;
pub mod error;
pub mod format;
pub mod gf;
pub mod linalg;
pub mod perfect;
pub mod report;

pub use codes::{Code, LinearCode, Partition, WeightDistribution};
pub use error::{Error, Result};
pub use gf::{Elem, Field};
