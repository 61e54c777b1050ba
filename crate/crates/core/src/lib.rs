//! Exact symmetric-function algebra for Macdonald eigenoperators, labelled
//! Dyck path statistics and the Dyck path algebra.

pub mod coeffring;
pub mod dsl;
pub mod error;
pub mod macdonald;
pub mod pathalg;
pub mod paths;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
