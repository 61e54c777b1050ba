//! Identity checks with structured reports.

mod checks;
mod report;
mod suite;

pub use checks::{CheckId, PathTable};
pub use report::{CheckReport, Sides, Status, Terms, Witness};
pub use suite::{suite_jobs, Profile, Verifier, VerifyConfig};
