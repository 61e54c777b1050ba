//! Labelled decorated Dyck paths: statistics, enumeration and generating
//! functions.

mod enumerate;
mod export;
mod path;

pub use enumerate::{enumerate, gen_fn, gen_fn_by_dcomp, labellings, subsets};
pub use export::{write_csv, CSV_HEADER};
pub use path::{dyck_paths, DecoratedLabelledPath, DyckPath, Inversions};
