//! Overlap and gap detection by recursive line sweeps, plus brute-force oracles.
//!
//! Both sweeps project the rule boxes on one input column at a time. The overlap sweep
//! recurses into the next column at every upper bound and reports maximal rule sets
//! active together in the last column. The gap sweep recurses over each slab between
//! consecutive bounds and records the slabs no rule covers.

pub mod grid;
mod missing;
pub mod oracle;
mod overlap;
mod sweep;

pub use missing::{find_missing_rules, missing_in, MissingRegion};
pub use oracle::{oracle_missing, oracle_overlaps, GridCell};
pub use overlap::{find_overlapping_rules, overlaps_in, OverlapGroup};

use crate::geometry::TableGeometry;
use crate::model::DecisionTable;

pub(crate) fn geometry_of(table: &DecisionTable) -> TableGeometry {
    // tables are checked on construction, so every cell lowers
    TableGeometry::new(table).expect("validated table lowers to boxes")
}
