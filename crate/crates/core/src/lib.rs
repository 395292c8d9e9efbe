//! Static verification of DMN decision tables.
//!
//! Tables are loaded from JSON or TOML documents whose cells hold S-FEEL conditions.
//! Each rule is lowered to axis-aligned boxes over the input columns; overlapping rules
//! and uncovered regions are then found by recursive line sweeps.
//!
//! ```
//! use dmn_verify::{check_correct, load_table};
//!
//! let table = load_table(r#"{
//!     "name": "Discount",
//!     "inputs": [{ "name": "Age", "type": "integer", "facet": ">= 0" }],
//!     "outputs": [{ "name": "Rate", "type": "real" }],
//!     "rules": [
//!         { "id": "young", "in": ["[0..18)"], "out": ["0.2"] },
//!         { "id": "adult", "in": [">= 18"], "out": ["0"] }
//!     ]
//! }"#).unwrap();
//! assert!(check_correct(&table).correct);
//! ```

pub mod analysis;
pub mod cli;
pub mod correctness;
pub mod diagnostic;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod model;
pub mod semantics;
pub mod sfeel;
pub mod synth;

pub use analysis::{
    find_missing_rules, find_overlapping_rules, oracle_missing, oracle_overlaps, MissingRegion, OverlapGroup,
};
pub use correctness::{check_correct, check_correct_scoped, CheckScope, CorrectnessReport};
pub use diagnostic::{Diagnostic, DiagnosticCode, Severity};
pub use error::{Error, Result};
pub use geometry::{build_codec, intersect_rects, rule_to_rects, CategoryCodec, HyperRect, TableGeometry, Universe};
pub use interval::{Bound, Interval, IntervalSet, Scalar};
pub use model::{
    load_table, load_table_file, Attribute, Completeness, DecisionTable, HitPolicy, InputConfiguration,
    OutputConfiguration, Rule, TableDocument,
};
pub use semantics::{evaluate, masked_by, matches_value, triggered_by, EvalResult, Outcome};
pub use sfeel::{parse_condition, Condition, DataType, Value};
pub use synth::{
    generate_table, inject_noise, pairwise_overlap_fragments, run_benchmark, BenchReport, GenSpec, NoiseMode,
};
