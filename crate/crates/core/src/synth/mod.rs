//! Synthetic tables for benchmarking.
//!
//! [`generate_table`] cuts the input space into a guillotine partition, the shape a
//! decision tree's leaves take, so the result has no overlaps and no gaps. Noise is then
//! added by [`inject_noise`] to give the analyses something to find.

mod bench;
mod fragments;
mod noise;

pub use bench::{bench_tables, run_benchmark, standard_grid, BenchCell, BenchReport, BenchSuite, BenchTables};
pub use fragments::pairwise_overlap_fragments;
pub use noise::{inject_noise, NoiseMode};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Attribute, Completeness, DecisionTable, HitPolicy, Rule};
use crate::sfeel::{Condition, DataType, Value};

pub const GRADES: [&str; 7] = ["A", "B", "C", "D", "E", "F", "G"];

const CATEGORICAL: [(&str, &[&str]); 2] = [
    (
        "Purpose",
        &["Refinancing", "CardPayoff", "Leasing", "Car", "Housing", "Medical"],
    ),
    ("Home Ownership", &["Rent", "Own", "Mortgage", "Other"]),
];

const NUMERIC: [&str; 5] = [
    "Annual Income",
    "Loan Size",
    "Debt Ratio",
    "Credit Age",
    "Open Accounts",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColumnSpec {
    Categorical { name: String, categories: Vec<String> },
    Numeric { name: String, min: i64, max: i64 },
}

impl ColumnSpec {
    pub fn name(&self) -> &str {
        match self {
            ColumnSpec::Categorical { name, .. } | ColumnSpec::Numeric { name, .. } => name,
        }
    }
}

/// Either a column count with the standard categorical/numeric mix, or explicit columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnLayout {
    Standard(usize),
    Explicit(Vec<ColumnSpec>),
}

impl ColumnLayout {
    /// 3 columns are 1 categorical + 2 numeric, 5 are 2 + 3, 7 are 2 + 5.
    pub fn resolve(&self) -> Result<Vec<ColumnSpec>> {
        let n = match self {
            ColumnLayout::Explicit(cols) => return Ok(cols.clone()),
            ColumnLayout::Standard(n) => *n,
        };
        let categorical = match n {
            0 => return Err(Error::Spec("a table needs at least one column".into())),
            1 => 0,
            2..=4 => 1,
            _ => 2,
        };
        let numeric = n - categorical;
        if numeric > NUMERIC.len() {
            return Err(Error::Spec(format!(
                "the standard layout has at most {} columns",
                NUMERIC.len() + CATEGORICAL.len()
            )));
        }
        let mut cols: Vec<ColumnSpec> = CATEGORICAL[..categorical]
            .iter()
            .map(|(name, cats)| ColumnSpec::Categorical {
                name: name.to_string(),
                categories: cats.iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        cols.extend(NUMERIC[..numeric].iter().map(|name| ColumnSpec::Numeric {
            name: name.to_string(),
            min: 0,
            max: 999,
        }));
        Ok(cols)
    }

    pub fn len(&self) -> usize {
        match self {
            ColumnLayout::Standard(n) => *n,
            ColumnLayout::Explicit(cols) => cols.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenSpec {
    pub columns: ColumnLayout,
    pub target_rules: usize,
    #[serde(default)]
    pub seed: u64,
}

impl GenSpec {
    pub fn standard(columns: usize, target_rules: usize, seed: u64) -> Self {
        GenSpec {
            columns: ColumnLayout::Standard(columns),
            target_rules,
            seed,
        }
    }
}

/// Per-column extent of one leaf: an integer range or a set of category indices.
#[derive(Debug, Clone)]
enum Extent {
    Range(i64, i64),
    Categories(Vec<usize>),
}

impl Extent {
    fn splittable(&self) -> bool {
        match self {
            Extent::Range(a, b) => b > a,
            Extent::Categories(c) => c.len() > 1,
        }
    }

    fn split(&self, rng: &mut ChaCha8Rng) -> (Extent, Extent) {
        match self {
            Extent::Range(a, b) => {
                let cut = rng.gen_range(*a..*b);
                (Extent::Range(*a, cut), Extent::Range(cut + 1, *b))
            }
            Extent::Categories(cats) => {
                let mut cats = cats.clone();
                cats.shuffle(rng);
                let at = rng.gen_range(1..cats.len());
                let (mut left, mut right) = (cats[..at].to_vec(), cats[at..].to_vec());
                left.sort_unstable();
                right.sort_unstable();
                (Extent::Categories(left), Extent::Categories(right))
            }
        }
    }
}

pub(crate) fn derive_seed(seed: u64, stream: u64) -> u64 {
    // splitmix64 step, so nearby seeds give unrelated streams
    let mut z = seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn entry(extent: &Extent, column: &ColumnSpec) -> Condition {
    match (extent, column) {
        (Extent::Range(a, b), ColumnSpec::Numeric { min, max, .. }) if a == min && b == max => Condition::Any,
        (Extent::Range(a, b), _) if a == b => Condition::literal(Value::Integer(*a)),
        (Extent::Range(a, b), _) => Condition::closed(Value::Integer(*a), Value::Integer(*b)),
        (Extent::Categories(c), ColumnSpec::Categorical { categories, .. }) if c.len() == categories.len() => {
            Condition::Any
        }
        (Extent::Categories(c), ColumnSpec::Categorical { categories, .. }) => {
            Condition::any_of(c.iter().map(|&k| Condition::literal(Value::string(&categories[k]))))
        }
        (Extent::Categories(_), ColumnSpec::Numeric { .. }) => unreachable!("extent follows its column"),
    }
}

fn facet(column: &ColumnSpec) -> Attribute {
    match column {
        ColumnSpec::Numeric { name, min, max } => Attribute::new(name, DataType::Integer)
            .with_facet(Condition::closed(Value::Integer(*min), Value::Integer(*max))),
        ColumnSpec::Categorical { name, categories } => Attribute::new(name, DataType::String).with_facet(
            Condition::any_of(categories.iter().map(|c| Condition::literal(Value::string(c)))),
        ),
    }
}

/// A table whose rules partition the input space exactly `target_rules` ways.
pub fn generate_table(spec: &GenSpec) -> Result<DecisionTable> {
    if spec.target_rules == 0 {
        return Err(Error::Spec("targetRules must be at least 1".into()));
    }
    let columns = spec.columns.resolve()?;
    let mut root = Vec::with_capacity(columns.len());
    for col in &columns {
        root.push(match col {
            ColumnSpec::Numeric { min, max, name } if min > max => {
                return Err(Error::Spec(format!("column {name}: empty range {min}..{max}")))
            }
            ColumnSpec::Numeric { min, max, .. } => Extent::Range(*min, *max),
            ColumnSpec::Categorical { categories, name } if categories.is_empty() => {
                return Err(Error::Spec(format!("column {name}: no categories")))
            }
            ColumnSpec::Categorical { categories, .. } => Extent::Categories((0..categories.len()).collect()),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut leaves = vec![root];
    let mut open: Vec<usize> = if leaves[0].iter().any(Extent::splittable) {
        vec![0]
    } else {
        vec![]
    };
    while leaves.len() < spec.target_rules && !open.is_empty() {
        let pick = rng.gen_range(0..open.len());
        let leaf = open[pick];
        let dims: Vec<usize> = (0..columns.len()).filter(|&k| leaves[leaf][k].splittable()).collect();
        let k = dims[rng.gen_range(0..dims.len())];
        let (left, right) = leaves[leaf][k].split(&mut rng);
        let mut other = leaves[leaf].clone();
        leaves[leaf][k] = left;
        other[k] = right;
        leaves.push(other);
        let new = leaves.len() - 1;
        if !leaves[leaf].iter().any(Extent::splittable) {
            open.swap_remove(pick);
        }
        if leaves[new].iter().any(Extent::splittable) {
            open.push(new);
        }
    }
    if leaves.len() * 100 < spec.target_rules * 95 {
        return Err(Error::Spec(format!(
            "the input space only splits into {} rules, {} requested",
            leaves.len(),
            spec.target_rules
        )));
    }

    let rules = leaves
        .iter()
        .enumerate()
        .map(|(i, leaf)| Rule {
            id: format!("r{}", i + 1),
            inputs: leaf.iter().zip(&columns).map(|(e, c)| entry(e, c)).collect(),
            outputs: vec![Value::string(GRADES[rng.gen_range(0..GRADES.len())])],
        })
        .collect();
    let grade = Attribute::new("Grade", DataType::String).with_facet(Condition::any_of(
        GRADES.iter().map(|g| Condition::literal(Value::string(*g))),
    ));
    DecisionTable::new(
        format!("Synthetic {}x{}", columns.len(), spec.target_rules),
        columns.iter().map(facet).collect(),
        vec![grade],
        rules,
        HitPolicy::Unique,
        Completeness::Complete,
        None,
    )
}
