use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{build_codec, build_universe, CategoryCodec, Universe};
use crate::interval::{Bound, Endpoint, Interval, IntervalSet, Scalar};
use crate::model::DecisionTable;
use crate::sfeel::{lower_to_intervals, Condition, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseMode {
    /// Widen one entry per chosen rule so it reaches into a neighbour.
    Overlap,
    /// Shrink one entry per chosen rule so it leaves a hole.
    Missing,
}

impl FromStr for NoiseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overlap" => Ok(NoiseMode::Overlap),
            "missing" => Ok(NoiseMode::Missing),
            other => Err(Error::Spec(format!("unknown noise mode {other:?}"))),
        }
    }
}

fn shift(v: Scalar, by: f64) -> Scalar {
    match v {
        Scalar::Int(i) => Scalar::Int(i.saturating_add(by as i64)),
        Scalar::Real(r) => Scalar::Real(r + by),
    }
}

fn moved(b: Bound, by: f64) -> Bound {
    match b.value {
        Endpoint::Finite(v) => Bound {
            value: Endpoint::Finite(shift(v, by)),
            ..b
        },
        _ => b,
    }
}

fn condition_of(set: &IntervalSet) -> Condition {
    Condition::any_of(set.parts().iter().map(Condition::from_interval))
}

fn widen_numeric(entry: &IntervalSet, facet: &IntervalSet) -> Option<Condition> {
    let [iv] = entry.parts() else { return None };
    let wider = Interval::new(moved(iv.lower(), -1.0), moved(iv.upper(), 1.0))?;
    let set = IntervalSet::single(wider).intersect(facet);
    (set != *entry).then(|| condition_of(&set))
}

fn shrink_numeric(entry: &IntervalSet) -> Option<Condition> {
    let [iv] = entry.parts() else { return None };
    let (lo, hi) = (iv.lower(), iv.upper());
    let (Some(a), Some(b)) = (lo.value.finite(), hi.value.finite()) else {
        return None;
    };
    let width = b.as_f64() - a.as_f64();
    let narrower = if width >= 2.0 {
        Interval::new(moved(lo, 1.0), moved(hi, -1.0))
    } else if width > 0.0 {
        let mid = match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + (y - x) / 2),
            _ => Scalar::Real((a.as_f64() + b.as_f64()) / 2.0),
        };
        Interval::new(lo, Bound::closed(mid))
    } else {
        None
    }?;
    let set = IntervalSet::single(narrower);
    (set != *entry).then(|| condition_of(&set))
}

fn categories_in(codec_values: &[Value], set: &IntervalSet, codec: &crate::geometry::ColumnCodec) -> Vec<Value> {
    codec_values
        .iter()
        .filter(|v| {
            codec
                .interval_of(v)
                .is_ok_and(|iv| set.parts().iter().any(|p| p.contains_interval(&iv)))
        })
        .cloned()
        .collect()
}

fn list(values: Vec<Value>) -> Condition {
    Condition::any_of(values.into_iter().map(Condition::literal))
}

/// The possible modifications of one rule, one per effective column.
fn options(
    table: &DecisionTable,
    codec: &CategoryCodec,
    universe: &Universe,
    row: usize,
    mode: NoiseMode,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, Condition)> {
    let rule = &table.rules()[row];
    let mut out = Vec::new();
    for (k, (cond, attr)) in rule.inputs.iter().zip(table.inputs()).enumerate() {
        let Ok(entry) = lower_to_intervals(cond, attr.ty, codec.column(k)) else {
            continue;
        };
        let entry = entry.intersect(universe.dim(k));
        if entry.is_empty() {
            continue;
        }
        let changed = match codec.column(k) {
            None => match mode {
                NoiseMode::Overlap => widen_numeric(&entry, universe.dim(k)),
                NoiseMode::Missing => shrink_numeric(&entry),
            },
            Some(col) => {
                let all = categories_in(col.categories(), universe.dim(k), col);
                let mut present = categories_in(&all, &entry, col);
                match mode {
                    NoiseMode::Overlap => {
                        let absent: Vec<&Value> = all.iter().filter(|v| !present.contains(v)).collect();
                        absent.choose(rng).map(|v| {
                            present.push((*v).clone());
                            present.sort_by_key(|v| col.code(v));
                            list(present)
                        })
                    }
                    NoiseMode::Missing if present.len() > 1 => {
                        present.remove(rng.gen_range(0..present.len()));
                        Some(list(present))
                    }
                    NoiseMode::Missing => None,
                }
            }
        };
        if let Some(c) = changed {
            out.push((k, c));
        }
    }
    out
}

/// Modifies one column of `ceil(fraction * rules)` randomly chosen rules.
///
/// Numeric entries move each finite bound by one unit, staying inside the facet;
/// categorical entries gain or lose one category. Rules with no column that can be
/// changed are passed over in favour of others.
pub fn inject_noise(table: &DecisionTable, mode: NoiseMode, fraction: f64, seed: u64) -> Result<DecisionTable> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Spec(format!(
            "noise fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let n = table.rules().len();
    let wanted = (fraction * n as f64).ceil() as usize;
    let codec = build_codec(table);
    let universe = build_universe(table, &codec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<usize> = (0..n).collect();
    rows.shuffle(&mut rng);

    let mut rules = table.rules().to_vec();
    let mut done = 0;
    for row in rows {
        if done == wanted {
            break;
        }
        let opts = options(table, &codec, &universe, row, mode, &mut rng);
        if let Some((k, cond)) = opts.choose(&mut rng) {
            rules[row].inputs[*k] = cond.clone();
            done += 1;
        }
    }
    table.clone().with_rules(rules)
}
