//! Rules as iso-oriented hyper-rectangles.
//!
//! Every input column becomes one axis. Numeric columns are used as is; string and
//! boolean columns are encoded by a [`ColumnCodec`] that sends the k-th category to
//! the half-open unit interval `[k..k+1)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalSet, Scalar};
use crate::model::{DecisionTable, InputConfiguration, Rule};
use crate::sfeel::{lower_to_intervals, Condition, DataType, Term, Value};

/// Category encoding for one string or boolean column.
///
/// String columns are closed-world: the categories are the facet's literals followed by
/// every other literal the rules mention. A string column that mentions no literal at all
/// gets a single anonymous slot standing for "any value".
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnCodec {
    kind: DataType,
    categories: Vec<Value>,
    index: HashMap<String, usize>,
}

impl ColumnCodec {
    pub fn new(kind: DataType, categories: Vec<Value>) -> Self {
        let mut codec = ColumnCodec {
            kind,
            categories: Vec::new(),
            index: HashMap::new(),
        };
        for c in categories {
            codec.push(c);
        }
        codec
    }

    fn push(&mut self, value: Value) {
        let key = value.to_sfeel();
        if !self.index.contains_key(&key) {
            self.index.insert(key, self.categories.len());
            self.categories.push(value);
        }
    }

    pub fn kind(&self) -> DataType {
        self.kind
    }

    pub fn categories(&self) -> &[Value] {
        &self.categories
    }

    /// True when the column has no named category and a single anonymous slot.
    pub fn is_wildcard(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn code(&self, value: &Value) -> Option<usize> {
        if value.kind() != self.kind {
            return None;
        }
        self.index.get(&value.to_sfeel()).copied()
    }

    pub fn encode(&self, value: &Value) -> Result<Scalar> {
        self.code(value)
            .map(|k| Scalar::Real(k as f64))
            .ok_or_else(|| Error::Codec(format!("{value} is not a known category")))
    }

    /// The unit interval `[k..k+1)` of a category.
    pub fn interval_of(&self, value: &Value) -> Result<Interval> {
        let k = self.encode(value)?;
        Ok(unit(k.as_f64()))
    }

    /// All encoded values of this column.
    pub fn domain(&self) -> IntervalSet {
        let slots = self.categories.len().max(1);
        IntervalSet::single(
            Interval::new(
                Bound::closed(Scalar::Real(0.0)),
                Bound::open_at(Scalar::Real(slots as f64)),
            )
            .expect("non-empty domain"),
        )
    }

    /// Categories whose unit interval meets `iv`.
    pub fn decode(&self, iv: &Interval) -> Vec<Value> {
        self.categories
            .iter()
            .enumerate()
            .filter(|(k, _)| unit(*k as f64).intersects(iv))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Renders a sub-interval of the domain back as a condition.
    pub fn render(&self, iv: &Interval) -> Condition {
        let values = self.decode(iv);
        if self.is_wildcard() || values.len() == self.categories.len() {
            Condition::Any
        } else {
            Condition::any_of(values.into_iter().map(|v| Condition::Match(Term::Literal(v))))
        }
    }
}

fn unit(k: f64) -> Interval {
    Interval::new(Bound::closed(Scalar::Real(k)), Bound::open_at(Scalar::Real(k + 1.0))).expect("unit interval")
}

fn collect_literals(cond: &Condition, out: &mut Vec<Value>) {
    match cond {
        Condition::Match(t) | Condition::Not(t) => {
            if let Ok(v) = crate::sfeel::fold_term(t) {
                out.push(v);
            }
        }
        Condition::Alternative(items) => items.iter().for_each(|c| collect_literals(c, out)),
        _ => {}
    }
}

/// Per-input-column encodings; `None` for numeric columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryCodec {
    columns: Vec<Option<ColumnCodec>>,
}

impl CategoryCodec {
    pub fn column(&self, k: usize) -> Option<&ColumnCodec> {
        self.columns.get(k).and_then(Option::as_ref)
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Encodes one value of column `k` onto its axis.
    pub fn encode(&self, k: usize, value: &Value) -> Result<Scalar> {
        match (self.column(k), value) {
            (Some(codec), v) => codec.encode(v),
            (None, Value::Integer(i)) => Ok(Scalar::Int(*i)),
            (None, Value::Real(r)) => Ok(Scalar::Real(*r)),
            (None, v) => Err(Error::Type(format!("{} value {v} on a numeric axis", v.kind()))),
        }
    }

    pub fn encode_input(&self, input: &InputConfiguration) -> Result<Vec<Scalar>> {
        input
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| self.encode(k, v))
            .collect()
    }
}

/// Builds the category encoding for every input column of `table`.
pub fn build_codec(table: &DecisionTable) -> CategoryCodec {
    let columns = table
        .inputs()
        .iter()
        .enumerate()
        .map(|(k, attr)| match attr.ty {
            DataType::Integer | DataType::Real => None,
            DataType::Boolean => Some(ColumnCodec::new(
                DataType::Boolean,
                vec![Value::Boolean(false), Value::Boolean(true)],
            )),
            DataType::String => {
                let mut literals = Vec::new();
                collect_literals(attr.facet(), &mut literals);
                for rule in table.rules() {
                    collect_literals(&rule.inputs[k], &mut literals);
                }
                literals.retain(|v| v.kind() == DataType::String);
                Some(ColumnCodec::new(DataType::String, literals))
            }
        })
        .collect();
    CategoryCodec { columns }
}

/// An axis-aligned box: one non-empty interval per input column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperRect {
    dims: Vec<Interval>,
}

impl HyperRect {
    pub fn new(dims: Vec<Interval>) -> Self {
        HyperRect { dims }
    }

    pub fn dims(&self) -> &[Interval] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> &Interval {
        &self.dims[k]
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn contains_point(&self, point: &[Scalar]) -> bool {
        self.dims.len() == point.len() && self.dims.iter().zip(point).all(|(iv, p)| iv.contains(*p))
    }

    pub fn contains_rect(&self, other: &HyperRect) -> bool {
        self.dims.iter().zip(&other.dims).all(|(a, b)| a.contains_interval(b))
    }

    pub fn intersects(&self, other: &HyperRect) -> bool {
        self.dims.iter().zip(&other.dims).all(|(a, b)| a.intersects(b))
    }

    pub fn intersect(&self, other: &HyperRect) -> Option<HyperRect> {
        self.dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()
            .map(HyperRect::new)
    }
}

impl fmt::Display for HyperRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.dims.iter().enumerate() {
            if k > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Component-wise intersection; `None` when any component is empty.
pub fn intersect_rects(a: &HyperRect, b: &HyperRect) -> Result<Option<HyperRect>> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.intersect(b))
}

/// The admissible input space: each column's facet, lowered.
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    dims: Vec<IntervalSet>,
}

impl Universe {
    pub fn dims(&self) -> &[IntervalSet] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> &IntervalSet {
        &self.dims[k]
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn contains_point(&self, point: &[Scalar]) -> bool {
        self.dims.iter().zip(point).all(|(s, p)| s.contains(*p))
    }

    /// Boxes covering the universe (more than one when a facet is a union).
    pub fn boxes(&self) -> Vec<HyperRect> {
        cross_product(&self.dims)
    }
}

fn cross_product(sets: &[IntervalSet]) -> Vec<HyperRect> {
    let mut acc: Vec<Vec<Interval>> = vec![Vec::with_capacity(sets.len())];
    for set in sets {
        let mut next = Vec::with_capacity(acc.len() * set.parts().len());
        for prefix in &acc {
            for part in set.parts() {
                let mut dims = prefix.clone();
                dims.push(*part);
                next.push(dims);
            }
        }
        acc = next;
    }
    acc.into_iter().map(HyperRect::new).collect()
}

pub fn build_universe(table: &DecisionTable, codec: &CategoryCodec) -> Result<Universe> {
    let dims = table
        .inputs()
        .iter()
        .enumerate()
        .map(|(k, a)| lower_to_intervals(a.facet(), a.ty, codec.column(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Universe { dims })
}

/// The region of one rule inside `universe`, as disjoint boxes.
pub fn rule_region(
    rule: &Rule,
    table: &DecisionTable,
    codec: &CategoryCodec,
    universe: &Universe,
) -> Result<Vec<HyperRect>> {
    let mut sets = Vec::with_capacity(rule.inputs.len());
    for (k, (cond, attr)) in rule.inputs.iter().zip(table.inputs()).enumerate() {
        let set = lower_to_intervals(cond, attr.ty, codec.column(k))?.intersect(universe.dim(k));
        if set.is_empty() {
            return Ok(Vec::new());
        }
        sets.push(set);
    }
    Ok(cross_product(&sets))
}

/// Lowers a rule to hyper-rectangles clipped to the facets.
pub fn rule_to_rects(rule: &Rule, table: &DecisionTable, codec: &CategoryCodec) -> Result<Vec<HyperRect>> {
    let universe = build_universe(table, codec)?;
    rule_region(rule, table, codec, &universe)
}

/// Everything the analyses need about a table's geometry, computed once.
#[derive(Debug, Clone)]
pub struct TableGeometry {
    pub codec: CategoryCodec,
    pub universe: Universe,
    /// Boxes per rule, in row order. Empty for facet-incompatible rules.
    pub rects: Vec<Vec<HyperRect>>,
}

impl TableGeometry {
    pub fn new(table: &DecisionTable) -> Result<Self> {
        let codec = build_codec(table);
        let universe = build_universe(table, &codec)?;
        let rects = table
            .rules()
            .iter()
            .map(|r| rule_region(r, table, &codec, &universe))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableGeometry { codec, universe, rects })
    }

    pub fn dimensions(&self) -> usize {
        self.universe.len()
    }

    /// Renders a box as one S-FEEL condition per input column.
    pub fn render(&self, rect: &HyperRect) -> Vec<String> {
        rect.dims()
            .iter()
            .enumerate()
            .map(|(k, iv)| match self.codec.column(k) {
                Some(codec) => codec.render(iv).to_string(),
                None => Condition::from_interval(iv).to_string(),
            })
            .collect()
    }

    /// Whether the rule at `row` covers the encoded point.
    pub fn rule_covers(&self, row: usize, point: &[Scalar]) -> bool {
        self.rects[row].iter().any(|r| r.contains_point(point))
    }
}
