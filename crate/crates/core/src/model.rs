//! Decision tables: the data model, the interchange document, and structural checks.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{Diagnostic, DiagnosticCode, Severity};
use crate::error::{Error, Result};
use crate::geometry::build_codec;
use crate::sfeel::{lower_to_intervals, parse_condition, satisfies, Condition, DataType, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum HitPolicy {
    #[default]
    #[serde(rename = "U")]
    Unique,
    #[serde(rename = "A")]
    Any,
    #[serde(rename = "P")]
    Priority,
    #[serde(rename = "F")]
    First,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Completeness {
    #[default]
    #[serde(rename = "C")]
    Complete,
    #[serde(rename = "I")]
    Incomplete,
}

impl fmt::Display for HitPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HitPolicy::Unique => "U",
            HitPolicy::Any => "A",
            HitPolicy::Priority => "P",
            HitPolicy::First => "F",
        })
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Complete => "C",
            Completeness::Incomplete => "I",
        })
    }
}

/// An input or output column.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub name: String,
    pub ty: DataType,
    /// `None` when the document gives no facet; the column then admits its whole domain.
    pub facet: Option<Condition>,
}

impl Attribute {
    pub fn new(name: impl Into<String>, ty: DataType) -> Self {
        Attribute {
            name: name.into(),
            ty,
            facet: None,
        }
    }

    pub fn with_facet(mut self, facet: Condition) -> Self {
        self.facet = Some(facet);
        self
    }

    pub fn facet(&self) -> &Condition {
        self.facet.as_ref().unwrap_or(&Condition::Any)
    }

    /// `value` is of this column's kind and satisfies its facet.
    pub fn is_legal(&self, value: &Value) -> Result<bool> {
        satisfies(self.facet(), value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub id: String,
    pub inputs: Vec<Condition>,
    pub outputs: Vec<Value>,
}

/// A single-hit decision table.
///
/// Priorities are ranks in `1..=|rules|`; a larger rank wins.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTable {
    pub(crate) name: String,
    pub(crate) inputs: Vec<Attribute>,
    pub(crate) outputs: Vec<Attribute>,
    pub(crate) rules: Vec<Rule>,
    pub(crate) priority: Vec<u32>,
    pub(crate) explicit_priority: bool,
    pub(crate) completeness: Completeness,
    pub(crate) hit_policy: HitPolicy,
}

impl DecisionTable {
    /// Builds and checks a table. With `priority == None` ranks follow row order, first row highest.
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<Attribute>,
        outputs: Vec<Attribute>,
        rules: Vec<Rule>,
        hit_policy: HitPolicy,
        completeness: Completeness,
        priority: Option<Vec<u32>>,
    ) -> Result<Self> {
        let explicit_priority = priority.is_some();
        let priority = match priority {
            Some(p) if p.len() != rules.len() => {
                return Err(Error::Schema(format!(
                    "{} priorities for {} rules",
                    p.len(),
                    rules.len()
                )))
            }
            Some(p) => p,
            None => row_ranks(rules.len()),
        };
        let table = DecisionTable {
            name: name.into(),
            inputs,
            outputs,
            rules,
            priority,
            explicit_priority,
            completeness,
            hit_policy,
        };
        table.check_invariants()?;
        Ok(table)
    }

    fn check_invariants(&self) -> Result<()> {
        let mut names = HashSet::new();
        for attr in self.inputs.iter().chain(&self.outputs) {
            if !names.insert(attr.name.as_str()) {
                return Err(Error::Schema(format!("duplicate attribute name {:?}", attr.name)));
            }
            if let Some(facet) = &attr.facet {
                check_condition_kind(facet, attr.ty)
                    .map_err(|e| Error::Schema(format!("facet of {:?}: {e}", attr.name)))?;
            }
        }
        let mut ids = HashSet::new();
        for rule in &self.rules {
            if !ids.insert(rule.id.as_str()) {
                return Err(Error::Schema(format!("duplicate rule id {:?}", rule.id)));
            }
            if rule.inputs.len() != self.inputs.len() || rule.outputs.len() != self.outputs.len() {
                return Err(Error::Schema(format!(
                    "rule {:?} has {} input and {} output entries, expected {} and {}",
                    rule.id,
                    rule.inputs.len(),
                    rule.outputs.len(),
                    self.inputs.len(),
                    self.outputs.len()
                )));
            }
            for (cond, attr) in rule.inputs.iter().zip(&self.inputs) {
                check_condition_kind(cond, attr.ty).map_err(|e| e.at_cell(&rule.id, &attr.name))?;
            }
            for (value, attr) in rule.outputs.iter().zip(&self.outputs) {
                if value.kind() != attr.ty {
                    return Err(
                        Error::Type(format!("{} output {value} in a {} column", value.kind(), attr.ty))
                            .at_cell(&rule.id, &attr.name),
                    );
                }
            }
        }
        // every facet must admit something once categories are encoded
        let codec = build_codec(self);
        for (k, attr) in self.inputs.iter().enumerate() {
            let set = lower_to_intervals(attr.facet(), attr.ty, codec.column(k))?;
            if set.is_empty() {
                return Err(Error::Schema(format!("facet of {:?} admits no value", attr.name)));
            }
        }
        for attr in &self.outputs {
            if let Some(facet) = &attr.facet {
                if attr.ty.is_numeric() && lower_to_intervals(facet, attr.ty, None)?.is_empty() {
                    return Err(Error::Schema(format!("facet of {:?} admits no value", attr.name)));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &[Attribute] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Attribute] {
        &self.outputs
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn hit_policy(&self) -> HitPolicy {
        self.hit_policy
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    /// Stored priority rank of the rule at `row`.
    pub fn priority(&self, row: usize) -> u32 {
        self.priority[row]
    }

    pub fn has_explicit_priority(&self) -> bool {
        self.explicit_priority
    }

    /// The rank the hit policy actually uses: row order for first-hit, stored ranks otherwise.
    pub fn effective_rank(&self, row: usize) -> u32 {
        match self.hit_policy {
            HitPolicy::First => (self.rules.len() - row) as u32,
            _ => self.priority[row],
        }
    }

    pub fn rule_index(&self, id: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.id == id)
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Position of a column among inputs, then outputs.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().chain(&self.outputs).position(|a| a.name == name)
    }

    pub fn with_hit_policy(mut self, hit_policy: HitPolicy) -> Self {
        self.hit_policy = hit_policy;
        self
    }

    pub fn with_completeness(mut self, completeness: Completeness) -> Self {
        self.completeness = completeness;
        self
    }

    /// Replaces the rules, re-deriving row ranks unless priorities were explicit and still fit.
    pub fn with_rules(mut self, rules: Vec<Rule>) -> Result<Self> {
        let priority = if self.explicit_priority && self.priority.len() == rules.len() {
            Some(self.priority.clone())
        } else {
            None
        };
        self.explicit_priority = priority.is_some();
        self.priority = priority.unwrap_or_else(|| row_ranks(rules.len()));
        self.rules = rules;
        self.check_invariants()?;
        Ok(self)
    }

    /// Builds a complete input configuration from `(name, value)` pairs.
    pub fn input<S: AsRef<str>>(&self, pairs: impl IntoIterator<Item = (S, Value)>) -> Result<InputConfiguration> {
        let mut values: Vec<Option<Value>> = vec![None; self.inputs.len()];
        for (name, value) in pairs {
            let name = name.as_ref();
            let k = self
                .inputs
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::Schema(format!("unknown input attribute {name:?}")))?;
            if value.kind() != self.inputs[k].ty {
                return Err(Error::Type(format!(
                    "{} value {value} for {} column {name:?}",
                    value.kind(),
                    self.inputs[k].ty
                )));
            }
            values[k] = Some(value);
        }
        let values = values
            .into_iter()
            .zip(&self.inputs)
            .map(|(v, a)| v.ok_or_else(|| Error::Schema(format!("no value for input {:?}", a.name))))
            .collect::<Result<Vec<_>>>()?;
        Ok(InputConfiguration(values))
    }

    /// Parses `"name=value,name=value"`; each value is read with its column's type.
    pub fn parse_input(&self, text: &str) -> Result<InputConfiguration> {
        let mut pairs = Vec::new();
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Schema(format!("expected name=value, got {part:?}")))?;
            let name = name.trim();
            let attr = self
                .inputs
                .iter()
                .find(|a| a.name == name)
                .ok_or_else(|| Error::Schema(format!("unknown input attribute {name:?}")))?;
            pairs.push((name.to_string(), Value::parse(value.trim(), attr.ty)?));
        }
        self.input(pairs)
    }

    /// Builds a configuration from values given in input-column order.
    pub fn input_values(&self, values: Vec<Value>) -> Result<InputConfiguration> {
        if values.len() != self.inputs.len() {
            return Err(Error::Dimension {
                left: values.len(),
                right: self.inputs.len(),
            });
        }
        let names: Vec<String> = self.inputs.iter().map(|a| a.name.clone()).collect();
        self.input(names.into_iter().zip(values))
    }
}

fn row_ranks(n: usize) -> Vec<u32> {
    (0..n).map(|k| (n - k) as u32).collect()
}

fn check_condition_kind(cond: &Condition, ty: DataType) -> Result<()> {
    // evaluating against a witness of the right kind surfaces any literal of the wrong kind
    let probe = match ty {
        DataType::String => Value::string(""),
        DataType::Boolean => Value::Boolean(false),
        DataType::Integer => Value::Integer(0),
        DataType::Real => Value::Real(0.0),
    };
    satisfies(cond, &probe).map(|_| ())
}

/// One value per input attribute, in column order.
#[derive(Debug, Clone, PartialEq)]
pub struct InputConfiguration(pub(crate) Vec<Value>);

impl InputConfiguration {
    pub fn values(&self) -> &[Value] {
        &self.0
    }
}

/// Output attribute names bound to values.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfiguration(pub Vec<(String, Value)>);

impl fmt::Display for OutputConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, value)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

/// The interchange document, as read from JSON or TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TableDocument {
    pub name: String,
    #[serde(default)]
    pub hit_policy: HitPolicy,
    #[serde(default)]
    pub completeness: Completeness,
    pub inputs: Vec<AttributeDocument>,
    pub outputs: Vec<AttributeDocument>,
    #[serde(default)]
    pub rules: Vec<RuleDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeDocument {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: DataType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDocument {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<u32>,
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
    #[serde(rename = "out")]
    pub outputs: Vec<String>,
}

impl TableDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Schema(e.to_string()))
    }

    /// Parses and type-checks every cell, producing a table.
    pub fn into_table(self) -> Result<DecisionTable> {
        let attribute = |doc: AttributeDocument| -> Result<Attribute> {
            let facet = match &doc.facet {
                Some(text) => Some(
                    parse_condition(text, doc.ty)
                        .map_err(|e| Error::Schema(format!("facet of {:?}: {e}", doc.name)))?,
                ),
                None => None,
            };
            Ok(Attribute {
                name: doc.name,
                ty: doc.ty,
                facet,
            })
        };
        let inputs = self.inputs.into_iter().map(attribute).collect::<Result<Vec<_>>>()?;
        let outputs = self.outputs.into_iter().map(attribute).collect::<Result<Vec<_>>>()?;

        let given = self.rules.iter().filter(|r| r.priority.is_some()).count();
        if given != 0 && given != self.rules.len() {
            return Err(Error::Schema(format!(
                "priorities given for {given} of {} rules; give all or none",
                self.rules.len()
            )));
        }
        let priority = (given != 0).then(|| self.rules.iter().map(|r| r.priority.unwrap()).collect());

        let mut rules = Vec::with_capacity(self.rules.len());
        for doc in self.rules {
            if doc.inputs.len() != inputs.len() || doc.outputs.len() != outputs.len() {
                return Err(Error::Schema(format!(
                    "rule {:?} has {} input and {} output entries, expected {} and {}",
                    doc.id,
                    doc.inputs.len(),
                    doc.outputs.len(),
                    inputs.len(),
                    outputs.len()
                )));
            }
            let conds = doc
                .inputs
                .iter()
                .zip(&inputs)
                .map(|(text, attr)| parse_condition(text, attr.ty).map_err(|e| e.at_cell(&doc.id, &attr.name)))
                .collect::<Result<Vec<_>>>()?;
            let values = doc
                .outputs
                .iter()
                .zip(&outputs)
                .map(|(text, attr)| Value::parse(text, attr.ty).map_err(|e| e.at_cell(&doc.id, &attr.name)))
                .collect::<Result<Vec<_>>>()?;
            rules.push(Rule {
                id: doc.id,
                inputs: conds,
                outputs: values,
            });
        }
        DecisionTable::new(
            self.name,
            inputs,
            outputs,
            rules,
            self.hit_policy,
            self.completeness,
            priority,
        )
    }
}

impl DecisionTable {
    pub fn to_document(&self) -> TableDocument {
        let attribute = |a: &Attribute| AttributeDocument {
            name: a.name.clone(),
            ty: a.ty,
            facet: a.facet.as_ref().map(|f| f.to_string()),
        };
        TableDocument {
            name: self.name.clone(),
            hit_policy: self.hit_policy,
            completeness: self.completeness,
            inputs: self.inputs.iter().map(attribute).collect(),
            outputs: self.outputs.iter().map(attribute).collect(),
            rules: self
                .rules
                .iter()
                .enumerate()
                .map(|(k, r)| RuleDocument {
                    id: r.id.clone(),
                    priority: self.explicit_priority.then(|| self.priority[k]),
                    inputs: r.inputs.iter().map(|c| c.to_string()).collect(),
                    outputs: r.outputs.iter().map(|v| v.to_sfeel()).collect(),
                })
                .collect(),
        }
    }
}

/// Loads a table from a JSON or TOML document (JSON when the text starts with `{`).
pub fn load_table(document: &str) -> Result<DecisionTable> {
    let doc = if document.trim_start().starts_with('{') {
        TableDocument::from_json(document)?
    } else {
        TableDocument::from_toml(document)?
    };
    doc.into_table()
}

pub fn load_table_file(path: impl AsRef<Path>) -> Result<DecisionTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_table(&text)
}

/// Facet compatibility of every cell, and priority well-formedness.
pub fn validate_structure(table: &DecisionTable) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let codec = build_codec(table);
    let facets: Vec<_> = table
        .inputs
        .iter()
        .enumerate()
        .map(|(k, a)| lower_to_intervals(a.facet(), a.ty, codec.column(k)))
        .collect();

    for rule in &table.rules {
        for (k, (cond, attr)) in rule.inputs.iter().zip(&table.inputs).enumerate() {
            let compatible = match (&facets[k], lower_to_intervals(cond, attr.ty, codec.column(k))) {
                (Ok(facet), Ok(entry)) => !facet.intersect(&entry).is_empty(),
                _ => false,
            };
            if !compatible {
                out.push(
                    Diagnostic::new(
                        Severity::Error,
                        DiagnosticCode::FacetIncompat,
                        format!("input entry {cond} admits no value of facet {}", attr.facet()),
                    )
                    .with_rules([rule.id.as_str()])
                    .with_columns([attr.name.as_str()]),
                );
            }
        }
        for (value, attr) in rule.outputs.iter().zip(&table.outputs) {
            if !attr.is_legal(value).unwrap_or(false) {
                out.push(
                    Diagnostic::new(
                        Severity::Error,
                        DiagnosticCode::FacetIncompat,
                        format!("output entry {} is outside facet {}", value.to_sfeel(), attr.facet()),
                    )
                    .with_rules([rule.id.as_str()])
                    .with_columns([attr.name.as_str()]),
                );
            }
        }
    }

    let n = table.rules.len() as u32;
    let mut seen = vec![false; table.rules.len()];
    let mut offenders = Vec::new();
    for (row, &rank) in table.priority.iter().enumerate() {
        if rank == 0 || rank > n || std::mem::replace(&mut seen[(rank - 1) as usize], true) {
            offenders.push(table.rules[row].id.clone());
        }
    }
    if !offenders.is_empty() {
        out.push(
            Diagnostic::new(
                Severity::Error,
                DiagnosticCode::PriorityError,
                format!("priorities are not a bijection onto 1..{n}"),
            )
            .with_rules(offenders),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOAN_GRADE: &str = include_str!("../fixtures/loan_grade.json");

    #[test]
    fn loan_grade_loads() {
        let t = load_table(LOAN_GRADE).unwrap();
        assert_eq!(t.name(), "Loan Grade");
        assert_eq!(t.rules().len(), 4);
        assert_eq!(t.inputs().len(), 2);
        assert_eq!(t.hit_policy(), HitPolicy::Unique);
        assert_eq!(t.completeness(), Completeness::Complete);
        assert_eq!((0..4).map(|r| t.priority(r)).collect::<Vec<_>>(), [4, 3, 2, 1]);
        assert!(validate_structure(&t).is_empty());
    }

    #[test]
    fn duplicate_rule_id_is_a_schema_error() {
        let mut doc = TableDocument::from_json(LOAN_GRADE).unwrap();
        doc.rules[1].id = "A".into();
        assert!(matches!(doc.into_table(), Err(Error::Schema(_))));
    }

    #[test]
    fn kind_mismatch_is_located() {
        let mut doc = TableDocument::from_json(LOAN_GRADE).unwrap();
        doc.outputs[0].facet = None;
        doc.inputs.push(AttributeDocument {
            name: "Purpose".into(),
            ty: DataType::String,
            facet: None,
        });
        for (k, r) in doc.rules.iter_mut().enumerate() {
            r.inputs.push(if k == 2 { "[0..18]".into() } else { "-".into() });
        }
        match doc.into_table() {
            Err(Error::Cell { rule, column, source }) => {
                assert_eq!((rule.as_str(), column.as_str()), ("C", "Purpose"));
                assert!(matches!(*source, Error::Type(_)));
            }
            other => panic!("expected a cell error, got {other:?}"),
        }
    }

    #[test]
    fn document_round_trip() {
        let t = load_table(LOAN_GRADE).unwrap();
        let json = t.to_document().to_json();
        assert_eq!(load_table(&json).unwrap(), t);
        let toml = t.to_document().to_toml().unwrap();
        assert_eq!(load_table(&toml).unwrap(), t);
    }

    #[test]
    fn partial_priorities_are_rejected() {
        let mut doc = TableDocument::from_json(LOAN_GRADE).unwrap();
        doc.rules[0].priority = Some(1);
        assert!(matches!(doc.into_table(), Err(Error::Schema(_))));
    }

    #[test]
    fn facet_incompatibilities() {
        let mut doc = TableDocument::from_json(LOAN_GRADE).unwrap();
        doc.rules[0].inputs[0] = "[-5..-1]".into();
        doc.rules[1].outputs[0] = "X".into();
        let t = doc.into_table().unwrap();
        let diags = validate_structure(&t);
        assert_eq!(diags.len(), 2);
        assert!(diags.iter().all(|d| d.code == DiagnosticCode::FacetIncompat));
        assert_eq!(diags[0].location.rules, ["A"]);
        assert_eq!(diags[0].location.columns, ["Annual Income"]);
        assert_eq!(diags[1].location.rules, ["B"]);
        assert_eq!(diags[1].location.columns, ["Grade"]);
    }

    #[test]
    fn duplicate_priority_ranks() {
        let mut doc = TableDocument::from_json(LOAN_GRADE).unwrap();
        for (r, p) in doc.rules.iter_mut().zip([1, 2, 2, 4]) {
            r.priority = Some(p);
        }
        let t = doc.into_table().unwrap();
        let diags = validate_structure(&t);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::PriorityError);
        assert_eq!(diags[0].location.rules, ["C"]);
    }

    #[test]
    fn parse_input_by_column_type() {
        let t = load_table(LOAN_GRADE).unwrap();
        let x = t.parse_input("Annual Income=500, Loan Size=4230").unwrap();
        assert_eq!(x.values(), &[Value::Real(500.0), Value::Real(4230.0)]);
        assert!(t.parse_input("Annual Income=500").is_err());
        assert!(t.parse_input("Income=500,Loan Size=1").is_err());
    }
}
