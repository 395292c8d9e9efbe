//! Matching, triggering, hit policies and masking.

use std::fmt;

use crate::analysis::grid::Grid;
use crate::error::{Error, Result};
use crate::geometry::{build_codec, build_universe, rule_region, HyperRect, TableGeometry};
use crate::model::{Attribute, DecisionTable, HitPolicy, InputConfiguration, OutputConfiguration, Rule};
use crate::sfeel::{satisfies, Condition, Value};

/// `value` is legal for `attr` and satisfies `cond`.
pub fn matches_value(attr: &Attribute, cond: &Condition, value: &Value) -> Result<bool> {
    let legal = satisfies(attr.facet(), value)?;
    let hit = satisfies(cond, value)?;
    Ok(legal && hit)
}

pub fn triggered_by(rule: &Rule, table: &DecisionTable, input: &InputConfiguration) -> Result<bool> {
    let values = input.values();
    if values.len() != table.inputs().len() || rule.inputs.len() != values.len() {
        return Err(Error::Dimension {
            left: rule.inputs.len(),
            right: values.len(),
        });
    }
    let mut all = true;
    for ((attr, cond), value) in table.inputs().iter().zip(&rule.inputs).zip(values) {
        all &= matches_value(attr, cond, value)?;
    }
    Ok(all)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Matched { output: OutputConfiguration, rule: String },
    NoMatch,
    PolicyViolation(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub outcome: Outcome,
    /// Ids of the triggered rules, in row order.
    pub triggered: Vec<String>,
}

impl EvalResult {
    pub fn fired(&self) -> Option<&str> {
        match &self.outcome {
            Outcome::Matched { rule, .. } => Some(rule),
            _ => None,
        }
    }

    pub fn output(&self) -> Option<&OutputConfiguration> {
        match &self.outcome {
            Outcome::Matched { output, .. } => Some(output),
            _ => None,
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.outcome, Outcome::PolicyViolation(_))
    }
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Matched { output, rule } => write!(f, "Matched rule {rule}: {output}"),
            Outcome::NoMatch => f.write_str("No rule matched"),
            Outcome::PolicyViolation(ids) => write!(f, "Hit policy violation: rules {} triggered", ids.join(", ")),
        }
    }
}

fn output_of(table: &DecisionTable, rule: &Rule) -> OutputConfiguration {
    OutputConfiguration(
        table
            .outputs()
            .iter()
            .zip(&rule.outputs)
            .map(|(a, v)| (a.name.clone(), v.clone()))
            .collect(),
    )
}

/// The table's answer for one input configuration.
pub fn evaluate(table: &DecisionTable, input: &InputConfiguration) -> Result<EvalResult> {
    let mut rows = Vec::new();
    for (row, rule) in table.rules().iter().enumerate() {
        if triggered_by(rule, table, input)? {
            rows.push(row);
        }
    }
    let triggered: Vec<String> = rows.iter().map(|&r| table.rules()[r].id.clone()).collect();
    let matched = |row: usize| {
        let rule = &table.rules()[row];
        Outcome::Matched {
            output: output_of(table, rule),
            rule: rule.id.clone(),
        }
    };
    let outcome = match (table.hit_policy(), rows.as_slice()) {
        (_, []) => Outcome::NoMatch,
        (HitPolicy::Unique, [row]) => matched(*row),
        (HitPolicy::Unique, _) => Outcome::PolicyViolation(triggered.clone()),
        (HitPolicy::Any, [first, rest @ ..]) => {
            let out = &table.rules()[*first].outputs;
            if rest.iter().all(|&r| &table.rules()[r].outputs == out) {
                matched(*first)
            } else {
                Outcome::PolicyViolation(triggered.clone())
            }
        }
        (HitPolicy::Priority | HitPolicy::First, _) => {
            let best = rows.iter().copied().max_by_key(|&r| table.effective_rank(r)).unwrap();
            matched(best)
        }
    };
    Ok(EvalResult { outcome, triggered })
}

/// Whether the region of `sub` lies inside the region of `sup`, by cell enumeration.
pub(crate) fn region_within(sub: &[HyperRect], sup: &[HyperRect]) -> bool {
    sub.iter().all(|r| {
        if sup.iter().any(|s| s.contains_rect(r)) {
            return true;
        }
        if !sup.iter().any(|s| s.intersects(r)) {
            return false;
        }
        let grid = Grid::spanning(sub.iter().chain(sup)).restrict(r);
        let within = grid.cells().all(|cell| {
            let p = grid.representative(&cell);
            sup.iter().any(|s| s.contains_point(&p))
        });
        within
    })
}

/// `r1` has lower priority than `r2` and everything triggering `r1` also triggers `r2`.
pub fn masked_by(r1: &Rule, r2: &Rule, table: &DecisionTable) -> bool {
    let (Some(i), Some(j)) = (table.rule_index(&r1.id), table.rule_index(&r2.id)) else {
        return false;
    };
    if i == j || table.effective_rank(j) <= table.effective_rank(i) {
        return false;
    }
    let codec = build_codec(table);
    let Ok(universe) = build_universe(table, &codec) else {
        return false;
    };
    match (
        rule_region(r1, table, &codec, &universe),
        rule_region(r2, table, &codec, &universe),
    ) {
        (Ok(a), Ok(b)) => region_within(&a, &b),
        _ => false,
    }
}

/// All ordered pairs `(masked, masking)` of rows, for rules with a non-empty region.
pub(crate) fn masked_pairs(table: &DecisionTable, geometry: &TableGeometry) -> Vec<(usize, usize)> {
    let n = table.rules().len();
    let mut pairs = Vec::new();
    for i in 0..n {
        if geometry.rects[i].is_empty() {
            continue;
        }
        for j in 0..n {
            if i != j
                && table.effective_rank(j) > table.effective_rank(i)
                && region_within(&geometry.rects[i], &geometry.rects[j])
            {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{load_table, Completeness};
    use crate::sfeel::{parse_condition, DataType};

    fn loan_grade() -> DecisionTable {
        load_table(include_str!("../fixtures/loan_grade.json")).unwrap()
    }

    fn at(t: &DecisionTable, income: f64, loan: f64) -> InputConfiguration {
        t.input_values(vec![Value::Real(income), Value::Real(loan)]).unwrap()
    }

    #[test]
    fn matching_respects_the_facet() {
        let income =
            Attribute::new("Annual Income", DataType::Real).with_facet(parse_condition(">=0", DataType::Real).unwrap());
        let b = parse_condition("[250..750]", DataType::Real).unwrap();
        assert!(matches_value(&income, &b, &Value::Real(500.0)).unwrap());
        assert!(!matches_value(&income, &Condition::Any, &Value::Real(-5.0)).unwrap());
        assert!(!matches_value(&income, &b, &Value::Real(751.0)).unwrap());
        assert!(matches!(
            matches_value(&income, &b, &Value::string("x")),
            Err(Error::Type(_))
        ));
    }

    #[test]
    fn loan_grade_triggering() {
        let t = loan_grade();
        let x = at(&t, 500.0, 4230.0);
        assert!(triggered_by(t.rule("B").unwrap(), &t, &x).unwrap());
        assert!(!triggered_by(t.rule("A").unwrap(), &t, &x).unwrap());
        let gap = at(&t, 200.0, 2000.0);
        for rule in t.rules() {
            assert!(!triggered_by(rule, &t, &gap).unwrap());
        }
    }

    #[test]
    fn loan_grade_evaluation() {
        let t = loan_grade();
        let r = evaluate(&t, &at(&t, 500.0, 4230.0)).unwrap();
        assert_eq!(r.to_string(), "Matched rule B: Grade=G");
        assert_eq!(r.triggered, ["B"]);
        let r = evaluate(&t, &at(&t, 200.0, 2000.0)).unwrap();
        assert_eq!(r.outcome, Outcome::NoMatch);
        assert!(r.triggered.is_empty());
        let r = evaluate(&t, &at(&t, 600.0, 600.0)).unwrap();
        assert_eq!(r.outcome, Outcome::PolicyViolation(vec!["A".into(), "C".into()]));
        let f = t.clone().with_hit_policy(HitPolicy::First);
        let r = evaluate(&f, &at(&f, 600.0, 600.0)).unwrap();
        assert_eq!(r.to_string(), "Matched rule A: Grade=VG");
    }

    #[test]
    fn any_policy_accepts_agreeing_outputs() {
        let doc = r#"{"name":"t","hitPolicy":"A","inputs":[{"name":"x","type":"integer"}],
            "outputs":[{"name":"o","type":"string"}],
            "rules":[{"id":"r1","in":["[0..5]"],"out":["yes"]},{"id":"r2","in":["[3..9]"],"out":["yes"]},
                     {"id":"r3","in":[">8"],"out":["no"]}]}"#;
        let t = load_table(doc).unwrap();
        let r = evaluate(&t, &t.parse_input("x=4").unwrap()).unwrap();
        assert_eq!(r.fired(), Some("r1"));
        let r = evaluate(&t, &t.parse_input("x=9").unwrap()).unwrap();
        assert!(r.is_violation());
    }

    fn nested(rank_outer_higher: bool) -> DecisionTable {
        let (p1, p2) = if rank_outer_higher { (1, 2) } else { (2, 1) };
        let doc = format!(
            r#"{{"name":"t","hitPolicy":"P","completeness":"I","inputs":[{{"name":"x","type":"integer"}}],
            "outputs":[],"rules":[{{"id":"r1","priority":{p1},"in":["[2..3]"],"out":[]}},
                                  {{"id":"r2","priority":{p2},"in":["[0..10]"],"out":[]}}]}}"#
        );
        load_table(&doc).unwrap()
    }

    #[test]
    fn masking() {
        let t = nested(true);
        assert!(masked_by(&t.rules()[0], &t.rules()[1], &t));
        assert!(!masked_by(&t.rules()[1], &t.rules()[0], &t));
        let t = nested(false);
        assert!(!masked_by(&t.rules()[0], &t.rules()[1], &t));
        let t = loan_grade().with_hit_policy(HitPolicy::Priority);
        assert!(!masked_by(t.rule("C").unwrap(), t.rule("A").unwrap(), &t));
        assert!(!masked_by(t.rule("A").unwrap(), t.rule("C").unwrap(), &t));
    }

    #[test]
    fn masking_by_a_union_of_boxes() {
        let doc = r#"{"name":"t","hitPolicy":"P","completeness":"I",
            "inputs":[{"name":"p","type":"string","facet":"a,b,c"},{"name":"x","type":"integer"}],
            "outputs":[],"rules":[{"id":"r1","priority":1,"in":["a,c","[0..4]"],"out":[]},
                                  {"id":"r2","priority":2,"in":["-","[0..9]"],"out":[]},
                                  {"id":"r3","priority":3,"in":["a,c","[0..2]"],"out":[]}]}"#;
        let t = load_table(doc).unwrap().with_completeness(Completeness::Incomplete);
        let g = TableGeometry::new(&t).unwrap();
        assert_eq!(masked_pairs(&t, &g), vec![(0, 1)]);
    }
}
