//! The full correctness verdict of a table.
//!
//! A table is correct when every entry fits its facet, the declared completeness
//! matches the actual one, and the hit policy holds: no overlaps under unique, only
//! agreeing overlaps under any, and no masked rule under priority and first.

use crate::analysis::{missing_in, overlaps_in, MissingRegion, OverlapGroup};
use crate::diagnostic::{sort_diagnostics, Diagnostic, DiagnosticCode, Severity};
use crate::geometry::TableGeometry;
use crate::model::{validate_structure, Completeness, DecisionTable, HitPolicy};
use crate::semantics::masked_pairs;

/// Which conjuncts to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckScope {
    /// Structure and hit policy only.
    Overlap,
    /// Structure and completeness only.
    Missing,
    #[default]
    All,
}

impl CheckScope {
    fn overlap(self) -> bool {
        self != CheckScope::Missing
    }

    fn missing(self) -> bool {
        self != CheckScope::Overlap
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessVerdict {
    pub declared: Completeness,
    pub actual_complete: bool,
    pub missing: Vec<MissingRegion>,
}

impl CompletenessVerdict {
    pub fn holds(&self) -> bool {
        self.actual_complete == (self.declared == Completeness::Complete)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectnessReport {
    pub facet_diagnostics: Vec<Diagnostic>,
    /// `None` when completeness was not checked.
    pub completeness: Option<CompletenessVerdict>,
    pub hit_policy_diagnostics: Vec<Diagnostic>,
    /// Maximal overlap groups, computed for the unique and any policies.
    pub overlaps: Vec<OverlapGroup>,
    pub correct: bool,
}

fn input_names(table: &DecisionTable) -> Vec<String> {
    table.inputs().iter().map(|a| a.name.clone()).collect()
}

impl CorrectnessReport {
    /// Every finding as a diagnostic, in report order.
    pub fn diagnostics(&self, table: &DecisionTable) -> Vec<Diagnostic> {
        let mut out = self.facet_diagnostics.clone();
        out.extend(self.hit_policy_diagnostics.iter().cloned());
        if let Some(verdict) = &self.completeness {
            let severity = match verdict.declared {
                Completeness::Complete => Severity::Error,
                Completeness::Incomplete => Severity::Warning,
            };
            for region in &verdict.missing {
                out.push(
                    Diagnostic::new(severity, DiagnosticCode::MissingRule, "no rule covers this region")
                        .with_columns(input_names(table))
                        .with_detail(region.rendered.clone()),
                );
            }
            if !verdict.holds() {
                let message = match verdict.declared {
                    Completeness::Complete => format!(
                        "declared complete, but {} region(s) are not covered",
                        verdict.missing.len()
                    ),
                    Completeness::Incomplete => {
                        "declared incomplete, but every admissible input is covered".to_string()
                    }
                };
                out.push(
                    Diagnostic::new(Severity::Error, DiagnosticCode::CompletenessMismatch, message)
                        .with_columns(input_names(table)),
                );
            }
        }
        sort_diagnostics(&mut out, table);
        out
    }
}

fn overlap_diagnostics(table: &DecisionTable, geometry: &TableGeometry, groups: &[OverlapGroup]) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for g in groups {
        let diagnostic = match table.hit_policy() {
            HitPolicy::Unique => Diagnostic::new(
                Severity::Error,
                DiagnosticCode::Overlap,
                "rules overlap under the unique hit policy",
            ),
            HitPolicy::Any => {
                let first = &table.rules()[g.rows[0]].outputs;
                if g.rows.iter().all(|&r| &table.rules()[r].outputs == first) {
                    continue;
                }
                Diagnostic::new(
                    Severity::Error,
                    DiagnosticCode::OutputDisagreement,
                    "overlapping rules disagree on their outputs",
                )
            }
            HitPolicy::Priority | HitPolicy::First => continue,
        };
        out.push(
            diagnostic
                .with_rules(g.rule_ids.iter().cloned())
                .with_columns(input_names(table))
                .with_detail(geometry.render(&g.witness)),
        );
    }
    out
}

fn masking_diagnostics(table: &DecisionTable, geometry: &TableGeometry) -> Vec<Diagnostic> {
    masked_pairs(table, geometry)
        .into_iter()
        .map(|(masked, by)| {
            let (m, b) = (&table.rules()[masked].id, &table.rules()[by].id);
            Diagnostic::new(
                Severity::Error,
                DiagnosticCode::MaskedRule,
                format!("rule {m} never fires: rule {b} has higher priority and covers it"),
            )
            .with_rules([m.clone(), b.clone()])
        })
        .collect()
}

pub fn check_correct_scoped(table: &DecisionTable, scope: CheckScope) -> CorrectnessReport {
    let facet_diagnostics = validate_structure(table);
    let geometry = crate::analysis::geometry_of(table);

    let mut overlaps = Vec::new();
    let mut hit_policy_diagnostics = Vec::new();
    if scope.overlap() {
        match table.hit_policy() {
            HitPolicy::Unique | HitPolicy::Any => {
                overlaps = overlaps_in(table, &geometry);
                hit_policy_diagnostics = overlap_diagnostics(table, &geometry, &overlaps);
            }
            HitPolicy::Priority | HitPolicy::First => {
                hit_policy_diagnostics = masking_diagnostics(table, &geometry);
            }
        }
    }

    let completeness = scope.missing().then(|| {
        let missing = missing_in(&geometry);
        CompletenessVerdict {
            declared: table.completeness(),
            actual_complete: missing.is_empty(),
            missing,
        }
    });

    let correct = facet_diagnostics.is_empty()
        && hit_policy_diagnostics.is_empty()
        && completeness.as_ref().is_none_or(CompletenessVerdict::holds);
    CorrectnessReport {
        facet_diagnostics,
        completeness,
        hit_policy_diagnostics,
        overlaps,
        correct,
    }
}

pub fn check_correct(table: &DecisionTable) -> CorrectnessReport {
    check_correct_scoped(table, CheckScope::All)
}
