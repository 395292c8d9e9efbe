use std::fmt;

use serde::Serialize;

use crate::model::DecisionTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// Finding kinds. Declaration order is the report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiagnosticCode {
    FacetIncompat,
    Overlap,
    OutputDisagreement,
    MaskedRule,
    MissingRule,
    CompletenessMismatch,
    PriorityError,
}

impl DiagnosticCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagnosticCode::FacetIncompat => "FACET_INCOMPAT",
            DiagnosticCode::PriorityError => "PRIORITY_ERROR",
            DiagnosticCode::CompletenessMismatch => "COMPLETENESS_MISMATCH",
            DiagnosticCode::MissingRule => "MISSING_RULE",
            DiagnosticCode::Overlap => "OVERLAP",
            DiagnosticCode::OutputDisagreement => "OUTPUT_DISAGREEMENT",
            DiagnosticCode::MaskedRule => "MASKED_RULE",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Location {
    pub rules: Vec<String>,
    pub columns: Vec<String>,
}

/// One finding about a table. `detail` holds S-FEEL texts, one per input column, when
/// the finding is a region (an overlap witness or a missing rule row).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub location: Location,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            location: Location::default(),
            message: message.into(),
            detail: Vec::new(),
        }
    }

    pub fn with_rules<I, S>(mut self, rules: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.location.rules = rules.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_columns<I, S>(mut self, columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.location.columns = columns.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_detail(mut self, detail: Vec<String>) -> Self {
        self.detail = detail;
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{severity}[{}]", self.code)?;
        if !self.location.rules.is_empty() {
            write!(f, " rules {{{}}}", self.location.rules.join(", "))?;
        }
        if !self.location.columns.is_empty() && self.detail.is_empty() {
            write!(f, " columns {{{}}}", self.location.columns.join(", "))?;
        }
        write!(f, ": {}", self.message)?;
        if !self.detail.is_empty() {
            let cells: Vec<String> = self
                .location
                .columns
                .iter()
                .zip(&self.detail)
                .map(|(c, d)| format!("{c}: {d}"))
                .collect();
            write!(f, " [{}]", cells.join(" | "))?;
        }
        Ok(())
    }
}

/// Orders diagnostics by code, then first rule (table row), then first column.
///
/// The sort is stable, so regions keep the geometric order the analyses produce.
pub fn sort_diagnostics(diagnostics: &mut [Diagnostic], table: &DecisionTable) {
    let rule_row = |id: Option<&String>| id.and_then(|id| table.rule_index(id)).unwrap_or(usize::MAX);
    let column = |name: Option<&String>| name.and_then(|n| table.column_index(n)).unwrap_or(usize::MAX);
    diagnostics.sort_by(|a, b| {
        (
            a.code,
            rule_row(a.location.rules.first()),
            column(a.location.columns.first()),
        )
            .cmp(&(
                b.code,
                rule_row(b.location.rules.first()),
                column(b.location.columns.first()),
            ))
            .then_with(|| a.location.rules.cmp(&b.location.rules))
    });
}
