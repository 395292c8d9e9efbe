//! S-FEEL conditions: the cell language of decision tables.
//!
//! Conditions are parsed against the column's [`DataType`], so every literal in the
//! resulting AST already carries the column's kind.

mod eval;
mod lower;
mod parser;
mod render;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eval::{fold_term, satisfies};
pub use lower::lower_to_intervals;
pub use parser::{parse_condition, parse_term};

/// The four supported column kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataType {
    String,
    Boolean,
    Integer,
    Real,
}

impl DataType {
    /// Comparisons, intervals and arithmetic exist only for numeric kinds.
    pub fn is_numeric(&self) -> bool {
        matches!(self, DataType::Integer | DataType::Real)
    }

    pub fn is_categorical(&self) -> bool {
        !self.is_numeric()
    }

    pub fn name(&self) -> &'static str {
        match self {
            DataType::String => "string",
            DataType::Boolean => "boolean",
            DataType::Integer => "integer",
            DataType::Real => "real",
        }
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DataType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "string" => Ok(DataType::String),
            "boolean" => Ok(DataType::Boolean),
            "integer" => Ok(DataType::Integer),
            "real" => Ok(DataType::Real),
            other => Err(Error::Schema(format!("unknown type {other:?}"))),
        }
    }
}

/// A literal object. Values of different kinds are never equal.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    String(String),
    Boolean(bool),
    Integer(i64),
    Real(f64),
}

impl Value {
    pub fn kind(&self) -> DataType {
        match self {
            Value::String(_) => DataType::String,
            Value::Boolean(_) => DataType::Boolean,
            Value::Integer(_) => DataType::Integer,
            Value::Real(_) => DataType::Real,
        }
    }

    pub fn string(s: impl Into<String>) -> Value {
        Value::String(s.into())
    }

    /// Parses a single literal for a column of kind `ty`, folding any arithmetic.
    pub fn parse(text: &str, ty: DataType) -> Result<Value> {
        fold_term(&parse_term(text, ty)?)
    }

    /// Renders the value so that [`Value::parse`] reads it back.
    pub fn to_sfeel(&self) -> String {
        match self {
            Value::String(s) if is_bare_word(s) => s.clone(),
            Value::String(s) => {
                let mut out = String::with_capacity(s.len() + 2);
                out.push('"');
                for c in s.chars() {
                    if c == '"' || c == '\\' {
                        out.push('\\');
                    }
                    out.push(c);
                }
                out.push('"');
                out
            }
            other => other.to_string(),
        }
    }
}

pub(crate) fn is_bare_word(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "not"
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::String(s) => f.write_str(s),
            Value::Boolean(b) => write!(f, "{b}"),
            Value::Integer(i) => write!(f, "{i}"),
            Value::Real(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }
}

/// A ground term: a literal or a binary arithmetic function applied to terms.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Literal(Value),
    Apply(ArithOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn lit(value: Value) -> Term {
        Term::Literal(value)
    }

    pub fn apply(op: ArithOp, lhs: Term, rhs: Term) -> Term {
        Term::Apply(op, Box::new(lhs), Box::new(rhs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Gt,
    Le,
    Ge,
}

impl CmpOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }
}

/// An S-FEEL condition over a single attribute.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    /// `-`
    Any,
    /// A bare term, shorthand for `= term`.
    Match(Term),
    /// `not(term)`
    Not(Term),
    Compare(CmpOp, Term),
    Interval {
        lo_closed: bool,
        lo: Term,
        hi: Term,
        hi_closed: bool,
    },
    /// Comma-separated alternatives; never directly nested.
    Alternative(Vec<Condition>),
}

impl Condition {
    pub fn literal(value: Value) -> Condition {
        Condition::Match(Term::Literal(value))
    }

    pub fn closed(lo: Value, hi: Value) -> Condition {
        Condition::Interval {
            lo_closed: true,
            lo: Term::Literal(lo),
            hi: Term::Literal(hi),
            hi_closed: true,
        }
    }

    /// Builds an alternative, flattening nested alternatives. A single item is returned as is.
    pub fn any_of(items: impl IntoIterator<Item = Condition>) -> Condition {
        let mut flat = Vec::new();
        for item in items {
            match item {
                Condition::Alternative(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Condition::Alternative(flat)
        }
    }
}
