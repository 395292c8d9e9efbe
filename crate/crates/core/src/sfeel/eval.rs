use std::cmp::Ordering;

use super::{ArithOp, CmpOp, Condition, Term, Value};
use crate::error::{Error, Result};

/// Constant-folds a ground term. Integer division truncates toward zero.
pub fn fold_term(term: &Term) -> Result<Value> {
    match term {
        Term::Literal(v) => Ok(v.clone()),
        Term::Apply(op, lhs, rhs) => apply(*op, fold_term(lhs)?, fold_term(rhs)?),
    }
}

fn apply(op: ArithOp, lhs: Value, rhs: Value) -> Result<Value> {
    match (lhs, rhs) {
        (Value::Integer(a), Value::Integer(b)) => {
            if op == ArithOp::Div && b == 0 {
                return Err(Error::Eval(format!("division by zero in {a} / {b}")));
            }
            let out = match op {
                ArithOp::Add => a.checked_add(b),
                ArithOp::Sub => a.checked_sub(b),
                ArithOp::Mul => a.checked_mul(b),
                ArithOp::Div => a.checked_div(b),
            };
            out.map(Value::Integer)
                .ok_or_else(|| Error::Eval(format!("integer overflow in {a} {} {b}", op.symbol())))
        }
        (Value::Real(a), Value::Real(b)) => {
            if op == ArithOp::Div && b == 0.0 {
                return Err(Error::Eval(format!("division by zero in {a} / {b}")));
            }
            let out = match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => a / b,
            };
            if out.is_finite() {
                Ok(Value::Real(out))
            } else {
                Err(Error::Eval(format!("non-finite result of {a} {} {b}", op.symbol())))
            }
        }
        (a, b) => Err(Error::Type(format!(
            "cannot apply {} to {} and {}",
            op.symbol(),
            a.kind(),
            b.kind()
        ))),
    }
}

fn same_kind(term: &Value, value: &Value) -> Result<()> {
    if term.kind() == value.kind() {
        Ok(())
    } else {
        Err(Error::Type(format!(
            "{} value {value} tested against a {} condition",
            value.kind(),
            term.kind()
        )))
    }
}

fn order(lhs: &Value, rhs: &Value) -> Result<Ordering> {
    same_kind(rhs, lhs)?;
    match (lhs, rhs) {
        (Value::Integer(a), Value::Integer(b)) => Ok(a.cmp(b)),
        (Value::Real(a), Value::Real(b)) => a
            .partial_cmp(b)
            .ok_or_else(|| Error::Eval("unordered real values".into())),
        (a, _) => Err(Error::Type(format!("{} values are not ordered", a.kind()))),
    }
}

fn equals(term: &Term, value: &Value) -> Result<bool> {
    let t = fold_term(term)?;
    same_kind(&t, value)?;
    Ok(t == *value)
}

/// Evaluates the condition formula of `cond` at `value`.
pub fn satisfies(cond: &Condition, value: &Value) -> Result<bool> {
    match cond {
        Condition::Any => Ok(true),
        Condition::Match(t) => equals(t, value),
        Condition::Not(t) => Ok(!equals(t, value)?),
        Condition::Compare(op, t) => {
            let ord = order(value, &fold_term(t)?)?;
            Ok(match op {
                CmpOp::Lt => ord == Ordering::Less,
                CmpOp::Gt => ord == Ordering::Greater,
                CmpOp::Le => ord != Ordering::Greater,
                CmpOp::Ge => ord != Ordering::Less,
            })
        }
        Condition::Interval {
            lo_closed,
            lo,
            hi,
            hi_closed,
        } => {
            let above = order(value, &fold_term(lo)?)?;
            let below = order(value, &fold_term(hi)?)?;
            let lo_ok = if *lo_closed {
                above != Ordering::Less
            } else {
                above == Ordering::Greater
            };
            let hi_ok = if *hi_closed {
                below != Ordering::Greater
            } else {
                below == Ordering::Less
            };
            Ok(lo_ok && hi_ok)
        }
        Condition::Alternative(items) => {
            let mut hit = false;
            for item in items {
                // evaluate every branch so kind errors are never masked by short-circuiting
                hit |= satisfies(item, value)?;
            }
            Ok(hit)
        }
    }
}
