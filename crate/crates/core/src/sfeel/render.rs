use std::fmt;

use super::{CmpOp, Condition, Term, Value};
use crate::interval::{Bound, Endpoint, Interval, Scalar};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Literal(v) => f.write_str(&v.to_sfeel()),
            Term::Apply(op, lhs, rhs) => write!(f, "({lhs} {} {rhs})", op.symbol()),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Any => f.write_str("-"),
            Condition::Match(t) => write!(f, "{t}"),
            Condition::Not(t) => write!(f, "not({t})"),
            Condition::Compare(op, t) => write!(f, "{}{t}", op.symbol()),
            Condition::Interval {
                lo_closed,
                lo,
                hi,
                hi_closed,
            } => write!(
                f,
                "{}{lo}..{hi}{}",
                if *lo_closed { '[' } else { '(' },
                if *hi_closed { ']' } else { ')' }
            ),
            Condition::Alternative(items) => {
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                Ok(())
            }
        }
    }
}

fn scalar_value(s: Scalar) -> Value {
    match s {
        Scalar::Int(i) => Value::Integer(i),
        Scalar::Real(r) => Value::Real(r),
    }
}

fn bound_term(b: &Bound) -> Option<Term> {
    b.value.finite().map(|s| Term::Literal(scalar_value(s)))
}

impl Condition {
    /// The simplest condition denoting exactly the numeric interval `iv`.
    pub fn from_interval(iv: &Interval) -> Condition {
        let (lo, hi) = (iv.lower(), iv.upper());
        match (lo.value, hi.value) {
            (Endpoint::NegInf, Endpoint::PosInf) => Condition::Any,
            (Endpoint::NegInf, _) => {
                Condition::Compare(if hi.closed { CmpOp::Le } else { CmpOp::Lt }, bound_term(&hi).unwrap())
            }
            (_, Endpoint::PosInf) => {
                Condition::Compare(if lo.closed { CmpOp::Ge } else { CmpOp::Gt }, bound_term(&lo).unwrap())
            }
            (Endpoint::Finite(a), Endpoint::Finite(b)) if a == b => Condition::Match(Term::Literal(scalar_value(a))),
            _ => Condition::Interval {
                lo_closed: lo.closed,
                lo: bound_term(&lo).unwrap(),
                hi: bound_term(&hi).unwrap(),
                hi_closed: hi.closed,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfeel::{parse_condition, DataType};

    #[test]
    fn canonical_forms() {
        for (text, ty) in [
            ("[250..750]", DataType::Integer),
            ("(1.5..2]", DataType::Real),
            ("<5", DataType::Integer),
            (">=70", DataType::Integer),
            ("-", DataType::String),
            ("high,medium,low", DataType::String),
            ("not(\"Card payoff\")", DataType::String),
            ("[0..18],>=70", DataType::Integer),
            ("(2 * 500)", DataType::Integer),
            ("true", DataType::Boolean),
        ] {
            let c = parse_condition(text, ty).unwrap();
            assert_eq!(c.to_string(), text);
        }
    }

    #[test]
    fn intervals_to_conditions() {
        let r = |v| Scalar::Real(v);
        let iv = Interval::new(Bound::closed(r(0.0)), Bound::open_at(r(250.0))).unwrap();
        assert_eq!(Condition::from_interval(&iv).to_string(), "[0..250)");
        let iv = Interval::new(Bound::open_at(r(1000.0)), Bound::unbounded_above()).unwrap();
        assert_eq!(Condition::from_interval(&iv).to_string(), ">1000");
        let iv = Interval::new(Bound::unbounded_below(), Bound::open_at(Scalar::Int(5))).unwrap();
        assert_eq!(Condition::from_interval(&iv).to_string(), "<=4");
        assert_eq!(Condition::from_interval(&Interval::point(r(3.0))).to_string(), "3");
        assert_eq!(Condition::from_interval(&Interval::full()).to_string(), "-");
    }
}
