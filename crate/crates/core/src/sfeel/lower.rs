use super::{fold_term, CmpOp, Condition, DataType, Term, Value};
use crate::error::{Error, Result};
use crate::geometry::ColumnCodec;
use crate::interval::{Bound, Interval, IntervalSet, Scalar};

fn numeric(term: &Term, ty: DataType) -> Result<Scalar> {
    match (fold_term(term)?, ty) {
        (Value::Integer(i), DataType::Integer) => Ok(Scalar::Int(i)),
        (Value::Real(r), DataType::Real) => Ok(Scalar::Real(r)),
        (v, ty) => Err(Error::Type(format!("{} literal {v} in a {ty} column", v.kind()))),
    }
}

fn categorical<'c>(term: &Term, ty: DataType, codec: Option<&'c ColumnCodec>) -> Result<(Value, &'c ColumnCodec)> {
    let value = fold_term(term)?;
    if value.kind() != ty {
        return Err(Error::Type(format!(
            "{} literal {value} in a {ty} column",
            value.kind()
        )));
    }
    let codec = codec.ok_or_else(|| Error::Codec(format!("no codec for {ty} column")))?;
    Ok((value, codec))
}

/// The set of (encoded) values satisfying `cond`, in canonical form.
///
/// Numeric columns map to themselves. String and boolean columns go through `codec`,
/// which assigns each category a half-open unit interval; `-` and `not(...)` are then
/// taken relative to the codec's domain.
pub fn lower_to_intervals(cond: &Condition, ty: DataType, codec: Option<&ColumnCodec>) -> Result<IntervalSet> {
    if ty.is_numeric() {
        lower_numeric(cond, ty)
    } else {
        lower_categorical(cond, ty, codec)
    }
}

fn lower_numeric(cond: &Condition, ty: DataType) -> Result<IntervalSet> {
    Ok(match cond {
        Condition::Any => IntervalSet::full(),
        Condition::Match(t) => IntervalSet::single(Interval::point(numeric(t, ty)?)),
        Condition::Not(t) => IntervalSet::single(Interval::point(numeric(t, ty)?)).complement(),
        Condition::Compare(op, t) => {
            let v = numeric(t, ty)?;
            let iv = match op {
                CmpOp::Lt => Interval::new(Bound::unbounded_below(), Bound::open_at(v)),
                CmpOp::Le => Interval::new(Bound::unbounded_below(), Bound::closed(v)),
                CmpOp::Gt => Interval::new(Bound::open_at(v), Bound::unbounded_above()),
                CmpOp::Ge => Interval::new(Bound::closed(v), Bound::unbounded_above()),
            };
            iv.map(IntervalSet::single).unwrap_or_default()
        }
        Condition::Interval {
            lo_closed,
            lo,
            hi,
            hi_closed,
        } => {
            let (lo, hi) = (numeric(lo, ty)?, numeric(hi, ty)?);
            let lo = Bound {
                closed: *lo_closed,
                ..Bound::closed(lo)
            };
            let hi = Bound {
                closed: *hi_closed,
                ..Bound::closed(hi)
            };
            Interval::new(lo, hi).map(IntervalSet::single).unwrap_or_default()
        }
        Condition::Alternative(items) => {
            let mut acc = IntervalSet::empty();
            for item in items {
                acc = acc.union(&lower_numeric(item, ty)?);
            }
            acc
        }
    })
}

fn lower_categorical(cond: &Condition, ty: DataType, codec: Option<&ColumnCodec>) -> Result<IntervalSet> {
    Ok(match cond {
        Condition::Any => codec
            .ok_or_else(|| Error::Codec(format!("no codec for {ty} column")))?
            .domain(),
        Condition::Match(t) => {
            let (v, codec) = categorical(t, ty, codec)?;
            IntervalSet::single(codec.interval_of(&v)?)
        }
        Condition::Not(t) => {
            let (v, codec) = categorical(t, ty, codec)?;
            codec.domain().difference(&IntervalSet::single(codec.interval_of(&v)?))
        }
        Condition::Compare(..) | Condition::Interval { .. } => {
            return Err(Error::Type(format!(
                "comparisons and intervals are not available for {ty} columns"
            )))
        }
        Condition::Alternative(items) => {
            let mut acc = IntervalSet::empty();
            for item in items {
                acc = acc.union(&lower_categorical(item, ty, codec)?);
            }
            acc
        }
    })
}
