//! One-dimensional intervals over integers or reals, and canonical unions of them.
//!
//! Internally an interval is stored as a pair of [`Cut`]s. A cut is a position on the
//! number line that falls either just before or just after a value, so every bound
//! (open or closed, lower or upper) maps to exactly one cut:
//!
//! | bound          | cut              |
//! |----------------|------------------|
//! | lower closed v | before v         |
//! | lower open v   | after v          |
//! | upper closed v | after v          |
//! | upper open v   | before v         |
//!
//! Sorting cuts and breaking ties by "upper before lower" reproduces the sweep event
//! order upper-open < lower-closed < upper-closed < lower-open at equal values.
//!
//! Integer cuts are canonical: "after v" is stored as "before v+1". This makes
//! `[a..b]` and `[b+1..c]` meet at the same cut, which is exactly integer contiguity,
//! while for reals `[a..b]` and `(b..c]` meet at "after b".

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A finite coordinate. Integer columns use `Int`; real columns and categorical codes use `Real`.
#[derive(Debug, Clone, Copy)]
pub enum Scalar {
    Int(i64),
    Real(f64),
}

impl Scalar {
    pub fn is_int(&self) -> bool {
        matches!(self, Scalar::Int(_))
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Scalar::Int(i) => i as f64,
            Scalar::Real(r) => r,
        }
    }
}

fn cmp_int_real(i: i64, r: f64) -> Ordering {
    // 2^63 is exactly representable; anything at or beyond it is out of i64 range.
    const LIMIT: f64 = 9_223_372_036_854_775_808.0;
    if r >= LIMIT {
        return Ordering::Less;
    }
    if r < -LIMIT {
        return Ordering::Greater;
    }
    let floor = r.floor();
    match i.cmp(&(floor as i64)) {
        Ordering::Equal if r > floor => Ordering::Less,
        other => other,
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.cmp(&b),
            (Scalar::Real(a), Scalar::Real(b)) => a.partial_cmp(&b).unwrap_or_else(|| a.total_cmp(&b)),
            (Scalar::Int(a), Scalar::Real(b)) => cmp_int_real(a, b),
            (Scalar::Real(a), Scalar::Int(b)) => cmp_int_real(b, a).reverse(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match *self {
            Scalar::Int(i) => {
                0u8.hash(state);
                i.hash(state);
            }
            Scalar::Real(r) => {
                1u8.hash(state);
                // -0.0 == 0.0
                let r = if r == 0.0 { 0.0 } else { r };
                r.to_bits().hash(state);
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::Real(r) => write!(f, "{r}"),
        }
    }
}

/// A point on the extended number line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<Scalar> {
        match *self {
            Endpoint::Finite(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Finite(s) => s.fmt(f),
        }
    }
}

/// A position between points: just before or just after `pos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pos: Endpoint,
    after: bool,
}

impl Cut {
    pub const NEG_INF: Cut = Cut {
        pos: Endpoint::NegInf,
        after: true,
    };
    pub const POS_INF: Cut = Cut {
        pos: Endpoint::PosInf,
        after: false,
    };

    pub fn before(value: Scalar) -> Cut {
        Cut {
            pos: Endpoint::Finite(value),
            after: false,
        }
    }

    pub fn after(value: Scalar) -> Cut {
        match value {
            Scalar::Int(i) => match i.checked_add(1) {
                Some(next) => Cut::before(Scalar::Int(next)),
                None => Cut::POS_INF,
            },
            Scalar::Real(_) => Cut {
                pos: Endpoint::Finite(value),
                after: true,
            },
        }
    }

    pub fn pos(&self) -> Endpoint {
        self.pos
    }

    pub fn is_after(&self) -> bool {
        self.after
    }

    /// Reads this cut as the lower bound of an interval.
    pub fn as_lower(&self) -> Bound {
        match self.pos {
            Endpoint::Finite(_) => Bound {
                value: self.pos,
                closed: !self.after,
            },
            _ => Bound::open(self.pos),
        }
    }

    /// Reads this cut as the upper bound of an interval.
    pub fn as_upper(&self) -> Bound {
        match self.pos {
            Endpoint::Finite(Scalar::Int(i)) if !self.after => match i.checked_sub(1) {
                Some(prev) => Bound::closed(Scalar::Int(prev)),
                None => Bound::open_at(Scalar::Int(i)),
            },
            Endpoint::Finite(_) => Bound {
                value: self.pos,
                closed: self.after,
            },
            _ => Bound::open(self.pos),
        }
    }
}

/// An interval endpoint together with its openness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: Endpoint,
    pub closed: bool,
}

impl Bound {
    pub fn closed(value: Scalar) -> Bound {
        Bound {
            value: Endpoint::Finite(value),
            closed: true,
        }
    }

    pub fn open(value: Endpoint) -> Bound {
        Bound { value, closed: false }
    }

    pub fn open_at(value: Scalar) -> Bound {
        Bound::open(Endpoint::Finite(value))
    }

    pub fn unbounded_below() -> Bound {
        Bound::open(Endpoint::NegInf)
    }

    pub fn unbounded_above() -> Bound {
        Bound::open(Endpoint::PosInf)
    }

    fn lower_cut(&self) -> Cut {
        match self.value {
            Endpoint::NegInf => Cut::NEG_INF,
            // a lower bound at +inf admits nothing
            Endpoint::PosInf => Cut::POS_INF,
            Endpoint::Finite(v) if self.closed => Cut::before(v),
            Endpoint::Finite(v) => Cut::after(v),
        }
    }

    fn upper_cut(&self) -> Cut {
        match self.value {
            Endpoint::NegInf => Cut::NEG_INF,
            Endpoint::PosInf => Cut::POS_INF,
            Endpoint::Finite(v) if self.closed => Cut::after(v),
            Endpoint::Finite(v) => Cut::before(v),
        }
    }
}

/// A non-empty interval. Empty intervals are never materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Cut,
    hi: Cut,
}

impl Interval {
    /// Builds the interval between two bounds, or `None` when it would be empty.
    pub fn new(lo: Bound, hi: Bound) -> Option<Interval> {
        Interval::from_cuts(lo.lower_cut(), hi.upper_cut())
    }

    pub fn from_cuts(lo: Cut, hi: Cut) -> Option<Interval> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn closed(lo: Scalar, hi: Scalar) -> Option<Interval> {
        Interval::new(Bound::closed(lo), Bound::closed(hi))
    }

    pub fn point(v: Scalar) -> Interval {
        Interval {
            lo: Cut::before(v),
            hi: Cut::after(v),
        }
    }

    pub fn full() -> Interval {
        Interval {
            lo: Cut::NEG_INF,
            hi: Cut::POS_INF,
        }
    }

    pub fn lo_cut(&self) -> Cut {
        self.lo
    }

    pub fn hi_cut(&self) -> Cut {
        self.hi
    }

    pub fn lower(&self) -> Bound {
        self.lo.as_lower()
    }

    pub fn upper(&self) -> Bound {
        self.hi.as_upper()
    }

    pub fn is_full(&self) -> bool {
        self.lo == Cut::NEG_INF && self.hi == Cut::POS_INF
    }

    pub fn contains(&self, p: Scalar) -> bool {
        self.lo <= Cut::before(p) && Cut::after(p) <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::from_cuts(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// `self` ends exactly where `next` starts, with no gap and no shared point.
    pub fn is_contiguous_with(&self, next: &Interval) -> bool {
        self.hi == next.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lower();
        let hi = self.upper();
        write!(
            f,
            "{}{}..{}{}",
            if lo.closed { '[' } else { '(' },
            lo.value,
            hi.value,
            if hi.closed { ']' } else { ')' }
        )
    }
}

/// A sorted union of pairwise disjoint, non-contiguous intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn full() -> IntervalSet {
        IntervalSet::single(Interval::full())
    }

    pub fn single(interval: Interval) -> IntervalSet {
        IntervalSet { parts: vec![interval] }
    }

    /// Normalizes an arbitrary collection of intervals.
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> IntervalSet {
        let mut items: Vec<Interval> = intervals.into_iter().collect();
        items.sort_by_key(|iv| iv.lo);
        let mut parts: Vec<Interval> = Vec::with_capacity(items.len());
        for iv in items {
            match parts.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => parts.push(iv),
            }
        }
        IntervalSet { parts }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].is_full()
    }

    pub fn contains(&self, p: Scalar) -> bool {
        self.parts.iter().any(|iv| iv.contains(p))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.parts.iter().chain(&other.parts).copied())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(x) = a.intersect(b) {
                parts.push(x);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { parts }
    }

    pub fn intersect_interval(&self, other: &Interval) -> IntervalSet {
        IntervalSet {
            parts: self.parts.iter().filter_map(|p| p.intersect(other)).collect(),
        }
    }

    pub fn complement(&self) -> IntervalSet {
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        let mut cursor = Cut::NEG_INF;
        for iv in &self.parts {
            if let Some(gap) = Interval::from_cuts(cursor, iv.lo) {
                parts.push(gap);
            }
            cursor = iv.hi;
        }
        if let Some(gap) = Interval::from_cuts(cursor, Cut::POS_INF) {
            parts.push(gap);
        }
        IntervalSet { parts }
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Smallest cut covered by the set.
    pub fn min_cut(&self) -> Option<Cut> {
        self.parts.first().map(|iv| iv.lo)
    }

    pub fn max_cut(&self) -> Option<Cut> {
        self.parts.last().map(|iv| iv.hi)
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::from_intervals(iter)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (k, iv) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
