use crate::geometry::{HyperRect, TableGeometry};
use crate::interval::Cut;

/// All rule boxes in one list, each remembering its rule row.
pub(crate) struct Flatten {
    pub rects: Vec<HyperRect>,
    pub rule_of: Vec<usize>,
}

impl Flatten {
    pub fn new(geometry: &TableGeometry) -> Self {
        let mut rects = Vec::new();
        let mut rule_of = Vec::new();
        for (row, boxes) in geometry.rects.iter().enumerate() {
            for b in boxes {
                rects.push(b.clone());
                rule_of.push(row);
            }
        }
        Flatten { rects, rule_of }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Event {
    pub cut: Cut,
    /// Upper events sort before lower events at the same cut, so half-open neighbours
    /// never meet while closed ones touching at a point do.
    pub is_lower: bool,
    pub rect: usize,
}

/// Bound events of `rects` projected on dimension `dim`, in sweep order.
pub(crate) fn events(flat: &Flatten, rects: &[usize], dim: usize) -> Vec<Event> {
    let mut out = Vec::with_capacity(rects.len() * 2);
    for &rect in rects {
        let iv = flat.rects[rect].dim(dim);
        out.push(Event {
            cut: iv.lo_cut(),
            is_lower: true,
            rect,
        });
        out.push(Event {
            cut: iv.hi_cut(),
            is_lower: false,
            rect,
        });
    }
    out.sort_unstable();
    out
}
