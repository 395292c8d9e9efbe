use crate::geometry::{HyperRect, TableGeometry};
use crate::interval::Interval;
use crate::model::DecisionTable;

/// `a` minus `b` as disjoint boxes.
fn subtract(a: &HyperRect, b: &HyperRect) -> Vec<HyperRect> {
    let Some(common) = a.intersect(b) else {
        return vec![a.clone()];
    };
    let mut out = Vec::new();
    let mut rest = a.dims().to_vec();
    for k in 0..a.len() {
        let (outer, inner) = (rest[k], *common.dim(k));
        for piece in [
            Interval::from_cuts(outer.lo_cut(), inner.lo_cut()),
            Interval::from_cuts(inner.hi_cut(), outer.hi_cut()),
        ]
        .into_iter()
        .flatten()
        {
            let mut dims = rest.clone();
            dims[k] = piece;
            out.push(HyperRect::new(dims));
        }
        rest[k] = inner;
    }
    out
}

/// Boxes sharing a face: contiguous in one column, overlapping in all others.
fn adjacent(a: &HyperRect, b: &HyperRect) -> bool {
    let mut touching = 0;
    for (x, y) in a.dims().iter().zip(b.dims()) {
        if x.is_contiguous_with(y) || y.is_contiguous_with(x) {
            touching += 1;
        } else if !x.intersects(y) {
            return false;
        }
    }
    touching == 1
}

fn components(boxes: &[HyperRect]) -> usize {
    let mut parent: Vec<usize> = (0..boxes.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut count = boxes.len();
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if adjacent(&boxes[i], &boxes[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    count -= 1;
                }
            }
        }
    }
    count
}

/// How many entries a pairwise overlap report would list.
///
/// Every pair of rules whose regions meet is listed once for each connected piece of
/// their intersection left over by the other rules, and at least once even when the
/// other rules cover it all.
pub fn pairwise_overlap_fragments(table: &DecisionTable) -> usize {
    let geometry = TableGeometry::new(table).expect("validated table lowers to boxes");
    let rects = &geometry.rects;
    let n = rects.len();
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            let common: Vec<HyperRect> = rects[i]
                .iter()
                .flat_map(|a| rects[j].iter().filter_map(move |b| a.intersect(b)))
                .collect();
            if common.is_empty() {
                continue;
            }
            let mut pieces = common.clone();
            for (r, others) in rects.iter().enumerate() {
                if r == i || r == j {
                    continue;
                }
                for o in others {
                    if common.iter().any(|c| c.intersects(o)) {
                        pieces = pieces.iter().flat_map(|p| subtract(p, o)).collect();
                    }
                }
            }
            total += components(&pieces).max(1);
        }
    }
    total
}
