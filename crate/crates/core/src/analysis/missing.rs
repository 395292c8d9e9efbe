use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::geometry::{HyperRect, TableGeometry, Universe};
use crate::interval::{Cut, Interval};
use crate::model::DecisionTable;

use super::sweep::{events, Flatten};

/// A box of admissible inputs that no rule covers.
#[derive(Debug, Clone, PartialEq)]
pub struct MissingRegion {
    pub region: HyperRect,
    /// One condition per input column; pasting them as a rule row closes the gap.
    pub rendered: Vec<String>,
}

/// Collects gap boxes, merging a new box into a stored one when they differ in exactly
/// one column and are contiguous there.
///
/// Stored boxes are disjoint, so for a given column, remaining columns and touching cut
/// there is at most one merge partner on each side; both sides are indexed.
#[derive(Default)]
struct MergeStore {
    slots: Vec<Option<HyperRect>>,
    by_lo: HashMap<(usize, u64, Cut), usize>,
    by_hi: HashMap<(usize, u64, Cut), usize>,
}

/// Hash of every column except `k`.
fn rest_hash(rect: &HyperRect, k: usize) -> u64 {
    let mut h = DefaultHasher::new();
    for (j, iv) in rect.dims().iter().enumerate() {
        if j != k {
            iv.hash(&mut h);
        }
    }
    h.finish()
}

fn same_rest(a: &HyperRect, b: &HyperRect, k: usize) -> bool {
    a.dims()
        .iter()
        .zip(b.dims())
        .enumerate()
        .all(|(j, (x, y))| j == k || x == y)
}

impl MergeStore {
    fn partner(&self, rect: &HyperRect, k: usize, rest: u64) -> Option<(usize, HyperRect)> {
        let iv = rect.dim(k);
        let left = self.by_hi.get(&(k, rest, iv.lo_cut()));
        let right = self.by_lo.get(&(k, rest, iv.hi_cut()));
        for &id in left.into_iter().chain(right) {
            let stored = self.slots[id].as_ref().expect("indexed boxes are live");
            if !same_rest(stored, rect, k) {
                continue;
            }
            let s = stored.dim(k);
            let joined = if s.hi_cut() == iv.lo_cut() {
                Interval::from_cuts(s.lo_cut(), iv.hi_cut())
            } else {
                Interval::from_cuts(iv.lo_cut(), s.hi_cut())
            };
            if let Some(joined) = joined {
                let mut dims = rect.dims().to_vec();
                dims[k] = joined;
                return Some((id, HyperRect::new(dims)));
            }
        }
        None
    }

    fn insert(&mut self, mut rect: HyperRect) {
        'retry: loop {
            for k in 0..rect.len() {
                let rest = rest_hash(&rect, k);
                if let Some((id, m)) = self.partner(&rect, k, rest) {
                    self.remove(id);
                    rect = m;
                    continue 'retry;
                }
            }
            break;
        }
        let id = self.slots.len();
        for k in 0..rect.len() {
            let rest = rest_hash(&rect, k);
            let iv = rect.dim(k);
            self.by_lo.insert((k, rest, iv.lo_cut()), id);
            self.by_hi.insert((k, rest, iv.hi_cut()), id);
        }
        self.slots.push(Some(rect));
    }

    fn remove(&mut self, id: usize) {
        let rect = self.slots[id].take().expect("live slot");
        for k in 0..rect.len() {
            let rest = rest_hash(&rect, k);
            let iv = rect.dim(k);
            if self.by_lo.get(&(k, rest, iv.lo_cut())) == Some(&id) {
                self.by_lo.remove(&(k, rest, iv.lo_cut()));
            }
            if self.by_hi.get(&(k, rest, iv.hi_cut())) == Some(&id) {
                self.by_hi.remove(&(k, rest, iv.hi_cut()));
            }
        }
    }

    fn into_boxes(self) -> Vec<HyperRect> {
        self.slots.into_iter().flatten().collect()
    }
}

struct GapSweep<'a> {
    flat: &'a Flatten,
    universe: &'a Universe,
    store: MergeStore,
}

impl GapSweep<'_> {
    fn gap(&mut self, prefix: &[Interval], slab: Interval) {
        let depth = prefix.len();
        for part in self.universe.dim(depth).intersect_interval(&slab).parts() {
            let mut boxes: Vec<Vec<Interval>> = vec![prefix.iter().copied().chain([*part]).collect()];
            for set in &self.universe.dims()[depth + 1..] {
                boxes = boxes
                    .into_iter()
                    .flat_map(|b| {
                        set.parts().iter().map(move |p| {
                            let mut b = b.clone();
                            b.push(*p);
                            b
                        })
                    })
                    .collect();
            }
            for b in boxes {
                self.store.insert(HyperRect::new(b));
            }
        }
    }

    fn slab(&mut self, prefix: &mut Vec<Interval>, active: &[usize], from: Cut, to: Cut) {
        let Some(slab) = Interval::from_cuts(from, to) else {
            return;
        };
        if active.is_empty() {
            self.gap(prefix, slab);
        } else {
            prefix.push(slab);
            self.sweep(prefix, active);
            prefix.pop();
        }
    }

    fn sweep(&mut self, prefix: &mut Vec<Interval>, rects: &[usize]) {
        let depth = prefix.len();
        if depth == self.universe.len() {
            return;
        }
        let evs = events(self.flat, rects, depth);
        let mut active: Vec<usize> = Vec::new();
        let mut last = Cut::NEG_INF;
        let mut i = 0;
        while i < evs.len() {
            let cut = evs[i].cut;
            let current = active.clone();
            self.slab(prefix, &current, last, cut);
            while i < evs.len() && evs[i].cut == cut {
                let ev = evs[i];
                if ev.is_lower {
                    active.push(ev.rect);
                } else if let Some(at) = active.iter().position(|&r| r == ev.rect) {
                    active.swap_remove(at);
                }
                i += 1;
            }
            last = cut;
        }
        self.slab(prefix, &[], last, Cut::POS_INF);
    }
}

fn sort_key(rect: &HyperRect) -> Vec<(Cut, Cut)> {
    rect.dims().iter().map(|iv| (iv.lo_cut(), iv.hi_cut())).collect()
}

/// Uncovered boxes of the universe, merged and sorted.
pub fn missing_in(geometry: &TableGeometry) -> Vec<MissingRegion> {
    let flat = Flatten::new(geometry);
    let all: Vec<usize> = (0..flat.rects.len()).collect();
    let mut sweep = GapSweep {
        flat: &flat,
        universe: &geometry.universe,
        store: MergeStore::default(),
    };
    if geometry.dimensions() == 0 {
        if all.is_empty() {
            sweep.store.insert(HyperRect::new(Vec::new()));
        }
    } else {
        sweep.sweep(&mut Vec::new(), &all);
    }
    let mut boxes = sweep.store.into_boxes();
    boxes.sort_by_cached_key(sort_key);
    boxes
        .into_iter()
        .map(|region| MissingRegion {
            rendered: geometry.render(&region),
            region,
        })
        .collect()
}

pub fn find_missing_rules(table: &DecisionTable) -> Vec<MissingRegion> {
    missing_in(&super::geometry_of(table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Scalar;
    use crate::model::load_table;

    #[test]
    fn loan_grade_gaps() {
        let t = load_table(include_str!("../../fixtures/loan_grade.json")).unwrap();
        let regions = find_missing_rules(&t);
        let texts: Vec<String> = regions.iter().map(|r| r.region.to_string()).collect();
        assert!(texts.contains(&"[0..250) x (1000..+inf)".to_string()), "{texts:?}");
        assert!(texts.contains(&"[250..500) x (1000..4000)".to_string()), "{texts:?}");
        let probe = [Scalar::Real(200.0), Scalar::Real(2000.0)];
        assert!(regions.iter().any(|r| r.region.contains_point(&probe)));
    }

    #[test]
    fn full_cover_has_no_gap() {
        let doc = r#"{"name":"t","inputs":[{"name":"x","type":"integer"},{"name":"p","type":"string"}],
            "outputs":[],"rules":[{"id":"r","in":["-","-"],"out":[]}]}"#;
        assert!(find_missing_rules(&load_table(doc).unwrap()).is_empty());
    }

    #[test]
    fn gap_between_two_closed_intervals() {
        let doc = r#"{"name":"t","inputs":[{"name":"x","type":"real","facet":"[0..10]"}],"outputs":[],
            "rules":[{"id":"a","in":["[0..3]"],"out":[]},{"id":"b","in":["[7..10]"],"out":[]}]}"#;
        let regions = find_missing_rules(&load_table(doc).unwrap());
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].region.to_string(), "(3..7)");
        assert_eq!(regions[0].rendered, ["(3..7)"]);
    }

    #[test]
    fn integer_neighbours_leave_no_gap() {
        let doc = r#"{"name":"t","inputs":[{"name":"x","type":"integer","facet":"[0..10]"}],"outputs":[],
            "rules":[{"id":"a","in":["[0..3]"],"out":[]},{"id":"b","in":["[4..10]"],"out":[]}]}"#;
        assert!(find_missing_rules(&load_table(doc).unwrap()).is_empty());
    }

    #[test]
    fn gaps_are_merged_across_slabs() {
        let doc = r#"{"name":"t","inputs":[{"name":"x","type":"integer","facet":"[0..9]"},{"name":"y","type":"integer","facet":"[0..9]"}],
            "outputs":[],"rules":[{"id":"a","in":["[0..4]","[0..4]"],"out":[]},{"id":"b","in":["[5..9]","[0..4]"],"out":[]}]}"#;
        let regions = find_missing_rules(&load_table(doc).unwrap());
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].rendered, ["[0..9]", "[5..9]"]);
    }

    #[test]
    fn categorical_gap_renders_as_values() {
        let doc = r#"{"name":"t","inputs":[{"name":"p","type":"string","facet":"a,b,c"}],"outputs":[],
            "rules":[{"id":"r","in":["b"],"out":[]}]}"#;
        let regions = find_missing_rules(&load_table(doc).unwrap());
        let rendered: Vec<String> = regions.iter().map(|r| r.rendered.join(";")).collect();
        assert_eq!(rendered, ["a", "c"]);
    }

    #[test]
    fn no_rules_leaves_the_universe() {
        let doc =
            r#"{"name":"t","inputs":[{"name":"x","type":"integer","facet":"[0..3],[6..9]"}],"outputs":[],"rules":[]}"#;
        let regions = find_missing_rules(&load_table(doc).unwrap());
        let texts: Vec<String> = regions.iter().map(|r| r.region.to_string()).collect();
        assert_eq!(texts, ["[0..3]", "[6..9]"]);
    }
}
