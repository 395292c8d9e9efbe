use fixedbitset::FixedBitSet;

use crate::geometry::{HyperRect, TableGeometry};
use crate::model::DecisionTable;

use super::sweep::{events, Flatten};

/// A maximal set of rules that some input triggers together.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapGroup {
    /// Member ids in row order.
    pub rule_ids: Vec<String>,
    pub rows: Vec<usize>,
    /// A region every member covers.
    pub witness: HyperRect,
}

struct Emitted {
    rules: FixedBitSet,
    witness: HyperRect,
}

struct OverlapSweep<'a> {
    flat: &'a Flatten,
    dims: usize,
    rule_count: usize,
    emitted: Vec<Emitted>,
}

impl OverlapSweep<'_> {
    fn distinct_rules(&self, active: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.rule_count);
        for &i in active {
            set.insert(self.flat.rule_of[i]);
        }
        set
    }

    fn sweep(&mut self, depth: usize, rects: &[usize]) {
        if self.distinct_rules(rects).count_ones(..) < 2 {
            return;
        }
        if depth == self.dims {
            self.emit(rects);
            return;
        }
        let mut active: Vec<usize> = Vec::with_capacity(rects.len());
        let mut grown = false;
        for ev in events(self.flat, rects, depth) {
            if ev.is_lower {
                active.push(ev.rect);
                grown = true;
            } else {
                if grown {
                    self.sweep(depth + 1, &active.clone());
                    grown = false;
                }
                let at = active.iter().position(|&r| r == ev.rect).expect("active rect");
                active.swap_remove(at);
            }
        }
    }

    fn emit(&mut self, rects: &[usize]) {
        let rules = self.distinct_rules(rects);
        if self.emitted.iter().any(|e| rules.is_subset(&e.rules)) {
            return;
        }
        self.emitted.retain(|e| !e.rules.is_subset(&rules));
        let witness = rects[1..]
            .iter()
            .try_fold(self.flat.rects[rects[0]].clone(), |acc, &i| {
                acc.intersect(&self.flat.rects[i])
            })
            .expect("rects active together intersect");
        self.emitted.push(Emitted { rules, witness });
    }
}

/// Maximal overlapping rule sets, found by a recursive sweep over the input columns.
pub fn overlaps_in(table: &DecisionTable, geometry: &TableGeometry) -> Vec<OverlapGroup> {
    let flat = Flatten::new(geometry);
    let all: Vec<usize> = (0..flat.rects.len()).collect();
    let mut sweep = OverlapSweep {
        flat: &flat,
        dims: geometry.dimensions(),
        rule_count: table.rules().len(),
        emitted: Vec::new(),
    };
    sweep.sweep(0, &all);
    let mut groups: Vec<OverlapGroup> = sweep
        .emitted
        .into_iter()
        .map(|e| {
            let rows: Vec<usize> = e.rules.ones().collect();
            OverlapGroup {
                rule_ids: rows.iter().map(|&r| table.rules()[r].id.clone()).collect(),
                rows,
                witness: e.witness,
            }
        })
        .collect();
    groups.sort_by(|a, b| a.rows.cmp(&b.rows));
    groups
}

pub fn find_overlapping_rules(table: &DecisionTable) -> Vec<OverlapGroup> {
    overlaps_in(table, &super::geometry_of(table))
}
