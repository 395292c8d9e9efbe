//! Coordinate compression.
//!
//! The cuts of a set of boxes split every axis into elementary cells; each box is then
//! exactly a union of grid cells, so any question about the boxes can be answered by
//! looking at one representative point per cell.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{HyperRect, Universe};
use crate::interval::{Cut, Endpoint, Interval, Scalar};

pub const DEFAULT_CELL_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub interval: Interval,
    pub representative: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Vec<Cell>>,
}

fn representative(iv: &Interval, int_axis: bool) -> Scalar {
    let lo = iv.lo_cut();
    let hi = iv.hi_cut();
    let shift = |v: Scalar, by: i64| match v {
        Scalar::Int(i) => Scalar::Int(i.saturating_add(by)),
        Scalar::Real(r) => Scalar::Real(r + by as f64),
    };
    match (lo.pos(), hi.pos()) {
        (Endpoint::Finite(v), _) if !lo.is_after() => v,
        (Endpoint::Finite(v), Endpoint::Finite(w)) => Scalar::Real((v.as_f64() + w.as_f64()) / 2.0),
        (Endpoint::Finite(v), _) => shift(v, 1),
        (_, Endpoint::Finite(w)) if hi.is_after() => w,
        (_, Endpoint::Finite(w)) => shift(w, -1),
        _ if int_axis => Scalar::Int(0),
        _ => Scalar::Real(0.0),
    }
}

fn axis_from_cuts(cuts: BTreeSet<Cut>) -> Vec<Cell> {
    let int_axis = cuts.iter().any(|c| matches!(c.pos(), Endpoint::Finite(Scalar::Int(_))));
    let mut all = vec![Cut::NEG_INF];
    all.extend(cuts.into_iter().filter(|c| *c != Cut::NEG_INF && *c != Cut::POS_INF));
    all.push(Cut::POS_INF);
    all.windows(2)
        .filter_map(|w| Interval::from_cuts(w[0], w[1]))
        .map(|interval| Cell {
            interval,
            representative: representative(&interval, int_axis),
        })
        .collect()
}

impl Grid {
    /// The grid induced by the cuts of `rects`, covering the whole space.
    pub fn spanning<'a>(rects: impl IntoIterator<Item = &'a HyperRect>) -> Grid {
        Grid::build(rects, None)
    }

    /// The grid of `rects` and the universe's facets, keeping only cells inside the universe.
    pub fn over_universe<'a>(
        rects: impl IntoIterator<Item = &'a HyperRect>,
        universe: &Universe,
        cap: u64,
    ) -> Result<Grid> {
        let mut grid = Grid::build(rects, Some(universe));
        for (axis, facet) in grid.axes.iter_mut().zip(universe.dims()) {
            axis.retain(|c| facet.contains(c.representative));
        }
        let cells = grid.size();
        if cells > cap as u128 {
            return Err(Error::Capacity { cells, cap });
        }
        Ok(grid)
    }

    fn build<'a>(rects: impl IntoIterator<Item = &'a HyperRect>, universe: Option<&Universe>) -> Grid {
        let mut cuts: Vec<BTreeSet<Cut>> = Vec::new();
        let mut add = |k: usize, iv: &Interval| {
            if cuts.len() <= k {
                cuts.resize_with(k + 1, BTreeSet::new);
            }
            cuts[k].insert(iv.lo_cut());
            cuts[k].insert(iv.hi_cut());
        };
        if let Some(u) = universe {
            for (k, set) in u.dims().iter().enumerate() {
                set.parts().iter().for_each(|iv| add(k, iv));
                if set.parts().is_empty() {
                    add(k, &Interval::full());
                }
            }
        }
        for rect in rects {
            for (k, iv) in rect.dims().iter().enumerate() {
                add(k, iv);
            }
        }
        Grid {
            axes: cuts.into_iter().map(axis_from_cuts).collect(),
        }
    }

    /// Keeps only the cells inside `rect`.
    pub fn restrict(mut self, rect: &HyperRect) -> Grid {
        for (axis, iv) in self.axes.iter_mut().zip(rect.dims()) {
            axis.retain(|c| iv.contains_interval(&c.interval));
        }
        self
    }

    pub fn axes(&self) -> &[Vec<Cell>] {
        &self.axes
    }

    pub fn dimensions(&self) -> usize {
        self.axes.len()
    }

    pub fn size(&self) -> u128 {
        if self.axes.is_empty() {
            return 0;
        }
        self.axes.iter().map(|a| a.len() as u128).product()
    }

    /// Every cell as one index per axis, in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let mut next = (self.size() > 0).then(|| vec![0; self.axes.len()]);
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            for k in (0..succ.len()).rev() {
                succ[k] += 1;
                if succ[k] < self.axes[k].len() {
                    next = Some(succ);
                    break;
                }
                succ[k] = 0;
            }
            Some(current)
        })
    }

    pub fn representative(&self, cell: &[usize]) -> Vec<Scalar> {
        cell.iter()
            .enumerate()
            .map(|(k, &i)| self.axes[k][i].representative)
            .collect()
    }

    pub fn cell_box(&self, cell: &[usize]) -> HyperRect {
        HyperRect::new(
            cell.iter()
                .enumerate()
                .map(|(k, &i)| self.axes[k][i].interval)
                .collect(),
        )
    }
}
