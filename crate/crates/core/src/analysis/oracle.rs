//! Brute-force answers by coordinate compression, for cross-checking the sweeps.

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::geometry::{HyperRect, TableGeometry};
use crate::interval::Scalar;
use crate::model::DecisionTable;

use super::grid::{Grid, DEFAULT_CELL_CAP};
use super::overlap::OverlapGroup;

/// One elementary cell of the compressed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub cell: HyperRect,
    pub point: Vec<Scalar>,
}

/// The compressed grid of all rule boxes and facets, restricted to the universe.
pub fn compressed_grid(geometry: &TableGeometry, cap: u64) -> Result<Grid> {
    Grid::over_universe(geometry.rects.iter().flatten(), &geometry.universe, cap)
}

fn covering(geometry: &TableGeometry, point: &[Scalar]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(geometry.rects.len());
    for row in 0..geometry.rects.len() {
        if geometry.rule_covers(row, point) {
            set.insert(row);
        }
    }
    set
}

pub fn oracle_overlaps_with_cap(table: &DecisionTable, cap: u64) -> Result<Vec<OverlapGroup>> {
    let geometry = TableGeometry::new(table)?;
    let grid = compressed_grid(&geometry, cap)?;
    let mut family: Vec<(FixedBitSet, HyperRect)> = Vec::new();
    for cell in grid.cells() {
        let set = covering(&geometry, &grid.representative(&cell));
        if set.count_ones(..) < 2 || family.iter().any(|(f, _)| set.is_subset(f)) {
            continue;
        }
        family.retain(|(f, _)| !f.is_subset(&set));
        family.push((set, grid.cell_box(&cell)));
    }
    let mut groups: Vec<OverlapGroup> = family
        .into_iter()
        .map(|(set, witness)| {
            let rows: Vec<usize> = set.ones().collect();
            OverlapGroup {
                rule_ids: rows.iter().map(|&r| table.rules()[r].id.clone()).collect(),
                rows,
                witness,
            }
        })
        .collect();
    groups.sort_by(|a, b| a.rows.cmp(&b.rows));
    Ok(groups)
}

/// Maximal sets of rules covering a common cell. Fails above a million cells.
pub fn oracle_overlaps(table: &DecisionTable) -> Result<Vec<OverlapGroup>> {
    oracle_overlaps_with_cap(table, DEFAULT_CELL_CAP)
}

pub fn oracle_missing_with_cap(table: &DecisionTable, cap: u64) -> Result<Vec<GridCell>> {
    let geometry = TableGeometry::new(table)?;
    let grid = compressed_grid(&geometry, cap)?;
    Ok(grid
        .cells()
        .filter_map(|cell| {
            let point = grid.representative(&cell);
            covering(&geometry, &point).is_clear().then(|| GridCell {
                cell: grid.cell_box(&cell),
                point,
            })
        })
        .collect())
}

/// Cells of the universe covered by no rule. Fails above a million cells.
pub fn oracle_missing(table: &DecisionTable) -> Result<Vec<GridCell>> {
    oracle_missing_with_cap(table, DEFAULT_CELL_CAP)
}
