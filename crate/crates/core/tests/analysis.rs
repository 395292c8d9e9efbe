mod common;

use std::collections::BTreeSet;

use common::{decode_point, random_table, LOAN_GRADE};
use dmn_verify::analysis::oracle::compressed_grid;
use dmn_verify::analysis::{find_missing_rules, find_overlapping_rules, oracle_missing, oracle_overlaps};
use dmn_verify::geometry::{intersect_rects, TableGeometry};
use dmn_verify::model::load_table;
use dmn_verify::semantics::triggered_by;
use proptest::prelude::*;

fn families(groups: &[dmn_verify::OverlapGroup]) -> BTreeSet<Vec<String>> {
    groups.iter().map(|g| g.rule_ids.clone()).collect()
}

#[test]
fn loan_grade_sweeps_agree_with_oracles() {
    let t = load_table(LOAN_GRADE).unwrap();
    assert_eq!(
        families(&find_overlapping_rules(&t)),
        families(&oracle_overlaps(&t).unwrap())
    );
    let cells = oracle_missing(&t).unwrap();
    let regions = find_missing_rules(&t);
    for c in &cells {
        assert!(regions.iter().any(|r| r.region.contains_point(&c.point)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn overlaps_match_the_oracle(seed in any::<u64>()) {
        let t = random_table(seed);
        let swept = find_overlapping_rules(&t);
        prop_assert_eq!(families(&swept), families(&oracle_overlaps(&t).unwrap()));
    }

    #[test]
    fn overlap_groups_are_a_valid_antichain(seed in any::<u64>()) {
        let t = random_table(seed);
        let g = TableGeometry::new(&t).unwrap();
        let groups = find_overlapping_rules(&t);
        for (i, a) in groups.iter().enumerate() {
            prop_assert!(a.rows.len() >= 2);
            for (j, b) in groups.iter().enumerate() {
                let (sa, sb): (BTreeSet<_>, BTreeSet<_>) = (a.rows.iter().collect(), b.rows.iter().collect());
                prop_assert!(i == j || !sa.is_subset(&sb));
            }
            for &row in &a.rows {
                prop_assert!(g.rects[row].iter().any(|r| r.contains_rect(&a.witness)));
            }
        }
    }

    #[test]
    fn missing_cells_match_the_oracle(seed in any::<u64>()) {
        let t = random_table(seed);
        let g = TableGeometry::new(&t).unwrap();
        let regions = find_missing_rules(&t);
        let uncovered: BTreeSet<String> = oracle_missing(&t).unwrap().iter().map(|c| c.cell.to_string()).collect();
        let grid = compressed_grid(&g, 1_000_000).unwrap();
        for cell in grid.cells() {
            let p = grid.representative(&cell);
            let in_region = regions.iter().any(|r| r.region.contains_point(&p));
            prop_assert_eq!(in_region, uncovered.contains(&grid.cell_box(&cell).to_string()));
        }
        prop_assert_eq!(regions.is_empty(), uncovered.is_empty());
    }

    #[test]
    fn missing_regions_are_disjoint_and_uncovered(seed in any::<u64>()) {
        let t = random_table(seed);
        let g = TableGeometry::new(&t).unwrap();
        let regions = find_missing_rules(&t);
        for (i, a) in regions.iter().enumerate() {
            prop_assert_eq!(a.rendered.len(), t.inputs().len());
            for b in &regions[i + 1..] {
                prop_assert!(!a.region.intersects(&b.region));
            }
            for rect in g.rects.iter().flatten() {
                prop_assert!(!a.region.intersects(rect));
            }
        }
    }

    #[test]
    fn boxes_are_faithful_to_triggering(seed in any::<u64>()) {
        let t = random_table(seed);
        let g = TableGeometry::new(&t).unwrap();
        let grid = compressed_grid(&g, 1_000_000).unwrap();
        for cell in grid.cells() {
            let p = grid.representative(&cell);
            let input = t.input_values(decode_point(&t, &g, &p)).unwrap();
            for (row, rule) in t.rules().iter().enumerate() {
                prop_assert_eq!(triggered_by(rule, &t, &input).unwrap(), g.rule_covers(row, &p));
            }
        }
    }

    #[test]
    fn rect_intersection_laws(seed in any::<u64>()) {
        let t = random_table(seed);
        let g = TableGeometry::new(&t).unwrap();
        let rects: Vec<_> = g.rects.iter().flatten().collect();
        for a in &rects {
            prop_assert_eq!(intersect_rects(a, a).unwrap(), Some((*a).clone()));
            for b in &rects {
                let ab = intersect_rects(a, b).unwrap();
                prop_assert_eq!(&ab, &intersect_rects(b, a).unwrap());
                for c in &rects {
                    let left = ab.as_ref().and_then(|x| intersect_rects(x, c).unwrap());
                    let right = intersect_rects(b, c).unwrap().and_then(|x| intersect_rects(a, &x).unwrap());
                    prop_assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn codec_is_deterministic_across_loads() {
    for seed in 0..50 {
        let a = TableGeometry::new(&random_table(seed)).unwrap();
        let b = TableGeometry::new(&random_table(seed)).unwrap();
        assert_eq!(a.codec, b.codec);
    }
}
