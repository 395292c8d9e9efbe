use dmn_verify::analysis::{find_missing_rules, find_overlapping_rules};
use dmn_verify::model::{load_table, HitPolicy};
use dmn_verify::sfeel::DataType;
use dmn_verify::synth::{generate_table, inject_noise, pairwise_overlap_fragments, run_benchmark, GenSpec, NoiseMode};
use proptest::prelude::*;

#[test]
fn three_column_table_with_about_500_rules() {
    let t = generate_table(&GenSpec::standard(3, 499, 42)).unwrap();
    assert!((474..=524).contains(&t.rules().len()));
    assert!(find_overlapping_rules(&t).is_empty());
    assert!(find_missing_rules(&t).is_empty());
    assert_eq!(t.hit_policy(), HitPolicy::Unique);
}

#[test]
fn standard_column_mixes() {
    for (n, categorical) in [(3, 1), (5, 2), (7, 2)] {
        let t = generate_table(&GenSpec::standard(n, 20, 1)).unwrap();
        assert_eq!(t.inputs().len(), n);
        let strings = t.inputs().iter().filter(|a| a.ty == DataType::String).count();
        assert_eq!(strings, categorical, "{n} columns");
    }
}

#[test]
fn generation_is_reproducible() {
    let spec = GenSpec::standard(5, 120, 77);
    let a = generate_table(&spec).unwrap();
    assert_eq!(a.to_document(), generate_table(&spec).unwrap().to_document());
    let noisy = |t| inject_noise(t, NoiseMode::Overlap, 0.2, 5).unwrap().to_document();
    assert_eq!(noisy(&a), noisy(&a));
    assert_ne!(
        a.to_document(),
        generate_table(&GenSpec::standard(5, 120, 78)).unwrap().to_document()
    );
}

#[test]
fn spec_documents() {
    let spec: GenSpec = serde_json::from_str(
        r#"{"columns":[{"kind":"categorical","name":"Purpose","categories":["a","b"]},
                       {"kind":"numeric","name":"Income","min":0,"max":50}],
            "targetRules":12,"seed":3}"#,
    )
    .unwrap();
    let t = generate_table(&spec).unwrap();
    assert_eq!(t.rules().len(), 12);
    assert_eq!(t.inputs()[1].name, "Income");
    assert!(generate_table(&GenSpec::standard(3, 0, 1)).is_err());
}

#[test]
fn benchmark_counts_match_fragment_bound() {
    let specs = [GenSpec::standard(3, 80, 4), GenSpec::standard(7, 80, 4)];
    let report = run_benchmark(&specs, 0.1, 1).unwrap();
    for cell in &report.cells {
        assert!(cell.overlap_groups >= 1 && cell.missing_regions >= 1);
        assert!(cell.pairwise_fragments >= cell.overlap_groups);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generated_tables_partition_the_space(columns in 1usize..=7, rules in 1usize..120, seed in any::<u64>()) {
        let t = generate_table(&GenSpec::standard(columns, rules, seed)).unwrap();
        prop_assert!(find_overlapping_rules(&t).is_empty());
        prop_assert!(find_missing_rules(&t).is_empty());
        prop_assert_eq!(pairwise_overlap_fragments(&t), 0);
        let reloaded = load_table(&serde_json::to_string(&t.to_document()).unwrap()).unwrap();
        prop_assert_eq!(reloaded.rules().len(), t.rules().len());
    }

    #[test]
    fn noise_breaks_the_partition(seed in any::<u64>()) {
        let t = generate_table(&GenSpec::standard(3, 60, seed)).unwrap();
        let o = inject_noise(&t, NoiseMode::Overlap, 0.1, seed).unwrap();
        prop_assert!(!find_overlapping_rules(&o).is_empty());
        prop_assert!(find_missing_rules(&o).is_empty());
        let m = inject_noise(&t, NoiseMode::Missing, 0.1, seed).unwrap();
        prop_assert!(!find_missing_rules(&m).is_empty());
        prop_assert!(find_overlapping_rules(&m).is_empty());
    }
}
