//! Generates a clean synthetic table, injects each kind of noise, and counts what the
//! analyses find.
//!
//! cargo run --release --example generate_and_noise [columns] [rules] [seed]

use dmn_verify::{
    find_missing_rules, find_overlapping_rules, generate_table, inject_noise, pairwise_overlap_fragments, GenSpec,
    NoiseMode,
};

fn main() -> dmn_verify::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let columns = args.next().flatten().unwrap_or(3) as usize;
    let rules = args.next().flatten().unwrap_or(500) as usize;
    let seed = args.next().flatten().unwrap_or(42);
    let base = generate_table(&GenSpec::standard(columns, rules, seed))?;
    println!(
        "{}: {} rules, {} overlap groups, {} missing regions",
        base.name(),
        base.rules().len(),
        find_overlapping_rules(&base).len(),
        find_missing_rules(&base).len()
    );
    let widened = inject_noise(&base, NoiseMode::Overlap, 0.1, seed)?;
    println!(
        "widened 10%: {} overlap groups, {} pairwise fragments",
        find_overlapping_rules(&widened).len(),
        pairwise_overlap_fragments(&widened)
    );
    let shrunk = inject_noise(&base, NoiseMode::Missing, 0.1, seed)?;
    println!("shrunk 10%: {} missing regions", find_missing_rules(&shrunk).len());
    if let Some(rule) = widened.rules().first() {
        let entries: Vec<String> = rule.inputs.iter().map(ToString::to_string).collect();
        println!("first rule: {} -> {}", entries.join(" | "), rule.outputs[0]);
    }
    Ok(())
}
