//! Lists maximal groups of rules that some input triggers together, with a witness box
//! for each, and compares against the brute-force grid oracle.
//!
//! cargo run --example find_overlaps [table.json]

use dmn_verify::{find_overlapping_rules, load_table, load_table_file, oracle_overlaps};

fn main() -> dmn_verify::Result<()> {
    let table = match std::env::args().nth(1) {
        Some(path) => load_table_file(path)?,
        None => load_table(include_str!("../fixtures/loan_grade.json"))?,
    };
    let groups = find_overlapping_rules(&table);
    for g in &groups {
        println!("{{{}}} overlap on {}", g.rule_ids.join(", "), g.witness);
    }
    let oracle = oracle_overlaps(&table)?;
    println!("{} groups, oracle finds {}", groups.len(), oracle.len());
    Ok(())
}
