//! Prints the uncovered regions of a table as pasteable rule entries.
//!
//! cargo run --example find_missing [table.json]

use dmn_verify::{find_missing_rules, load_table, load_table_file};

fn main() -> dmn_verify::Result<()> {
    let table = match std::env::args().nth(1) {
        Some(path) => load_table_file(path)?,
        None => load_table(include_str!("../fixtures/loan_grade.json"))?,
    };
    let names: Vec<&str> = table.inputs().iter().map(|a| a.name.as_str()).collect();
    println!("{}", names.join(" | "));
    let regions = find_missing_rules(&table);
    for r in &regions {
        println!("{}", r.rendered.join(" | "));
    }
    println!("{} missing regions", regions.len());
    Ok(())
}
