//! Runs the full correctness check and prints every diagnostic, then the same
//! report restricted to one kind of finding.
//!
//! cargo run --example check_correctness [table.json]

use dmn_verify::{check_correct, check_correct_scoped, load_table, load_table_file, CheckScope};

fn main() -> dmn_verify::Result<()> {
    let tables = match std::env::args().nth(1) {
        Some(path) => vec![load_table_file(path)?],
        None => vec![
            load_table(include_str!("../fixtures/loan_grade.json"))?,
            load_table(include_str!("../fixtures/full_cover.json"))?,
        ],
    };
    for table in &tables {
        let report = check_correct(table);
        println!(
            "{}: {}",
            table.name(),
            if report.correct { "correct" } else { "incorrect" }
        );
        for d in report.diagnostics(table) {
            println!("  {d}");
        }
        let overlap_only = check_correct_scoped(table, CheckScope::Overlap);
        println!("  overlap scope alone: correct = {}", overlap_only.correct);
    }
    Ok(())
}
