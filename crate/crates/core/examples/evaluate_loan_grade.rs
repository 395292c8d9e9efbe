//! Loads the loan-grade table and evaluates it on a few applicants.
//!
//! cargo run --example evaluate_loan_grade [table.json] ["Name=value,..."]

use dmn_verify::{evaluate, load_table, load_table_file};

fn main() -> dmn_verify::Result<()> {
    let mut args = std::env::args().skip(1);
    let table = match args.next() {
        Some(path) => load_table_file(path)?,
        None => load_table(include_str!("../fixtures/loan_grade.json"))?,
    };
    let inputs: Vec<String> = match args.next() {
        Some(one) => vec![one],
        None => [
            "Annual Income=500,Loan Size=4230",
            "Annual Income=200,Loan Size=2000",
            "Annual Income=600,Loan Size=600",
        ]
        .map(String::from)
        .to_vec(),
    };
    for text in &inputs {
        let input = table.parse_input(text)?;
        println!("{text}: {}", evaluate(&table, &input)?);
    }
    Ok(())
}
