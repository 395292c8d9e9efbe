//! Parses a few S-FEEL input entries, prints their canonical form and interval lowering,
//! and tests a value against each.
//!
//! cargo run --example parse_conditions

use dmn_verify::sfeel::{lower_to_intervals, parse_condition, satisfies, DataType, Value};

fn main() -> dmn_verify::Result<()> {
    let numeric = ["[250..750]", "< 1000", "[0..18],>= 70", "not(5)", "(2..10]", "-"];
    for text in numeric {
        let cond = parse_condition(text, DataType::Integer)?;
        let set = lower_to_intervals(&cond, DataType::Integer, None)?;
        let hit = satisfies(&cond, &Value::Integer(70))?;
        println!(
            "{text:<16} -> {:<16} lowers to {:<24} 70 matches: {hit}",
            cond.to_string(),
            set.to_string()
        );
    }
    let purpose = parse_condition(r#""Refinancing","Leasing""#, DataType::String)?;
    println!(
        "{purpose} matches Leasing: {}",
        satisfies(&purpose, &Value::string("Leasing"))?
    );
    match parse_condition("[1..", DataType::Integer) {
        Ok(c) => println!("unexpectedly parsed {c}"),
        Err(e) => println!("[1.. is rejected: {e}"),
    }
    Ok(())
}
