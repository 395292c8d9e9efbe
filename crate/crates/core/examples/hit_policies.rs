//! Evaluates one overlapping input under each hit policy, then shows a rule that a
//! higher-priority rule masks.
//!
//! cargo run --example hit_policies

use dmn_verify::{check_correct, evaluate, load_table, masked_by, HitPolicy};

const TIERS: &str = r#"{
  "name": "Shipping",
  "hitPolicy": "P",
  "inputs": [{"name": "Weight", "type": "real", "facet": ">= 0"}],
  "outputs": [{"name": "Tier", "type": "string", "facet": "Light,Heavy,Freight"}],
  "rules": [
    {"id": "light", "priority": 1, "in": ["< 5"], "out": ["Light"]},
    {"id": "heavy", "priority": 3, "in": ["[5..50]"], "out": ["Heavy"]},
    {"id": "freight", "priority": 4, "in": [">= 20"], "out": ["Freight"]},
    {"id": "bulk", "priority": 2, "in": ["[30..40]"], "out": ["Heavy"]}
  ]
}"#;

fn main() -> dmn_verify::Result<()> {
    let table = load_table(TIERS)?;
    let input = table.parse_input("Weight=35")?;
    for policy in [HitPolicy::Unique, HitPolicy::Any, HitPolicy::Priority, HitPolicy::First] {
        let t = table.clone().with_hit_policy(policy);
        println!("{policy:?}: {}", evaluate(&t, &input)?);
    }
    let rules = table.rules();
    for r1 in rules {
        for r2 in rules.iter().filter(|r2| r2.id != r1.id && masked_by(r1, r2, &table)) {
            println!("{} is masked by {}", r1.id, r2.id);
        }
    }
    for d in check_correct(&table).diagnostics(&table) {
        println!("{d}");
    }
    Ok(())
}
