//! Small random tables for oracle and semantics checks.
#![allow(dead_code)]

use dmn_verify::analysis::oracle::compressed_grid;
use dmn_verify::geometry::TableGeometry;
use dmn_verify::interval::Scalar;
use dmn_verify::model::{load_table, DecisionTable, InputConfiguration};
use dmn_verify::sfeel::{DataType, Value};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const LOAN_GRADE: &str = include_str!("../../fixtures/loan_grade.json");
pub const FULL_COVER: &str = include_str!("../../fixtures/full_cover.json");

const CATS: [&str; 5] = ["a", "b", "c", "d", "e"];

fn numeric_entry(rng: &mut ChaCha8Rng, real: bool) -> String {
    let v = |rng: &mut ChaCha8Rng| rng.gen_range(0..=10);
    match rng.gen_range(0..10) {
        0 => "-".into(),
        1 => format!("<{}", v(rng)),
        2 => format!(">={}", v(rng)),
        3 => format!("{}", v(rng)),
        4 => format!("not({})", v(rng)),
        5 => {
            let (a, b) = (v(rng), v(rng));
            format!("[{}..{}],[{}..{}]", a.min(b), a.max(b), v(rng), 10)
        }
        6 if real => {
            let (a, b) = (v(rng), v(rng));
            format!("({}..{})", a.min(b), a.max(b))
        }
        _ => {
            let (a, b) = (v(rng), v(rng));
            let lo = if real && rng.gen_bool(0.3) { '(' } else { '[' };
            let hi = if real && rng.gen_bool(0.3) { ')' } else { ']' };
            format!("{lo}{}..{}{hi}", a.min(b), a.max(b))
        }
    }
}

fn string_entry(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..5) {
        0 => "-".into(),
        1 => format!("not({})", CATS.choose(rng).unwrap()),
        2 | 3 => {
            let k = rng.gen_range(1..=3);
            let picked: Vec<&str> = CATS.choose_multiple(rng, k).copied().collect();
            picked.join(",")
        }
        _ => CATS.choose(rng).unwrap().to_string(),
    }
}

fn bool_entry(rng: &mut ChaCha8Rng) -> String {
    ["-", "true", "false"].choose(rng).unwrap().to_string()
}

/// A random table: up to 3 columns of mixed kinds, up to 8 rules, endpoints in 0..=10.
pub fn random_table(seed: u64) -> DecisionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns = rng.gen_range(1..=3);
    let mut kinds = Vec::new();
    let mut inputs = Vec::new();
    for k in 0..columns {
        let kind = *["integer", "real", "string", "boolean"].choose(&mut rng).unwrap();
        let facet = match (kind, rng.gen_range(0..3)) {
            ("integer" | "real", 0) => Some(">= 0".to_string()),
            ("integer" | "real", 1) => Some("[0..10]".to_string()),
            ("string", 0) => Some("a,b,c".to_string()),
            _ => None,
        };
        let facet = facet.map(|f| format!(r#","facet":"{f}""#)).unwrap_or_default();
        inputs.push(format!(r#"{{"name":"c{k}","type":"{kind}"{facet}}}"#));
        kinds.push(kind);
    }
    let hit = *["U", "A", "P", "F"].choose(&mut rng).unwrap();
    let completeness = *["C", "I"].choose(&mut rng).unwrap();
    let n = rng.gen_range(0..=8);
    let mut ranks: Vec<usize> = (1..=n).collect();
    ranks.shuffle(&mut rng);
    let rules: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<String> = kinds
                .iter()
                .map(|kind| match *kind {
                    "integer" => numeric_entry(&mut rng, false),
                    "real" => numeric_entry(&mut rng, true),
                    "string" => string_entry(&mut rng),
                    _ => bool_entry(&mut rng),
                })
                .map(|c| format!("{c:?}"))
                .collect();
            let out = ["x", "y"].choose(&mut rng).unwrap();
            let priority = if hit == "P" {
                format!(r#","priority":{}"#, ranks[i])
            } else {
                String::new()
            };
            format!(
                r#"{{"id":"r{i}"{priority},"in":[{}],"out":["{out}"]}}"#,
                cells.join(",")
            )
        })
        .collect();
    let doc = format!(
        r#"{{"name":"random {seed}","hitPolicy":"{hit}","completeness":"{completeness}",
            "inputs":[{}],"outputs":[{{"name":"o","type":"string"}}],"rules":[{}]}}"#,
        inputs.join(","),
        rules.join(",")
    );
    load_table(&doc).unwrap_or_else(|e| panic!("random table {seed}: {e}\n{doc}"))
}

/// Turns an encoded point back into column values.
pub fn decode_point(table: &DecisionTable, geometry: &TableGeometry, point: &[Scalar]) -> Vec<Value> {
    table
        .inputs()
        .iter()
        .zip(point)
        .enumerate()
        .map(|(k, (attr, p))| match (attr.ty, geometry.codec.column(k)) {
            (DataType::Integer, _) => Value::Integer(p.as_f64() as i64),
            (DataType::Real, _) => Value::Real(p.as_f64()),
            (_, Some(codec)) => codec
                .categories()
                .get(p.as_f64().floor() as usize)
                .cloned()
                .unwrap_or_else(|| Value::string("unlisted")),
            (_, None) => unreachable!("categorical columns have codecs"),
        })
        .collect()
}

/// Inputs to probe a table with: one point per compressed-grid cell plus random values.
/// Random strings are drawn from the column's known categories when it has any.
pub fn probe_inputs(table: &DecisionTable, seed: u64, extra: usize) -> Vec<InputConfiguration> {
    let geometry = TableGeometry::new(table).unwrap();
    let mut out = Vec::new();
    if let Ok(grid) = compressed_grid(&geometry, 100_000) {
        for cell in grid.cells() {
            let values = decode_point(table, &geometry, &grid.representative(&cell));
            out.push(table.input_values(values).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        let values = table
            .inputs()
            .iter()
            .enumerate()
            .map(|(k, a)| match a.ty {
                DataType::Integer => Value::Integer(rng.gen_range(-1..=11)),
                DataType::Real => Value::Real(rng.gen_range(-2..=22) as f64 / 2.0),
                DataType::Boolean => Value::Boolean(rng.gen()),
                DataType::String => match geometry.codec.column(k).map(|c| c.categories()) {
                    Some(cats) if !cats.is_empty() => cats.choose(&mut rng).unwrap().clone(),
                    _ => Value::string(*CATS.choose(&mut rng).unwrap()),
                },
            })
            .collect();
        out.push(table.input_values(values).unwrap());
    }
    out
}

/// Whether `input` lies inside the table's declared input space.
pub fn in_universe(geometry: &TableGeometry, input: &InputConfiguration) -> bool {
    geometry
        .codec
        .encode_input(input)
        .map(|p| geometry.universe.contains_point(&p))
        .unwrap_or(false)
}
