//! Runs the 3 x 3 benchmark grid and prints timings and finding counts.
//!
//! cargo run --release --example synthetic_benchmark [runs] [seed]

use dmn_verify::synth::{run_benchmark, standard_grid};

fn main() -> dmn_verify::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(2016);
    let report = run_benchmark(&standard_grid(seed), 0.1, runs)?;
    print!("{}", report.to_text());
    Ok(())
}
