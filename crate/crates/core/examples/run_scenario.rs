//! Loads a scenario config, runs it and prints the resulting table.
//!
//! `cargo run --release --example run_scenario -- examples/configs/czz_margin.json`

use fluxlat::scenario;

fn main() -> fluxlat::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/czz_margin.json").into());
    let config = scenario::load(path.as_ref())?;
    println!("scenario {} (config hash {})", config.envelope.scenario.name(), scenario::config_hash(&config));
    let result = scenario::execute(&config)?;
    print!("{}", result.to_csv());
    for f in &result.failures {
        eprintln!("failed {:?}: {}", f.index, f.message);
    }
    Ok(())
}
