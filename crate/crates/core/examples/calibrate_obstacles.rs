//! Prints how far the through-wall and multi-floor presets reach for a range
//! of path-loss exponents. This is how the exponents shipped in those presets
//! were picked.
//!
//!     cargo run --example calibrate_obstacles

use backscatter_sim::experiments::{run_sweep, SweepSpec};
use backscatter_sim::scenario::{presets, Override, Scenario};
use backscatter_sim::Result;

fn reach(s: &Scenario) -> Result<Vec<Option<f64>>> {
    SweepSpec::from_scenario(s)?
        .iter()
        .map(|(_, spec)| Ok(run_sweep(spec)?.max_range))
        .collect()
}

fn main() -> Result<()> {
    for preset in ["fig5-throughwall", "fig6-roomtoroom", "fig11-floors-868"] {
        let base = presets::get(preset)?;
        println!("{preset} (shipped exponent {})", base.path_loss_exponent);
        for step in 0..=8 {
            let n = 2.8 + 0.1 * step as f64;
            let s = base.with_override(&Override::new("path_loss_exponent", n))?;
            println!("  n = {n:.2}: furthest passing grid value per series {:?}", reach(&s)?);
        }
    }
    Ok(())
}
