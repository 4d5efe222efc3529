//! End-to-end analysis of a system file: the same pipeline the `analyze`
//! subcommand runs, here on the bundled 48-cell envelope system whose
//! decomposition has an attracting pair of intervals, an expanding
//! repeller, and a drift block with trivial index.
//!
//! Run with `cargo run --example full_analysis`.

use std::path::PathBuf;

use conley_morse::report::analyze;

fn main() -> conley_morse::Result<()> {
    let spec = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/fix_p.json");
    let run = analyze(&spec, None)?;

    println!("input digest: {}", &run.digest[..16]);
    println!("grid: {} cells over {:?}", run.grid.total_cells(), run.grid.bounds[0]);
    println!("map kind: {}", run.map_kind);
    println!("invariant part: {} cells", run.morse.ambient.len());

    println!("\nMorse sets (linear order):");
    for (rank, set) in run.morse.sets_in_linear_order().iter().enumerate() {
        println!("  M{} = {:?}  p(t) = {}", rank + 1, set.ids(), run.equation.p_m[rank]);
    }
    println!("\np(t, S) = {}", run.equation.p_s);
    println!("Q(t) = {}", run.equation.q);
    for (i, q) in run.equation.q_i.iter().enumerate() {
        println!("  Q_{}(t) = {}", i + 1, q);
    }

    println!("\nMorse graph:\n{}", run.to_dot());
    println!("report JSON keys: {:?}",
        run.to_json().as_object().unwrap().keys().collect::<Vec<_>>());
    Ok(())
}
