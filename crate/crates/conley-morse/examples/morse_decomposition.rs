//! Morse decompositions via condensation of the transition digraph, the
//! attractor filtration with dual repellers, and the Morse graph.
//!
//! Run with `cargo run --example morse_decomposition`.

use conley_morse::fixtures::fix_r;
use conley_morse::morse::morse_to_json;
use conley_morse::{
    attractors_from_morse, morse_decomposition, morse_from_attractors, morse_graph, CellSet,
};

fn main() -> conley_morse::Result<()> {
    let f = fix_r();
    let all = CellSet::full(5);
    let d = morse_decomposition(&f, &all)?;

    println!("invariant part S = {:?}", d.ambient.ids());
    for (rank, set) in d.sets_in_linear_order().iter().enumerate() {
        println!("  M{} = {:?}", rank + 1, set.ids());
    }

    let seq = attractors_from_morse(&f, &d)?;
    println!("\nattractor filtration:");
    for (k, a) in seq.attractors.iter().enumerate() {
        println!("  A_{k} = {:?}   dual A*_{k} = {:?}", a.ids(), seq.repellers[k].ids());
    }
    for (k, t) in seq.trapping.iter().enumerate() {
        println!("  trapping region of A_{} = {:?}", k + 1, t.ids());
    }

    // the Morse sets are recovered from the filtration
    let rebuilt = morse_from_attractors(&f, &d.ambient, &seq)?;
    println!("\nround-trip recovers the Morse sets: {}",
        rebuilt.sets_in_linear_order().iter().map(|s| s.ids()).collect::<Vec<_>>()
            == d.sets_in_linear_order().iter().map(|s| s.ids()).collect::<Vec<_>>());

    println!("\nMorse graph (DOT):\n{}", morse_graph(&d).to_dot());
    println!("JSON: {}", morse_to_json(&d));
    Ok(())
}
