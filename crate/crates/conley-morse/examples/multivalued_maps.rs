//! The three ingestion routes for combinatorial multivalued maps —
//! explicit tables, piecewise-linear envelopes, sampled pairs — and the
//! acyclic-values certification they all feed into.
//!
//! Run with `cargo run --example multivalued_maps`.

use conley_morse::mvmap::{from_pl_envelope, from_samples, CombMap};
use conley_morse::{check_values_acyclic, image, CellSet, GridDomain};

fn main() -> conley_morse::Result<()> {
    // explicit table: a source between two sinks
    let grid = GridDomain::line(0.0, 5.0, 5);
    let table = CombMap::explicit(
        grid.clone(),
        &[(0, vec![0]), (1, vec![0]), (2, vec![1, 2, 3]), (3, vec![4]), (4, vec![4])],
    )?;
    println!("explicit table, images:");
    for c in 0..5 {
        println!("  F({c}) = {:?}", table.targets(c).ids());
    }
    let a = CellSet::from_ids(5, [1, 2]);
    println!("image of {:?} = {:?}", a.ids(), image(&table, &a).ids());

    // envelope: the set-valued graph between two piecewise-linear curves,
    // outer-approximated cellwise
    let env_grid = GridDomain::line(0.0, 3.0, 6);
    let f = from_pl_envelope(
        &env_grid,
        &[(0.0, 0.2), (3.0, 2.0)],
        &[(0.0, 0.8), (3.0, 2.6)],
    )?;
    println!("\nenvelope map targets:");
    for c in 0..6 {
        println!("  F({c}) = {:?}", f.targets(c).ids());
    }

    // samples: pairs binned into cells, padded by a ring
    let pairs = vec![
        (vec![0.4], vec![1.6]),
        (vec![1.3], vec![1.4]),
        (vec![2.6], vec![1.5]),
    ];
    let sampled = from_samples(&env_grid, &pairs, 1)?;
    println!("\nsampled map (pad 1): dom F = {:?}", sampled.domain().ids());

    // acyclicity: every nonempty value must be a contiguous block
    println!("\nacyclic values (table): {:?}", check_values_acyclic(&table));
    let gap = CombMap::explicit(grid, &[(0, vec![0, 2])])?;
    println!("acyclic values (gapped): {:?}", check_values_acyclic(&gap));
    Ok(())
}
