//! Weak index pairs and index triples: construction, certification, the
//! T-pair, and restriction to smaller isolating neighborhoods.
//!
//! Run with `cargo run --example index_pairs`.

use conley_morse::fixtures::fix_r;
use conley_morse::indexpair::FPair;
use conley_morse::{
    build_index_triple, build_weak_index_pair, comb_interior, fpair_restrict, t_pair,
    verify_f_pair, verify_weak_index_pair, CellSet,
};

fn main() -> conley_morse::Result<()> {
    let f = fix_r();

    // a certified weak index pair around the expanding middle cell
    let n = CellSet::from_ids(5, [1, 2, 3]);
    let pair = build_weak_index_pair(&f, &n)?;
    println!("pair in N = {:?}: p1 = {:?}, p2 = {:?}", n.ids(), pair.p1.ids(), pair.p2.ids());
    println!("verification: {:?}", verify_weak_index_pair(&f, &pair));
    let (t1, t2) = t_pair(f.grid(), &pair);
    println!("T-pair: ({:?}, {:?})", t1.ids(), t2.ids());

    // every weak index pair is an F-pair
    println!("as F-pair: {:?}", verify_f_pair(&f, &pair.as_fpair()));

    // an index triple for the repeller-attractor pair (source, sinks)
    let all = CellSet::full(5);
    let sinks = CellSet::from_ids(5, [0, 4]);
    let trap = CellSet::from_ids(5, [0, 1, 3, 4]);
    let triple = build_index_triple(&f, &all, &sinks, &trap)?;
    println!("\nindex triple for (source, sinks):");
    println!("  p0 = {:?}", triple.p0.ids());
    println!("  p1 = {:?}", triple.p1.ids());
    println!("  p2 = {:?}", triple.p2.ids());
    println!("  (p0,p2) weak index pair: {:?}", verify_weak_index_pair(&f, &triple.s_pair()));
    println!("  (p1,p2) F-pair: {:?}", verify_f_pair(&f, &triple.attractor_pair()));
    println!("  (p0,p1) F-pair: {:?}", verify_f_pair(&f, &triple.repeller_pair()));

    // restriction: cutting an F-pair down to a neighborhood of the
    // repeller yields a certified weak index pair with a conjugate index
    let big = FPair { r1: all.clone(), r2: trap.clone(), ambient: all.clone() };
    let k = all.difference(&comb_interior(f.grid(), &trap));
    let restricted = fpair_restrict(&f, &big, &k)?;
    println!("\nrestricted to K = {:?}: ({:?}, {:?})",
        k.ids(), restricted.p1.ids(), restricted.p2.ids());
    Ok(())
}
