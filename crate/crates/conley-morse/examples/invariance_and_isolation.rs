//! Solutions and the dynamical predicates: reachability, invariant
//! parts, isolating neighborhoods, trapping regions.
//!
//! Run with `cargo run --example invariance_and_isolation`.

use conley_morse::dynamics::Solution;
use conley_morse::fixtures::fix_r;
use conley_morse::{
    find_trapping_region, inv_minus, inv_part, inv_plus, is_isolating, is_trapping, limit_sets,
    positive_hull, reach_forward, reach_forward_n, CellSet,
};

fn main() -> conley_morse::Result<()> {
    let f = fix_r();
    let all = CellSet::full(5);

    println!("one-step images from the expanding cell 2: {:?}",
        reach_forward_n(&f, &all, 2, 1)?.ids());
    println!("everything reachable from 2: {:?}", reach_forward(&f, &all, 2)?.ids());

    let n = CellSet::from_ids(5, [1, 2, 3]);
    println!("\nN = {:?}", n.ids());
    println!("  inv_plus  = {:?}", inv_plus(&f, &n).ids());
    println!("  inv_minus = {:?}", inv_minus(&f, &n).ids());
    println!("  inv_part  = {:?}", inv_part(&f, &n).ids());
    println!("  isolating: {}", is_isolating(&f, &n));

    // positive hull: smallest positively invariant superset within N
    println!("positive hull of {{2}} in N: {:?}",
        positive_hull(&f, &n, &CellSet::from_ids(5, [2]))?.ids());

    // a bi-infinite eventually-periodic solution: backward cycle at the
    // source, forward cycle at a sink
    let sigma = Solution {
        backward_cycle: vec![2],
        bridge: vec![3],
        forward_cycle: vec![4],
    };
    let limits = limit_sets(&f, &sigma)?;
    println!("\nsolution 2 -> 3 -> 4: alpha = {:?}, omega = {:?}",
        limits.alpha.ids(), limits.omega.ids());

    // trapping regions certify attractors
    let left_sink = CellSet::from_ids(5, [0]);
    let trap = find_trapping_region(&f, &left_sink)?;
    println!("\ntrapping region of the left sink: {:?} (trapping: {})",
        trap.ids(), is_trapping(&f, &trap));
    match find_trapping_region(&f, &CellSet::from_ids(5, [2])) {
        Err(e) => println!("the source is not an attractor: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
