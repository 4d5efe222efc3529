//! The algebraic half: relative cubical homology, index maps through the
//! chain selector, Leray reduction, Poincaré series.
//!
//! Run with `cargo run --example conley_indices`.

use conley_morse::fixtures::{fix_a, fix_r};
use conley_morse::homology::FieldMatrix;
use conley_morse::{
    build_weak_index_pair, conley_index, index_map, leray_reduce, relative_homology, CellSet,
    GridDomain,
};

fn main() -> conley_morse::Result<()> {
    // relative homology of pairs of cell sets
    let grid = GridDomain::line(0.0, 5.0, 5);
    let p1 = CellSet::from_ids(5, [1, 2, 3]);
    let p2 = CellSet::from_ids(5, [1, 3]);
    let (_, dims) = relative_homology(&grid, &p1, &p2)?;
    println!("H(interval rel both ends) dims = {dims:?}");
    let (_, dims) = relative_homology(&grid, &p1, &CellSet::from_ids(5, [3]))?;
    println!("H(interval rel one end)  dims = {dims:?}");

    // index map of the expanding interval: a unit in degree 1
    let f = fix_r();
    let pair = build_weak_index_pair(&f, &p1)?;
    let imap = index_map(&f, &pair.as_fpair())?;
    println!("\nindex map dims = {:?}", imap.dims);
    println!("degree-1 matrix = {:?}", imap.matrices[1].to_i64_lossy());

    // Leray reduction strips the generalized kernel
    let m = FieldMatrix::from_rows(vec![vec![1, 1], vec![0, 0]]);
    let (dim, auto) = leray_reduce(&m);
    println!("\nleray_reduce([[1,1],[0,0]]) = dim {dim}, automorphism {:?}", auto.to_i64_lossy());

    // the packaged pipeline: weak index pair -> index map -> reduction
    let idx = conley_index(&f, &p1)?;
    println!("\nConley index of the repelling interval: dims {:?}, p(t) = {}",
        idx.dims, idx.poincare());
    let fa = fix_a();
    let idx = conley_index(&fa, &CellSet::full(3))?;
    println!("Conley index of the attracting cell:   dims {:?}, p(t) = {}",
        idx.dims, idx.poincare());
    Ok(())
}
