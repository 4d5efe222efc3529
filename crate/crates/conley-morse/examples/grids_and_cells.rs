//! Cubical grids: cells, neighbor stencils, combinatorial interiors, and
//! the closure complexes that feed the homology machinery.
//!
//! Run with `cargo run --example grids_and_cells`.

use conley_morse::{closure_complex, comb_interior, neighbors, CellSet, GridDomain};

fn main() -> conley_morse::Result<()> {
    // a 1D grid: 8 cells over [0, 4]
    let line = GridDomain::line(0.0, 4.0, 8);
    println!("line grid: {} cells of width {}", line.total_cells(), line.cell_width(0));
    println!("neighbors of cell 3: {:?}", neighbors(&line, 3)?.ids());
    println!("neighbors of the boundary cell 0: {:?}", neighbors(&line, 0)?.ids());

    let n = CellSet::from_ids(8, 2..=5);
    println!("\nN = {:?}", n.ids());
    println!("comb_interior(N) = {:?} (endpoint cells touch the complement)",
        comb_interior(&line, &n).ids());
    println!("comb_interior(whole grid) = whole grid: {}",
        comb_interior(&line, &CellSet::full(8)) == CellSet::full(8));

    // the closure complex of a cell set contains every face of its cells
    let block = CellSet::from_ids(8, [1, 2]);
    let complex = closure_complex(&line, &block);
    println!("\nclosure complex of cells {:?}: {} edges, {} vertices",
        block.ids(),
        complex.cubes_of_dim(1).len(),
        complex.cubes_of_dim(0).len());

    // a 2D grid: cell ids are row-major with axis 0 fastest
    let plane = GridDomain::new(2, vec![[0.0, 3.0], [0.0, 3.0]], vec![3, 3])?;
    let center = plane.locate(&[1.5, 1.5])?;
    println!("\n3x3 grid: center cell id {center}, Moore neighborhood {:?}",
        neighbors(&plane, center)?.ids());
    let square = closure_complex(&plane, &CellSet::from_ids(9, [center]));
    println!("closure of one square: {} squares, {} edges, {} vertices",
        square.cubes_of_dim(2).len(),
        square.cubes_of_dim(1).len(),
        square.cubes_of_dim(0).len());
    Ok(())
}
