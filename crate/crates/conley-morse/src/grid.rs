//! Cubical phase space: uniform grids over a box, dense cell sets, and the
//! full subcomplexes their closures generate.
//!
//! The grid is the whole phase space. Cell ids are row-major with axis 0
//! fastest; this ordering is normative for all I/O and for the iteration
//! order of [`CellSet`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid over an axis-aligned box. Dimensions 1 and 2 are supported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDomain {
    pub dim: usize,
    /// Per-axis closed interval `[lower, upper]`.
    pub bounds: Vec<[f64; 2]>,
    /// Per-axis cell count.
    pub divisions: Vec<usize>,
}

impl GridDomain {
    pub fn new(dim: usize, bounds: Vec<[f64; 2]>, divisions: Vec<usize>) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dim must be 1 or 2, got {dim}")));
        }
        if bounds.len() != dim || divisions.len() != dim {
            return Err(Error::InvalidGrid(
                "bounds/divisions length must equal dim".into(),
            ));
        }
        for (k, b) in bounds.iter().enumerate() {
            if !b[0].is_finite() || !b[1].is_finite() || b[0] >= b[1] {
                return Err(Error::InvalidGrid(format!(
                    "bounds[{k}] degenerate: [{}, {}]",
                    b[0], b[1]
                )));
            }
        }
        if divisions.contains(&0) {
            return Err(Error::InvalidGrid("divisions must be positive".into()));
        }
        Ok(GridDomain { dim, bounds, divisions })
    }

    /// 1D helper used throughout the tests.
    pub fn line(lo: f64, hi: f64, cells: usize) -> Self {
        GridDomain::new(1, vec![[lo, hi]], vec![cells]).expect("valid 1D grid")
    }

    pub fn total_cells(&self) -> usize {
        self.divisions.iter().product()
    }

    /// Per-axis cell width.
    pub fn cell_width(&self, axis: usize) -> f64 {
        (self.bounds[axis][1] - self.bounds[axis][0]) / self.divisions[axis] as f64
    }

    pub fn cell_from_id(&self, id: usize) -> Result<Cell> {
        if id >= self.total_cells() {
            return Err(Error::InvalidCell { id, total: self.total_cells() });
        }
        let mut rem = id;
        let mut multi_index = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            multi_index.push(rem % self.divisions[k]);
            rem /= self.divisions[k];
        }
        Ok(Cell { multi_index })
    }

    pub fn id_of(&self, cell: &Cell) -> usize {
        let mut id = 0;
        let mut stride = 1;
        for k in 0..self.dim {
            id += cell.multi_index[k] * stride;
            stride *= self.divisions[k];
        }
        id
    }

    /// Cell containing a point; points on a shared face go to the cell with
    /// the larger index except at the very top of the box.
    pub fn locate(&self, point: &[f64]) -> Result<usize> {
        if point.len() != self.dim {
            return Err(Error::IngestionOutOfBounds(format!(
                "point has {} coordinates, grid has dim {}",
                point.len(),
                self.dim
            )));
        }
        let mut multi_index = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let [lo, hi] = self.bounds[k];
            let x = point[k];
            if x < lo || x > hi {
                return Err(Error::IngestionOutOfBounds(format!(
                    "coordinate {x} outside [{lo}, {hi}] on axis {k}"
                )));
            }
            let w = self.cell_width(k);
            let mut i = ((x - lo) / w).floor() as isize;
            if i < 0 {
                i = 0;
            }
            let i = (i as usize).min(self.divisions[k] - 1);
            multi_index.push(i);
        }
        Ok(self.id_of(&Cell { multi_index }))
    }

    /// Closed realization of a cell: per-axis `[lo, hi]`.
    pub fn cell_box(&self, id: usize) -> Result<Vec<[f64; 2]>> {
        let cell = self.cell_from_id(id)?;
        Ok((0..self.dim)
            .map(|k| {
                let w = self.cell_width(k);
                let lo = self.bounds[k][0] + cell.multi_index[k] as f64 * w;
                [lo, lo + w]
            })
            .collect())
    }
}

/// A top-dimensional grid cell, identified by its per-axis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub multi_index: Vec<usize>,
}

/// Dense bit-indexed set of top-dimensional cells.
///
/// Iteration is always in ascending cell id, which makes every set-driven
/// computation in the crate deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    words: Vec<u64>,
    n: usize,
}

impl CellSet {
    pub fn empty(n: usize) -> Self {
        CellSet { words: vec![0; n.div_ceil(64)], n }
    }

    pub fn full(n: usize) -> Self {
        let mut s = CellSet::empty(n);
        for id in 0..n {
            s.insert(id);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Self {
        let mut s = CellSet::empty(n);
        for id in ids {
            assert!(id < n, "cell id {id} out of range {n}");
            s.insert(id);
        }
        s
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, id: usize) {
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn remove(&mut self, id: usize) {
        self.words[id / 64] &= !(1 << (id % 64));
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.n && self.words[id / 64] & (1 << (id % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> CellSet {
        let mut out = CellSet::full(self.n);
        for id in self.iter() {
            out.remove(id);
        }
        out
    }

    pub fn union_in_place(&mut self, other: &CellSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Ascending cell ids.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&id| self.contains(id))
    }

    pub fn ids(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member, if any. Used for deterministic tie-breaking.
    pub fn min_id(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_with(&self, other: &CellSet, f: impl Fn(u64, u64) -> u64) -> CellSet {
        assert_eq!(self.n, other.n, "cell sets over different grids");
        CellSet {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
            n: self.n,
        }
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellSet{:?}", self.ids())
    }
}

/// An elementary cube: per-axis integer interval `[lo, lo+extent]` with
/// `extent` 0 (degenerate) or 1. The dimension is the number of
/// nondegenerate axes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    /// `(lo, nondegenerate)` per axis.
    pub intervals: Vec<(i64, bool)>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.intervals.iter().filter(|(_, nd)| *nd).count()
    }

    /// Cube of the closed realization of a top cell.
    pub fn top(cell: &Cell) -> Cube {
        Cube {
            intervals: cell.multi_index.iter().map(|&i| (i as i64, true)).collect(),
        }
    }

    /// Primary faces: the two faces obtained by collapsing one
    /// nondegenerate axis to an endpoint.
    pub fn primary_faces(&self) -> Vec<Cube> {
        let mut out = Vec::new();
        for (k, &(lo, nd)) in self.intervals.iter().enumerate() {
            if nd {
                let mut lower = self.clone();
                lower.intervals[k] = (lo, false);
                let mut upper = self.clone();
                upper.intervals[k] = (lo + 1, false);
                out.push(lower);
                out.push(upper);
            }
        }
        out
    }

    /// Cubical boundary with signs: `∂(I×Q) = ∂I×Q + (−1)^{dim I} I×∂Q`.
    /// Returns `(face, coefficient)` pairs.
    pub fn boundary(&self) -> Vec<(Cube, i64)> {
        let mut out = Vec::new();
        let mut sign = 1i64;
        for (k, &(lo, nd)) in self.intervals.iter().enumerate() {
            if nd {
                let mut lower = self.clone();
                lower.intervals[k] = (lo, false);
                let mut upper = self.clone();
                upper.intervals[k] = (lo + 1, false);
                out.push((upper, sign));
                out.push((lower, -sign));
                sign = -sign;
            }
        }
        out
    }
}

/// Finite set of elementary cubes closed under taking faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalComplex {
    pub cubes: BTreeSet<Cube>,
}

impl CubicalComplex {
    pub fn empty() -> Self {
        CubicalComplex { cubes: BTreeSet::new() }
    }

    pub fn contains(&self, cube: &Cube) -> bool {
        self.cubes.contains(cube)
    }

    pub fn union(&self, other: &CubicalComplex) -> CubicalComplex {
        CubicalComplex { cubes: self.cubes.union(&other.cubes).cloned().collect() }
    }

    pub fn intersection(&self, other: &CubicalComplex) -> CubicalComplex {
        CubicalComplex {
            cubes: self.cubes.intersection(&other.cubes).cloned().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    /// Cubes of the given dimension, in the set's (deterministic) order.
    pub fn cubes_of_dim(&self, d: usize) -> Vec<Cube> {
        self.cubes.iter().filter(|c| c.dim() == d).cloned().collect()
    }

    /// Every vertex (0-cube), in deterministic order.
    pub fn vertices(&self) -> Vec<Cube> {
        self.cubes_of_dim(0)
    }
}

/// All cells whose closed realization intersects the closure of `c`,
/// including `c` itself. In 1D this is `{c-1, c, c+1}` clipped to the grid;
/// in 2D the Moore neighborhood.
pub fn neighbors(grid: &GridDomain, c: usize) -> Result<CellSet> {
    let cell = grid.cell_from_id(c)?;
    let mut out = CellSet::empty(grid.total_cells());
    let mut offsets = vec![-1i64; grid.dim];
    loop {
        let mut idx = Vec::with_capacity(grid.dim);
        let mut ok = true;
        for k in 0..grid.dim {
            let i = cell.multi_index[k] as i64 + offsets[k];
            if i < 0 || i >= grid.divisions[k] as i64 {
                ok = false;
                break;
            }
            idx.push(i as usize);
        }
        if ok {
            out.insert(grid.id_of(&Cell { multi_index: idx }));
        }
        // advance the offset vector over {-1,0,1}^dim
        let mut k = 0;
        loop {
            if k == grid.dim {
                return Ok(out);
            }
            offsets[k] += 1;
            if offsets[k] <= 1 {
                break;
            }
            offsets[k] = -1;
            k += 1;
        }
    }
}

/// Union of `neighbors` over a set.
pub fn neighbors_of_set(grid: &GridDomain, set: &CellSet) -> CellSet {
    let mut out = CellSet::empty(grid.total_cells());
    for c in set.iter() {
        out.union_in_place(&neighbors(grid, c).expect("valid id"));
    }
    out
}

/// Combinatorial interior: `{ c ∈ N : neighbors(c) ⊆ N }`.
///
/// The realization of the result lies in the topological interior of the
/// realization of `N`; the whole grid is its own interior since neighbor
/// stencils clip at the box.
pub fn comb_interior(grid: &GridDomain, n: &CellSet) -> CellSet {
    let mut out = CellSet::empty(grid.total_cells());
    for c in n.iter() {
        if neighbors(grid, c).expect("valid id").is_subset(n) {
            out.insert(c);
        }
    }
    out
}

/// Full subcomplex generated by the top cells of `a`: the cells and all
/// their faces. Its realization is the closure of the realization of `a`.
pub fn closure_complex(grid: &GridDomain, a: &CellSet) -> CubicalComplex {
    let mut cubes = BTreeSet::new();
    let mut stack = Vec::new();
    for id in a.iter() {
        let cell = grid.cell_from_id(id).expect("valid id");
        stack.push(Cube::top(&cell));
    }
    while let Some(cube) = stack.pop() {
        if cubes.insert(cube.clone()) {
            stack.extend(cube.primary_faces());
        }
    }
    CubicalComplex { cubes }
}
