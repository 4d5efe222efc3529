//! Exact field-coefficient cubical homology of pairs, induced chain maps,
//! index maps, Leray reduction, and Poincaré series.
//!
//! Everything here runs over the rationals: ranks fully determine the
//! Poincaré series, and the Leray reduction of an endomorphism over a
//! field is the quotient by its generalized kernel. Cohomological ranks
//! agree with the homological ranks computed here on the compact
//! polyhedral pairs the rest of the crate builds (the index map
//! corresponds to the transpose, and eventual rank is invariant under
//! transposition), so reports state index ranks without further ado.
//! Torsion is out of scope.

pub mod chain;
pub mod complex;
pub mod matrix;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::CellSet;
use crate::indexpair::{build_weak_index_pair, t_pair_f, FPair};
use crate::mvmap::{is_block, CombMap};

pub use chain::{induced_chain_map, quotient_chain_map, quotient_inclusion, InducedChainMap, Selector};
pub use complex::{DegreeBasis, RelativeComplex};
pub use matrix::{rat, FieldMatrix};

/// Relative homology dimensions of the pair `(cl p1, cl p2)` over the
/// rationals, together with the quotient complex they came from.
pub fn relative_homology(
    grid: &crate::grid::GridDomain,
    p1: &CellSet,
    p2: &CellSet,
) -> Result<(RelativeComplex, Vec<usize>)> {
    if !p2.is_subset(p1) {
        return Err(Error::Precondition("relative_homology: p2 ⊄ p1".into()));
    }
    let rc = RelativeComplex::new(grid, p1, p2);
    let dims = rc.homology_dims();
    Ok((rc, dims))
}

/// Index map data: per-degree homology dimensions of the pair and the
/// matrices of the induced endomorphism.
#[derive(Debug, Clone)]
pub struct IndexMapData {
    pub dims: Vec<usize>,
    pub matrices: Vec<FieldMatrix>,
}

/// Computes the index map of an F-pair: the chain selector composed with
/// the inverse of the inclusion-induced isomorphism onto the T-pair.
pub fn index_map(f: &CombMap, pair: &FPair) -> Result<IndexMapData> {
    index_map_with(f, pair, Selector::Lex)
}

/// Index map with an explicit selector policy; the homology output is
/// selector-independent (property-tested).
pub fn index_map_with(f: &CombMap, pair: &FPair, selector: Selector) -> Result<IndexMapData> {
    let grid = f.grid();
    // acyclic-values precondition on the domain part of the pair
    let mut violations = Vec::new();
    for c in pair.r1.iter() {
        if !f.targets(c).is_empty() && !is_block(grid, f.targets(c)) {
            violations.push(c);
        }
    }
    if !violations.is_empty() {
        return Err(Error::ValuesNotAcyclic(violations));
    }

    let (t1, t2) = t_pair_f(grid, pair);
    let domain_quotient = RelativeComplex::new(grid, &pair.r1, &pair.r2);
    let target_quotient = RelativeComplex::new(grid, &t1, &t2);

    let (phi, incl) = if pair.r1.is_empty() {
        let zero: Vec<FieldMatrix> = (0..=grid.dim)
            .map(|q| FieldMatrix::zero(target_quotient.dim_chains(q), 0))
            .collect();
        (zero.clone(), zero)
    } else {
        let icm = induced_chain_map(f, pair, selector)?;
        (
            quotient_chain_map(&icm, &domain_quotient, &target_quotient),
            quotient_inclusion(&domain_quotient, &target_quotient),
        )
    };

    let h_domain = domain_quotient.homology_basis();
    let h_target = target_quotient.homology_basis();
    let mut matrices = Vec::with_capacity(grid.dim + 1);
    let mut dims = Vec::with_capacity(grid.dim + 1);
    for q in 0..=grid.dim {
        let hd = &h_domain[q];
        let ht = &h_target[q];
        let phi_star = induced_on_homology(&phi[q], hd, ht, q)?;
        let incl_star = induced_on_homology(&incl[q], hd, ht, q)?;
        if incl_star.rows != incl_star.cols || !incl_star.is_invertible() {
            return Err(Error::ExcisionFailure { degree: q });
        }
        let inv = incl_star.inverse().expect("checked invertible");
        matrices.push(inv.mul(&phi_star));
        dims.push(hd.dim());
    }
    Ok(IndexMapData { dims, matrices })
}

/// Matrix of the map induced on homology by a chain map between quotient
/// complexes, in the given bases.
fn induced_on_homology(
    chain_matrix: &FieldMatrix,
    from: &DegreeBasis,
    to: &DegreeBasis,
    degree: usize,
) -> Result<FieldMatrix> {
    let mut cols = Vec::with_capacity(from.dim());
    for rep in &from.reps {
        let image = chain_matrix.mul_vec(rep);
        let coords = to.express(&image).ok_or(Error::ExcisionFailure { degree })?;
        cols.push(coords);
    }
    Ok(FieldMatrix::from_columns(to.dim(), &cols))
}

/// Leray reduction of a square matrix over the rationals: quotient by the
/// generalized kernel. Returns the dimension of the eventual image
/// (`rank(m^n)`) and the induced automorphism on it.
pub fn leray_reduce(m: &FieldMatrix) -> (usize, FieldMatrix) {
    assert_eq!(m.rows, m.cols, "leray_reduce needs a square matrix");
    let n = m.rows;
    if n == 0 {
        return (0, FieldMatrix::zero(0, 0));
    }
    let eventual = m.pow(n);
    let pivots = eventual.pivot_columns();
    let rank = pivots.len();
    if rank == 0 {
        return (0, FieldMatrix::zero(0, 0));
    }
    let basis = FieldMatrix::from_columns(
        n,
        &pivots.iter().map(|&j| eventual.column(j)).collect::<Vec<_>>(),
    );
    let mapped = m.mul(&basis);
    let auto = basis
        .solve_matrix(&mapped)
        .expect("m maps its eventual image into itself");
    debug_assert!(auto.is_invertible());
    (rank, auto)
}

/// The cohomological Conley index of `Inv(N, F)`: Leray-reduced
/// dimensions per degree (its Betti numbers) and the automorphisms.
#[derive(Debug, Clone)]
pub struct ConleyIndex {
    pub dims: Vec<usize>,
    pub autos: Vec<FieldMatrix>,
}

impl ConleyIndex {
    pub fn poincare(&self) -> PoincareSeries {
        poincare_series(&self.dims)
    }
}

/// Full pipeline for one neighborhood: weak index pair, index map, Leray
/// reduction per degree.
pub fn conley_index(f: &CombMap, n_set: &CellSet) -> Result<ConleyIndex> {
    let pair = build_weak_index_pair(f, n_set)?;
    conley_index_of_pair(f, &pair.as_fpair())
}

/// Leray reduction of the index map of an already certified pair.
pub fn conley_index_of_pair(f: &CombMap, pair: &FPair) -> Result<ConleyIndex> {
    let imap = index_map(f, pair)?;
    let mut dims = Vec::with_capacity(imap.matrices.len());
    let mut autos = Vec::with_capacity(imap.matrices.len());
    for m in &imap.matrices {
        let (d, a) = leray_reduce(m);
        dims.push(d);
        autos.push(a);
    }
    Ok(ConleyIndex { dims, autos })
}

/// Polynomial in `t` with nonnegative integer coefficients; the carrier
/// of `p(t, ·)` and `Q(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    coeffs: Vec<usize>,
}

impl PoincareSeries {
    pub fn new(mut coeffs: Vec<usize>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincareSeries { coeffs }
    }

    pub fn zero() -> Self {
        PoincareSeries { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn coeff(&self, q: usize) -> usize {
        self.coeffs.get(q).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &PoincareSeries) -> PoincareSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        PoincareSeries::new((0..len).map(|q| self.coeff(q) + other.coeff(q)).collect())
    }

    /// Signed coefficient vector, for intermediate arithmetic.
    pub fn signed(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| c as i64).collect()
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (q, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match (q, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (q, 1) => format!("t^{q}"),
                (q, c) => format!("{c}t^{q}"),
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Poincaré series with the per-degree dimensions as coefficients.
pub fn poincare_series(dims: &[usize]) -> PoincareSeries {
    PoincareSeries::new(dims.to_vec())
}
