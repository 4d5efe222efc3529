//! Chain selectors of acyclic-valued combinatorial maps.
//!
//! A map with contiguous-block values induces, on each cube of the domain
//! complex, a carrier: the intersection of the closed value complexes of
//! the top cells containing the cube. Carriers shrink along faces and are
//! intersections of closed boxes, hence acyclic when nonempty, so a chain
//! map can be built degree by degree: vertices pick a vertex of their
//! carrier, higher cubes solve the boundary equation inside theirs. The
//! homology class of the result does not depend on the choices; both a
//! deterministic and a greedy selector are provided so tests can check
//! exactly that.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{closure_complex, Cube, CubicalComplex};
use crate::indexpair::{t_pair_f, FPair};
use crate::mvmap::CombMap;
use super::complex::RelativeComplex;
use super::matrix::{rat, FieldMatrix};

/// Vertex and pivot policy for the selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    /// Lexicographically smallest carrier vertex, ascending pivot order.
    Lex,
    /// Lexicographically largest carrier vertex, descending pivot order.
    Greedy,
}

/// A chain map from the absolute complex of `cl r1` to the absolute
/// complex of `cl t1`, carrier-contained and pair-respecting.
#[derive(Debug, Clone)]
pub struct InducedChainMap {
    pub abs_domain: RelativeComplex,
    pub abs_target: RelativeComplex,
    /// `phi[q]`: matrix from degree-q domain chains to degree-q target
    /// chains.
    pub phi: Vec<FieldMatrix>,
}

/// Builds and verifies the chain selector for `F` restricted to the pair.
pub fn induced_chain_map(f: &CombMap, pair: &FPair, selector: Selector) -> Result<InducedChainMap> {
    let grid = f.grid();
    let dim = grid.dim;
    let (t1, _) = t_pair_f(grid, pair);
    let empty = crate::grid::CellSet::empty(grid.total_cells());
    let abs_domain = RelativeComplex::new(grid, &pair.r1, &empty);
    let abs_target = RelativeComplex::new(grid, &t1, &empty);

    // per top cell of r1: the closed complex of its value
    let cells: Vec<usize> = pair.r1.ids();
    let mut value_complex: HashMap<usize, CubicalComplex> = HashMap::new();
    for &c in &cells {
        value_complex.insert(c, closure_complex(grid, f.targets(c)));
    }

    // carriers: which top cells contain each cube of cl r1
    let mut carrier_cells: HashMap<Cube, Vec<usize>> = HashMap::new();
    for &c in &cells {
        let single = crate::grid::CellSet::from_ids(grid.total_cells(), [c]);
        for cube in &closure_complex(grid, &single).cubes {
            carrier_cells.entry(cube.clone()).or_default().push(c);
        }
    }

    let carrier_of = |cube: &Cube| -> Result<CubicalComplex> {
        let carriers = carrier_cells
            .get(cube)
            .ok_or_else(|| Error::CarrierError(format!("cube {cube:?} has no carrier cell")))?;
        let mut iter = carriers.iter();
        let first = iter.next().expect("carrier list nonempty");
        let mut acc = value_complex[first].clone();
        for c in iter {
            acc = acc.intersection(&value_complex[c]);
        }
        if acc.is_empty() {
            return Err(Error::CarrierError(format!(
                "empty carrier over cells {carriers:?}; the map is not acyclic-valued across \
                 their shared face"
            )));
        }
        Ok(acc)
    };

    let mut phi: Vec<FieldMatrix> = Vec::with_capacity(dim + 1);

    // degree 0: one vertex of the carrier per domain vertex
    let verts = &abs_domain.basis[0];
    let mut m0 = FieldMatrix::zero(abs_target.dim_chains(0), verts.len());
    for (j, v) in verts.iter().enumerate() {
        let carrier = carrier_of(v)?;
        let carrier_verts = carrier.vertices();
        let pick = match selector {
            Selector::Lex => carrier_verts.first(),
            Selector::Greedy => carrier_verts.last(),
        }
        .ok_or_else(|| Error::CarrierError("carrier has no vertex".into()))?;
        let i = abs_target
            .index_of(0, pick)
            .ok_or_else(|| Error::CarrierError("carrier vertex outside target complex".into()))?;
        m0.set(i, j, rat(1));
    }
    phi.push(m0);

    // higher degrees: fill the boundary equation inside the carrier
    for q in 1..=dim {
        let cubes = &abs_domain.basis[q];
        let mut mq = FieldMatrix::zero(abs_target.dim_chains(q), cubes.len());
        for (j, cube) in cubes.iter().enumerate() {
            let carrier = carrier_of(cube)?;
            // rhs = phi(boundary of the cube), over the target (q-1)-basis
            let mut rhs = vec![BigRational::zero(); abs_target.dim_chains(q - 1)];
            for (face, coeff) in cube.boundary() {
                let col = abs_domain
                    .index_of(q - 1, &face)
                    .expect("face of a domain cube is in the domain complex");
                for (i, x) in rhs.iter_mut().enumerate() {
                    let v = phi[q - 1].get(i, col);
                    if !v.is_zero() {
                        *x = &*x + &(rat(coeff) * v);
                    }
                }
            }
            // columns: carrier q-cubes in the selector's pivot order
            let mut carrier_q = carrier.cubes_of_dim(q);
            if selector == Selector::Greedy {
                carrier_q.reverse();
            }
            let carrier_rows = carrier.cubes_of_dim(q - 1);
            let row_index: HashMap<&Cube, usize> =
                carrier_rows.iter().enumerate().map(|(i, c)| (c, i)).collect();
            // rhs must live on the carrier rows
            let mut local_rhs = vec![BigRational::zero(); carrier_rows.len()];
            for (i, x) in rhs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let target_cube = &abs_target.basis[q - 1][i];
                match row_index.get(target_cube) {
                    Some(&r) => local_rhs[r] = x.clone(),
                    None => {
                        return Err(Error::CarrierError(format!(
                            "boundary image of {cube:?} leaves its carrier"
                        )))
                    }
                }
            }
            let mut local = FieldMatrix::zero(carrier_rows.len(), carrier_q.len());
            for (cj, cq) in carrier_q.iter().enumerate() {
                for (face, coeff) in cq.boundary() {
                    let ri = row_index[&face];
                    local.set(ri, cj, rat(coeff));
                }
            }
            let solution = local.solve(&local_rhs).ok_or_else(|| {
                Error::CarrierError(format!("no chain filling for {cube:?} inside its carrier"))
            })?;
            for (cj, cq) in carrier_q.iter().enumerate() {
                if !solution[cj].is_zero() {
                    let i = abs_target
                        .index_of(q, cq)
                        .ok_or_else(|| Error::CarrierError("carrier cube outside target".into()))?;
                    mq.set(i, j, solution[cj].clone());
                }
            }
        }
        phi.push(mq);
    }

    let icm = InducedChainMap { abs_domain, abs_target, phi };
    verify_chain_map(f, pair, &icm, &carrier_cells, &value_complex)?;
    Ok(icm)
}

/// Verifies the three contracts of the selector: the chain map equation,
/// carrier containment against the union of the carrier values, and
/// respect for the pair (`cl r2` chains land in `cl t2`).
fn verify_chain_map(
    f: &CombMap,
    pair: &FPair,
    icm: &InducedChainMap,
    carrier_cells: &HashMap<Cube, Vec<usize>>,
    value_complex: &HashMap<usize, CubicalComplex>,
) -> Result<()> {
    let grid = f.grid();
    let dim = grid.dim;
    for q in 1..=dim {
        let lhs = icm.abs_target.boundary[q].mul(&icm.phi[q]);
        let rhs = icm.phi[q - 1].mul(&icm.abs_domain.boundary[q]);
        if lhs != rhs {
            return Err(Error::CarrierError(format!(
                "chain map equation fails in degree {q}"
            )));
        }
    }
    let (_, t2) = t_pair_f(grid, pair);
    let cl_t2 = closure_complex(grid, &t2);
    let cl_r2 = closure_complex(grid, &pair.r2);
    for q in 0..=dim {
        for (j, cube) in icm.abs_domain.basis[q].iter().enumerate() {
            let carriers = &carrier_cells[cube];
            let mut union = CubicalComplex::empty();
            for c in carriers {
                union = union.union(&value_complex[c]);
            }
            let in_r2 = cl_r2.contains(cube);
            for i in 0..icm.abs_target.dim_chains(q) {
                if icm.phi[q].get(i, j).is_zero() {
                    continue;
                }
                let target_cube = &icm.abs_target.basis[q][i];
                if !union.contains(target_cube) {
                    return Err(Error::CarrierError(format!(
                        "image of {cube:?} leaves the closure of its carrier values"
                    )));
                }
                if in_r2 && !cl_t2.contains(target_cube) {
                    return Err(Error::CarrierError(format!(
                        "image of the pair cube {cube:?} leaves the target pair"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Projects the absolute chain map to the quotient complexes of the two
/// pairs. Rows outside the target quotient (cubes of `cl t2`) are
/// dropped, as are columns of cubes in `cl r2`.
pub fn quotient_chain_map(
    icm: &InducedChainMap,
    domain_quotient: &RelativeComplex,
    target_quotient: &RelativeComplex,
) -> Vec<FieldMatrix> {
    let dim = icm.abs_domain.top_dim;
    let mut out = Vec::with_capacity(dim + 1);
    for q in 0..=dim {
        let mut m = FieldMatrix::zero(
            target_quotient.dim_chains(q),
            domain_quotient.dim_chains(q),
        );
        for (j, cube) in domain_quotient.basis[q].iter().enumerate() {
            let abs_col = icm
                .abs_domain
                .index_of(q, cube)
                .expect("quotient cube belongs to the absolute complex");
            for (i, target_cube) in target_quotient.basis[q].iter().enumerate() {
                if let Some(abs_row) = icm.abs_target.index_of(q, target_cube) {
                    let v = icm.phi[q].get(abs_row, abs_col);
                    if !v.is_zero() {
                        m.set(i, j, v.clone());
                    }
                }
            }
        }
        out.push(m);
    }
    out
}

/// The inclusion-followed-by-projection chain map between the quotient
/// complexes of `(cl p1, cl p2)` and the T-pair.
pub fn quotient_inclusion(
    domain_quotient: &RelativeComplex,
    target_quotient: &RelativeComplex,
) -> Vec<FieldMatrix> {
    let dim = domain_quotient.top_dim;
    let mut out = Vec::with_capacity(dim + 1);
    for q in 0..=dim {
        let mut m = FieldMatrix::zero(
            target_quotient.dim_chains(q),
            domain_quotient.dim_chains(q),
        );
        for (j, cube) in domain_quotient.basis[q].iter().enumerate() {
            if let Some(i) = target_quotient.index_of(q, cube) {
                m.set(i, j, rat(1));
            }
        }
        out.push(m);
    }
    out
}
