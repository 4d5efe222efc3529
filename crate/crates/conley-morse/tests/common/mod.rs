//! Shared helpers for the integration suites: fixture paths, the seeded
//! random-system corpus, and independent oracles.
//!
//! Not every suite uses every helper.
#![allow(dead_code)]

pub mod snf;

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use conley_morse::grid::{CellSet, GridDomain};
use conley_morse::mvmap::CombMap;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random full-domain block map on a 1D grid, with consecutive value
/// blocks touching in closure the way outer approximations of upper
/// semicontinuous maps do. Block bounds follow a clamped random walk.
pub fn random_block_map(rng: &mut ChaCha8Rng, cells: usize) -> CombMap {
    let n = cells as i64;
    let grid = GridDomain::line(0.0, cells as f64, cells);
    let mut targets: Vec<CellSet> = Vec::with_capacity(cells);
    let mut prev: Option<(i64, i64)> = None;
    for _ in 0..cells {
        let (mut lo, mut hi) = match prev {
            None => {
                let lo = rng.gen_range(0..n);
                (lo, (lo + rng.gen_range(0..3)).min(n - 1))
            }
            Some((plo, phi)) => {
                let mut lo = plo + rng.gen_range(-2..=2);
                let mut hi = phi + rng.gen_range(-2..=2);
                if hi < lo {
                    std::mem::swap(&mut lo, &mut hi);
                }
                // keep closures touching: intersect with [plo-1, phi+1]
                lo = lo.min(phi + 1);
                hi = hi.max(plo - 1);
                (lo, hi)
            }
        };
        lo = lo.clamp(0, n - 1);
        hi = hi.clamp(0, n - 1);
        if hi < lo {
            hi = lo;
        }
        if let Some((plo, phi)) = prev {
            assert!(lo <= phi + 1 && hi >= plo - 1, "blocks must touch");
        }
        prev = Some((lo, hi));
        targets.push(CellSet::from_ids(cells, (lo as usize)..=(hi as usize)));
    }
    CombMap::new(grid, targets).expect("well-formed map")
}

/// Random map on a small grid with arbitrary (possibly empty, possibly
/// scattered) targets; for the invariant-part oracle.
pub fn random_sparse_map(rng: &mut ChaCha8Rng, cells: usize) -> CombMap {
    let grid = GridDomain::line(0.0, cells as f64, cells);
    let mut targets = Vec::with_capacity(cells);
    for _ in 0..cells {
        let mut t = CellSet::empty(cells);
        for y in 0..cells {
            if rng.gen_bool(0.25) {
                t.insert(y);
            }
        }
        targets.push(t);
    }
    CombMap::new(grid, targets).expect("well-formed map")
}

/// Brute-force invariant part: dynamic programming over bounded path
/// lengths (depth `2 |N|`), following the domain-intersection identity
/// rather than cycle reachability.
pub fn inv_part_oracle(f: &CombMap, n_set: &CellSet) -> CellSet {
    let n = f.grid().total_cells();
    let depth = 2 * n_set.len();
    let mut fwd = n_set.clone();
    for _ in 0..depth {
        let mut next = CellSet::empty(n);
        for c in n_set.iter() {
            if !f.targets(c).intersection(&fwd).is_empty() {
                next.insert(c);
            }
        }
        fwd = next;
    }
    let mut bwd = n_set.clone();
    for _ in 0..depth {
        let mut next = CellSet::empty(n);
        for c in n_set.iter() {
            if !f.sources(c).intersection(&bwd).is_empty() {
                next.insert(c);
            }
        }
        bwd = next;
    }
    fwd.intersection(&bwd)
}

/// Random subset of the grid's cells.
pub fn random_subset(rng: &mut ChaCha8Rng, cells: usize, density: f64) -> CellSet {
    let mut out = CellSet::empty(cells);
    for c in 0..cells {
        if rng.gen_bool(density) {
            out.insert(c);
        }
    }
    out
}
