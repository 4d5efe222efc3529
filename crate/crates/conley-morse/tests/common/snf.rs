//! Independent relative-homology oracle: integer chain complexes reduced
//! by Smith normal form. Deliberately shares no code with the library's
//! rational elimination path — cubes, boundaries, and ranks are all
//! rebuilt from scratch here.

use std::collections::{BTreeMap, BTreeSet};

use conley_morse::grid::{CellSet, GridDomain};

/// An elementary cube as (anchor point, set of extended axes).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct OCube {
    anchor: Vec<i64>,
    extended: Vec<bool>,
}

fn cube_dim(c: &OCube) -> usize {
    c.extended.iter().filter(|&&e| e).count()
}

/// All faces (of every dimension) of the closed cell block of `cells`.
/// Per axis a face either keeps the unit extent or pins to one of the two
/// endpoints, giving `3^dim` sub-cubes per top cell.
fn closed_cubes(grid: &GridDomain, cells: &CellSet) -> BTreeSet<OCube> {
    let mut out = BTreeSet::new();
    let d = grid.dim;
    let combos = 3usize.pow(d as u32);
    for id in cells.iter() {
        let cell = grid.cell_from_id(id).unwrap();
        let base: Vec<i64> = cell.multi_index.iter().map(|&i| i as i64).collect();
        for combo in 0..combos {
            let mut rem = combo;
            let mut anchor = base.clone();
            let mut extended = vec![false; d];
            for k in 0..d {
                match rem % 3 {
                    0 => extended[k] = true,
                    1 => {}
                    _ => anchor[k] += 1,
                }
                rem /= 3;
            }
            out.insert(OCube { anchor, extended });
        }
    }
    out
}

/// Signed boundary of an elementary cube, standard convention:
/// `∂(I × Q) = ∂I × Q + (-1)^{dim I} I × ∂Q`.
fn boundary(c: &OCube) -> Vec<(OCube, i64)> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    for k in 0..c.anchor.len() {
        if c.extended[k] {
            let mut upper = c.clone();
            upper.extended[k] = false;
            upper.anchor[k] += 1;
            let mut lower = c.clone();
            lower.extended[k] = false;
            out.push((upper, sign));
            out.push((lower, -sign));
            sign = -sign;
        }
    }
    out
}

/// Smith-normal-form rank of an integer matrix (number of nonzero
/// diagonal entries after full diagonalization).
fn snf_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        // find the entry of smallest absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in r..rows {
            for j in c..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(c, pj);
        }
        // clear the row and column with euclidean steps
        loop {
            let mut clean = true;
            for i in (r + 1)..rows {
                if m[i][c] != 0 {
                    let q = m[i][c] / m[r][c];
                    for j in c..cols {
                        m[i][j] -= q * m[r][j];
                    }
                    if m[i][c] != 0 {
                        m.swap(r, i);
                        clean = false;
                    }
                }
            }
            for j in (c + 1)..cols {
                if m[r][j] != 0 {
                    let q = m[r][j] / m[r][c];
                    for i in r..rows {
                        m[i][j] -= q * m[i][c];
                    }
                    if m[r][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(c, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        rank += 1;
        r += 1;
        c += 1;
    }
    rank
}

/// Free ranks of the relative homology of `(cl p1, cl p2)` per degree,
/// computed with integer Smith normal form.
pub fn relative_betti_oracle(grid: &GridDomain, p1: &CellSet, p2: &CellSet) -> Vec<usize> {
    let cl1 = closed_cubes(grid, p1);
    let cl2 = closed_cubes(grid, p2);
    let top = grid.dim;
    let mut basis: Vec<Vec<OCube>> = vec![Vec::new(); top + 1];
    for cube in cl1.difference(&cl2) {
        basis[cube_dim(cube)].push(cube.clone());
    }
    let index: Vec<BTreeMap<&OCube, usize>> = basis
        .iter()
        .map(|cubes| cubes.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut ranks = vec![0usize; top + 2];
    let mut check: Vec<Vec<Vec<i128>>> = Vec::new();
    for q in 1..=top {
        let mut m = vec![vec![0i128; basis[q].len()]; basis[q - 1].len()];
        for (j, cube) in basis[q].iter().enumerate() {
            for (face, coeff) in boundary(cube) {
                if let Some(&i) = index[q - 1].get(&face) {
                    m[i][j] += coeff as i128;
                }
            }
        }
        check.push(m.clone());
        ranks[q] = snf_rank(m);
    }
    // sanity: the composite of consecutive boundary matrices vanishes
    for w in check.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !a.is_empty() && !b.is_empty() {
            for j in 0..b[0].len() {
                for i in 0..a.len() {
                    let mut acc: i128 = 0;
                    for k in 0..b.len() {
                        acc += a[i][k] * b[k][j];
                    }
                    assert_eq!(acc, 0, "oracle boundary of boundary nonzero");
                }
            }
        }
    }
    (0..=top)
        .map(|q| basis[q].len() - ranks[q] - ranks[q + 1])
        .collect()
}
