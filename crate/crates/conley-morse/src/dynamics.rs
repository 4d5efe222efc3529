//! Solutions, reachability, invariant parts, isolating neighborhoods and
//! trapping regions, computed as graph algorithms on the transition
//! digraph of a combinatorial multivalued map.

use crate::error::{Error, Result};
use crate::grid::{neighbors_of_set, CellSet};
use crate::mvmap::{image, CombMap};

/// A bi-infinite eventually-periodic solution: a backward cycle, a finite
/// bridge, and a forward cycle. In a finite digraph every bi-infinite
/// solution may be chosen of this shape, and the limit sets depend only on
/// the cycles.
#[derive(Debug, Clone)]
pub struct Solution {
    pub backward_cycle: Vec<usize>,
    pub bridge: Vec<usize>,
    pub forward_cycle: Vec<usize>,
}

impl Solution {
    /// Checks that consecutive cells are map transitions and both cycles
    /// close up.
    pub fn validate(&self, f: &CombMap) -> Result<()> {
        let step = |a: usize, b: usize| -> Result<()> {
            if f.targets(a).contains(b) {
                Ok(())
            } else {
                Err(Error::MalformedSolution(format!("{b} not in targets({a})")))
            }
        };
        if self.backward_cycle.is_empty() || self.forward_cycle.is_empty() {
            return Err(Error::MalformedSolution("cycles must be nonempty".into()));
        }
        for cyc in [&self.backward_cycle, &self.forward_cycle] {
            for w in cyc.windows(2) {
                step(w[0], w[1])?;
            }
            step(*cyc.last().unwrap(), cyc[0])?;
        }
        let chain: Vec<usize> = std::iter::once(self.backward_cycle[0])
            .chain(self.bridge.iter().copied())
            .chain(std::iter::once(self.forward_cycle[0]))
            .collect();
        for w in chain.windows(2) {
            step(w[0], w[1])?;
        }
        Ok(())
    }

    pub fn cell_ids(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .backward_cycle
            .iter()
            .chain(&self.bridge)
            .chain(&self.forward_cycle)
            .copied()
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Alpha and omega limit sets of an eventually-periodic solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSets {
    pub alpha: CellSet,
    pub omega: CellSet,
}

/// Limit sets of a validated solution: for the eventually-periodic
/// representation the limit intersections are exactly the two cycles.
pub fn limit_sets(f: &CombMap, sigma: &Solution) -> Result<LimitSets> {
    sigma.validate(f)?;
    let n = f.grid().total_cells();
    Ok(LimitSets {
        alpha: CellSet::from_ids(n, sigma.backward_cycle.iter().copied()),
        omega: CellSet::from_ids(n, sigma.forward_cycle.iter().copied()),
    })
}

/// Cells reachable from `x` by a solution of length exactly `n` staying in
/// `N`.
pub fn reach_forward_n(f: &CombMap, n_set: &CellSet, x: usize, n: usize) -> Result<CellSet> {
    if !n_set.contains(x) {
        return Err(Error::NotInNeighborhood(x));
    }
    let total = f.grid().total_cells();
    let mut cur = CellSet::from_ids(total, [x]);
    for _ in 0..n {
        cur = image(f, &cur).intersection(n_set);
    }
    Ok(cur)
}

/// All cells reachable from `x` within `N` in any number of steps
/// (including zero).
pub fn reach_forward(f: &CombMap, n_set: &CellSet, x: usize) -> Result<CellSet> {
    if !n_set.contains(x) {
        return Err(Error::NotInNeighborhood(x));
    }
    Ok(forward_closure(f, n_set, &CellSet::from_ids(f.grid().total_cells(), [x])))
}

/// All cells that reach `x` within `N` (any number of steps, including
/// zero).
pub fn reach_backward(f: &CombMap, n_set: &CellSet, x: usize) -> Result<CellSet> {
    if !n_set.contains(x) {
        return Err(Error::NotInNeighborhood(x));
    }
    let mut acc = CellSet::from_ids(f.grid().total_cells(), [x]);
    loop {
        let mut grew = false;
        for c in n_set.iter() {
            if !acc.contains(c) && !f.targets(c).intersection(&acc).is_empty() {
                acc.insert(c);
                grew = true;
            }
        }
        if !grew {
            return Ok(acc);
        }
    }
}

/// Forward-reachable closure of `seed` within `N` (seed included).
pub fn forward_closure(f: &CombMap, n_set: &CellSet, seed: &CellSet) -> CellSet {
    let mut acc = seed.intersection(n_set);
    loop {
        let next = image(f, &acc).intersection(n_set);
        if next.is_subset(&acc) {
            return acc;
        }
        acc.union_in_place(&next);
    }
}

/// Strongly connected components of the digraph restricted to `n_set`,
/// via iterative Tarjan. Components are reported with ascending minimal
/// cell id, each sorted.
pub fn strongly_connected_components(f: &CombMap, n_set: &CellSet) -> Vec<Vec<usize>> {
    let n = f.grid().total_cells();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    // explicit DFS stack of (vertex, successors, iterator position)
    let succ = |v: usize| -> Vec<usize> { f.targets(v).intersection(n_set).ids() };
    for root in n_set.iter() {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while !call.is_empty() {
            let frame = call.last_mut().expect("nonempty");
            let v_id = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v_id] = low[v_id].min(index[w]);
                }
            } else {
                if low[v_id] == index[v_id] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v_id {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    let p = *parent;
                    low[p] = low[p].min(low[v_id]);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// True if the component (as produced by
/// [`strongly_connected_components`]) contains a cycle of the restricted
/// digraph: more than one cell, or a self-loop.
pub fn component_is_recurrent(f: &CombMap, comp: &[usize]) -> bool {
    comp.len() > 1 || f.targets(comp[0]).contains(comp[0])
}

/// Cells of `N` admitting a forward-infinite solution in `N`: the cells
/// that can reach a cycle of the restricted digraph.
pub fn inv_plus(f: &CombMap, n_set: &CellSet) -> CellSet {
    let n = f.grid().total_cells();
    let mut cyclic = CellSet::empty(n);
    for comp in strongly_connected_components(f, n_set) {
        if component_is_recurrent(f, &comp) {
            for c in comp {
                cyclic.insert(c);
            }
        }
    }
    // backward reachability from the cyclic part, within N
    let mut acc = cyclic;
    loop {
        let mut grew = false;
        for c in n_set.iter() {
            if !acc.contains(c) && !f.targets(c).intersection(n_set).intersection(&acc).is_empty()
            {
                acc.insert(c);
                grew = true;
            }
        }
        if !grew {
            return acc;
        }
    }
}

/// Cells of `N` admitting a backward-infinite solution in `N`.
pub fn inv_minus(f: &CombMap, n_set: &CellSet) -> CellSet {
    let n = f.grid().total_cells();
    let mut cyclic = CellSet::empty(n);
    for comp in strongly_connected_components(f, n_set) {
        if component_is_recurrent(f, &comp) {
            for c in comp {
                cyclic.insert(c);
            }
        }
    }
    forward_closure(f, n_set, &cyclic)
}

/// Invariant part `Inv(N, F)`: cells lying on a bi-infinite solution in
/// `N`.
pub fn inv_part(f: &CombMap, n_set: &CellSet) -> CellSet {
    inv_plus(f, n_set).intersection(&inv_minus(f, n_set))
}

/// Isolating neighborhood check with a full one-ring margin: the invariant
/// part together with all its neighbors must stay inside `N`. This
/// guarantees that the realization of the invariant part lies in the
/// topological interior of the realization of `N`.
pub fn is_isolating(f: &CombMap, n_set: &CellSet) -> bool {
    let inv = inv_part(f, n_set);
    if inv.is_empty() {
        return true;
    }
    neighbors_of_set(f.grid(), &inv).is_subset(n_set)
}

/// Trapping region: isolating and forward-invariant.
pub fn is_trapping(f: &CombMap, t_set: &CellSet) -> bool {
    is_isolating(f, t_set) && image(f, t_set).is_subset(t_set)
}

/// Smallest `B` with `A ⊆ B ⊆ N` and `F(B) ∩ N ⊆ B`, iterated to the
/// fixed point in ascending cell-id passes.
pub fn positive_hull(f: &CombMap, n_set: &CellSet, a: &CellSet) -> Result<CellSet> {
    if !a.is_subset(n_set) {
        return Err(Error::Precondition("positive_hull: A ⊄ N".into()));
    }
    let mut acc = a.clone();
    loop {
        let add = image(f, &acc).intersection(n_set);
        if add.is_subset(&acc) {
            return Ok(acc);
        }
        acc.union_in_place(&add);
    }
}

/// Finds a trapping region certifying that the invariant set `A` is an
/// attractor: a forward-closed, isolating superset of a ring around `A`
/// whose invariant part is exactly `A`.
///
/// A two-ring seed is tried first (it leaves enough margin for the index
/// pair machinery downstream), then the one-ring seed.
pub fn find_trapping_region(f: &CombMap, a: &CellSet) -> Result<CellSet> {
    let all = CellSet::full(f.grid().total_cells());
    find_trapping_region_in(f, &all, a)
}

/// Trapping region relative to the sub-space `N`: forward-closed within
/// `N`, isolating, with invariant part exactly `A`. With `N` the whole
/// grid this is the absolute notion; for sub-analyses it is the relative
/// one the attractor filtration of `Inv(N)` needs.
pub fn find_trapping_region_in(f: &CombMap, n_set: &CellSet, a: &CellSet) -> Result<CellSet> {
    if &inv_part(f, a) != a {
        return Err(Error::Precondition(
            "find_trapping_region: A is not invariant".into(),
        ));
    }
    let grid = f.grid();
    if a.is_empty() {
        return Ok(CellSet::empty(grid.total_cells()));
    }
    if !a.is_subset(n_set) {
        return Err(Error::Precondition("find_trapping_region: A ⊄ N".into()));
    }
    let ring1 = neighbors_of_set(grid, a).intersection(n_set);
    let ring2 = neighbors_of_set(grid, &ring1).intersection(n_set);
    let mut last_failure = String::new();
    for seed in [&ring2, &ring1] {
        let t = forward_closure(f, n_set, seed);
        if !image(f, &t).intersection(n_set).is_subset(&t) {
            last_failure = "image(T) ∩ N ⊄ T".into();
            continue;
        }
        if &inv_part(f, &t) != a {
            last_failure = "Inv(T) ≠ A".into();
            continue;
        }
        if !is_isolating(f, &t) {
            last_failure = "T not isolating".into();
            continue;
        }
        return Ok(t);
    }
    Err(Error::NotAttractor(format!("{:?}", a.ids()), last_failure))
}
