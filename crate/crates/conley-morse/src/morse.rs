//! Morse decompositions, repeller–attractor pairs, attractor sequences and
//! dual repellers, computed through condensation of the transition digraph.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grid::{comb_interior, neighbors_of_set, CellSet};
use crate::mvmap::{image, CombMap};
use crate::dynamics::{
    component_is_recurrent, find_trapping_region_in, forward_closure, inv_part, is_isolating,
    strongly_connected_components,
};

/// A Morse decomposition of an isolated invariant set.
///
/// `order` is the strict partial order on indices where `order[i]`
/// contains `j` iff dynamics flows from set `i` to set `j` (`j` below
/// `i`); `linear_order` lists set indices from most attracting to most
/// repelling, so index 0 plays the role of the first Morse set.
#[derive(Debug, Clone)]
pub struct MorseDecomposition {
    /// The isolating neighborhood the decomposition was computed in.
    pub neighborhood: CellSet,
    /// The isolated invariant set being decomposed.
    pub ambient: CellSet,
    /// Pairwise disjoint isolated invariant subsets, each an invariant
    /// part of a recurrent component of the condensation.
    pub sets: Vec<CellSet>,
    /// `order[i]` = indices reachable from set `i` (strictly below it).
    pub order: Vec<BTreeSet<usize>>,
    /// Admissible linear extension, attractor-most first.
    pub linear_order: Vec<usize>,
}

impl MorseDecomposition {
    /// Morse sets in linear order (first = most attracting).
    pub fn sets_in_linear_order(&self) -> Vec<&CellSet> {
        self.linear_order.iter().map(|&i| &self.sets[i]).collect()
    }

    /// True iff dynamics can flow from `i` to `j` through connecting
    /// solutions (the extremal order relation `j <= i`).
    pub fn flows_to(&self, i: usize, j: usize) -> bool {
        self.order[i].contains(&j)
    }

    /// Merge the listed groups of Morse sets into single Morse sets.
    ///
    /// Merging is admissible when the members of each group are pairwise
    /// unordered (no connecting solutions between them); the family then
    /// still satisfies every Morse decomposition condition. Groups are
    /// given as set indices of `self.sets`.
    pub fn coarsen(&self, groups: &[Vec<usize>]) -> Result<MorseDecomposition> {
        let n_old = self.sets.len();
        let mut group_of = (0..n_old).map(Some).collect::<Vec<_>>();
        // validate groups and mark members
        let mut merged: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n_old];
        for g in groups {
            if g.len() < 2 {
                continue;
            }
            for &i in g {
                if i >= n_old {
                    return Err(Error::CoarseningInvalid(format!("no Morse set {i}")));
                }
                if seen[i] {
                    return Err(Error::CoarseningInvalid(format!(
                        "Morse set {i} listed in two groups"
                    )));
                }
                seen[i] = true;
            }
            for (a, b) in g.iter().flat_map(|&a| g.iter().map(move |&b| (a, b))) {
                if a != b && (self.flows_to(a, b) || self.flows_to(b, a)) {
                    return Err(Error::CoarseningInvalid(format!(
                        "Morse sets {a} and {b} are connected; merging them is not admissible"
                    )));
                }
            }
            merged.push(g.clone());
        }
        for g in &merged {
            let gid = g[0];
            for &i in g {
                group_of[i] = Some(gid);
            }
        }
        // build new sets: representatives keep their slot, absorbed slots drop
        let mut repr_to_new = std::collections::BTreeMap::new();
        let mut new_sets: Vec<CellSet> = Vec::new();
        for i in 0..n_old {
            let repr = group_of[i].unwrap();
            if repr == i {
                repr_to_new.insert(i, new_sets.len());
                new_sets.push(self.sets[i].clone());
            }
        }
        for g in &merged {
            let slot = repr_to_new[&g[0]];
            for &i in g.iter().skip(1) {
                new_sets[slot] = new_sets[slot].union(&self.sets[i]);
            }
        }
        let to_new = |i: usize| repr_to_new[&group_of[i].unwrap()];
        let m = new_sets.len();
        let mut order = vec![BTreeSet::new(); m];
        for i in 0..n_old {
            for &j in &self.order[i] {
                if to_new(i) != to_new(j) {
                    order[to_new(i)].insert(to_new(j));
                }
            }
        }
        let linear_order = linearize(&new_sets, &order);
        Ok(MorseDecomposition {
            neighborhood: self.neighborhood.clone(),
            ambient: self.ambient.clone(),
            sets: new_sets,
            order,
            linear_order,
        })
    }
}

/// Deterministic admissible linear extension: repeatedly emit the set all
/// of whose below-neighbors are already emitted, breaking ties by the
/// smallest contained cell id. Attractor-most sets come first.
fn linearize(sets: &[CellSet], order: &[BTreeSet<usize>]) -> Vec<usize> {
    let m = sets.len();
    let mut emitted = vec![false; m];
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let mut candidate: Option<usize> = None;
        for i in 0..m {
            if emitted[i] {
                continue;
            }
            if order[i].iter().all(|&j| emitted[j]) {
                let better = match candidate {
                    None => true,
                    Some(c) => sets[i].min_id() < sets[c].min_id(),
                };
                if better {
                    candidate = Some(i);
                }
            }
        }
        let i = candidate.expect("order is acyclic");
        emitted[i] = true;
        out.push(i);
    }
    out
}

/// Computes the Morse decomposition of `Inv(N, F)` from the recurrent
/// strongly connected components of the transition digraph restricted to
/// the invariant part. The output is verified: sets are pairwise disjoint
/// invariant parts of themselves, and each admits an isolating
/// neighborhood (its one-ring).
pub fn morse_decomposition(f: &CombMap, n_set: &CellSet) -> Result<MorseDecomposition> {
    if !is_isolating(f, n_set) {
        return Err(Error::NotIsolating);
    }
    let grid = f.grid();
    let ambient = inv_part(f, n_set);
    let comps = strongly_connected_components(f, &ambient);
    let mut sets: Vec<CellSet> = Vec::new();
    let mut comp_slot = std::collections::BTreeMap::new();
    for comp in &comps {
        if component_is_recurrent(f, comp) {
            let set = CellSet::from_ids(grid.total_cells(), comp.iter().copied());
            // the invariant part of a recurrent component is the component
            debug_assert_eq!(inv_part(f, &set), set);
            comp_slot.insert(comp[0], sets.len());
            sets.push(set);
        }
    }

    // reachability between recurrent components within the invariant part,
    // oriented source -> target (alpha above, omega below)
    let m = sets.len();
    let mut order = vec![BTreeSet::new(); m];
    for i in 0..m {
        let reach = forward_closure(f, &ambient, &sets[i]);
        for j in 0..m {
            if i != j && sets[j].is_subset(&reach) {
                order[i].insert(j);
            }
        }
    }

    // verification: disjointness, invariance and per-set isolation
    for i in 0..m {
        for j in (i + 1)..m {
            debug_assert!(sets[i].is_disjoint(&sets[j]));
        }
        if inv_part(f, &sets[i]) != sets[i] {
            return Err(Error::MorseSetNotIsolated { index: i });
        }
        let ring = neighbors_of_set(grid, &sets[i]);
        if !is_isolating(f, &ring) || inv_part(f, &ring) != sets[i] {
            return Err(Error::MorseSetNotIsolated { index: i });
        }
    }

    let linear_order = linearize(&sets, &order);
    Ok(MorseDecomposition { neighborhood: n_set.clone(), ambient, sets, order, linear_order })
}

/// Attractor sequence associated with a Morse decomposition, together with
/// dual repellers and trapping regions.
#[derive(Debug, Clone)]
pub struct AttractorSequence {
    /// `A_0 = ∅ ⊆ A_1 ⊆ … ⊆ A_n = S`.
    pub attractors: Vec<CellSet>,
    /// `A*_0 = S ⊇ … ⊇ A*_n = ∅`, duals of the attractors.
    pub repellers: Vec<CellSet>,
    /// `trapping[k]` is a trapping region for `attractors[k+1]`.
    pub trapping: Vec<CellSet>,
}

impl AttractorSequence {
    pub fn len(&self) -> usize {
        self.attractors.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Trapping region of `A_k` (`k >= 1`); `A_0 = ∅` traps itself.
    pub fn trap(&self, k: usize) -> CellSet {
        if k == 0 {
            CellSet::empty(self.attractors[0].universe_len())
        } else {
            self.trapping[k - 1].clone()
        }
    }
}

/// Dual repeller of the attractor `A` with trapping region `T` inside `S`:
/// the invariant part of `S` minus the combinatorial interior of `T`.
pub fn dual_repeller(f: &CombMap, s: &CellSet, a: &CellSet, t: &CellSet) -> Result<CellSet> {
    // trapping relative to the dynamics of S suffices for the duality
    // facts (solutions in S touching T fall into A); absolute trapping
    // regions satisfy this a fortiori
    if !is_isolating(f, t) || !image(f, t).intersection(s).is_subset(t) {
        return Err(Error::NotTrapping(format!("{:?}", t.ids())));
    }
    if !a.is_subset(s) || &inv_part(f, t) != a {
        return Err(Error::Precondition("dual_repeller: T does not isolate A".into()));
    }
    let interior = comb_interior(f.grid(), t);
    Ok(inv_part(f, &s.difference(&interior)))
}

/// Builds the attractor sequence of a Morse decomposition: `A_k` is the
/// forward-reachable closure, inside the ambient invariant set, of the
/// first `k` Morse sets in the linear order. Every `A_k` is certified an
/// attractor via a trapping region, duals are filled in, and the identity
/// `M_k = A_k ∩ A*_{k-1}` is verified.
pub fn attractors_from_morse(f: &CombMap, d: &MorseDecomposition) -> Result<AttractorSequence> {
    let n_cells = f.grid().total_cells();
    let s = &d.ambient;
    let n = d.sets.len();
    let mut attractors = vec![CellSet::empty(n_cells)];
    let mut trapping = Vec::new();
    let mut seeds = CellSet::empty(n_cells);
    for k in 0..n {
        seeds.union_in_place(&d.sets[d.linear_order[k]]);
        let a_k = forward_closure(f, s, &seeds);
        let t_k = find_trapping_region_in(f, &d.neighborhood, &a_k).map_err(|e| match e {
            Error::NotAttractor(which, why) => Error::NotAttractor(
                format!("A_{} = {which}", k + 1),
                format!("{why} (resolution too coarse)"),
            ),
            other => other,
        })?;
        attractors.push(a_k);
        trapping.push(t_k);
    }
    let mut repellers = Vec::with_capacity(n + 1);
    repellers.push(s.clone());
    for k in 1..=n {
        let a = &attractors[k];
        let t = &trapping[k - 1];
        repellers.push(dual_repeller(f, s, a, t)?);
    }
    // M_k = A_k ∩ A*_{k-1}
    for k in 1..=n {
        let expect = &d.sets[d.linear_order[k - 1]];
        let got = attractors[k].intersection(&repellers[k - 1]);
        if &got != expect {
            return Err(Error::ResolutionTooCoarse(format!(
                "M_{k} ≠ A_{k} ∩ A*_{}; got {:?}",
                k - 1,
                got.ids()
            )));
        }
    }
    Ok(AttractorSequence { attractors, repellers, trapping })
}

/// Reconstructs a Morse decomposition from an attractor sequence via
/// `M_j = A_j ∩ A*_{j-1}`, verifying the result.
pub fn morse_from_attractors(
    f: &CombMap,
    s: &CellSet,
    seq: &AttractorSequence,
) -> Result<MorseDecomposition> {
    let n = seq.len();
    if !seq.attractors[0].is_empty() || &seq.attractors[n] != s {
        return Err(Error::Precondition(
            "attractor sequence must run from ∅ to S".into(),
        ));
    }
    let mut sets = Vec::with_capacity(n);
    for j in 1..=n {
        sets.push(seq.attractors[j].intersection(&seq.repellers[j - 1]));
    }
    let m = sets.len();
    let mut order = vec![BTreeSet::new(); m];
    for i in 0..m {
        let reach = forward_closure(f, s, &sets[i]);
        for j in 0..m {
            if i != j && sets[j].is_subset(&reach) {
                order[i].insert(j);
            }
        }
    }
    for (i, set) in sets.iter().enumerate() {
        if set.is_empty() || inv_part(f, set) != *set {
            return Err(Error::ResolutionTooCoarse(format!(
                "reconstructed M_{} is not invariant",
                i + 1
            )));
        }
    }
    let linear_order = linearize(&sets, &order);
    // reconstructed decompositions get the one-ring of S as their working
    // neighborhood; re-running the filtration on them re-certifies it
    let neighborhood = neighbors_of_set(f.grid(), s);
    Ok(MorseDecomposition { neighborhood, ambient: s.clone(), sets, order, linear_order })
}

/// Directed Morse graph: one vertex per Morse set, edges given by the
/// transitive reduction of the reachability order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseGraph {
    /// Number of cells per Morse set, indexed like the decomposition.
    pub cell_counts: Vec<usize>,
    /// Edges `(i, j)` meaning dynamics flows from set `i` to set `j`,
    /// after transitive reduction.
    pub edges: Vec<(usize, usize)>,
    pub linear_order: Vec<usize>,
}

pub fn morse_graph(d: &MorseDecomposition) -> MorseGraph {
    let m = d.sets.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for &j in &d.order[i] {
            // drop i -> j when a longer path i -> k -> .. -> j exists
            let redundant = d.order[i]
                .iter()
                .any(|&k| k != j && d.order[k].contains(&j));
            if !redundant {
                edges.push((i, j));
            }
        }
    }
    MorseGraph {
        cell_counts: d.sets.iter().map(CellSet::len).collect(),
        edges,
        linear_order: d.linear_order.clone(),
    }
}

impl MorseGraph {
    /// DOT rendering with vertices `M1..Mn` (numbered by linear order)
    /// labeled by cell count.
    pub fn to_dot(&self) -> String {
        let mut rank_of = vec![0usize; self.cell_counts.len()];
        for (rank, &i) in self.linear_order.iter().enumerate() {
            rank_of[i] = rank + 1;
        }
        let mut out = String::from("digraph morse {\n");
        for &i in &self.linear_order {
            out.push_str(&format!(
                "  M{} [label=\"M{} ({} cells)\"];\n",
                rank_of[i], rank_of[i], self.cell_counts[i]
            ));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  M{} -> M{};\n", rank_of[i], rank_of[j]));
        }
        out.push_str("}\n");
        out
    }
}

/// JSON form of a decomposition, matching the documented schema.
pub fn morse_to_json(d: &MorseDecomposition) -> serde_json::Value {
    let g = morse_graph(d);
    serde_json::json!({
        "morse_sets": d.sets.iter().map(|s| s.ids()).collect::<Vec<_>>(),
        "edges": g.edges,
        "linear_order": d.linear_order,
    })
}

/// Restriction of a map to a sub-invariant-set: targets clipped to `a`.
/// Used to state repeller–attractor facts relative to a sub-system.
pub fn restrict_map(f: &CombMap, a: &CellSet) -> CombMap {
    let n = f.grid().total_cells();
    let mut targets = Vec::with_capacity(n);
    for c in 0..n {
        if a.contains(c) {
            targets.push(f.targets(c).intersection(a));
        } else {
            targets.push(CellSet::empty(n));
        }
    }
    CombMap::new(f.grid().clone(), targets).expect("same grid")
}
