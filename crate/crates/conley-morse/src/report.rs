//! Morse-equation assembly, connection detection, and the end-to-end
//! analysis pipeline with file I/O.

use std::collections::VecDeque;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::{CellSet, GridDomain};
use crate::mvmap::{build_map, check_values_acyclic, CombMap, MapSpec};
use crate::dynamics::is_isolating;
use crate::homology::{conley_index_of_pair, PoincareSeries};
use crate::indexpair::{build_index_triple, IndexTriple};
use crate::morse::{
    attractors_from_morse, morse_decomposition, morse_graph, AttractorSequence,
    MorseDecomposition,
};

/// Signed integer polynomial, the intermediate currency of the Morse
/// equation before nonnegativity is certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn from_series(p: &PoincareSeries) -> Self {
        IntPoly::new(p.signed())
    }

    pub fn coeff(&self, q: usize) -> i64 {
        self.coeffs.get(q).copied().unwrap_or(0)
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|q| self.coeff(q) + other.coeff(q)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|q| self.coeff(q) - other.coeff(q)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(1+t) · self`.
    pub fn mul_one_plus_t(&self) -> IntPoly {
        let len = self.coeffs.len() + 1;
        IntPoly::new((0..len).map(|q| self.coeff(q) + if q > 0 { self.coeff(q - 1) } else { 0 }).collect())
    }
}

/// Extracts `q` with `(1+t)·q = p` by synthetic division, requiring an
/// exact nonnegative quotient. Fails with `NotDivisible` when `p(-1) ≠ 0`
/// and with `NegativeQ` when any quotient coefficient is negative; both
/// indicate an upstream inconsistency.
pub fn divide_by_one_plus_t(p: &IntPoly) -> Result<PoincareSeries> {
    if p.is_zero() {
        return Ok(PoincareSeries::zero());
    }
    let d = p.degree_bound();
    let mut q = vec![0i64; d.saturating_sub(1)];
    let mut carry = 0i64;
    for k in 0..d.saturating_sub(1) {
        let c = p.coeff(k) - carry;
        q[k] = c;
        carry = c;
    }
    let remainder = p.coeff(d - 1) - carry;
    if remainder != 0 {
        return Err(Error::NotDivisible(format!(
            "remainder {remainder} when dividing {:?} by (1+t)",
            p.coeffs
        )));
    }
    if let Some(&bad) = q.iter().find(|&&c| c < 0) {
        return Err(Error::NegativeQ(format!(
            "coefficient {bad} in quotient of {:?}",
            p.coeffs
        )));
    }
    Ok(PoincareSeries::new(q.into_iter().map(|c| c as usize).collect()))
}

/// The per-pair equation of a repeller–attractor pair:
/// `p(t, A*) + p(t, A) = p(t, S) + (1+t) Q(t)`.
#[derive(Debug, Clone)]
pub struct RepAttrEquation {
    pub p_repeller: PoincareSeries,
    pub p_attractor: PoincareSeries,
    pub p_total: PoincareSeries,
    pub q: PoincareSeries,
}

/// Builds the index triple of `(A, T)` in `N` and evaluates the three
/// Poincaré series and the connection term.
pub fn rep_attr_equation(
    f: &CombMap,
    n_set: &CellSet,
    a: &CellSet,
    t: &CellSet,
) -> Result<RepAttrEquation> {
    let triple = build_index_triple(f, n_set, a, t)?;
    let series = triple_series(f, &triple)?;
    let lhs = IntPoly::from_series(&series.repeller).add(&IntPoly::from_series(&series.attractor));
    let q = divide_by_one_plus_t(&lhs.sub(&IntPoly::from_series(&series.total)))?;
    Ok(RepAttrEquation {
        p_repeller: series.repeller,
        p_attractor: series.attractor,
        p_total: series.total,
        q,
    })
}

struct TripleSeries {
    total: PoincareSeries,
    attractor: PoincareSeries,
    repeller: PoincareSeries,
}

fn triple_series(f: &CombMap, triple: &IndexTriple) -> Result<TripleSeries> {
    let total = conley_index_of_pair(f, &triple.s_pair().as_fpair())?.poincare();
    let attractor = conley_index_of_pair(f, &triple.attractor_pair())?.poincare();
    let repeller = conley_index_of_pair(f, &triple.repeller_pair())?.poincare();
    Ok(TripleSeries { total, attractor, repeller })
}

/// Evidence for a connecting orbit out of a Morse set with nonzero
/// connection term. Indices are 1-based positions in the linear order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Connection {
    Witnessed { from: usize, to: usize, path: Vec<usize> },
    IndexForced { from: usize, evidence: String },
}

/// Per-level data kept for inspection and cross-checks.
#[derive(Debug, Clone)]
pub struct EquationLevel {
    /// Isolating neighborhood used at this level (`T_i ∩ N`).
    pub neighborhood: CellSet,
    pub triple: IndexTriple,
}

/// The assembled Morse equation.
#[derive(Debug, Clone)]
pub struct MorseEquationReport {
    pub p_s: PoincareSeries,
    /// `p(t, M_i)` in linear order, most attracting first.
    pub p_m: Vec<PoincareSeries>,
    /// `p(t, A_k)` for `k = 0..=n`.
    pub p_a: Vec<PoincareSeries>,
    pub q: PoincareSeries,
    pub q_i: Vec<PoincareSeries>,
    pub connections: Vec<Connection>,
    pub levels: Vec<EquationLevel>,
}

/// Builds the attractor filtration, the per-level index triples, all
/// Poincaré series and the connection terms, and verifies the Morse
/// equation.
pub fn morse_equation(
    f: &CombMap,
    n_set: &CellSet,
    d: &MorseDecomposition,
) -> Result<MorseEquationReport> {
    let n = d.sets.len();
    if n == 0 {
        return Ok(MorseEquationReport {
            p_s: PoincareSeries::zero(),
            p_m: Vec::new(),
            p_a: vec![PoincareSeries::zero()],
            q: PoincareSeries::zero(),
            q_i: Vec::new(),
            connections: Vec::new(),
            levels: Vec::new(),
        });
    }
    let seq = attractors_from_morse(f, d)?;
    let mut p_m = Vec::with_capacity(n);
    let mut p_a = vec![PoincareSeries::zero()];
    let mut q_i = Vec::with_capacity(n);
    let mut levels = Vec::with_capacity(n);
    for i in 1..=n {
        let n_i = seq.trapping[i - 1].intersection(n_set);
        if !is_isolating(f, &n_i) {
            return Err(Error::ResolutionTooCoarse(format!(
                "level {i}: T_{i} ∩ N is not isolating"
            )));
        }
        let triple = build_index_triple(f, &n_i, &seq.attractors[i - 1], &seq.trap(i - 1))?;
        let series = triple_series(f, &triple)?;
        // the attractor pair of this level recomputes p(t, A_{i-1})
        if series.attractor != p_a[i - 1] {
            return Err(Error::EquationInconsistent(format!(
                "p(t, A_{}) differs between levels: {} vs {}",
                i - 1,
                series.attractor,
                p_a[i - 1]
            )));
        }
        let numerator = IntPoly::from_series(&series.repeller)
            .add(&IntPoly::from_series(&series.attractor))
            .sub(&IntPoly::from_series(&series.total));
        q_i.push(divide_by_one_plus_t(&numerator)?);
        p_m.push(series.repeller);
        p_a.push(series.total);
        levels.push(EquationLevel { neighborhood: n_i, triple });
    }
    let p_s = p_a[n].clone();
    let q = q_i.iter().fold(PoincareSeries::zero(), |acc, x| acc.add(x));

    // telescoping check: Σ p(t, M_i) = p(t, S) + (1+t) Q(t)
    let sum_m = p_m.iter().fold(IntPoly::zero(), |acc, x| acc.add(&IntPoly::from_series(x)));
    let rhs = IntPoly::from_series(&p_s).add(&IntPoly::from_series(&q).mul_one_plus_t());
    if sum_m != rhs {
        return Err(Error::EquationInconsistent(format!(
            "Σ p_M = {:?} but p_S + (1+t)Q = {:?}",
            sum_m, rhs
        )));
    }

    let connections = find_connections(f, d, &q_i);
    Ok(MorseEquationReport { p_s, p_m, p_a, q, q_i, connections, levels })
}

/// For every `i` with `Q_i ≠ 0`, finds witness paths from the Morse set at
/// linear position `i` to every earlier Morse set it reaches; falls back
/// to "index-forced" evidence when no combinatorial witness exists.
fn find_connections(f: &CombMap, d: &MorseDecomposition, q_i: &[PoincareSeries]) -> Vec<Connection> {
    let mut out = Vec::new();
    for (pos, q) in q_i.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let i = pos + 1; // 1-based linear position
        let from_set = d.linear_order[pos];
        let mut found = false;
        for j in 1..i {
            let to_set = d.linear_order[j - 1];
            if !d.flows_to(from_set, to_set) {
                continue;
            }
            if let Some(path) = witness_path(f, &d.ambient, &d.sets[from_set], &d.sets[to_set]) {
                out.push(Connection::Witnessed { from: i, to: j, path });
                found = true;
            }
        }
        if !found {
            out.push(Connection::IndexForced { from: i, evidence: "index-forced".into() });
        }
    }
    out
}

/// Shortest path from `source` cells to `target` cells inside `ambient`,
/// deterministic (BFS in ascending cell order, smallest-id parents).
fn witness_path(
    f: &CombMap,
    ambient: &CellSet,
    source: &CellSet,
    target: &CellSet,
) -> Option<Vec<usize>> {
    let n = f.grid().total_cells();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = CellSet::empty(n);
    let mut queue = VecDeque::new();
    for c in source.iter() {
        seen.insert(c);
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        if target.contains(c) {
            let mut path = vec![c];
            let mut cur = c;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for next in f.targets(c).intersection(ambient).iter() {
            if !seen.contains(next) {
                seen.insert(next);
                parent[next] = Some(c);
                queue.push_back(next);
            }
        }
    }
    None
}

/// On-disk system description: a grid, a map, and optional analysis
/// directives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemSpec {
    pub grid: GridJson,
    pub map: MapSpec,
    /// Groups of cell ids whose Morse sets are merged into single Morse
    /// sets (admissibility is verified).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coarsen: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridJson {
    pub dim: usize,
    pub bounds: Vec<[f64; 2]>,
    pub divisions: Vec<usize>,
}

impl SystemSpec {
    pub fn load(path: &Path) -> Result<(Self, GridDomain, CombMap)> {
        let bytes = std::fs::read(path)?;
        let spec: SystemSpec = serde_json::from_slice(&bytes)?;
        let grid = GridDomain::new(
            spec.grid.dim,
            spec.grid.bounds.clone(),
            spec.grid.divisions.clone(),
        )?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let map = build_map(&grid, &spec.map, base)?;
        Ok((spec, grid, map))
    }
}

/// Full analysis of one input system.
#[derive(Debug, Clone)]
pub struct AnalysisRun {
    pub digest: String,
    pub grid: GridDomain,
    pub map_kind: String,
    pub neighborhood: CellSet,
    pub morse: MorseDecomposition,
    pub sequence: AttractorSequence,
    pub equation: MorseEquationReport,
    /// Per-stage wall times. Diagnostic only: never serialized into the
    /// report, which stays identical across runs of the same input.
    pub timings_ms: Vec<(String, u128)>,
}

/// Runs the whole pipeline on an input file: ingest, certify acyclic
/// values, decompose, build the attractor filtration and triples, and
/// assemble the Morse equation. `neighborhood` restricts the analysis to
/// an explicit cell set (default: the whole grid).
pub fn analyze(spec_path: &Path, neighborhood: Option<Vec<usize>>) -> Result<AnalysisRun> {
    let bytes = std::fs::read(spec_path)?;
    let digest = hex_digest(&bytes);
    let (spec, grid, map) = SystemSpec::load(spec_path)?;
    analyze_map(&grid, &map, &spec, digest, neighborhood)
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

fn map_kind(spec: &MapSpec) -> &'static str {
    match spec {
        MapSpec::Explicit { .. } => "explicit",
        MapSpec::PlEnvelope { .. } => "pl_envelope",
        MapSpec::Samples { .. } => "samples",
    }
}

fn analyze_map(
    grid: &GridDomain,
    map: &CombMap,
    spec: &SystemSpec,
    digest: String,
    neighborhood: Option<Vec<usize>>,
) -> Result<AnalysisRun> {
    if let crate::mvmap::AcyclicityReport::Violations(cells) = check_values_acyclic(map) {
        return Err(Error::ValuesNotAcyclic(cells));
    }
    let n_set = match neighborhood {
        Some(ids) => {
            let total = grid.total_cells();
            for &id in &ids {
                if id >= total {
                    return Err(Error::InvalidCell { id, total });
                }
            }
            CellSet::from_ids(total, ids)
        }
        None => CellSet::full(grid.total_cells()),
    };
    if !is_isolating(map, &n_set) {
        return Err(Error::NotIsolating);
    }
    let mut timings_ms = Vec::new();
    let mut stamp = std::time::Instant::now();
    let mut lap = |name: &str, timings: &mut Vec<(String, u128)>| {
        timings.push((name.to_string(), stamp.elapsed().as_millis()));
        stamp = std::time::Instant::now();
    };
    let morse = decomposition_for(map, spec, &n_set)?;
    lap("morse_decomposition", &mut timings_ms);
    let sequence = attractors_from_morse(map, &morse)?;
    lap("attractor_sequence", &mut timings_ms);
    let equation = morse_equation(map, &n_set, &morse)?;
    lap("morse_equation", &mut timings_ms);
    Ok(AnalysisRun {
        digest,
        grid: grid.clone(),
        map_kind: map_kind(&spec.map).to_string(),
        neighborhood: n_set,
        morse,
        sequence,
        equation,
        timings_ms,
    })
}

/// Morse decomposition of `Inv(n_set)` with the spec's coarsening
/// directives applied.
pub fn decomposition_for(
    map: &CombMap,
    spec: &SystemSpec,
    n_set: &CellSet,
) -> Result<MorseDecomposition> {
    let morse = morse_decomposition(map, n_set)?;
    if spec.coarsen.is_empty() {
        return Ok(morse);
    }
    let groups = resolve_coarsen_groups(&morse, &spec.coarsen)?;
    morse.coarsen(&groups)
}

/// Translates groups of cell ids into groups of Morse-set indices.
fn resolve_coarsen_groups(
    d: &MorseDecomposition,
    cell_groups: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(cell_groups.len());
    for group in cell_groups {
        let mut indices = Vec::new();
        for &cell in group {
            let found = d.sets.iter().position(|s| s.contains(cell));
            match found {
                Some(i) if !indices.contains(&i) => indices.push(i),
                Some(_) => {}
                None => {
                    return Err(Error::CoarseningInvalid(format!(
                        "cell {cell} lies in no Morse set"
                    )))
                }
            }
        }
        out.push(indices);
    }
    Ok(out)
}

impl AnalysisRun {
    /// Deterministic report JSON (object keys are sorted by serde_json).
    pub fn to_json(&self) -> serde_json::Value {
        let linear_sets: Vec<Vec<usize>> = self
            .morse
            .sets_in_linear_order()
            .iter()
            .map(|s| s.ids())
            .collect();
        let graph = morse_graph(&self.morse);
        let mut rank_of = vec![0usize; self.morse.sets.len()];
        for (rank, &i) in self.morse.linear_order.iter().enumerate() {
            rank_of[i] = rank + 1;
        }
        let edges: Vec<[usize; 2]> = graph
            .edges
            .iter()
            .map(|&(i, j)| [rank_of[i], rank_of[j]])
            .collect();
        serde_json::json!({
            "input_digest": self.digest,
            "grid": {
                "dim": self.grid.dim,
                "bounds": self.grid.bounds,
                "divisions": self.grid.divisions,
            },
            "map_kind": self.map_kind,
            "neighborhood": self.neighborhood.ids(),
            "morse_sets": linear_sets,
            "edges": edges,
            "order": (1..=linear_sets.len()).collect::<Vec<usize>>(),
            "attractors": self.sequence.attractors.iter().map(CellSet::ids).collect::<Vec<_>>(),
            "repellers": self.sequence.repellers.iter().map(CellSet::ids).collect::<Vec<_>>(),
            "poincare": {
                "S": self.equation.p_s.coeffs(),
                "M": self.equation.p_m.iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>(),
                "A": self.equation.p_a.iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>(),
            },
            "Q": self.equation.q.coeffs(),
            "Qi": self.equation.q_i.iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>(),
            "connections": self.equation.connections,
        })
    }

    /// DOT rendering with one node per Morse set labeled by its Poincaré
    /// polynomial.
    pub fn to_dot(&self) -> String {
        let graph = morse_graph(&self.morse);
        let mut rank_of = vec![0usize; self.morse.sets.len()];
        for (rank, &i) in self.morse.linear_order.iter().enumerate() {
            rank_of[i] = rank + 1;
        }
        let mut out = String::from("digraph morse {\n");
        for (pos, p) in self.equation.p_m.iter().enumerate() {
            out.push_str(&format!("  M{} [label=\"M{}: {}\"];\n", pos + 1, pos + 1, p));
        }
        for &(i, j) in &graph.edges {
            out.push_str(&format!("  M{} -> M{};\n", rank_of[i], rank_of[j]));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fix_a, fix_r};
    use crate::grid::CellSet;

    fn set(n: usize, ids: &[usize]) -> CellSet {
        CellSet::from_ids(n, ids.iter().copied())
    }

    #[test]
    fn division_examples() {
        let q = divide_by_one_plus_t(&IntPoly::new(vec![1, 1])).unwrap();
        assert_eq!(q.coeffs(), &[1]);
        let q = divide_by_one_plus_t(&IntPoly::zero()).unwrap();
        assert!(q.is_zero());
        let q = divide_by_one_plus_t(&IntPoly::new(vec![2, 2])).unwrap();
        assert_eq!(q.coeffs(), &[2]);
        // (1+t)(1+2t) = 1 + 3t + 2t^2
        let q = divide_by_one_plus_t(&IntPoly::new(vec![1, 3, 2])).unwrap();
        assert_eq!(q.coeffs(), &[1, 2]);
    }

    #[test]
    fn division_faults() {
        assert!(matches!(
            divide_by_one_plus_t(&IntPoly::new(vec![1])),
            Err(Error::NotDivisible(_))
        ));
        // (1+t)(t-1)-free: 2t has p(-1) = -2
        assert!(matches!(
            divide_by_one_plus_t(&IntPoly::new(vec![0, 2])),
            Err(Error::NotDivisible(_))
        ));
        // -1 - t = (1+t)·(-1)
        assert!(matches!(
            divide_by_one_plus_t(&IntPoly::new(vec![-1, -1])),
            Err(Error::NegativeQ(_))
        ));
    }

    #[test]
    fn rep_attr_equation_on_fix_r() {
        let fr = fix_r();
        let n_set = CellSet::full(5);
        let eq = rep_attr_equation(&fr, &n_set, &set(5, &[0, 4]), &set(5, &[0, 1, 3, 4]))
            .unwrap();
        assert_eq!(eq.p_repeller.to_string(), "t");
        assert_eq!(eq.p_attractor.to_string(), "2");
        assert_eq!(eq.p_total.to_string(), "1");
        assert_eq!(eq.q.to_string(), "1");
    }

    #[test]
    fn rep_attr_equation_degenerate_ends() {
        let fr = fix_r();
        let n_set = CellSet::full(5);
        let s = crate::dynamics::inv_part(&fr, &n_set);
        let t = crate::dynamics::find_trapping_region(&fr, &s).unwrap();
        // A = S: repeller index zero, Q = 0
        let eq = rep_attr_equation(&fr, &n_set, &s, &t).unwrap();
        assert!(eq.p_repeller.is_zero());
        assert_eq!(eq.p_attractor, eq.p_total);
        assert!(eq.q.is_zero());
        // A = ∅: attractor index zero, Q = 0
        let empty = CellSet::empty(5);
        let eq = rep_attr_equation(&fr, &n_set, &empty, &empty).unwrap();
        assert!(eq.p_attractor.is_zero());
        assert_eq!(eq.p_repeller, eq.p_total);
        assert!(eq.q.is_zero());
    }

    #[test]
    fn morse_equation_on_fix_r() {
        let fr = fix_r();
        let n_set = CellSet::full(5);
        let d = morse_decomposition(&fr, &n_set).unwrap();
        let report = morse_equation(&fr, &n_set, &d).unwrap();
        let p_m: Vec<String> = report.p_m.iter().map(|p| p.to_string()).collect();
        assert_eq!(p_m, vec!["1", "1", "t"]);
        assert_eq!(report.p_s.to_string(), "1");
        assert_eq!(report.q.to_string(), "1");
        let q_i: Vec<String> = report.q_i.iter().map(|p| p.to_string()).collect();
        assert_eq!(q_i, vec!["0", "0", "1"]);
        // the source connects to both sinks
        let witnessed: Vec<(usize, usize)> = report
            .connections
            .iter()
            .filter_map(|c| match c {
                Connection::Witnessed { from, to, .. } => Some((*from, *to)),
                _ => None,
            })
            .collect();
        assert_eq!(witnessed, vec![(3, 1), (3, 2)]);
        for c in &report.connections {
            if let Connection::Witnessed { path, .. } = c {
                assert!(path.len() >= 2);
                for w in path.windows(2) {
                    assert!(fr.targets(w[0]).contains(w[1]));
                }
            }
        }
    }

    #[test]
    fn morse_equation_single_set() {
        let fa = fix_a();
        let n_set = CellSet::full(3);
        let d = morse_decomposition(&fa, &n_set).unwrap();
        let report = morse_equation(&fa, &n_set, &d).unwrap();
        assert_eq!(report.p_m.len(), 1);
        assert_eq!(report.p_m[0].to_string(), "1");
        assert!(report.q.is_zero());
        assert!(report.connections.is_empty());
    }

    #[test]
    fn two_dimensional_contraction_pipeline() {
        // 3x3 grid, everything maps to the center cell: one attracting
        // Morse set with index 1 in degree 0
        let g = crate::grid::GridDomain::new(2, vec![[0.0, 3.0], [0.0, 3.0]], vec![3, 3])
            .unwrap();
        let entries: Vec<(usize, Vec<usize>)> = (0..9).map(|c| (c, vec![4])).collect();
        let f = crate::mvmap::CombMap::explicit(g, &entries).unwrap();
        let all = CellSet::full(9);
        let d = morse_decomposition(&f, &all).unwrap();
        assert_eq!(d.sets.len(), 1);
        assert_eq!(d.sets[0].ids(), vec![4]);
        let report = morse_equation(&f, &all, &d).unwrap();
        assert_eq!(report.p_m[0].to_string(), "1");
        assert_eq!(report.p_s.to_string(), "1");
        assert!(report.q.is_zero());
    }

    #[test]
    fn no_escape_no_q() {
        // Q_i = 0 whenever the Morse graph has no edge out of M_i to an
        // earlier set (contrapositive of the connection clause)
        let fr = fix_r();
        let n_set = CellSet::full(5);
        let d = morse_decomposition(&fr, &n_set).unwrap();
        let report = morse_equation(&fr, &n_set, &d).unwrap();
        for (pos, q) in report.q_i.iter().enumerate() {
            let i = d.linear_order[pos];
            let has_edge = (0..pos).any(|e| d.flows_to(i, d.linear_order[e]));
            if !has_edge {
                assert!(q.is_zero(), "Q_{} must vanish without connections", pos + 1);
            }
        }
    }
}
