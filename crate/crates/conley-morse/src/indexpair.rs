//! Construction and certification of weak index pairs, F-pairs, T-pairs
//! and index triples for repeller–attractor pairs.
//!
//! Constructions are never trusted: every builder re-runs the public
//! verifiers and only returns certified objects.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{comb_interior, neighbors_of_set, CellSet, GridDomain};
use crate::mvmap::{image, CombMap};
use crate::dynamics::{inv_part, is_isolating, positive_hull};

/// A certified-or-candidate weak index pair `(p1, p2)` in the isolating
/// neighborhood `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakIndexPair {
    pub p1: CellSet,
    pub p2: CellSet,
    pub ambient: CellSet,
}

/// An F-pair `(r1, r2)` in the compact set `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPair {
    pub r1: CellSet,
    pub r2: CellSet,
    pub ambient: CellSet,
}

impl WeakIndexPair {
    /// Every weak index pair is a special F-pair.
    pub fn as_fpair(&self) -> FPair {
        FPair { r1: self.p1.clone(), r2: self.p2.clone(), ambient: self.ambient.clone() }
    }
}

/// Index triple `(p0, p1, p2)` for a repeller–attractor pair: `(p0, p2)`
/// is a weak index pair, `(p1, p2)` and `(p0, p1)` are F-pairs.
#[derive(Debug, Clone)]
pub struct IndexTriple {
    pub p0: CellSet,
    pub p1: CellSet,
    pub p2: CellSet,
    pub ambient: CellSet,
}

impl IndexTriple {
    /// The three pairs carrying the indices of `S`, the attractor, and the
    /// dual repeller respectively.
    pub fn s_pair(&self) -> WeakIndexPair {
        WeakIndexPair { p1: self.p0.clone(), p2: self.p2.clone(), ambient: self.ambient.clone() }
    }

    pub fn attractor_pair(&self) -> FPair {
        FPair { r1: self.p1.clone(), r2: self.p2.clone(), ambient: self.ambient.clone() }
    }

    pub fn repeller_pair(&self) -> FPair {
        FPair { r1: self.p0.clone(), r2: self.p1.clone(), ambient: self.ambient.clone() }
    }
}

/// Result of running a verifier: either a certificate or the first
/// violated condition with the offending cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certification {
    Certified,
    Violated { condition: &'static str, cells: Vec<usize> },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified)
    }

    fn violated(condition: &'static str, cells: &CellSet) -> Self {
        Certification::Violated { condition, cells: cells.ids() }
    }
}

/// The T-pair of a weak index pair: both components extended by the part
/// of the phase space outside the interior of the ambient neighborhood.
///
/// At the cell level the extension is the plain complement `X ∖ N`: the
/// closure complex of those cells realizes exactly `cl(X ∖ |N|) =
/// X ∖ int |N|`, so the downstream homology of the T-pair matches the
/// topological construction. (Extending by `X ∖ comb_interior(N)` instead
/// would fatten the closure by the boundary shell of `N` and provably
/// breaks excision for pairs with empty exit part.)
pub fn t_pair(grid: &GridDomain, pair: &WeakIndexPair) -> (CellSet, CellSet) {
    debug_assert_eq!(grid.total_cells(), pair.ambient.universe_len());
    let shell = pair.ambient.complement();
    (pair.p1.union(&shell), pair.p2.union(&shell))
}

/// Same construction for an F-pair.
pub fn t_pair_f(grid: &GridDomain, pair: &FPair) -> (CellSet, CellSet) {
    debug_assert_eq!(grid.total_cells(), pair.ambient.universe_len());
    let shell = pair.ambient.complement();
    (pair.r1.union(&shell), pair.r2.union(&shell))
}

/// Verifies the weak index pair conditions combinatorially:
///
/// * (containment) `p2 ⊆ p1 ⊆ N`;
/// * (a) positive invariance: `F(p_i) ∩ N ⊆ p_i`;
/// * (b) the exit set is inside `p2`: cells of `p1` whose closure meets
///   the closure of `F(p1) ∖ p1` (one-ring contact) lie in `p2`;
/// * (c) `Inv(N, F) ⊆ p1 ∖ p2`;
/// * (d) `p1 ∖ p2 ⊆ comb_interior(N)`.
///
/// The first violated condition is named. Under (d) and the one-ring
/// isolation margin of `N`, condition (c) keeps the invariant part
/// clear of `p2` and of the boundary shell, which is what the geometric
/// statement needs at this resolution.
pub fn verify_weak_index_pair(f: &CombMap, pair: &WeakIndexPair) -> Certification {
    let grid = f.grid();
    let (p1, p2, n_set) = (&pair.p1, &pair.p2, &pair.ambient);
    if !p2.is_subset(p1) || !p1.is_subset(n_set) {
        let bad = p2.difference(p1).union(&p1.difference(n_set));
        return Certification::violated("containment", &bad);
    }
    for (name, p) in [("a", p1), ("a", p2)] {
        let escape = image(f, p).intersection(n_set).difference(p);
        if !escape.is_empty() {
            return Certification::violated(name, &escape);
        }
    }
    let exits = image(f, p1).difference(p1);
    let contact = neighbors_of_set(grid, &exits).intersection(p1);
    if !contact.is_subset(p2) {
        return Certification::violated("b", &contact.difference(p2));
    }
    let inv = inv_part(f, n_set);
    let core = p1.difference(p2);
    if !inv.is_subset(&core) {
        return Certification::violated("c", &inv.difference(&core));
    }
    let interior = comb_interior(grid, n_set);
    if !core.is_subset(&interior) {
        return Certification::violated("d", &core.difference(&interior));
    }
    Certification::Certified
}

/// Verifies the F-pair conditions:
///
/// * (containment) `r2 ⊆ r1 ⊆ M`;
/// * (Fp1) `r1`, `r2` positively invariant with respect to `F` in `M`;
/// * (Fp2) the closure of `r1 ∖ r2` is an isolating neighborhood. The
///   realization of the cell-set difference is already closed, so the
///   set itself is checked first; the one-ring fattening is accepted as
///   the conservative alternative reading (sound by the margin that (d)
///   of a weak index pair provides);
/// * (Fp3) `r1 ∖ r2 ⊆ comb_interior(M)`.
pub fn verify_f_pair(f: &CombMap, pair: &FPair) -> Certification {
    let grid = f.grid();
    let (r1, r2, m_set) = (&pair.r1, &pair.r2, &pair.ambient);
    if !r2.is_subset(r1) || !r1.is_subset(m_set) {
        let bad = r2.difference(r1).union(&r1.difference(m_set));
        return Certification::violated("containment", &bad);
    }
    for r in [r1, r2] {
        let escape = image(f, r).intersection(m_set).difference(r);
        if !escape.is_empty() {
            return Certification::violated("Fp1", &escape);
        }
    }
    let core = r1.difference(r2);
    if !is_isolating(f, &core) && !is_isolating(f, &neighbors_of_set(grid, &core)) {
        return Certification::violated("Fp2", &core);
    }
    let interior = comb_interior(grid, m_set);
    if !core.is_subset(&interior) {
        return Certification::violated("Fp3", &core.difference(&interior));
    }
    Certification::Certified
}

/// Seed policy for the pair construction: start from the invariant part
/// itself, or from the invariant part with its in-neighborhood one-ring
/// collar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedMode {
    Minimal,
    Collared,
}

pub(crate) fn build_weak_index_pair_seeded(
    f: &CombMap,
    n_set: &CellSet,
    mode: SeedMode,
) -> Result<WeakIndexPair> {
    if !is_isolating(f, n_set) {
        return Err(Error::NotIsolating);
    }
    let grid = f.grid();
    let s = inv_part(f, n_set);
    let seed = match mode {
        SeedMode::Minimal => s.clone(),
        SeedMode::Collared => s.union(&neighbors_of_set(grid, &s).intersection(n_set)),
    };
    let p1 = positive_hull(f, n_set, &seed)?;
    let exits = p1.difference(&comb_interior(grid, n_set));
    let p2 = positive_hull(f, n_set, &exits)?.intersection(&p1);
    let pair = WeakIndexPair { p1, p2, ambient: n_set.clone() };
    match verify_weak_index_pair(f, &pair) {
        Certification::Certified => Ok(pair),
        Certification::Violated { condition, cells } => Err(Error::ResolutionTooCoarse(format!(
            "weak index pair condition ({condition}) fails at cells {cells:?} \
             (remedy: refine the grid or enlarge the neighborhood)"
        ))),
    }
}

/// Builds a certified weak index pair in the isolating neighborhood `N`:
/// `p1` is the positive hull of the invariant part (minimal seed first,
/// then the collared seed), `p2` the positive hull of its non-interior
/// part. The first candidate passing [`verify_weak_index_pair`] wins,
/// which makes the output deterministic.
pub fn build_weak_index_pair(f: &CombMap, n_set: &CellSet) -> Result<WeakIndexPair> {
    match build_weak_index_pair_seeded(f, n_set, SeedMode::Minimal) {
        Ok(pair) => Ok(pair),
        Err(Error::NotIsolating) => Err(Error::NotIsolating),
        Err(first) => {
            build_weak_index_pair_seeded(f, n_set, SeedMode::Collared).map_err(|_| first)
        }
    }
}

/// Restriction of an F-pair to a smaller isolating neighborhood `K`
/// containing its core: `(r1 ∩ K, r2 ∩ K)` is a certified weak index pair
/// and its index map is conjugate to the original one.
pub fn fpair_restrict(f: &CombMap, pair: &FPair, k_set: &CellSet) -> Result<WeakIndexPair> {
    if !k_set.is_subset(&pair.ambient) {
        return Err(Error::RestrictInvalid("K ⊄ ambient".into()));
    }
    if !is_isolating(f, k_set) {
        return Err(Error::RestrictInvalid("K not isolating".into()));
    }
    let core = pair.r1.difference(&pair.r2);
    if !core.is_subset(&comb_interior(f.grid(), k_set)) {
        return Err(Error::RestrictInvalid("r1 ∖ r2 ⊄ comb_interior(K)".into()));
    }
    let restricted = WeakIndexPair {
        p1: pair.r1.intersection(k_set),
        p2: pair.r2.intersection(k_set),
        ambient: k_set.clone(),
    };
    match verify_weak_index_pair(f, &restricted) {
        Certification::Certified => Ok(restricted),
        Certification::Violated { condition, cells } => Err(Error::RestrictInvalid(format!(
            "restricted pair violates ({condition}) at {cells:?}"
        ))),
    }
}

/// Builds a certified index triple for the attractor `A` (with global
/// trapping region `T`) inside the isolating neighborhood `N`:
///
/// * `(p0, p2')` is a weak index pair for `Inv(N)` in `N`;
/// * `M := T ∩ N` isolates `A`; `(q1', q2')` is a weak index pair in `M`;
/// * `p1 := (q1' ∩ p0) ∪ p2'`, `p2 := (q2' ∩ p0) ∪ p2'`.
///
/// Seed choices for the two pair constructions are tried in a fixed
/// ladder until all three certifications pass.
pub fn build_index_triple(
    f: &CombMap,
    n_set: &CellSet,
    a: &CellSet,
    t: &CellSet,
) -> Result<IndexTriple> {
    if !is_isolating(f, n_set) {
        return Err(Error::NotIsolating);
    }
    if !a.is_empty()
        && (!is_isolating(f, t) || !image(f, t).intersection(n_set).is_subset(t))
    {
        return Err(Error::Precondition(
            "build_index_triple: T is not trapping relative to N".into(),
        ));
    }
    let s = inv_part(f, n_set);
    if !a.is_subset(&s) {
        return Err(Error::Precondition("build_index_triple: A ⊄ Inv(N)".into()));
    }
    let m_set = t.intersection(n_set);
    if inv_part(f, &m_set) != *a || !is_isolating(f, &m_set) {
        return Err(Error::ResolutionTooCoarse(
            "T ∩ N does not isolate the attractor".into(),
        ));
    }

    let modes = [SeedMode::Minimal, SeedMode::Collared];
    let mut last_failure = String::from("no candidate construction succeeded");
    for &m0 in &modes {
        let outer = match build_weak_index_pair_seeded(f, n_set, m0) {
            Ok(p) => p,
            Err(e) => {
                last_failure = format!("S-pair ({m0:?}): {e}");
                continue;
            }
        };
        for &mq in &modes {
            let inner = match build_weak_index_pair_seeded(f, &m_set, mq) {
                Ok(p) => p,
                Err(e) => {
                    last_failure = format!("A-pair ({mq:?}): {e}");
                    continue;
                }
            };
            let q1 = inner.p1.intersection(&outer.p1);
            let q2 = inner.p2.intersection(&outer.p1);
            let triple = IndexTriple {
                p0: outer.p1.clone(),
                p1: q1.union(&outer.p2),
                p2: q2.union(&outer.p2),
                ambient: n_set.clone(),
            };
            let checks = [
                ("(p0,p2) weak index pair", verify_weak_index_pair(f, &triple.s_pair())),
                ("(p1,p2) F-pair", verify_f_pair(f, &triple.attractor_pair())),
                ("(p0,p1) F-pair", verify_f_pair(f, &triple.repeller_pair())),
            ];
            match checks.iter().find(|(_, c)| !c.is_certified()) {
                None => return Ok(triple),
                Some((what, Certification::Violated { condition, cells })) => {
                    last_failure = format!(
                        "{what} fails ({condition}) at {cells:?} with seeds {m0:?}/{mq:?}"
                    );
                }
                Some((_, Certification::Certified)) => unreachable!(),
            }
        }
    }
    Err(Error::ResolutionTooCoarse(last_failure))
}

/// JSON form of a pair, matching the documented schema.
pub fn pair_to_json(pair: &WeakIndexPair, certified: bool) -> serde_json::Value {
    serde_json::json!({
        "p1": pair.p1.ids(),
        "p2": pair.p2.ids(),
        "ambient": pair.ambient.ids(),
        "certified": certified,
    })
}

/// JSON form of a triple.
pub fn triple_to_json(t: &IndexTriple) -> serde_json::Value {
    serde_json::json!({
        "p0": t.p0.ids(),
        "p1": t.p1.ids(),
        "p2": t.p2.ids(),
        "ambient": t.ambient.ids(),
        "certified": true,
    })
}
