//! Conley–Morse analysis of discrete multivalued dynamical systems given
//! as combinatorial maps on cubical grids.
//!
//! The pipeline: ingest a multivalued map (piecewise-linear envelope,
//! explicit table, or sampled pairs), certify that its values are
//! acyclic blocks, decompose the invariant part of an isolating
//! neighborhood into Morse sets via condensation of the transition
//! digraph, build the associated attractor filtration with certified
//! trapping regions, construct weak index pairs and index triples for
//! every repeller–attractor level, compute cohomological Conley indices
//! through exact cubical homology and Leray reduction, and assemble the
//! Morse equation
//!
//! ```text
//! Σ p(t, M_i) = p(t, S) + (1+t) Q(t)
//! ```
//!
//! with nonnegative `Q_i` per level and witnessed connecting orbits
//! wherever a nonzero `Q_i` forces them.
//!
//! Everything is deterministic: cell sets iterate in ascending id order,
//! constructions break ties by smallest cell id, and homology runs over
//! exact rationals. All types are immutable after construction and all
//! operations are pure functions, so shared concurrent use is safe.
//!
//! See the `examples/` directory for one runnable walk-through per major
//! capability, and the `conley-morse` binary for the file-driven CLI.

pub mod error;
pub mod grid;
pub mod mvmap;
pub mod dynamics;
pub mod morse;
pub mod indexpair;
pub mod homology;
pub mod report;

pub mod fixtures;

pub use error::{Error, Result};
pub use grid::{closure_complex, comb_interior, neighbors, CellSet, Cube, CubicalComplex, GridDomain};
pub use mvmap::{
    check_values_acyclic, from_pl_envelope, from_samples, image, AcyclicityReport, CombMap,
    MapSpec,
};
pub use dynamics::{
    find_trapping_region, inv_minus, inv_part, inv_plus, is_isolating, is_trapping, limit_sets,
    positive_hull, reach_backward, reach_forward, reach_forward_n, LimitSets, Solution,
};
pub use morse::{
    attractors_from_morse, dual_repeller, morse_decomposition, morse_from_attractors,
    morse_graph, AttractorSequence, MorseDecomposition, MorseGraph,
};
pub use indexpair::{
    build_index_triple, build_weak_index_pair, fpair_restrict, t_pair, verify_f_pair,
    verify_weak_index_pair, Certification, FPair, IndexTriple, WeakIndexPair,
};
pub use homology::{
    conley_index, index_map, leray_reduce, poincare_series, relative_homology, ConleyIndex,
    FieldMatrix, IndexMapData, PoincareSeries, RelativeComplex,
};
pub use report::{
    analyze, divide_by_one_plus_t, morse_equation, rep_attr_equation, AnalysisRun, Connection,
    IntPoly, MorseEquationReport, SystemSpec,
};
