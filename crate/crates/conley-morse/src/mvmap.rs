//! Combinatorial multivalued maps `F: cells ⊸ cells` and their ingestion
//! from piecewise-linear envelopes, explicit tables, and sampled pairs.
//!
//! The geometric realization (a point maps to the union of closed cells in
//! the targets of its cell) is upper semicontinuous with compact values by
//! construction; this is a documented guarantee, not a runtime check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{neighbors_of_set, CellSet, GridDomain};

/// Combinatorial multivalued map: a target cell set per grid cell.
/// Cells with empty targets fall outside the effective domain.
#[derive(Debug, Clone)]
pub struct CombMap {
    grid: GridDomain,
    targets: Vec<CellSet>,
    sources: Vec<CellSet>,
}

impl CombMap {
    pub fn new(grid: GridDomain, targets: Vec<CellSet>) -> Result<Self> {
        let n = grid.total_cells();
        if targets.len() != n {
            return Err(Error::MalformedInput(format!(
                "targets indexed by {} cells, grid has {n}",
                targets.len()
            )));
        }
        let mut sources = vec![CellSet::empty(n); n];
        for (c, t) in targets.iter().enumerate() {
            for y in t.iter() {
                sources[y].insert(c);
            }
        }
        Ok(CombMap { grid, targets, sources })
    }

    /// Build from an explicit table of `(cell, targets)` entries. Cells not
    /// listed get empty targets.
    pub fn explicit(grid: GridDomain, entries: &[(usize, Vec<usize>)]) -> Result<Self> {
        let n = grid.total_cells();
        let mut targets = vec![CellSet::empty(n); n];
        for (c, t) in entries {
            if *c >= n {
                return Err(Error::InvalidCell { id: *c, total: n });
            }
            for &y in t {
                if y >= n {
                    return Err(Error::InvalidCell { id: y, total: n });
                }
                targets[*c].insert(y);
            }
        }
        CombMap::new(grid, targets)
    }

    pub fn grid(&self) -> &GridDomain {
        &self.grid
    }

    pub fn targets(&self, c: usize) -> &CellSet {
        &self.targets[c]
    }

    /// Cells mapping onto `c` (the reverse digraph).
    pub fn sources(&self, c: usize) -> &CellSet {
        &self.sources[c]
    }

    /// Effective domain: cells with nonempty targets.
    pub fn domain(&self) -> CellSet {
        let n = self.grid.total_cells();
        let mut out = CellSet::empty(n);
        for c in 0..n {
            if !self.targets[c].is_empty() {
                out.insert(c);
            }
        }
        out
    }
}

/// `F(A)`: union of targets over the cells of `A`.
pub fn image(f: &CombMap, a: &CellSet) -> CellSet {
    let mut out = CellSet::empty(f.grid().total_cells());
    for c in a.iter() {
        out.union_in_place(f.targets(c));
    }
    out
}

/// Preimage under the transition digraph: cells with a target in `A`.
pub fn preimage(f: &CombMap, a: &CellSet) -> CellSet {
    let mut out = CellSet::empty(f.grid().total_cells());
    for c in a.iter() {
        out.union_in_place(f.sources(c));
    }
    out
}

/// Outcome of the syntactic acyclicity certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcyclicityReport {
    /// Every nonempty value is an axis-aligned contiguous block, hence has
    /// acyclic realization.
    Certified,
    /// Cells whose value is not a block.
    Violations(Vec<usize>),
}

impl AcyclicityReport {
    pub fn is_certified(&self) -> bool {
        matches!(self, AcyclicityReport::Certified)
    }
}

/// Checks that every nonempty value is an interval (1D) or a full rectangle
/// (2D) of cells. Such blocks have acyclic realization, which is what the
/// chain selector construction needs.
pub fn check_values_acyclic(f: &CombMap) -> AcyclicityReport {
    let grid = f.grid();
    let mut bad = Vec::new();
    for c in 0..grid.total_cells() {
        let t = f.targets(c);
        if t.is_empty() {
            continue;
        }
        if !is_block(grid, t) {
            bad.push(c);
        }
    }
    if bad.is_empty() {
        AcyclicityReport::Certified
    } else {
        AcyclicityReport::Violations(bad)
    }
}

/// True iff `set` is a full axis-aligned block of cells.
pub fn is_block(grid: &GridDomain, set: &CellSet) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut lo = vec![usize::MAX; grid.dim];
    let mut hi = vec![0usize; grid.dim];
    let mut count = 0usize;
    for id in set.iter() {
        let cell = grid.cell_from_id(id).expect("valid id");
        for k in 0..grid.dim {
            lo[k] = lo[k].min(cell.multi_index[k]);
            hi[k] = hi[k].max(cell.multi_index[k]);
        }
        count += 1;
    }
    let volume: usize = (0..grid.dim).map(|k| hi[k] - lo[k] + 1).product();
    volume == count
}

/// Ingestion payloads. The JSON encodings are part of the external
/// interface; see the README for examples.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    Explicit {
        entries: Vec<(usize, Vec<usize>)>,
    },
    PlEnvelope {
        lower: Vec<(f64, f64)>,
        upper: Vec<(f64, f64)>,
    },
    Samples {
        file: String,
        pad: usize,
    },
}

const EPS: f64 = 1e-9;

/// A piecewise-linear curve given by breakpoints sorted by x. Repeated x
/// values encode jump discontinuities; each linear piece is taken
/// left-closed right-open, the final point closes the range.
struct PlCurve<'a> {
    points: &'a [(f64, f64)],
}

impl<'a> PlCurve<'a> {
    fn new(points: &'a [(f64, f64)], range: [f64; 2], name: &str) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::MalformedEnvelope(format!(
                "{name}: need at least two breakpoints"
            )));
        }
        for w in points.windows(2) {
            if w[1].0 < w[0].0 - EPS {
                return Err(Error::MalformedEnvelope(format!(
                    "{name}: breakpoints not sorted by x"
                )));
            }
        }
        let first = points.first().unwrap().0;
        let last = points.last().unwrap().0;
        if first > range[0] + EPS || last < range[1] - EPS {
            return Err(Error::MalformedEnvelope(format!(
                "{name}: breakpoints cover [{first}, {last}], grid needs [{}, {}]",
                range[0], range[1]
            )));
        }
        Ok(PlCurve { points })
    }

    /// Linear segments with positive x-extent.
    fn segments(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        self.points
            .windows(2)
            .filter(|w| w[1].0 > w[0].0 + EPS)
            .map(|w| (w[0], w[1]))
    }

    fn eval_on_segment(seg: ((f64, f64), (f64, f64)), x: f64) -> f64 {
        let ((x0, y0), (x1, y1)) = seg;
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Min and max of the curve over the cell interval `[a, b]`, where each
    /// linear piece contributes on `[x_i, x_{i+1})` (plus the closing point
    /// of the whole range).
    fn extrema_over(&self, a: f64, b: f64) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for seg in self.segments() {
            let s0 = seg.0 .0.max(a);
            let s1 = seg.1 .0.min(b);
            if s1 - s0 > EPS {
                let va = Self::eval_on_segment(seg, s0);
                let vb = Self::eval_on_segment(seg, s1);
                lo = lo.min(va.min(vb));
                hi = hi.max(va.max(vb));
            }
        }
        (lo, hi)
    }

    /// Value at `x` under the left-closed right-open convention.
    fn eval(&self, x: f64) -> f64 {
        let mut last = None;
        for seg in self.segments() {
            if x >= seg.0 .0 - EPS && x < seg.1 .0 - EPS {
                return Self::eval_on_segment(seg, x);
            }
            last = Some(seg);
        }
        let seg = last.expect("curve has at least one segment");
        Self::eval_on_segment(seg, x.min(seg.1 .0))
    }
}

/// Outer approximation of the set-valued graph bounded by two
/// piecewise-linear curves over a 1D grid. For each cell with x-interval I,
/// the targets are all cells meeting `[min_I lower, max_I upper]`.
pub fn from_pl_envelope(
    grid: &GridDomain,
    lower: &[(f64, f64)],
    upper: &[(f64, f64)],
) -> Result<CombMap> {
    if grid.dim != 1 {
        return Err(Error::MalformedEnvelope(
            "pl_envelope ingestion is defined for 1D grids".into(),
        ));
    }
    let range = grid.bounds[0];
    let lo_curve = PlCurve::new(lower, range, "lower")?;
    let up_curve = PlCurve::new(upper, range, "upper")?;

    // lower <= upper pointwise: check on the merged breakpoint refinement;
    // both curves are linear between consecutive refined points.
    let mut xs: Vec<f64> = lower
        .iter()
        .chain(upper.iter())
        .map(|p| p.0)
        .filter(|&x| x >= range[0] - EPS && x <= range[1] + EPS)
        .chain([range[0], range[1]])
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() < EPS);
    for w in xs.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        for x in [w[0], mid] {
            if lo_curve.eval(x) > up_curve.eval(x) + EPS {
                return Err(Error::MalformedEnvelope(format!(
                    "lower({x}) > upper({x})"
                )));
            }
        }
    }

    let n = grid.total_cells();
    let w = grid.cell_width(0);
    let mut targets = Vec::with_capacity(n);
    for c in 0..n {
        let a = range[0] + c as f64 * w;
        let b = a + w;
        let (vmin, _) = lo_curve.extrema_over(a, b);
        let (_, vmax) = up_curve.extrema_over(a, b);
        if vmin < range[0] - EPS || vmax > range[1] + EPS {
            return Err(Error::IngestionOutOfBounds(format!(
                "envelope over cell {c} spans [{vmin}, {vmax}], outside the grid box"
            )));
        }
        targets.push(cells_meeting_interval(grid, vmin, vmax));
    }
    CombMap::new(grid.clone(), targets)
}

/// All cells whose closed realization meets the closed interval
/// `[vmin, vmax]` (1D). Boundary touching counts.
fn cells_meeting_interval(grid: &GridDomain, vmin: f64, vmax: f64) -> CellSet {
    let n = grid.total_cells();
    let lo = grid.bounds[0][0];
    let w = grid.cell_width(0);
    let rel_min = (vmin - lo) / w;
    let rel_max = (vmax - lo) / w;
    let mut first = rel_min.floor() as isize;
    if (rel_min - rel_min.round()).abs() < EPS {
        first = rel_min.round() as isize - 1;
    }
    let mut last = rel_max.floor() as isize;
    if (rel_max - rel_max.round()).abs() < EPS {
        last = rel_max.round() as isize;
    }
    let first = first.max(0) as usize;
    let last = (last.max(0) as usize).min(n - 1);
    CellSet::from_ids(n, first..=last.max(first))
}

/// Binning construction from sampled `(x, y)` pairs: each sample adds the
/// `pad`-ring of `cell(y)` to the targets of `cell(x)`. Unsampled cells
/// keep empty targets and fall outside the effective domain.
pub fn from_samples(
    grid: &GridDomain,
    pairs: &[(Vec<f64>, Vec<f64>)],
    pad: usize,
) -> Result<CombMap> {
    let n = grid.total_cells();
    let mut targets = vec![CellSet::empty(n); n];
    for (x, y) in pairs {
        let cx = grid.locate(x)?;
        let cy = grid.locate(y)?;
        let mut ring = CellSet::from_ids(n, [cy]);
        for _ in 0..pad {
            ring = neighbors_of_set(grid, &ring);
        }
        targets[cx].union_in_place(&ring);
    }
    CombMap::new(grid.clone(), targets)
}

/// Parse a samples CSV: one `x,y` (1D) or `x0,x1,y0,y1` (2D) per line,
/// header optional.
pub fn parse_pairs_csv(grid: &GridDomain, text: &str) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|s| s.parse().ok()).collect();
        match parsed {
            None if lineno == 0 => continue, // header
            None => {
                return Err(Error::MalformedInput(format!(
                    "pairs csv line {}: cannot parse '{line}'",
                    lineno + 1
                )))
            }
            Some(vals) => {
                if vals.len() != 2 * grid.dim {
                    return Err(Error::MalformedInput(format!(
                        "pairs csv line {}: expected {} fields",
                        lineno + 1,
                        2 * grid.dim
                    )));
                }
                let (x, y) = vals.split_at(grid.dim);
                out.push((x.to_vec(), y.to_vec()));
            }
        }
    }
    Ok(out)
}

/// Build a map from a parsed [`MapSpec`]. Sample files are resolved
/// against `base_dir`.
pub fn build_map(grid: &GridDomain, spec: &MapSpec, base_dir: &std::path::Path) -> Result<CombMap> {
    match spec {
        MapSpec::Explicit { entries } => CombMap::explicit(grid.clone(), entries),
        MapSpec::PlEnvelope { lower, upper } => from_pl_envelope(grid, lower, upper),
        MapSpec::Samples { file, pad } => {
            let path = base_dir.join(file);
            let text = std::fs::read_to_string(&path)?;
            let pairs = parse_pairs_csv(grid, &text)?;
            from_samples(grid, &pairs, *pad)
        }
    }
}
