//! Small canonical systems used by the examples and the test suite.

use crate::grid::GridDomain;
use crate::mvmap::CombMap;

/// "Sink": every cell maps to the middle cell of a 3-cell line.
pub fn fix_a() -> CombMap {
    let g = GridDomain::line(0.0, 3.0, 3);
    CombMap::explicit(g, &[(0, vec![1]), (1, vec![1]), (2, vec![1])]).expect("fixture")
}

/// "Connector": fixed cells at both ends, the middle maps onto both.
pub fn fix_c() -> CombMap {
    let g = GridDomain::line(0.0, 3.0, 3);
    CombMap::explicit(g, &[(0, vec![0]), (1, vec![0, 2]), (2, vec![2])]).expect("fixture")
}

/// "Source and sinks": an expanding middle cell between two absorbing ends.
pub fn fix_r() -> CombMap {
    let g = GridDomain::line(0.0, 5.0, 5);
    CombMap::explicit(
        g,
        &[
            (0, vec![0]),
            (1, vec![0]),
            (2, vec![1, 2, 3]),
            (3, vec![4]),
            (4, vec![4]),
        ],
    )
    .expect("fixture")
}
