//! Small hand-built graphs shared by tests, examples and the CLI test suite.

use crate::graph::TemporalGraph;
use crate::time::Timestamp;

/// Nine-vertex example timetable. Vertices `v1..v9` are ids `0..8`.
///
/// Three internally disjoint routes from `v1` to `v9`:
/// `v1-v3-v6-v9` (earliest arrival 12 from ready time 3),
/// `v1-v4-v7-v9` (fastest, journey 6) and `v1-v2-v5-v8-v9` with parallel
/// connections on every hop.
pub const NINE_STOP_EDGE_LIST: &str = "\
# nine-vertex example timetable, vertices v1..v9 as 0..8
9 15
0 2 3 1
2 5 5 4
5 8 9 3
0 3 9 3
3 6 12 2
6 8 14 1
0 1 3 2
0 1 3 3
0 1 3 4
1 4 6 3
1 4 7 3
4 7 9 2
4 7 10 3
7 8 11 4
7 8 16 3
";

pub fn nine_stop<T: Timestamp>() -> TemporalGraph<T> {
    TemporalGraph::parse_edge_list(NINE_STOP_EDGE_LIST).expect("fixture parses")
}

/// Edge ids of the named paths on `v1-v2-v5-v8-v9`.
pub mod nine_stop_paths {
    use crate::graph::EdgeId;

    /// `(3,1),(5,4),(9,3)`: earliest arrival path from ready time 3.
    pub const EARLIEST: [EdgeId; 3] = [0, 1, 2];
    /// `(9,3),(12,2),(14,1)`: fastest path.
    pub const FASTEST: [EdgeId; 3] = [3, 4, 5];
    /// `(3,2),(6,3),(9,2),(11,4)`: useful dominating.
    pub const P: [EdgeId; 4] = [6, 9, 11, 13];
    /// `(3,3),(6,3),(9,2),(11,4)`: dominating but not useful.
    pub const Q: [EdgeId; 4] = [7, 9, 11, 13];
    /// `(3,4),(7,3),(10,3),(16,3)`: not dominating.
    pub const R: [EdgeId; 4] = [8, 10, 12, 14];
    /// The static route `v1, v2, v5, v8, v9`.
    pub const ROUTE: [u32; 5] = [0, 1, 4, 7, 8];
}
