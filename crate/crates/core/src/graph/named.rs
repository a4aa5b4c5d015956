//! Small named graphs used throughout the tests and examples.

use super::Graph;

pub fn k4() -> Graph {
    Graph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Parts `{0,1,2}` and `{3,4,5}`.
pub fn k33() -> Graph {
    let mut pairs = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            pairs.push((a, b));
        }
    }
    Graph::from_pairs(6, &pairs).unwrap()
}

/// Triangles `012` and `345` joined by `03, 14, 25`.
pub fn prism() -> Graph {
    Graph::from_pairs(
        6,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_pairs(10, &pairs).unwrap()
}

/// The 3-cube `Q3` on bit-vectors `0..8`.
pub fn cube() -> Graph {
    let mut pairs = Vec::new();
    for a in 0u32..8 {
        for bit in 0..3 {
            let b = a ^ (1 << bit);
            if a < b {
                pairs.push((a, b));
            }
        }
    }
    Graph::from_pairs(8, &pairs).unwrap()
}

pub fn cycle(n: u32) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_pairs(n, &pairs).unwrap()
}

pub fn path(n: u32) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_pairs(n, &pairs).unwrap()
}

pub fn triangle() -> Graph {
    cycle(3)
}
