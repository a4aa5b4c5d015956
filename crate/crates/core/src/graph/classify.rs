use serde::{Deserialize, Serialize};

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub is_cubic: bool,
    /// Largest `k <= 3` such that the graph is `k`-connected.
    pub connectivity_floor: u8,
    pub is_bipartite: bool,
    pub v_mod_6: u8,
    pub component_count: usize,
}

impl StructureReport {
    pub fn is_cubic_3_connected(&self) -> bool {
        self.is_cubic && self.connectivity_floor == 3
    }
}

pub fn classify(g: &Graph) -> StructureReport {
    StructureReport {
        is_cubic: g.vertex_count() > 0 && g.is_cubic(),
        connectivity_floor: connectivity_floor(g),
        is_bipartite: is_bipartite(g),
        v_mod_6: (g.vertex_count() % 6) as u8,
        component_count: g.component_count(),
    }
}

fn connected_without(adj: &[Vec<usize>], removed: &[bool]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&i| !removed[i]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == removed.iter().filter(|r| !**r).count()
}

/// Vertex connectivity, capped at 3. Exhaustive over separators of size
/// at most 2; a graph on `n` vertices is at most `(n-1)`-connected.
pub fn connectivity_floor(g: &Graph) -> u8 {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let adj = g.dense_adj();
    let mut removed = vec![false; n];
    if !connected_without(adj, &removed) {
        return 0;
    }
    let cap = (n - 1).min(3) as u8;
    if cap <= 1 {
        return cap;
    }
    for a in 0..n {
        removed[a] = true;
        if !connected_without(adj, &removed) {
            return 1;
        }
        removed[a] = false;
    }
    if cap == 2 {
        return 2;
    }
    for a in 0..n {
        removed[a] = true;
        for b in a + 1..n {
            removed[b] = true;
            let ok = connected_without(adj, &removed);
            removed[b] = false;
            if !ok {
                return 2;
            }
        }
        removed[a] = false;
    }
    3
}

pub fn is_bipartite(g: &Graph) -> bool {
    let adj = g.dense_adj();
    let mut color: Vec<Option<bool>> = vec![None; adj.len()];
    for s in 0..adj.len() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let c = color[x].unwrap();
            for &y in &adj[x] {
                match color[y] {
                    None => {
                        color[y] = Some(!c);
                        stack.push(y);
                    }
                    Some(d) if d == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Vertex};

    #[test]
    fn k4_report() {
        let r = classify(&named::k4());
        assert!(r.is_cubic);
        assert_eq!(r.connectivity_floor, 3);
        assert!(!r.is_bipartite);
        assert_eq!(r.v_mod_6, 4);
    }

    #[test]
    fn k33_report() {
        let r = classify(&named::k33());
        assert!(r.is_cubic && r.is_bipartite);
        assert_eq!(r.connectivity_floor, 3);
        assert_eq!(r.v_mod_6, 0);
    }

    #[test]
    fn prism_report() {
        let r = classify(&named::prism());
        assert!(r.is_cubic && !r.is_bipartite);
        assert_eq!(r.connectivity_floor, 3);
        assert_eq!(r.v_mod_6, 0);
    }

    #[test]
    fn low_connectivity() {
        assert_eq!(connectivity_floor(&named::cycle(6)), 2);
        assert_eq!(connectivity_floor(&named::path(4)), 1);
        assert_eq!(connectivity_floor(&named::triangle()), 2);
        let two = Graph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let r = classify(&two);
        assert_eq!(r.connectivity_floor, 0);
        assert_eq!(r.component_count, 2);
        // two K4's sharing nothing but joined by two edges: 2-connected only
        let mut pairs = vec![];
        for (a, b) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
            pairs.push((a, b));
            pairs.push((a + 4, b + 4));
        }
        pairs.push((0, 4));
        pairs.push((3, 7));
        let g = Graph::from_pairs(8, &pairs).unwrap();
        assert!(g.is_cubic());
        assert_eq!(connectivity_floor(&g), 2);
    }

    #[test]
    fn relabel_invariant() {
        let g = named::petersen();
        let h = g.relabel(|v| Vertex(100 - v.0)).unwrap();
        assert_eq!(classify(&g), classify(&h));
    }
}
