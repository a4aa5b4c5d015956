//! The family `R_s`: a `9s`-cycle cut into consecutive triples plus `3s`
//! hub vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, Vertex, VertexSet};
use crate::packing::Path3;

#[derive(Debug, Clone, Serialize)]
pub struct RFamily {
    pub s: usize,
    pub graph: Graph,
    /// `z_1^1, z_1^2, z_1^3, z_2^1, ...` in cycle order.
    pub cycle: Vec<Vertex>,
    /// `x_1^1, x_1^2, x_1^3, x_2^1, ...`.
    pub hubs: Vec<Vertex>,
    /// `L_k = z_k^1 z_k^2 z_k^3`.
    pub l_paths: Vec<Path3>,
    /// `X_i`.
    pub x_sets: Vec<[Vertex; 3]>,
    /// `V(Y_i)`: `X_i` with the triples `L_i, L_{i+s}, L_{i+2s}`.
    pub y_sets: Vec<VertexSet>,
    /// `K^i = D(Y_i)`; empty for `s = 1`.
    pub k_blockades: Vec<EdgeSet>,
}

impl RFamily {
    /// `z_i^j`, 1-based.
    pub fn z(&self, i: usize, j: usize) -> Vertex {
        self.cycle[(i - 1) * 3 + (j - 1)]
    }

    /// `x_i^j`, 1-based.
    pub fn x(&self, i: usize, j: usize) -> Vertex {
        self.hubs[(i - 1) * 3 + (j - 1)]
    }

    /// `L_k`, 1-based.
    pub fn l(&self, k: usize) -> Path3 {
        self.l_paths[k - 1]
    }

    /// The pairs `{L, L'}` drawn from one group `{L_i, L_{i+s}, L_{i+2s}}`.
    pub fn blocking_pairs(&self) -> Vec<(Path3, Path3)> {
        let s = self.s;
        let mut out = Vec::new();
        for i in 1..=s {
            let group = [self.l(i), self.l(i + s), self.l(i + 2 * s)];
            for a in 0..3 {
                for b in a + 1..3 {
                    out.push((group[a], group[b]));
                }
            }
        }
        out
    }
}

pub fn build_r(s: usize) -> Result<RFamily> {
    if s < 1 {
        return Err(Error::invalid("R_s needs s >= 1"));
    }
    let n_cycle = 9 * s;
    let z = |i: usize, j: usize| Vertex(((i - 1) * 3 + (j - 1)) as u32);
    let x = |i: usize, j: usize| Vertex((n_cycle + (i - 1) * 3 + (j - 1)) as u32);
    let mut edges = Vec::new();
    for k in 0..n_cycle {
        edges.push(Edge::new(k as u32, ((k + 1) % n_cycle) as u32));
    }
    for i in 1..=s {
        for j in 1..=3 {
            for t in [i, i + s, i + 2 * s] {
                edges.push(Edge::new(x(i, j), z(t, j)));
            }
        }
    }
    let graph = Graph::from_parts((0..12 * s as u32).map(Vertex), edges)?;
    let cycle: Vec<Vertex> = (0..n_cycle as u32).map(Vertex).collect();
    let hubs: Vec<Vertex> = (n_cycle as u32..12 * s as u32).map(Vertex).collect();
    let l_paths: Vec<Path3> = (1..=3 * s)
        .map(|k| Path3::new(z(k, 1), z(k, 2), z(k, 3)))
        .collect();
    let x_sets: Vec<[Vertex; 3]> = (1..=s).map(|i| [x(i, 1), x(i, 2), x(i, 3)]).collect();
    let y_sets: Vec<VertexSet> = (1..=s)
        .map(|i| {
            let mut y: VertexSet = x_sets[i - 1].iter().copied().collect();
            for t in [i, i + s, i + 2 * s] {
                y.extend(l_paths[t - 1].vertices());
            }
            y
        })
        .collect();
    let k_blockades = if s >= 2 {
        y_sets.iter().map(|y| graph.boundary(y)).collect()
    } else {
        Vec::new()
    };
    Ok(RFamily {
        s,
        graph,
        cycle,
        hubs,
        l_paths,
        x_sets,
        y_sets,
        k_blockades,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify;

    #[test]
    fn sizes() {
        for s in 1..=3 {
            let r = build_r(s).unwrap();
            assert_eq!(r.graph.vertex_count(), 12 * s);
            assert_eq!(r.graph.edge_count(), 18 * s);
            assert!(r.graph.is_cubic());
            assert_eq!(r.blocking_pairs().len(), 3 * s);
        }
        assert!(build_r(0).is_err());
    }

    #[test]
    fn hub_neighbourhoods() {
        let r = build_r(2).unwrap();
        for i in 1..=2 {
            for j in 1..=3 {
                let want: VertexSet = [r.z(i, j), r.z(i + 2, j), r.z(i + 4, j)].into();
                assert_eq!(r.graph.neighbor_set(r.x(i, j)), want);
            }
        }
    }

    #[test]
    fn l_paths_partition_cycle() {
        let r = build_r(3).unwrap();
        let mut seen = VertexSet::new();
        for l in &r.l_paths {
            assert!(l.is_in(&r.graph));
            for v in l.vertices() {
                assert!(seen.insert(v));
            }
        }
        assert_eq!(seen, r.cycle.iter().copied().collect());
    }

    #[test]
    fn k_blockades_are_matching_cuts() {
        let r = build_r(2).unwrap();
        assert!(classify(&r.graph).is_cubic_3_connected());
        for k in &r.k_blockades {
            assert_eq!(k.len(), 6);
            let ends: VertexSet = k.iter().flat_map(|e| e.ends()).collect();
            assert_eq!(ends.len(), 12);
            assert!(!r.graph.delete_edges(k).unwrap().is_connected());
        }
    }
}
