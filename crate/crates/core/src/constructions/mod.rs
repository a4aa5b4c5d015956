//! Graph constructions: splicing, brick compositions over a cubic frame,
//! the `R_s` family, and the small gadgets used to move Λ-factor
//! properties from one graph to another.

mod compose;
mod gadgets;
mod recipe;
mod rfamily;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex, VertexSet};

pub use compose::{
    compose, h_compose, h_frame, triangle_expand, y_compose, Composition, Orientation, YComposition,
};
pub use gadgets::{find_r2_sites, gadget_edge_link, gadget_r2, EdgeLink, R2Site, R2Witness};
pub use recipe::{resolve_graph, BrickSpec, FrameBrick, Recipe};
pub use rfamily::{build_r, RFamily};

/// A graph with a distinguished degree-3 apex and an ordering
/// `(a_1, a_2, a_3)` of the apex's neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedGraph {
    graph: Graph,
    apex: Vertex,
    attachments: [Vertex; 3],
}

impl PointedGraph {
    pub fn new(graph: Graph, apex: Vertex, attachments: [Vertex; 3]) -> Result<PointedGraph> {
        graph.check_vertex(apex)?;
        if graph.degree(apex) != 3 {
            return Err(Error::invalid(format!(
                "apex {apex} has degree {}, not 3",
                graph.degree(apex)
            )));
        }
        let given: VertexSet = attachments.iter().copied().collect();
        if given != graph.neighbor_set(apex) {
            return Err(Error::invalid(format!(
                "attachments {attachments:?} are not the neighbours of {apex}"
            )));
        }
        Ok(PointedGraph {
            graph,
            apex,
            attachments,
        })
    }

    /// Attachments in id order.
    pub fn at(graph: Graph, apex: Vertex) -> Result<PointedGraph> {
        graph.check_vertex(apex)?;
        let nb: Vec<Vertex> = graph.neighbors(apex).collect();
        let order: [Vertex; 3] = nb
            .try_into()
            .map_err(|_| Error::invalid(format!("apex {apex} does not have degree 3")))?;
        PointedGraph::new(graph, apex, order)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn apex(&self) -> Vertex {
        self.apex
    }

    pub fn attachments(&self) -> [Vertex; 3] {
        self.attachments
    }

    /// Same graph and apex with the attachments permuted: entry `i` of
    /// `perm` names which old attachment becomes the `i`-th.
    pub fn reordered(&self, perm: [usize; 3]) -> Result<PointedGraph> {
        let a = self.attachments;
        PointedGraph::new(
            self.graph.clone(),
            self.apex,
            [a[perm[0]], a[perm[1]], a[perm[2]]],
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `A - a`.
    pub fn interior(&self) -> Graph {
        self.graph
            .delete_vertices(&[self.apex])
            .expect("apex is a vertex")
    }

    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Result<PointedGraph> {
        PointedGraph::new(
            self.graph.relabel(&f)?,
            f(self.apex),
            self.attachments.map(&f),
        )
    }

    /// `K4` pointed at vertex 0.
    pub fn k4() -> PointedGraph {
        PointedGraph::at(crate::graph::named::k4(), Vertex(0)).unwrap()
    }

    /// The triangular prism pointed at vertex 0.
    pub fn prism() -> PointedGraph {
        PointedGraph::at(crate::graph::named::prism(), Vertex(0)).unwrap()
    }
}

/// A brick of a composition. `Identity` keeps the frame vertex itself; it
/// stands in for the two-vertex triple-edge graph, which is not simple.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Brick {
    #[default]
    Identity,
    Pointed(PointedGraph),
}

impl Brick {
    /// `v(A)`; the identity brick counts as its two-vertex multigraph.
    pub fn vertex_count(&self) -> usize {
        match self {
            Brick::Identity => 2,
            Brick::Pointed(p) => p.vertex_count(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Brick::Identity)
    }
}

impl From<PointedGraph> for Brick {
    fn from(p: PointedGraph) -> Self {
        Brick::Pointed(p)
    }
}

/// `Aa σ bB` together with the side of every vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Splice {
    pub graph: Graph,
    /// `V(A - a)`.
    pub a_side: VertexSet,
    /// `V(B - b)` after any relabelling.
    pub b_side: VertexSet,
    /// `a_i b_i` for `i = 1, 2, 3`.
    pub seam: [Edge; 3],
}

/// Replaces `b` in `B` by `A - a`, joining `a_i` to `b_i`. `B` is shifted
/// above `A`'s ids when the two share ids.
pub fn splice(a: &PointedGraph, b: &PointedGraph) -> Result<Splice> {
    let a_ids = a.graph.vertex_set();
    let clash = b.graph.vertices().any(|v| a_ids.contains(&v));
    let b = if clash {
        let shift = a.graph.max_id().map_or(0, |m| m.0 + 1);
        b.relabel(|v| Vertex(v.0 + shift))?
    } else {
        b.clone()
    };
    let seam = [0, 1, 2].map(|i| Edge::new(a.attachments[i], b.attachments[i]));
    let a_side: VertexSet = a_ids.iter().copied().filter(|&v| v != a.apex).collect();
    let b_side: VertexSet = b.graph.vertices().filter(|&v| v != b.apex).collect();
    let graph = Graph::from_parts(
        a_side.iter().chain(&b_side).copied(),
        a.graph
            .edges()
            .filter(|e| !e.touches(a.apex))
            .chain(b.graph.edges().filter(|e| !e.touches(b.apex)))
            .chain(seam),
    )?;
    Ok(Splice {
        graph,
        a_side,
        b_side,
        seam,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_key, classify, named};

    #[test]
    fn pointed_validation() {
        assert!(
            PointedGraph::new(named::k4(), Vertex(0), [Vertex(1), Vertex(2), Vertex(2)]).is_err()
        );
        assert!(PointedGraph::at(named::path(3), Vertex(1)).is_err());
        let p = PointedGraph::k4().reordered([2, 0, 1]).unwrap();
        assert_eq!(p.attachments(), [Vertex(3), Vertex(1), Vertex(2)]);
    }

    #[test]
    fn k4_splice_is_prism() {
        let s = splice(&PointedGraph::k4(), &PointedGraph::k4()).unwrap();
        assert_eq!(s.graph.vertex_count(), 6);
        assert_eq!(canonical_key(&s.graph), canonical_key(&named::prism()));
        assert!(classify(&s.graph).is_cubic_3_connected());
    }

    #[test]
    fn splice_counts_and_connectivity() {
        let parts = [
            PointedGraph::k4(),
            PointedGraph::prism(),
            PointedGraph::at(named::petersen(), Vertex(3)).unwrap(),
        ];
        for a in &parts {
            for b in &parts {
                let s = splice(a, b).unwrap();
                assert_eq!(
                    s.graph.vertex_count(),
                    a.vertex_count() + b.vertex_count() - 2
                );
                assert!(classify(&s.graph).is_cubic_3_connected());
                assert_eq!(s.a_side.len() + s.b_side.len(), s.graph.vertex_count());
            }
        }
    }

    #[test]
    fn splice_of_bipartite_is_bipartite() {
        let k33 = PointedGraph::at(named::k33(), Vertex(0)).unwrap();
        let cube = PointedGraph::at(named::cube(), Vertex(0)).unwrap();
        let s = splice(&k33, &cube).unwrap();
        assert!(classify(&s.graph).is_bipartite);
    }
}
