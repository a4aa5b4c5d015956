//! Brick compositions `B{(A^v, a^v)}` over a cubic frame.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{named, Edge, EdgeSet, Graph, Vertex, VertexSet};

use super::{Brick, PointedGraph};

/// Entry `i` names the frame neighbour that receives attachment `i`.
pub type Orientation = [Vertex; 3];

/// A frame, its bricks, the composed graph, and the bookkeeping that ties
/// them together.
#[derive(Debug, Clone)]
pub struct Composition {
    pub frame: Graph,
    pub bricks: BTreeMap<Vertex, Brick>,
    pub orientations: BTreeMap<Vertex, Orientation>,
    pub result: Graph,
    /// `α`: frame edge to seam edge of the result.
    pub alpha: BTreeMap<Edge, Edge>,
    /// `V(A_v)` inside the result, per frame vertex.
    pub interiors: BTreeMap<Vertex, VertexSet>,
    owner: BTreeMap<Vertex, Vertex>,
    embeddings: BTreeMap<Vertex, BTreeMap<Vertex, Vertex>>,
}

impl Composition {
    /// Frame vertex whose interior holds `x`.
    pub fn owner(&self, x: Vertex) -> Option<Vertex> {
        self.owner.get(&x).copied()
    }

    pub fn brick(&self, u: Vertex) -> &Brick {
        &self.bricks[&u]
    }

    /// Result id of a brick vertex (`None` for the apex).
    pub fn embed(&self, u: Vertex, x: Vertex) -> Option<Vertex> {
        match self.embeddings.get(&u) {
            Some(m) => m.get(&x).copied(),
            None => (x == u).then_some(u),
        }
    }

    /// End of `α(uv)` inside `A_u`.
    pub fn seam_end(&self, u: Vertex, v: Vertex) -> Vertex {
        let e = self.alpha[&Edge::new(u, v)];
        if self.interiors[&u].contains(&e.u()) {
            e.u()
        } else {
            e.v()
        }
    }

    /// `E'(G)`.
    pub fn seam_edges(&self) -> EdgeSet {
        self.alpha.values().copied().collect()
    }

    /// `α^{-1}` on a seam edge.
    pub fn frame_edge(&self, e: Edge) -> Option<Edge> {
        let (a, b) = (self.owner(e.u())?, self.owner(e.v())?);
        if a == b {
            return None;
        }
        let f = Edge::new(a, b);
        (self.alpha.get(&f) == Some(&e)).then_some(f)
    }

    /// `D^v = D(A_v, G)`.
    pub fn boundary_of(&self, u: Vertex) -> EdgeSet {
        self.result.boundary(&self.interiors[&u])
    }

    /// `G[V(A_v)]`.
    pub fn interior_graph(&self, u: Vertex) -> Graph {
        self.result
            .induced(&self.interiors[&u])
            .expect("interiors are vertex sets of the result")
    }

    /// Checks the α bijection and the edge partition.
    pub fn validate(&self) -> Result<()> {
        let seams = self.seam_edges();
        if seams.len() != self.frame.edge_count() || self.alpha.len() != seams.len() {
            return Err(Error::Construction("alpha is not a bijection".into()));
        }
        for (f, e) in &self.alpha {
            let [u, v] = f.ends();
            let ok = (self.interiors[&u].contains(&e.u()) && self.interiors[&v].contains(&e.v()))
                || (self.interiors[&u].contains(&e.v()) && self.interiors[&v].contains(&e.u()));
            if !ok {
                return Err(Error::Construction(format!(
                    "alpha({f:?}) = {e:?} does not join the two interiors"
                )));
            }
        }
        let inner: usize = self
            .interiors
            .keys()
            .map(|&u| self.interior_graph(u).edge_count())
            .sum();
        if inner + seams.len() != self.result.edge_count() {
            return Err(Error::Construction(
                "interior and seam edges do not partition E(G)".into(),
            ));
        }
        Ok(())
    }
}

fn default_orientation(frame: &Graph, u: Vertex) -> Orientation {
    let nb: Vec<Vertex> = frame.neighbors(u).collect();
    [nb[0], nb[1], nb[2]]
}

/// `B{(A^v, a^v)}`. Missing bricks are Identity; missing orientations send
/// attachment `i` to the `i`-th smallest frame neighbour. Fresh vertex ids
/// start above the frame's largest id.
pub fn compose(
    frame: &Graph,
    bricks: &BTreeMap<Vertex, Brick>,
    orientations: &BTreeMap<Vertex, Orientation>,
) -> Result<Composition> {
    if !frame.is_cubic() {
        return Err(Error::invalid("frame is not cubic"));
    }
    for &u in bricks.keys().chain(orientations.keys()) {
        frame.check_vertex(u)?;
    }
    let mut next = frame.max_id().map_or(0, |m| m.0 + 1);
    let mut all_bricks = BTreeMap::new();
    let mut orient = BTreeMap::new();
    let mut interiors = BTreeMap::new();
    let mut owner = BTreeMap::new();
    let mut embeddings = BTreeMap::new();
    let mut edges = Vec::new();
    // attachment of u facing frame neighbour w, as a result id
    let mut port: BTreeMap<(Vertex, Vertex), Vertex> = BTreeMap::new();

    for u in frame.vertices() {
        let brick = bricks.get(&u).cloned().unwrap_or_default();
        let o = orientations
            .get(&u)
            .copied()
            .unwrap_or_else(|| default_orientation(frame, u));
        let given: VertexSet = o.iter().copied().collect();
        if given != frame.neighbor_set(u) {
            return Err(Error::invalid(format!(
                "orientation {o:?} at {u} is not a bijection onto its frame neighbours"
            )));
        }
        match &brick {
            Brick::Identity => {
                interiors.insert(u, VertexSet::from([u]));
                owner.insert(u, u);
                for w in o {
                    port.insert((u, w), u);
                }
            }
            Brick::Pointed(p) => {
                let mut map = BTreeMap::new();
                for x in p.graph().vertices().filter(|&x| x != p.apex()) {
                    map.insert(x, Vertex(next));
                    next += 1;
                }
                for e in p.graph().edges().filter(|e| !e.touches(p.apex())) {
                    edges.push(Edge::new(map[&e.u()], map[&e.v()]));
                }
                for (i, w) in o.iter().enumerate() {
                    port.insert((u, *w), map[&p.attachments()[i]]);
                }
                let inside: VertexSet = map.values().copied().collect();
                for &x in &inside {
                    owner.insert(x, u);
                }
                interiors.insert(u, inside);
                embeddings.insert(u, map);
            }
        }
        all_bricks.insert(u, brick);
        orient.insert(u, o);
    }

    let mut alpha = BTreeMap::new();
    for f in frame.edges() {
        let e = Edge::new(port[&(f.u(), f.v())], port[&(f.v(), f.u())]);
        alpha.insert(f, e);
        edges.push(e);
    }
    let result = Graph::from_parts(owner.keys().copied(), edges)?;
    let c = Composition {
        frame: frame.clone(),
        bricks: all_bricks,
        orientations: orient,
        result,
        alpha,
        interiors,
        owner,
        embeddings,
    };
    c.validate()?;
    Ok(c)
}

/// `B{K4, x}`: every frame vertex replaced by a triangle.
pub fn triangle_expand(frame: &Graph) -> Result<Composition> {
    let bricks = frame
        .vertices()
        .map(|u| (u, Brick::Pointed(PointedGraph::k4())))
        .collect();
    compose(frame, &bricks, &BTreeMap::new())
}

/// `Y(A^1, a^1; A^2, a^2; A^3, a^3)` with its hub vertices and the
/// boundaries `D^i`.
#[derive(Debug, Clone)]
pub struct YComposition {
    pub composition: Composition,
    /// `z_1, z_2, z_3`.
    pub hubs: [Vertex; 3],
    /// `D^i = D(A^i - a^i)`.
    pub boundaries: [EdgeSet; 3],
}

impl YComposition {
    pub fn graph(&self) -> &Graph {
        &self.composition.result
    }

    /// `(Z, z)` when the third brick is Identity: the apex is the vertex
    /// left in its place and the attachments are the hubs in order.
    pub fn as_brick(&self) -> Result<PointedGraph> {
        let x3 = Vertex(2);
        if !self.composition.bricks[&x3].is_identity() {
            return Err(Error::invalid("third brick is not Identity"));
        }
        PointedGraph::new(self.graph().clone(), x3, self.hubs)
    }

    /// `K_i = D(A_i, Z)` for the non-identity bricks among the first two.
    pub fn cuts(&self) -> Vec<EdgeSet> {
        (0..2)
            .filter(|&i| !self.composition.bricks[&Vertex(i as u32)].is_identity())
            .map(|i| self.boundaries[i].clone())
            .collect()
    }
}

/// Frame `K_{3,3}` with sides `{0,1,2}` and hubs `{3,4,5}`; brick `i` sits
/// on vertex `i` and attachment `j` meets hub `3 + j`.
pub fn y_compose(bricks: [Brick; 3]) -> Result<YComposition> {
    let frame = named::k33();
    let hubs = [Vertex(3), Vertex(4), Vertex(5)];
    let mut map = BTreeMap::new();
    let mut orient = BTreeMap::new();
    for (i, b) in bricks.into_iter().enumerate() {
        let x = Vertex(i as u32);
        map.insert(x, b);
        orient.insert(x, hubs);
    }
    let composition = compose(&frame, &map, &orient)?;
    let boundaries = [0u32, 1, 2].map(|i| composition.boundary_of(Vertex(i)));
    Ok(YComposition {
        composition,
        hubs,
        boundaries,
    })
}

/// The cubic frame `H`: three copies of the tree with edges `xy, b1x,
/// b2x, b3y, b4y`, with each `b^j` identified across copies. Vertices
/// `x_i = i`, `y_i = 3 + i`, `z^j = 5 + j`.
pub fn h_frame() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..3 {
        pairs.push((i, 3 + i));
        pairs.push((i, 6));
        pairs.push((i, 7));
        pairs.push((3 + i, 8));
        pairs.push((3 + i, 9));
    }
    Graph::from_pairs(10, &pairs).expect("static frame")
}

/// `H(A^1, a^1; ...; A^4, a^4)`: brick `j` replaces `z^j`.
pub fn h_compose(bricks: [Brick; 4]) -> Result<Composition> {
    let frame = h_frame();
    let map = bricks
        .into_iter()
        .enumerate()
        .map(|(j, b)| (Vertex(6 + j as u32), b))
        .collect();
    compose(&frame, &map, &BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_key, classify};

    fn k4() -> Brick {
        PointedGraph::k4().into()
    }

    fn prism() -> Brick {
        PointedGraph::prism().into()
    }

    #[test]
    fn identity_composition_is_frame() {
        let b = named::petersen();
        let c = compose(&b, &BTreeMap::new(), &BTreeMap::new()).unwrap();
        assert_eq!(c.result, b);
        assert!(c.alpha.iter().all(|(f, e)| f == e));
    }

    #[test]
    fn triangle_expansion_of_k33() {
        let c = triangle_expand(&named::k33()).unwrap();
        assert_eq!(c.result.vertex_count(), 18);
        let r = classify(&c.result);
        assert!(r.is_cubic_3_connected());
        assert!(c.result.has_triangle());
        for u in c.frame.vertices() {
            assert_eq!(c.boundary_of(u).len(), 3);
        }
    }

    #[test]
    fn vertex_count_formula() {
        let mut bricks = BTreeMap::new();
        bricks.insert(Vertex(0), prism());
        bricks.insert(Vertex(4), k4());
        bricks.insert(
            Vertex(5),
            PointedGraph::at(named::petersen(), Vertex(2))
                .unwrap()
                .into(),
        );
        let c = compose(&named::prism(), &bricks, &BTreeMap::new()).unwrap();
        let expected: usize = c
            .frame
            .vertices()
            .map(|u| match c.brick(u) {
                Brick::Identity => 1,
                Brick::Pointed(p) => p.vertex_count() - 1,
            })
            .sum();
        assert_eq!(c.result.vertex_count(), expected);
        assert!(classify(&c.result).is_cubic_3_connected());
    }

    #[test]
    fn orientation_is_respected() {
        let frame = named::k4();
        let mut bricks = BTreeMap::new();
        bricks.insert(Vertex(0), prism());
        let mut orient = BTreeMap::new();
        orient.insert(Vertex(0), [Vertex(3), Vertex(1), Vertex(2)]);
        let c = compose(&frame, &bricks, &orient).unwrap();
        let att = PointedGraph::prism().attachments();
        assert_eq!(
            c.seam_end(Vertex(0), Vertex(3)),
            c.embed(Vertex(0), att[0]).unwrap()
        );
        assert_eq!(
            c.seam_end(Vertex(0), Vertex(1)),
            c.embed(Vertex(0), att[1]).unwrap()
        );
        let mut bad = BTreeMap::new();
        bad.insert(Vertex(0), [Vertex(1), Vertex(1), Vertex(2)]);
        assert!(compose(&frame, &bricks, &bad).is_err());
        assert!(compose(&named::path(4), &BTreeMap::new(), &BTreeMap::new()).is_err());
    }

    #[test]
    fn y_composition_counts() {
        let y = y_compose([prism(), prism(), Brick::Identity]).unwrap();
        assert_eq!(y.graph().vertex_count(), 14);
        assert_eq!(y.graph().vertex_count() % 6, 2);
        assert!(classify(y.graph()).is_cubic_3_connected());
        let z = y.as_brick().unwrap();
        assert_eq!(z.attachments(), y.hubs);
        assert_eq!(y.cuts().len(), 2);
        assert!(y.cuts().iter().all(|k| k.len() == 3));

        let y = y_compose([k4(), k4(), Brick::Identity]).unwrap();
        assert_eq!(y.graph().vertex_count(), 10);
        assert_eq!(y.graph().vertex_count() % 6, 4);
        assert!(classify(y.graph()).is_cubic_3_connected());
    }

    #[test]
    fn y_of_bipartite_is_bipartite() {
        let k33: Brick = PointedGraph::at(named::k33(), Vertex(0)).unwrap().into();
        let cube: Brick = PointedGraph::at(named::cube(), Vertex(0)).unwrap().into();
        let y = y_compose([k33.clone(), cube, k33]).unwrap();
        let r = classify(y.graph());
        assert!(r.is_bipartite && r.is_cubic_3_connected());
    }

    #[test]
    fn h_frame_shape() {
        let h = h_frame();
        assert_eq!(h.vertex_count(), 10);
        assert!(classify(&h).is_cubic_3_connected());
        let c = h_compose([prism(), prism(), prism(), Brick::Identity]).unwrap();
        assert_eq!(c.result.vertex_count(), 6 + 3 * 5 + 1);
        let eight = crate::constructions::splice(&PointedGraph::prism(), &PointedGraph::k4())
            .unwrap()
            .graph;
        let eight: Brick = PointedGraph::at(eight.compact(), Vertex(0)).unwrap().into();
        let c = h_compose([prism(), prism(), prism(), eight]).unwrap();
        assert_eq!(c.result.vertex_count(), 28);
        assert_eq!(c.result.vertex_count() % 6, 4);
        assert!(classify(&c.result).is_cubic_3_connected());
    }

    #[test]
    fn k4_bricks_on_k4_frame_match_triangle_expansion() {
        let a = triangle_expand(&named::k4()).unwrap();
        let b = compose(
            &named::k4(),
            &named::k4().vertices().map(|u| (u, k4())).collect(),
            &BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(canonical_key(&a.result), canonical_key(&b.result));
        assert_eq!(a.result.vertex_count(), 12);
    }
}
