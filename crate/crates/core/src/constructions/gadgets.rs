//! Small local modifications: the edge link and the no-factor sites.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{classify, Edge, Graph, Vertex};
use crate::packing::{solve_factor, FactorQuery, Path3};

/// `G'` obtained by subdividing `e1` with `p`, `e2` with `q`, and adding `pq`.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeLink {
    pub graph: Graph,
    pub p: Vertex,
    pub q: Vertex,
}

impl EdgeLink {
    pub fn link(&self) -> Edge {
        Edge::new(self.p, self.q)
    }
}

pub fn gadget_edge_link(g: &Graph, e1: Edge, e2: Edge) -> Result<EdgeLink> {
    if e1 == e2 {
        return Err(Error::invalid("edge link needs two distinct edges"));
    }
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    let base = g.max_id().map_or(0, |m| m.0 + 1);
    let (p, q) = (Vertex(base), Vertex(base + 1));
    let edges = g.edges().filter(|&e| e != e1 && e != e2).chain([
        Edge::new(e1.u(), p),
        Edge::new(p, e1.v()),
        Edge::new(e2.u(), q),
        Edge::new(q, e2.v()),
        Edge::new(p, q),
    ]);
    let graph = Graph::from_parts(g.vertices().chain([p, q]), edges)?;
    Ok(EdgeLink { graph, p, q })
}

/// Where a blocked pair `(L, e)` can be placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum R2Site {
    /// Triangle `vyz`; the third neighbour of `v` is cut off by `e`.
    Triangle { v: Vertex, y: Vertex, z: Vertex },
    /// 4-cycle `abcda`; the third neighbour of `d` is cut off by `e`.
    Square {
        a: Vertex,
        b: Vertex,
        c: Vertex,
        d: Vertex,
    },
}

/// A path `L` and an edge `e` with `(G - e) - L` factor-free, plus the
/// vertex left isolated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct R2Witness {
    pub path: Path3,
    pub edge: Edge,
    pub isolated: Vertex,
}

impl R2Witness {
    pub fn query(&self) -> FactorQuery {
        FactorQuery::new()
            .without_vertices(self.path.vertices())
            .without_edges([self.edge])
    }
}

fn third_neighbour(g: &Graph, v: Vertex, known: [Vertex; 2]) -> Result<Vertex> {
    let rest: Vec<Vertex> = g.neighbors(v).filter(|w| !known.contains(w)).collect();
    match rest[..] {
        [w] => Ok(w),
        _ => Err(Error::invalid(format!(
            "{v} does not have exactly one other neighbour"
        ))),
    }
}

/// Builds the witness at `site` and confirms with the solver that
/// `(G - e) - L` has no Λ-factor.
pub fn gadget_r2(g: &Graph, site: R2Site) -> Result<R2Witness> {
    let report = classify(g);
    if !report.is_cubic_3_connected() {
        return Err(Error::invalid(
            "site search needs a cubic 3-connected graph",
        ));
    }
    let witness = match site {
        R2Site::Triangle { v, y, z } => {
            for w in [v, y, z] {
                g.check_vertex(w)?;
            }
            if !(g.adjacent(v, y) && g.adjacent(v, z) && g.adjacent(y, z)) {
                return Err(Error::invalid(format!("{v}{y}{z} is not a triangle")));
            }
            let x = third_neighbour(g, v, [y, z])?;
            let mut options = Vec::new();
            for (end, mid) in [(y, z), (z, y)] {
                for w in g.neighbors(mid).filter(|&w| w != v && w != end) {
                    options.push(Path3::new(end, mid, w));
                }
            }
            let path = options
                .into_iter()
                .min()
                .ok_or_else(|| Error::invalid("no path through yz avoiding v"))?;
            R2Witness {
                path,
                edge: Edge::new(v, x),
                isolated: v,
            }
        }
        R2Site::Square { a, b, c, d } => {
            for w in [a, b, c, d] {
                g.check_vertex(w)?;
            }
            let cyc = [(a, b), (b, c), (c, d), (d, a)];
            let distinct: std::collections::BTreeSet<Vertex> = [a, b, c, d].into();
            if distinct.len() != 4 || !cyc.iter().all(|&(p, q)| g.adjacent(p, q)) {
                return Err(Error::invalid(format!("{a}{b}{c}{d} is not a 4-cycle")));
            }
            let x = third_neighbour(g, d, [a, c])?;
            if x == b {
                return Err(Error::invalid("4-cycle has a chord at d"));
            }
            R2Witness {
                path: Path3::new(a, b, c),
                edge: Edge::new(x, d),
                isolated: d,
            }
        }
    };
    let residual = witness.query().residual(g)?;
    if residual.degree(witness.isolated) != 0 {
        return Err(Error::Construction(format!(
            "{} is not isolated in (G - e) - L",
            witness.isolated
        )));
    }
    if solve_factor(g, &witness.query())?.is_some() {
        return Err(Error::Construction("(G - e) - L has a Λ-factor".into()));
    }
    Ok(witness)
}

/// Every triangle site (one per apex) and 4-cycle site (one per choice of
/// `d` and direction) of `g`.
pub fn find_r2_sites(g: &Graph) -> Vec<R2Site> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let nb: Vec<Vertex> = g.neighbors(v).collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.adjacent(nb[i], nb[j]) {
                    out.push(R2Site::Triangle {
                        v,
                        y: nb[i],
                        z: nb[j],
                    });
                }
            }
        }
    }
    for cyc in g.cycles().into_iter().filter(|c| c.len() == 4) {
        for k in 0..4 {
            let d = cyc[k];
            let a = cyc[(k + 1) % 4];
            let b = cyc[(k + 2) % 4];
            let c = cyc[(k + 3) % 4];
            out.push(R2Site::Square { a, b, c, d });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn edge_link_on_prism() {
        let g = named::prism();
        let l = gadget_edge_link(&g, Edge::new(0, 1), Edge::new(4, 5)).unwrap();
        assert_eq!(l.graph.vertex_count(), 8);
        assert!(classify(&l.graph).is_cubic_3_connected());
        let a = g.delete_edges(&[Edge::new(0, 1), Edge::new(4, 5)]).unwrap();
        let b = l.graph.delete_vertices(&[l.p, l.q]).unwrap();
        assert_eq!(a, b);
        assert!(gadget_edge_link(&g, Edge::new(0, 1), Edge::new(1, 0)).is_err());
    }

    #[test]
    fn r2_on_prism_sites() {
        let g = named::prism();
        let sites = find_r2_sites(&g);
        assert_eq!(sites.len(), 6 + 3 * 4);
        for site in sites {
            let w = gadget_r2(&g, site).unwrap();
            let residual = w.query().residual(&g).unwrap();
            assert_eq!(residual.degree(w.isolated), 0);
        }
    }

    #[test]
    fn r2_rejects_non_sites() {
        let g = named::cube();
        assert!(gadget_r2(
            &g,
            R2Site::Triangle {
                v: Vertex(0),
                y: Vertex(1),
                z: Vertex(2)
            }
        )
        .is_err());
    }
}
