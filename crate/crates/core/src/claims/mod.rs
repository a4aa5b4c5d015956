//! The nineteen per-graph claims, case labels for factors of spliced
//! graphs, auxiliary property checks, corpus generation and sweeps.

mod corpus;
mod cut;
mod properties;
mod sweep;

pub use corpus::{edge_link_children, gen_corpus, read_corpus, write_corpus};
pub use cut::{classify_cut_factor, CutCase};
pub use properties::{check_properties, PropertyCheck, PropertyReport};
pub use sweep::{sweep, ClaimReport, SweepReport, SweepSummary};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{classify, Edge, EdgeSet, Graph, Vertex};
use crate::packing::{solve_factor, FactorQuery};
use crate::structure::{cut_sides, five_paths_centred, four_paths_inner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimId {
    Z1,
    Z2,
    Z3,
    Z4,
    Z5,
    Z6,
    Z7,
    Z8,
    Z9,
    T1,
    T2,
    T3,
    T4,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl ClaimId {
    pub const ALL: [ClaimId; 19] = [
        ClaimId::Z1,
        ClaimId::Z2,
        ClaimId::Z3,
        ClaimId::Z4,
        ClaimId::Z5,
        ClaimId::Z6,
        ClaimId::Z7,
        ClaimId::Z8,
        ClaimId::Z9,
        ClaimId::T1,
        ClaimId::T2,
        ClaimId::T3,
        ClaimId::T4,
        ClaimId::F1,
        ClaimId::F2,
        ClaimId::F3,
        ClaimId::F4,
        ClaimId::F5,
        ClaimId::F6,
    ];

    /// `v(G) mod 6` the claim speaks about.
    pub fn residue(self) -> usize {
        use ClaimId::*;
        match self {
            Z1 | Z2 | Z3 | Z4 | Z5 | Z6 | Z7 | Z8 | Z9 => 0,
            T1 | T2 | T3 | T4 => 2,
            F1 | F2 | F3 | F4 | F5 | F6 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        use ClaimId::*;
        match self {
            Z1 => "z1",
            Z2 => "z2",
            Z3 => "z3",
            Z4 => "z4",
            Z5 => "z5",
            Z6 => "z6",
            Z7 => "z7",
            Z8 => "z8",
            Z9 => "z9",
            T1 => "t1",
            T2 => "t2",
            T3 => "t3",
            T4 => "t4",
            F1 => "f1",
            F2 => "f2",
            F3 => "f3",
            F4 => "f4",
            F5 => "f5",
            F6 => "f6",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClaimId> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown claim {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

/// The universally quantified object a claim was evaluated at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantified {
    Graph,
    Vertex {
        v: Vertex,
    },
    Edge {
        edge: Edge,
    },
    /// Ordered adjacent pair.
    Arc {
        x: Vertex,
        y: Vertex,
    },
    EdgePair {
        edges: [Edge; 2],
    },
    Path {
        path: Vec<Vertex>,
    },
    VertexEdge {
        v: Vertex,
        edge: Edge,
    },
    CutSubset {
        cut: EdgeSet,
        subset: EdgeSet,
    },
}

/// At an object where the claim needs `required` of `candidates` queries
/// to have a Λ-factor, the queries that have none. Enough of them fail
/// that the requirement cannot be met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub object: Quantified,
    pub candidates: usize,
    pub required: usize,
    pub failing: Vec<FactorQuery>,
}

impl Witness {
    /// Re-runs every failing query with a fresh solver.
    pub fn replays(&self, g: &Graph) -> bool {
        self.candidates - self.failing.len().min(self.candidates) < self.required
            && self
                .failing
                .iter()
                .all(|q| matches!(solve_factor(g, q), Ok(None)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub claim: ClaimId,
    pub status: Status,
    /// Objects the quantifier ranged over.
    pub instances: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Whether the claim's hypotheses (cubic, 3-connected, parity) hold.
pub fn applies(g: &Graph, id: ClaimId) -> bool {
    g.vertex_count() % 6 == id.residue() && classify(g).is_cubic_3_connected()
}

/// Evaluates `id` on `g` literally, one solver query per candidate.
pub fn check_claim(g: &Graph, id: ClaimId) -> Result<ClaimOutcome> {
    if !applies(g, id) {
        return Ok(ClaimOutcome {
            claim: id,
            status: Status::NotApplicable,
            instances: 0,
            witness: None,
        });
    }
    let objects = instances(g, id);
    let mut n = 0;
    for (object, candidates, required) in objects {
        n += 1;
        if let Some(w) = evaluate(g, object, candidates, required)? {
            return Ok(ClaimOutcome {
                claim: id,
                status: Status::Fails,
                instances: n,
                witness: Some(w),
            });
        }
    }
    Ok(ClaimOutcome {
        claim: id,
        status: Status::Holds,
        instances: n,
        witness: None,
    })
}

/// Outcomes for each of `ids`, in the given order.
pub fn check_claims(g: &Graph, ids: &[ClaimId]) -> Result<Vec<ClaimOutcome>> {
    ids.iter().map(|&id| check_claim(g, id)).collect()
}

fn evaluate(
    g: &Graph,
    object: Quantified,
    candidates: Vec<FactorQuery>,
    required: usize,
) -> Result<Option<Witness>> {
    let total = candidates.len();
    let mut ok = 0;
    let mut failing = Vec::new();
    for q in candidates {
        if solve_factor(g, &q)?.is_some() {
            ok += 1;
            if ok >= required {
                return Ok(None);
            }
        } else {
            failing.push(q);
        }
    }
    Ok(Some(Witness {
        object,
        candidates: total,
        required,
        failing,
    }))
}

fn minus(vs: impl IntoIterator<Item = Vertex>) -> FactorQuery {
    FactorQuery::new().without_vertices(vs)
}

/// `(object, candidate queries, how many must have a factor)`.
type Instance = (Quantified, Vec<FactorQuery>, usize);

fn instances(g: &Graph, id: ClaimId) -> Vec<Instance> {
    use ClaimId::*;
    let vertices: Vec<Vertex> = g.vertices().collect();
    let edges: Vec<Edge> = g.edges().collect();
    let each_vertex = |f: &dyn Fn(Vertex) -> (Vec<FactorQuery>, usize)| -> Vec<Instance> {
        vertices
            .iter()
            .map(|&v| {
                let (qs, r) = f(v);
                (Quantified::Vertex { v }, qs, r)
            })
            .collect()
    };
    let each_edge = |f: &dyn Fn(Edge) -> Vec<FactorQuery>| -> Vec<Instance> {
        edges
            .iter()
            .map(|&edge| (Quantified::Edge { edge }, f(edge), 1))
            .collect()
    };
    let centred = |x: Vertex| -> Vec<FactorQuery> {
        let nb: Vec<Vertex> = g.neighbors(x).collect();
        let mut out = Vec::new();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                out.push(minus([nb[i], x, nb[j]]));
            }
        }
        out
    };
    match id {
        Z1 => vec![(Quantified::Graph, vec![FactorQuery::new()], 1)],
        Z2 => each_edge(&|e| vec![FactorQuery::new().without_edges([e])]),
        Z3 => each_edge(&|e| vec![FactorQuery::new().requiring([e])]),
        Z4 => each_vertex(&|x| (centred(x), 1)),
        Z5 => each_vertex(&|x| (centred(x), 2)),
        Z6 => {
            let mut out = Vec::new();
            for e in &edges {
                for (x, y) in [(e.u(), e.v()), (e.v(), e.u())] {
                    let qs = g
                        .neighbors(y)
                        .filter(|&w| w != x)
                        .map(|w| minus([x, y, w]))
                        .collect();
                    out.push((Quantified::Arc { x, y }, qs, 1));
                }
            }
            out
        }
        Z7 => {
            let mut out = Vec::new();
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    let pair = [edges[i], edges[j]];
                    out.push((
                        Quantified::EdgePair { edges: pair },
                        vec![FactorQuery::new().without_edges(pair)],
                        1,
                    ));
                }
            }
            out
        }
        Z8 => g
            .paths(3)
            .into_iter()
            .map(|p| {
                let q = minus(p.iter().copied());
                (Quantified::Path { path: p }, vec![q], 1)
            })
            .collect(),
        Z9 => {
            let mut out = Vec::new();
            for cut in three_edge_cuts(g) {
                let ks: Vec<Edge> = cut.iter().copied().collect();
                for skip in 0..3 {
                    let subset: EdgeSet = (0..3).filter(|&i| i != skip).map(|i| ks[i]).collect();
                    let q = FactorQuery::new()
                        .requiring(subset.iter().copied())
                        .forbidding([ks[skip]]);
                    out.push((
                        Quantified::CutSubset {
                            cut: cut.clone(),
                            subset,
                        },
                        vec![q],
                        1,
                    ));
                }
            }
            out
        }
        T1 => each_vertex(&|x| (g.neighbors(x).map(|y| minus([x, y])).collect(), 1)),
        T2 => each_edge(&|e| vec![minus(e.ends())]),
        T3 => each_vertex(&|x| {
            let qs = five_paths_centred(g, x).into_iter().map(minus).collect();
            (qs, 1)
        }),
        T4 => {
            let mut out = Vec::new();
            for &x in &vertices {
                for y in g.neighbors(x) {
                    let xy = Edge::new(x, y);
                    let qs = five_paths_centred(g, x)
                        .into_iter()
                        .filter(|w| !w.windows(2).any(|s| Edge::new(s[0], s[1]) == xy))
                        .map(minus)
                        .collect();
                    out.push((Quantified::VertexEdge { v: x, edge: xy }, qs, 1));
                }
            }
            out
        }
        F1 => each_vertex(&|x| (vec![minus([x])], 1)),
        F2 => {
            let mut out = Vec::new();
            for &x in &vertices {
                for &e in &edges {
                    let mut q = minus([x]);
                    if !e.ends().contains(&x) {
                        q = q.without_edges([e]);
                    }
                    out.push((Quantified::VertexEdge { v: x, edge: e }, vec![q], 1));
                }
            }
            out
        }
        F3 => each_vertex(&|x| {
            let qs = four_paths_inner(g, x).into_iter().map(minus).collect();
            (qs, 1)
        }),
        F4 => each_vertex(&|x| {
            let mut qs = Vec::new();
            for y in g.neighbors(x) {
                let xy = Edge::new(x, y);
                for z in four_paths_inner(g, x) {
                    if !z.windows(2).any(|s| Edge::new(s[0], s[1]) == xy) {
                        qs.push(minus(z));
                    }
                }
            }
            (qs, 1)
        }),
        F5 => each_edge(&|e| {
            let (x, y) = (e.u(), e.v());
            let mut qs = Vec::new();
            for w in g.neighbors(x).filter(|&w| w != y) {
                for t in g.neighbors(y).filter(|&t| t != x && t != w) {
                    qs.push(minus([w, x, y, t]));
                }
            }
            qs
        }),
        F6 => {
            let mut out = Vec::new();
            for p in g.paths(3) {
                for (x, y, z) in [(p[0], p[1], p[2]), (p[2], p[1], p[0])] {
                    let qs = g
                        .neighbors(x)
                        .filter(|&w| w != y && w != z)
                        .map(|w| minus([w, x, y, z]))
                        .collect();
                    out.push((
                        Quantified::Path {
                            path: vec![x, y, z],
                        },
                        qs,
                        1,
                    ));
                }
            }
            out
        }
    }
}

/// Every 3-edge set `K` with `K = D(X)` for some proper nonempty `X`,
/// vertex stars included.
pub fn three_edge_cuts(g: &Graph) -> Vec<EdgeSet> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            for k in j + 1..edges.len() {
                let set: EdgeSet = [edges[i], edges[j], edges[k]].into();
                if cut_sides(g, &set).is_some() {
                    out.push(set);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_examples() {
        assert_eq!(
            check_claim(&named::prism(), ClaimId::Z1).unwrap().status,
            Status::Holds
        );
        assert_eq!(
            check_claim(&named::k4(), ClaimId::F1).unwrap().status,
            Status::Holds
        );
        assert_eq!(
            check_claim(&named::cube(), ClaimId::T2).unwrap().status,
            Status::Holds
        );
        assert_eq!(
            check_claim(&named::cube(), ClaimId::T2).unwrap().instances,
            12
        );
    }

    #[test]
    fn gate() {
        let out = check_claim(&named::prism(), ClaimId::F1).unwrap();
        assert_eq!(out.status, Status::NotApplicable);
        assert_eq!(out.instances, 0);
        // two K4s joined by an edge after deleting one edge each: 2-connected only
        let g = Graph::from_pairs(
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (4, 5),
                (4, 6),
                (5, 6),
                (5, 7),
                (6, 7),
                (3, 7),
            ],
        )
        .unwrap();
        assert!(g.is_cubic());
        for id in ClaimId::ALL {
            assert_eq!(check_claim(&g, id).unwrap().status, Status::NotApplicable);
        }
    }

    #[test]
    fn names_round_trip() {
        for id in ClaimId::ALL {
            assert_eq!(id.name().parse::<ClaimId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert!("z10".parse::<ClaimId>().is_err());
    }

    #[test]
    fn prism_cuts() {
        // six vertex stars and the matching between the triangles
        let cuts = three_edge_cuts(&named::prism());
        assert_eq!(cuts.len(), 7);
    }

    #[test]
    fn fails_carry_replayable_witness() {
        // a 6-cycle split into paths on 2 and 4 vertices
        let g = named::cycle(6);
        let w = evaluate(
            &g,
            Quantified::Graph,
            vec![FactorQuery::new().without_edges([Edge::new(0, 1), Edge::new(2, 3)])],
            1,
        )
        .unwrap()
        .unwrap();
        assert!(w.replays(&g));
        let ok = evaluate(&g, Quantified::Graph, vec![FactorQuery::new()], 1).unwrap();
        assert!(ok.is_none());
    }
}
