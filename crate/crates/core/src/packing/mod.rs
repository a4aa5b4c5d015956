//! Λ-packings and Λ-factors: types, exact solvers, and domination.

mod domination;
mod oracle;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, Vertex, VertexSet};

pub use domination::{domination_from_factor, gamma_exact, min_dominating_set};
pub use oracle::oracle_max_packing;
pub use search::{
    count_factors, enumerate_factors, enumerate_factors_with, for_each_factor, has_factor,
    max_lambda_packing, sample_factors, solve_factor, Enumeration,
};

/// A 3-vertex path `a-b-c` centred at `b`. A path and its reversal are the
/// same object; the stored form has `a < c`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[Vertex; 3]", try_from = "[Vertex; 3]")]
pub struct Path3([Vertex; 3]);

impl Path3 {
    /// Panics if the three vertices are not distinct.
    pub fn new(a: impl Into<Vertex>, center: impl Into<Vertex>, c: impl Into<Vertex>) -> Path3 {
        let (a, b, c) = (a.into(), center.into(), c.into());
        assert!(
            a != b && b != c && a != c,
            "path {a}-{b}-{c} repeats a vertex"
        );
        if a < c {
            Path3([a, b, c])
        } else {
            Path3([c, b, a])
        }
    }

    pub fn center(&self) -> Vertex {
        self.0[1]
    }

    pub fn ends(&self) -> [Vertex; 2] {
        [self.0[0], self.0[2]]
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn edges(&self) -> [Edge; 2] {
        [
            Edge::new(self.0[0], self.0[1]),
            Edge::new(self.0[1], self.0[2]),
        ]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges().contains(&e)
    }

    pub fn is_in(&self, g: &Graph) -> bool {
        self.edges().iter().all(|&e| g.has_edge(e))
    }
}

impl fmt::Debug for Path3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.0[0], self.0[1], self.0[2])
    }
}

impl From<Path3> for [Vertex; 3] {
    fn from(p: Path3) -> Self {
        p.0
    }
}

impl TryFrom<[Vertex; 3]> for Path3 {
    type Error = String;

    fn try_from(t: [Vertex; 3]) -> std::result::Result<Self, String> {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            Err(format!("path {:?} repeats a vertex", t))
        } else {
            Ok(Path3::new(t[0], t[1], t[2]))
        }
    }
}

/// A set of 3-vertex paths, serialised as an array of vertex triples.
/// Whether it is a packing or a factor depends on the host graph.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factor {
    paths: BTreeSet<Path3>,
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.paths).finish()
    }
}

impl FromIterator<Path3> for Factor {
    fn from_iter<I: IntoIterator<Item = Path3>>(iter: I) -> Self {
        Factor {
            paths: iter.into_iter().collect(),
        }
    }
}

impl Factor {
    pub fn new() -> Factor {
        Factor::default()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path3> + '_ {
        self.paths.iter()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn insert(&mut self, p: Path3) -> bool {
        self.paths.insert(p)
    }

    pub fn extend(&mut self, other: Factor) {
        self.paths.extend(other.paths);
    }

    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices()).collect()
    }

    pub fn edges(&self) -> EdgeSet {
        self.paths.iter().flat_map(|p| p.edges()).collect()
    }

    pub fn path_containing(&self, v: Vertex) -> Option<&Path3> {
        self.paths.iter().find(|p| p.contains(v))
    }

    pub fn path_with_edge(&self, e: Edge) -> Option<&Path3> {
        self.paths.iter().find(|p| p.has_edge(e))
    }

    pub fn centers(&self) -> VertexSet {
        self.paths.iter().map(Path3::center).collect()
    }

    /// Checks that the paths are pairwise disjoint and lie in `g`.
    pub fn validate_packing(&self, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::new();
        for p in &self.paths {
            for e in p.edges() {
                g.check_edge(e)?;
            }
            for v in p.vertices() {
                if !seen.insert(v) {
                    return Err(Error::invalid(format!("vertex {v} covered twice")));
                }
            }
        }
        Ok(())
    }

    /// Checks that this is a Λ-factor of `g`.
    pub fn validate_factor(&self, g: &Graph) -> Result<()> {
        self.validate_packing(g)?;
        if self.paths.len() * 3 != g.vertex_count() {
            return Err(Error::invalid(format!(
                "{} paths do not cover {} vertices",
                self.paths.len(),
                g.vertex_count()
            )));
        }
        Ok(())
    }

    pub fn is_factor_of(&self, g: &Graph) -> bool {
        self.validate_factor(g).is_ok()
    }

    /// Checks a factor against a query: it must be a Λ-factor of the residual
    /// graph and respect the required and forbidden edges.
    pub fn validate_against(&self, g: &Graph, q: &FactorQuery) -> Result<()> {
        let residual = q.residual(g)?;
        self.validate_factor(&residual)?;
        let used = self.edges();
        if let Some(e) = q.required_edges.iter().find(|e| !used.contains(e)) {
            return Err(Error::invalid(format!("required edge {e:?} unused")));
        }
        if let Some(e) = q.forbidden_edges.iter().find(|e| used.contains(e)) {
            return Err(Error::invalid(format!("forbidden edge {e:?} used")));
        }
        Ok(())
    }

    /// Relabels every vertex.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Factor {
        self.paths
            .iter()
            .map(|p| {
                let [a, b, c] = p.vertices();
                Path3::new(f(a), f(b), f(c))
            })
            .collect()
    }
}

/// Constraints on a Λ-factor: delete vertices and edges first, then demand
/// some edges and forbid others.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FactorQuery {
    pub deleted_vertices: VertexSet,
    pub deleted_edges: EdgeSet,
    pub required_edges: EdgeSet,
    pub forbidden_edges: EdgeSet,
}

impl FactorQuery {
    pub fn new() -> FactorQuery {
        FactorQuery::default()
    }

    pub fn without_vertices(mut self, vs: impl IntoIterator<Item = Vertex>) -> Self {
        self.deleted_vertices.extend(vs);
        self
    }

    pub fn without_edges(mut self, es: impl IntoIterator<Item = Edge>) -> Self {
        self.deleted_edges.extend(es);
        self
    }

    pub fn requiring(mut self, es: impl IntoIterator<Item = Edge>) -> Self {
        self.required_edges.extend(es);
        self
    }

    pub fn forbidding(mut self, es: impl IntoIterator<Item = Edge>) -> Self {
        self.forbidden_edges.extend(es);
        self
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.deleted_vertices {
            g.check_vertex(v)?;
        }
        for e in self
            .deleted_edges
            .iter()
            .chain(&self.required_edges)
            .chain(&self.forbidden_edges)
        {
            g.check_edge(*e)?;
        }
        for e in &self.required_edges {
            if self.forbidden_edges.contains(e) || self.deleted_edges.contains(e) {
                return Err(Error::invalid(format!(
                    "edge {e:?} both required and excluded"
                )));
            }
            if e.ends().iter().any(|v| self.deleted_vertices.contains(v)) {
                return Err(Error::invalid(format!(
                    "required edge {e:?} touches a deleted vertex"
                )));
            }
        }
        Ok(())
    }

    /// `G - deleted_vertices - deleted_edges`.
    pub fn residual(&self, g: &Graph) -> Result<Graph> {
        self.validate(g)?;
        g.delete(&self.deleted_vertices, &self.deleted_edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn path_normalises_orientation() {
        assert_eq!(Path3::new(3, 1, 0), Path3::new(0, 1, 3));
        assert_eq!(Path3::new(3, 1, 0).center(), Vertex(1));
    }

    #[test]
    fn factor_json_is_triples() {
        let f: Factor = [Path3::new(2, 0, 3), Path3::new(1, 4, 5)]
            .into_iter()
            .collect();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, "[[1,4,5],[2,0,3]]");
        let back: Factor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Factor>("[[1,1,2]]").is_err());
    }

    #[test]
    fn validation() {
        let p = named::prism();
        let f: Factor = [Path3::new(2, 0, 3), Path3::new(1, 4, 5)]
            .into_iter()
            .collect();
        assert!(f.is_factor_of(&p));
        let bad: Factor = [Path3::new(0, 1, 2), Path3::new(2, 5, 4)]
            .into_iter()
            .collect();
        assert!(bad.validate_packing(&p).is_err());
        let q = FactorQuery::new()
            .requiring([Edge::new(0, 3)])
            .forbidding([Edge::new(0, 3)]);
        assert!(q.validate(&p).is_err());
        let q = FactorQuery::new()
            .requiring([Edge::new(0, 3)])
            .without_vertices([Vertex(0)]);
        assert!(q.validate(&p).is_err());
        assert!(FactorQuery::new()
            .without_edges([Edge::new(0, 4)])
            .validate(&p)
            .is_err());
    }
}
