//! Simple undirected graphs with stable, opaque vertex identifiers.

mod canon;
mod classify;
mod format;
pub mod named;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_key};
pub use classify::{classify, connectivity_floor, is_bipartite, StructureReport};
pub use format::{
    from_dot, parse_graph6, parse_sparse6, serialize_graph6, serialize_sparse6, to_dot,
};

/// Opaque vertex identifier. Survives deletions unchanged.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Vertex {
    fn from(v: u32) -> Self {
        Vertex(v)
    }
}

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[Vertex; 2]", from = "[Vertex; 2]")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: impl Into<Vertex>, b: impl Into<Vertex>) -> Edge {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> Vertex {
        self.0
    }

    pub fn v(&self) -> Vertex {
        self.1
    }

    pub fn ends(&self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else if self.1 == x {
            self.0
        } else {
            panic!("{x} is not an end of {self:?}")
        }
    }

    pub fn shares_end(&self, other: &Edge) -> bool {
        self.touches(other.0) || self.touches(other.1)
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        e.ends()
    }
}

impl From<[Vertex; 2]> for Edge {
    fn from(p: [Vertex; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

pub type EdgeSet = BTreeSet<Edge>;
pub type VertexSet = BTreeSet<Vertex>;

/// A simple undirected graph. Vertices are kept sorted by id; that order is
/// the "current vertex ordering" used by the serializers.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    index: HashMap<Vertex, usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.ids)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty()
    }
}

impl Graph {
    pub fn empty() -> Graph {
        Graph {
            ids: Vec::new(),
            adj: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Builds a graph from explicit vertex and edge lists, rejecting loops,
    /// repeated edges and edges with unknown endpoints.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = Edge>,
    {
        let mut ids: Vec<Vertex> = vertices.into_iter().collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        if ids.len() != before {
            return Err(Error::invalid("duplicate vertex id"));
        }
        let index: HashMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for e in edges {
            if e.u() == e.v() {
                return Err(Error::invalid(format!("loop at {}", e.u())));
            }
            let a = *index.get(&e.u()).ok_or(Error::UnknownVertex(e.u()))?;
            let b = *index.get(&e.v()).ok_or(Error::UnknownVertex(e.v()))?;
            if adj[a].contains(&b) {
                return Err(Error::invalid(format!("parallel edge {e:?}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { ids, adj, index })
    }

    /// Graph on vertices `0..n` with the given pairs as edges.
    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Graph> {
        Graph::from_parts(
            (0..n).map(Vertex),
            pairs.iter().map(|&(a, b)| Edge::new(a, b)),
        )
    }

    pub(crate) fn from_dense(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let ids: Vec<Vertex> = (0..n as u32).map(Vertex).collect();
        let index = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in pairs {
            debug_assert!(a != b);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { ids, adj, index }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.ids.iter().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.ids.iter().copied().collect()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(move |(i, list)| {
            list.iter()
                .filter(move |&&j| j > i)
                .map(move |&j| Edge(self.ids[i], self.ids[j]))
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        match (self.index.get(&e.u()), self.index.get(&e.v())) {
            (Some(&a), Some(&b)) => self.adj[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.has_edge(Edge::new(a, b))
    }

    /// Neighbors in id order. Panics on an unknown vertex.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let i = self.index[&v];
        self.adj[i].iter().map(move |&j| self.ids[j])
    }

    pub fn neighbor_set(&self, v: Vertex) -> VertexSet {
        self.neighbors(v).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[self.index[&v]].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges incident to `v`.
    pub fn star(&self, v: Vertex) -> EdgeSet {
        self.neighbors(v).map(|w| Edge::new(v, w)).collect()
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn max_id(&self) -> Option<Vertex> {
        self.ids.last().copied()
    }

    pub(crate) fn id_at(&self, i: usize) -> Vertex {
        self.ids[i]
    }

    pub(crate) fn dense_adj(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        if self.has_edge(e) {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    /// `G - vs - es`: survivors keep their ids.
    pub fn delete<'a, V, E>(&self, vs: V, es: E) -> Result<Graph>
    where
        V: IntoIterator<Item = &'a Vertex>,
        E: IntoIterator<Item = &'a Edge>,
    {
        let mut gone = VertexSet::new();
        for &v in vs {
            self.check_vertex(v)?;
            gone.insert(v);
        }
        let mut cut = EdgeSet::new();
        for &e in es {
            self.check_edge(e)?;
            cut.insert(e);
        }
        Graph::from_parts(
            self.vertices().filter(|v| !gone.contains(v)),
            self.edges()
                .filter(|e| !cut.contains(e) && !gone.contains(&e.u()) && !gone.contains(&e.v())),
        )
    }

    pub fn delete_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Result<Graph> {
        self.delete(vs, std::iter::empty())
    }

    pub fn delete_edges<'a>(&self, es: impl IntoIterator<Item = &'a Edge>) -> Result<Graph> {
        self.delete(std::iter::empty(), es)
    }

    /// Subgraph induced by `vs`.
    pub fn induced<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Result<Graph> {
        let mut keep = VertexSet::new();
        for &v in vs {
            self.check_vertex(v)?;
            keep.insert(v);
        }
        Graph::from_parts(
            keep.iter().copied(),
            self.edges()
                .filter(|e| keep.contains(&e.u()) && keep.contains(&e.v())),
        )
    }

    /// Adds edges (and any missing endpoint vertices).
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let extra: Vec<Edge> = extra.into_iter().collect();
        let mut vs = self.vertex_set();
        for e in &extra {
            vs.insert(e.u());
            vs.insert(e.v());
        }
        Graph::from_parts(vs, self.edges().chain(extra))
    }

    /// Applies an injective relabeling.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Graph> {
        Graph::from_parts(
            self.vertices().map(&f),
            self.edges().map(|e| Edge::new(f(e.u()), f(e.v()))),
        )
    }

    /// Relabels the vertices to `0..n` in the current order.
    pub fn compact(&self) -> Graph {
        let adj = self.adj.clone();
        let ids: Vec<Vertex> = (0..self.ids.len() as u32).map(Vertex).collect();
        let index = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Graph { ids, adj, index }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.ids.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(|i| self.ids[i]).collect());
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `D(X, G)`: edges with exactly one end in `xs`.
    pub fn boundary(&self, xs: &VertexSet) -> EdgeSet {
        self.edges()
            .filter(|e| xs.contains(&e.u()) != xs.contains(&e.v()))
            .collect()
    }

    /// Whether the given vertex sequence is a path of `self` (distinct
    /// vertices, consecutive ones adjacent).
    pub fn is_path(&self, seq: &[Vertex]) -> bool {
        let distinct: VertexSet = seq.iter().copied().collect();
        distinct.len() == seq.len()
            && seq.iter().all(|&v| self.has_vertex(v))
            && seq.windows(2).all(|w| self.adjacent(w[0], w[1]))
    }

    /// All paths on `k` vertices, each reported once with first id < last id.
    pub fn paths(&self, k: usize) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        if k == 0 {
            return out;
        }
        if k == 1 {
            return self.vertices().map(|v| vec![v]).collect();
        }
        let n = self.ids.len();
        let mut stack = Vec::with_capacity(k);
        let mut on = vec![false; n];
        fn grow(
            g: &Graph,
            k: usize,
            stack: &mut Vec<usize>,
            on: &mut [bool],
            out: &mut Vec<Vec<Vertex>>,
        ) {
            if stack.len() == k {
                if stack[0] < stack[k - 1] {
                    out.push(stack.iter().map(|&i| g.ids[i]).collect());
                }
                return;
            }
            let last = *stack.last().unwrap();
            for &y in &g.adj[last] {
                if !on[y] {
                    on[y] = true;
                    stack.push(y);
                    grow(g, k, stack, on, out);
                    stack.pop();
                    on[y] = false;
                }
            }
        }
        for s in 0..n {
            on[s] = true;
            stack.push(s);
            grow(self, k, &mut stack, &mut on, &mut out);
            stack.pop();
            on[s] = false;
        }
        out.sort();
        out
    }

    /// All cycles, each as a vertex sequence starting at its smallest vertex
    /// and oriented so the second vertex is smaller than the last.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let n = self.ids.len();
        let mut out = Vec::new();
        let mut on = vec![false; n];
        let mut stack = Vec::new();
        fn walk(
            g: &Graph,
            start: usize,
            stack: &mut Vec<usize>,
            on: &mut [bool],
            out: &mut Vec<Vec<Vertex>>,
        ) {
            let last = *stack.last().unwrap();
            for &y in &g.adj[last] {
                if y == start && stack.len() >= 3 && stack[1] < stack[stack.len() - 1] {
                    out.push(stack.iter().map(|&i| g.ids[i]).collect());
                } else if y > start && !on[y] {
                    on[y] = true;
                    stack.push(y);
                    walk(g, start, stack, on, out);
                    stack.pop();
                    on[y] = false;
                }
            }
        }
        for s in 0..n {
            on[s] = true;
            stack.push(s);
            walk(self, s, &mut stack, &mut on, &mut out);
            stack.pop();
            on[s] = false;
        }
        out.sort();
        out
    }

    /// Whether some cycle passes through every vertex (backtracking).
    pub fn is_hamiltonian(&self) -> bool {
        let n = self.ids.len();
        if n < 3 {
            return false;
        }
        let mut on = vec![false; n];
        on[0] = true;
        fn extend(g: &Graph, last: usize, depth: usize, on: &mut [bool]) -> bool {
            let n = on.len();
            if depth == n {
                return g.adj[last].contains(&0);
            }
            for &y in &g.adj[last] {
                if !on[y] {
                    on[y] = true;
                    if extend(g, y, depth + 1, on) {
                        return true;
                    }
                    on[y] = false;
                }
            }
            false
        }
        extend(self, 0, 1, &mut on)
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().any(|e| {
            self.neighbors(e.u())
                .any(|w| w != e.v() && self.adjacent(w, e.v()))
        })
    }

    pub fn has_square(&self) -> bool {
        self.cycles().iter().any(|c| c.len() == 4)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            vertices: Vec<Vertex>,
            edges: Vec<Edge>,
        }
        Repr {
            vertices: self.vertices().collect(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            vertices: Vec<Vertex>,
            edges: Vec<Edge>,
        }
        let r = Repr::deserialize(d)?;
        Graph::from_parts(r.vertices, r.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: u32) -> Vertex {
        Vertex(x)
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_pairs(3, &[(0, 0)]).is_err());
        assert!(Graph::from_pairs(3, &[(0, 1), (1, 0)]).is_err());
        assert!(matches!(
            Graph::from_pairs(3, &[(0, 5)]),
            Err(Error::UnknownVertex(Vertex(5)))
        ));
    }

    #[test]
    fn delete_vertex_of_k4_is_triangle() {
        let k4 = named::k4();
        let t = k4.delete_vertices(&[v(0)]).unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.vertices().collect::<Vec<_>>(), vec![v(1), v(2), v(3)]);
    }

    #[test]
    fn delete_prism_triangle() {
        let p = named::prism();
        let rest = p.delete_vertices(&[v(0), v(1), v(2)]).unwrap();
        assert_eq!(
            rest.edge_set(),
            [Edge::new(3, 4), Edge::new(3, 5), Edge::new(4, 5)].into()
        );
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = named::petersen();
        assert_eq!(g.delete(&[], &[]).unwrap(), g);
    }

    #[test]
    fn delete_unknown_is_error() {
        let g = named::k4();
        assert!(g.delete_vertices(&[v(9)]).is_err());
        assert!(g.delete_edges(&[Edge::new(0, 9)]).is_err());
    }

    #[test]
    fn paths_and_cycles_of_k4() {
        let k4 = named::k4();
        // 4 centers x 3 pairs of neighbours
        assert_eq!(k4.paths(3).len(), 12);
        // 4 triangles + 3 four-cycles
        assert_eq!(k4.cycles().len(), 7);
        assert!(k4.is_hamiltonian());
        assert!(named::petersen().cycles().iter().all(|c| c.len() >= 5));
        assert!(!named::petersen().is_hamiltonian());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1u32..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..30).prop_map(move |pairs| {
                let edges: EdgeSet = pairs
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| Edge::new(a, b))
                    .collect();
                Graph::from_parts((0..n).map(Vertex), edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn boundary_identity(g in arb_graph(), mask in any::<u32>()) {
            let xs: VertexSet = g.vertices().filter(|x| mask >> (x.0 % 32) & 1 == 1).collect();
            let inner = g.induced(&xs).unwrap().edge_count();
            let deg: usize = xs.iter().map(|&x| g.degree(x)).sum();
            prop_assert_eq!(g.boundary(&xs).len(), deg - 2 * inner);
        }

        #[test]
        fn delete_keeps_survivor_ids(g in arb_graph(), mask in any::<u32>()) {
            let gone: VertexSet = g.vertices().filter(|x| mask >> (x.0 % 32) & 1 == 1).collect();
            let h = g.delete_vertices(&gone).unwrap();
            for e in h.edges() {
                prop_assert!(g.has_edge(e));
            }
            for e in g.edges() {
                let survives = !gone.contains(&e.u()) && !gone.contains(&e.v());
                prop_assert_eq!(h.has_edge(e), survives);
            }
        }
    }
}
