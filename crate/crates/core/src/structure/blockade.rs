//! Blockades: edge cuts that are matchings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Blockade {
    pub edges: EdgeSet,
}

impl Blockade {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_matching(&self) -> bool {
        is_matching(&self.edges)
    }

    /// The two sides `X` and `V(G) - X` with `D(X) = K`, if `K` is a cut.
    pub fn sides(&self, g: &Graph) -> Option<(VertexSet, VertexSet)> {
        cut_sides(g, &self.edges)
    }
}

pub fn is_matching(edges: &EdgeSet) -> bool {
    let mut seen = VertexSet::new();
    edges
        .iter()
        .all(|e| seen.insert(e.u()) && seen.insert(e.v()))
}

/// `X` with `D(X, G) = edges` and `X` holding the smallest vertex, or
/// `None` if no such proper nonempty `X` exists.
pub fn cut_sides(g: &Graph, edges: &EdgeSet) -> Option<(VertexSet, VertexSet)> {
    if edges.is_empty() {
        return None;
    }
    let rest = g.delete_edges(edges).ok()?;
    let comps = rest.components();
    if comps.len() < 2 {
        return None;
    }
    let mut comp_of = std::collections::HashMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of.insert(v, i);
        }
    }
    // two-colour the components along the cut edges
    let mut adj = vec![Vec::new(); comps.len()];
    for e in edges {
        let (a, b) = (comp_of[&e.u()], comp_of[&e.v()]);
        if a == b {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour = vec![None; comps.len()];
    for s in 0..comps.len() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(s == 0);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = colour[x].unwrap();
            for &y in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!cx);
                        stack.push(y);
                    }
                    Some(cy) if cy == cx => return None,
                    _ => {}
                }
            }
        }
    }
    let mut x = VertexSet::new();
    let mut y = VertexSet::new();
    for (i, c) in comps.iter().enumerate() {
        if colour[i] == colour[0] {
            x.extend(c);
        } else {
            y.extend(c);
        }
    }
    if y.is_empty() {
        return None;
    }
    Some((x, y))
}

/// All `size`-edge matchings of `g` that are edge cuts, in lexicographic
/// order.
pub fn enumerate_blockades(g: &Graph, size: usize) -> Vec<Blockade> {
    search(g, size, false)
}

fn search(g: &Graph, size: usize, first_only: bool) -> Vec<Blockade> {
    struct Walk<'a> {
        g: &'a Graph,
        edges: Vec<Edge>,
        size: usize,
        first_only: bool,
        chosen: Vec<Edge>,
        used: VertexSet,
        out: Vec<Blockade>,
    }
    impl Walk<'_> {
        fn rec(&mut self, start: usize) -> bool {
            if self.chosen.len() == self.size {
                let set: EdgeSet = self.chosen.iter().copied().collect();
                if cut_sides(self.g, &set).is_some() {
                    self.out.push(Blockade { edges: set });
                    return self.first_only;
                }
                return false;
            }
            for i in start..self.edges.len() {
                if self.edges.len() - i < self.size - self.chosen.len() {
                    break;
                }
                let e = self.edges[i];
                if self.used.contains(&e.u()) || self.used.contains(&e.v()) {
                    continue;
                }
                self.used.insert(e.u());
                self.used.insert(e.v());
                self.chosen.push(e);
                let stop = self.rec(i + 1);
                self.chosen.pop();
                self.used.remove(&e.u());
                self.used.remove(&e.v());
                if stop {
                    return true;
                }
            }
            false
        }
    }
    if size == 0 {
        return Vec::new();
    }
    let mut w = Walk {
        g,
        edges: g.edges().collect(),
        size,
        first_only,
        chosen: Vec::with_capacity(size),
        used: VertexSet::new(),
        out: Vec::new(),
    };
    w.rec(0);
    w.out
}

/// `c(G)` with a lexicographically least minimum blockade.
pub fn min_blockade(g: &Graph) -> Result<(usize, Blockade)> {
    if !g.is_cubic() || !g.is_connected() {
        return Err(Error::NoBlockade);
    }
    let max = g.vertex_count() / 2;
    for k in 1..=max {
        if let Some(b) = search(g, k, true).pop() {
            return Ok((k, b));
        }
    }
    Err(Error::NoBlockade)
}

/// Whether `vs` induces a cycle in `g`.
pub fn induces_cycle(g: &Graph, vs: &VertexSet) -> bool {
    let Ok(h) = g.induced(vs) else { return false };
    h.vertex_count() >= 3 && h.is_connected() && h.vertices().all(|v| h.degree(v) == 2)
}

/// Whether the subgraph induced by `vs` contains a cycle.
pub fn has_cycle_within(g: &Graph, vs: &VertexSet) -> bool {
    let Ok(h) = g.induced(vs) else { return false };
    h.edge_count() + h.component_count() > h.vertex_count()
}
