//! Directed images of factors on a composition's frame.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::constructions::Composition;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, Vertex, VertexSet};
use crate::packing::Factor;

/// A set of arcs `u -> v` over a frame.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiPacking {
    pub arcs: BTreeSet<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiClass {
    LambdaDifactor,
    CycleDipacking,
    Other,
}

impl DiPacking {
    pub fn new() -> DiPacking {
        DiPacking::default()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Underlying undirected edges (a 2-cycle collapses to one edge).
    pub fn support(&self) -> EdgeSet {
        self.arcs.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        self.arcs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// `→P`: both edges of every path directed into its centre.
    pub fn from_factor(f: &Factor) -> DiPacking {
        let mut arcs = BTreeSet::new();
        for p in f.paths() {
            for e in p.ends() {
                arcs.insert((e, p.center()));
            }
        }
        DiPacking { arcs }
    }

    /// Directed cycles, each given as a vertex sequence in arc order.
    pub fn from_cycles(cycles: &[Vec<Vertex>]) -> DiPacking {
        let mut arcs = BTreeSet::new();
        for c in cycles {
            for i in 0..c.len() {
                arcs.insert((c[i], c[(i + 1) % c.len()]));
            }
        }
        DiPacking { arcs }
    }

    fn out_map(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut m: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &(u, v) in &self.arcs {
            m.entry(u).or_default().push(v);
        }
        m
    }

    fn in_map(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut m: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &(u, v) in &self.arcs {
            m.entry(v).or_default().push(u);
        }
        m
    }

    /// Out-neighbour of `v`, when it has exactly one.
    pub fn successor(&self, v: Vertex) -> Option<Vertex> {
        match self.out_map().get(&v).map(Vec::as_slice) {
            Some([w]) => Some(*w),
            _ => None,
        }
    }

    /// In-neighbour of `v`, when it has exactly one.
    pub fn predecessor(&self, v: Vertex) -> Option<Vertex> {
        match self.in_map().get(&v).map(Vec::as_slice) {
            Some([u]) => Some(*u),
            _ => None,
        }
    }

    pub fn classify(&self, frame: &Graph) -> DiClass {
        if self.support().len() != self.arcs.len()
            || self.support().iter().any(|&e| !frame.has_edge(e))
        {
            return DiClass::Other;
        }
        let outs = self.out_map();
        let ins = self.in_map();
        let deg = |m: &BTreeMap<Vertex, Vec<Vertex>>, v: Vertex| m.get(&v).map_or(0, Vec::len);
        let touched = self.vertices();
        if touched
            .iter()
            .all(|&v| deg(&outs, v) == 1 && deg(&ins, v) == 1)
        {
            return DiClass::CycleDipacking;
        }
        // Λ-difactor: centres have in-degree 2 and no out-arc; ends have one
        // out-arc into a centre; every frame vertex is covered.
        let covers = touched.len() == frame.vertex_count();
        let shaped = touched.iter().all(|&v| {
            let (i, o) = (deg(&ins, v), deg(&outs, v));
            (i == 2 && o == 0) || (i == 0 && o == 1 && deg(&ins, outs[&v][0]) == 2)
        });
        if covers && shaped {
            DiClass::LambdaDifactor
        } else {
            DiClass::Other
        }
    }

    /// The frame factor behind a Λ-difactor.
    pub fn as_factor(&self) -> Option<Factor> {
        let ins = self.in_map();
        let mut f = Factor::new();
        for (&c, ends) in &ins {
            if let [a, b] = ends[..] {
                if a == b || c == a || c == b {
                    return None;
                }
                f.insert(crate::packing::Path3::new(a, c, b));
            } else {
                return None;
            }
        }
        Some(f)
    }
}

/// `→F(P, G)`: for every seam edge on a path `L` of `P` and every side `s`
/// of it with `|V(L) ∩ V(A_s)| = 1`, the arc from `s` to the other side.
pub fn project_factor(c: &Composition, p: &Factor) -> Result<DiPacking> {
    p.validate_factor(&c.result)?;
    let mut arcs = BTreeSet::new();
    for (f, e) in &c.alpha {
        let Some(l) = p.path_with_edge(*e) else {
            continue;
        };
        let [u, v] = f.ends();
        for (s, t) in [(u, v), (v, u)] {
            let inside = l
                .vertices()
                .iter()
                .filter(|x| c.interiors[&s].contains(x))
                .count();
            if inside == 1 {
                arcs.insert((s, t));
            }
        }
    }
    Ok(DiPacking { arcs })
}

/// `α^{-1}(E'(G) ∩ E(P))`.
pub fn frame_support(c: &Composition, p: &Factor) -> EdgeSet {
    c.alpha
        .iter()
        .filter(|(_, e)| p.edges().contains(e))
        .map(|(f, _)| *f)
        .collect()
}

/// Every cycle-dipacking of `frame`, the empty one included, in a fixed
/// order.
pub fn enumerate_cycle_dipackings(frame: &Graph) -> Vec<DiPacking> {
    let cycles = frame.cycles();
    let sets: Vec<VertexSet> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<Vertex>> = Vec::new();
    fn rec(
        cycles: &[Vec<Vertex>],
        sets: &[VertexSet],
        start: usize,
        used: &mut VertexSet,
        chosen: &mut Vec<Vec<Vertex>>,
        out: &mut Vec<DiPacking>,
    ) {
        out.push(DiPacking::from_cycles(chosen));
        for i in start..cycles.len() {
            if !sets[i].is_disjoint(used) {
                continue;
            }
            used.extend(&sets[i]);
            for forward in [true, false] {
                let mut c = cycles[i].clone();
                if !forward {
                    c.reverse();
                }
                chosen.push(c);
                rec(cycles, sets, i + 1, used, chosen, out);
                chosen.pop();
            }
            for v in &sets[i] {
                used.remove(v);
            }
        }
    }
    rec(
        &cycles,
        &sets,
        0,
        &mut VertexSet::new(),
        &mut chosen,
        &mut out,
    );
    out.sort();
    out
}

/// The cycles of a cycle-dipacking, each starting at its smallest vertex.
pub fn dipacking_cycles(d: &DiPacking) -> Result<Vec<Vec<Vertex>>> {
    let mut next = BTreeMap::new();
    for &(u, v) in &d.arcs {
        if next.insert(u, v).is_some() {
            return Err(Error::invalid(format!("{u} has two out-arcs")));
        }
    }
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for &start in next.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut cyc = vec![start];
        seen.insert(start);
        let mut at = next[&start];
        while at != start {
            if !seen.insert(at) {
                return Err(Error::invalid("arcs do not form disjoint cycles"));
            }
            cyc.push(at);
            at = *next
                .get(&at)
                .ok_or_else(|| Error::invalid(format!("{at} has no out-arc")))?;
        }
        out.push(cyc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::triangle_expand;
    use crate::graph::named;
    use crate::packing::{for_each_factor, FactorQuery, Path3};
    use std::ops::ControlFlow;

    #[test]
    fn classes() {
        let prism = named::prism();
        let f: Factor = [Path3::new(2, 0, 3), Path3::new(1, 4, 5)]
            .into_iter()
            .collect();
        let d = DiPacking::from_factor(&f);
        assert_eq!(d.classify(&prism), DiClass::LambdaDifactor);
        assert_eq!(d.as_factor().unwrap(), f);
        assert_eq!(DiPacking::new().classify(&prism), DiClass::CycleDipacking);
        let tri = DiPacking::from_cycles(&[vec![Vertex(0), Vertex(1), Vertex(2)]]);
        assert_eq!(tri.classify(&prism), DiClass::CycleDipacking);
        let mut both = tri.clone();
        both.arcs.insert((Vertex(1), Vertex(0)));
        assert_eq!(both.classify(&prism), DiClass::Other);
        let off = DiPacking::from_cycles(&[vec![Vertex(0), Vertex(4), Vertex(5)]]);
        assert_eq!(off.classify(&prism), DiClass::Other);
    }

    #[test]
    fn cycle_dipackings_of_k4() {
        // K4: 4 triangles and 3 four-cycles, two directions each, plus empty;
        // no two cycles are disjoint.
        let all = enumerate_cycle_dipackings(&named::k4());
        assert_eq!(all.len(), 1 + 2 * 7);
        for d in &all {
            assert_eq!(d.classify(&named::k4()), DiClass::CycleDipacking);
            let cycles = dipacking_cycles(d).unwrap();
            assert_eq!(DiPacking::from_cycles(&cycles), *d);
        }
    }

    #[test]
    fn triangle_expansion_projects_to_cycles() {
        let c = triangle_expand(&named::k33()).unwrap();
        let mut n = 0;
        for_each_factor(&c.result, &FactorQuery::new(), |p| {
            let d = project_factor(&c, &p).unwrap();
            assert_eq!(d.classify(&c.frame), DiClass::CycleDipacking);
            n += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(n > 0);
    }
}
