//! Brick certificates: exhaustive checks of the hypotheses a brick must
//! satisfy for factor projection and lifting, and the intersection
//! profiles of Y-composed bricks.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::constructions::{PointedGraph, YComposition};
use crate::error::{Error, Result};
use crate::graph::{canonical_key, named, serialize_graph6, EdgeSet, Graph, Vertex, VertexSet};
use crate::packing::{for_each_factor, solve_factor, Factor, FactorQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "2mod6")]
    TwoMod6,
    #[serde(rename = "4mod6")]
    FourMod6,
}

impl Parity {
    pub fn residue(self) -> usize {
        match self {
            Parity::TwoMod6 => 2,
            Parity::FourMod6 => 4,
        }
    }

    pub fn of(n: usize) -> Option<Parity> {
        match n % 6 {
            2 => Some(Parity::TwoMod6),
            4 => Some(Parity::FourMod6),
            _ => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}mod6", self.residue())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Parity> {
        match s {
            "2mod6" | "2" => Ok(Parity::TwoMod6),
            "4mod6" | "4" => Ok(Parity::FourMod6),
            _ => Err(Error::invalid(format!("unknown parity class {s:?}"))),
        }
    }
}

/// A deleted vertex set and, when the check expected no factor, the factor
/// that was found anyway.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrickWitness {
    pub deleted: VertexSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<Factor>,
}

impl BrickWitness {
    /// Whether the recorded factor is a Λ-factor of `g - deleted`.
    pub fn replays(&self, g: &Graph) -> bool {
        let Some(f) = &self.factor else { return false };
        g.delete_vertices(self.deleted.iter())
            .is_ok_and(|h| f.is_factor_of(&h))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub holds: bool,
    /// Number of instances examined.
    pub instances: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BrickWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCheck {
    pub name: String,
    pub holds: bool,
    pub instances: usize,
    pub factors: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BrickWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrickCertificate {
    pub parity: Parity,
    /// Vertex `i` of the encoding is the `i`-th smallest vertex id.
    pub graph6: String,
    pub apex: Vertex,
    pub attachments: [Vertex; 3],
    pub h1: Hypothesis,
    pub h2: Hypothesis,
    pub h3: Hypothesis,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<ProfileCheck>,
}

impl BrickCertificate {
    /// All three hypotheses hold.
    pub fn is_valid(&self) -> bool {
        self.h1.holds && self.h2.holds && self.h3.holds
    }

    pub fn profiles_hold(&self) -> bool {
        self.profiles.iter().all(|p| p.holds)
    }

    /// Whether this certificate was issued for `p`.
    pub fn covers(&self, p: &PointedGraph) -> bool {
        self.apex == p.apex()
            && self.attachments == p.attachments()
            && self.graph6 == serialize_graph6(p.graph())
    }
}

struct Tally {
    holds: bool,
    instances: usize,
    witness: Option<BrickWitness>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            holds: true,
            instances: 0,
            witness: None,
        }
    }

    fn done(self) -> Hypothesis {
        Hypothesis {
            holds: self.holds,
            instances: self.instances,
            witness: self.witness,
        }
    }

    /// `g - deleted` must have a factor (or must not, if `want` is false).
    fn expect(&mut self, g: &Graph, deleted: VertexSet, want: bool) -> Result<()> {
        self.instances += 1;
        if !self.holds {
            return Ok(());
        }
        let found = solve_factor(
            g,
            &FactorQuery::new().without_vertices(deleted.iter().copied()),
        )?;
        if found.is_some() != want {
            self.holds = false;
            self.witness = Some(BrickWitness {
                deleted,
                factor: found,
            });
        }
        Ok(())
    }
}

/// 5-vertex paths `y1 n1 a n2 y2` centred at `a`, each once.
pub fn five_paths_centred(g: &Graph, a: Vertex) -> Vec<[Vertex; 5]> {
    let nb: Vec<Vertex> = g.neighbors(a).collect();
    let mut out = Vec::new();
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            let (n1, n2) = (nb[i], nb[j]);
            for y1 in g.neighbors(n1).filter(|&y| y != a && y != n2) {
                for y2 in g.neighbors(n2).filter(|&y| y != a && y != n1 && y != y1) {
                    out.push([y1, n1, a, n2, y2]);
                }
            }
        }
    }
    out
}

/// 4-vertex paths `y a n w` with `a` as an inner vertex, each once.
pub fn four_paths_inner(g: &Graph, a: Vertex) -> Vec<[Vertex; 4]> {
    let mut out = Vec::new();
    for y in g.neighbors(a) {
        for n in g.neighbors(a).filter(|&n| n != y) {
            for w in g.neighbors(n).filter(|&w| w != a && w != y) {
                out.push([y, a, n, w]);
            }
        }
    }
    out
}

/// Vertex sets of trees `T` at `a` with `T - a` a 3-edge matching: `a`,
/// its neighbours `n_i`, and distinct partners `b_i ∉ N[a]` with
/// `n_i b_i` an edge.
pub fn spiders(g: &Graph, a: Vertex) -> Vec<VertexSet> {
    let nb: Vec<Vertex> = g.neighbors(a).collect();
    let closed: VertexSet = nb.iter().copied().chain([a]).collect();
    let options: Vec<Vec<Vertex>> = nb
        .iter()
        .map(|&n| g.neighbors(n).filter(|b| !closed.contains(b)).collect())
        .collect();
    let mut out = std::collections::BTreeSet::new();
    if nb.len() != 3 {
        return Vec::new();
    }
    for &b1 in &options[0] {
        for &b2 in options[1].iter().filter(|&&b| b != b1) {
            for &b3 in options[2].iter().filter(|&&b| b != b1 && b != b2) {
                let mut t = closed.clone();
                t.extend([b1, b2, b3]);
                out.insert(t);
            }
        }
    }
    out.into_iter().collect()
}

/// Verifies the hypotheses of the given parity class on `p` exhaustively.
pub fn check_brick(p: &PointedGraph, parity: Parity) -> Result<BrickCertificate> {
    let g = p.graph();
    if g.vertex_count() % 6 != parity.residue() {
        return Err(Error::invalid(format!(
            "brick has {} vertices, not {parity}",
            g.vertex_count()
        )));
    }
    let a = p.apex();
    let nb = g.neighbor_set(a);
    let closed: VertexSet = nb.iter().copied().chain([a]).collect();
    let (mut h1, mut h2, mut h3) = (Tally::new(), Tally::new(), Tally::new());
    match parity {
        Parity::TwoMod6 => {
            for x in g.vertices().filter(|x| !closed.contains(x)) {
                if g.neighbors(x).any(|w| nb.contains(&w)) {
                    let mut del = closed.clone();
                    del.insert(x);
                    h1.expect(g, del, false)?;
                }
            }
            for &z in &nb {
                h2.expect(g, [a, z].into(), true)?;
            }
            for w in five_paths_centred(g, a) {
                h3.expect(g, w.into_iter().collect(), true)?;
            }
        }
        Parity::FourMod6 => {
            for t in spiders(g, a) {
                h1.expect(g, t, false)?;
            }
            h2.expect(g, [a].into(), true)?;
            for pi in four_paths_inner(g, a) {
                h3.expect(g, pi.into_iter().collect(), true)?;
            }
        }
    }
    Ok(BrickCertificate {
        parity,
        graph6: serialize_graph6(g),
        apex: a,
        attachments: p.attachments(),
        h1: h1.done(),
        h2: h2.done(),
        h3: h3.done(),
        profiles: Vec::new(),
    })
}

struct Profile<'a> {
    g: &'a Graph,
    cuts: &'a [EdgeSet],
    check: ProfileCheck,
}

impl<'a> Profile<'a> {
    fn new(name: &str, g: &'a Graph, cuts: &'a [EdgeSet]) -> Profile<'a> {
        Profile {
            g,
            cuts,
            check: ProfileCheck {
                name: name.to_string(),
                holds: true,
                instances: 0,
                factors: 0,
                witness: None,
            },
        }
    }

    /// Every factor of `g - deleted` meets every cut in an allowed number
    /// of edges.
    fn every_factor(&mut self, deleted: VertexSet, allowed: &[usize]) -> Result<()> {
        self.check.instances += 1;
        if !self.check.holds {
            return Ok(());
        }
        let q = FactorQuery::new().without_vertices(deleted.iter().copied());
        let mut bad = None;
        let mut n = 0;
        for_each_factor(self.g, &q, |f| {
            n += 1;
            let edges = f.edges();
            if self
                .cuts
                .iter()
                .any(|k| !allowed.contains(&k.intersection(&edges).count()))
            {
                bad = Some(f);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        self.check.factors += n;
        if let Some(f) = bad {
            self.check.holds = false;
            self.check.witness = Some(BrickWitness {
                deleted,
                factor: Some(f),
            });
        }
        Ok(())
    }

    fn no_factor(&mut self, deleted: VertexSet) -> Result<()> {
        self.check.instances += 1;
        if !self.check.holds {
            return Ok(());
        }
        let q = FactorQuery::new().without_vertices(deleted.iter().copied());
        if let Some(f) = solve_factor(self.g, &q)? {
            self.check.holds = false;
            self.check.witness = Some(BrickWitness {
                deleted,
                factor: Some(f),
            });
        }
        Ok(())
    }
}

/// Certificate for `(Z, z)` built by `y_compose(A1, A2, Identity)`, with
/// the intersection profiles against `K_i = D(A_i, Z)`.
pub fn check_y_brick(y: &YComposition, parity: Parity) -> Result<BrickCertificate> {
    let p = y.as_brick()?;
    let mut cert = check_brick(&p, parity)?;
    let g = p.graph();
    let z = p.apex();
    let nb = g.neighbor_set(z);
    let closed: VertexSet = nb.iter().copied().chain([z]).collect();
    let cuts = y.cuts();
    let mut out = Vec::new();
    match parity {
        Parity::TwoMod6 => {
            let mut a1 = Profile::new("a1", g, &cuts);
            for v in g.vertices().filter(|v| !closed.contains(v)) {
                let mut del = closed.clone();
                del.insert(v);
                a1.no_factor(del)?;
            }
            out.push(a1.check);
            let mut a2 = Profile::new("a2", g, &cuts);
            for &z2 in &nb {
                a2.every_factor([z, z2].into(), &[1, 2])?;
            }
            out.push(a2.check);
            let mut a3 = Profile::new("a3", g, &cuts);
            for w in five_paths_centred(g, z) {
                a3.every_factor(w.into_iter().collect(), &[1, 2])?;
            }
            out.push(a3.check);
        }
        Parity::FourMod6 => {
            let mut a1 = Profile::new("a1", g, &cuts);
            for t in spiders(g, z) {
                a1.no_factor(t)?;
            }
            out.push(a1.check);
            let k4 = canonical_key(&named::k4());
            let both_k4 = (0..2).all(|i| match y.composition.brick(Vertex(i)) {
                crate::constructions::Brick::Pointed(q) => canonical_key(q.graph()) == k4,
                _ => false,
            });
            let allowed: &[usize] = if both_k4 { &[2] } else { &[0, 2, 3] };
            let mut a2 = Profile::new("a2", g, &cuts);
            a2.every_factor([z].into(), allowed)?;
            out.push(a2.check);
            let mut a3 = Profile::new("a3", g, &cuts);
            for pi in four_paths_inner(g, z) {
                a3.every_factor(pi.into_iter().collect(), &[0, 2])?;
            }
            out.push(a3.check);
            let mut a4 = Profile::new("a4", g, &cuts);
            a4.every_factor(closed.clone(), &[0])?;
            out.push(a4.check);
        }
    }
    cert.profiles = out;
    Ok(cert)
}
