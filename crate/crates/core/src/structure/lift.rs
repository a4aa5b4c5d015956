//! Lifting frame Λ-difactors and cycle-dipackings to Λ-factors of a
//! composition, through brick-local subproblems.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::constructions::{Brick, Composition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::packing::{count_factors, for_each_factor, Factor, FactorQuery};

use super::brick::{check_brick, BrickCertificate, Parity};
use super::dipacking::{dipacking_cycles, project_factor, DiClass, DiPacking};

/// A composition together with one certificate per non-identity brick.
#[derive(Debug, Clone)]
pub struct Certified {
    pub composition: Composition,
    pub parity: Parity,
    pub certificates: BTreeMap<Vertex, BrickCertificate>,
}

impl Certified {
    /// Whether every brick is certified (identity bricks count as
    /// certified for the 2 mod 6 class only).
    pub fn all_valid(&self) -> bool {
        self.failing_brick(&["h1", "h2", "h3"]).is_none()
    }

    /// Whether the hypotheses the lifts use (h2, h3) hold for every brick.
    pub fn liftable(&self) -> bool {
        self.failing_brick(&["h2", "h3"]).is_none()
    }

    fn failing_brick(&self, needed: &[&str]) -> Option<(Vertex, String)> {
        for (&u, b) in &self.composition.bricks {
            match b {
                Brick::Identity if self.parity == Parity::TwoMod6 => {}
                Brick::Identity => return Some((u, "identity brick is not 4 mod 6".into())),
                Brick::Pointed(p) => match self.certificates.get(&u) {
                    Some(c) if c.covers(p) && c.parity == self.parity => {
                        for (name, h) in [("h1", &c.h1), ("h2", &c.h2), ("h3", &c.h3)] {
                            if needed.contains(&name) && !h.holds {
                                return Some((u, format!("brick fails {name}")));
                            }
                        }
                    }
                    _ => return Some((u, "no certificate".into())),
                },
            }
        }
        None
    }

    fn require_liftable(&self) -> Result<()> {
        match self.failing_brick(&["h2", "h3"]) {
            Some((u, why)) => Err(Error::Construction(format!("brick at {u}: {why}"))),
            None => Ok(()),
        }
    }
}

/// Certifies every distinct brick of `c` once.
pub fn certify(c: Composition, parity: Parity) -> Result<Certified> {
    let mut done: Vec<BrickCertificate> = Vec::new();
    let mut certificates = BTreeMap::new();
    for (&u, b) in &c.bricks {
        if let Brick::Pointed(p) = b {
            let cert = match done.iter().find(|d| d.covers(p)) {
                Some(d) => d.clone(),
                None => {
                    let d = check_brick(p, parity)?;
                    done.push(d.clone());
                    d
                }
            };
            certificates.insert(u, cert);
        }
    }
    Ok(Certified {
        composition: c,
        parity,
        certificates,
    })
}

/// Local graph for one brick, with the id of the helper leaf if any.
pub(crate) struct Local {
    pub graph: Graph,
    pub leaf: Option<Vertex>,
}

/// `A_1^u = A_u - p_u`, where `p_u` is the end of `α(uv)` in `A_u`.
pub(crate) fn a1(c: &Composition, u: Vertex, v: Vertex) -> Local {
    let p = c.seam_end(u, v);
    let mut keep = c.interiors[&u].clone();
    keep.remove(&p);
    Local {
        graph: c.result.induced(&keep).expect("interior subset"),
        leaf: None,
    }
}

/// `A_2^v`: `A_v` plus the seam edges from `u` and `w` with their ends.
pub(crate) fn a2(c: &Composition, v: Vertex, u: Vertex, w: Vertex) -> Local {
    let g = c
        .interior_graph(v)
        .with_edges([
            c.alpha[&crate::graph::Edge::new(u, v)],
            c.alpha[&crate::graph::Edge::new(w, v)],
        ])
        .expect("seam edges are fresh");
    Local {
        graph: g,
        leaf: None,
    }
}

/// `A_*^v` for `u -> v -> w`: `A_v`, both seam edges with their ends, and
/// a new leaf on the `w`-side end.
pub(crate) fn a_star(c: &Composition, v: Vertex, u: Vertex, w: Vertex) -> Local {
    let leaf = Vertex(c.result.max_id().map_or(0, |m| m.0 + 1));
    let pw = c.seam_end(w, v);
    let g = c
        .interior_graph(v)
        .with_edges([
            c.alpha[&crate::graph::Edge::new(u, v)],
            c.alpha[&crate::graph::Edge::new(v, w)],
            crate::graph::Edge::new(pw, leaf),
        ])
        .expect("seam edges are fresh");
    Local {
        graph: g,
        leaf: Some(leaf),
    }
}

/// `A^u - a^u`.
pub(crate) fn a_interior(c: &Composition, u: Vertex) -> Local {
    Local {
        graph: c.interior_graph(u),
        leaf: None,
    }
}

pub(crate) fn local_count(l: &Local) -> Result<u128> {
    count_factors(&l.graph, &FactorQuery::new())
}

/// Lexicographically least factor of a local graph, without the helper
/// leaf's path.
fn least_factor(l: &Local, brick: Vertex) -> Result<Factor> {
    let mut best: Option<Factor> = None;
    for_each_factor(&l.graph, &FactorQuery::new(), |f| {
        if best.as_ref().is_none_or(|b| f < *b) {
            best = Some(f);
        }
        ControlFlow::Continue(())
    })?;
    let f = best.ok_or_else(|| {
        Error::Construction(format!(
            "brick at {brick}: local subproblem has no Λ-factor"
        ))
    })?;
    Ok(match l.leaf {
        Some(z) => f.paths().filter(|p| !p.contains(z)).copied().collect(),
        None => f,
    })
}

fn finish(c: &Composition, d: &DiPacking, f: Factor) -> Result<Factor> {
    f.validate_factor(&c.result)
        .map_err(|e| Error::Construction(format!("assembled paths are not a factor: {e}")))?;
    let back = project_factor(c, &f)?;
    if back != *d {
        return Err(Error::Construction(format!(
            "lift projects to {:?}, not the requested {:?}",
            back.arcs, d.arcs
        )));
    }
    Ok(f)
}

/// A Λ-factor `P` of the composition with `→F(P, G) = d`, for a
/// Λ-difactor `d` of the frame and 2 mod 6 bricks.
pub fn lift_difactor(c: &Certified, d: &DiPacking) -> Result<Factor> {
    if c.parity != Parity::TwoMod6 {
        return Err(Error::invalid("Λ-difactor lifts need 2 mod 6 bricks"));
    }
    c.require_liftable()?;
    let comp = &c.composition;
    if d.classify(&comp.frame) != DiClass::LambdaDifactor {
        return Err(Error::invalid("not a Λ-difactor of the frame"));
    }
    let frame_factor = d.as_factor().expect("classified");
    let mut out = Factor::new();
    for p in frame_factor.paths() {
        let [u, w] = p.ends();
        let v = p.center();
        out.extend(least_factor(&a1(comp, u, v), u)?);
        out.extend(least_factor(&a1(comp, w, v), w)?);
        out.extend(least_factor(&a2(comp, v, u, w), v)?);
    }
    finish(comp, d, out)
}

/// A Λ-factor `P` with `→F(P, G) = d` for a cycle-dipacking `d` of the
/// frame and 4 mod 6 bricks.
pub fn lift_cycle_dipacking(c: &Certified, d: &DiPacking) -> Result<Factor> {
    if c.parity != Parity::FourMod6 {
        return Err(Error::invalid("cycle-dipacking lifts need 4 mod 6 bricks"));
    }
    c.require_liftable()?;
    let comp = &c.composition;
    if d.classify(&comp.frame) != DiClass::CycleDipacking {
        return Err(Error::invalid("not a cycle-dipacking of the frame"));
    }
    let mut out = Factor::new();
    let on = d.vertices();
    for cyc in dipacking_cycles(d)? {
        let k = cyc.len();
        for i in 0..k {
            let (u, v, w) = (cyc[(i + k - 1) % k], cyc[i], cyc[(i + 1) % k]);
            out.extend(least_factor(&a_star(comp, v, u, w), v)?);
        }
    }
    for u in comp.frame.vertices().filter(|u| !on.contains(u)) {
        out.extend(least_factor(&a_interior(comp, u), u)?);
    }
    finish(comp, d, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::triangle_expand;
    use crate::graph::named;
    use crate::structure::enumerate_cycle_dipackings;

    #[test]
    fn k33_triangle_expansion_lifts_every_cycle_dipacking() {
        let c = certify(triangle_expand(&named::k33()).unwrap(), Parity::FourMod6).unwrap();
        assert!(c.all_valid());
        for d in enumerate_cycle_dipackings(&c.composition.frame) {
            let f = lift_cycle_dipacking(&c, &d).unwrap();
            assert!(f.is_factor_of(&c.composition.result));
        }
    }

    #[test]
    fn empty_dipacking_lifts_to_triangles() {
        let c = certify(triangle_expand(&named::k33()).unwrap(), Parity::FourMod6).unwrap();
        let f = lift_cycle_dipacking(&c, &DiPacking::new()).unwrap();
        assert_eq!(f.len(), 6);
        for p in f.paths() {
            let owners: std::collections::BTreeSet<_> = p
                .vertices()
                .iter()
                .map(|&x| c.composition.owner(x).unwrap())
                .collect();
            assert_eq!(owners.len(), 1);
        }
    }

    #[test]
    fn wrong_class_rejected() {
        let c = certify(triangle_expand(&named::k33()).unwrap(), Parity::FourMod6).unwrap();
        assert!(lift_difactor(&c, &DiPacking::new()).is_err());
    }
}
