//! Named verification suites over fixed constructions. Every check records
//! how many instances it covered and, on failure, a self-contained witness.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::claims::{classify_cut_factor, gen_corpus};
use crate::constructions::{
    build_r, compose, splice, triangle_expand, y_compose, Brick, Composition, PointedGraph,
};
use crate::error::{Error, Result};
use crate::graph::{named, serialize_graph6, Edge, EdgeSet, Graph, Vertex};
use crate::packing::{
    count_factors, for_each_factor, sample_factors, solve_factor, Factor, FactorQuery,
};
use crate::structure::{
    certify, check_y_brick, enumerate_blockades, enumerate_cycle_dipackings, frame_support,
    induces_cycle, lift_cycle_dipacking, lift_difactor, min_blockade, project_factor,
    verify_gamma_decomposition, BrickCertificate, Certified, DiClass, DiPacking, Parity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SpliceCases,
    TriangleExpansion,
    #[serde(rename = "compose-2mod6")]
    Compose2mod6,
    #[serde(rename = "compose-4mod6")]
    Compose4mod6,
    #[serde(rename = "brick-2mod6")]
    Brick2mod6,
    #[serde(rename = "brick-4mod6")]
    Brick4mod6,
    CutProfile,
    #[serde(rename = "gamma-2mod6")]
    Gamma2mod6,
    #[serde(rename = "gamma-4mod6")]
    Gamma4mod6,
    RFamily,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::SpliceCases,
        Suite::TriangleExpansion,
        Suite::Compose2mod6,
        Suite::Compose4mod6,
        Suite::Brick2mod6,
        Suite::Brick4mod6,
        Suite::CutProfile,
        Suite::Gamma2mod6,
        Suite::Gamma4mod6,
        Suite::RFamily,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SpliceCases => "splice-cases",
            Suite::TriangleExpansion => "triangle-expansion",
            Suite::Compose2mod6 => "compose-2mod6",
            Suite::Compose4mod6 => "compose-4mod6",
            Suite::Brick2mod6 => "brick-2mod6",
            Suite::Brick4mod6 => "brick-4mod6",
            Suite::CutProfile => "cut-profile",
            Suite::Gamma2mod6 => "gamma-2mod6",
            Suite::Gamma4mod6 => "gamma-4mod6",
            Suite::RFamily => "r-family",
        }
    }

    fn alias(self) -> &'static str {
        match self {
            Suite::SpliceCases => "2.4",
            Suite::TriangleExpansion => "4.1",
            Suite::Compose2mod6 => "4.2",
            Suite::Compose4mod6 => "4.3",
            Suite::Brick2mod6 => "4.4",
            Suite::Brick4mod6 => "4.5",
            Suite::CutProfile => "4.6",
            Suite::Gamma2mod6 => "5.1",
            Suite::Gamma4mod6 => "5.2",
            Suite::RFamily => "6.1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || x.alias() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub instances: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn new(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            instances: 0,
            detail: None,
            witness: None,
        }
    }

    /// Records the first failure only.
    fn fail(&mut self, witness: Value) {
        if self.passed {
            self.passed = false;
            self.witness = Some(witness);
        }
    }

    fn note(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Size parameter of the `R_s` family.
    pub s: usize,
    /// Largest product for which Γ entries are enumerated directly.
    pub cap: u64,
    /// Uniformly sampled factors per large composition.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            s: 1,
            cap: 10_000,
            samples: 200,
            seed: 1,
        }
    }
}

pub fn run_suite(suite: Suite, o: &SuiteOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::SpliceCases => splice_cases(o)?,
        Suite::TriangleExpansion => {
            let mut out = triangle_expansion("K33", &named::k33())?;
            out.extend(triangle_expansion("prism", &named::prism())?);
            out
        }
        Suite::Compose2mod6 => compose_2mod6(o)?,
        Suite::Compose4mod6 => compose_4mod6(o)?,
        Suite::Brick2mod6 => brick_checks(&y_brick(PointedGraph::prism())?, Parity::TwoMod6)?,
        Suite::Brick4mod6 => brick_checks(&y_brick(PointedGraph::k4())?, Parity::FourMod6)?,
        Suite::CutProfile => cut_profile(o)?,
        Suite::Gamma2mod6 => gamma(&prism_of(PointedGraph::prism())?, Parity::TwoMod6, o)?,
        Suite::Gamma4mod6 => gamma(&prism_of(PointedGraph::k4())?, Parity::FourMod6, o)?,
        Suite::RFamily => r_family(o.s)?,
    };
    Ok(SuiteReport { suite, checks })
}

/// Adds `graph6` and, when ids are not `0..n`, the id of each graph6 vertex.
fn bundle(g: &Graph, mut v: Value) -> Value {
    v["graph6"] = json!(serialize_graph6(g));
    if g.vertices().enumerate().any(|(i, x)| x.0 as usize != i) {
        v["vertex_ids"] = json!(g.vertex_set());
    }
    v
}

fn factor_witness(g: &Graph, f: &Factor) -> Value {
    bundle(g, json!({ "factor": f }))
}

fn y_brick(a: PointedGraph) -> Result<crate::constructions::YComposition> {
    y_compose([
        Brick::Pointed(a.clone()),
        Brick::Pointed(a),
        Brick::Identity,
    ])
}

/// `prism{(Z, z)}` with `Z = Y(A, A, identity)` at every frame vertex.
pub fn prism_of(a: PointedGraph) -> Result<Composition> {
    let z = y_brick(a)?.as_brick()?;
    let frame = named::prism();
    let bricks: BTreeMap<Vertex, Brick> = frame
        .vertices()
        .map(|u| (u, Brick::Pointed(z.clone())))
        .collect();
    compose(&frame, &bricks, &BTreeMap::new())
}

fn splice_cases(o: &SuiteOptions) -> Result<Vec<Check>> {
    let mut pool = Vec::new();
    for n in [4, 6, 8] {
        for g in gen_corpus(n)? {
            for v in g.vertices() {
                pool.push(PointedGraph::at(g.clone(), v)?);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut check = Check::new("every factor has exactly one case");
    let mut labels: BTreeMap<&'static str, u64> = BTreeMap::new();
    let mut splices = 0;
    while splices < 20 {
        let a = pool.choose(&mut rng).expect("pool is nonempty");
        let b = pool.choose(&mut rng).expect("pool is nonempty");
        let (a, b) = match a.vertex_count() % 3 {
            2 => (b, a),
            _ => (a, b),
        };
        if a.vertex_count() % 3 == 2 || (a.vertex_count() + b.vertex_count()) % 3 != 2 {
            continue;
        }
        splices += 1;
        let s = splice(a, b)?;
        for_each_factor(&s.graph, &FactorQuery::new(), |f| {
            check.instances += 1;
            match classify_cut_factor(&s, &f) {
                Ok(c) => *labels.entry(c.label()).or_default() += 1,
                Err(e) => check.fail(bundle(
                    &s.graph,
                    json!({ "a_side": s.a_side,
                        "seam": s.seam,
                        "factor": f,
                        "error": e.to_string(),
                    }),
                )),
            }
            ControlFlow::Continue(())
        })?;
    }
    Ok(vec![check.note(format!("20 splices; labels {labels:?}"))])
}

fn triangle_expansion(name: &str, frame: &Graph) -> Result<Vec<Check>> {
    let c = triangle_expand(frame)?;
    let g = &c.result;
    let blockades = enumerate_blockades(g, 3);
    let triangles: Vec<EdgeSet> = g
        .cycles()
        .into_iter()
        .filter(|t| t.len() == 3)
        .map(|t| {
            [
                Edge::new(t[0], t[1]),
                Edge::new(t[1], t[2]),
                Edge::new(t[0], t[2]),
            ]
            .into()
        })
        .collect();
    let mut proj = Check::new(format!(
        "{name}: every factor projects to a cycle-dipacking"
    ));
    let mut cuts = Check::new(format!("{name}: |K ∩ E(P)| in {{0,2}} on every 3-blockade"));
    let mut meet = Check::new(format!("{name}: every factor meets every triangle"));
    for_each_factor(g, &FactorQuery::new(), |f| {
        proj.instances += 1;
        let edges = f.edges();
        match project_factor(&c, &f) {
            Ok(d) if d.classify(&c.frame) == DiClass::CycleDipacking => {}
            _ => proj.fail(factor_witness(g, &f)),
        }
        for k in &blockades {
            cuts.instances += 1;
            if !matches!(k.edges.intersection(&edges).count(), 0 | 2) {
                cuts.fail(bundle(g, json!({ "factor": f, "blockade": k })));
            }
        }
        for t in &triangles {
            meet.instances += 1;
            if t.is_disjoint(&edges) {
                meet.fail(bundle(g, json!({ "factor": f, "triangle": t })));
            }
        }
        ControlFlow::Continue(())
    })?;
    let mut solver = Check::new(format!(
        "{name}: G - E(T) has no factor for every triangle T"
    ));
    for t in &triangles {
        solver.instances += 1;
        let q = FactorQuery::new().without_edges(t.iter().copied());
        if let Some(f) = solve_factor(g, &q)? {
            solver.fail(bundle(g, json!({ "query": q, "factor": f })));
        }
    }
    let cert = certify(c.clone(), Parity::FourMod6)?;
    let mut lifts = Check::new(format!(
        "{name}: every cycle-dipacking lifts and round-trips"
    ));
    for d in enumerate_cycle_dipackings(&cert.composition.frame) {
        lifts.instances += 1;
        if let Err(e) = lift_cycle_dipacking(&cert, &d) {
            lifts.fail(
                json!({ "frame": serialize_graph6(frame), "dipacking": d, "error": e.to_string() }),
            );
        }
    }
    let note = format!(
        "{} vertices, {} 3-blockades",
        g.vertex_count(),
        blockades.len()
    );
    Ok(vec![proj.note(note), cuts, meet, solver, lifts])
}

fn certificate_check(cert: &Certified) -> Check {
    let mut c = Check::new("bricks satisfy h1, h2, h3");
    let mut seen: Vec<&BrickCertificate> = Vec::new();
    for b in cert.certificates.values() {
        if seen.contains(&b) {
            continue;
        }
        seen.push(b);
        c.instances += 1;
        for (name, h) in [("h1", &b.h1), ("h2", &b.h2), ("h3", &b.h3)] {
            if !h.holds {
                c.fail(json!({ "graph6": b.graph6, "apex": b.apex, "hypothesis": name, "witness": h.witness }));
            }
        }
    }
    c
}

fn samples(c: &Composition, o: &SuiteOptions) -> Result<Vec<Factor>> {
    sample_factors(&c.result, &FactorQuery::new(), o.samples, o.seed)
}

fn compose_2mod6(o: &SuiteOptions) -> Result<Vec<Check>> {
    let cert = certify(prism_of(PointedGraph::prism())?, Parity::TwoMod6)?;
    let c = &cert.composition;
    let mut proj = Check::new("sampled factors project to Λ-difactors of the frame");
    for f in samples(c, o)? {
        proj.instances += 1;
        let d = project_factor(c, &f)?;
        let ok = d.classify(&c.frame) == DiClass::LambdaDifactor
            && d.as_factor()
                .is_some_and(|q| q.edges() == frame_support(c, &f));
        if !ok {
            proj.fail(factor_witness(&c.result, &f));
        }
    }
    let mut lifts = Check::new("every Λ-difactor of the frame lifts and round-trips");
    for_each_factor(&c.frame, &FactorQuery::new(), |q| {
        lifts.instances += 1;
        if let Err(e) = lift_difactor(&cert, &DiPacking::from_factor(&q)) {
            lifts.fail(json!({ "frame_factor": q, "error": e.to_string() }));
        }
        ControlFlow::Continue(())
    })?;
    let note = format!("{} vertices", c.result.vertex_count());
    Ok(vec![certificate_check(&cert).note(note), proj, lifts])
}

fn compose_4mod6(o: &SuiteOptions) -> Result<Vec<Check>> {
    let cert = certify(prism_of(PointedGraph::k4())?, Parity::FourMod6)?;
    let c = &cert.composition;
    let mut proj = Check::new("sampled factors project to cycle-dipackings");
    let mut bound = Check::new("|D(A_u) ∩ E(P)| in {0,2} for every brick");
    for f in samples(c, o)? {
        proj.instances += 1;
        if project_factor(c, &f)?.classify(&c.frame) != DiClass::CycleDipacking {
            proj.fail(factor_witness(&c.result, &f));
        }
        let edges = f.edges();
        for u in c.frame.vertices() {
            bound.instances += 1;
            let k = c.boundary_of(u);
            let n = k.intersection(&edges).count();
            if !matches!(n, 0 | 2) {
                bound.fail(bundle(
                    &c.result,
                    json!({ "factor": f,
                        "brick": u,
                        "boundary": k,
                        "used": n,
                    }),
                ));
            }
        }
    }
    let mut lifts = Check::new("every cycle-dipacking of the frame lifts and round-trips");
    for d in enumerate_cycle_dipackings(&c.frame) {
        lifts.instances += 1;
        if let Err(e) = lift_cycle_dipacking(&cert, &d) {
            lifts.fail(json!({ "dipacking": d, "error": e.to_string() }));
        }
    }
    let note = format!("{} vertices", c.result.vertex_count());
    Ok(vec![
        certificate_check(&cert).note(note),
        proj,
        bound,
        lifts,
    ])
}

fn brick_checks(y: &crate::constructions::YComposition, parity: Parity) -> Result<Vec<Check>> {
    let cert = check_y_brick(y, parity)?;
    let g = y.graph();
    let mut out = Vec::new();
    for (name, h) in [("h1", &cert.h1), ("h2", &cert.h2), ("h3", &cert.h3)] {
        let mut c = Check::new(name);
        c.instances = h.instances as u64;
        if let Some(w) = &h.witness {
            c.fail(bundle(
                g,
                json!({ "deleted": w.deleted, "factor": w.factor }),
            ));
        }
        out.push(c);
    }
    for p in &cert.profiles {
        let mut c = Check::new(format!("profile {}", p.name));
        c.instances = p.instances as u64;
        if let Some(w) = &p.witness {
            c.fail(bundle(
                g,
                json!({ "deleted": w.deleted,
                    "factor": w.factor,
                    "cuts": y.cuts(),
                }),
            ));
        }
        out.push(c.note(format!("{} factors inspected", p.factors)));
    }
    out[0].detail = Some(format!("{} vertices, apex {}", g.vertex_count(), cert.apex));
    Ok(out)
}

fn cut_profile(o: &SuiteOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (a, parity, allowed) in [
        (PointedGraph::prism(), Parity::TwoMod6, [1usize, 2]),
        (PointedGraph::k4(), Parity::FourMod6, [0, 2]),
    ] {
        let c = prism_of(a)?;
        let mut check = Check::new(format!(
            "{parity} bricks: |E(P) ∩ D(A_u)| in {{{}, {}}}",
            allowed[0], allowed[1]
        ));
        for f in samples(&c, o)? {
            let edges = f.edges();
            for u in c.frame.vertices() {
                check.instances += 1;
                let k = c.boundary_of(u);
                if !allowed.contains(&k.intersection(&edges).count()) {
                    check.fail(bundle(
                        &c.result,
                        json!({ "factor": f,
                            "boundary": k,
                        }),
                    ));
                }
            }
        }
        out.push(check);
    }
    Ok(out)
}

fn gamma(c: &Composition, parity: Parity, o: &SuiteOptions) -> Result<Vec<Check>> {
    let r = verify_gamma_decomposition(c, parity, o.cap, o.samples, o.seed)?;
    let mut products = Check::new("brick-local products equal direct counts");
    let mut skipped = 0;
    for e in &r.entries {
        match e.matches() {
            Some(true) => products.instances += 1,
            Some(false) => {
                products.instances += 1;
                products.fail(json!({ "frame": e.frame, "product": e.product.to_string(), "direct": e.direct }));
            }
            None => skipped += 1,
        }
    }
    let products = products.note(format!(
        "{} frame objects, {skipped} unchecked, product total {}",
        r.entries.len(),
        r.product_total()
    ));
    let mut g1 = Check::new("sampled factors lie in at most one Γ(G, P)");
    g1.instances = r.sampled as u64;
    if !r.gamma1 {
        g1.fail(bundle(&c.result, json!({})));
    }
    let mut g3 = Check::new("sampled factors lie in some Γ(G, P)");
    g3.instances = r.sampled as u64;
    if let Some(f) = r.strays.first() {
        g3.fail(bundle(
            &c.result,
            json!({ "factor": f,
                "projection": project_factor(c, f)?,
            }),
        ));
        g3.detail = Some(format!(
            "{} of {} samples outside every set",
            r.strays.len(),
            r.sampled
        ));
    }
    let mut out = vec![products, g1, g3];
    if r.product_total() <= u64::MAX as u128 {
        let total = count_factors(&c.result, &FactorQuery::new())?;
        let mut t = Check::new("product total equals the factor count of G");
        t.instances = 1;
        if total != r.product_total() {
            t.fail(json!({ "count": total.to_string(), "product_total": r.product_total().to_string() }));
        }
        out.push(t.note(format!("{total} factors")));
    }
    Ok(out)
}

fn r_family(s: usize) -> Result<Vec<Check>> {
    let r = build_r(s)?;
    let g = &r.graph;
    let mut a1 = Check::new("R_s - (L ∪ L') has no factor for every blocking pair");
    for (l, l2) in r.blocking_pairs() {
        a1.instances += 1;
        let q = FactorQuery::new().without_vertices(l.vertices().into_iter().chain(l2.vertices()));
        if let Some(f) = solve_factor(g, &q)? {
            a1.fail(bundle(g, json!({ "query": q, "factor": f })));
        }
    }
    let mut a3 = Check::new("R_s - L - e has a factor for every edge e and path L of R_s - e");
    let paths = g.paths(3);
    for e in g.edges() {
        for p in &paths {
            if p.windows(2).any(|w| Edge::new(w[0], w[1]) == e) {
                continue;
            }
            a3.instances += 1;
            let q = FactorQuery::new()
                .without_edges([e])
                .without_vertices(p.iter().copied());
            if solve_factor(g, &q)?.is_none() {
                a3.fail(bundle(g, json!({ "query": q })));
            }
        }
    }
    let expected = if s == 1 { 5 } else { 6 };
    let (c, b) = min_blockade(g)?;
    let mut a2 = Check::new(format!("c(R_s) = {expected}"));
    a2.instances = 1;
    if c != expected {
        a2.fail(bundle(g, json!({ "c": c, "blockade": b })));
    }
    let mut out = vec![a1.note(format!("{} vertices", g.vertex_count())), a2];
    if s == 1 {
        let mut five = Check::new("every 5-blockade of R_1 has a 5-cycle side");
        for b in enumerate_blockades(g, 5) {
            five.instances += 1;
            let ok = b.sides(g).is_some_and(|(x, y)| {
                (x.len() == 5 && induces_cycle(g, &x)) || (y.len() == 5 && induces_cycle(g, &y))
            });
            if !ok {
                five.fail(bundle(g, json!({ "blockade": b })));
            }
        }
        out.push(five);
    }
    out.push(a3);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_aliases() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.alias().parse::<Suite>().unwrap(), s);
            assert_eq!(
                serde_json::to_string(&s).unwrap(),
                format!("\"{}\"", s.name())
            );
        }
        assert!("7.1".parse::<Suite>().is_err());
    }

    #[test]
    fn r1_suite_passes() {
        let r = run_suite(Suite::RFamily, &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
