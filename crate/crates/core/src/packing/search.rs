//! Branch-and-bound over 3-vertex paths.
//!
//! Every node branches on the uncovered vertex with the fewest live
//! candidate paths (ties broken by remaining degree, then index), over all
//! paths covering it as centre or end. Factor searches prune any node whose
//! uncovered part has a component of order not divisible by three.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Factor, FactorQuery, Path3};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

type Bits = Vec<u64>;

#[inline]
fn get(b: &[u64], i: usize) -> bool {
    b[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn set(b: &mut [u64], i: usize) {
    b[i >> 6] |= 1 << (i & 63);
}

#[inline]
fn clear(b: &mut [u64], i: usize) {
    b[i >> 6] &= !(1 << (i & 63));
}

/// Residual graph with the candidate paths a query allows.
struct Instance {
    ids: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    paths: Vec<[usize; 3]>,
    by_vertex: Vec<Vec<usize>>,
}

impl Instance {
    fn build(g: &Graph, q: &FactorQuery) -> Result<Instance> {
        q.validate(g)?;
        let ids: Vec<Vertex> = g
            .vertices()
            .filter(|v| !q.deleted_vertices.contains(v))
            .collect();
        let index: HashMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        let mut required: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in g.edges() {
            let (Some(&a), Some(&b)) = (index.get(&e.u()), index.get(&e.v())) else {
                continue;
            };
            if q.deleted_edges.contains(&e) || q.forbidden_edges.contains(&e) {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
            if q.required_edges.contains(&e) {
                required[a].push(b);
                required[b].push(a);
            }
        }
        // a vertex's required edges must all lie on the path covering it
        let respects = |w: usize, x: usize, y: Option<usize>| {
            required[w].iter().all(|&r| r == x || Some(r) == y)
        };
        let mut paths = Vec::new();
        for b in 0..n {
            for (i, &a) in adj[b].iter().enumerate() {
                for &c in &adj[b][i + 1..] {
                    if respects(b, a, Some(c)) && respects(a, b, None) && respects(c, b, None) {
                        paths.push([a, b, c]);
                    }
                }
            }
        }
        let mut by_vertex = vec![Vec::new(); n];
        for (k, p) in paths.iter().enumerate() {
            for &v in p {
                by_vertex[v].push(k);
            }
        }
        Ok(Instance {
            ids,
            adj,
            paths,
            by_vertex,
        })
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn words(&self) -> usize {
        self.n().div_ceil(64).max(1)
    }

    fn full(&self) -> Bits {
        let mut b = vec![0u64; self.words()];
        for i in 0..self.n() {
            set(&mut b, i);
        }
        b
    }

    fn live(&self, p: usize, open: &[u64]) -> bool {
        self.paths[p].iter().all(|&v| get(open, v))
    }

    fn to_path(&self, p: usize) -> Path3 {
        let [a, b, c] = self.paths[p];
        Path3::new(self.ids[a], self.ids[b], self.ids[c])
    }

    fn to_factor(&self, chosen: &[usize]) -> Factor {
        chosen.iter().map(|&p| self.to_path(p)).collect()
    }

    /// Open vertex with the fewest live candidates, with that count.
    fn pick(&self, open: &[u64]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.n() {
            if !get(open, v) {
                continue;
            }
            let count = self.by_vertex[v]
                .iter()
                .filter(|&&p| self.live(p, open))
                .count();
            let deg = self.adj[v].iter().filter(|&&w| get(open, w)).count();
            if best.is_none_or(|(c, d, _)| (count, deg) < (c, d)) {
                best = Some((count, deg, v));
                if count == 0 {
                    break;
                }
            }
        }
        best.map(|(c, _, v)| (v, c))
    }

    /// Orders of the components of the open vertices.
    fn component_orders(
        &self,
        open: &[u64],
        seen: &mut Bits,
        stack: &mut Vec<usize>,
    ) -> Vec<usize> {
        seen.iter_mut().for_each(|w| *w = 0);
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !get(open, s) || get(seen, s) {
                continue;
            }
            set(seen, s);
            stack.push(s);
            let mut size = 0;
            while let Some(x) = stack.pop() {
                size += 1;
                for &y in &self.adj[x] {
                    if get(open, y) && !get(seen, y) {
                        set(seen, y);
                        stack.push(y);
                    }
                }
            }
            out.push(size);
        }
        out
    }

    fn components(&self, open: &[u64]) -> Vec<Bits> {
        let mut seen = vec![0u64; self.words()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !get(open, s) || get(&seen, s) {
                continue;
            }
            let mut comp = vec![0u64; self.words()];
            set(&mut seen, s);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                set(&mut comp, x);
                for &y in &self.adj[x] {
                    if get(open, y) && !get(&seen, y) {
                        set(&mut seen, y);
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

struct FactorSearch<'a, F> {
    inst: &'a Instance,
    open: Bits,
    chosen: Vec<usize>,
    seen: Bits,
    stack: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&Instance, &[usize]) -> ControlFlow<()>> FactorSearch<'_, F> {
    fn run(&mut self, remaining: usize) -> ControlFlow<()> {
        if remaining == 0 {
            return (self.visit)(self.inst, &self.chosen);
        }
        let Some((v, count)) = self.inst.pick(&self.open) else {
            return ControlFlow::Continue(());
        };
        if count == 0 {
            return ControlFlow::Continue(());
        }
        let orders = self
            .inst
            .component_orders(&self.open, &mut self.seen, &mut self.stack);
        if orders.iter().any(|s| s % 3 != 0) {
            return ControlFlow::Continue(());
        }
        let inst = self.inst;
        for &p in &inst.by_vertex[v] {
            if !inst.live(p, &self.open) {
                continue;
            }
            for &x in &inst.paths[p] {
                clear(&mut self.open, x);
            }
            self.chosen.push(p);
            let flow = self.run(remaining - 3);
            self.chosen.pop();
            for &x in &inst.paths[p] {
                set(&mut self.open, x);
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn search_factors<F>(inst: &Instance, visit: F) -> ControlFlow<()>
where
    F: FnMut(&Instance, &[usize]) -> ControlFlow<()>,
{
    let n = inst.n();
    if !n.is_multiple_of(3) {
        return ControlFlow::Continue(());
    }
    let mut s = FactorSearch {
        inst,
        open: inst.full(),
        chosen: Vec::new(),
        seen: vec![0; inst.words()],
        stack: Vec::new(),
        visit,
    };
    s.run(n)
}

/// A Λ-factor of the constrained residual graph, if any exists.
pub fn solve_factor(g: &Graph, q: &FactorQuery) -> Result<Option<Factor>> {
    let inst = Instance::build(g, q)?;
    let mut found = None;
    let _ = search_factors(&inst, |inst, chosen| {
        found = Some(inst.to_factor(chosen));
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Whether `g` has a Λ-factor.
pub fn has_factor(g: &Graph) -> bool {
    solve_factor(g, &FactorQuery::default())
        .expect("empty query is valid")
        .is_some()
}

/// Visits every Λ-factor of the constrained instance exactly once. Returns
/// `true` when the enumeration ran to completion.
pub fn for_each_factor<F>(g: &Graph, q: &FactorQuery, mut visit: F) -> Result<bool>
where
    F: FnMut(Factor) -> ControlFlow<()>,
{
    let inst = Instance::build(g, q)?;
    let flow = search_factors(&inst, |inst, chosen| visit(inst.to_factor(chosen)));
    Ok(flow.is_continue())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    /// `true` when `count` is the exact number of factors.
    pub exhausted: bool,
    pub samples: Vec<Factor>,
}

/// Counts factors up to `cap`, keeping up to `min(cap, 1000)` samples.
pub fn enumerate_factors(g: &Graph, q: &FactorQuery, cap: u64) -> Result<Enumeration> {
    enumerate_factors_with(g, q, cap, cap.min(1000) as usize)
}

/// As [`enumerate_factors`] with an explicit sample budget.
///
/// Distinct branches fix different paths at the branching vertex, so no
/// factor (as a path edge-set) is produced twice; `count` needs no
/// deduplication table.
pub fn enumerate_factors_with(
    g: &Graph,
    q: &FactorQuery,
    cap: u64,
    samples: usize,
) -> Result<Enumeration> {
    let cap = cap.max(1);
    let mut out = Enumeration {
        count: 0,
        exhausted: true,
        samples: Vec::new(),
    };
    let inst = Instance::build(g, q)?;
    let _ = search_factors(&inst, |inst, chosen| {
        if out.count == cap {
            out.exhausted = false;
            return ControlFlow::Break(());
        }
        out.count += 1;
        if out.samples.len() < samples {
            out.samples.push(inst.to_factor(chosen));
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

struct Counter<'a> {
    inst: &'a Instance,
    memo: HashMap<Bits, u128>,
}

impl Counter<'_> {
    fn count(&mut self, open: &Bits) -> u128 {
        if open.iter().all(|&w| w == 0) {
            return 1;
        }
        if let Some(&c) = self.memo.get(open) {
            return c;
        }
        let inst = self.inst;
        let comps = inst.components(open);
        let result = if comps.len() > 1 {
            let mut prod = 1u128;
            for comp in &comps {
                prod *= self.count(comp);
                if prod == 0 {
                    break;
                }
            }
            prod
        } else {
            let order: u32 = open.iter().map(|w| w.count_ones()).sum();
            if !order.is_multiple_of(3) {
                0
            } else {
                match inst.pick(open) {
                    Some((v, c)) if c > 0 => self.branches(open, v).iter().map(|b| b.1).sum(),
                    _ => 0,
                }
            }
        };
        self.memo.insert(open.clone(), result);
        result
    }

    /// Live paths at `v` with the number of factors completing each.
    fn branches(&mut self, open: &Bits, v: usize) -> Vec<(usize, u128)> {
        let inst = self.inst;
        let mut out = Vec::new();
        for &p in &inst.by_vertex[v] {
            if inst.live(p, open) {
                let mut next = open.clone();
                for &x in &inst.paths[p] {
                    clear(&mut next, x);
                }
                out.push((p, self.count(&next)));
            }
        }
        out
    }
}

/// Exact number of Λ-factors, splitting into components and memoising on
/// the set of uncovered vertices.
pub fn count_factors(g: &Graph, q: &FactorQuery) -> Result<u128> {
    let inst = Instance::build(g, q)?;
    let mut c = Counter {
        inst: &inst,
        memo: HashMap::new(),
    };
    Ok(c.count(&inst.full()))
}

/// `k` factors drawn independently and uniformly from all Λ-factors of the
/// constrained instance; empty if there are none.
pub fn sample_factors(g: &Graph, q: &FactorQuery, k: usize, seed: u64) -> Result<Vec<Factor>> {
    let inst = Instance::build(g, q)?;
    let mut c = Counter {
        inst: &inst,
        memo: HashMap::new(),
    };
    if c.count(&inst.full()) == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let mut open = inst.full();
        let mut chosen = Vec::new();
        while let Some((v, _)) = inst.pick(&open) {
            let branches = c.branches(&open, v);
            let total: u128 = branches.iter().map(|b| b.1).sum();
            let mut r = rng.gen_range(0..total);
            let &(p, _) = branches
                .iter()
                .find(|b| {
                    if r < b.1 {
                        true
                    } else {
                        r -= b.1;
                        false
                    }
                })
                .expect("r < total");
            for &x in &inst.paths[p] {
                clear(&mut open, x);
            }
            chosen.push(p);
        }
        out.push(inst.to_factor(&chosen));
    }
    Ok(out)
}

struct PackSearch<'a> {
    inst: &'a Instance,
    open: Bits,
    chosen: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    memo: HashMap<Bits, usize>,
    seen: Bits,
    stack: Vec<usize>,
}

impl PackSearch<'_> {
    fn bound(&mut self) -> usize {
        self.inst
            .component_orders(&self.open, &mut self.seen, &mut self.stack)
            .iter()
            .map(|s| s / 3)
            .sum()
    }

    fn run(&mut self) {
        if self.best.len() == self.target {
            return;
        }
        let here = self.chosen.len();
        if here + self.bound() <= self.best.len() {
            return;
        }
        if let Some(&prev) = self.memo.get(&self.open) {
            if prev >= here {
                return;
            }
        }
        self.memo.insert(self.open.clone(), here);
        let Some((v, count)) = self.inst.pick(&self.open) else {
            if here > self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        let inst = self.inst;
        if count > 0 {
            for &p in &inst.by_vertex[v] {
                if !inst.live(p, &self.open) {
                    continue;
                }
                for &x in &inst.paths[p] {
                    clear(&mut self.open, x);
                }
                self.chosen.push(p);
                self.run();
                self.chosen.pop();
                for &x in &inst.paths[p] {
                    set(&mut self.open, x);
                }
            }
        }
        // v stays uncovered
        clear(&mut self.open, v);
        self.run();
        set(&mut self.open, v);
    }
}

/// `λ(G)` with a witness packing of that size.
pub fn max_lambda_packing(g: &Graph) -> (usize, Factor) {
    let inst = Instance::build(g, &FactorQuery::default()).expect("empty query is valid");
    let mut s = PackSearch {
        inst: &inst,
        open: inst.full(),
        chosen: Vec::new(),
        best: Vec::new(),
        target: inst.n() / 3,
        memo: HashMap::new(),
        seen: vec![0; inst.words()],
        stack: Vec::new(),
    };
    s.run();
    let witness = inst.to_factor(&s.best);
    (witness.len(), witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Edge};

    #[test]
    fn small_lambdas() {
        assert_eq!(max_lambda_packing(&named::k4()).0, 1);
        assert_eq!(max_lambda_packing(&named::k33()).0, 2);
        assert_eq!(max_lambda_packing(&named::petersen()).0, 3);
        assert_eq!(max_lambda_packing(&named::prism()).0, 2);
        assert_eq!(max_lambda_packing(&Graph::empty()).0, 0);
        assert_eq!(max_lambda_packing(&named::path(2)).0, 0);
        let (k, w) = max_lambda_packing(&named::cycle(7));
        assert_eq!(k, 2);
        w.validate_packing(&named::cycle(7)).unwrap();
    }

    #[test]
    fn k4_has_no_factor() {
        assert_eq!(
            solve_factor(&named::k4(), &FactorQuery::new()).unwrap(),
            None
        );
        let e = enumerate_factors(&named::k4(), &FactorQuery::new(), 10).unwrap();
        assert_eq!((e.count, e.exhausted), (0, true));
    }

    #[test]
    fn triangle_has_three_factors() {
        let e = enumerate_factors(&named::triangle(), &FactorQuery::new(), 100).unwrap();
        assert_eq!(e.count, 3);
        assert!(e.exhausted);
        assert_eq!(
            count_factors(&named::triangle(), &FactorQuery::new()).unwrap(),
            3
        );
    }

    #[test]
    fn prism_constrained_by_matching_cut() {
        // K = {03, 14, 25}; demand 03 and 14, forbid 25
        let p = named::prism();
        let q = FactorQuery::new()
            .requiring([Edge::new(0, 3), Edge::new(1, 4)])
            .forbidding([Edge::new(2, 5)]);
        let all = enumerate_factors(&p, &q, 100).unwrap();
        // the only two such factors: 2-0-3 + 1-4-5 and 0-3-5 + 2-1-4
        assert_eq!(all.count, 2);
        let want: Factor = [Path3::new(2, 0, 3), Path3::new(1, 4, 5)]
            .into_iter()
            .collect();
        assert!(all.samples.contains(&want));
        let f = solve_factor(&p, &q).unwrap().unwrap();
        f.validate_against(&p, &q).unwrap();
        let k = [Edge::new(0, 3), Edge::new(1, 4), Edge::new(2, 5)];
        let hit: Vec<_> = k.iter().filter(|e| f.edges().contains(e)).collect();
        assert_eq!(hit.len(), 2);
    }

    #[test]
    fn cap_reports_partial() {
        let g = named::cycle(12);
        // a 12-cycle has exactly 3 factors
        let full = enumerate_factors(&g, &FactorQuery::new(), 100).unwrap();
        assert_eq!((full.count, full.exhausted), (3, true));
        let part = enumerate_factors(&g, &FactorQuery::new(), 2).unwrap();
        assert_eq!((part.count, part.exhausted), (2, false));
        let exact = enumerate_factors(&g, &FactorQuery::new(), 3).unwrap();
        assert_eq!((exact.count, exact.exhausted), (3, true));
    }

    #[test]
    fn required_edges_at_one_vertex() {
        // three required edges at one vertex can never be satisfied
        let g = named::k33();
        let q = FactorQuery::new().requiring(g.star(Vertex(0)));
        assert_eq!(solve_factor(&g, &q).unwrap(), None);
        let q = FactorQuery::new().requiring([Edge::new(0, 3), Edge::new(0, 4)]);
        let f = solve_factor(&g, &q).unwrap().unwrap();
        assert!(f.paths().any(|p| p.center() == Vertex(0)));
    }
}
