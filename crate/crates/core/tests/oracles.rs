//! Slow independent oracles for the corpus generator and the sampler.

use std::collections::BTreeMap;

use lambda_pack_core::claims::gen_corpus;
use lambda_pack_core::graph::{canonical_key, classify, named, Graph};
use lambda_pack_core::packing::{count_factors, enumerate_factors, sample_factors, FactorQuery};

type Adj = Vec<Vec<usize>>;

/// Every labelled cubic graph on `n` vertices up to interchanging vertices
/// that have no edges yet: vertices are completed in order and an edge to
/// a fresh vertex always goes to the lowest fresh one.
fn cubic_graphs(n: usize) -> Vec<Adj> {
    fn go(adj: &mut Adj, v: usize, out: &mut Vec<Adj>) {
        let n = adj.len();
        if v == n {
            out.push(adj.clone());
            return;
        }
        if adj[v].len() == 3 {
            return go(adj, v + 1, out);
        }
        let last = adj[v].iter().copied().filter(|&w| w > v).max().unwrap_or(v);
        let mut fresh_tried = false;
        for w in last + 1..n {
            if adj[w].len() == 3 {
                continue;
            }
            if adj[w].is_empty() {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            adj[v].push(w);
            adj[w].push(v);
            go(adj, v, out);
            adj[v].pop();
            adj[w].pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![Vec::new(); n], 0, &mut out);
    out
}

fn connected_without(adj: &Adj, gone: &[usize]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|v| !gone.contains(v)) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] && !gone.contains(&w) {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == n - gone.len()
}

fn three_connected(adj: &Adj) -> bool {
    let n = adj.len();
    (0..n).all(|a| (a + 1..n).all(|b| connected_without(adj, &[a, b])))
}

/// Sorted per-vertex (triangles, sum of squared distances) signature.
fn invariant(adj: &Adj) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut sig: Vec<(usize, usize)> = (0..n)
        .map(|v| {
            let tri = adj[v]
                .iter()
                .flat_map(|&a| adj[v].iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| a < b && adj[a].contains(&b))
                .count();
            let mut dist = vec![usize::MAX; n];
            dist[v] = 0;
            let mut queue = std::collections::VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            (tri, dist.iter().map(|d| d * d).sum())
        })
        .collect();
    sig.sort_unstable();
    sig
}

fn isomorphic(a: &Adj, b: &Adj) -> bool {
    fn extend(a: &Adj, b: &Adj, map: &mut Vec<usize>, used: &mut Vec<bool>, v: usize) -> bool {
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used[w] {
                continue;
            }
            let ok = a[v]
                .iter()
                .filter(|&&u| u < v)
                .all(|&u| b[w].contains(&map[u]))
                && (0..v)
                    .filter(|&u| !a[v].contains(&u))
                    .all(|u| !b[w].contains(&map[u]));
            if ok {
                map[v] = w;
                used[w] = true;
                if extend(a, b, map, used, v + 1) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut vec![0; a.len()], &mut vec![false; b.len()], 0)
}

fn classes(n: usize) -> usize {
    let mut buckets: BTreeMap<Vec<(usize, usize)>, Vec<Adj>> = BTreeMap::new();
    for g in cubic_graphs(n).into_iter().filter(three_connected) {
        let reps = buckets.entry(invariant(&g)).or_default();
        if !reps.iter().any(|r| isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    buckets.values().map(Vec::len).sum()
}

#[test]
fn corpus_counts_match_direct_generation() {
    for n in [4, 6, 8, 10, 12, 14] {
        assert_eq!(gen_corpus(n).unwrap().len(), classes(n), "n = {n}");
    }
}

#[test]
fn corpus_members_are_distinct_cubic_3_connected() {
    let expected = [(4, 1), (6, 2), (8, 4), (10, 14), (12, 57), (14, 341)];
    for (n, count) in expected {
        let graphs = gen_corpus(n).unwrap();
        assert_eq!(graphs.len(), count, "n = {n}");
        let mut keys: Vec<Vec<u8>> = graphs.iter().map(canonical_key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), count);
        for g in &graphs {
            let s = classify(g);
            assert!(s.is_cubic && s.connectivity_floor == 3);
        }
    }
}

fn uniformity(g: &Graph, draws: usize) {
    let all = enumerate_factors(g, &FactorQuery::new(), 10_000).unwrap();
    assert!(all.exhausted);
    assert_eq!(
        all.count as u128,
        count_factors(g, &FactorQuery::new()).unwrap()
    );
    let mut hits: BTreeMap<_, usize> = all.samples.iter().map(|f| (f.clone(), 0)).collect();
    for f in sample_factors(g, &FactorQuery::new(), draws, 3).unwrap() {
        *hits.get_mut(&f).expect("sampled factor is enumerated") += 1;
    }
    let k = hits.len() as f64;
    let expected = draws as f64 / k;
    let chi2: f64 = hits
        .values()
        .map(|&h| (h as f64 - expected).powi(2) / expected)
        .sum();
    // well above the 99.9% point for these degrees of freedom
    assert!(chi2 < 3.0 * k + 30.0, "chi2 {chi2} over {k} cells");
}

#[test]
fn sampler_is_uniform() {
    uniformity(&named::prism(), 6000);
    uniformity(&named::k33(), 6000);
    let g = gen_corpus(12).unwrap().swap_remove(0);
    uniformity(&g, 20_000);
}
