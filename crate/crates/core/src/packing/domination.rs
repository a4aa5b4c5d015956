use super::Factor;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

fn dominates(g: &Graph, set: &VertexSet) -> bool {
    g.vertices()
        .all(|v| set.contains(&v) || g.neighbors(v).any(|w| set.contains(&w)))
}

/// Path centres of a Λ-factor; they dominate `G` with `v(G)/3` vertices.
pub fn domination_from_factor(g: &Graph, f: &Factor) -> Result<VertexSet> {
    f.validate_factor(g)?;
    let centers = f.centers();
    if !dominates(g, &centers) || centers.len() * 3 != g.vertex_count() {
        return Err(Error::Construction(format!(
            "centres {centers:?} do not dominate"
        )));
    }
    Ok(centers)
}

/// A minimum dominating set, by iterative deepening from the counting
/// lower bound: every branch picks a member of the closed neighbourhood of
/// the first undominated vertex.
pub fn min_dominating_set(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    if n == 0 {
        return VertexSet::new();
    }
    let adj = g.dense_adj();
    let reach = g.max_degree() + 1;
    let upper = greedy(adj);
    let lower = n.div_ceil(reach);
    for k in lower..upper.len() {
        let mut cover = vec![0u32; n];
        let mut pick = Vec::new();
        if search(adj, reach, k, &mut cover, &mut pick) {
            return pick.into_iter().map(|i| g.id_at(i)).collect();
        }
    }
    upper.into_iter().map(|i| g.id_at(i)).collect()
}

/// `γ(G)`.
pub fn gamma_exact(g: &Graph) -> usize {
    min_dominating_set(g).len()
}

fn greedy(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut covered = vec![false; n];
    let mut pick = Vec::new();
    while covered.iter().any(|c| !c) {
        let gain =
            |v: usize| (!covered[v]) as usize + adj[v].iter().filter(|&&w| !covered[w]).count();
        let v = (0..n)
            .max_by_key(|&v| (gain(v), std::cmp::Reverse(v)))
            .unwrap();
        covered[v] = true;
        for &w in &adj[v] {
            covered[w] = true;
        }
        pick.push(v);
    }
    pick
}

fn search(
    adj: &[Vec<usize>],
    reach: usize,
    budget: usize,
    cover: &mut [u32],
    pick: &mut Vec<usize>,
) -> bool {
    let open = cover.iter().filter(|&&c| c == 0).count();
    let Some(u) = cover.iter().position(|&c| c == 0) else {
        return true;
    };
    if open > budget * reach {
        return false;
    }
    let mut closed = vec![u];
    closed.extend(adj[u].iter().copied());
    for w in closed {
        cover[w] += 1;
        for &x in &adj[w] {
            cover[x] += 1;
        }
        pick.push(w);
        if search(adj, reach, budget - 1, cover, pick) {
            return true;
        }
        pick.pop();
        cover[w] -= 1;
        for &x in &adj[w] {
            cover[x] -= 1;
        }
    }
    false
}
