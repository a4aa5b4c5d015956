use crate::graph::{Graph, Vertex, VertexSet};

/// `λ(G)` by plain include/exclude recursion over every 3-vertex path,
/// pruning only on disjointness. Kept independent of the solver; use on
/// small graphs only.
pub fn oracle_max_packing(g: &Graph) -> usize {
    let paths = g.paths(3);
    fn go(paths: &[Vec<Vertex>], i: usize, used: &mut VertexSet) -> usize {
        if i == paths.len() {
            return 0;
        }
        let skip = go(paths, i + 1, used);
        let p = &paths[i];
        if p.iter().any(|v| used.contains(v)) {
            return skip;
        }
        used.extend(p.iter().copied());
        let take = 1 + go(paths, i + 1, used);
        for v in p {
            used.remove(v);
        }
        skip.max(take)
    }
    go(&paths, 0, &mut VertexSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn known_values() {
        assert_eq!(oracle_max_packing(&named::k4()), 1);
        assert_eq!(oracle_max_packing(&named::prism()), 2);
        assert_eq!(oracle_max_packing(&named::k33()), 2);
        assert_eq!(oracle_max_packing(&named::petersen()), 3);
    }
}
