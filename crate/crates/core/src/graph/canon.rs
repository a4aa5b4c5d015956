//! Canonical labeling by colour refinement plus individualization.
//!
//! Every leaf of the search tree yields a labeling; the key is the least
//! adjacency string over the explored leaves. At each node only children
//! whose refined quotient matrix is minimal are explored, which is a
//! label-invariant choice and so keeps the key an isomorphism invariant.

use super::{Edge, Graph, Vertex};

struct Canon<'a> {
    adj: &'a [Vec<usize>],
    best: Option<Vec<u8>>,
}

impl Canon<'_> {
    fn refine(&self, colors: &mut [u32]) {
        let n = colors.len();
        let mut classes = count_classes(colors);
        loop {
            let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[v], nb, v)
                })
                .collect();
            sigs.sort();
            let mut rank = 0u32;
            for i in 0..n {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    rank += 1;
                }
                colors[sigs[i].2] = rank;
            }
            let now = rank as usize + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    /// Quotient matrix of an equitable colouring.
    fn invariant(&self, colors: &[u32]) -> Vec<u32> {
        let k = count_classes(colors);
        let mut rep = vec![usize::MAX; k];
        let mut size = vec![0u32; k];
        for (v, &c) in colors.iter().enumerate() {
            size[c as usize] += 1;
            if rep[c as usize] == usize::MAX {
                rep[c as usize] = v;
            }
        }
        let mut out = size.clone();
        for &r in &rep {
            let mut row = vec![0u32; k];
            for &w in &self.adj[r] {
                row[colors[w] as usize] += 1;
            }
            out.extend(row);
        }
        out
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = colors.len();
        let mut at = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            at[c as usize] = v;
        }
        let mut form = Vec::with_capacity(n * n / 16 + 1);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                let bit = self.adj[at[j]].binary_search(&at[i]).is_ok();
                acc = (acc << 1) | bit as u8;
                filled += 1;
                if filled == 8 {
                    form.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            form.push(acc << (8 - filled));
        }
        if self.best.as_ref().is_none_or(|b| form < *b) {
            self.best = Some(form);
        }
    }

    fn search(&mut self, colors: Vec<u32>) {
        let n = colors.len();
        let k = count_classes(&colors);
        if k == n {
            self.leaf(&colors);
            return;
        }
        let mut size = vec![0usize; k];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..k)
            .filter(|&c| size[c] > 1)
            .min_by_key(|&c| (size[c], c))
            .unwrap() as u32;
        let mut children: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for v in (0..n).filter(|&v| colors[v] == target) {
            let mut child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| if c < target || w == v { c } else { c + 1 })
                .collect();
            self.refine(&mut child);
            let inv = self.invariant(&child);
            children.push((inv, child));
        }
        let least = children.iter().map(|(i, _)| i).min().unwrap().clone();
        for (inv, child) in children {
            if inv == least {
                self.search(child);
            }
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Byte string equal for two graphs iff they are isomorphic.
pub fn canonical_key(g: &Graph) -> Vec<u8> {
    let adj = g.dense_adj();
    let n = adj.len();
    let mut key = (n as u32).to_be_bytes().to_vec();
    if n == 0 {
        return key;
    }
    let mut canon = Canon { adj, best: None };
    let mut colors = vec![0u32; n];
    canon.refine(&mut colors);
    canon.search(colors);
    key.extend(canon.best.unwrap());
    key
}

/// The representative of `g`'s isomorphism class encoded by its key, on
/// vertices `0..n`.
pub fn canonical_form(g: &Graph) -> Graph {
    let key = canonical_key(g);
    let n = u32::from_be_bytes(key[..4].try_into().unwrap());
    let bits = &key[4..];
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if bits[k / 8] >> (7 - k % 8) & 1 == 1 {
                edges.push(Edge::new(i, j));
            }
            k += 1;
        }
    }
    Graph::from_parts((0..n).map(Vertex), edges).expect("decoded key is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn relabeled_k4_same_key() {
        let k4 = named::k4();
        let h = k4.relabel(|v| Vertex(10 + 3 * v.0)).unwrap();
        assert_eq!(canonical_key(&k4), canonical_key(&h));
    }

    #[test]
    fn canonical_form_is_isomorphic_and_stable() {
        let g = named::petersen();
        let perm = [3u32, 8, 1, 6, 0, 9, 4, 2, 7, 5];
        let h = g.relabel(|v| Vertex(perm[v.0 as usize])).unwrap();
        let f = canonical_form(&g);
        assert_eq!(f, canonical_form(&h));
        assert_eq!(canonical_key(&f), canonical_key(&g));
        assert_eq!(f.edge_count(), 15);
    }

    #[test]
    fn k33_and_prism_differ() {
        assert_ne!(canonical_key(&named::k33()), canonical_key(&named::prism()));
    }

    #[test]
    fn petersen_permuted() {
        let g = named::petersen();
        let perm = [7u32, 2, 9, 0, 4, 1, 8, 3, 6, 5];
        let h = g.relabel(|v| Vertex(perm[v.0 as usize])).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&h));
        assert_ne!(canonical_key(&g), canonical_key(&named::cube()));
    }
}
