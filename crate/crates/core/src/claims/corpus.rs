use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::constructions::gadget_edge_link;
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, canonical_key, classify, parse_graph6, serialize_graph6, Graph,
};

/// Every graph obtained from `g` by one edge link, in canonical form and
/// keyed by canonical key.
pub fn edge_link_children(g: &Graph) -> Result<BTreeMap<Vec<u8>, Graph>> {
    let edges: Vec<_> = g.edges().collect();
    let mut out = BTreeMap::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let h = gadget_edge_link(g, edges[i], edges[j])?.graph;
            let key = canonical_key(&h);
            if !out.contains_key(&key) && classify(&h).is_cubic_3_connected() {
                out.insert(key, canonical_form(&h));
            }
        }
    }
    Ok(out)
}

/// All cubic 3-connected graphs on `n` vertices up to isomorphism, in
/// canonical form and sorted by canonical key. Every such graph other than
/// `K4` is an edge link of one on `n - 2` vertices, so the levels are built
/// by closure from `K4`.
pub fn gen_corpus(n: usize) -> Result<Vec<Graph>> {
    if n % 2 == 1 || !(4..=14).contains(&n) {
        return Err(Error::invalid(format!(
            "corpus size must be even and between 4 and 14, got {n}"
        )));
    }
    let mut level: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    let k4 = crate::graph::named::k4();
    level.insert(canonical_key(&k4), canonical_form(&k4));
    for _ in (4..n).step_by(2) {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for (k, h) in edge_link_children(g)? {
                next.entry(k).or_insert(h);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Newline-delimited graph6; blank lines and lines starting with `#` are
/// skipped.
pub fn read_corpus(r: impl BufRead) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::invalid(format!("line {}: {e}", i + 1)))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_graph6(t).map_err(|e| Error::invalid(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

pub fn write_corpus(w: &mut impl Write, graphs: &[Graph]) -> std::io::Result<()> {
    for g in graphs {
        writeln!(w, "{}", serialize_graph6(g))?;
    }
    Ok(())
}
