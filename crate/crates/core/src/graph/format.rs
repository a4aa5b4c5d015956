//! graph6 / sparse6 encodings and DOT import/export.
//!
//! Vertices are written in the graph's id order; parsed graphs use ids
//! `0..n`.

use std::fmt::Write as _;

use std::collections::BTreeSet;

use super::{Edge, Graph, Vertex};
use crate::error::{Error, Result};

const MAX_N: usize = 68_719_476_735;

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn check_byte(bytes: &[u8], pos: usize) -> Result<u8> {
    match bytes.get(pos) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(Error::parse(pos, format!("byte {b:#04x} outside 63..=126"))),
        None => Err(Error::parse(pos, "truncated header")),
    }
}

/// Returns `(n, header length)` for the size field starting at `start`.
fn decode_n(bytes: &[u8], start: usize) -> Result<(usize, usize)> {
    let first = *bytes
        .get(start)
        .ok_or_else(|| Error::parse(start, "empty input"))?;
    if first != 126 {
        return Ok((check_byte(bytes, start)? as usize, 1));
    }
    let (width, skip) = if bytes.get(start + 1) == Some(&126) {
        (6, 2)
    } else {
        (3, 1)
    };
    let mut n = 0usize;
    for i in 0..width {
        n = (n << 6) | check_byte(bytes, start + skip + i)? as usize;
    }
    if n > MAX_N {
        return Err(Error::parse(
            start,
            format!("vertex count {n} out of range"),
        ));
    }
    let canonical = match width {
        3 => n >= 63,
        _ => n > 258_047,
    };
    if !canonical {
        return Err(Error::parse(
            start,
            format!("non-minimal size field for n = {n}"),
        ));
    }
    Ok((n, skip + width))
}

fn strip(text: &str) -> &[u8] {
    text.trim_end_matches(['\n', '\r']).as_bytes()
}

/// Parses one graph6 or sparse6 line (sparse6 lines start with `:`).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut bytes = strip(text);
    let mut base = 0;
    for header in [&b">>graph6<<"[..], &b">>sparse6<<"[..]] {
        if bytes.starts_with(header) {
            bytes = &bytes[header.len()..];
            base = header.len();
        }
    }
    if bytes.first() == Some(&b':') {
        return parse_sparse6_bytes(bytes, base);
    }
    let (n, h) = decode_n(bytes, 0).map_err(|e| shift(e, base))?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[h..];
    if body.len() < need {
        return Err(Error::parse(
            base + bytes.len(),
            format!(
                "truncated bit stream: {} of {} data bytes",
                body.len(),
                need
            ),
        ));
    }
    if body.len() > need {
        return Err(Error::parse(
            base + h + need,
            "trailing bytes after bit stream",
        ));
    }
    let mut data = Vec::with_capacity(need);
    for i in 0..need {
        data.push(check_byte(bytes, h + i).map_err(|e| shift(e, base))?);
    }
    let bit = |k: usize| (data[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 && data[need - 1] & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(Error::parse(base + h + need - 1, "nonzero padding bits"));
    }
    Ok(Graph::from_dense(n, pairs))
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + base,
            message,
        },
        other => other,
    }
}

/// Parses a sparse6 line (leading `:` required).
pub fn parse_sparse6(text: &str) -> Result<Graph> {
    let bytes = strip(text);
    let bytes = bytes.strip_prefix(b">>sparse6<<").unwrap_or(bytes);
    if bytes.first() != Some(&b':') {
        return Err(Error::parse(0, "sparse6 line must start with ':'"));
    }
    parse_sparse6_bytes(bytes, 0)
}

fn bits_for(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

fn parse_sparse6_bytes(bytes: &[u8], base: usize) -> Result<Graph> {
    let (n, h) = decode_n(bytes, 1).map_err(|e| shift(e, base))?;
    let mut data = Vec::new();
    for i in 1 + h..bytes.len() {
        data.push(check_byte(bytes, i).map_err(|e| shift(e, base))?);
    }
    let k = bits_for(n);
    let total = data.len() * 6;
    let bit = |p: usize| (data[p / 6] >> (5 - p % 6)) & 1;
    let mut pos = 0;
    let mut v = 0usize;
    let mut pairs = Vec::new();
    while pos + 1 + k <= total {
        let b = bit(pos);
        pos += 1;
        let mut x = 0usize;
        for _ in 0..k {
            x = (x << 1) | bit(pos) as usize;
            pos += 1;
        }
        if b == 1 {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                return Err(Error::parse(
                    base + 1 + h + (pos - 1) / 6,
                    "loop in sparse6 data",
                ));
            }
            pairs.push((x, v));
        }
    }
    let g = Graph::from_dense(n, pairs.iter().copied());
    if g.edge_count() != pairs.len() {
        return Err(Error::parse(base, "parallel edges in sparse6 data"));
    }
    Ok(g)
}

/// graph6 line for `g` in its current vertex order (no trailing newline).
pub fn serialize_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let adj = g.dense_adj();
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | adj[j].binary_search(&i).is_ok() as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// sparse6 line for `g` in its current vertex order.
pub fn serialize_sparse6(g: &Graph) -> String {
    let n = g.vertex_count();
    let k = bits_for(n);
    let mut out = vec![b':'];
    encode_n(n, &mut out);
    let mut bits: Vec<u8> = Vec::new();
    let push = |bits: &mut Vec<u8>, b: u8, x: usize| {
        bits.push(b);
        for s in (0..k).rev() {
            bits.push(((x >> s) & 1) as u8);
        }
    };
    let adj = g.dense_adj();
    let mut v = 0usize;
    for j in 0..n {
        for &i in adj[j].iter().filter(|&&i| i <= j) {
            if j == v {
                push(&mut bits, 0, i);
            } else if j == v + 1 {
                push(&mut bits, 1, i);
            } else {
                push(&mut bits, 1, j);
                push(&mut bits, 0, i);
            }
            v = j;
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == (1 << k) && pad > k && v < n - 1 {
        bits.push(0);
        bits.extend(std::iter::repeat_n(1, pad - 1));
    } else {
        bits.extend(std::iter::repeat_n(1, pad));
    }
    for chunk in bits.chunks(6) {
        let byte = chunk.iter().fold(0u8, |a, &b| (a << 1) | b);
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("sparse6 is ASCII")
}

/// Graphviz DOT rendering.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for e in g.edges() {
        let _ = writeln!(s, "  {} -- {};", e.u(), e.v());
    }
    s.push_str("}\n");
    s
}

/// Reads the undirected DOT subset written by [`to_dot`]: `graph` bodies of
/// `n;` and `a -- b [-- c ...];` statements over integer ids. Attribute
/// lists and `//` comments are ignored.
pub fn from_dot(text: &str) -> Result<Graph> {
    let open = text
        .find('{')
        .ok_or_else(|| Error::parse(0, "missing '{'"))?;
    let head = text[..open].trim();
    if !head.starts_with("graph") && !head.starts_with("strict graph") {
        return Err(Error::parse(0, "expected an undirected `graph`"));
    }
    let close = text
        .rfind('}')
        .filter(|&c| c > open)
        .ok_or_else(|| Error::parse(text.len(), "missing '}'"))?;
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut offset = open + 1;
    for line in text[open + 1..close].split_inclusive('\n') {
        let body = line.split("//").next().unwrap_or_default();
        for stmt in body.split(';') {
            let stmt = match stmt.find('[') {
                Some(i) => &stmt[..i],
                None => stmt,
            };
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let ids = stmt
                .split("--")
                .map(|t| {
                    t.trim()
                        .trim_matches('"')
                        .parse::<u32>()
                        .map(Vertex)
                        .map_err(|_| Error::parse(offset, format!("bad node id in {stmt:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            vertices.extend(ids.iter().copied());
            for w in ids.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::parse(offset, format!("loop at {}", w[0])));
                }
                edges.insert(Edge::new(w[0], w[1]));
            }
        }
        offset += line.len();
    }
    Graph::from_parts(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Edge, Vertex};
    use proptest::prelude::*;

    #[test]
    fn dot_round_trip() {
        let g = named::petersen();
        assert_eq!(from_dot(&to_dot(&g)).unwrap(), g);
        let h = from_dot("strict graph {\n 0 -- 1 -- 2 [color=red]; // path\n 5; }").unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 2);
        assert!(from_dot("digraph { 0 -> 1 }").is_err());
        assert!(from_dot("graph { a -- b }").is_err());
    }

    #[test]
    fn k4_is_c_tilde() {
        // n = 4 -> 'C'; six upper-triangle bits all set -> 63 + 63 = '~'
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g, named::k4());
        assert_eq!(serialize_graph6(&g), "C~");
    }

    #[test]
    fn empty_five() {
        let g = parse_graph6("D??\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_pairs(1, &[]).unwrap();
        assert_eq!(serialize_graph6(&g), "@");
        assert_eq!(parse_graph6("@").unwrap(), g);
        assert_eq!(serialize_graph6(&Graph::empty()), "?");
    }

    #[test]
    fn petgraph_reference_string() {
        // edges a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_pairs(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(serialize_graph6(&g), "DQc");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_graph6("C") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6("C~~") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6("C\x01") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph6("").is_err());
        // size field claiming 62 in long form is not canonical
        assert!(parse_graph6("~?@}").is_err());
    }

    #[test]
    fn large_header() {
        let g = named::cycle(100);
        let s = serialize_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn sparse6_reference() {
        // The format description's example: n = 7, edges 0-1 0-2 1-2 5-6.
        let g = parse_graph6(":Fa@x^").unwrap();
        assert_eq!(g.vertex_count(), 7);
        let want: Vec<Edge> = vec![
            Edge::new(0, 1),
            Edge::new(0, 2),
            Edge::new(1, 2),
            Edge::new(5, 6),
        ];
        assert_eq!(g.edges().collect::<Vec<_>>(), want);
        assert_eq!(serialize_sparse6(&g), ":Fa@x^");
    }

    #[test]
    fn dot_lists_edges() {
        let d = to_dot(&named::triangle());
        assert!(d.contains("0 -- 1;") && d.contains("1 -- 2;"));
        let _ = Vertex(0);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..70).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let mut pairs = Vec::new();
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[k] {
                                pairs.push((i, j));
                            }
                            k += 1;
                        }
                    }
                    Graph::from_dense(n, pairs)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let s = serialize_graph6(&g);
            let h = parse_graph6(&s).unwrap();
            prop_assert_eq!(&h, &g);
            prop_assert_eq!(serialize_graph6(&h), s);
        }

        #[test]
        fn sparse6_round_trip(g in arb_graph()) {
            let s = serialize_sparse6(&g);
            let h = parse_graph6(&s).unwrap();
            prop_assert_eq!(&h, &g);
            prop_assert_eq!(serialize_sparse6(&h), s);
        }
    }
}
