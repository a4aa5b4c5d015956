use serde::{Deserialize, Serialize};

use crate::constructions::Splice;
use crate::error::{Error, Result};
use crate::packing::Factor;

/// How the paths of a factor of `A a σ b B` cross the 3-edge seam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CutCase {
    #[serde(rename = "a1.1")]
    A1_1,
    #[serde(rename = "a1.2")]
    A1_2,
    #[serde(rename = "a1.3")]
    A1_3,
    #[serde(rename = "a2.1")]
    A2_1,
    #[serde(rename = "a2.2")]
    A2_2,
    #[serde(rename = "a2.3")]
    A2_3,
}

impl CutCase {
    pub fn label(self) -> &'static str {
        match self {
            CutCase::A1_1 => "a1.1",
            CutCase::A1_2 => "a1.2",
            CutCase::A1_3 => "a1.3",
            CutCase::A2_1 => "a2.1",
            CutCase::A2_2 => "a2.2",
            CutCase::A2_3 => "a2.3",
        }
    }
}

/// Labels `p` by the paths meeting the seam: how many there are and how
/// many vertices each has in `A - a`. `v(A)` must be 0 or 1 mod 3.
pub fn classify_cut_factor(s: &Splice, p: &Factor) -> Result<CutCase> {
    p.validate_factor(&s.graph)?;
    let v_a = s.a_side.len() + 1;
    if v_a % 3 == 2 {
        return Err(Error::invalid(format!(
            "v(A) = {v_a} is 2 mod 3; splice the other way round"
        )));
    }
    // (vertices in A - a, vertices in B - b) per crossing path
    let mut crossing: Vec<(usize, usize)> = Vec::new();
    for path in p.paths() {
        if !s.seam.iter().any(|&e| path.has_edge(e)) {
            continue;
        }
        let a = path
            .vertices()
            .iter()
            .filter(|v| s.a_side.contains(v))
            .count();
        let b = path
            .vertices()
            .iter()
            .filter(|v| s.b_side.contains(v))
            .count();
        crossing.push((a, b));
    }
    crossing.sort();
    let ones = crossing.iter().filter(|&&c| c == (1, 2)).count();
    let twos = crossing.iter().filter(|&&c| c == (2, 1)).count();
    let shaped = ones + twos == crossing.len();
    let case = match (v_a % 3, crossing.len(), ones, twos) {
        (_, _, _, _) if !shaped => None,
        (0, 1, 0, 1) => Some(CutCase::A1_1),
        (0, 2, 2, 0) => Some(CutCase::A1_2),
        (0, 3, 1, 2) => Some(CutCase::A1_3),
        (1, 0, 0, 0) => Some(CutCase::A2_1),
        (1, 2, 1, 1) => Some(CutCase::A2_2),
        (1, 3, 3, 0) | (1, 3, 0, 3) => Some(CutCase::A2_3),
        _ => None,
    };
    case.ok_or_else(|| {
        Error::Exhaustiveness(format!(
            "v(A) = {v_a}, crossing paths (|A side|, |B side|) = {crossing:?}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{splice, PointedGraph};
    use crate::packing::{for_each_factor, FactorQuery};
    use std::collections::BTreeSet;
    use std::ops::ControlFlow;

    #[test]
    fn prism_splice_uses_only_a1_cases() {
        // two prisms give 10 vertices and no factor at all
        let s = splice(&PointedGraph::prism(), &PointedGraph::prism()).unwrap();
        assert_eq!(s.graph.vertex_count(), 10);
        assert!(crate::packing::solve_factor(&s.graph, &FactorQuery::new())
            .unwrap()
            .is_none());
        let cube = PointedGraph::at(crate::graph::named::cube(), crate::graph::Vertex(0)).unwrap();
        let s = splice(&PointedGraph::prism(), &cube).unwrap();
        let mut seen = BTreeSet::new();
        for_each_factor(&s.graph, &FactorQuery::new(), |f| {
            seen.insert(classify_cut_factor(&s, &f).unwrap());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(!seen.is_empty());
        assert!(seen.iter().all(|c| c.label().starts_with("a1")));
    }

    #[test]
    fn seam_avoiding_factor_on_k4_side() {
        // v(K4) = 4: the A side is a triangle that can factor on its own
        let s = splice(&PointedGraph::k4(), &PointedGraph::k4()).unwrap();
        let q = FactorQuery::new().forbidding(s.seam);
        let f = crate::packing::solve_factor(&s.graph, &q).unwrap().unwrap();
        assert_eq!(classify_cut_factor(&s, &f).unwrap(), CutCase::A2_1);
    }

    #[test]
    fn wrong_residue_rejected() {
        let cube = PointedGraph::at(crate::graph::named::cube(), crate::graph::Vertex(0)).unwrap();
        let s = splice(&cube, &PointedGraph::prism()).unwrap();
        let f = crate::packing::solve_factor(&s.graph, &FactorQuery::new())
            .unwrap()
            .unwrap();
        assert!(matches!(
            classify_cut_factor(&s, &f),
            Err(Error::InvalidArgument(_))
        ));
    }
}
