use serde::{Deserialize, Serialize};

use super::Status;
use crate::error::Result;
use crate::graph::{classify, Edge, Graph, Vertex, VertexSet};
use crate::packing::{
    domination_from_factor, gamma_exact, max_lambda_packing, solve_factor, FactorQuery,
};
use crate::structure::five_paths_centred;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl PropertyCheck {
    fn na() -> PropertyCheck {
        PropertyCheck {
            status: Status::NotApplicable,
            detail: None,
        }
    }

    fn holds(detail: impl Into<String>) -> PropertyCheck {
        PropertyCheck {
            status: Status::Holds,
            detail: Some(detail.into()),
        }
    }

    fn fails(detail: impl Into<String>) -> PropertyCheck {
        PropertyCheck {
            status: Status::Fails,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub lambda: usize,
    /// `λ(G) >= ⌈v(G)/4⌉` for cubic `G`.
    pub lambda_bound: PropertyCheck,
    /// Some `G - x` factors, so some `G - Π` factors (4-vertex path `Π`).
    pub four_path: PropertyCheck,
    /// Some `G - {x, y}` factors, so some `G - W` and some
    /// `G - (Π1 ∪ Π2)` factor.
    pub five_path_and_pair: PropertyCheck,
    /// Hamiltonian with `v ≡ 4 mod 6`, so some `G - Y` factors for a claw.
    pub claw: PropertyCheck,
    /// Triangle- and square-free: `(G - e) - L` factors for every edge `e`
    /// and 3-vertex path `L` of `G - e`.
    pub girth_five: PropertyCheck,
    /// Path centres of a factor dominate and `γ(G) <= v(G)/3`.
    pub domination: PropertyCheck,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
}

fn factors_without(g: &Graph, vs: impl IntoIterator<Item = Vertex>) -> Result<bool> {
    Ok(solve_factor(g, &FactorQuery::new().without_vertices(vs))?.is_some())
}

/// Four-vertex paths, each once.
fn four_paths(g: &Graph) -> Vec<Vec<Vertex>> {
    g.paths(4)
}

pub fn check_properties(g: &Graph) -> Result<PropertyReport> {
    let s = classify(g);
    let n = g.vertex_count();
    let (lambda, packing) = max_lambda_packing(g);
    let lambda_bound = if s.is_cubic {
        let bound = n.div_ceil(4);
        if lambda >= bound {
            PropertyCheck::holds(format!("{lambda} >= {bound}"))
        } else {
            PropertyCheck::fails(format!("packing {packing:?} has {lambda} < {bound} paths"))
        }
    } else {
        PropertyCheck::na()
    };
    let two_connected = s.is_cubic && s.connectivity_floor >= 2;

    let mut four_path = PropertyCheck::na();
    if two_connected {
        let mut premise = None;
        for x in g.vertices() {
            if factors_without(g, [x])? {
                premise = Some(x);
                break;
            }
        }
        if let Some(x) = premise {
            four_path = PropertyCheck::fails(format!("G - {x} factors but no G - Π does"));
            for p in four_paths(g) {
                if factors_without(g, p.iter().copied())? {
                    four_path = PropertyCheck::holds(format!("Π = {p:?}"));
                    break;
                }
            }
        }
    }

    let mut five_path_and_pair = PropertyCheck::na();
    if two_connected {
        let mut premise = None;
        for e in g.edges() {
            if factors_without(g, e.ends())? {
                premise = Some(e);
                break;
            }
        }
        if let Some(e) = premise {
            let mut w_found = None;
            'w: for x in g.vertices() {
                for w in five_paths_centred(g, x) {
                    if factors_without(g, w)? {
                        w_found = Some(w);
                        break 'w;
                    }
                }
            }
            let fours = four_paths(g);
            let mut pair = None;
            'pair: for i in 0..fours.len() {
                let a: VertexSet = fours[i].iter().copied().collect();
                for b in &fours[i + 1..] {
                    if b.iter().any(|v| a.contains(v)) {
                        continue;
                    }
                    if factors_without(g, a.iter().copied().chain(b.iter().copied()))? {
                        pair = Some((fours[i].clone(), b.clone()));
                        break 'pair;
                    }
                }
            }
            five_path_and_pair = match (w_found, pair) {
                (Some(w), Some((p1, p2))) => {
                    PropertyCheck::holds(format!("W = {w:?}, Π1 = {p1:?}, Π2 = {p2:?}"))
                }
                (w, p) => PropertyCheck::fails(format!(
                    "G - {e:?} factors; W found: {}, Π pair found: {}",
                    w.is_some(),
                    p.is_some()
                )),
            };
        }
    }

    let mut claw = PropertyCheck::na();
    if two_connected && n % 6 == 4 && g.is_hamiltonian() {
        claw = PropertyCheck::fails("no claw Y with G - Y factorable");
        for x in g.vertices() {
            if factors_without(g, g.neighbors(x).chain([x]))? {
                claw = PropertyCheck::holds(format!("claw at {x}"));
                break;
            }
        }
    }

    let mut girth_five = PropertyCheck::na();
    if s.is_cubic_3_connected() && n.is_multiple_of(3) && !g.has_triangle() && !g.has_square() {
        girth_five = PropertyCheck::holds(format!("{} edges checked", g.edge_count()));
        'outer: for e in g.edges() {
            for l in g.paths(3) {
                if l.windows(2).any(|s| Edge::new(s[0], s[1]) == e) {
                    continue;
                }
                let q = FactorQuery::new()
                    .without_edges([e])
                    .without_vertices(l.iter().copied());
                if solve_factor(g, &q)?.is_none() {
                    girth_five = PropertyCheck::fails(format!("e = {e:?}, L = {l:?}"));
                    break 'outer;
                }
            }
        }
    }

    let mut domination = PropertyCheck::na();
    let mut gamma = None;
    if let Some(f) = solve_factor(g, &FactorQuery::new())? {
        let gm = gamma_exact(g);
        gamma = Some(gm);
        domination = match domination_from_factor(g, &f) {
            Ok(_) if gm * 3 <= n => PropertyCheck::holds(format!("γ = {gm}")),
            Ok(_) => PropertyCheck::fails(format!("γ = {gm} > {}", n / 3)),
            Err(e) => PropertyCheck::fails(e.to_string()),
        };
    }

    Ok(PropertyReport {
        lambda,
        lambda_bound,
        four_path,
        five_path_and_pair,
        claw,
        girth_five,
        domination,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn petersen() {
        let r = check_properties(&named::petersen()).unwrap();
        assert_eq!(r.lambda, 3);
        assert_eq!(r.lambda_bound.status, Status::Holds);
        assert_eq!(r.four_path.status, Status::Holds);
        // 10 is not divisible by 3
        assert_eq!(r.girth_five.status, Status::NotApplicable);
        assert_eq!(r.domination.status, Status::NotApplicable);
    }

    #[test]
    fn k4_claw_is_everything() {
        let r = check_properties(&named::k4()).unwrap();
        assert_eq!(r.claw.status, Status::Holds);
    }

    #[test]
    fn prism_domination() {
        let r = check_properties(&named::prism()).unwrap();
        assert_eq!(r.domination.status, Status::Holds);
        assert_eq!(r.gamma, Some(2));
    }
}
