//! JSON construction recipes.
//!
//! ```json
//! {"kind": "compose", "frame": "prism",
//!  "bricks": [{"vertex": 0, "brick": {"graph": "K4", "apex": 0}}]}
//! ```
//!
//! Graph fields accept graph6 or one of the names `K4`, `K33`, `prism`,
//! `petersen`, `cube`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{named, parse_graph6, Edge, Graph, Vertex};

use super::{
    build_r, compose, gadget_edge_link, h_compose, splice, triangle_expand, y_compose, Brick,
    Orientation, PointedGraph, R2Site,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrickSpec {
    pub graph: String,
    pub apex: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attachments: Option<[Vertex; 3]>,
}

impl BrickSpec {
    pub fn pointed(&self) -> Result<PointedGraph> {
        let g = resolve_graph(&self.graph)?;
        match self.attachments {
            Some(a) => PointedGraph::new(g, self.apex, a),
            None => PointedGraph::at(g, self.apex),
        }
    }
}

fn brick_of(spec: &Option<BrickSpec>) -> Result<Brick> {
    Ok(match spec {
        None => Brick::Identity,
        Some(s) => Brick::Pointed(s.pointed()?),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameBrick {
    pub vertex: Vertex,
    pub brick: BrickSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Recipe {
    Splice {
        a: BrickSpec,
        b: BrickSpec,
    },
    Compose {
        frame: String,
        #[serde(default)]
        bricks: Vec<FrameBrick>,
    },
    TriangleExpand {
        frame: String,
    },
    /// `null` entries are Identity bricks.
    Y {
        bricks: [Option<BrickSpec>; 3],
    },
    H {
        bricks: [Option<BrickSpec>; 4],
    },
    R {
        s: usize,
    },
    EdgeLink {
        graph: String,
        e1: Edge,
        e2: Edge,
    },
    /// The host graph of a no-factor site; see `gadget_r2`.
    R2 {
        graph: String,
        site: R2Site,
    },
}

impl Recipe {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Recipe::Splice { a, b } => Ok(splice(&a.pointed()?, &b.pointed()?)?.graph),
            Recipe::Compose { frame, bricks } => {
                let frame = resolve_graph(frame)?;
                let mut map = BTreeMap::new();
                let mut orient = BTreeMap::new();
                for fb in bricks {
                    if map
                        .insert(fb.vertex, Brick::Pointed(fb.brick.pointed()?))
                        .is_some()
                    {
                        return Err(Error::invalid(format!("two bricks at {}", fb.vertex)));
                    }
                    if let Some(o) = fb.orientation {
                        orient.insert(fb.vertex, o);
                    }
                }
                Ok(compose(&frame, &map, &orient)?.result)
            }
            Recipe::TriangleExpand { frame } => Ok(triangle_expand(&resolve_graph(frame)?)?.result),
            Recipe::Y { bricks } => {
                let [a, b, c] = bricks;
                Ok(y_compose([brick_of(a)?, brick_of(b)?, brick_of(c)?])?
                    .composition
                    .result)
            }
            Recipe::H { bricks } => {
                let [a, b, c, d] = bricks;
                Ok(h_compose([brick_of(a)?, brick_of(b)?, brick_of(c)?, brick_of(d)?])?.result)
            }
            Recipe::R { s } => Ok(build_r(*s)?.graph),
            Recipe::EdgeLink { graph, e1, e2 } => {
                Ok(gadget_edge_link(&resolve_graph(graph)?, *e1, *e2)?.graph)
            }
            Recipe::R2 { graph, site } => {
                let g = resolve_graph(graph)?;
                super::gadget_r2(&g, *site)?;
                Ok(g)
            }
        }
    }
}

/// A named small graph or a graph6 string.
pub fn resolve_graph(s: &str) -> Result<Graph> {
    Ok(match s {
        "K4" | "k4" => named::k4(),
        "K33" | "k33" => named::k33(),
        "prism" => named::prism(),
        "petersen" => named::petersen(),
        "cube" => named::cube(),
        _ => parse_graph6(s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_key;

    #[test]
    fn recipe_round_trip() {
        let text =
            r#"{"kind":"y","bricks":[{"graph":"prism","apex":0},{"graph":"prism","apex":0},null]}"#;
        let r: Recipe = serde_json::from_str(text).unwrap();
        assert_eq!(r.build().unwrap().vertex_count(), 14);
        let back: Recipe = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn compose_recipe_with_orientation() {
        let text = r#"{"kind":"compose","frame":"C~","bricks":[
            {"vertex":0,"brick":{"graph":"K4","apex":0},"orientation":[3,2,1]}]}"#;
        let r: Recipe = serde_json::from_str(text).unwrap();
        let g = r.build().unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(canonical_key(&g), canonical_key(&named::prism()));
    }

    #[test]
    fn bad_recipes() {
        assert!(serde_json::from_str::<Recipe>(r#"{"kind":"r","s":1,"x":2}"#).is_err());
        let r: Recipe = serde_json::from_str(r#"{"kind":"r","s":0}"#).unwrap();
        assert!(r.build().is_err());
        assert!(resolve_graph("!!").is_err());
    }
}
