//! Blockades, projections of Λ-factors onto composition frames, lifts back
//! from the frame, brick certificates, and the `Γ` decomposition.

mod blockade;
mod brick;
mod dipacking;
mod gamma;
mod lift;

pub use blockade::{
    cut_sides, enumerate_blockades, has_cycle_within, induces_cycle, is_matching, min_blockade,
    Blockade,
};
pub use brick::{
    check_brick, check_y_brick, five_paths_centred, four_paths_inner, spiders, BrickCertificate,
    BrickWitness, Hypothesis, Parity, ProfileCheck,
};
pub use dipacking::{
    dipacking_cycles, enumerate_cycle_dipackings, frame_support, project_factor, DiClass, DiPacking,
};
pub use gamma::{verify_gamma_decomposition, GammaEntry, GammaReport};
pub use lift::{certify, lift_cycle_dipacking, lift_difactor, Certified};

use crate::graph::{EdgeSet, Graph, VertexSet};

/// `D(X, G)`.
pub fn boundary(g: &Graph, xs: &VertexSet) -> EdgeSet {
    g.boundary(xs)
}
