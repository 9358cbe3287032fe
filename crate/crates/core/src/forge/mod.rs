//! Covering maps between surface models and the decision tables built on them.

mod chain;
mod embed;
mod graph_cover;
mod uac;

pub use chain::{
    everything_covers_chain, subsurface_cover, Certificate, ChainStep, ChainTarget, CoverChain, StepKind,
};
pub use embed::{embed_in_bct, PieceSelection};
pub use graph_cover::{
    check_cover, graph_universal_cover, CoverReport, GraphCoverMap, MapEntry, Violation, ViolationKind,
};
pub use uac::{classify_mod_n_cover_infinite, classify_uac, evidence_consistent, uac_approximation_evidence};

use crate::model::NamedSurface;

/// Whether `x` is one of the four types a characteristic cover of infinite
/// degree that is not locally finite can have.
pub fn characteristic_constraint(x: &NamedSurface) -> bool {
    matches!(
        x.canonical(),
        NamedSurface::Plane | NamedSurface::Flute | NamedSurface::LochNess | NamedSurface::SpottedLochNess
    )
}
