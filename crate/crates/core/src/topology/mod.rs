//! Vertex classes, the two genus routes, and closed-form counts.

mod census;
mod classify;
mod closed_form;
mod genus;

pub use census::{lemma_genus, lemma_genus_from_census, topmost_defect, vertex_census, DefectCensus, FloorCounts};
pub use classify::{canonical_pattern, classify_vertex, corner_count, VertexClass, VertexTag};
pub use closed_form::{
    closed_form_counts, closed_form_genus, moving_trick_check, odd_genus_from_decomposition,
    ClosedFormCounts, Counts, MovingTrick,
};
pub use genus::{defect_sum, genus_descartes, genus_euler, solid_genus, surface_genus};

use serde::Serialize;

use crate::config::Configuration;
use crate::error::Result;
use crate::geometry::{extract_boundary, voxelize};

/// Both genus routes and the vertex census for one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub genus_euler: i64,
    pub genus_descartes: i64,
    pub chi: i64,
    pub census: DefectCensus,
}

pub fn analyze(c: &Configuration, exclude_topmost: bool) -> Result<GenusResult> {
    let s = extract_boundary(&voxelize(c));
    Ok(GenusResult {
        genus_euler: genus_euler(&s)?,
        genus_descartes: genus_descartes(&s)?,
        chi: s.euler_characteristic(),
        census: vertex_census(&s, c, exclude_topmost)?,
    })
}
