//! Voxel solids and their boundary surfaces.

mod surface;
mod validate;
mod voxel;

pub use surface::{extract_boundary, Face, FaceNormal, SurfaceComplex};
pub use validate::{connected_components, validate_closed_surface, ValidationReport, Violation, ViolationKind};
pub use voxel::{voxelize, Cell, VoxelSet};
