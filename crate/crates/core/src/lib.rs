//! Generalized Jenga towers as polyhedral surfaces.
//!
//! A tower of `n`-wide levels is turned into a union of unit cubes, its
//! boundary is extracted as a quad complex, and the genus is computed both
//! from the Euler characteristic and from the angular defects at the
//! vertices. On top of that sit the maximal `(n, k)` configurations, an
//! exhaustive search over game states, and the deformation used to compare
//! any reachable tower with the maximal one.

pub mod config;
pub mod deform;
pub mod error;
pub mod export;
pub mod game;
pub mod geometry;
pub mod topology;

pub use config::{
    make_initial, make_nk_configuration, parse_box_description, serialize_box_description,
    solve_nk_decomposition, Axis, Configuration, GameParams, Level, NkDecomposition,
};
pub use error::{JengaError, Result};
pub use geometry::{extract_boundary, validate_closed_surface, voxelize, SurfaceComplex, VoxelSet};
pub use topology::{closed_form_genus, genus_descartes, genus_euler, solid_genus, GenusResult};
