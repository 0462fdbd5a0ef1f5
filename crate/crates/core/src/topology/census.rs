use std::collections::BTreeMap;

use serde::Serialize;

use super::classify::{classify_vertex, VertexTag};
use crate::config::Configuration;
use crate::error::{JengaError, Result};
use crate::geometry::{extract_boundary, voxelize, SurfaceComplex};

/// Type II and Type III vertices on one floor, the plane `z = floor`
/// between level `floor` and level `floor + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FloorCounts {
    pub floor: usize,
    pub type_ii: usize,
    pub type_iii: usize,
}

/// Vertex counts of a boundary surface by class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectCensus {
    pub type_i: usize,
    pub type_ii: usize,
    pub type_iii: usize,
    /// Every other class, including zero-count entries.
    pub other_counts: BTreeMap<VertexTag, usize>,
    /// Vertices outside types I-III whose defect is non-zero.
    pub other_defect_vertices: usize,
    /// One row per floor from the ground (0) to the top plane.
    pub per_floor: Vec<FloorCounts>,
    /// Sum of all counted defects in quarter turns.
    pub total_defect: i64,
    pub excluded_topmost: bool,
}

impl DefectCensus {
    pub fn count(&self, tag: VertexTag) -> usize {
        match tag {
            VertexTag::TypeI => self.type_i,
            VertexTag::TypeII => self.type_ii,
            VertexTag::TypeIII => self.type_iii,
            other => self.other_counts.get(&other).copied().unwrap_or(0),
        }
    }
}

fn census_of(s: &SurfaceComplex, c: &Configuration, excluded_topmost: bool) -> DefectCensus {
    let voxels = voxelize(c);
    let height = c.levels_count();
    let mut per_floor: Vec<FloorCounts> = (0..=height)
        .map(|floor| FloorCounts {
            floor,
            type_ii: 0,
            type_iii: 0,
        })
        .collect();
    let mut census = DefectCensus {
        type_i: 0,
        type_ii: 0,
        type_iii: 0,
        other_counts: VertexTag::ALL[3..].iter().map(|&t| (t, 0)).collect(),
        other_defect_vertices: 0,
        per_floor: Vec::new(),
        total_defect: 0,
        excluded_topmost,
    };

    for &p in s.vertices() {
        let class = classify_vertex(voxels.octant_pattern(p))
            .expect("boundary vertices touch both solid and empty cells");
        census.total_defect += i64::from(class.defect);
        let floor = usize::try_from(p[2]).ok().filter(|&z| z <= height);
        match class.tag {
            VertexTag::TypeI => census.type_i += 1,
            VertexTag::TypeII => {
                census.type_ii += 1;
                if let Some(z) = floor {
                    per_floor[z].type_ii += 1;
                }
            }
            VertexTag::TypeIII => {
                census.type_iii += 1;
                if let Some(z) = floor {
                    per_floor[z].type_iii += 1;
                }
            }
            other => {
                *census.other_counts.entry(other).or_default() += 1;
                if class.defect != 0 {
                    census.other_defect_vertices += 1;
                }
            }
        }
    }
    census.per_floor = per_floor;
    census
}

/// Counts the vertices of `s`, the boundary of `c`, by class.
///
/// With `exclude_topmost`, the vertices belonging to the topmost level are
/// left out: the census is taken over the boundary of the tower with its
/// top level lifted off, so the corners the top level was covering count
/// as they would without it.
pub fn vertex_census(
    s: &SurfaceComplex,
    c: &Configuration,
    exclude_topmost: bool,
) -> Result<DefectCensus> {
    if *s != extract_boundary(&voxelize(c)) {
        return Err(JengaError::SurfaceMismatch);
    }
    if !exclude_topmost {
        return Ok(census_of(s, c, false));
    }
    let lower = match c.levels_count() {
        1 => Configuration::from_raw(c.n(), c.first_axis(), Vec::new()),
        s => c.slice_levels(1, s - 1)?,
    };
    let lower_surface = extract_boundary(&voxelize(&lower));
    Ok(census_of(&lower_surface, &lower, true))
}

/// Defect of the vertices removed by `exclude_topmost`, in quarter turns:
/// full census total minus the census total without the top level.
pub fn topmost_defect(c: &Configuration) -> Result<i64> {
    let s = extract_boundary(&voxelize(c));
    let full = vertex_census(&s, c, false)?;
    let lower = vertex_census(&s, c, true)?;
    Ok(full.total_defect - lower.total_defect)
}

/// `g = -N_I/8 + N_II/8 + N_III/4 + 1`.
pub fn lemma_genus_from_census(census: &DefectCensus) -> Result<i64> {
    if census.other_defect_vertices > 0 {
        return Err(JengaError::UnexpectedDefects);
    }
    lemma_genus(census.type_i, census.type_ii, census.type_iii)
}

pub fn lemma_genus(type_i: usize, type_ii: usize, type_iii: usize) -> Result<i64> {
    let numerator = -(type_i as i64) + type_ii as i64 + 2 * type_iii as i64 + 8;
    if numerator % 8 != 0 {
        return Err(JengaError::NonIntegerGenus { numerator });
    }
    Ok(numerator / 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{make_initial, make_nk_configuration, GameParams};

    fn census(c: &Configuration, exclude: bool) -> DefectCensus {
        let s = extract_boundary(&voxelize(c));
        vertex_census(&s, c, exclude).unwrap()
    }

    #[test]
    fn q53_counts() {
        let q = make_nk_configuration(GameParams { n: 5, k: 3 }).unwrap();
        let c = census(&q, true);
        assert_eq!((c.type_i, c.type_ii, c.type_iii), (12, 36, 24));
        assert_eq!(c.per_floor[1].type_ii, 12);
        assert_eq!(lemma_genus_from_census(&c).unwrap(), 10);
    }

    #[test]
    fn q63_counts() {
        let q = make_nk_configuration(GameParams { n: 6, k: 3 }).unwrap();
        let c = census(&q, true);
        assert_eq!((c.type_i, c.type_ii, c.type_iii), (16, 40, 32));
        assert_eq!(lemma_genus_from_census(&c).unwrap(), 12);
    }

    #[test]
    fn box_has_eight_corners() {
        for (n, k) in [(2, 2), (3, 3), (5, 4), (7, 2)] {
            let c = census(&make_initial(GameParams { n, k }).unwrap(), false);
            assert_eq!((c.type_i, c.type_ii, c.type_iii), (8, 0, 0));
            assert_eq!(c.total_defect, 8);
            assert_eq!(c.other_defect_vertices, 0);
        }
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_genus(8, 0, 0), Ok(0));
        assert_eq!(lemma_genus(12, 36, 24), Ok(10));
        assert_eq!(lemma_genus(16, 40, 32), Ok(12));
        assert_eq!(
            lemma_genus(16, 160, 32),
            Ok(27),
            "printed even-case count gives a different genus"
        );
        assert!(matches!(lemma_genus(9, 0, 0), Err(JengaError::NonIntegerGenus { .. })));
    }

    #[test]
    fn mismatched_surface() {
        let a = make_initial(GameParams { n: 3, k: 3 }).unwrap();
        let b = make_initial(GameParams { n: 3, k: 4 }).unwrap();
        let s = extract_boundary(&voxelize(&b));
        assert_eq!(vertex_census(&s, &a, false), Err(JengaError::SurfaceMismatch));
    }

    #[test]
    fn totals_match_floor_rows() {
        for (n, k) in [(5, 3), (6, 4), (7, 5), (3, 3)] {
            let q = make_nk_configuration(GameParams { n, k }).unwrap();
            for exclude in [false, true] {
                let c = census(&q, exclude);
                let ii: usize = c.per_floor.iter().map(|f| f.type_ii).sum();
                let iii: usize = c.per_floor.iter().map(|f| f.type_iii).sum();
                assert_eq!((ii, iii), (c.type_ii, c.type_iii));
            }
        }
    }
}
