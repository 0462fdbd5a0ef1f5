use crate::config::Configuration;
use crate::error::{JengaError, Result};
use crate::geometry::{
    connected_components, extract_boundary, validate_closed_surface, voxelize, SurfaceComplex,
};

/// Sum of angular defects in quarter turns: each unit square contributes a
/// right angle at each of its corners, so `kappa(v) = 4 - faces(v)`.
pub fn defect_sum(s: &SurfaceComplex) -> i64 {
    (0..s.vertex_count() as u32)
        .map(|v| 4 - s.vertex_faces(v).len() as i64)
        .sum()
}

fn require_connected_surface(s: &SurfaceComplex) -> Result<()> {
    let report = validate_closed_surface(s);
    if !report.is_closed_surface {
        return Err(JengaError::NotClosedSurface {
            violations: report.violations.len(),
        });
    }
    let components = connected_components(s).len();
    if components != 1 {
        return Err(JengaError::Disconnected { components });
    }
    Ok(())
}

fn euler_genus_unchecked(s: &SurfaceComplex) -> Result<i64> {
    let chi = s.euler_characteristic();
    if chi % 2 != 0 {
        return Err(JengaError::OddEulerCharacteristic { chi });
    }
    Ok((2 - chi) / 2)
}

fn descartes_genus_unchecked(s: &SurfaceComplex) -> Result<i64> {
    // sum kappa = 4 pi (1 - g) and 4 pi is eight quarter turns
    let total = defect_sum(s);
    if total % 8 != 0 {
        return Err(JengaError::DefectNotDivisible {
            quarter_turns: total,
        });
    }
    Ok(1 - total / 8)
}

/// Genus from the Euler characteristic, `(2 - (V - E + F)) / 2`.
pub fn genus_euler(s: &SurfaceComplex) -> Result<i64> {
    require_connected_surface(s)?;
    euler_genus_unchecked(s)
}

/// Genus from the total angular defect, `1 - sum(kappa) / 4 pi`.
pub fn genus_descartes(s: &SurfaceComplex) -> Result<i64> {
    require_connected_surface(s)?;
    descartes_genus_unchecked(s)
}

/// Total genus of the boundary of a configuration's solid, summed over
/// connected components. Fails if the boundary is not a closed surface.
pub fn solid_genus(c: &Configuration) -> Result<i64> {
    let s = extract_boundary(&voxelize(c));
    surface_genus(&s)
}

/// Summed Euler genus of a possibly disconnected closed surface.
pub fn surface_genus(s: &SurfaceComplex) -> Result<i64> {
    let report = validate_closed_surface(s);
    if !report.is_closed_surface {
        return Err(JengaError::NotClosedSurface {
            violations: report.violations.len(),
        });
    }
    let mut total = 0;
    for part in connected_components(s) {
        total += euler_genus_unchecked(&part)?;
    }
    Ok(total)
}
