//! Text renderings of towers and of their boundary surfaces.

use std::fmt::Write as _;

use crate::config::Configuration;
use crate::error::{JengaError, Result};
use crate::geometry::{validate_closed_surface, SurfaceComplex};

/// Top level first, each row prefixed by its level number and axis.
pub fn render_ascii(c: &Configuration) -> String {
    let width = c.levels_count().to_string().len();
    let mut out = String::new();
    for i in (1..=c.levels_count()).rev() {
        let row = c.levels()[i - 1].to_row(c.n());
        let _ = writeln!(out, "{i:>width$} {:?} {row}", c.axis_of(i));
    }
    out
}

fn require_closed(s: &SurfaceComplex) -> Result<()> {
    let report = validate_closed_surface(s);
    if report.is_closed_surface {
        Ok(())
    } else {
        Err(JengaError::NotClosedSurface {
            violations: report.violations.len(),
        })
    }
}

/// Wavefront OBJ: one `v` line per vertex in sorted order, one
/// outward-wound quad `f` line per face with 1-based indices.
pub fn to_obj(s: &SurfaceComplex) -> Result<String> {
    require_closed(s)?;
    let mut out = String::new();
    for p in s.vertices() {
        let _ = writeln!(out, "v {} {} {}", p[0], p[1], p[2]);
    }
    for f in s.faces() {
        let [a, b, c, d] = f.vertices.map(|v| v + 1);
        let _ = writeln!(out, "f {a} {b} {c} {d}");
    }
    Ok(out)
}

/// OFF with a `V F E` count line and 0-based quads.
pub fn to_off(s: &SurfaceComplex) -> Result<String> {
    require_closed(s)?;
    let mut out = format!(
        "OFF\n{} {} {}\n",
        s.vertex_count(),
        s.face_count(),
        s.edge_count()
    );
    for p in s.vertices() {
        let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
    }
    for f in s.faces() {
        let [a, b, c, d] = f.vertices;
        let _ = writeln!(out, "4 {a} {b} {c} {d}");
    }
    Ok(out)
}
