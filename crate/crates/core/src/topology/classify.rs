use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{JengaError, Result};

/// Local shape of the solid around a lattice vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexTag {
    /// Convex corner: one octant.
    TypeI,
    /// Half-space minus one quadrant: three octants in one half.
    TypeII,
    /// Two perpendicular quarter-slabs, one above and one below the vertex.
    TypeIII,
    /// Interior of a flat face: a half-space.
    FlatPlanar,
    /// Interior of an edge: a quarter or three-quarter space.
    FlatEdge,
    /// Concave corner: seven octants.
    ConcaveCorner,
    Other,
}

impl VertexTag {
    pub const ALL: [VertexTag; 7] = [
        VertexTag::TypeI,
        VertexTag::TypeII,
        VertexTag::TypeIII,
        VertexTag::FlatPlanar,
        VertexTag::FlatEdge,
        VertexTag::ConcaveCorner,
        VertexTag::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VertexTag::TypeI => "type_i",
            VertexTag::TypeII => "type_ii",
            VertexTag::TypeIII => "type_iii",
            VertexTag::FlatPlanar => "flat_planar",
            VertexTag::FlatEdge => "flat_edge",
            VertexTag::ConcaveCorner => "concave_corner",
            VertexTag::Other => "other",
        }
    }
}

/// Class of a vertex plus its corner count `c` and angular defect
/// `4 - c` in quarter turns (units of pi/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub tag: VertexTag,
    pub corner_count: u32,
    pub defect: i32,
}

/// Octant `(dx, dy, dz)` is bit `dx + 2 dy + 4 dz` of a pattern.
fn octant_bit(d: [u8; 3]) -> u8 {
    1 << (d[0] + 2 * d[1] + 4 * d[2])
}

fn bits_of(octants: &[[u8; 3]]) -> u8 {
    octants.iter().fold(0, |acc, &d| acc | octant_bit(d))
}

/// The 48 symmetries of the cube as (axis permutation, reflection mask).
fn symmetries() -> impl Iterator<Item = ([usize; 3], [u8; 3])> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS.into_iter().flat_map(|perm| {
        (0..8u8).map(move |f| (perm, [f & 1, (f >> 1) & 1, (f >> 2) & 1]))
    })
}

fn transform(pattern: u8, perm: [usize; 3], flip: [u8; 3]) -> u8 {
    let mut out = 0;
    for o in 0..8u8 {
        if pattern & (1 << o) == 0 {
            continue;
        }
        let d = [o & 1, (o >> 1) & 1, (o >> 2) & 1];
        let image = [d[perm[0]] ^ flip[0], d[perm[1]] ^ flip[1], d[perm[2]] ^ flip[2]];
        out |= octant_bit(image);
    }
    out
}

/// Least pattern in the orbit of `pattern` under the cube group.
pub fn canonical_pattern(pattern: u8) -> u8 {
    symmetries()
        .map(|(perm, flip)| transform(pattern, perm, flip))
        .min()
        .unwrap_or(pattern)
}

/// Number of boundary square corners at the vertex: octant pairs across a
/// coordinate plane with different occupancy.
pub fn corner_count(pattern: u8) -> u32 {
    let mut c = 0;
    for o in 0..8u8 {
        for axis in 0..3 {
            let other = o | (1 << axis);
            if other != o {
                let a = pattern >> o & 1;
                let b = pattern >> other & 1;
                c += u32::from(a != b);
            }
        }
    }
    c
}

fn class_table() -> &'static [Option<VertexClass>; 256] {
    static TABLE: OnceLock<[Option<VertexClass>; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let reps: [(u8, VertexTag); 7] = [
            (bits_of(&[[0, 0, 0]]), VertexTag::TypeI),
            // y >= 0 and (x <= 0 or z <= 0)
            (bits_of(&[[0, 1, 0], [0, 1, 1], [1, 1, 0]]), VertexTag::TypeII),
            // (x <= 0 and z >= 0) or (y >= 0 and z <= 0)
            (
                bits_of(&[[0, 0, 1], [0, 1, 1], [0, 1, 0], [1, 1, 0]]),
                VertexTag::TypeIII,
            ),
            (bits_of(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]), VertexTag::FlatPlanar),
            (bits_of(&[[0, 0, 0], [1, 0, 0]]), VertexTag::FlatEdge),
            (!bits_of(&[[0, 0, 0], [1, 0, 0]]), VertexTag::FlatEdge),
            (!bits_of(&[[0, 0, 0]]), VertexTag::ConcaveCorner),
        ];
        let reps = reps.map(|(p, t)| (canonical_pattern(p), t));
        let mut table = [None; 256];
        for p in 1..255u8 {
            let canon = canonical_pattern(p);
            let tag = reps
                .iter()
                .find(|(r, _)| *r == canon)
                .map_or(VertexTag::Other, |&(_, t)| t);
            let c = corner_count(p);
            table[p as usize] = Some(VertexClass {
                tag,
                corner_count: c,
                defect: 4 - c as i32,
            });
        }
        table
    })
}

/// Classifies the eight-octant occupancy around a lattice point.
pub fn classify_vertex(pattern: u8) -> Result<VertexClass> {
    match pattern {
        0 => Err(JengaError::NotSurfaceVertex("empty")),
        255 => Err(JengaError::NotSurfaceVertex("full")),
        p => Ok(class_table()[p as usize].expect("table covers 1..=254")),
    }
}
