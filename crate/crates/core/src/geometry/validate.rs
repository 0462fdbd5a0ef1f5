use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::surface::SurfaceComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    NonManifoldEdge,
    NonManifoldVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// An edge bounded by a number of faces other than two.
    NonManifoldEdge {
        from: [i32; 3],
        to: [i32; 3],
        faces: usize,
    },
    /// A vertex whose link falls apart into several pieces.
    NonManifoldVertex { at: [i32; 3], link_components: usize },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::NonManifoldEdge { .. } => ViolationKind::NonManifoldEdge,
            Violation::NonManifoldVertex { .. } => ViolationKind::NonManifoldVertex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_closed_surface: bool,
    pub violations: Vec<Violation>,
}

/// Checks that every edge lies on exactly two faces and that every vertex
/// link is connected.
///
/// The link of `v` is the set of edges of faces around `v` that do not
/// themselves touch `v`; for a square `v a b c` those are `a b` and `b c`.
pub fn validate_closed_surface(s: &SurfaceComplex) -> ValidationReport {
    let mut violations = Vec::new();

    for (e, ends) in s.edges().iter().enumerate() {
        let faces = s.edge_faces(e as u32).len();
        if faces != 2 {
            violations.push(Violation::NonManifoldEdge {
                from: s.vertices()[ends[0] as usize],
                to: s.vertices()[ends[1] as usize],
                faces,
            });
        }
    }

    for v in 0..s.vertex_count() as u32 {
        let components = link_components(s, v);
        if components != 1 {
            violations.push(Violation::NonManifoldVertex {
                at: s.vertices()[v as usize],
                link_components: components,
            });
        }
    }

    ValidationReport {
        is_closed_surface: violations.is_empty(),
        violations,
    }
}

fn link_components(s: &SurfaceComplex, v: u32) -> usize {
    let mut local: BTreeMap<u32, usize> = BTreeMap::new();
    let mut link_edges = Vec::new();
    for &f in s.vertex_faces(v) {
        let face = &s.faces()[f as usize];
        let Some(i) = face.vertices.iter().position(|&u| u == v) else {
            continue;
        };
        for step in [1, 2] {
            let e = face.edges[(i + step) % 4];
            let [a, b] = s.edges()[e as usize];
            let next = local.len();
            let a = *local.entry(a).or_insert(next);
            let next = local.len();
            let b = *local.entry(b).or_insert(next);
            link_edges.push((a, b));
        }
    }
    if local.is_empty() {
        return 0;
    }
    let mut uf = UnionFind::<usize>::new(local.len());
    for (a, b) in link_edges {
        uf.union(a, b);
    }
    let mut roots: Vec<usize> = (0..local.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Splits a complex into pieces of faces connected through shared edges.
/// Pieces are ordered by their first face in the input.
pub fn connected_components(s: &SurfaceComplex) -> Vec<SurfaceComplex> {
    let nf = s.face_count();
    if nf == 0 {
        return Vec::new();
    }
    let mut uf = UnionFind::<usize>::new(nf);
    for e in 0..s.edge_count() as u32 {
        let faces = s.edge_faces(e);
        for w in faces.windows(2) {
            uf.union(w[0] as usize, w[1] as usize);
        }
    }
    let raw = s.raw_faces();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    for f in 0..nf {
        let root = uf.find(f);
        let entry = groups.entry(root).or_default();
        if entry.is_empty() {
            order.push(root);
        }
        entry.push(f);
    }
    if order.len() == 1 {
        return vec![s.clone()];
    }
    order
        .into_iter()
        .map(|root| {
            let faces: Vec<_> = groups[&root].iter().map(|&f| raw[f]).collect();
            SurfaceComplex::from_raw_faces(&faces)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{extract_boundary, VoxelSet};

    fn boundary(cells: &[[i32; 3]]) -> SurfaceComplex {
        extract_boundary(&cells.iter().copied().collect::<VoxelSet>())
    }

    #[test]
    fn cube_is_valid() {
        let r = validate_closed_surface(&boundary(&[[0, 0, 0]]));
        assert!(r.is_closed_surface);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn diagonal_edge_contact() {
        let s = boundary(&[[0, 0, 0], [1, 1, 0]]);
        let r = validate_closed_surface(&s);
        assert!(!r.is_closed_surface);
        let edges: Vec<_> = r
            .violations
            .iter()
            .filter(|v| v.kind() == ViolationKind::NonManifoldEdge)
            .collect();
        assert_eq!(
            edges,
            [&Violation::NonManifoldEdge {
                from: [1, 1, 0],
                to: [1, 1, 1],
                faces: 4
            }]
        );
    }

    #[test]
    fn corner_contact() {
        let s = boundary(&[[0, 0, 0], [1, 1, 1]]);
        let r = validate_closed_surface(&s);
        assert_eq!(
            r.violations,
            [Violation::NonManifoldVertex {
                at: [1, 1, 1],
                link_components: 2
            }]
        );
        assert!(!r.is_closed_surface);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&boundary(&[[0, 0, 0]])).len(), 1);
        let parts = connected_components(&boundary(&[[0, 0, 0], [3, 0, 0]]));
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.face_count(), 6);
            assert_eq!(p.euler_characteristic(), 2);
        }
    }

    #[test]
    fn cavity_gives_two_surfaces() {
        let cells: Vec<[i32; 3]> = (0..3)
            .flat_map(|x| (0..3).flat_map(move |y| (0..3).map(move |z| [x, y, z])))
            .filter(|c| *c != [1, 1, 1])
            .collect();
        let s = boundary(&cells);
        assert!(validate_closed_surface(&s).is_closed_surface);
        assert_eq!(connected_components(&s).len(), 2);
    }
}
