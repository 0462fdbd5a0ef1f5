use std::collections::BTreeMap;

use super::voxel::{Cell, VoxelSet};

/// Outward normal of a boundary square: `axis` 0/1/2 for x/y/z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceNormal {
    pub axis: u8,
    pub positive: bool,
}

/// A unit square of the boundary.
///
/// `vertices` run counter-clockwise seen from outside the solid, starting
/// at the face's least vertex index; `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: [u32; 4],
    pub edges: [u32; 4],
    pub normal: FaceNormal,
    /// The solid cell this square bounds.
    pub cell: Cell,
}

/// Quad-faced boundary complex with incidence tables.
///
/// Vertices are sorted lexicographically by coordinate, edges by their
/// vertex pair, faces by their sorted vertex tuple, so two complexes built
/// from the same squares are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComplex {
    vertices: Vec<[i32; 3]>,
    edges: Vec<[u32; 2]>,
    faces: Vec<Face>,
    edge_faces: Vec<Vec<u32>>,
    vertex_faces: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RawFace {
    pub corners: [[i32; 3]; 4],
    pub normal: FaceNormal,
    pub cell: Cell,
}

impl SurfaceComplex {
    pub(crate) fn from_raw_faces(raw: &[RawFace]) -> Self {
        let mut vertex_ids: BTreeMap<[i32; 3], u32> = BTreeMap::new();
        for f in raw {
            for c in f.corners {
                vertex_ids.insert(c, 0);
            }
        }
        for (i, id) in vertex_ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let vertices: Vec<[i32; 3]> = vertex_ids.keys().copied().collect();

        let mut cycles: Vec<([u32; 4], FaceNormal, Cell)> = raw
            .iter()
            .map(|f| {
                let mut ids = f.corners.map(|c| vertex_ids[&c]);
                let start = (0..4).min_by_key(|&i| ids[i]).unwrap_or(0);
                ids.rotate_left(start);
                (ids, f.normal, f.cell)
            })
            .collect();
        cycles.sort_by_key(|(ids, _, _)| {
            let mut key = *ids;
            key.sort_unstable();
            key
        });

        let mut edge_ids: BTreeMap<[u32; 2], u32> = BTreeMap::new();
        for (ids, _, _) in &cycles {
            for i in 0..4 {
                edge_ids.insert(edge_key(ids[i], ids[(i + 1) % 4]), 0);
            }
        }
        for (i, id) in edge_ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let edges: Vec<[u32; 2]> = edge_ids.keys().copied().collect();

        let mut edge_faces = vec![Vec::new(); edges.len()];
        let mut vertex_faces = vec![Vec::new(); vertices.len()];
        let mut faces = Vec::with_capacity(cycles.len());
        for (fi, (ids, normal, cell)) in cycles.into_iter().enumerate() {
            let mut fedges = [0u32; 4];
            for i in 0..4 {
                let e = edge_ids[&edge_key(ids[i], ids[(i + 1) % 4])];
                fedges[i] = e;
                edge_faces[e as usize].push(fi as u32);
                vertex_faces[ids[i] as usize].push(fi as u32);
            }
            faces.push(Face {
                vertices: ids,
                edges: fedges,
                normal,
                cell,
            });
        }

        Self {
            vertices,
            edges,
            faces,
            edge_faces,
            vertex_faces,
        }
    }

    pub(crate) fn raw_faces(&self) -> Vec<RawFace> {
        self.faces
            .iter()
            .map(|f| RawFace {
                corners: f.vertices.map(|v| self.vertices[v as usize]),
                normal: f.normal,
                cell: f.cell,
            })
            .collect()
    }

    pub fn vertices(&self) -> &[[i32; 3]] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edge_faces(&self, edge: u32) -> &[u32] {
        &self.edge_faces[edge as usize]
    }

    pub fn vertex_faces(&self, vertex: u32) -> &[u32] {
        &self.vertex_faces[vertex as usize]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn vertex_index(&self, p: [i32; 3]) -> Option<u32> {
        self.vertices.binary_search(&p).ok().map(|i| i as u32)
    }
}

fn edge_key(a: u32, b: u32) -> [u32; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

const UNIT: [[i32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn add(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Every unit square separating a solid cell from an empty one.
pub fn extract_boundary(v: &VoxelSet) -> SurfaceComplex {
    let mut raw = Vec::new();
    for &cell in v.iter() {
        for axis in 0..3usize {
            for positive in [false, true] {
                let mut neighbour = cell;
                neighbour[axis] += if positive { 1 } else { -1 };
                if v.contains(&neighbour) {
                    continue;
                }
                let mut base = cell;
                if positive {
                    base[axis] += 1;
                }
                // (e_u, e_v) is a right-handed pair with e_u x e_v = e_axis
                let eu = UNIT[(axis + 1) % 3];
                let ev = UNIT[(axis + 2) % 3];
                let p1 = add(base, eu);
                let p2 = add(p1, ev);
                let p3 = add(base, ev);
                let corners = if positive {
                    [base, p1, p2, p3]
                } else {
                    [base, p3, p2, p1]
                };
                raw.push(RawFace {
                    corners,
                    normal: FaceNormal {
                        axis: axis as u8,
                        positive,
                    },
                    cell,
                });
            }
        }
    }
    SurfaceComplex::from_raw_faces(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    fn sub(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    #[test]
    fn unit_cube() {
        let v: VoxelSet = [[0, 0, 0]].into_iter().collect();
        let s = extract_boundary(&v);
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (8, 12, 6));
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn two_cell_column() {
        // counted by hand: 12 lattice points, 20 unit edges, 10 squares
        let v: VoxelSet = [[0, 0, 0], [0, 0, 1]].into_iter().collect();
        let s = extract_boundary(&v);
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (12, 20, 10));
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn ring_is_a_torus() {
        let v: VoxelSet = (0..3)
            .flat_map(|x| (0..3).map(move |y| [x, y, 0]))
            .filter(|c| *c != [1, 1, 0])
            .collect();
        assert_eq!(extract_boundary(&v).euler_characteristic(), 0);
    }

    #[test]
    fn winding_points_outward() {
        let v: VoxelSet = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]].into_iter().collect();
        let s = extract_boundary(&v);
        for f in s.faces() {
            let p = f.vertices.map(|i| s.vertices()[i as usize]);
            let n = cross(sub(p[1], p[0]), sub(p[2], p[1]));
            let mut expected = [0; 3];
            expected[f.normal.axis as usize] = if f.normal.positive { 1 } else { -1 };
            assert_eq!(n, expected);
            // the face's cell lies on the inner side
            let centre2 = [
                2 * f.cell[0] + 1,
                2 * f.cell[1] + 1,
                2 * f.cell[2] + 1,
            ];
            let a = f.normal.axis as usize;
            let plane2 = 2 * p[0][a];
            assert_eq!((plane2 - centre2[a]).signum(), expected[a]);
        }
    }

    #[test]
    fn bottom_faces_included() {
        let v: VoxelSet = [[0, 0, 0]].into_iter().collect();
        let s = extract_boundary(&v);
        assert!(s
            .faces()
            .iter()
            .any(|f| f.normal == FaceNormal { axis: 2, positive: false }));
    }
}
