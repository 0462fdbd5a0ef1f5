//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use jenga_core::{Axis, Configuration, Level};
use rand::Rng;

type P = [i32; 3];

/// Cells of a tower, written out directly from the level masks.
pub fn cells(c: &Configuration) -> BTreeSet<P> {
    let n = c.n() as i32;
    let mut out = BTreeSet::new();
    for (i, level) in c.levels().iter().enumerate() {
        let z = i as i32;
        for slot in level.slots() {
            let j = slot as i32 - 1;
            for along in 0..n {
                out.insert(match c.axis_of(i + 1) {
                    Axis::X => [along, j, z],
                    Axis::Y => [j, along, z],
                });
            }
        }
    }
    out
}

/// Counts read off the boundary squares of a cell set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCounts {
    pub v: i64,
    pub e: i64,
    pub f: i64,
    /// Sum over vertices of `4 - incident squares`.
    pub defect_quarter_turns: i64,
}

impl BoundaryCounts {
    pub fn chi(&self) -> i64 {
        self.v - self.e + self.f
    }
}

pub fn boundary_counts(cells: &BTreeSet<P>) -> BoundaryCounts {
    let mut faces = 0i64;
    let mut vertex_faces: BTreeMap<P, i64> = BTreeMap::new();
    let mut edges: BTreeSet<(P, P)> = BTreeSet::new();
    for &c in cells {
        for axis in 0..3 {
            for dir in [-1i32, 1] {
                let mut nb = c;
                nb[axis] += dir;
                if cells.contains(&nb) {
                    continue;
                }
                faces += 1;
                let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
                let mut base = c;
                if dir == 1 {
                    base[axis] += 1;
                }
                let corner = |du: i32, dv: i32| {
                    let mut p = base;
                    p[u] += du;
                    p[v] += dv;
                    p
                };
                let quad = [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
                for i in 0..4 {
                    *vertex_faces.entry(quad[i]).or_default() += 1;
                    let (a, b) = (quad[i], quad[(i + 1) % 4]);
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    BoundaryCounts {
        v: vertex_faces.len() as i64,
        e: edges.len() as i64,
        f: faces,
        defect_quarter_turns: vertex_faces.values().map(|k| 4 - k).sum(),
    }
}

/// Genus from the contact graph: each maximal run of adjacent blocks in a
/// level is a node, and every run touches every run of the next level in
/// one rectangle because neighbouring levels cross at right angles.
pub fn contact_graph_genus(c: &Configuration) -> i64 {
    let runs: Vec<i64> = c.levels().iter().map(|l| l.runs() as i64).collect();
    let nodes: i64 = runs.iter().sum();
    let edges: i64 = runs.windows(2).map(|w| w[0] * w[1]).sum();
    edges - nodes + 1
}

/// A random tower with non-empty levels whose solid is connected: a
/// single level must be one run of blocks.
pub fn random_configuration<R: Rng>(rng: &mut R, max_n: usize, max_levels: usize) -> Configuration {
    let n = rng.gen_range(2..=max_n);
    let height = rng.gen_range(1..=max_levels);
    loop {
        let levels: Vec<Level> = (0..height)
            .map(|_| Level::from_bits(rng.gen_range(1..(1u32 << n))))
            .collect();
        if height > 1 || levels[0].runs() == 1 {
            return Configuration::new(n, levels).unwrap();
        }
    }
}
