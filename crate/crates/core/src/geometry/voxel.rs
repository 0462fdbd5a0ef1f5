use std::collections::BTreeSet;

use crate::config::{Axis, Configuration};

/// Integer lattice cell, addressed by its minimum corner.
pub type Cell = [i32; 3];

/// A finite set of unit cells. Everything outside the set, including the
/// half-space below the ground, is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VoxelSet {
    cells: BTreeSet<Cell>,
}

impl VoxelSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        self.cells.insert(cell)
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn translated(&self, by: [i32; 3]) -> Self {
        self.cells
            .iter()
            .map(|c| [c[0] + by[0], c[1] + by[1], c[2] + by[2]])
            .collect()
    }

    /// Occupancy of the eight cells around lattice point `p`, bit
    /// `dx + 2 dy + 4 dz` for the cell at `p + (dx - 1, dy - 1, dz - 1)`.
    pub fn octant_pattern(&self, p: [i32; 3]) -> u8 {
        let mut bits = 0u8;
        for dz in 0..2 {
            for dy in 0..2 {
                for dx in 0..2 {
                    let cell = [p[0] + dx - 1, p[1] + dy - 1, p[2] + dz - 1];
                    if self.contains(&cell) {
                        bits |= 1 << (dx + 2 * dy + 4 * dz);
                    }
                }
            }
        }
        bits
    }
}

impl FromIterator<Cell> for VoxelSet {
    fn from_iter<T: IntoIterator<Item = Cell>>(iter: T) -> Self {
        Self {
            cells: iter.into_iter().collect(),
        }
    }
}

/// Unit cubes of every block: level `i`, slot `j` becomes `n` cells at
/// height `i - 1` along the level's axis, offset `j - 1` across it.
pub fn voxelize(c: &Configuration) -> VoxelSet {
    let n = c.n() as i32;
    let mut set = VoxelSet::new();
    for (idx, level) in c.levels().iter().enumerate() {
        let z = idx as i32;
        let axis = c.axis_of(idx + 1);
        for slot in level.slots() {
            let offset = slot as i32 - 1;
            for along in 0..n {
                let cell = match axis {
                    Axis::X => [along, offset, z],
                    Axis::Y => [offset, along, z],
                };
                set.insert(cell);
            }
        }
    }
    set
}
