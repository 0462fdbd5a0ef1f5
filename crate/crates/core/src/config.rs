//! Block configurations in box-description form.
//!
//! A tower is a stack of levels. Every level has `n` slots; a block in a
//! level is `n` cells long and one cell wide, and consecutive levels run
//! along perpendicular axes. Slots are numbered `1..=n` from the left of the
//! box description.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{JengaError, Result};

/// Widest tower a [`Level`] bitmask can hold.
pub const MAX_WIDTH: usize = 32;

/// `(n, k)`: `n` blocks per full level (and block length in cell widths),
/// `k` initial levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameParams {
    pub n: usize,
    pub k: usize,
}

impl GameParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if !(2..=MAX_WIDTH).contains(&n) {
            return Err(JengaError::ParamOutOfRange(format!(
                "n = {n}, expected 2 <= n <= {MAX_WIDTH}"
            )));
        }
        if k < 2 {
            return Err(JengaError::ParamOutOfRange(format!(
                "k = {k}, expected k >= 2"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn block_total(&self) -> usize {
        self.n * self.k
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }
}

/// Direction the blocks of a level run along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn flipped(self) -> Self {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// Slot occupancy of one level; bit `j - 1` is slot `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Level(u32);

impl Level {
    pub const EMPTY: Level = Level(0);

    pub fn from_bits(bits: u32) -> Self {
        Level(bits)
    }

    pub fn full(n: usize) -> Self {
        Level(low_mask(n))
    }

    /// Level with blocks exactly at the given 1-based slots.
    pub fn from_slots<I: IntoIterator<Item = usize>>(slots: I) -> Self {
        let mut level = Level::EMPTY;
        for s in slots {
            level.insert(s);
        }
        level
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn count(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self, n: usize) -> bool {
        self.0 == low_mask(n)
    }

    pub fn contains(self, slot: usize) -> bool {
        (1..=MAX_WIDTH).contains(&slot) && self.0 & (1 << (slot - 1)) != 0
    }

    pub fn insert(&mut self, slot: usize) {
        debug_assert!((1..=MAX_WIDTH).contains(&slot));
        self.0 |= 1 << (slot - 1);
    }

    pub fn remove(&mut self, slot: usize) {
        debug_assert!((1..=MAX_WIDTH).contains(&slot));
        self.0 &= !(1 << (slot - 1));
    }

    /// Occupied slots in increasing order.
    pub fn slots(self) -> impl Iterator<Item = usize> {
        (1..=MAX_WIDTH).filter(move |&s| self.contains(s))
    }

    /// Empty slots among `1..=n` in increasing order.
    pub fn empty_slots(self, n: usize) -> impl Iterator<Item = usize> {
        (1..=n).filter(move |&s| !self.contains(s))
    }

    /// Slot order reversed within a level of width `n`.
    pub fn reversed(self, n: usize) -> Self {
        Level(self.0.reverse_bits() >> (32 - n))
    }

    /// Maximal runs of contiguous occupied slots.
    pub fn runs(self) -> usize {
        (self.0 & !(self.0 << 1)).count_ones() as usize
    }

    pub fn to_row(self, n: usize) -> String {
        (1..=n)
            .map(|s| if self.contains(s) { '#' } else { '.' })
            .collect()
    }
}

fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A tower of levels, bottom (level 1) first.
///
/// `first_axis` is the axis of level 1. Towers built from the game always
/// start with [`Axis::X`]; configurations cut out of a taller tower keep the
/// orientation their levels had there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    n: usize,
    first_axis: Axis,
    levels: Vec<Level>,
}

impl Configuration {
    /// Builds a tower with level 1 along [`Axis::X`].
    pub fn new(n: usize, levels: Vec<Level>) -> Result<Self> {
        Self::with_axis(n, Axis::X, levels)
    }

    pub fn with_axis(n: usize, first_axis: Axis, levels: Vec<Level>) -> Result<Self> {
        if !(2..=MAX_WIDTH).contains(&n) {
            return Err(JengaError::ParamOutOfRange(format!(
                "n = {n}, expected 2 <= n <= {MAX_WIDTH}"
            )));
        }
        if levels.is_empty() {
            return Err(JengaError::NoLevels);
        }
        for (i, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(JengaError::EmptyLevel { level: i + 1 });
            }
            if level.bits() & !low_mask(n) != 0 {
                return Err(JengaError::ParamOutOfRange(format!(
                    "level {} has blocks beyond slot {n}",
                    i + 1
                )));
            }
        }
        Ok(Self {
            n,
            first_axis,
            levels,
        })
    }

    /// Levels may be empty; used for intermediate shapes that are never
    /// serialized.
    pub(crate) fn from_raw(n: usize, first_axis: Axis, levels: Vec<Level>) -> Self {
        Self {
            n,
            first_axis,
            levels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_axis(&self) -> Axis {
        self.first_axis
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Level `i`, 1-based from the bottom.
    pub fn level(&self, i: usize) -> Option<Level> {
        i.checked_sub(1).and_then(|j| self.levels.get(j).copied())
    }

    /// Axis of level `i` (1-based).
    pub fn axis_of(&self, i: usize) -> Axis {
        if i % 2 == 1 {
            self.first_axis
        } else {
            self.first_axis.flipped()
        }
    }

    /// s(Q): the number of levels.
    pub fn levels_count(&self) -> usize {
        self.levels.len()
    }

    pub fn block_count(&self) -> usize {
        self.levels.iter().map(|l| l.count()).sum()
    }

    pub fn top(&self) -> Option<Level> {
        self.levels.last().copied()
    }

    pub fn top_is_complete(&self) -> bool {
        self.top().is_some_and(|l| l.is_full(self.n))
    }

    pub fn has_empty_level(&self) -> bool {
        self.levels.iter().any(|l| l.is_empty())
    }

    /// Sub-tower made of levels `from..=to` (1-based), keeping orientation.
    pub fn slice_levels(&self, from: usize, to: usize) -> Result<Self> {
        if from == 0 || from > to || to > self.levels.len() {
            return Err(JengaError::ParamOutOfRange(format!(
                "level range {from}..={to} outside 1..={}",
                self.levels.len()
            )));
        }
        Ok(Self {
            n: self.n,
            first_axis: self.axis_of(from),
            levels: self.levels[from - 1..to].to_vec(),
        })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_box_description(self))
    }
}

/// Parses the `.jenga` text format: a `n <width>` header followed by one
/// row of `#`/`.` per level, bottom level first.
pub fn parse_box_description(text: &str) -> Result<Configuration> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or("");
    let n = parse_header(header).ok_or(JengaError::MalformedHeader { line: 1 })?;
    if !(2..=MAX_WIDTH).contains(&n) {
        return Err(JengaError::ParamOutOfRange(format!(
            "n = {n}, expected 2 <= n <= {MAX_WIDTH}"
        )));
    }

    let rows: Vec<&str> = lines.collect();
    // a single trailing newline leaves one empty segment behind
    let rows = match rows.split_last() {
        Some((last, rest)) if last.is_empty() => rest,
        _ => &rows[..],
    };

    let mut levels = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let line = i + 2;
        let mut level = Level::EMPTY;
        let mut len = 0;
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '#' if j < MAX_WIDTH => level.insert(j + 1),
                '#' | '.' => {}
                other => return Err(JengaError::BadCharacter { line, ch: other }),
            }
            len += 1;
        }
        if len != n {
            return Err(JengaError::LineLength {
                line,
                expected: n,
                found: len,
            });
        }
        if level.is_empty() {
            return Err(JengaError::EmptyLevel { level: i + 1 });
        }
        levels.push(level);
    }
    Configuration::new(n, levels)
}

fn parse_header(line: &str) -> Option<usize> {
    let rest = line.strip_prefix("n ")?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

pub fn serialize_box_description(c: &Configuration) -> String {
    let mut out = format!("n {}\n", c.n);
    for level in &c.levels {
        out.push_str(&level.to_row(c.n));
        out.push('\n');
    }
    out
}

/// The starting tower: `k` full levels.
pub fn make_initial(p: GameParams) -> Result<Configuration> {
    let p = GameParams::new(p.n, p.k)?;
    Configuration::new(p.n, vec![Level::full(p.n); p.k])
}

/// Level count `x` and bottom-level block count `l` of the odd-width
/// maximal configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkDecomposition {
    pub x: usize,
    pub l: usize,
}

impl NkDecomposition {
    /// Whether `l` lies in the narrower range `1..=(n-1)/2`; otherwise `l`
    /// equals `(n+1)/2`.
    pub fn within_narrow_range(&self, n: usize) -> bool {
        self.l <= (n - 1) / 2
    }
}

/// Solves `nk = n + (n-1)/2 + (n+1)/2 (x-3) + l` with `1 <= l <= (n+1)/2`.
pub fn solve_nk_decomposition(p: GameParams) -> Result<NkDecomposition> {
    let p = GameParams::new(p.n, p.k)?;
    if !p.is_odd() || p.n < 3 || p.k < 3 {
        return Err(JengaError::ParamOutOfRange(format!(
            "decomposition needs odd n >= 3 and k >= 3, got ({}, {})",
            p.n, p.k
        )));
    }
    // nk + 2 = m x + l with m = (n+1)/2 and 1 <= l <= m
    let m = p.n.div_ceil(2);
    let total = p.n * p.k + 2;
    let x = (total - 1) / m;
    let l = total - m * x;
    Ok(NkDecomposition { x, l })
}

/// Slots of the bottom level of the odd configuration holding `l` blocks.
///
/// A single block sits in the middle slot. Two or more blocks occupy both
/// outer slots, so the level above never overhangs, and the rest fill
/// slots 3, 5, ... from the left. No two blocks touch.
pub fn odd_bottom_slots(n: usize, l: usize) -> Vec<usize> {
    let m = n.div_ceil(2);
    match l {
        0 => Vec::new(),
        1 => vec![m],
        _ => {
            let mut slots: Vec<usize> = (3..n).step_by(2).take(l.min(m) - 2).collect();
            slots.push(1);
            slots.push(n);
            slots.sort_unstable();
            slots
        }
    }
}

/// `n/2` separated blocks with both outer slots occupied: slots
/// 1, 3, ..., n-3 and n.
pub fn even_gapped_level(n: usize) -> Level {
    let mut level = Level::from_slots((1..n.saturating_sub(2)).step_by(2));
    level.insert(n);
    level
}

/// Q(n, k), the genus-maximizing configuration.
pub fn make_nk_configuration(p: GameParams) -> Result<Configuration> {
    let p = GameParams::new(p.n, p.k)?;
    if p.k < 3 {
        return Err(JengaError::ParamOutOfRange(format!(
            "(n, k)-configuration needs k >= 3, got k = {}",
            p.k
        )));
    }
    let n = p.n;
    let mut levels = Vec::new();
    if p.is_odd() {
        let gapped = Level::from_slots((1..=n).step_by(2));
        let NkDecomposition { x, l } = solve_nk_decomposition(p)?;
        levels.push(Level::from_slots(odd_bottom_slots(n, l)));
        levels.extend(std::iter::repeat_n(gapped, x - 3));
        levels.push(Level::full(n));
        levels.push(Level::from_slots(1..=(n - 1) / 2));
    } else {
        levels.extend(std::iter::repeat_n(even_gapped_level(n), 2 * p.k - 3));
        levels.push(Level::full(n));
        levels.push(Level::from_slots(1..=n / 2));
    }
    Configuration::new(n, levels)
}
