//! Deforming the maximal tower into an arbitrary reachable one.
//!
//! Three operations act on a tower without regard to the game rules:
//! sliding a block within its level, loading a block onto the top, and
//! inserting a block into some other level. Blocks can also be parked in
//! or taken from a reserve pool, which stands for the levels cut off by
//! [`strip_prime`].

use std::fmt;

use serde::Serialize;

use crate::config::{
    make_nk_configuration, solve_nk_decomposition, Configuration, GameParams, Level,
};
use crate::error::{JengaError, Result};
use crate::topology::{closed_form_genus, solid_genus, surface_genus};
use crate::geometry::{extract_boundary, voxelize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DeformKind {
    Slide,
    Load,
    Insert,
}

impl DeformKind {
    pub fn name(self) -> &'static str {
        match self {
            DeformKind::Slide => "slide",
            DeformKind::Load => "load",
            DeformKind::Insert => "insert",
        }
    }
}

/// A block position, or the reserve pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Place {
    Cell { level: usize, slot: usize },
    Pool,
}

impl Place {
    pub fn cell(level: usize, slot: usize) -> Self {
        Place::Cell { level, slot }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Cell { level, slot } => write!(f, "L{level}S{slot}"),
            Place::Pool => f.write_str("pool"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DeformOp {
    pub kind: DeformKind,
    pub source: Place,
    pub target: Place,
}

impl fmt::Display for DeformOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind.name(), self.source, self.target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    /// Top level of the maximal odd tower pushed down two levels.
    Squash,
    /// Blocks moved from the top into the first level.
    Widen,
    A1,
    A2,
    A3,
    /// Levels left above the target parked in the pool.
    Return,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Squash => "Q2",
            Phase::Widen => "Q3",
            Phase::A1 => "A1",
            Phase::A2 => "A2",
            Phase::A3 => "A3",
            Phase::Return => "return",
        })
    }
}

/// A tower plus the number of blocks held in reserve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformState {
    pub config: Configuration,
    pub pool: usize,
}

impl DeformState {
    pub fn block_count(&self) -> usize {
        self.config.block_count() + self.pool
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformStep {
    pub phase: Phase,
    pub op: DeformOp,
    pub genus_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformTrace {
    pub start: DeformState,
    pub steps: Vec<DeformStep>,
    pub end: DeformState,
}

impl DeformTrace {
    fn new(start: DeformState) -> Self {
        Self {
            end: start.clone(),
            start,
            steps: Vec::new(),
        }
    }

    fn push(&mut self, phase: Phase, op: DeformOp) -> Result<()> {
        self.end = apply_deform_pooled(&self.end, op)?;
        let genus_after = state_genus(&self.end.config)?;
        self.steps.push(DeformStep {
            phase,
            op,
            genus_after,
        });
        Ok(())
    }

    pub fn max_genus(&self) -> Option<i64> {
        self.steps.iter().map(|s| s.genus_after).max()
    }

    /// Levels whose blocks were moved during `phase`, by source or target.
    pub fn levels_touched(&self, phase: Phase) -> Vec<usize> {
        let mut levels: Vec<usize> = self
            .steps
            .iter()
            .filter(|s| s.phase == phase)
            .map(|s| match (s.op.kind, s.op.source, s.op.target) {
                // the level being fixed is the source of slides and loads
                // and the target of inserts
                (DeformKind::Insert, _, Place::Cell { level, .. }) => level,
                (_, Place::Cell { level, .. }, _) => level,
                (_, _, Place::Cell { level, .. }) => level,
                _ => 0,
            })
            .filter(|&l| l > 0)
            .collect();
        levels.sort_unstable();
        levels.dedup();
        levels
    }

    /// Lines of the form `<phase> <op> <from> <to> genus=<g>`.
    pub fn lines(&self) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| format!("{} {} genus={}", s.phase, s.op, s.genus_after))
            .collect()
    }
}

fn state_genus(c: &Configuration) -> Result<i64> {
    if c.levels_count() == 0 {
        return Ok(0);
    }
    surface_genus(&extract_boundary(&voxelize(c)))
}

/// Applies `op` to a tower with no pool.
pub fn apply_deform(c: &Configuration, op: DeformOp) -> Result<Configuration> {
    if op.source == Place::Pool || op.target == Place::Pool {
        return Err(JengaError::InvalidDeform(format!(
            "{op} uses the pool; use apply_deform_pooled"
        )));
    }
    Ok(apply_deform_pooled(
        &DeformState {
            config: c.clone(),
            pool: 0,
        },
        op,
    )?
    .config)
}

/// Applies `op`. A level emptied by the removal must be the top level; it
/// is dropped. Targets may be an existing level or one new level on top.
pub fn apply_deform_pooled(state: &DeformState, op: DeformOp) -> Result<DeformState> {
    let bad = |why: &str| JengaError::InvalidDeform(format!("{op}: {why}"));
    let n = state.config.n();
    let mut levels = state.config.levels().to_vec();
    let mut pool = state.pool;
    let s = levels.len();

    match (op.kind, op.source, op.target) {
        (DeformKind::Slide, Place::Cell { level: a, .. }, Place::Cell { level: b, .. })
            if a != b =>
        {
            return Err(bad("a slide stays within one level"))
        }
        (DeformKind::Slide, Place::Pool, _) | (DeformKind::Slide, _, Place::Pool) => {
            return Err(bad("a slide stays within one level"))
        }
        (DeformKind::Load, Place::Pool, _) | (DeformKind::Load, _, Place::Pool) => {
            return Err(bad("a load moves a block of the tower"))
        }
        (DeformKind::Load, _, Place::Cell { level, .. }) if level < s || level > s + 1 => {
            return Err(bad("a load goes onto the top level"))
        }
        _ => {}
    }

    let mut emptied = None;
    match op.source {
        Place::Pool => {
            pool = pool.checked_sub(1).ok_or_else(|| bad("pool is empty"))?;
        }
        Place::Cell { level, slot } => {
            if level == 0 || level > s || slot == 0 || slot > n {
                return Err(bad("source outside the tower"));
            }
            if !levels[level - 1].contains(slot) {
                return Err(bad("source slot is empty"));
            }
            levels[level - 1].remove(slot);
            if levels[level - 1].is_empty() {
                emptied = Some(level);
            }
        }
    }

    match op.target {
        Place::Pool => pool += 1,
        Place::Cell { level, slot } => {
            if level == 0 || level > s + 1 || slot == 0 || slot > n {
                return Err(bad("target outside the tower"));
            }
            if emptied.is_some_and(|e| level > e) {
                return Err(bad("source level would vanish below the target"));
            }
            if level == s + 1 {
                levels.push(Level::EMPTY);
            }
            if levels[level - 1].contains(slot) {
                return Err(bad("target slot is occupied"));
            }
            levels[level - 1].insert(slot);
        }
    }

    if let Some(e) = emptied {
        if levels[e - 1].is_empty() {
            if e != levels.len() {
                return Err(bad("would leave an empty level inside the tower"));
            }
            levels.pop();
        }
    }
    Ok(DeformState {
        config: Configuration::from_raw(n, state.config.first_axis(), levels),
        pool,
    })
}

/// Slides one block within `level`.
pub fn move_within_level(
    c: &Configuration,
    level: usize,
    from: usize,
    to: usize,
) -> Result<Configuration> {
    apply_deform(
        c,
        DeformOp {
            kind: DeformKind::Slide,
            source: Place::cell(level, from),
            target: Place::cell(level, to),
        },
    )
}

/// Drops the first level and the top two levels. Level orientation is
/// kept, so the result starts on the second level's axis.
pub fn strip_prime(c: &Configuration) -> Result<Configuration> {
    let s = c.levels_count();
    if s < 4 {
        return Err(JengaError::InvalidDeform(format!(
            "stripping needs at least 4 levels, found {s}"
        )));
    }
    c.slice_levels(2, s - 2)
}

/// Puts the first level and the top two levels of `original` back around
/// `c3`.
pub fn reassemble_hat(c3: &Configuration, original: &Configuration) -> Result<Configuration> {
    let s = original.levels_count();
    if s < 4 {
        return Err(JengaError::ShapeMismatch(format!(
            "original has {s} levels, need at least 4"
        )));
    }
    if c3.n() != original.n() {
        return Err(JengaError::ShapeMismatch(format!(
            "width {} against {}",
            c3.n(),
            original.n()
        )));
    }
    if c3.levels_count() > 0 && c3.first_axis() != original.axis_of(2) {
        return Err(JengaError::ShapeMismatch(
            "middle levels start on the wrong axis".into(),
        ));
    }
    let mut levels = vec![original.levels()[0]];
    levels.extend_from_slice(c3.levels());
    levels.extend_from_slice(&original.levels()[s - 2..]);
    Configuration::with_axis(original.n(), original.first_axis(), levels)
}

/// Removes every block of `level` not in `want`: slides go first, pairing
/// surplus blocks with missing ones left to right, then loads.
fn trim_level(trace: &mut DeformTrace, phase: Phase, level: usize, want: Level) -> Result<()> {
    let have = trace.end.config.levels()[level - 1];
    let extra: Vec<usize> = have.slots().filter(|&j| !want.contains(j)).collect();
    let holes: Vec<usize> = want.slots().filter(|&j| !have.contains(j)).collect();
    for (&from, &to) in extra.iter().zip(&holes) {
        trace.push(
            phase,
            DeformOp {
                kind: DeformKind::Slide,
                source: Place::cell(level, from),
                target: Place::cell(level, to),
            },
        )?;
    }
    for &from in extra.iter().skip(holes.len()) {
        let c = &trace.end.config;
        let s = c.levels_count();
        let n = c.n();
        let top = c.levels()[s - 1];
        let target = match top.empty_slots(n).next() {
            Some(slot) if s != level => Place::cell(s, slot),
            _ => Place::cell(s + 1, 1),
        };
        trace.push(
            phase,
            DeformOp {
                kind: DeformKind::Load,
                source: Place::cell(level, from),
                target,
            },
        )?;
    }
    Ok(())
}

/// Fills a level that has too few blocks: slides first, then inserts taken
/// from the levels above `keep`, top level and right-most block first,
/// then from the pool.
fn fill_level(
    trace: &mut DeformTrace,
    level: usize,
    want: Level,
    keep: usize,
) -> Result<()> {
    let have = trace
        .end
        .config
        .level(level)
        .unwrap_or(Level::EMPTY);
    let extra: Vec<usize> = have.slots().filter(|&j| !want.contains(j)).collect();
    let holes: Vec<usize> = want.slots().filter(|&j| !have.contains(j)).collect();
    for (&from, &to) in extra.iter().zip(&holes) {
        trace.push(
            Phase::A3,
            DeformOp {
                kind: DeformKind::Slide,
                source: Place::cell(level, from),
                target: Place::cell(level, to),
            },
        )?;
    }
    for &to in holes.iter().skip(extra.len()) {
        let c = &trace.end.config;
        let s = c.levels_count();
        let source = if s > keep {
            let slot = c.levels()[s - 1]
                .slots()
                .last()
                .expect("levels are never empty");
            Place::cell(s, slot)
        } else {
            Place::Pool
        };
        trace.push(
            Phase::A3,
            DeformOp {
                kind: DeformKind::Insert,
                source,
                target: Place::cell(level, to),
            },
        )?;
    }
    Ok(())
}

/// Deforms `source_prime` into `target_prime`, level by level from the
/// bottom, drawing on a reserve of `pool` blocks.
///
/// Levels that have at least as many blocks as the target are trimmed
/// first (A1 for levels the source already had, A2 for levels created by
/// the loads), then levels with too few blocks are filled (A3). Whatever
/// remains above the target is parked in the pool.
pub fn deform_algorithm(
    source_prime: &Configuration,
    target_prime: &Configuration,
    pool: usize,
) -> Result<DeformTrace> {
    if source_prime.n() != target_prime.n() {
        return Err(JengaError::InvalidDeform("widths differ".into()));
    }
    if source_prime.first_axis() != target_prime.first_axis()
        && source_prime.levels_count() > 0
        && target_prime.levels_count() > 0
    {
        return Err(JengaError::InvalidDeform("level orientations differ".into()));
    }
    if source_prime.has_empty_level() || target_prime.has_empty_level() {
        return Err(JengaError::InvalidDeform("empty level".into()));
    }
    if source_prime.block_count() + pool < target_prime.block_count() {
        return Err(JengaError::InvalidDeform(format!(
            "{} blocks plus a pool of {pool} cannot make {}",
            source_prime.block_count(),
            target_prime.block_count()
        )));
    }
    let start = Configuration::from_raw(
        source_prime.n(),
        target_prime.first_axis(),
        source_prime.levels().to_vec(),
    );
    let mut trace = DeformTrace::new(DeformState {
        config: start,
        pool,
    });
    let t = target_prime.levels_count();
    let s0 = source_prime.levels_count();

    for (phase, range) in [(Phase::A1, 1..=s0.min(t)), (Phase::A2, s0 + 1..=t)] {
        for level in range {
            let Some(have) = trace.end.config.level(level) else {
                break;
            };
            let want = target_prime.levels()[level - 1];
            if have.count() >= want.count() && have != want {
                trim_level(&mut trace, phase, level, want)?;
            }
        }
    }

    for level in 1..=t {
        let want = target_prime.levels()[level - 1];
        let have = trace.end.config.level(level).unwrap_or(Level::EMPTY);
        if have.count() < want.count() {
            fill_level(&mut trace, level, want, t)?;
        }
    }

    while trace.end.config.levels_count() > t {
        let c = &trace.end.config;
        let s = c.levels_count();
        let slot = c.levels()[s - 1].slots().last().expect("non-empty level");
        trace.push(
            Phase::Return,
            DeformOp {
                kind: DeformKind::Insert,
                source: Place::cell(s, slot),
                target: Place::Pool,
            },
        )?;
    }

    if trace.end.config.levels() != target_prime.levels() {
        return Err(JengaError::InvalidDeform(
            "algorithm finished away from the target".into(),
        ));
    }
    Ok(trace)
}

/// Replays a trace, checking every recorded genus.
pub fn replay_trace(trace: &DeformTrace) -> Result<Vec<DeformState>> {
    let mut states = vec![trace.start.clone()];
    for step in &trace.steps {
        let next = apply_deform_pooled(states.last().expect("non-empty"), step.op)?;
        if state_genus(&next.config)? != step.genus_after {
            return Err(JengaError::InvalidDeform(format!(
                "recorded genus {} after {} does not match",
                step.genus_after, step.op
            )));
        }
        states.push(next);
    }
    if states.last() != Some(&trace.end) {
        return Err(JengaError::InvalidDeform("replay ends elsewhere".into()));
    }
    Ok(states)
}

/// The two odd-width preparation steps applied to the maximal tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddPreprocess {
    /// The top level pushed into level `x - 2`.
    pub q2: Configuration,
    /// `q2` with extra blocks in the first level; equal to `q2` when no
    /// widening was needed.
    pub q3: Configuration,
    pub trace: DeformTrace,
    pub genus_q2: i64,
    pub genus_q3: i64,
}

/// Empty slot of `level` to fill next: the left-most one with no
/// neighbouring block, else the left-most one.
fn spread_slot(level: Level, n: usize) -> Option<usize> {
    let free = |j: usize| {
        !level.contains(j) && (j == 1 || !level.contains(j - 1)) && (j == n || !level.contains(j + 1))
    };
    (1..=n)
        .find(|&j| free(j))
        .or_else(|| level.empty_slots(n).next())
}

pub fn odd_preprocess(q: &Configuration, target_first_count: usize) -> Result<OddPreprocess> {
    let n = q.n();
    if n.is_multiple_of(2) {
        return Err(JengaError::InvalidDeform("odd width required".into()));
    }
    if !q.block_count().is_multiple_of(n) {
        return Err(JengaError::InvalidDeform("block count is not a multiple of n".into()));
    }
    let p = GameParams::new(n, q.block_count() / n)?;
    if *q != make_nk_configuration(p)? {
        return Err(JengaError::InvalidDeform(
            "preprocessing applies to the maximal tower only".into(),
        ));
    }
    let d = solve_nk_decomposition(p)?;
    let x = q.levels_count();
    if x < 5 {
        return Err(JengaError::InvalidDeform(format!("{x} levels is too few")));
    }
    if target_first_count > n {
        return Err(JengaError::InvalidDeform(format!(
            "first level cannot hold {target_first_count} blocks"
        )));
    }

    let mut trace = DeformTrace::new(DeformState {
        config: q.clone(),
        pool: 0,
    });
    let top_slots: Vec<usize> = q.levels()[x - 1].slots().collect();
    let holes: Vec<usize> = q.levels()[x - 3].empty_slots(n).collect();
    if top_slots.len() != holes.len() {
        return Err(JengaError::InvalidDeform("unexpected maximal shape".into()));
    }
    for (&from, &to) in top_slots.iter().zip(&holes) {
        trace.push(
            Phase::Squash,
            DeformOp {
                kind: DeformKind::Insert,
                source: Place::cell(x, from),
                target: Place::cell(x - 2, to),
            },
        )?;
    }
    let q2 = trace.end.config.clone();
    let genus_q2 = solid_genus(&q2)?;

    for _ in d.l..target_first_count {
        let c = &trace.end.config;
        let s = c.levels_count();
        let from = c.levels()[s - 1].slots().last().expect("top is not empty");
        let to = spread_slot(c.levels()[0], n).expect("first level has room");
        trace.push(
            Phase::Widen,
            DeformOp {
                kind: DeformKind::Insert,
                source: Place::cell(s, from),
                target: Place::cell(1, to),
            },
        )?;
    }
    let q3 = trace.end.config.clone();
    let genus_q3 = solid_genus(&q3)?;
    Ok(OddPreprocess {
        q2,
        q3,
        trace,
        genus_q2,
        genus_q3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// The target has too few levels to strip; only its genus is compared.
    Trivial,
    Direct,
    Preprocessed,
}

/// Everything the comparison of a target tower with the maximal one
/// produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub params: GameParams,
    pub bound: i64,
    pub target: Configuration,
    pub target_genus: i64,
    pub branch: Branch,
    pub preprocess: Option<OddPreprocess>,
    /// The tower the algorithm starts from: the maximal one or its
    /// preprocessed form.
    pub start: Option<Configuration>,
    pub trace: Option<DeformTrace>,
    pub hat: Option<Configuration>,
    pub hat_genus: Option<i64>,
}

impl PipelineReport {
    /// Every genus along the way stays within the bound; the preprocessed
    /// towers are strictly below it.
    pub fn holds(&self) -> bool {
        let trace_ok = self
            .trace
            .as_ref()
            .and_then(DeformTrace::max_genus)
            .is_none_or(|g| g <= self.bound);
        let pre_ok = self
            .preprocess
            .as_ref()
            .is_none_or(|p| p.genus_q2 < self.bound && p.genus_q3 < self.bound);
        trace_ok
            && pre_ok
            && self.hat_genus.is_none_or(|g| g <= self.bound)
            && self.target_genus <= self.bound
    }
}

/// Runs the deformation from the maximal `(n, k)` tower to `q`.
pub fn deformation_pipeline(q: &Configuration) -> Result<PipelineReport> {
    let n = q.n();
    if !q.block_count().is_multiple_of(n) {
        return Err(JengaError::InvalidDeform("block count is not a multiple of n".into()));
    }
    let p = GameParams::new(n, q.block_count() / n)?;
    let bound = closed_form_genus(p)?;
    let target_genus = solid_genus(q)?;
    let mut report = PipelineReport {
        params: p,
        bound,
        target: q.clone(),
        target_genus,
        branch: Branch::Trivial,
        preprocess: None,
        start: None,
        trace: None,
        hat: None,
        hat_genus: None,
    };
    if q.levels_count() < 4 || p.k < 3 {
        return Ok(report);
    }
    let nk = make_nk_configuration(p)?;
    let mut start = nk.clone();
    if p.is_odd() {
        let l = solve_nk_decomposition(p)?.l;
        let first = q.levels()[0].count();
        if first > l {
            let pre = odd_preprocess(&nk, first)?;
            start = pre.q3.clone();
            report.preprocess = Some(pre);
            report.branch = Branch::Preprocessed;
        }
    }
    if report.branch == Branch::Trivial {
        report.branch = Branch::Direct;
    }
    let source_prime = strip_prime(&start)?;
    let target_prime = strip_prime(q)?;
    let pool = start.block_count() - source_prime.block_count();
    let trace = deform_algorithm(&source_prime, &target_prime, pool)?;
    let hat = reassemble_hat(&trace.end.config, &start)?;
    report.hat_genus = Some(solid_genus(&hat)?);
    report.hat = Some(hat);
    report.start = Some(start);
    report.trace = Some(trace);
    Ok(report)
}
