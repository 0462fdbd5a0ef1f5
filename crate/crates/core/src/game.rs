//! The `(n, k)` game: move rules, symmetry reduction and exhaustive search
//! for the largest genus among reachable towers.
//!
//! A move takes one block out of some level and puts it on the top. The
//! top level itself is off limits, as is the level just under an
//! incomplete top. A move may not empty a level, and the resulting solid
//! must still be bounded by one closed surface.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{make_initial, make_nk_configuration, Axis, Configuration, GameParams, Level};
use crate::error::{JengaError, Result};
use crate::geometry::{connected_components, extract_boundary, validate_closed_surface, voxelize};
use crate::topology::{defect_sum, genus_euler};

/// Take the block at (`remove_level`, `remove_slot`) and put it in
/// `place_slot` of the top level, or of a new level when the top is full.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Move {
    pub remove_level: usize,
    pub remove_slot: usize,
    pub place_slot: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L{} S{} -> S{}",
            self.remove_level, self.remove_slot, self.place_slot
        )
    }
}

/// Rule variants. By default the top level can never be taken from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Rules {
    /// Also allow taking a block from the top level itself; the block is
    /// then put back on the (now incomplete) top level.
    pub allow_top_removal: bool,
}

/// Result of placing a move without any shape checks.
fn raw_apply(c: &Configuration, m: Move) -> Configuration {
    let mut levels = c.levels().to_vec();
    levels[m.remove_level - 1].remove(m.remove_slot);
    let top_full = levels.last().is_some_and(|l| l.is_full(c.n()));
    if top_full {
        levels.push(Level::from_slots([m.place_slot]));
    } else if let Some(top) = levels.last_mut() {
        top.insert(m.place_slot);
    }
    Configuration::from_raw(c.n(), c.first_axis(), levels)
}

/// Moves allowed by the removal and placement rules alone, sorted. The
/// closed-surface requirement is not checked here.
fn rule_moves(c: &Configuration, rules: Rules) -> Vec<Move> {
    let n = c.n();
    let s = c.levels_count();
    let top_complete = c.top_is_complete();
    let mut moves = Vec::new();
    for level in 1..=s {
        if level == s && !rules.allow_top_removal {
            continue;
        }
        if !top_complete && s >= 2 && level == s - 1 {
            continue;
        }
        let current = c.levels()[level - 1];
        if current.count() < 2 {
            continue;
        }
        for slot in current.slots() {
            let mut after_top = c.top().unwrap_or_default();
            if level == s {
                after_top.remove(slot);
            }
            if after_top.is_full(n) {
                moves.extend((1..=n).map(|place| Move {
                    remove_level: level,
                    remove_slot: slot,
                    place_slot: place,
                }));
            } else {
                for place in after_top.empty_slots(n) {
                    if level == s && place == slot {
                        continue;
                    }
                    moves.push(Move {
                        remove_level: level,
                        remove_slot: slot,
                        place_slot: place,
                    });
                }
            }
        }
    }
    moves
}

fn is_single_closed_surface(c: &Configuration) -> bool {
    let s = extract_boundary(&voxelize(c));
    validate_closed_surface(&s).is_closed_surface && connected_components(&s).len() == 1
}

/// All legal moves under the default rules, sorted.
pub fn legal_moves(c: &Configuration) -> Vec<Move> {
    legal_moves_with(c, Rules::default())
}

pub fn legal_moves_with(c: &Configuration, rules: Rules) -> Vec<Move> {
    rule_moves(c, rules)
        .into_iter()
        .filter(|&m| is_single_closed_surface(&raw_apply(c, m)))
        .collect()
}

pub fn apply_move(c: &Configuration, m: Move) -> Result<Configuration> {
    apply_move_with(c, m, Rules::default())
}

pub fn apply_move_with(c: &Configuration, m: Move, rules: Rules) -> Result<Configuration> {
    if !rule_moves(c, rules).contains(&m) {
        return Err(JengaError::IllegalMove(format!("{m} is not allowed here")));
    }
    let next = raw_apply(c, m);
    if !is_single_closed_surface(&next) {
        return Err(JengaError::IllegalMove(format!(
            "{m} leaves a boundary that is not one closed surface"
        )));
    }
    Ok(next)
}

/// Least image under the tower symmetries: identity, the two vertical
/// mirror planes, and the half turn. Mirroring across x reverses the
/// levels whose slots are x positions (axis Y), and vice versa.
pub fn canonicalize(c: &Configuration) -> Configuration {
    let n = c.n();
    let image = |flip_x_axis: bool, flip_y_axis: bool| {
        let levels = c
            .levels()
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let flip = match c.axis_of(i + 1) {
                    Axis::X => flip_x_axis,
                    Axis::Y => flip_y_axis,
                };
                if flip {
                    l.reversed(n)
                } else {
                    l
                }
            })
            .collect();
        Configuration::from_raw(n, c.first_axis(), levels)
    };
    [(false, false), (true, false), (false, true), (true, true)]
        .into_iter()
        .map(|(a, b)| image(a, b))
        .min()
        .expect("four images")
}

/// The second level from the top holds `n` blocks.
pub fn second_from_top_full(c: &Configuration) -> bool {
    let s = c.levels_count();
    s < 2 || c.levels()[s - 2].is_full(c.n())
}

/// Blocks on the top level plus blocks on the third level from the top
/// is at least `n`.
pub fn top_and_third_cover_width(c: &Configuration) -> bool {
    let s = c.levels_count();
    s < 3 || c.levels()[s - 1].count() + c.levels()[s - 3].count() >= c.n()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub max_states: usize,
    pub use_symmetry: bool,
    pub track_witness: bool,
    pub rules: Rules,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_states: 2_000_000,
            use_symmetry: true,
            track_witness: true,
            rules: Rules::default(),
        }
    }
}

/// One visited tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateRecord {
    /// The tower as first reached (not necessarily its canonical form).
    pub config: Configuration,
    pub genus: i64,
    /// Genus from the angular defects, kept as a cross-check.
    pub genus_descartes: i64,
    pub depth: usize,
    pub parent: Option<(usize, Move)>,
    pub legal_moves: usize,
}

/// Every state reached by breadth-first search, in discovery order.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub params: GameParams,
    pub states: Vec<StateRecord>,
    index: HashMap<Configuration, usize>,
    pub use_symmetry: bool,
    pub hit_budget: bool,
    /// Successor towers whose boundary failed the closed-surface test.
    pub rejected_children: usize,
}

impl StateSpace {
    fn key(&self, c: &Configuration) -> Configuration {
        if self.use_symmetry {
            canonicalize(c)
        } else {
            c.clone()
        }
    }

    pub fn find(&self, c: &Configuration) -> Option<usize> {
        self.index.get(&self.key(c)).copied()
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        self.find(c).is_some()
    }

    /// Moves leading from the initial tower to state `i`.
    pub fn path_to(&self, mut i: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        while let Some((parent, m)) = self.states[i].parent {
            moves.push(m);
            i = parent;
        }
        moves.reverse();
        moves
    }
}

struct Analysis {
    closed: bool,
    genus: i64,
    genus_descartes: i64,
}

fn analyze_state(c: &Configuration) -> Analysis {
    let s = extract_boundary(&voxelize(c));
    let closed =
        validate_closed_surface(&s).is_closed_surface && connected_components(&s).len() == 1;
    if !closed {
        return Analysis {
            closed,
            genus: 0,
            genus_descartes: 0,
        };
    }
    let chi = s.euler_characteristic();
    Analysis {
        closed,
        genus: (2 - chi) / 2,
        genus_descartes: 1 - defect_sum(&s) / 8,
    }
}

/// Breadth-first enumeration of the towers reachable from the initial one.
///
/// States are expanded level by level in discovery order and moves in
/// sorted order, so the visited set, its order and every parent link are
/// independent of how many threads do the geometry.
pub fn enumerate_states(p: GameParams, o: SearchOptions) -> Result<StateSpace> {
    if o.max_states == 0 {
        return Err(JengaError::ParamOutOfRange("max_states must be >= 1".into()));
    }
    let start = make_initial(p)?;
    let first = analyze_state(&start);
    let mut space = StateSpace {
        params: p,
        states: Vec::new(),
        index: HashMap::new(),
        use_symmetry: o.use_symmetry,
        hit_budget: false,
        rejected_children: 0,
    };
    let key = space.key(&start);
    space.index.insert(key, 0);
    space.states.push(StateRecord {
        config: start.clone(),
        genus: genus_euler(&extract_boundary(&voxelize(&start)))?,
        genus_descartes: first.genus_descartes,
        depth: 0,
        parent: None,
        legal_moves: 0,
    });

    let mut frontier = vec![0usize];
    let mut depth = 0;
    'outer: while !frontier.is_empty() {
        depth += 1;
        let mut fresh: Vec<(Configuration, usize, Move)> = Vec::new();
        let mut pending: HashSet<Configuration> = HashSet::new();
        let mut candidates_per_parent: Vec<(usize, Vec<(Move, Configuration)>)> = frontier
            .par_iter()
            .map(|&i| {
                let c = &space.states[i].config;
                let children = rule_moves(c, o.rules)
                    .into_iter()
                    .map(|m| (m, raw_apply(c, m)))
                    .collect();
                (i, children)
            })
            .collect();

        for (parent, children) in candidates_per_parent.drain(..) {
            for (m, child) in children {
                let key = space.key(&child);
                if space.index.contains_key(&key) || pending.contains(&key) {
                    continue;
                }
                if space.states.len() + fresh.len() >= o.max_states {
                    space.hit_budget = true;
                    break;
                }
                pending.insert(key);
                fresh.push((child, parent, m));
            }
            if space.hit_budget {
                break;
            }
        }

        let analyses: Vec<Analysis> = fresh.par_iter().map(|(c, _, _)| analyze_state(c)).collect();
        let mut next = Vec::with_capacity(fresh.len());
        for ((child, parent, m), a) in fresh.into_iter().zip(analyses) {
            if !a.closed {
                space.rejected_children += 1;
                continue;
            }
            let id = space.states.len();
            let key = space.key(&child);
            space.index.insert(key, id);
            space.states.push(StateRecord {
                config: child,
                genus: a.genus,
                genus_descartes: a.genus_descartes,
                depth,
                parent: Some((parent, m)),
                legal_moves: 0,
            });
            next.push(id);
        }
        if space.hit_budget {
            break 'outer;
        }
        frontier = next;
    }

    // legal move counts, for dead-end reporting
    let counts: Vec<usize> = space
        .states
        .par_iter()
        .map(|st| {
            rule_moves(&st.config, o.rules)
                .into_iter()
                .filter(|&m| {
                    let child = raw_apply(&st.config, m);
                    match space.find(&child) {
                        Some(_) => true,
                        None => is_single_closed_surface(&child),
                    }
                })
                .count()
        })
        .collect();
    for (st, count) in space.states.iter_mut().zip(counts) {
        st.legal_moves = count;
    }
    Ok(space)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: GameParams,
    pub states_visited: usize,
    pub max_genus: i64,
    /// Moves from the initial tower to the first maximizing tower found.
    pub witness: Option<Vec<Move>>,
    pub witness_config: Option<Configuration>,
    pub hit_budget: bool,
    pub dead_ends: usize,
    /// Whether Q(n, k) was reached; `None` when it is undefined (k < 3).
    pub nk_configuration_visited: Option<bool>,
    /// States where the Euler and angular-defect genus disagree.
    pub genus_mismatches: usize,
}

/// Largest genus over all reachable towers. With `hit_budget` set the
/// value is only a lower bound.
pub fn max_genus_search(p: GameParams, o: SearchOptions) -> Result<SearchReport> {
    let space = enumerate_states(p, o)?;
    Ok(report_from_space(&space, o))
}

pub fn report_from_space(space: &StateSpace, o: SearchOptions) -> SearchReport {
    let best = space
        .states
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.genus.cmp(&b.genus).then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let nk = make_nk_configuration(space.params)
        .ok()
        .map(|q| space.contains(&q));
    SearchReport {
        params: space.params,
        states_visited: space.states.len(),
        max_genus: space.states[best].genus,
        witness: o.track_witness.then(|| space.path_to(best)),
        witness_config: o.track_witness.then(|| space.states[best].config.clone()),
        hit_budget: space.hit_budget,
        dead_ends: space.states.iter().filter(|s| s.legal_moves == 0).count(),
        nk_configuration_visited: nk,
        genus_mismatches: space
            .states
            .iter()
            .filter(|s| s.genus != s.genus_descartes)
            .count(),
    }
}

/// Replays `moves` from the initial tower under `rules`.
pub fn replay(p: GameParams, moves: &[Move], rules: Rules) -> Result<Configuration> {
    let mut c = make_initial(p)?;
    for &m in moves {
        c = apply_move_with(&c, m, rules)?;
    }
    Ok(c)
}

/// Moves that reach Q(n, k) by emptying the bottom levels in order: the
/// blocks Q(n, k) lacks are taken from the lowest level first, leftmost
/// slot first, and each lands in the slot Q(n, k) has filled on the level
/// being built.
pub fn scripted_nk_moves(p: GameParams) -> Result<Vec<Move>> {
    let target = make_nk_configuration(p)?;
    let mut c = make_initial(p)?;
    let mut moves = Vec::new();
    let n = p.n;
    while c != target {
        let s = c.levels_count();
        let top_complete = c.top_is_complete();
        let place_level = if top_complete { s + 1 } else { s };
        let wanted = target
            .level(place_level)
            .ok_or_else(|| JengaError::IllegalMove("target has fewer levels".into()))?;
        let have = if top_complete { Level::EMPTY } else { c.top().unwrap_or_default() };
        let place_slot = wanted
            .slots()
            .find(|&slot| !have.contains(slot))
            .ok_or_else(|| JengaError::IllegalMove("nothing left to place".into()))?;
        let mut chosen = None;
        'search: for level in 1..=s {
            let cur = c.levels()[level - 1];
            let goal = target.level(level).unwrap_or(Level::full(n));
            for slot in cur.slots() {
                if !goal.contains(slot) {
                    chosen = Some(Move {
                        remove_level: level,
                        remove_slot: slot,
                        place_slot,
                    });
                    break 'search;
                }
            }
        }
        let m = chosen.ok_or_else(|| JengaError::IllegalMove("no block to move".into()))?;
        c = apply_move(&c, m)?;
        moves.push(m);
        if moves.len() > n * p.k * 4 {
            return Err(JengaError::IllegalMove("script did not converge".into()));
        }
    }
    Ok(moves)
}
