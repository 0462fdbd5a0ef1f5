//! Closed-form vertex counts and genus of the maximal configuration.

use serde::Serialize;

use super::census::FloorCounts;
use crate::config::{make_nk_configuration, solve_nk_decomposition, GameParams};
use crate::deform::move_within_level;
use crate::error::{JengaError, Result};
use crate::topology::solid_genus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub type_i: usize,
    pub type_ii: usize,
    pub type_iii: usize,
}

/// Vertex counts of Q(n, k) with the topmost level excluded.
///
/// For even `n` the published Type II count `8(n-2)(4k-7)` is reported as
/// `printed`, next to `candidate = 2(n-2)(4k-7)`, which is the value that
/// agrees with the genus formula. Odd `n` has no candidate and carries the
/// per-floor table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormCounts {
    pub printed: Counts,
    pub candidate: Option<Counts>,
    pub per_floor: Option<Vec<FloorCounts>>,
}

pub fn closed_form_counts(p: GameParams) -> Result<ClosedFormCounts> {
    let p = GameParams::new(p.n, p.k)?;
    if p.k < 3 {
        return Err(JengaError::ClosedFormNotApplicable(format!("k = {} < 3", p.k)));
    }
    let (n, k) = (p.n, p.k);
    if p.is_odd() {
        let d = solve_nk_decomposition(p)?;
        let (x, l) = (d.x, d.l);
        if l < 2 {
            return Err(JengaError::ClosedFormNotApplicable(format!(
                "({n}, {k}) has l = 1; the odd-case counts need l >= 2"
            )));
        }
        let printed = Counts {
            type_i: 4 + 4 * l,
            type_ii: 4 * (x - 3) * (n - 1) + 4 * (l - 1),
            type_iii: (x - 4) * (n - 1) * (n - 1) + 2 * (l - 1) * (n - 1),
        };
        let per_floor = (0..x)
            .map(|i| {
                let type_ii = if i == 0 || i == x - 1 {
                    0
                } else if i == 1 {
                    2 * (n - 1) + 4 * (l - 1)
                } else if i == x - 2 {
                    2 * (n - 1)
                } else {
                    4 * (n - 1)
                };
                let type_iii = if i == 0 || i == x - 1 || i == x - 2 {
                    0
                } else if i == 1 {
                    2 * (l - 1) * (n - 1)
                } else {
                    (n - 1) * (n - 1)
                };
                FloorCounts {
                    floor: i,
                    type_ii,
                    type_iii,
                }
            })
            .collect();
        Ok(ClosedFormCounts {
            printed,
            candidate: None,
            per_floor: Some(per_floor),
        })
    } else {
        let type_i = 4 + 2 * n;
        let type_iii = 2 * (n - 2) * (n - 2) * (k - 2);
        Ok(ClosedFormCounts {
            printed: Counts {
                type_i,
                type_ii: 8 * (n - 2) * (4 * k - 7),
                type_iii,
            },
            candidate: Some(Counts {
                type_i,
                type_ii: 2 * (n - 2) * (4 * k - 7),
                type_iii,
            }),
            per_floor: None,
        })
    }
}

/// g(n, k): `n(n-2)(k-2)/2` for even `n`, `n(n-1)(k-2)/2` for odd `n`.
pub fn closed_form_genus(p: GameParams) -> Result<i64> {
    let p = GameParams::new(p.n, p.k)?;
    let (n, k) = (p.n as i64, p.k as i64);
    let product = if p.is_odd() {
        n * (n - 1) * (k - 2)
    } else {
        n * (n - 2) * (k - 2)
    };
    Ok(product / 2)
}

/// Genus of the odd configuration in terms of its level count `x` and
/// bottom block count `l`: `((n^2 - 1)(x - 4) + 2 l (n - 1)) / 4`.
/// Returns `None` when the value is not an integer.
pub fn odd_genus_from_decomposition(n: usize, x: usize, l: usize) -> Option<i64> {
    let (n, x, l) = (n as i64, x as i64, l as i64);
    let num = (n * n - 1) * (x - 4) + 2 * l * (n - 1);
    (num % 4 == 0).then_some(num / 4)
}

/// Result of checking the `l = 1` case by sliding the single bottom block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovingTrick {
    pub params: GameParams,
    pub x: usize,
    /// Genus of Q(n, k) with its one bottom block in the middle slot.
    pub middle_genus: i64,
    /// Genus after sliding that block to the right-most slot.
    pub moved_genus: i64,
    /// Level-count formula at `l = 1` with `x` levels.
    pub formula_l1: Option<i64>,
    /// Level-count formula at `l = (n+1)/2 + 1` with `x - 1` levels.
    pub formula_shifted: Option<i64>,
}

impl MovingTrick {
    pub fn holds(&self) -> bool {
        self.middle_genus == self.moved_genus
            && self.formula_l1 == Some(self.middle_genus)
            && self.formula_shifted == Some(self.middle_genus)
    }
}

/// Checks the `l = 1` case: moving the bottom block within the first level
/// keeps the genus, and that genus equals the level-count formula both at
/// `(x, 1)` and at `(x - 1, (n+1)/2 + 1)`.
pub fn moving_trick_check(p: GameParams) -> Result<MovingTrick> {
    let d = solve_nk_decomposition(p)?;
    if d.l != 1 {
        return Err(JengaError::ClosedFormNotApplicable(format!(
            "({}, {}) has l = {}, the moving trick needs l = 1",
            p.n, p.k, d.l
        )));
    }
    let q = make_nk_configuration(p)?;
    let middle_genus = solid_genus(&q)?;

    let middle = p.n.div_ceil(2);
    let moved = move_within_level(&q, 1, middle, p.n)?;
    let moved_genus = solid_genus(&moved)?;

    Ok(MovingTrick {
        params: p,
        x: d.x,
        middle_genus,
        moved_genus,
        formula_l1: odd_genus_from_decomposition(p.n, d.x, 1),
        formula_shifted: odd_genus_from_decomposition(p.n, d.x - 1, p.n.div_ceil(2) + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, k: usize) -> GameParams {
        GameParams { n, k }
    }

    #[test]
    fn counts_examples() {
        let c = closed_form_counts(p(5, 3)).unwrap();
        assert_eq!(
            c.printed,
            Counts {
                type_i: 12,
                type_ii: 36,
                type_iii: 24
            }
        );
        let c = closed_form_counts(p(6, 3)).unwrap();
        assert_eq!((c.printed.type_i, c.printed.type_ii, c.printed.type_iii), (16, 160, 32));
        let cand = c.candidate.unwrap();
        assert_eq!((cand.type_i, cand.type_ii, cand.type_iii), (16, 40, 32));
        assert!(matches!(
            closed_form_counts(p(3, 3)),
            Err(JengaError::ClosedFormNotApplicable(_))
        ));
    }

    #[test]
    fn odd_floor_rows_sum_to_totals() {
        for n in (3..=9).step_by(2) {
            for k in 3..=8 {
                let Ok(c) = closed_form_counts(p(n, k)) else { continue };
                let rows = c.per_floor.unwrap();
                assert_eq!(rows.iter().map(|r| r.type_ii).sum::<usize>(), c.printed.type_ii);
                assert_eq!(rows.iter().map(|r| r.type_iii).sum::<usize>(), c.printed.type_iii);
            }
        }
    }

    #[test]
    fn genus_examples() {
        assert_eq!(closed_form_genus(p(5, 3)).unwrap(), 10);
        assert_eq!(closed_form_genus(p(6, 3)).unwrap(), 12);
        assert_eq!(closed_form_genus(p(5, 5)).unwrap(), 30);
        assert_eq!(closed_form_genus(p(2, 7)).unwrap(), 0);
        for n in 2..=12 {
            assert_eq!(closed_form_genus(p(n, 2)).unwrap(), 0);
        }
    }

    #[test]
    fn decomposition_formula_reduces_to_closed_form() {
        for n in (3..=21).step_by(2) {
            for k in 3..=15 {
                let d = solve_nk_decomposition(p(n, k)).unwrap();
                assert_eq!(
                    odd_genus_from_decomposition(n, d.x, d.l),
                    Some(closed_form_genus(p(n, k)).unwrap()),
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn moving_trick_examples() {
        for (n, k) in [(3, 3), (3, 5), (7, 5)] {
            let t = moving_trick_check(p(n, k)).unwrap();
            assert!(t.holds(), "{t:?}");
            assert_eq!(t.middle_genus, closed_form_genus(p(n, k)).unwrap());
        }
        assert_eq!(moving_trick_check(p(3, 3)).unwrap().middle_genus, 3);
        assert!(moving_trick_check(p(5, 3)).is_err());
    }
}
