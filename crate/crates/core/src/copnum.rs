//! The classical cops-and-robber game.
//!
//! Cops place first, the robber answers, then cops and robber alternate
//! with the cops moving first; either side may pass and the cops win on
//! co-location. Decided by a least-fixed-point attractor computation over
//! `(cop multiset, robber, side to move)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{state_count, MultisetIndex, DEFAULT_STATE_BUDGET};
use crate::graph::{Family, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopGameResult {
    pub k: usize,
    pub cop_win: bool,
    /// A winning cop placement when `cop_win`.
    pub placement: Option<Vec<Vertex>>,
    /// Number of `(multiset, robber)` positions per side.
    pub states: usize,
    /// Attractor sweeps until stable.
    pub sweeps: usize,
}

/// Decides whether `k` cops capture the robber on `g`.
pub fn cops_win(g: &Graph, k: usize) -> Result<CopGameResult> {
    cops_win_with_budget(g, k, DEFAULT_STATE_BUDGET)
}

pub fn cops_win_with_budget(g: &Graph, k: usize, budget: u128) -> Result<CopGameResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("need at least one cop".into()));
    }
    let n = g.order();
    let states = state_count(n, k);
    if states > budget {
        return Err(Error::BudgetExceeded { states, budget });
    }
    let idx = MultisetIndex::new(n, k);
    let sets = idx.all();
    let m = idx.len();

    // Multisets reachable by one cop move (each cop stays or steps).
    let succ: Vec<Vec<u32>> = (0..m)
        .into_par_iter()
        .map(|r| {
            let c = &sets[r * k..(r + 1) * k];
            let opts: Vec<Vec<Vertex>> = c
                .iter()
                .map(|&v| {
                    let mut o = g.neighbors(v).to_vec();
                    o.push(v);
                    o
                })
                .collect();
            let mut out = Vec::new();
            let mut pick = vec![0usize; k];
            let mut t = vec![0; k];
            'outer: loop {
                for i in 0..k {
                    t[i] = opts[i][pick[i]];
                }
                t.sort_unstable();
                out.push(idx.rank(&t) as u32);
                for i in 0..k {
                    pick[i] += 1;
                    if pick[i] < opts[i].len() {
                        continue 'outer;
                    }
                    pick[i] = 0;
                }
                break;
            }
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();

    let occupied = |r: usize, v: Vertex| sets[r * k..(r + 1) * k].contains(&v);
    // cop_turn[r*n + v]: cops to move, cops win. robber_turn likewise.
    let mut cop_turn: Vec<bool> = (0..m * n).map(|s| occupied(s / n, s % n)).collect();
    let mut robber_turn = cop_turn.clone();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let next_robber: Vec<bool> = (0..m * n)
            .into_par_iter()
            .map(|s| {
                let (r, v) = (s / n, s % n);
                robber_turn[s]
                    || (cop_turn[s]
                        && g.neighbors(v)
                            .iter()
                            .all(|&w| occupied(r, w) || cop_turn[r * n + w]))
            })
            .collect();
        let next_cop: Vec<bool> = (0..m * n)
            .into_par_iter()
            .map(|s| {
                let (r, v) = (s / n, s % n);
                cop_turn[s]
                    || succ[r]
                        .iter()
                        .any(|&c| occupied(c as usize, v) || next_robber[c as usize * n + v])
            })
            .collect();
        let changed = next_robber != robber_turn || next_cop != cop_turn;
        robber_turn = next_robber;
        cop_turn = next_cop;
        if !changed {
            break;
        }
    }

    let placement = (0..m).find(|&r| (0..n).all(|v| cop_turn[r * n + v]));
    Ok(CopGameResult {
        k,
        cop_win: placement.is_some(),
        placement: placement.map(|r| sets[r * k..(r + 1) * k].to_vec()),
        states: m * n,
        sweeps,
    })
}

/// Smallest `k <= k_max` for which the cops win.
pub fn cop_number(g: &Graph, k_max: usize) -> Result<usize> {
    for k in 1..=k_max {
        if cops_win(g, k)?.cop_win {
            return Ok(k);
        }
    }
    Err(Error::ThresholdNotReached { k_max })
}

/// Cop numbers known in closed form.
pub fn known_cop_number(family: &Family) -> Option<usize> {
    match *family {
        Family::Cycle(3) => Some(1),
        Family::Cycle(n) if n >= 4 => Some(2),
        Family::Path(_) | Family::RandomTree { .. } => Some(1),
        Family::Hypercube(n) => Some(n / 2 + 1),
        Family::Projective(q) => Some(q as usize + 1),
        Family::Grid(n) if n >= 2 => Some(2),
        Family::Torus(n) if n >= 4 => Some(3),
        Family::LeafyCycle(_) => Some(2),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, grid, hypercube, path, projective_incidence};

    #[test]
    fn trees_are_cop_win() {
        assert!(cops_win(&path(5).unwrap(), 1).unwrap().cop_win);
    }

    #[test]
    fn pentagon_needs_two() {
        let g = cycle(5).unwrap();
        assert!(!cops_win(&g, 1).unwrap().cop_win);
        let two = cops_win(&g, 2).unwrap();
        assert!(two.cop_win);
        assert_eq!(two.placement.as_ref().map(Vec::len), Some(2));
    }

    #[test]
    fn heawood_needs_three() {
        let g = projective_incidence(2).unwrap();
        assert!(!cops_win(&g, 2).unwrap().cop_win);
        assert!(cops_win(&g, 3).unwrap().cop_win);
    }

    #[test]
    fn small_known_values() {
        assert_eq!(cop_number(&hypercube(3).unwrap(), 4).unwrap(), 2);
        assert_eq!(cop_number(&grid(4).unwrap(), 4).unwrap(), 2);
        assert_eq!(cop_number(&cycle(3).unwrap(), 4).unwrap(), 1);
        assert!(cop_number(&cycle(6).unwrap(), 1).is_err());
    }

    #[test]
    fn registry() {
        assert_eq!(known_cop_number(&Family::Hypercube(7)), Some(4));
        assert_eq!(known_cop_number(&Family::Hypercube(4)), Some(3));
        assert_eq!(known_cop_number(&Family::Projective(5)), Some(6));
        assert_eq!(known_cop_number(&Family::Cycle(3)), Some(1));
        assert_eq!(known_cop_number(&Family::Custom("x".into())), None);
    }
}
