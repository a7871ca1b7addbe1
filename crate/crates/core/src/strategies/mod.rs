//! Survivor strategies.
//!
//! A [`SurvivorStrategy`] is immutable and shared across games; each game
//! gets its own [`SurvivorPlay`] carrying whatever per-game state the
//! strategy needs (phase machines, flags).

mod greedy;
mod hypercube;
mod incidence;
mod table;
pub mod torus;

pub use greedy::GreedyEvade;
pub use hypercube::HypercubeParity;
pub use incidence::IncidenceEscape;
pub use table::OptimalTable;
pub use torus::{
    check_regular, check_stable, check_stable_with, turn_spacing, BoxSpec, TorusBoxed, TorusParams,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub trait SurvivorStrategy: Send + Sync {
    fn name(&self) -> &str;

    /// Starts a new game on `g`.
    fn begin<'a>(&'a self, g: &'a Graph) -> Box<dyn SurvivorPlay + 'a>;
}

/// Per-game survivor decisions.
pub trait SurvivorPlay {
    /// Start vertex, chosen after seeing the sorted initial zombie placement.
    fn start(&mut self, zombies: &[Vertex]) -> Vertex;

    /// Move for `round` (1-based), called after the zombies stepped.
    /// `zombies` is sorted; returning `survivor` passes.
    fn next_move(&mut self, round: u64, zombies: &[Vertex], survivor: Vertex) -> Vertex;

    /// Drains the situations flagged since the last call.
    fn take_flags(&mut self) -> Vec<String> {
        Vec::new()
    }
}

/// Distance from `v` to the nearest zombie.
#[inline]
pub(crate) fn min_zombie_distance(g: &Graph, v: Vertex, zombies: &[Vertex]) -> u32 {
    zombies
        .iter()
        .map(|&z| g.dist(v, z))
        .min()
        .unwrap_or(u32::MAX)
}

/// Among `survivor` and its neighbours, the vertex farthest from the nearest
/// zombie; ties go to the smallest id.
pub(crate) fn max_min_distance_move(g: &Graph, zombies: &[Vertex], survivor: Vertex) -> Vertex {
    let mut best = survivor;
    let mut best_d = min_zombie_distance(g, survivor, zombies);
    for &w in g.neighbors(survivor) {
        let d = min_zombie_distance(g, w, zombies);
        if d > best_d || (d == best_d && w < best) {
            best = w;
            best_d = d;
        }
    }
    best
}

/// Vertex maximizing the distance to the nearest zombie, smallest id first.
pub(crate) fn max_min_distance_start(g: &Graph, zombies: &[Vertex]) -> Vertex {
    (0..g.order())
        .max_by_key(|&v| (min_zombie_distance(g, v, zombies), std::cmp::Reverse(v)))
        .unwrap_or(0)
}

/// Strategy names accepted by [`by_name`].
pub const STRATEGY_NAMES: [&str; 4] = ["greedy", "parity", "incidence", "torus-boxed"];

/// Looks up a strategy that needs no precomputation. `optimal-table` is
/// built from a solved value table instead; see [`OptimalTable`].
pub fn by_name(name: &str, g: &Graph) -> Result<Box<dyn SurvivorStrategy>> {
    Ok(match name {
        "greedy" => Box::new(GreedyEvade::default()),
        "parity" => {
            if g.hypercube_dim().is_none() {
                return Err(Error::InvalidParameter("parity needs a hypercube".into()));
            }
            Box::new(HypercubeParity)
        }
        "incidence" => {
            if g.projective_order().is_none() {
                return Err(Error::InvalidParameter(
                    "incidence needs a projective incidence graph".into(),
                ));
            }
            Box::new(IncidenceEscape)
        }
        "torus-boxed" => {
            let n = g
                .torus_side()
                .ok_or_else(|| Error::InvalidParameter("torus-boxed needs a torus".into()))?;
            Box::new(TorusBoxed::new(TorusParams::desk(n))?)
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown strategy '{other}' (expected one of {STRATEGY_NAMES:?} or optimal-table)"
            )))
        }
    })
}

/// Replays a fixed start and move list, then passes forever. Moves are not
/// checked, which makes it handy for exercising the engine's legality rules.
#[derive(Debug, Clone)]
pub struct FixedWalk {
    name: String,
    start: Vertex,
    moves: Vec<Vertex>,
}

impl FixedWalk {
    pub fn new(name: &str, start: Vertex, moves: Vec<Vertex>) -> FixedWalk {
        FixedWalk {
            name: name.to_string(),
            start,
            moves,
        }
    }
}

impl SurvivorStrategy for FixedWalk {
    fn name(&self) -> &str {
        &self.name
    }

    fn begin<'a>(&'a self, _g: &'a Graph) -> Box<dyn SurvivorPlay + 'a> {
        Box::new(FixedWalkPlay { walk: self })
    }
}

struct FixedWalkPlay<'a> {
    walk: &'a FixedWalk,
}

impl SurvivorPlay for FixedWalkPlay<'_> {
    fn start(&mut self, _zombies: &[Vertex]) -> Vertex {
        self.walk.start
    }

    fn next_move(&mut self, round: u64, _zombies: &[Vertex], survivor: Vertex) -> Vertex {
        self.walk
            .moves
            .get(round as usize - 1)
            .copied()
            .unwrap_or(survivor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_game, Outcome};
    use crate::graph::{cycle, generate, Family};

    fn legal_everywhere(strategy: &dyn SurvivorStrategy, g: &Graph, k: usize) {
        for seed in 0..40 {
            let t = play_game(g, k, strategy, seed, 200).unwrap();
            assert!(
                t.error.is_none(),
                "{} on {}: {:?}",
                strategy.name(),
                g.name(),
                t.error
            );
        }
    }

    #[test]
    fn strategies_only_make_legal_moves() {
        for fam in [
            Family::Cycle(12),
            Family::Grid(4),
            Family::LeafyCycle(10),
            Family::Hypercube(4),
            Family::Projective(3),
            Family::RandomTree { n: 15, seed: 4 },
        ] {
            let g = generate(&fam).unwrap();
            for k in 1..=3 {
                legal_everywhere(&GreedyEvade::default(), &g, k);
            }
        }
        let q = generate(&Family::Hypercube(5)).unwrap();
        legal_everywhere(&HypercubeParity, &q, 3);
        let p = generate(&Family::Projective(3)).unwrap();
        legal_everywhere(&IncidenceEscape, &p, 4);
    }

    #[test]
    fn registry_checks_families() {
        let c = cycle(8).unwrap();
        assert!(by_name("greedy", &c).is_ok());
        assert!(by_name("parity", &c).is_err());
        assert!(by_name("incidence", &c).is_err());
        assert!(by_name("torus-boxed", &c).is_err());
        assert!(by_name("nope", &c).is_err());
    }

    #[test]
    fn fixed_walk_replays_then_passes() {
        let c = cycle(30).unwrap();
        let walk = FixedWalk::new("w", 15, vec![16, 17]);
        let t = play_game(&c, 1, &walk, 1, 3).unwrap();
        if t.outcome != (Outcome::Captured { round: 0 }) {
            let path: Vec<_> = t.rounds.iter().map(|r| r.survivor).collect();
            assert_eq!(&path[..2.min(path.len())], &[16, 17][..2.min(path.len())]);
        }
    }
}
