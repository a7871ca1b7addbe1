use crate::engine::geodesic_steps;
use crate::graph::{Graph, Vertex};
use crate::rng;

use super::{max_min_distance_move, min_zombie_distance, SurvivorPlay, SurvivorStrategy};

/// Keeps the nearest zombie as far away as possible.
///
/// Moves maximize the minimum zombie distance over the closed neighbourhood
/// (smallest id on ties, so a survivor with only worse options stays put).
///
/// The start is not the plain farthest vertex: on a cycle that vertex sits
/// opposite the horde, where zombies split and close in from both sides.
/// Instead every candidate start is scored by a few short seeded rollouts of
/// the same move rule; ties prefer starts where fewer zombies have a choice
/// of first step, then the larger minimum distance, then the smaller id.
#[derive(Debug, Clone)]
pub struct GreedyEvade {
    /// Rollouts per candidate start; 0 falls back to the farthest vertex.
    pub rollouts: u32,
    /// Candidate starts examined, nearest-last.
    pub max_candidates: usize,
}

impl Default for GreedyEvade {
    fn default() -> Self {
        GreedyEvade {
            rollouts: 6,
            max_candidates: 64,
        }
    }
}

impl SurvivorStrategy for GreedyEvade {
    fn name(&self) -> &str {
        "greedy"
    }

    fn begin<'a>(&'a self, g: &'a Graph) -> Box<dyn SurvivorPlay + 'a> {
        Box::new(GreedyPlay { cfg: self, g })
    }
}

struct GreedyPlay<'a> {
    cfg: &'a GreedyEvade,
    g: &'a Graph,
}

impl SurvivorPlay for GreedyPlay<'_> {
    fn start(&mut self, zombies: &[Vertex]) -> Vertex {
        let g = self.g;
        let mut cands: Vec<(u32, Vertex)> = (0..g.order())
            .map(|v| (min_zombie_distance(g, v, zombies), v))
            .filter(|&(d, _)| d > 0)
            .collect();
        if cands.is_empty() {
            return 0;
        }
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        cands.truncate(self.cfg.max_candidates.max(1));
        if self.cfg.rollouts == 0 {
            return cands[0].1;
        }

        let horizon = 2 * u64::from(g.diameter()) + 8;
        let key = rng::hash_words(&zombies.iter().map(|&z| z as u64).collect::<Vec<_>>());
        let mut opts = Vec::with_capacity(8);
        let mut best = None;
        for &(d, v) in &cands {
            let score: u64 = (0..self.cfg.rollouts)
                .map(|r| {
                    rollout(
                        g,
                        zombies,
                        v,
                        horizon,
                        rng::hash_words(&[key, v as u64, r as u64]),
                    )
                })
                .sum();
            let ambiguous = zombies
                .iter()
                .filter(|&&z| {
                    geodesic_steps(g, z, v, &mut opts);
                    opts.len() > 1
                })
                .count();
            let rank = (score, std::cmp::Reverse(ambiguous), d, std::cmp::Reverse(v));
            if best.as_ref().is_none_or(|(b, _)| rank > *b) {
                best = Some((rank, v));
            }
        }
        best.map(|(_, v)| v).unwrap_or(cands[0].1)
    }

    fn next_move(&mut self, _round: u64, zombies: &[Vertex], survivor: Vertex) -> Vertex {
        max_min_distance_move(self.g, zombies, survivor)
    }
}

/// Rounds survived, up to `horizon`, by the greedy move rule from `start`.
fn rollout(g: &Graph, zombies: &[Vertex], start: Vertex, horizon: u64, seed: u64) -> u64 {
    let mut zs = zombies.to_vec();
    let mut s = start;
    let mut opts = Vec::with_capacity(8);
    for t in 1..=horizon {
        for (i, z) in zs.iter_mut().enumerate() {
            geodesic_steps(g, *z, s, &mut opts);
            *z = opts[rng::draw(seed, i as u64, t, opts.len())];
        }
        if zs.contains(&s) {
            return t - 1;
        }
        s = max_min_distance_move(g, &zs, s);
        if zs.contains(&s) {
            return t - 1;
        }
    }
    horizon
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn farthest_start_without_rollouts() {
        let g = cycle(6).unwrap();
        let plain = GreedyEvade {
            rollouts: 0,
            ..GreedyEvade::default()
        };
        assert_eq!(plain.begin(&g).start(&[0]), 3);
    }

    #[test]
    fn stays_when_every_neighbour_is_worse() {
        let g = cycle(10).unwrap();
        let strat = GreedyEvade::default();
        let mut play = strat.begin(&g);
        // Zombies at 3 and 7 around a survivor at 5: both neighbours are closer.
        assert_eq!(play.next_move(1, &[3, 7], 5), 5);
    }

    #[test]
    fn runs_away_along_a_cycle() {
        let g = cycle(10).unwrap();
        let strat = GreedyEvade::default();
        let mut play = strat.begin(&g);
        assert_eq!(play.next_move(1, &[4], 5), 6);
    }

    #[test]
    fn avoids_the_antipode_of_a_stack() {
        // Two zombies on one vertex of C20: the opposite vertex lets them split.
        let g = cycle(20).unwrap();
        let s = GreedyEvade::default().begin(&g).start(&[0, 0]);
        assert_ne!(s, 10);
        assert_ne!(s, 0);
    }
}
