use crate::graph::{Graph, Vertex};

use super::{max_min_distance_move, max_min_distance_start, min_zombie_distance};
use super::{SurvivorPlay, SurvivorStrategy};

/// Coordinate-escape strategy for hypercubes.
///
/// Starts at distance at least 2 from every zombie, on the parity class
/// holding more zombies when there is a choice (so the larger group is the
/// one that can only ever come adjacent, never sit two steps away).
/// Stays while no zombie is adjacent; otherwise flips the smallest-index
/// coordinate not forbidden by a zombie at distance 1 (one coordinate each)
/// or 2 (two coordinates each). Coordinate 1 is the most significant bit.
#[derive(Debug, Clone, Copy, Default)]
pub struct HypercubeParity;

impl SurvivorStrategy for HypercubeParity {
    fn name(&self) -> &str {
        "parity"
    }

    fn begin<'a>(&'a self, g: &'a Graph) -> Box<dyn SurvivorPlay + 'a> {
        Box::new(ParityPlay {
            g,
            dim: g.hypercube_dim().unwrap_or(0),
            flags: Vec::new(),
        })
    }
}

struct ParityPlay<'a> {
    g: &'a Graph,
    dim: usize,
    flags: Vec<String>,
}

/// The single coordinate flip that escapes every zombie, if any.
pub(crate) fn free_coordinate(dim: usize, zombies: &[Vertex], survivor: Vertex) -> Option<usize> {
    let mut forbidden = 0usize;
    for &z in zombies {
        let diff = z ^ survivor;
        if diff.count_ones() <= 2 {
            forbidden |= diff;
        }
    }
    // Coordinate i (1-based) is bit dim - i.
    (1..=dim).find(|&i| forbidden & (1 << (dim - i)) == 0)
}

impl SurvivorPlay for ParityPlay<'_> {
    fn start(&mut self, zombies: &[Vertex]) -> Vertex {
        let g = self.g;
        let even = zombies.iter().filter(|&&z| z.count_ones() % 2 == 0).count();
        let odd = zombies.len() - even;
        let preferred = match even.cmp(&odd) {
            std::cmp::Ordering::Greater => Some(0),
            std::cmp::Ordering::Less => Some(1),
            std::cmp::Ordering::Equal => None,
        };
        let safe = |v: &Vertex| min_zombie_distance(g, *v, zombies) >= 2;
        let pick = preferred
            .and_then(|p| (0..g.order()).find(|v| v.count_ones() % 2 == p && safe(v)))
            .or_else(|| (0..g.order()).find(safe));
        match pick {
            Some(v) => v,
            None => {
                self.flags.push("parity: no start at distance >= 2".into());
                max_min_distance_start(g, zombies)
            }
        }
    }

    fn next_move(&mut self, round: u64, zombies: &[Vertex], survivor: Vertex) -> Vertex {
        if zombies.iter().all(|&z| (z ^ survivor).count_ones() > 1) {
            return survivor;
        }
        match free_coordinate(self.dim, zombies, survivor) {
            Some(i) => survivor ^ (1 << (self.dim - i)),
            None => {
                self.flags
                    .push(format!("parity: no free coordinate at round {round}"));
                max_min_distance_move(self.g, zombies, survivor)
            }
        }
    }

    fn take_flags(&mut self) -> Vec<String> {
        std::mem::take(&mut self.flags)
    }
}
