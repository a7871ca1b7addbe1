use crate::graph::{is_projective_point, Graph, Vertex};

use super::{max_min_distance_start, min_zombie_distance};
use super::{SurvivorPlay, SurvivorStrategy};

/// Escape strategy for projective incidence graphs.
///
/// Starts on a point lying on no zombie-occupied line, preferring the one
/// with the fewest zombies two steps away (every zombie-occupied point is
/// two steps from every other point). If no such point exists a line is
/// tried the same way. Every round the survivor moves to a neighbour that
/// is not blocked, a neighbour being blocked when a zombie sits on it or
/// next to it.
#[derive(Debug, Clone, Copy, Default)]
pub struct IncidenceEscape;

impl SurvivorStrategy for IncidenceEscape {
    fn name(&self) -> &str {
        "incidence"
    }

    fn begin<'a>(&'a self, g: &'a Graph) -> Box<dyn SurvivorPlay + 'a> {
        Box::new(IncidencePlay {
            g,
            flags: Vec::new(),
        })
    }
}

struct IncidencePlay<'a> {
    g: &'a Graph,
    flags: Vec<String>,
}

/// Whether a zombie occupies `u` or one of its neighbours.
pub(crate) fn blocked(g: &Graph, zombies: &[Vertex], u: Vertex) -> bool {
    zombies.iter().any(|&z| g.dist(z, u) <= 1)
}

impl SurvivorPlay for IncidencePlay<'_> {
    fn start(&mut self, zombies: &[Vertex]) -> Vertex {
        let g = self.g;
        let near = |v: Vertex| zombies.iter().filter(|&&z| g.dist(z, v) == 2).count();
        for points in [true, false] {
            let best = (0..g.order())
                .filter(|&v| is_projective_point(g, v) == points)
                .filter(|&v| min_zombie_distance(g, v, zombies) >= 2)
                .min_by_key(|&v| (near(v), v));
            if let Some(v) = best {
                return v;
            }
        }
        self.flags
            .push("incidence: every vertex is next to a zombie".into());
        max_min_distance_start(g, zombies)
    }

    fn next_move(&mut self, round: u64, zombies: &[Vertex], survivor: Vertex) -> Vertex {
        let g = self.g;
        let by_distance = |u: &Vertex| (min_zombie_distance(g, *u, zombies), std::cmp::Reverse(*u));
        let free = g
            .neighbors(survivor)
            .iter()
            .copied()
            .filter(|&u| !blocked(g, zombies, u))
            .max_by_key(by_distance);
        match free {
            Some(u) => u,
            None => {
                self.flags.push(format!(
                    "incidence: all neighbours blocked at round {round}"
                ));
                g.neighbors(survivor)
                    .iter()
                    .copied()
                    .max_by_key(by_distance)
                    .unwrap_or(survivor)
            }
        }
    }

    fn take_flags(&mut self) -> Vec<String> {
        std::mem::take(&mut self.flags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::projective_incidence;

    #[test]
    fn starts_off_the_zombie_line() {
        let g = projective_incidence(2).unwrap();
        let line = 7;
        let s = IncidenceEscape.begin(&g).start(&[line]);
        assert!(is_projective_point(&g, s));
        assert!(!g.has_edge(s, line));
    }

    #[test]
    fn forced_move_when_every_neighbour_is_guarded() {
        let g = projective_incidence(2).unwrap();
        let s = 0;
        // For each line through the point, a zombie on another point of it.
        let mut zs: Vec<Vertex> = g
            .neighbors(s)
            .iter()
            .map(|&l| *g.neighbors(l).iter().find(|&&p| p != s).unwrap())
            .collect();
        zs.sort_unstable();
        let mut play = IncidenceEscape.begin(&g);
        let m = play.next_move(1, &zs, s);
        assert!(g.has_edge(s, m));
        assert_eq!(play.take_flags().len(), 1);
    }

    #[test]
    fn moves_to_an_unblocked_neighbour() {
        let g = projective_incidence(3).unwrap();
        let s = 0;
        let l = g.neighbors(s)[0];
        let z = *g.neighbors(l).iter().find(|&&p| p != s).unwrap();
        let mut play = IncidenceEscape.begin(&g);
        let m = play.next_move(1, &[z], s);
        assert_ne!(m, l);
        assert!(!blocked(&g, &[z], m));
        assert!(play.take_flags().is_empty());
    }
}
