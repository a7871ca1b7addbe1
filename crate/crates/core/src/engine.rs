//! Transition semantics of the game.
//!
//! A round is: every zombie steps to a uniformly chosen neighbour that is one
//! hop closer to the survivor; a zombie landing on the survivor eats them;
//! otherwise the survivor moves to a neighbour or passes, and moving onto a
//! zombie is also a capture (folded into the same round).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng;
use crate::strategies::SurvivorStrategy;

/// Neighbours of `z` that are strictly closer to `s`, in ascending order.
/// When `z` is adjacent to `s` this is exactly `[s]`.
pub fn zombie_move_options(g: &Graph, z: Vertex, s: Vertex) -> Result<Vec<Vertex>> {
    if z == s {
        return Err(Error::AlreadyCaptured(z));
    }
    let mut out = Vec::with_capacity(4);
    geodesic_steps(g, z, s, &mut out);
    Ok(out)
}

/// Non-allocating variant of [`zombie_move_options`]; `z != s` is the caller's job.
#[inline]
pub fn geodesic_steps(g: &Graph, z: Vertex, s: Vertex, out: &mut Vec<Vertex>) {
    out.clear();
    let d = g.dist(z, s);
    out.extend(
        g.neighbors(z)
            .iter()
            .copied()
            .filter(|&w| g.dist(w, s) + 1 == d),
    );
}

/// How zombies pick among their options.
#[derive(Debug, Clone, Default)]
pub enum ZombieLaw {
    /// Uniform over geodesic steps.
    #[default]
    Geodesic,
    /// Each zombie follows its own priority script (tori only).
    Scripted(Vec<ZombieScript>),
    /// Uniform over geodesic steps plus standing still. Not the game; kept
    /// so verification can check that it notices a broken engine.
    #[doc(hidden)]
    Lazy,
}

/// Full state at a round boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    /// Sorted zombie positions.
    pub zombies: Vec<Vertex>,
    pub survivor: Vertex,
    pub captured: bool,
    pub round: u64,
}

impl GameState {
    pub fn new(mut zombies: Vec<Vertex>, survivor: Vertex) -> GameState {
        zombies.sort_unstable();
        let captured = zombies.contains(&survivor);
        GameState {
            zombies,
            survivor,
            captured,
            round: 0,
        }
    }
}

/// Source of the zombies' choices for one round.
#[derive(Debug, Clone)]
pub enum ZombieChoices<'a> {
    /// Counter-based draws for `(game_seed, zombie index, round)`.
    Seeded { game_seed: u64 },
    /// Explicit option indices, one per zombie in `state.zombies` order.
    Explicit(&'a [usize]),
}

/// Plays one round with a survivor move fixed in advance.
///
/// `survivor_move` must be the survivor's vertex (pass) or a neighbour.
pub fn step_round(
    g: &Graph,
    state: &GameState,
    survivor_move: Vertex,
    choices: ZombieChoices<'_>,
) -> Result<GameState> {
    if state.captured {
        return Err(Error::AlreadyCaptured(state.survivor));
    }
    let s = state.survivor;
    if survivor_move != s && !g.has_edge(s, survivor_move) {
        return Err(Error::IllegalMove {
            from: s,
            to: survivor_move,
        });
    }
    let round = state.round + 1;
    let mut opts = Vec::new();
    let mut zombies = Vec::with_capacity(state.zombies.len());
    for (i, &z) in state.zombies.iter().enumerate() {
        if z == s {
            return Err(Error::AlreadyCaptured(z));
        }
        geodesic_steps(g, z, s, &mut opts);
        let pick = match &choices {
            ZombieChoices::Seeded { game_seed } => {
                rng::draw(*game_seed, i as u64, round, opts.len())
            }
            ZombieChoices::Explicit(idx) => {
                let c = *idx.get(i).ok_or_else(|| {
                    Error::InvalidParameter(format!("no explicit choice for zombie {i}"))
                })?;
                if c >= opts.len() {
                    return Err(Error::InvalidParameter(format!(
                        "zombie {i} has {} options, choice {c}",
                        opts.len()
                    )));
                }
                c
            }
        };
        zombies.push(opts[pick]);
    }
    zombies.sort_unstable();
    if zombies.contains(&s) {
        return Ok(GameState {
            zombies,
            survivor: s,
            captured: true,
            round,
        });
    }
    let captured = zombies.contains(&survivor_move);
    Ok(GameState {
        zombies,
        survivor: survivor_move,
        captured,
        round,
    })
}

/// The four unit steps of a torus. Rows grow downward, columns to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    U,
    D,
    L,
    R,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::U, Direction::D, Direction::L, Direction::R];

    /// `(row, column)` offset.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Direction::U => (-1, 0),
            Direction::D => (1, 0),
            Direction::L => (0, -1),
            Direction::R => (0, 1),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::U => Direction::D,
            Direction::D => Direction::U,
            Direction::L => Direction::R,
            Direction::R => Direction::L,
        }
    }

    /// Quarter turn clockwise on screen (right becomes down).
    pub fn clockwise(self) -> Direction {
        match self {
            Direction::R => Direction::D,
            Direction::D => Direction::L,
            Direction::L => Direction::U,
            Direction::U => Direction::R,
        }
    }

    pub fn counter_clockwise(self) -> Direction {
        self.clockwise().opposite()
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction::U | Direction::D)
    }

    /// Applies the step to vertex `v` of `torus(n)`.
    pub fn step(self, v: Vertex, n: usize) -> Vertex {
        let (r, c) = (v / n, v % n);
        let (dr, dc) = self.delta();
        let r = (r as i64 + dr).rem_euclid(n as i64) as usize;
        let c = (c as i64 + dc).rem_euclid(n as i64) as usize;
        r * n + c
    }

    /// Direction of the unit step `from -> to` on `torus(n)`, if any.
    pub fn between(from: Vertex, to: Vertex, n: usize) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.step(from, n) == to)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Direction::U => 'U',
            Direction::D => 'D',
            Direction::L => 'L',
            Direction::R => 'R',
        };
        write!(f, "{c}")
    }
}

/// Every ordering of the four directions, in lexicographic order of
/// `(U, D, L, R)` positions.
pub fn all_priorities() -> Vec<[Direction; 4]> {
    let mut out = Vec::with_capacity(24);
    let d = Direction::ALL;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for e in 0..4 {
                    let idx = [a, b, c, e];
                    let mut seen = [false; 4];
                    if idx.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                        out.push([d[a], d[b], d[c], d[e]]);
                    }
                }
            }
        }
    }
    out
}

/// A pre-drawn zombie strategy on a torus: a start vertex and one direction
/// priority per round (index 0 is round 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZombieScript {
    pub v0: Vertex,
    pub sigma: Vec<[Direction; 4]>,
}

impl ZombieScript {
    pub fn new(v0: Vertex, sigma: Vec<[Direction; 4]>) -> Result<ZombieScript> {
        for (t, p) in sigma.iter().enumerate() {
            let mut seen = [false; 4];
            for d in p {
                seen[*d as usize] = true;
            }
            if !seen.iter().all(|&x| x) {
                return Err(Error::InvalidParameter(format!(
                    "priority at round {} is not a permutation",
                    t + 1
                )));
            }
        }
        Ok(ZombieScript { v0, sigma })
    }

    /// Uniformly random script of `len` rounds.
    pub fn random(v0: Vertex, len: usize, seed: u64) -> ZombieScript {
        let perms = all_priorities();
        let sigma = (0..len as u64)
            .map(|t| perms[rng::draw(seed, 0, t, perms.len())])
            .collect();
        ZombieScript { v0, sigma }
    }

    /// Priority used in round `t` (1-based). Rounds past the script reuse it
    /// cyclically.
    pub fn priority(&self, t: u64) -> [Direction; 4] {
        let len = self.sigma.len() as u64;
        self.sigma[((t.max(1) - 1) % len) as usize]
    }
}

/// The move of a scripted zombie at `z` chasing `s` in round `t`: the first
/// direction in `sigma_t` whose step strictly decreases the toroidal distance.
pub fn scripted_zombie_step(
    g: &Graph,
    script: &ZombieScript,
    t: u64,
    z: Vertex,
    s: Vertex,
) -> Result<Vertex> {
    let n = g
        .torus_side()
        .ok_or_else(|| Error::Unsupported("scripted zombies need a torus".into()))?;
    if z == s {
        return Err(Error::AlreadyCaptured(z));
    }
    Ok(scripted_step_unchecked(g, n, script.priority(t), z, s))
}

#[inline]
fn scripted_step_unchecked(
    g: &Graph,
    n: usize,
    prio: [Direction; 4],
    z: Vertex,
    s: Vertex,
) -> Vertex {
    let d = g.dist(z, s);
    prio.into_iter()
        .map(|dir| dir.step(z, n))
        .find(|&w| g.dist(w, s) < d)
        .expect("some direction always decreases the distance")
}

/// How a game ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Captured { round: u64 },
    SurvivedToCutoff { cutoff: u64 },
}

impl Outcome {
    pub fn survived(&self) -> bool {
        matches!(self, Outcome::SurvivedToCutoff { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// Zombie positions after their step, sorted.
    pub zombies: Vec<Vertex>,
    /// Survivor position after their move (unchanged when eaten first).
    pub survivor: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub initial: GameState,
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
    pub strategy: String,
    pub seed: u64,
    pub cutoff: u64,
    /// Situations the strategy flagged (fallbacks, uncovered cases).
    pub flags: Vec<String>,
    /// Set when the strategy produced an illegal move; the game is then
    /// forfeited as a capture.
    pub error: Option<String>,
}

/// Summary of a game without its per-round record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSummary {
    pub outcome: Outcome,
    pub flagged: bool,
    pub forfeited: bool,
}

/// Placement of `k` zombies for the game with `game_seed`.
pub fn initial_placement(n: usize, k: usize, game_seed: u64) -> Vec<Vertex> {
    (0..k as u64)
        .map(|i| rng::draw(game_seed, i, rng::PLACEMENT_ROUND, n))
        .collect()
}

/// Runs one game and records every round.
pub fn play_game(
    g: &Graph,
    k: usize,
    strategy: &dyn SurvivorStrategy,
    seed: u64,
    cutoff: u64,
) -> Result<Transcript> {
    play_game_with(g, k, strategy, seed, cutoff, &ZombieLaw::Geodesic)
}

/// [`play_game`] with an explicit zombie law. Scripted laws take the zombie
/// count and starts from the scripts.
pub fn play_game_with(
    g: &Graph,
    k: usize,
    strategy: &dyn SurvivorStrategy,
    seed: u64,
    cutoff: u64,
    law: &ZombieLaw,
) -> Result<Transcript> {
    let mut rounds = Vec::new();
    let run = run(g, k, strategy, seed, cutoff, law, Some(&mut rounds))?;
    Ok(Transcript {
        initial: run.initial,
        rounds,
        outcome: run.outcome,
        strategy: strategy.name().to_string(),
        seed,
        cutoff,
        flags: run.flags,
        error: run.error,
    })
}

/// Runs one game keeping only the outcome.
pub fn simulate_game(
    g: &Graph,
    k: usize,
    strategy: &dyn SurvivorStrategy,
    seed: u64,
    cutoff: u64,
    law: &ZombieLaw,
) -> Result<GameSummary> {
    let run = run(g, k, strategy, seed, cutoff, law, None)?;
    Ok(GameSummary {
        outcome: run.outcome,
        flagged: !run.flags.is_empty(),
        forfeited: run.error.is_some(),
    })
}

struct Run {
    initial: GameState,
    outcome: Outcome,
    flags: Vec<String>,
    error: Option<String>,
}

fn run(
    g: &Graph,
    k: usize,
    strategy: &dyn SurvivorStrategy,
    seed: u64,
    cutoff: u64,
    law: &ZombieLaw,
    mut record: Option<&mut Vec<RoundRecord>>,
) -> Result<Run> {
    if cutoff == 0 {
        return Err(Error::InvalidParameter("cutoff must be at least 1".into()));
    }
    let torus_n = g.torus_side();
    let mut zombies: Vec<Vertex> = match law {
        ZombieLaw::Scripted(scripts) => {
            if torus_n.is_none() {
                return Err(Error::Unsupported("scripted zombies need a torus".into()));
            }
            if scripts
                .iter()
                .any(|s| s.sigma.is_empty() || s.v0 >= g.order())
            {
                return Err(Error::InvalidParameter("malformed zombie script".into()));
            }
            scripts.iter().map(|s| s.v0).collect()
        }
        _ => {
            if k == 0 {
                return Err(Error::InvalidParameter("need at least one zombie".into()));
            }
            initial_placement(g.order(), k, seed)
        }
    };
    let mut sorted = zombies.clone();
    sorted.sort_unstable();

    let mut play = strategy.begin(g);
    let mut s = play.start(&sorted);
    let mut flags = Vec::new();
    let mut error = None;
    if s >= g.order() {
        error = Some(format!("start vertex {s} out of range"));
        s = 0;
    }
    let initial = GameState::new(sorted.clone(), s);
    if initial.captured || error.is_some() {
        flags.extend(play.take_flags());
        return Ok(Run {
            initial,
            outcome: Outcome::Captured { round: 0 },
            flags,
            error,
        });
    }

    let mut opts = Vec::with_capacity(8);
    for t in 1..=cutoff {
        for (i, z) in zombies.iter_mut().enumerate() {
            *z = match law {
                ZombieLaw::Geodesic => {
                    geodesic_steps(g, *z, s, &mut opts);
                    opts[rng::draw(seed, i as u64, t, opts.len())]
                }
                ZombieLaw::Lazy => {
                    geodesic_steps(g, *z, s, &mut opts);
                    opts.push(*z);
                    opts[rng::draw(seed, i as u64, t, opts.len())]
                }
                ZombieLaw::Scripted(scripts) => {
                    scripted_step_unchecked(g, torus_n.unwrap(), scripts[i].priority(t), *z, s)
                }
            };
        }
        sorted.clear();
        sorted.extend_from_slice(&zombies);
        sorted.sort_unstable();
        if sorted.binary_search(&s).is_ok() {
            if let Some(r) = record.as_deref_mut() {
                r.push(RoundRecord {
                    zombies: sorted.clone(),
                    survivor: s,
                });
            }
            flags.extend(play.take_flags());
            return Ok(Run {
                initial,
                outcome: Outcome::Captured { round: t },
                flags,
                error,
            });
        }
        let m = play.next_move(t, &sorted, s);
        flags.extend(play.take_flags());
        let legal = m < g.order() && (m == s || g.has_edge(s, m));
        if !legal {
            error = Some(format!("round {t}: illegal move {s} -> {m}"));
        }
        let next = if legal { m } else { s };
        if let Some(r) = record.as_deref_mut() {
            r.push(RoundRecord {
                zombies: sorted.clone(),
                survivor: next,
            });
        }
        if !legal || sorted.binary_search(&next).is_ok() {
            return Ok(Run {
                initial,
                outcome: Outcome::Captured { round: t },
                flags,
                error,
            });
        }
        s = next;
    }
    Ok(Run {
        initial,
        outcome: Outcome::SurvivedToCutoff { cutoff },
        flags,
        error,
    })
}
