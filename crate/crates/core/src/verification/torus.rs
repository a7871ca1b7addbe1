//! Seeded luring trials on a torus with scripted zombies.

use serde::Serialize;

use crate::engine::{play_game_with, scripted_zombie_step, Transcript, ZombieLaw, ZombieScript};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;
use crate::strategies::{check_regular, check_stable_with, TorusBoxed};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Rejection {
    /// A drawn script is not regular.
    Irregular,
    /// Two zombies entered `B` closer together than the required gap.
    Crowded,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusTrial {
    pub seed: u64,
    pub rejected: Option<Rejection>,
    /// Round each zombie first stood inside `B`, by script.
    pub arrivals: Vec<Option<u64>>,
    pub survived: bool,
    pub stable: bool,
    /// Survivor-to-zombie distances after the last round, by script.
    pub final_distances: Vec<u32>,
    /// Whether every zombie, once within distance 3, kept its distance.
    pub lock_held: bool,
    pub flags: Vec<String>,
    pub transcript: Transcript,
}

impl TorusTrial {
    pub fn success(&self) -> bool {
        self.survived
            && self.stable
            && self.lock_held
            && self.final_distances.iter().all(|d| (2..=3).contains(d))
    }
}

/// Draws `k` regular-looking scripts starting outside `B`, plays `4n`
/// rounds of the luring strategy against them and checks the outcome.
///
/// A trial is rejected when a script fails the regularity check or two
/// known arrival rounds are fewer than `min_gap` apart. Arrivals that never
/// happen (the survivor was caught first) do not reject, so failures are
/// never filtered out by the conditioning.
pub fn torus_trial(
    g: &Graph,
    strat: &TorusBoxed,
    k: usize,
    seed: u64,
    min_gap: u64,
) -> Result<TorusTrial> {
    let n = g
        .torus_side()
        .ok_or_else(|| Error::Unsupported("torus trials need a torus".into()))?;
    let p = strat.params();
    let bx = strat.boxes();
    let horizon = 4 * n as u64;

    let mut scripts = Vec::with_capacity(k);
    for i in 0..k as u64 {
        let mut j = 0;
        let v0 = loop {
            let v = rng::hash_words(&[seed, i, j]) as usize % (n * n);
            if !bx.in_b(v) {
                break v;
            }
            j += 1;
        };
        scripts.push(ZombieScript::random(
            v0,
            horizon as usize,
            rng::hash_words(&[seed, i, u64::MAX]),
        ));
    }
    let regular = scripts.iter().all(|s| check_regular(s, n, horizon));

    let t = play_game_with(
        g,
        k,
        strat,
        seed,
        horizon,
        &ZombieLaw::Scripted(scripts.clone()),
    )?;
    let mut traj = vec![t.initial.survivor];
    traj.extend(t.rounds.iter().map(|r| r.survivor));
    let survived = t.outcome.survived();

    // Replay each zombie against the recorded survivor path.
    let mut arrivals = vec![None; k];
    let mut final_distances = vec![0; k];
    let mut lock_held = true;
    for (i, s) in scripts.iter().enumerate() {
        let mut z = s.v0;
        let mut locked: Option<u32> = None;
        for (r, w) in traj.windows(2).enumerate() {
            let round = r as u64 + 1;
            if z == w[0] {
                break;
            }
            z = scripted_zombie_step(g, s, round, z, w[0])?;
            if arrivals[i].is_none() && bx.in_b(z) {
                arrivals[i] = Some(round);
            }
            if z == w[0] {
                break;
            }
            let d = g.dist(z, w[1]);
            match locked {
                Some(l) if l != d => lock_held = false,
                None if d <= 3 => locked = Some(d),
                _ => {}
            }
        }
        final_distances[i] = g.dist(z, *traj.last().unwrap());
    }

    let mut known: Vec<u64> = arrivals.iter().flatten().copied().collect();
    known.sort_unstable();
    let crowded = known.windows(2).any(|w| w[1] - w[0] < min_gap);
    let rejected = if !regular {
        Some(Rejection::Irregular)
    } else if crowded {
        Some(Rejection::Crowded)
    } else {
        None
    };

    Ok(TorusTrial {
        seed,
        rejected,
        arrivals,
        survived,
        stable: check_stable_with(&traj, n, p.spacing),
        final_distances,
        lock_held,
        flags: t.flags.clone(),
        transcript: t,
    })
}

/// Share of uniformly random scripts on `torus(n)` that are regular over
/// `4n` rounds.
pub fn regular_share(n: usize, samples: u64, seed: u64) -> f64 {
    let horizon = 4 * n as u64;
    let ok = (0..samples)
        .filter(|&i| {
            let s = ZombieScript::random(0, horizon as usize, rng::game_seed(seed, i));
            check_regular(&s, n, horizon)
        })
        .count();
    ok as f64 / samples as f64
}
