//! Seeded simulation of many games.
//!
//! Replication `i` under master seed `m` uses game seed `hash(m, i)`, so the
//! result does not depend on how the replications are scheduled.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::engine::{simulate_game, ZombieLaw};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::rng;
use crate::strategies::SurvivorStrategy;

/// Cutoff used when none is given: `4 n diam(G)`, where `n` is the side for
/// grids and tori and the order otherwise.
pub fn default_cutoff(g: &Graph) -> u64 {
    let n = match *g.family() {
        Family::Grid(side) | Family::Torus(side) => side,
        _ => g.order(),
    };
    4 * n as u64 * u64::from(g.diameter().max(1))
}

/// Wilson score interval for `wins` successes in `samples` trials.
pub fn wilson_interval(wins: u64, samples: u64, confidence: f64) -> Result<(f64, f64)> {
    if samples == 0 || wins > samples {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= wins <= samples and samples >= 1, got {wins}/{samples}"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = samples as f64;
    let p = wins as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if wins == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if wins == samples {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Ok((lo, hi))
}

#[derive(Debug, Clone)]
pub struct EstimateOptions {
    pub samples: u64,
    pub cutoff: u64,
    pub seed: u64,
    pub confidence: f64,
    /// Count games that reach the cutoff as captures instead of wins.
    pub censored_as_loss: bool,
    pub law: ZombieLaw,
}

impl EstimateOptions {
    pub fn new(g: &Graph, samples: u64, seed: u64) -> EstimateOptions {
        EstimateOptions {
            samples,
            cutoff: default_cutoff(g),
            seed,
            confidence: 0.99,
            censored_as_loss: false,
            law: ZombieLaw::Geodesic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub k: usize,
    pub strategy: String,
    pub samples: u64,
    pub wins: u64,
    pub captures: u64,
    /// Games that reached the cutoff uncaptured.
    pub censored: u64,
    pub censored_as_win: bool,
    /// Games in which the strategy flagged an uncovered situation.
    pub flagged: u64,
    /// Games forfeited by an illegal strategy move.
    pub forfeited: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub cutoff: u64,
    pub seed: u64,
    /// Wall-clock seconds; excluded from equality-sensitive digests.
    #[serde(skip)]
    pub runtime_secs: f64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    censored: u64,
    flagged: u64,
    forfeited: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            censored: self.censored + o.censored,
            flagged: self.flagged + o.flagged,
            forfeited: self.forfeited + o.forfeited,
        }
    }
}

/// Estimates the survivor's win probability against `k` zombies.
pub fn estimate_sk(
    g: &Graph,
    k: usize,
    strategy: &dyn SurvivorStrategy,
    opts: &EstimateOptions,
) -> Result<EstimateResult> {
    if opts.samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let started = Instant::now();
    let tally = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let game = rng::game_seed(opts.seed, i);
            simulate_game(g, k, strategy, game, opts.cutoff, &opts.law).map(|s| Tally {
                censored: s.outcome.survived() as u64,
                flagged: s.flagged as u64,
                forfeited: s.forfeited as u64,
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;
    let wins = if opts.censored_as_loss {
        0
    } else {
        tally.censored
    };
    let (ci_low, ci_high) = wilson_interval(wins, opts.samples, opts.confidence)?;
    Ok(EstimateResult {
        k,
        strategy: strategy.name().to_string(),
        samples: opts.samples,
        wins,
        captures: opts.samples - wins,
        censored: tally.censored,
        censored_as_win: !opts.censored_as_loss,
        flagged: tally.flagged,
        forfeited: tally.forfeited,
        estimate: wins as f64 / opts.samples as f64,
        ci_low,
        ci_high,
        confidence: opts.confidence,
        cutoff: opts.cutoff,
        seed: opts.seed,
        runtime_secs: started.elapsed().as_secs_f64(),
    })
}

/// Profile of estimates over a range of zombie counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZombieNumberEstimate {
    pub profile: Vec<EstimateResult>,
    /// Smallest `k` whose whole interval lies at or below 1/2.
    pub z_upper: Option<usize>,
    /// Largest `k` whose whole interval lies above 1/2.
    pub above_half: Option<usize>,
    /// Counts whose interval straddles 1/2.
    pub undecided: Vec<usize>,
}

pub fn zombie_number_mc(
    g: &Graph,
    strategy: &dyn SurvivorStrategy,
    ks: RangeInclusive<usize>,
    opts: &EstimateOptions,
) -> Result<ZombieNumberEstimate> {
    let mut profile = Vec::new();
    for k in ks {
        // Each k gets its own stream so profiles over different ranges agree.
        let per_k = EstimateOptions {
            seed: rng::hash_words(&[opts.seed, k as u64]),
            ..opts.clone()
        };
        let mut r = estimate_sk(g, k, strategy, &per_k)?;
        r.seed = opts.seed;
        profile.push(r);
    }
    let z_upper = profile.iter().find(|r| r.ci_high <= 0.5).map(|r| r.k);
    let above_half = profile.iter().rev().find(|r| r.ci_low > 0.5).map(|r| r.k);
    let undecided = profile
        .iter()
        .filter(|r| r.ci_low <= 0.5 && r.ci_high > 0.5)
        .map(|r| r.k)
        .collect();
    Ok(ZombieNumberEstimate {
        profile,
        z_upper,
        above_half,
        undecided,
    })
}

/// `graph_hash,family,n,k,strategy,samples,cutoff,wins,estimate,ci_low,ci_high,seed` rows.
pub fn estimates_csv(g: &Graph, rows: &[EstimateResult]) -> String {
    let mut out = String::from(
        "graph_hash,family,n,k,strategy,samples,cutoff,wins,estimate,ci_low,ci_high,seed\n",
    );
    let hash = g.hash();
    for r in rows {
        out.push_str(&format!(
            "{hash},{},{},{},{},{},{},{},{},{},{},{}\n",
            g.name(),
            g.order(),
            r.k,
            r.strategy,
            r.samples,
            r.cutoff,
            r.wins,
            r.estimate,
            r.ci_low,
            r.ci_high,
            r.seed
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::strategies::GreedyEvade;

    #[test]
    fn wilson_edges() {
        assert_eq!(wilson_interval(0, 100, 0.95).unwrap().0, 0.0);
        assert_eq!(wilson_interval(100, 100, 0.95).unwrap().1, 1.0);
        let (lo, hi) = wilson_interval(50, 100, 0.95).unwrap();
        assert!((0.5 - lo - (hi - 0.5)).abs() < 1e-12);
        assert!((hi - lo - 0.1923).abs() < 1e-4, "{}", hi - lo);
        assert!(wilson_interval(3, 2, 0.95).is_err());
        assert!(wilson_interval(0, 0, 0.95).is_err());
    }

    #[test]
    fn wilson_matches_textbook_value() {
        // 81 of 263 at 95%: (0.2553, 0.3662) to four places.
        let (lo, hi) = wilson_interval(81, 263, 0.95).unwrap();
        assert!(
            (lo - 0.2553).abs() < 1e-4 && (hi - 0.3662).abs() < 1e-4,
            "{lo} {hi}"
        );
    }

    #[test]
    fn triangle_is_always_lost() {
        let g = cycle(3).unwrap();
        let r = estimate_sk(
            &g,
            1,
            &GreedyEvade::default(),
            &EstimateOptions::new(&g, 1000, 7),
        )
        .unwrap();
        assert_eq!(r.wins, 0);
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.wins + r.captures, r.samples);
    }

    #[test]
    fn longer_cutoff_never_raises_wins() {
        let g = cycle(16).unwrap();
        let mut opts = EstimateOptions::new(&g, 400, 3);
        let mut last = u64::MAX;
        for cutoff in [2, 5, 10, 40, 200] {
            opts.cutoff = cutoff;
            let r = estimate_sk(&g, 3, &GreedyEvade::default(), &opts).unwrap();
            assert!(r.wins <= last);
            last = r.wins;
        }
    }

    #[test]
    fn censoring_toggle() {
        let g = cycle(12).unwrap();
        let mut opts = EstimateOptions::new(&g, 200, 1);
        let win = estimate_sk(&g, 1, &GreedyEvade::default(), &opts).unwrap();
        opts.censored_as_loss = true;
        let loss = estimate_sk(&g, 1, &GreedyEvade::default(), &opts).unwrap();
        assert_eq!(win.wins, 200);
        assert_eq!(loss.wins, 0);
        assert_eq!(loss.censored, 200);
    }
}
