use proptest::prelude::*;

use zombies::analytic::{cycle_sk_combinatorial, to_f64};
use zombies::graph::{cycle, generate};
use zombies::montecarlo::{
    estimate_sk, wilson_interval, zombie_number_mc, EstimateOptions, EstimateResult,
};
use zombies::strategies::GreedyEvade;
use zombies::Family;

/// Serialized result; wall-clock time is not part of it.
fn in_pool(threads: usize, f: impl FnOnce() -> EstimateResult + Send) -> String {
    let r = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f);
    serde_json::to_string(&r).unwrap()
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let g = generate(&Family::LeafyCycle(12)).unwrap();
    let opts = EstimateOptions::new(&g, 5_000, 77);
    let run = || estimate_sk(&g, 2, &GreedyEvade::default(), &opts).unwrap();
    let one = in_pool(1, run);
    for t in [2, 3, 8] {
        assert_eq!(in_pool(t, run), one, "threads={t}");
    }
}

#[test]
fn calibration_misses_stay_rare() {
    // Greedy play is optimal on cycles, so the counting formula is the truth.
    let mut cells = 0;
    let mut misses = 0;
    for n in [9, 12, 15, 20, 25] {
        let g = cycle(n).unwrap();
        for k in 2..=4 {
            let exact = to_f64(&cycle_sk_combinatorial(n, k));
            for seed in 0..4 {
                let mut opts = EstimateOptions::new(&g, 4_000, seed * 100 + n as u64);
                opts.confidence = 0.997;
                let r = estimate_sk(&g, k, &GreedyEvade::default(), &opts).unwrap();
                cells += 1;
                misses += !(r.ci_low <= exact && exact <= r.ci_high) as usize;
            }
        }
    }
    // 0.3% nominal miss rate; allow slack for 60 cells.
    assert!(misses <= 2, "{misses} of {cells} intervals missed");
}

#[test]
fn profile_brackets_the_cycle_threshold() {
    let g = cycle(9).unwrap();
    let est = zombie_number_mc(
        &g,
        &GreedyEvade::default(),
        2..=4,
        &EstimateOptions::new(&g, 20_000, 3),
    )
    .unwrap();
    assert_eq!(est.z_upper, Some(3));
    assert_eq!(est.above_half, Some(2));
    assert!(est.undecided.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn longer_cutoffs_never_add_wins(n in 6usize..14, k in 1usize..4, seed in any::<u64>(), short in 1u64..30) {
        let g = generate(&Family::LeafyCycle(n)).unwrap();
        let mut opts = EstimateOptions::new(&g, 300, seed);
        opts.cutoff = short;
        let a = estimate_sk(&g, k, &GreedyEvade::default(), &opts).unwrap();
        opts.cutoff = short * 3;
        let b = estimate_sk(&g, k, &GreedyEvade::default(), &opts).unwrap();
        prop_assert!(b.wins <= a.wins);
    }

    #[test]
    fn wilson_interval_contains_the_point(wins in 0u64..500, extra in 0u64..500, conf in 0.5f64..0.999) {
        let samples = wins + extra + 1;
        let (lo, hi) = wilson_interval(wins, samples, conf).unwrap();
        let p = wins as f64 / samples as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }
}
