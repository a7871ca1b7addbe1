use num_rational::BigRational;
use proptest::prelude::*;

use zombies::analytic::{
    asymptotic_band, cycle_sk_bounds, cycle_sk_combinatorial, cycle_sk_enumerated,
    cycle_zombie_table, hypercube_sk, leafy_cycle_stats, to_f64, zombie_number_cycle,
};
use zombies::exact::{sk_exact, SolveOptions};
use zombies::graph::hypercube;
use zombies::Family;

#[test]
fn sandwich_holds_for_every_listed_cycle() {
    for n in 9..=200 {
        for k in 2..=6 {
            let (lo, hi) = cycle_sk_bounds(n, k).unwrap();
            let s = cycle_sk_combinatorial(n, k);
            assert!(lo <= s && s < hi, "n={n} k={k}");
        }
    }
}

#[test]
fn enumeration_and_arc_counting_agree() {
    for n in 3..=60 {
        for k in 1..=4 {
            assert_eq!(
                cycle_sk_enumerated(n, k),
                cycle_sk_combinatorial(n, k),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn cycle_zombie_numbers_follow_the_table() {
    for n in 3..=60 {
        assert_eq!(
            zombie_number_cycle(n).unwrap(),
            cycle_zombie_table(n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn hypercube_formula_matches_the_solver() {
    for (dim, k) in [(3, 2), (4, 3), (3, 1), (4, 2)] {
        let exact = sk_exact(&hypercube(dim).unwrap(), k, SolveOptions::default())
            .unwrap()
            .sk;
        assert!(
            (to_f64(&hypercube_sk(dim, k)) - exact).abs() <= 1e-9,
            "Q{dim} k={k}"
        );
    }
}

#[test]
fn leafy_floor_and_growth() {
    let s = leafy_cycle_stats(10, 2).unwrap();
    assert_eq!(s.p_all_leaves, BigRational::new(1.into(), 4.into()));
    assert!((s.z_asymptotic - 2f64.ln() * 2.0).abs() < 1e-12);
    assert!(leafy_cycle_stats(5, 1).is_err());
}

#[test]
fn bands_are_ordered() {
    let b = asymptotic_band(&Family::Hypercube(30), 2.0).unwrap();
    assert!(b.low < b.center && b.center < b.high);
    assert!(asymptotic_band(&Family::Cycle(30), 1.0).is_err());
}

proptest! {
    #[test]
    fn cycle_values_are_probabilities_and_non_increasing(n in 4usize..=300, k in 1usize..=7) {
        let a = cycle_sk_combinatorial(n, k);
        let b = cycle_sk_combinatorial(n, k + 1);
        prop_assert!(to_f64(&a) >= 0.0 && to_f64(&a) <= 1.0);
        prop_assert!(b <= a);
    }
}
