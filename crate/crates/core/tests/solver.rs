use std::sync::OnceLock;

use proptest::prelude::*;

use zombies::analytic::{cycle_sk_combinatorial, to_f64};
use zombies::copnum::{cop_number, cops_win, known_cop_number};
use zombies::exact::{capture_value_table, sk_exact, zombie_number, SolveOptions, ValueTable};
use zombies::graph::{cycle, generate, hypercube, torus};
use zombies::{Family, Graph};

fn tables() -> &'static [(Graph, ValueTable)] {
    static T: OnceLock<Vec<(Graph, ValueTable)>> = OnceLock::new();
    T.get_or_init(|| {
        [cycle(11).unwrap(), torus(5).unwrap(), hypercube(4).unwrap()]
            .into_iter()
            .map(|g| {
                let t = capture_value_table(&g, 2, SolveOptions::default()).unwrap();
                (g, t)
            })
            .collect()
    })
}

/// A generator automorphism of the table's family, applied to one vertex.
fn automorphism(g: &Graph, a: usize, b: bool, v: usize) -> usize {
    let n = g.order();
    match *g.family() {
        Family::Cycle(_) => {
            let r = (v + a) % n;
            if b {
                (n - r) % n
            } else {
                r
            }
        }
        Family::Torus(m) => {
            let (row, col) = (v / m, v % m);
            let (row, col) = ((row + a) % m, (col + a / m) % m);
            if b {
                col * m + row
            } else {
                row * m + col
            }
        }
        Family::Hypercube(_) => v ^ (a % n),
        _ => unreachable!(),
    }
}

#[test]
fn solver_matches_counting_on_small_cycles() {
    for n in 4..=12 {
        let g = cycle(n).unwrap();
        for k in 1..=3 {
            let exact = sk_exact(&g, k, SolveOptions::default()).unwrap();
            let formula = to_f64(&cycle_sk_combinatorial(n, k));
            assert!(
                (exact.sk - formula).abs() <= 1e-9,
                "C{n} k={k}: {} vs {formula}",
                exact.sk
            );
            assert!(exact.converged);
        }
    }
}

#[test]
fn fixed_points_satisfy_bellman() {
    for (g, t) in tables() {
        assert!(t.bellman_residual(g) < 1e-9, "{}", g.name());
        assert!(t.values.iter().all(|v| (0.0..=1.0 + 1e-12).contains(v)));
    }
}

#[test]
fn survival_profiles_never_increase() {
    let corpus = [
        Family::Cycle(7),
        Family::Cycle(10),
        Family::Grid(3),
        Family::Hypercube(3),
        Family::LeafyCycle(8),
        Family::Path(6),
        Family::Projective(2),
    ];
    for fam in corpus {
        let g = generate(&fam).unwrap();
        let z = zombie_number(1, 4, |k| sk_exact(&g, k, SolveOptions::default())).unwrap();
        assert!(z.non_increasing, "{fam}");
        let s: Vec<f64> = z.profile.iter().map(|r| r.sk).collect();
        assert!(s.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{fam}: {s:?}");
    }
}

#[test]
fn cop_wins_are_monotone_in_k() {
    let corpus = [
        Family::Cycle(3),
        Family::Cycle(6),
        Family::Grid(3),
        Family::Hypercube(3),
        Family::Torus(4),
        Family::LeafyCycle(7),
        Family::Projective(2),
        Family::RandomTree { n: 12, seed: 5 },
    ];
    for fam in corpus {
        let g = generate(&fam).unwrap();
        let wins: Vec<bool> = (1..=3).map(|k| cops_win(&g, k).unwrap().cop_win).collect();
        assert!(wins.windows(2).all(|w| !w[0] || w[1]), "{fam}: {wins:?}");
    }
}

#[test]
fn computed_cop_numbers_match_known_ones() {
    let mut corpus = vec![Family::Projective(2)];
    corpus.extend((1..=4).map(Family::Hypercube));
    corpus.extend((3..=12).map(Family::Cycle));
    corpus.extend((2..=4).map(Family::Grid));
    for fam in corpus {
        let g = generate(&fam).unwrap();
        assert_eq!(
            Some(cop_number(&g, 4).unwrap()),
            known_cop_number(&fam),
            "{fam}"
        );
    }
}

#[test]
fn cop_number_never_exceeds_zombie_number() {
    for fam in [
        Family::Cycle(5),
        Family::Cycle(9),
        Family::Grid(3),
        Family::Hypercube(3),
        Family::LeafyCycle(7),
    ] {
        let g = generate(&fam).unwrap();
        let c = cop_number(&g, 4).unwrap();
        let z = zombie_number(c, 5, |k| sk_exact(&g, k, SolveOptions::default())).unwrap();
        assert!(z.z.is_some_and(|z| z >= c), "{fam}");
    }
}

#[test]
fn cached_tables_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (g, t) = &tables()[0];
    t.save(dir.path()).unwrap();
    let back = ValueTable::load(dir.path(), g, 2, t.tol)
        .unwrap()
        .expect("cached table");
    assert_eq!(back.values, t.values);
}

proptest! {
    #[test]
    fn capture_probability_respects_symmetry(which in 0usize..3, a in any::<usize>(), b in any::<bool>(), raw in any::<[usize; 3]>()) {
        let (g, t) = &tables()[which];
        let n = g.order();
        let s = raw[2] % n;
        let z = [raw[0] % n, raw[1] % n];
        let map = |v| automorphism(g, a % (n * n), b, v);
        let before = t.capture_prob(&z, s);
        let after = t.capture_prob(&[map(z[0]), map(z[1])], map(s));
        prop_assert!((before - after).abs() <= 1e-9, "{} vs {}", before, after);
    }
}
