use proptest::prelude::*;

use zombies::graph::{
    all_pairs_distances, cycle, generate, grid, hypercube, is_projective_point,
    projective_incidence, random_tree, torus, validate,
};
use zombies::{Family, Graph};

fn common_neighbours(g: &Graph, a: usize, b: usize) -> usize {
    g.neighbors(a)
        .iter()
        .filter(|v| g.neighbors(b).contains(v))
        .count()
}

#[test]
fn projective_planes_satisfy_the_axioms() {
    for q in [2u64, 3, 5, 7] {
        let g = projective_incidence(q).unwrap();
        let m = (q * q + q + 1) as usize;
        assert_eq!(g.order(), 2 * m);
        assert_eq!(g.size(), (q as usize + 1) * m);
        let (points, lines): (Vec<usize>, Vec<usize>) =
            (0..g.order()).partition(|&v| is_projective_point(&g, v));
        assert_eq!(points.len(), m);
        for side in [&points, &lines] {
            for (i, &a) in side.iter().enumerate() {
                for &b in &side[i + 1..] {
                    assert_eq!(common_neighbours(&g, a, b), 1, "q={q}: {a} and {b}");
                }
            }
        }
        let r = validate(&g);
        assert_eq!((r.regular_degree, r.girth), (Some(q as usize + 1), Some(6)));
    }
}

#[test]
fn non_prime_orders_are_rejected() {
    for q in [1, 4, 6, 8, 9] {
        assert!(projective_incidence(q).is_err(), "q={q}");
    }
}

proptest! {
    #[test]
    fn hypercube_order_size_and_hamming(n in 1usize..=7, a in any::<u64>(), b in any::<u64>()) {
        let g = hypercube(n).unwrap();
        prop_assert_eq!(g.order(), 1 << n);
        prop_assert_eq!(g.size(), n << (n - 1));
        let (u, v) = ((a % (1 << n)) as usize, (b % (1 << n)) as usize);
        prop_assert_eq!(g.dist(u, v), (u ^ v).count_ones());
    }

    #[test]
    fn torus_order_size_and_wrapped_l1(n in 3usize..=40, a in any::<u64>(), b in any::<u64>()) {
        let g = torus(n).unwrap();
        prop_assert_eq!(g.order(), n * n);
        prop_assert_eq!(g.size(), 2 * n * n);
        let (u, v) = ((a % (n * n) as u64) as usize, (b % (n * n) as u64) as usize);
        let wrap = |x: usize, y: usize| { let d = x.abs_diff(y); d.min(n - d) };
        let want = wrap(u / n, v / n) + wrap(u % n, v % n);
        prop_assert_eq!(g.dist(u, v) as usize, want);
    }

    #[test]
    fn closed_form_metrics_match_bfs(n in 3usize..=9, which in 0usize..3) {
        let g = match which { 0 => torus(n), 1 => grid(n), _ => cycle(n * 2) }.unwrap();
        let table = all_pairs_distances(&g).unwrap();
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(g.dist(u, v), table.get(u, v));
            }
        }
    }

    #[test]
    fn json_round_trip_preserves_hash(n in 3usize..=12, which in 0usize..4, seed in any::<u64>()) {
        let fam = match which {
            0 => Family::Cycle(n),
            1 => Family::Grid(n),
            2 => Family::LeafyCycle(n + 3),
            _ => Family::RandomTree { n, seed },
        };
        let g = generate(&fam).unwrap();
        let back = Graph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.hash(), g.hash());
        prop_assert_eq!(back.family(), g.family());
    }

    #[test]
    fn random_trees_are_connected_trees(n in 1usize..=60, seed in any::<u64>()) {
        let g = random_tree(n, seed).unwrap();
        let r = validate(&g);
        prop_assert!(r.connected);
        prop_assert_eq!(r.size + 1, n);
        prop_assert_eq!(r.girth, None);
    }
}
