//! Closed forms and exact counts.
//!
//! All probabilities are exact rationals; convert with [`to_f64`] only when
//! reporting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::copnum::known_cop_number;
use crate::error::{Error, Result};
use crate::exact::{sk_exact, zombie_number, SolveOptions};
use crate::graph::{cycle, Family, Vertex};

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(int(num), int(den))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn half() -> BigRational {
    ratio(1, 2)
}

/// Largest arc (in vertices) of zombies the survivor can still escape on `C_n`.
pub fn cycle_escape_arc(n: usize) -> i64 {
    n.div_ceil(2) as i64 - 2
}

/// Vertices on the shortest run of consecutive cycle vertices holding every
/// position of `placement`.
pub fn minimal_covering_arc(n: usize, placement: &[Vertex]) -> usize {
    let mut pos: Vec<Vertex> = placement.iter().map(|&v| v % n).collect();
    pos.sort_unstable();
    pos.dedup();
    if pos.is_empty() {
        return 0;
    }
    let mut max_gap = pos[0] + n - pos[pos.len() - 1];
    for w in pos.windows(2) {
        max_gap = max_gap.max(w[1] - w[0]);
    }
    n - max_gap + 1
}

/// Whether the survivor escapes forever on `C_n` against this placement:
/// the zombies must fit in an arc of at most `ceil(n/2) - 2` vertices.
/// An arc of `n/2 - 1` vertices on an even cycle loses, since the extreme
/// zombie eventually steps the right way.
pub fn cycle_survivor_wins(n: usize, placement: &[Vertex]) -> bool {
    minimal_covering_arc(n, placement) as i64 <= cycle_escape_arc(n)
}

/// `s_k(C_n)` by direct enumeration of all `n^k` ordered placements.
pub fn cycle_sk_enumerated(n: usize, k: usize) -> BigRational {
    if let Some(v) = cycle_single_zombie(n, k) {
        return v;
    }
    let mut tuple = vec![0; k];
    let mut wins: u64 = 0;
    loop {
        if cycle_survivor_wins(n, &tuple) {
            wins += 1;
        }
        let mut i = 0;
        while i < k {
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    BigRational::new(int(wins), BigInt::from(n).pow(k as u32))
}

/// One zombie never catches a survivor on a cycle of length at least 4.
fn cycle_single_zombie(n: usize, k: usize) -> Option<BigRational> {
    (k == 1).then(|| {
        if n == 3 {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    })
}

/// `s_k(C_n)` by counting placements by their minimal covering arc: an arc
/// of `r >= 2` vertices with both ends occupied is hit by
/// `r^k - 2(r-1)^k + (r-2)^k` placements, and there are `n` such arcs.
pub fn cycle_sk_combinatorial(n: usize, k: usize) -> BigRational {
    if let Some(v) = cycle_single_zombie(n, k) {
        return v;
    }
    let top = cycle_escape_arc(n);
    if top < 1 {
        return BigRational::zero();
    }
    let pw = |r: i64| BigInt::from(r).pow(k as u32);
    let mut per_position = BigInt::one();
    for r in 2..=top {
        per_position += pw(r) - 2 * pw(r - 1) + pw(r - 2);
    }
    BigRational::new(per_position * n, BigInt::from(n).pow(k as u32))
}

/// `k (1/2 - 4/n)^(k-1) <= s_k(C_n) < k (1/2)^(k-1)` for `n >= 9`, `k >= 2`.
pub fn cycle_sk_bounds(n: usize, k: usize) -> Result<(BigRational, BigRational)> {
    if n < 9 || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "cycle bounds need n >= 9 and k >= 2, got n = {n}, k = {k}"
        )));
    }
    let kk = BigRational::from_integer(int(k as u64));
    let lower_base = half() - ratio(4, n as u64);
    let lower = &kk * num_traits::pow(lower_base, k - 1);
    let upper = &kk * num_traits::pow(half(), k - 1);
    Ok((lower, upper))
}

/// `z(C_n)`: closed-form counting for `n >= 9`, the exact solver below.
pub fn zombie_number_cycle(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let c = known_cop_number(&Family::Cycle(n)).unwrap_or(2);
    if n >= 9 {
        let mut k = c;
        while cycle_sk_combinatorial(n, k) > half() {
            k += 1;
        }
        return Ok(k);
    }
    let g = cycle(n)?;
    let z = zombie_number(c, 8, |k| sk_exact(&g, k, SolveOptions::default()))?;
    z.value(8)
}

/// The known piecewise table of `z(C_n)`.
pub fn cycle_zombie_table(n: usize) -> Option<usize> {
    Some(match n {
        0..=2 => return None,
        3 => 1,
        4..=8 | 10 => 2,
        9 | 11..=22 | 24 | 26 => 3,
        _ => 4,
    })
}

/// `s_k(Q_n)` from the parity condition: with `X ~ Bin(k, 1/2)` zombies on
/// even vertices the survivor wins iff `n > 2 min(X, k-X) + max(X, k-X)`.
pub fn hypercube_sk(n: usize, k: usize) -> BigRational {
    let mut wins = BigInt::zero();
    let mut c = BigInt::one();
    for x in 0..=k {
        if x > 0 {
            c = c * (k - x + 1) / x;
        }
        let (lo, hi) = (x.min(k - x), x.max(k - x));
        if n > 2 * lo + hi {
            wins += &c;
        }
    }
    BigRational::new(wins, BigInt::from(2).pow(k as u32))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeafyStats {
    /// Probability every zombie starts on a leaf, `(1 - 5/n)^k`.
    pub p_all_leaves: BigRational,
    /// `(ln 2 / 5) n`, the growth of the zombie number.
    pub z_asymptotic: f64,
}

pub fn leafy_cycle_stats(n: usize, k: usize) -> Result<LeafyStats> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!(
            "leafy cycle needs n >= 6, got {n}"
        )));
    }
    Ok(LeafyStats {
        p_all_leaves: num_traits::pow(BigRational::one() - ratio(5, n as u64), k),
        z_asymptotic: std::f64::consts::LN_2 / 5.0 * n as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandKind {
    /// `center +- width`.
    TwoSided,
    /// Only `low` is meaningful.
    LowerBound,
}

/// Asymptotic reference for `z`; carries no claim at finite size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub kind: BandKind,
    pub center: f64,
    pub low: f64,
    pub high: f64,
}

/// Growth band of `z` for hypercubes (`2n/3 +- omega sqrt n`), projective
/// planes (`2q +- omega sqrt q`) and tori (`z >= sqrt n / (omega ln n)`).
pub fn asymptotic_band(family: &Family, omega: f64) -> Result<Band> {
    if omega.is_nan() || omega <= 0.0 {
        return Err(Error::InvalidParameter("omega must be positive".into()));
    }
    let two_sided = |center: f64, x: f64| Band {
        kind: BandKind::TwoSided,
        center,
        low: center - omega * x.sqrt(),
        high: center + omega * x.sqrt(),
    };
    match *family {
        Family::Hypercube(n) => Ok(two_sided(2.0 * n as f64 / 3.0, n as f64)),
        Family::Projective(q) => Ok(two_sided(2.0 * q as f64, q as f64)),
        Family::Torus(n) if n >= 2 => {
            let x = n as f64;
            let low = x.sqrt() / (omega * x.ln());
            Ok(Band {
                kind: BandKind::LowerBound,
                center: low,
                low,
                high: f64::INFINITY,
            })
        }
        ref other => Err(Error::Unsupported(format!(
            "no asymptotic band for {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcs() {
        assert_eq!(minimal_covering_arc(10, &[0, 1]), 2);
        assert_eq!(minimal_covering_arc(10, &[0, 5]), 6);
        assert_eq!(minimal_covering_arc(10, &[9, 1]), 3);
        assert_eq!(minimal_covering_arc(10, &[4, 4, 4]), 1);
        assert!(cycle_survivor_wins(10, &[0, 1]));
        assert!(!cycle_survivor_wins(10, &[0, 5]));
        assert!(!cycle_survivor_wins(12, &[0, 2, 4]));
        assert!(cycle_survivor_wins(12, &[0, 2, 3]));
    }

    #[test]
    fn small_cycle_values() {
        assert_eq!(cycle_sk_combinatorial(9, 2), ratio(5, 9));
        assert_eq!(cycle_sk_combinatorial(11, 3), ratio(37, 121));
        assert_eq!(cycle_sk_combinatorial(20, 2), ratio(3, 4));
        assert_eq!(cycle_sk_combinatorial(10, 2), half());
        assert_eq!(cycle_sk_combinatorial(3, 1), BigRational::zero());
        assert_eq!(cycle_sk_combinatorial(4, 1), BigRational::one());
    }

    #[test]
    fn both_counts_agree() {
        for n in 3..=30 {
            for k in 1..=3 {
                assert_eq!(
                    cycle_sk_enumerated(n, k),
                    cycle_sk_combinatorial(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn bounds_by_substitution() {
        let (lo, hi) = cycle_sk_bounds(9, 2).unwrap();
        assert_eq!(lo, ratio(1, 9));
        assert_eq!(hi, BigRational::one());
        let (lo, _) = cycle_sk_bounds(100, 2).unwrap();
        assert_eq!(lo, ratio(92, 100));
        let (_, hi) = cycle_sk_bounds(50, 4).unwrap();
        assert_eq!(hi, half());
        assert!(cycle_sk_bounds(8, 2).is_err());
    }

    #[test]
    fn large_cycles_follow_the_table() {
        for n in [9, 10, 23, 24, 25, 26, 27, 44] {
            assert_eq!(
                zombie_number_cycle(n).unwrap(),
                cycle_zombie_table(n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn hypercube_values() {
        assert_eq!(hypercube_sk(3, 2), half());
        assert_eq!(hypercube_sk(4, 3), ratio(1, 4));
        assert_eq!(hypercube_sk(4, 4), BigRational::zero());
        assert_eq!(hypercube_sk(10, 1), BigRational::one());
    }

    #[test]
    fn leafy_values() {
        assert_eq!(leafy_cycle_stats(10, 1).unwrap().p_all_leaves, half());
        assert_eq!(leafy_cycle_stats(10, 3).unwrap().p_all_leaves, ratio(1, 8));
        let big = |k| to_f64(&leafy_cycle_stats(1000, k).unwrap().p_all_leaves);
        assert!(big(138) > 0.5 && big(139) < 0.5);
        assert!((leafy_cycle_stats(1000, 1).unwrap().z_asymptotic - 138.63).abs() < 0.01);
    }

    #[test]
    fn bands() {
        assert_eq!(
            asymptotic_band(&Family::Hypercube(300), 1.0)
                .unwrap()
                .center,
            200.0
        );
        assert_eq!(
            asymptotic_band(&Family::Projective(100), 1.0)
                .unwrap()
                .center,
            200.0
        );
        let t = asymptotic_band(&Family::Torus(10_000), 2.0).unwrap();
        assert_eq!(t.kind, BandKind::LowerBound);
        assert!((t.low - 100.0 / (2.0 * 10_000f64.ln())).abs() < 1e-12);
        assert!(asymptotic_band(&Family::Cycle(5), 1.0).is_err());
    }
}
