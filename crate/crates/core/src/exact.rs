//! Exact survivor values by value iteration.
//!
//! A state is a zombie multiset plus the survivor's vertex at a round
//! boundary (zombies to move). `p(Z, s)` is the least capture probability
//! the survivor can guarantee. Writing `q(Z', s)` for the value after the
//! zombies stepped to `Z'`,
//!
//! ```text
//! q(Z', s) = 1                                  if s in Z'
//!          = min over m in N[s] of  1 if m in Z', else p(Z', m)
//! p(Z, s)  = sum over Z' of P(Z' | Z, s) q(Z', s)
//! ```
//!
//! Iterating from `p = 0` (1 on captured states) climbs monotonically to the
//! least fixed point, which is the optimal capture probability.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::engine::geodesic_steps;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::strategies::OptimalTable;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITERS: u64 = 1_000_000;
/// Default cap on `C(n+k-1, k) * n`.
pub const DEFAULT_STATE_BUDGET: u128 = 20_000_000;
/// Survival values below this are treated as exactly zero.
pub const SURVIVAL_FLOOR: f64 = 1e-6;
/// Slack used when comparing an `s_k` computed in floating point with 1/2.
pub const THRESHOLD_SLACK: f64 = 1e-9;

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of `(multiset, survivor)` states for `k` zombies on `n` vertices.
pub fn state_count(n: usize, k: usize) -> u128 {
    binom((n + k - 1) as u128, k as u128) * n as u128
}

/// Ranks sorted `k`-multisets of `0..n` densely via the combinatorial
/// number system: `a_0 <= .. <= a_{k-1}` maps to `sum C(a_i + i, i + 1)`.
#[derive(Debug, Clone)]
pub struct MultisetIndex {
    n: usize,
    k: usize,
    /// `binom[i][j] = C(i, j)` for `i < n + k`, `j <= k`.
    binom: Vec<Vec<u64>>,
    count: usize,
}

impl MultisetIndex {
    pub fn new(n: usize, k: usize) -> MultisetIndex {
        let rows = n + k;
        let mut b = vec![vec![0u64; k + 1]; rows];
        for i in 0..rows {
            b[i][0] = 1;
            for j in 1..=k.min(i) {
                b[i][j] = b[i - 1][j - 1] + if j < i { b[i - 1][j] } else { 0 };
            }
        }
        let count = binom((n + k - 1) as u128, k as u128) as usize;
        MultisetIndex {
            n,
            k,
            binom: b,
            count,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Rank of a sorted multiset.
    #[inline]
    pub fn rank(&self, sorted: &[Vertex]) -> usize {
        debug_assert_eq!(sorted.len(), self.k);
        sorted
            .iter()
            .enumerate()
            .map(|(i, &a)| self.binom[a + i][i + 1])
            .sum::<u64>() as usize
    }

    /// All multisets in rank order, flattened `k` entries apiece.
    pub fn all(&self) -> Vec<Vertex> {
        let mut out = vec![0; self.count * self.k];
        if self.k == 0 {
            return out;
        }
        let mut cur = vec![0; self.k];
        loop {
            let r = self.rank(&cur);
            out[r * self.k..(r + 1) * self.k].copy_from_slice(&cur);
            // Next non-decreasing tuple, last coordinate fastest.
            let mut i = self.k;
            while i > 0 && cur[i - 1] == self.n - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cur[i - 1] += 1;
            let v = cur[i - 1];
            for c in &mut cur[i..] {
                *c = v;
            }
        }
        out
    }
}

/// `k! / prod(multiplicity!)`: ordered placements collapsing to `sorted`.
pub fn multinomial(sorted: &[Vertex]) -> f64 {
    let mut w = (1..=sorted.len()).map(|i| i as f64).product::<f64>();
    let mut run = 1;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            w /= (1..=run).map(|j| j as f64).product::<f64>();
            run = 1;
        }
    }
    w
}

/// Zombie-step distributions of every state, in CSR form.
struct Transitions {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    probs: Vec<f64>,
}

fn build_transitions(g: &Graph, idx: &MultisetIndex, sets: &[Vertex]) -> Transitions {
    let n = g.order();
    let k = idx.k;
    let per_state: Vec<Vec<(u32, f64)>> = (0..idx.len() * n)
        .into_par_iter()
        .map(|state| {
            let (r, s) = (state / n, state % n);
            let z = &sets[r * k..(r + 1) * k];
            if z.contains(&s) {
                return Vec::new();
            }
            let mut opts: Vec<Vec<Vertex>> = Vec::with_capacity(k);
            let mut buf = Vec::new();
            let mut weight = 1.0;
            for &zi in z {
                geodesic_steps(g, zi, s, &mut buf);
                weight /= buf.len() as f64;
                opts.push(buf.clone());
            }
            let mut out: Vec<(u32, f64)> = Vec::new();
            let mut pick = vec![0usize; k];
            let mut tuple = vec![0; k];
            loop {
                for i in 0..k {
                    tuple[i] = opts[i][pick[i]];
                }
                tuple.sort_unstable();
                out.push((idx.rank(&tuple) as u32, weight));
                let mut i = 0;
                while i < k {
                    pick[i] += 1;
                    if pick[i] < opts[i].len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
            out.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, f64)> = Vec::with_capacity(out.len());
            for (t, p) in out {
                match merged.last_mut() {
                    Some(last) if last.0 == t => last.1 += p,
                    _ => merged.push((t, p)),
                }
            }
            merged
        })
        .collect();
    let mut offsets = Vec::with_capacity(per_state.len() + 1);
    offsets.push(0);
    let total: usize = per_state.iter().map(Vec::len).sum();
    let mut targets = Vec::with_capacity(total);
    let mut probs = Vec::with_capacity(total);
    for v in per_state {
        for (t, p) in v {
            targets.push(t);
            probs.push(p);
        }
        offsets.push(targets.len());
    }
    Transitions {
        offsets,
        targets,
        probs,
    }
}

/// Optimal capture probabilities for every state.
#[derive(Debug, Clone)]
pub struct ValueTable {
    pub n: usize,
    pub k: usize,
    /// `values[rank * n + s]`.
    pub values: Vec<f64>,
    pub iterations: u64,
    /// Sup-norm change of the last sweep.
    pub residual: f64,
    pub converged: bool,
    pub tol: f64,
    pub graph_hash: String,
    index: MultisetIndex,
}

/// Solver knobs.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iters: u64,
    pub state_budget: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: DEFAULT_TOL,
            max_iters: DEFAULT_MAX_ITERS,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> SolveOptions {
        SolveOptions {
            tol,
            ..SolveOptions::default()
        }
    }
}

impl ValueTable {
    pub fn index(&self) -> &MultisetIndex {
        &self.index
    }

    /// Capture probability with zombies at `zombies` (any order) and the
    /// survivor at `s`, zombies to move.
    pub fn capture_prob(&self, zombies: &[Vertex], s: Vertex) -> f64 {
        let mut z = zombies.to_vec();
        z.sort_unstable();
        self.values[self.index.rank(&z) * self.n + s]
    }

    /// Value of the survivor standing on `m` right after the zombies moved
    /// to the sorted multiset `z` of rank `r`.
    #[inline]
    pub(crate) fn after_move(&self, r: usize, z: &[Vertex], m: Vertex) -> f64 {
        if z.contains(&m) {
            1.0
        } else {
            self.values[r * self.n + m]
        }
    }

    /// Largest violation of the Bellman equation over all states.
    pub fn bellman_residual(&self, g: &Graph) -> f64 {
        let sets = self.index.all();
        let tr = build_transitions(g, &self.index, &sets);
        let next = sweep(g, &self.index, &sets, &tr, &self.values);
        next.iter()
            .zip(&self.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn cache_name(graph_hash: &str, k: usize, tol: f64) -> String {
        format!(
            "{}-k{k}-tol{:016x}.zvt",
            &graph_hash[..graph_hash.len().min(16)],
            tol.to_bits()
        )
    }

    /// Writes the table under `dir`, keyed by graph hash, `k` and `tol`.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(Self::cache_name(&self.graph_hash, self.k, self.tol));
        let mut buf = Vec::with_capacity(64 + self.values.len() * 8);
        buf.extend_from_slice(b"ZVT1");
        for w in [
            self.n as u64,
            self.k as u64,
            self.tol.to_bits(),
            self.iterations,
            self.residual.to_bits(),
            self.converged as u64,
            self.graph_hash.len() as u64,
        ] {
            buf.extend_from_slice(&w.to_le_bytes());
        }
        buf.extend_from_slice(self.graph_hash.as_bytes());
        buf.extend_from_slice(&(self.values.len() as u64).to_le_bytes());
        for v in &self.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        fs::File::create(&path)?.write_all(&buf)?;
        Ok(path)
    }

    /// Reads a cached table, if one exists for this key.
    pub fn load(dir: &Path, g: &Graph, k: usize, tol: f64) -> Result<Option<ValueTable>> {
        let hash = g.hash();
        let path = dir.join(Self::cache_name(&hash, k, tol));
        if !path.exists() {
            return Ok(None);
        }
        let mut buf = Vec::new();
        fs::File::open(&path)?.read_to_end(&mut buf)?;
        let bad = || Error::InvalidParameter(format!("corrupt value cache {}", path.display()));
        let mut at = 4;
        if buf.get(..4) != Some(b"ZVT1".as_slice()) {
            return Err(bad());
        }
        let mut word = || -> Result<u64> {
            let w = buf.get(at..at + 8).ok_or_else(bad)?;
            at += 8;
            Ok(u64::from_le_bytes(w.try_into().unwrap()))
        };
        let (n, kk, tol_bits, iterations, res_bits, conv, hlen) = (
            word()?,
            word()?,
            word()?,
            word()?,
            word()?,
            word()?,
            word()?,
        );
        let stored_hash = buf.get(at..at + hlen as usize).ok_or_else(bad)?;
        if stored_hash != hash.as_bytes() || n as usize != g.order() || kk as usize != k {
            return Ok(None);
        }
        at += hlen as usize;
        let len = u64::from_le_bytes(buf.get(at..at + 8).ok_or_else(bad)?.try_into().unwrap());
        at += 8;
        let body = buf.get(at..at + 8 * len as usize).ok_or_else(bad)?;
        let values = body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Some(ValueTable {
            n: n as usize,
            k,
            values,
            iterations,
            residual: f64::from_bits(res_bits),
            converged: conv != 0,
            tol: f64::from_bits(tol_bits),
            graph_hash: hash,
            index: MultisetIndex::new(n as usize, k),
        }))
    }
}

/// One Jacobi sweep of the Bellman operator.
fn sweep(g: &Graph, idx: &MultisetIndex, sets: &[Vertex], tr: &Transitions, p: &[f64]) -> Vec<f64> {
    let n = g.order();
    let k = idx.k;
    // q[r * n + s]: survivor at s facing the freshly moved multiset r.
    let q: Vec<f64> = (0..idx.len() * n)
        .into_par_iter()
        .map(|state| {
            let (r, s) = (state / n, state % n);
            let z = &sets[r * k..(r + 1) * k];
            if z.contains(&s) {
                return 1.0;
            }
            let stay = p[state];
            g.neighbors(s).iter().fold(stay, |acc, &m| {
                let v = if z.contains(&m) { 1.0 } else { p[r * n + m] };
                acc.min(v)
            })
        })
        .collect();
    (0..idx.len() * n)
        .into_par_iter()
        .map(|state| {
            let (lo, hi) = (tr.offsets[state], tr.offsets[state + 1]);
            if lo == hi {
                return 1.0;
            }
            let s = state % n;
            tr.targets[lo..hi]
                .iter()
                .zip(&tr.probs[lo..hi])
                .map(|(&t, &pr)| pr * q[t as usize * n + s])
                .sum()
        })
        .collect()
}

/// Solves for the optimal capture probability of every state.
pub fn capture_value_table(g: &Graph, k: usize, opts: SolveOptions) -> Result<ValueTable> {
    if k == 0 {
        return Err(Error::InvalidParameter("need at least one zombie".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let n = g.order();
    let states = state_count(n, k);
    if states > opts.state_budget {
        return Err(Error::BudgetExceeded {
            states,
            budget: opts.state_budget,
        });
    }
    let idx = MultisetIndex::new(n, k);
    let sets = idx.all();
    let tr = build_transitions(g, &idx, &sets);

    let mut p: Vec<f64> = (0..idx.len() * n)
        .map(|st| {
            if tr.offsets[st] == tr.offsets[st + 1] {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    while iterations < opts.max_iters {
        let next = sweep(g, &idx, &sets, &tr, &p);
        iterations += 1;
        residual = next
            .par_iter()
            .zip(&p)
            .map(|(a, b)| {
                // Iterates only climb; rounding may wobble in the last bits.
                debug_assert!(a + 1e-15 >= *b, "value iteration decreased");
                (a - b).abs()
            })
            .reduce(|| 0.0, f64::max);
        p = next;
        if residual < opts.tol {
            break;
        }
    }
    Ok(ValueTable {
        n,
        k,
        values: p,
        iterations,
        residual,
        converged: residual < opts.tol,
        tol: opts.tol,
        graph_hash: g.hash(),
        index: idx,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkMethod {
    ExactMdp,
    Combinatorial,
}

impl std::fmt::Display for SkMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SkMethod::ExactMdp => "exact-mdp",
            SkMethod::Combinatorial => "combinatorial",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SkResult {
    pub k: usize,
    pub sk: f64,
    pub method: SkMethod,
    /// Fixed-point residual (0 for closed forms).
    pub residual: f64,
    pub converged: bool,
    /// Best start per zombie multiset, in multiset rank order.
    pub starts: Option<Vec<Vertex>>,
}

/// `s_k` from a solved table: the survivor sees the placement, then picks
/// the start with the best survival value.
pub fn sk_from_table(table: &ValueTable) -> SkResult {
    let (n, k) = (table.n, table.k);
    let sets = table.index.all();
    let (total, starts): (Vec<f64>, Vec<Vertex>) = (0..table.index.len())
        .into_par_iter()
        .map(|r| {
            let z = &sets[r * k..(r + 1) * k];
            let row = &table.values[r * n..(r + 1) * n];
            let (best, v) = best_start(row, z);
            (multinomial(z) * best, v)
        })
        .unzip();
    let sk = total.iter().sum::<f64>() / (n as f64).powi(k as i32);
    SkResult {
        k,
        sk: sk.clamp(0.0, 1.0),
        method: SkMethod::ExactMdp,
        residual: table.residual,
        converged: table.converged,
        starts: Some(starts),
    }
}

/// Highest survival value over unoccupied starts, floored at
/// [`SURVIVAL_FLOOR`], and the smallest vertex achieving it.
fn best_start(row: &[f64], zombies: &[Vertex]) -> (f64, Vertex) {
    let mut best = (0.0, 0);
    let mut found = false;
    for (v, &p) in row.iter().enumerate() {
        if zombies.contains(&v) {
            continue;
        }
        let mut w = 1.0 - p;
        if w < SURVIVAL_FLOOR {
            w = 0.0;
        }
        if !found || w > best.0 + 1e-12 {
            best = (w, v);
            found = true;
        }
    }
    best
}

/// Exact `s_k(G)`.
pub fn sk_exact(g: &Graph, k: usize, opts: SolveOptions) -> Result<SkResult> {
    Ok(sk_from_table(&capture_value_table(g, k, opts)?))
}

/// `z(G)` scan over `k = c, c+1, .., k_max`.
#[derive(Debug, Clone)]
pub struct ZombieNumber {
    pub cop_number: usize,
    /// First `k` with `s_k <= 1/2`, if any was reached.
    pub z: Option<usize>,
    pub profile: Vec<SkResult>,
    /// Whether the computed profile never increased.
    pub non_increasing: bool,
}

impl ZombieNumber {
    /// `z / c`.
    pub fn cost(&self) -> Option<f64> {
        self.z.map(|z| z as f64 / self.cop_number as f64)
    }

    pub fn value(&self, k_max: usize) -> Result<usize> {
        self.z.ok_or(Error::ThresholdNotReached { k_max })
    }
}

/// Scans `k` upward from `c` until `provider(k) <= 1/2`.
pub fn zombie_number<F>(c: usize, k_max: usize, mut provider: F) -> Result<ZombieNumber>
where
    F: FnMut(usize) -> Result<SkResult>,
{
    if c == 0 || k_max < c {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= c <= k_max, got c = {c}, k_max = {k_max}"
        )));
    }
    let mut profile: Vec<SkResult> = Vec::new();
    let mut z = None;
    for k in c..=k_max {
        let r = provider(k)?;
        let hit = r.sk <= 0.5 + THRESHOLD_SLACK;
        profile.push(r);
        if hit {
            z = Some(k);
            break;
        }
    }
    let non_increasing = profile
        .windows(2)
        .all(|w| w[1].sk <= w[0].sk + THRESHOLD_SLACK);
    Ok(ZombieNumber {
        cop_number: c,
        z,
        profile,
        non_increasing,
    })
}

/// The stationary survivor strategy that is greedy with respect to `table`.
pub fn extract_optimal_policy(table: ValueTable) -> OptimalTable {
    OptimalTable::new(table)
}

/// `k,s_k,method,residual` rows.
pub fn profile_csv(profile: &[SkResult]) -> String {
    let mut out = String::from("k,s_k,method,residual\n");
    for r in profile {
        out.push_str(&format!("{},{},{},{:e}\n", r.k, r.sk, r.method, r.residual));
    }
    out
}
