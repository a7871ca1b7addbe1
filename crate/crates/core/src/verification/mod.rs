//! Reproduction checks shared by the CLI `verify` command and the test suite.
//!
//! Each criterion recomputes known values or properties and compares
//! them with the expected ones. A report carries one row per comparison so
//! the CLI can emit them as CSV.

use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::analytic::{
    cycle_sk_bounds, cycle_sk_combinatorial, cycle_zombie_table, hypercube_sk, to_f64,
    zombie_number_cycle,
};
use crate::copnum::cop_number;
use crate::engine::ZombieLaw;
use crate::error::{Error, Result};
use crate::exact::{capture_value_table, sk_exact, zombie_number, SolveOptions};
use crate::graph::{
    cycle, grid, hypercube, leafy_cycle, projective_incidence, torus as torus_graph, validate,
    Graph,
};
use crate::montecarlo::{estimate_sk, zombie_number_mc, EstimateOptions};
use crate::strategies::{GreedyEvade, OptimalTable, SurvivorStrategy, TorusBoxed, TorusParams};

pub mod torus;

/// Ids and titles of the reproduction criteria with their time budgets in
/// seconds.
pub const CRITERIA: [(u8, &str, f64); 10] = [
    (1, "cycle zombie-number table", 10.0),
    (2, "cycle solver against enumeration", 300.0),
    (3, "hypercube exact values", 600.0),
    (4, "grids", 600.0),
    (5, "projective planes", 300.0),
    (6, "cycle sandwich bounds", 60.0),
    (7, "Monte Carlo calibration", 300.0),
    (8, "torus property suite", 900.0),
    (9, "leafy cycle", 600.0),
    (10, "determinism across thread counts", 120.0),
];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub quantity: String,
    pub computed: String,
    pub expected: String,
    pub ok: bool,
}

impl Check {
    fn new(
        quantity: impl Into<String>,
        computed: impl ToString,
        expected: impl ToString,
        ok: bool,
    ) -> Check {
        Check {
            quantity: quantity.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub runtime_secs: f64,
    pub budget_secs: f64,
}

impl CriterionReport {
    /// One human-readable line: id, verdict, title, failures and timing.
    pub fn summary(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.ok).count();
        let mut line = format!(
            "criterion {:>2} {} {} ({} checks, {:.1}s of {:.0}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
            self.runtime_secs,
            self.budget_secs
        );
        if failed > 0 {
            line.push_str(&format!(", {failed} failed"));
        }
        if self.runtime_secs > self.budget_secs {
            line.push_str(", over budget");
        }
        line
    }
}

/// Runs criterion `id`.
pub fn run(id: u8) -> Result<CriterionReport> {
    run_with(id, &ZombieLaw::Geodesic)
}

/// Runs criterion `id` with simulated cycle rows played under `law`. Only
/// useful for checking that a broken engine is caught.
#[doc(hidden)]
pub fn run_with(id: u8, law: &ZombieLaw) -> Result<CriterionReport> {
    let &(_, title, budget) = CRITERIA.iter().find(|c| c.0 == id).ok_or_else(|| {
        Error::InvalidParameter(format!("no criterion {id}; valid ids are 1 to 10"))
    })?;
    let started = Instant::now();
    let checks = match id {
        1 => cycle_table(law)?,
        2 => cycle_solver()?,
        3 => hypercubes()?,
        4 => grids()?,
        5 => projective()?,
        6 => sandwich()?,
        7 => calibration()?,
        8 => torus_suite()?,
        9 => leafy()?,
        _ => determinism()?,
    };
    let runtime_secs = started.elapsed().as_secs_f64();
    Ok(CriterionReport {
        id,
        title: title.to_string(),
        passed: checks.iter().all(|c| c.ok) && runtime_secs <= budget,
        checks,
        runtime_secs,
        budget_secs: budget,
    })
}

/// `criterion,quantity,computed,expected,ok` rows for all reports.
pub fn comparison_csv(reports: &[CriterionReport]) -> String {
    let mut out = String::from("criterion,quantity,computed,expected,ok\n");
    for r in reports {
        for c in &r.checks {
            out.push_str(&format!(
                "{},\"{}\",{},{},{}\n",
                r.id, c.quantity, c.computed, c.expected, c.ok
            ));
        }
    }
    out
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn cycle_table(law: &ZombieLaw) -> Result<Vec<Check>> {
    let mut out = (3..=60)
        .map(|n| {
            let z = zombie_number_cycle(n)?;
            let want = cycle_zombie_table(n).expect("table covers n >= 3");
            Ok(Check::new(format!("z(C_{n})"), z, want, z == want))
        })
        .collect::<Result<Vec<_>>>()?;
    out.push(simulated_cycle_row(9, law)?);
    Ok(out)
}

/// `z(C_n)` read off simulated games: the first `k` whose whole interval
/// sits at or below 1/2, with every smaller `k` clearly above it.
fn simulated_cycle_row(n: usize, law: &ZombieLaw) -> Result<Check> {
    let g = cycle(n)?;
    let want = cycle_zombie_table(n).expect("table covers n >= 3");
    let mut opts = EstimateOptions::new(&g, 20_000, 17);
    opts.law = law.clone();
    let est = zombie_number_mc(&g, &GreedyEvade::default(), 2..=want + 1, &opts)?;
    let above = if want > 2 { Some(want - 1) } else { None };
    Ok(Check::new(
        format!("z(C_{n}) by simulation"),
        est.z_upper.map_or("none".into(), |z| z.to_string()),
        want,
        est.z_upper == Some(want) && est.above_half == above,
    ))
}

fn cycle_solver() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 9..=12 {
        let g = cycle(n)?;
        for k in [2, 3] {
            let exact = sk_exact(&g, k, SolveOptions::default())?.sk;
            let formula = to_f64(&cycle_sk_combinatorial(n, k));
            out.push(Check::new(
                format!("s_{k}(C_{n}) solver vs counting"),
                format!("{exact:.12}"),
                format!("{formula:.12}"),
                close(exact, formula, 1e-9),
            ));
        }
    }
    Ok(out)
}

fn hypercubes() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (dim, k, want, z_want) in [(3, 2, 0.5, 2), (4, 3, 0.25, 3)] {
        let g = hypercube(dim)?;
        let exact = sk_exact(&g, k, SolveOptions::default())?.sk;
        let formula = to_f64(&hypercube_sk(dim, k));
        out.push(Check::new(
            format!("s_{k}(Q_{dim})"),
            format!("{exact:.12}"),
            want,
            close(exact, want, 1e-9) && close(formula, want, 1e-9),
        ));
        let c = cop_number(&g, dim)?;
        let z = zombie_number(c, dim + 2, |k| sk_exact(&g, k, SolveOptions::default()))?;
        out.push(Check::new(
            format!("z(Q_{dim})"),
            z.z.map_or("none".into(), |z| z.to_string()),
            z_want,
            z.z == Some(z_want),
        ));
    }
    Ok(out)
}

fn grids() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=5 {
        let g = grid(n)?;
        let s2 = sk_exact(&g, 2, SolveOptions::default())?.sk;
        out.push(Check::new(
            format!("s_2(G_{n})"),
            format!("{s2:.3e}"),
            "<= 1e-6",
            s2 <= 1e-6,
        ));
        let c = cop_number(&g, 3)?;
        out.push(Check::new(format!("c(G_{n})"), c, 2, c == 2));
        let z = zombie_number(c, 3, |k| sk_exact(&g, k, SolveOptions::default()))?;
        out.push(Check::new(
            format!("z(G_{n})"),
            z.z.map_or("none".into(), |z| z.to_string()),
            2,
            z.z == Some(2) && z.cost() == Some(1.0),
        ));
    }
    Ok(out)
}

fn projective() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5, 7] {
        let r = validate(&projective_incidence(q)?);
        let order = 2 * (q * q + q + 1) as usize;
        let deg = q as usize + 1;
        out.push(Check::new(
            format!("G_{q} order/degree/girth"),
            format!(
                "{}/{}/{}",
                r.order,
                r.regular_degree.unwrap_or(0),
                r.girth.unwrap_or(0)
            ),
            format!("{order}/{deg}/6"),
            r.order == order && r.regular_degree == Some(deg) && r.girth == Some(6),
        ));
    }
    let c = cop_number(&projective_incidence(2)?, 4)?;
    out.push(Check::new("c(G_2)", c, 3, c == 3));
    Ok(out)
}

fn sandwich() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [50, 100, 200] {
        for k in 2..=6 {
            let s: BigRational = cycle_sk_combinatorial(n, k);
            let (lo, hi) = cycle_sk_bounds(n, k)?;
            out.push(Check::new(
                format!("bounds on s_{k}(C_{n})"),
                format!("{:.10}", to_f64(&s)),
                format!("[{:.10}, {:.10})", to_f64(&lo), to_f64(&hi)),
                lo <= s && s < hi,
            ));
        }
    }
    Ok(out)
}

fn calibrate(
    g: &Graph,
    k: usize,
    strat: &dyn SurvivorStrategy,
    exact: f64,
    seed: u64,
) -> Result<Check> {
    let r = estimate_sk(g, k, strat, &EstimateOptions::new(g, 100_000, seed))?;
    Ok(Check::new(
        format!("{} k={k} {} 99% interval", g.name(), strat.name()),
        format!("[{:.5}, {:.5}]", r.ci_low, r.ci_high),
        format!("{exact:.5}"),
        r.ci_low <= exact && exact <= r.ci_high,
    ))
}

fn calibration() -> Result<Vec<Check>> {
    let c20 = cycle(20)?;
    let q3 = hypercube(3)?;
    let c3 = cycle(3)?;
    let table = OptimalTable::new(capture_value_table(&q3, 2, SolveOptions::default())?);
    let q3_exact = sk_exact(&q3, 2, SolveOptions::default())?.sk;
    Ok(vec![
        calibrate(
            &c20,
            2,
            &GreedyEvade::default(),
            to_f64(&cycle_sk_combinatorial(20, 2)),
            1,
        )?,
        calibrate(&q3, 2, &table, q3_exact, 2)?,
        calibrate(&c3, 1, &GreedyEvade::default(), 0.0, 3)?,
    ])
}

/// Accepted trials per zombie count in the torus suite.
pub const TORUS_RUNS: usize = 200;

fn torus_suite() -> Result<Vec<Check>> {
    let n = 256;
    let g = torus_graph(n)?;
    let params = TorusParams::desk(n);
    let strat = TorusBoxed::new(params)?;
    let mut out = Vec::new();
    for k in [1, 2] {
        let (mut accepted, mut good, mut seed) = (0, 0, 0);
        while accepted < TORUS_RUNS {
            let t = torus::torus_trial(&g, &strat, k, seed, params.arrival_gap())?;
            seed += 1;
            if t.rejected.is_some() {
                continue;
            }
            accepted += 1;
            good += t.success() as usize;
        }
        let rate = good as f64 / accepted as f64;
        out.push(Check::new(
            format!("torus(256) k={k} stable, locked and alive"),
            format!("{good}/{accepted}"),
            ">= 95%",
            rate >= 0.95,
        ));
    }
    let share = torus::regular_share(n, 1000, 11);
    out.push(Check::new(
        "regular random scripts",
        share,
        ">= 0.99",
        share >= 0.99,
    ));
    Ok(out)
}

fn leafy() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [10, 12, 14] {
        let g = leafy_cycle(n)?;
        for k in 1..=3 {
            let exact = sk_exact(&g, k, SolveOptions::default())?.sk;
            let floor = (1.0 - 5.0 / n as f64).powi(k as i32);
            out.push(Check::new(
                format!("s_{k}(leafy_{n}) >= (1-5/n)^k"),
                format!("{exact:.6}"),
                format!(">= {floor:.6}"),
                exact >= floor - 1e-9,
            ));
            let r = estimate_sk(
                &g,
                k,
                &GreedyEvade::default(),
                &EstimateOptions::new(&g, 20_000, 100 + k as u64),
            )?;
            out.push(Check::new(
                format!("greedy interval on leafy_{n} k={k}"),
                format!("[{:.5}, {:.5}]", r.ci_low, r.ci_high),
                format!("{exact:.5}"),
                r.ci_low <= exact && exact <= r.ci_high,
            ));
        }
    }
    Ok(out)
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn determinism() -> Result<Vec<Check>> {
    let g = cycle(24)?;
    let q = hypercube(4)?;
    let sim = |t| {
        with_threads(t, || {
            let mut o = EstimateOptions::new(&g, 20_000, 9);
            o.law = ZombieLaw::Geodesic;
            estimate_sk(&g, 3, &GreedyEvade::default(), &o).map(|r| serde_json::to_vec(&r))
        })
    };
    let solve = |t| {
        with_threads(t, || {
            capture_value_table(&q, 3, SolveOptions::default()).map(|v| v.values)
        })
    };
    let a = digest(&sim(1)???);
    let b = digest(&sim(8)???);
    let va = solve(1)??;
    let vb = solve(8)??;
    let bytes = |v: &[f64]| v.iter().flat_map(|x| x.to_le_bytes()).collect::<Vec<u8>>();
    let (sa, sb) = (digest(&bytes(&va)), digest(&bytes(&vb)));
    Ok(vec![
        Check::new(
            "simulate digest, 1 vs 8 threads",
            &a[..16],
            &b[..16],
            a == b,
        ),
        Check::new(
            "solve digest, 1 vs 8 threads",
            &sa[..16],
            &sb[..16],
            sa == sb,
        ),
    ])
}
