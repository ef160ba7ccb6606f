//! Timing harness comparing the solver, its presorted path, and the DP oracle.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::Result;
use crate::generate::{generate_instance, generate_points, Distribution, GenSpec};
use crate::instance::{Instance, SortCheck};
use crate::oracle::{dp_optimal_cost, DEFAULT_DP_GUARD};
use crate::solver::{solve, solve_presorted};

pub const BENCH_HEADER: &str =
    "n_s\tn_t\tdist\tseed\tt_solve_ns\tt_presorted_ns\tt_dp_ns\tcost\tdp_cost";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Total point counts `|S| + |T|`.
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub reps: usize,
    pub include_dp: bool,
    pub guard: usize,
    pub dist: Distribution,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: Vec::new(),
            seed: 1,
            reps: 5,
            include_dp: false,
            guard: DEFAULT_DP_GUARD,
            dist: Distribution::Uniform,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n_s: usize,
    pub n_t: usize,
    pub dist: Distribution,
    pub seed: u64,
    pub t_solve_ns: u128,
    pub t_presorted_ns: u128,
    pub t_dp_ns: Option<u128>,
    pub cost: i64,
    pub dp_cost: Option<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// False if any row's solver and DP costs disagree.
    pub fn costs_agree(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.dp_cost.is_none_or(|d| d == r.cost))
    }

    /// TSV with a header row. `with_times = false` blanks the timing
    /// columns, leaving output that is identical across runs.
    pub fn to_tsv(&self, with_times: bool) -> String {
        let mut out = format!("{BENCH_HEADER}\n");
        let opt = |v: Option<String>| v.unwrap_or_default();
        for r in &self.rows {
            let time = |ns: Option<u128>| opt(ns.filter(|_| with_times).map(|v| v.to_string()));
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n_s,
                r.n_t,
                r.dist,
                r.seed,
                time(Some(r.t_solve_ns)),
                time(Some(r.t_presorted_ns)),
                time(r.t_dp_ns),
                r.cost,
                opt(r.dp_cost.map(|v| v.to_string())),
            );
        }
        out
    }
}

/// Split of `n` total points: `|T| = max(1, 3n/8)`, coordinates in `[0, 4n]`.
pub fn bench_spec(n: usize, seed: u64, dist: Distribution) -> GenSpec {
    let size_t = (3 * n / 8).max(1);
    let size_s = n.saturating_sub(size_t).max(size_t);
    GenSpec {
        seed,
        size_s,
        size_t,
        lo: 0,
        hi: 4 * n as i64,
        dist,
    }
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// Median of `reps` timed calls after one untimed warm-up call.
fn time_it<T>(reps: usize, mut f: impl FnMut() -> Result<T>) -> Result<(u128, T)> {
    f()?;
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let v = f()?;
        times.push(start.elapsed().as_nanos());
        last = Some(v);
    }
    Ok((median(times), last.expect("at least one repetition")))
}

/// Median wall time of `solve_presorted` on a generated instance of `n` points.
pub fn time_presorted(n: usize, seed: u64, reps: usize) -> Result<u128> {
    let inst = generate_instance(&bench_spec(n, seed, Distribution::Uniform))?;
    let (ns, _) = time_it(reps, || {
        solve_presorted(inst.s(), inst.t(), SortCheck::Trust)
    })?;
    Ok(ns)
}

/// Median presorted solve time per size, with repetitions interleaved
/// round-robin across sizes so slow drift in machine load hits every size
/// alike. Ratios between neighbouring sizes are the intended use.
pub fn presorted_scaling(sizes: &[usize], seed: u64, reps: usize) -> Result<Vec<u128>> {
    let insts = sizes
        .iter()
        .map(|&n| generate_instance(&bench_spec(n, seed, Distribution::Uniform)))
        .collect::<Result<Vec<_>>>()?;
    let mut times = vec![Vec::with_capacity(reps); sizes.len()];
    for round in 0..=reps.max(1) {
        for (inst, slot) in insts.iter().zip(&mut times) {
            let start = Instant::now();
            solve_presorted(inst.s(), inst.t(), SortCheck::Trust)?;
            // round 0 is a warm-up
            if round > 0 {
                slot.push(start.elapsed().as_nanos());
            }
        }
    }
    Ok(times.into_iter().map(median).collect())
}

/// Runs every size in order. The DP column is left empty for sizes above
/// the guard; the run continues.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(config.sizes.len());
    for &n in &config.sizes {
        let spec = bench_spec(n, config.seed, config.dist);
        let (raw_s, raw_t) = generate_points(&spec)?;
        let sorted = Instance::new(raw_s.clone(), raw_t.clone())?;

        let (t_solve_ns, sol) = time_it(config.reps, || {
            let inst = Instance::new(raw_s.clone(), raw_t.clone())?;
            solve(&inst)
        })?;
        let (t_presorted_ns, pre) = time_it(config.reps, || {
            solve_presorted(sorted.s(), sorted.t(), SortCheck::Trust)
        })?;
        debug_assert_eq!(sol.total_cost, pre.total_cost);

        let (t_dp_ns, dp_cost) = if config.include_dp && sorted.len() <= config.guard {
            let (ns, cost) = time_it(config.reps, || dp_optimal_cost(&sorted, config.guard))?;
            (Some(ns), Some(cost))
        } else {
            (None, None)
        };

        rows.push(BenchRow {
            n_s: spec.size_s,
            n_t: spec.size_t,
            dist: config.dist,
            seed: config.seed,
            t_solve_ns,
            t_presorted_ns,
            t_dp_ns,
            cost: sol.total_cost,
            dp_cost,
        });
    }
    Ok(BenchReport { rows })
}
