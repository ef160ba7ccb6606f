//! `scaffold`: solve, check and benchmark many-to-one assignments on a line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 infeasible instance,
//! 3 internal invariant failure.

use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use scaffold_assign::bench::{run_bench, BenchConfig};
use scaffold_assign::format::{parse_instance, parse_points, rhythm_distance};
use scaffold_assign::generate::{generate_instance, Distribution, GenSpec};
use scaffold_assign::oracle::{dp_optimal_cost, exhaustive_optimal, DEFAULT_DP_GUARD};
use scaffold_assign::{
    height_profile, solve, solve_presorted, Error, Instance, Solution, SortCheck,
};

#[derive(Parser)]
#[command(
    name = "scaffold",
    version,
    about = "Minimum-cost many-to-one assignment on a line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dist {
    Uniform,
    Clustered,
}

impl From<Dist> for Distribution {
    fn from(d: Dist) -> Self {
        match d {
            Dist::Uniform => Distribution::Uniform,
            Dist::Clustered => Distribution::Clustered,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file (or stdin).
    Solve {
        file: Option<PathBuf>,
        /// Trust that both sets are already sorted.
        #[arg(long)]
        presorted: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Optimal cost from the quadratic DP (and optionally exhaustive search).
    Oracle {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DP_GUARD)]
        guard: usize,
        /// Also enumerate every surjection (|T| <= 5, |S| <= 9).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the solver and the DP oracle and report whether they agree.
    Compare {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DP_GUARD)]
        guard: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        ns: usize,
        #[arg(long)]
        nt: usize,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 100)]
        hi: i64,
        #[arg(long, value_enum, default_value_t = Dist::Uniform)]
        dist: Dist,
    },
    /// Time the solver, the presorted path and the DP over a list of sizes.
    Bench {
        /// Comma-separated total point counts.
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 16384, 262144])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Also time the DP oracle where the size guard allows.
        #[arg(long)]
        dp: bool,
        #[arg(long, default_value_t = DEFAULT_DP_GUARD)]
        guard: usize,
        #[arg(long, value_enum, default_value_t = Dist::Uniform)]
        dist: Dist,
        /// Leave the timing columns empty.
        #[arg(long)]
        no_times: bool,
    },
    /// Directed swap distance between two box-notation rhythms, e.g. x.x. xx..
    Rhythm {
        a: String,
        b: String,
        /// Measure from B to A instead.
        #[arg(long)]
        swap: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Height function as TSV for plotting.
    Height { file: Option<PathBuf> },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Failure> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

#[derive(Serialize)]
struct Decomposition {
    neighbor_sum: i64,
    reduced_area: i64,
}

#[derive(Serialize)]
struct SolveOutput {
    cost: i64,
    edges: Vec<(i64, i64)>,
    removed: Vec<i64>,
    decomposition: Decomposition,
}

fn render_solution(inst: &Instance, sol: &Solution, format: Format) -> String {
    let (s, t) = (inst.s(), inst.t());
    match format {
        Format::Json => {
            let out = SolveOutput {
                cost: sol.total_cost,
                edges: sol
                    .assignment
                    .edges
                    .iter()
                    .map(|e| (s[e.s_index], t[e.t_index]))
                    .collect(),
                removed: sol.removed.iter().map(|r| s[r.s_index]).collect(),
                decomposition: Decomposition {
                    neighbor_sum: sol.neighbor_sum,
                    reduced_area: sol.reduced_area,
                },
            };
            serde_json::to_string(&out).expect("plain data serializes") + "\n"
        }
        Format::Tsv => {
            let mut out = String::from("# s\tt\tcost\tremoved\n");
            let mut next = sol.removed.iter().map(|r| r.s_index).peekable();
            for e in &sol.assignment.edges {
                let removed = next.next_if_eq(&e.s_index).is_some();
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    s[e.s_index],
                    t[e.t_index],
                    e.cost,
                    u8::from(removed)
                );
            }
            let _ = writeln!(out, "# cost\t{}", sol.total_cost);
            let _ = writeln!(out, "# neighbor_sum\t{}", sol.neighbor_sum);
            let _ = writeln!(out, "# reduced_area\t{}", sol.reduced_area);
            out
        }
    }
}

/// Flat `key -> integer` output for the small subcommands.
fn render_pairs(pairs: &[(&str, i64)], format: Format) -> String {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = pairs
                .iter()
                .map(|&(k, v)| (k.to_string(), v.into()))
                .collect();
            serde_json::Value::Object(map).to_string() + "\n"
        }
        Format::Tsv => pairs.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect(),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve {
            file,
            presorted,
            format,
        } => {
            let text = read_input(&file)?;
            let (inst, sol) = if presorted {
                let (s, t) = parse_points(&text)?;
                let sol = solve_presorted(&s, &t, SortCheck::Trust)?;
                (Instance::from_sorted(s, t, SortCheck::Trust)?, sol)
            } else {
                let inst = parse_instance(&text)?;
                let sol = solve(&inst)?;
                (inst, sol)
            };
            sol.verify(&inst)?;
            Ok(render_solution(&inst, &sol, format))
        }
        Command::Oracle {
            file,
            guard,
            exhaustive,
            format,
        } => {
            let inst = parse_instance(&read_input(&file)?)?;
            let mut pairs = vec![("dp", dp_optimal_cost(&inst, guard)?)];
            if exhaustive {
                pairs.push(("exhaustive", exhaustive_optimal(&inst)?));
            }
            Ok(render_pairs(&pairs, format))
        }
        Command::Compare {
            file,
            guard,
            format,
        } => {
            let inst = parse_instance(&read_input(&file)?)?;
            let sol = solve(&inst)?;
            sol.verify(&inst)?;
            let dp = dp_optimal_cost(&inst, guard)?;
            let agree = sol.total_cost == dp;
            let mut out = render_pairs(&[("solver", sol.total_cost), ("dp", dp)], format);
            match format {
                Format::Json => {
                    out = format!(
                        "{{\"solver\":{},\"dp\":{dp},\"pass\":{agree}}}\n",
                        sol.total_cost
                    )
                }
                Format::Tsv => out.push_str(if agree { "PASS\n" } else { "FAIL\n" }),
            }
            if agree {
                Ok(out)
            } else {
                print!("{out}");
                Err(
                    Error::Internal(format!("solver cost {} != dp cost {dp}", sol.total_cost))
                        .into(),
                )
            }
        }
        Command::Gen {
            seed,
            ns,
            nt,
            lo,
            hi,
            dist,
        } => {
            let spec = GenSpec {
                seed,
                size_s: ns,
                size_t: nt,
                lo,
                hi,
                dist: dist.into(),
            };
            let inst = generate_instance(&spec)?;
            Ok(format!(
                "# seed={seed} ns={ns} nt={nt} lo={lo} hi={hi} dist={}\n{inst}",
                spec.dist
            ))
        }
        Command::Bench {
            sizes,
            seed,
            reps,
            dp,
            guard,
            dist,
            no_times,
        } => {
            let config = BenchConfig {
                sizes,
                seed,
                reps,
                include_dp: dp,
                guard,
                dist: dist.into(),
            };
            let report = run_bench(&config)?;
            let out = report.to_tsv(!no_times);
            if report.costs_agree() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Error::Internal("solver and DP costs disagree".into()).into())
            }
        }
        Command::Rhythm { a, b, swap, format } => {
            let cost = rhythm_distance(&a, &b, swap).inspect_err(|e| {
                if matches!(e, Error::InfeasibleCardinality { .. }) {
                    eprintln!(
                        "hint: swap distance is directed; pass --swap to measure from B to A"
                    );
                }
            })?;
            Ok(render_pairs(&[("distance", cost)], format))
        }
        Command::Height { file } => {
            let inst = parse_instance(&read_input(&file)?)?;
            Ok(height_profile(&inst).to_tsv())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = if e.is_infeasible() {
                2
            } else if e.is_internal() {
                3
            } else {
                1
            };
            ExitCode::from(code)
        }
    }
}
