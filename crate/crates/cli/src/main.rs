use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzhyper::chains::{chain_profile, ProfileConfig};
use fuzzhyper::config::Budget;
use fuzzhyper::dynamics::dynamics_profile;
use fuzzhyper::fuzzy::FuzzyMetric;
use fuzzhyper::instances::Instance;
use fuzzhyper::io::{load_fuzzy, load_space};
use fuzzhyper::metric::hausdorff;
use fuzzhyper::oracle::{sampled_graph_distance, skorokhod_grid};
use fuzzhyper::rational::{self, parse_q, q};
use fuzzhyper::report::{AnalysisReport, Check, Envelope};
use fuzzhyper::shadowing::{
    all_chains_shadowed, certify_example, endograph_shadowing_harness, example_connected_chain,
    example_discrete_chain, shadowing_equivalence_harness, sweep_eps,
};
use fuzzhyper::{par, Error, StepFuzzySet, Q};
use serde_json::json;

/// Exact checkers for fuzzy hyperspace dynamics on finite metric spaces.
#[derive(Parser)]
#[command(name = "fuzzhyper", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: reports default to JSON, `metric` to the bare value.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two fuzzy sets read from JSON files.
    Metric {
        /// inf, skorokhod, send or end.
        #[arg(long, default_value = "end")]
        metric: String,
        u: PathBuf,
        v: PathBuf,
        /// Space shared by both files (otherwise each file embeds it).
        #[arg(long)]
        space: Option<PathBuf>,
        /// Also print a brute-force value.
        #[arg(long)]
        oracle: bool,
    },
    /// Chain recurrence, transitivity and mixing of a bundled system and its extensions.
    Chains {
        instance: String,
        /// Evaluate at this delta instead of sweeping representatives.
        #[arg(long, value_parser = parse_rational)]
        delta: Option<Q>,
        /// Fuzzy grid resolution.
        #[arg(long, default_value_t = 2)]
        grid: u32,
        /// Largest product arity.
        #[arg(long, default_value_t = 3)]
        max_product: usize,
    },
    /// Shadowing profiles, the tracker and non-shadowing certificates.
    Shadowing {
        instance: String,
        #[arg(long, value_parser = parse_rational)]
        delta: Option<Q>,
        #[arg(long, value_parser = parse_rational)]
        eps: Option<Q>,
        /// Certificate threshold: no candidate may come this close along the chain.
        #[arg(long, value_parser = parse_rational)]
        eps0: Option<Q>,
        /// Certify the bundled example chain with this parameter instead of comparing profiles.
        #[arg(long)]
        k: Option<i128>,
        /// Certificate grid step.
        #[arg(long, value_parser = parse_rational, default_value = "1/64")]
        h: Q,
        /// Also compare against a `d_inf` fuzzy grid of this resolution.
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Contractive and expansive classification of a system and its extensions.
    Dynamics {
        instance: String,
        #[arg(long, default_value_t = 2)]
        grid: u32,
        /// Scale for the expanding check.
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        eps: Q,
    },
    /// Every acceptance criterion in order.
    PaperSuite,
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

enum Outcome {
    Report(AnalysisReport),
    Value(serde_json::Value, String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        par::set_sequential(true);
    }
    let budget = Budget::from_env();
    let start = Instant::now();
    match run(&cli, &budget) {
        Ok(Outcome::Value(v, text)) => {
            let out = match cli.format {
                Some(Format::Json) => v.to_string(),
                _ => text,
            };
            emit(&out);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Report(report)) => {
            let code = if report.partial {
                2
            } else if report.all_passed() {
                0
            } else {
                1
            };
            let env = Envelope {
                report,
                wall_time_ms: start.elapsed().as_millis(),
            };
            let out = match cli.format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&env).expect("report serializes"),
                Format::Md => format!(
                    "{}\nwall time: {} ms",
                    env.report.to_markdown(),
                    env.wall_time_ms
                ),
            };
            emit(&out);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn run(cli: &Cli, budget: &Budget) -> fuzzhyper::Result<Outcome> {
    match &cli.command {
        Command::Metric {
            metric,
            u,
            v,
            space,
            oracle,
        } => cmd_metric(metric, u, v, space.as_ref(), *oracle),
        Command::Chains {
            instance,
            delta,
            grid,
            max_product,
        } => {
            let inst = Instance::parse(instance)?;
            let sys = inst.build()?;
            if let Some(d) = delta {
                positive(*d, "delta")?;
            }
            let config = ProfileConfig {
                budget: *budget,
                max_product: *max_product,
                grids: vec![*grid],
                deltas: delta.map(|d| vec![d]),
            };
            let mut rep = chain_profile(&sys, &config);
            rep.instance = Some(inst.descriptor());
            Ok(Outcome::Report(rep))
        }
        Command::Shadowing {
            instance,
            delta,
            eps,
            eps0,
            k,
            h,
            grid,
        } => {
            let inst = Instance::parse(instance)?;
            cmd_shadowing(inst, *delta, *eps, *eps0, *k, *h, *grid, budget).map(Outcome::Report)
        }
        Command::Dynamics {
            instance,
            grid,
            eps,
        } => {
            let inst = Instance::parse(instance)?;
            positive(*eps, "eps")?;
            let mut rep = dynamics_profile(&inst.build()?, *grid, *eps, budget.points);
            rep.instance = Some(inst.descriptor());
            Ok(Outcome::Report(rep))
        }
        Command::PaperSuite => Ok(Outcome::Report(fuzzhyper::suite::run_all(budget))),
    }
}

fn positive(x: Q, what: &str) -> fuzzhyper::Result<()> {
    if x <= Q::from_integer(0) {
        return Err(Error::Domain(format!("{what} must be positive, got {x}")));
    }
    Ok(())
}

fn cmd_metric(
    metric: &str,
    u: &Path,
    v: &Path,
    space: Option<&PathBuf>,
    oracle: bool,
) -> fuzzhyper::Result<Outcome> {
    let metric = FuzzyMetric::parse(metric)?;
    let space = space.map(|p| load_space(p).map(Arc::new)).transpose()?;
    let u = load_fuzzy(u, space.as_ref())?;
    let v = load_fuzzy(v, space.as_ref().or(Some(u.space())))?;
    let value = metric.eval(&u, &v)?;
    let mut out = json!({"metric": metric.name(), "value": rational::to_json(&value)});
    let mut text = value.to_string();
    if oracle {
        let (method, approx) = brute_force(metric, &u, &v);
        out["oracle"] = json!({"method": method, "value": rational::to_json(&approx)});
        text.push_str(&format!("\noracle ({method}): {approx}"));
    }
    Ok(Outcome::Value(out, text))
}

/// Reference value from a slow method; exact for sets with memberships in multiples of 1/64.
fn brute_force(metric: FuzzyMetric, u: &StepFuzzySet, v: &StepFuzzySet) -> (&'static str, Q) {
    match metric {
        FuzzyMetric::End => (
            "sampled endographs, step 1/64",
            sampled_graph_distance(u, v, 64, false),
        ),
        FuzzyMetric::Send => (
            "sampled sendographs, step 1/64",
            sampled_graph_distance(u, v, 64, true),
        ),
        FuzzyMetric::Skorokhod => (
            "piecewise linear alignments, grid 1/64",
            skorokhod_grid(u, v, 64),
        ),
        FuzzyMetric::Inf => {
            let mut alphas: Vec<Q> = (1..=64).map(|i| q(i, 64)).collect();
            alphas.extend(u.breakpoints());
            alphas.extend(v.breakpoints());
            let d = alphas
                .into_iter()
                .map(|a| hausdorff(u.space(), &u.level(a).unwrap(), &v.level(a).unwrap()).unwrap())
                .max()
                .unwrap();
            ("levels at multiples of 1/64 and all breakpoints", d)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_shadowing(
    inst: Instance,
    delta: Option<Q>,
    eps: Option<Q>,
    eps0: Option<Q>,
    k: Option<i128>,
    h: Q,
    grid: Option<u32>,
    budget: &Budget,
) -> fuzzhyper::Result<AnalysisReport> {
    for (x, what) in [
        (delta, "delta"),
        (eps, "eps"),
        (eps0, "eps0"),
        (Some(h), "h"),
    ] {
        if let Some(x) = x {
            positive(x, what)?;
        }
    }
    let sys = inst.build()?;
    let eps_list = match eps {
        Some(e) => vec![e],
        None => sweep_eps(sys.space()),
    };
    // A certificate run skips the profile comparison, which is slow on the dyadic lines.
    let mut rep = if k.is_some() {
        let mut r = AnalysisReport::new("shadowing");
        r.parameters = json!({"k": k, "eps0": rational::to_json(&eps0.unwrap_or_else(|| q(1, 5))), "h": rational::to_json(&h)});
        r
    } else {
        shadowing_equivalence_harness(&sys, &eps_list, grid, budget)
    };
    rep.suite = "shadowing".into();
    rep.instance = Some(inst.descriptor());
    if let (Some(d), Some(e)) = (delta, eps) {
        let v = all_chains_shadowed(&sys, d, e, budget.states)?;
        let s = sys.space();
        rep.rows.push(json!({
            "tracker_delta": rational::to_json(&d),
            "tracker_eps": rational::to_json(&e),
            "all_chains_shadowed": v.holds,
            "counterexample": v.counterexample.map(|c| c.points.iter().map(|&p| s.label(p).to_string()).collect::<Vec<_>>()),
            "states": v.states,
        }));
    }
    if eps0.is_none() && k.is_none() {
        return Ok(rep);
    }
    let eps0 = eps0.unwrap_or_else(|| q(1, 5));
    let example = match (inst, k) {
        (Instance::Identity2, k) => Some(example_discrete_chain(k.unwrap_or(8))?),
        (Instance::DyadicLine(n), k) => {
            let k = k.unwrap_or(2 * (n as i128 + 1));
            if k != 2 * (n as i128 + 1) {
                return Err(Error::Domain(format!(
                    "dyadic_line({n}) carries the example chain for k = {}",
                    2 * (n + 1)
                )));
            }
            Some(example_connected_chain(k)?)
        }
        (_, Some(_)) => {
            return Err(Error::Domain(
                "--k applies to identity2 and dyadic_line(n) only".into(),
            ))
        }
        (_, None) => None,
    };
    match example {
        Some(ex) => {
            let k = ex.chain.length() as i128 * 2 + 2;
            let cert = certify_example(&ex, eps0, h, budget)?;
            rep.checks.push(Check::witness(
                format!("certificate-k{k}"),
                "no fuzzy set on the candidate support eps0-shadows the example chain",
                cert.certified(),
                cert.to_json(),
            ));
            if cert.partial {
                rep.notes
                    .push("candidates are restricted to the truncated support".into());
            }
        }
        None => {
            let deltas = delta
                .map(|d| vec![d])
                .unwrap_or_else(|| vec![q(1, 2), q(1, 3)]);
            let e = endograph_shadowing_harness(&sys, eps0, &deltas, h, budget);
            rep.partial |= e.partial;
            rep.checks.extend(e.checks);
            rep.rows.extend(e.rows);
            rep.notes.extend(e.notes);
        }
    }
    Ok(rep)
}
