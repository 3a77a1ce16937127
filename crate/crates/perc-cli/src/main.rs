//! `perc`: exact and Monte Carlo analysis of k-independent site percolation
//! on rooted trees.
//!
//! Exit codes: 0 success, 1 internal error, 2 domain/usage error (the
//! message names the violated threshold), 3 audit assertion failure.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{write_csv, write_json, RunContext};
use perc_core::error::PercError;
use perc_core::fission::PercolationModel;
use perc_core::graph::{k_fuzz, FiniteGraph};
use perc_core::lab::{
    bounds_table, cluster_diameter_stats, critical_values, figure_data,
    kernel_bound_audit, minimality_audit, reach_curve, simulate_reach, DiameterMode,
    QuasiMode,
};
use perc_core::line::{BitString, LineLaw};
use perc_core::shearer::{b_sequence, p_shearer_graph, p_shearer_kfuzz, p_shearer_line, xi};
use perc_core::tree::{TreeSpec, TreeView};
use std::path::PathBuf;
use std::process::ExitCode;

/// Truncations beyond this vertex count stay implicit (level-based exact
/// operations keep working; per-vertex operations report a resource error).
const MAX_MATERIALIZED_VERTICES: usize = 1 << 21;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "perc",
    version,
    about = "k-independent site percolation on rooted trees: exact Shearer computations, \
             fission models, moment bounds and audits"
)]
struct Cli {
    /// Master seed (default: $PERC_SEED if set, else 42).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for Monte Carlo subcommands (default: all cores).
    /// Results are bit-identical for a fixed seed regardless of this value.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Model kind: canonical | cutup | minimal | multiplex | iid.
    #[arg(long)]
    model: ModelKindArg,
    /// Dependence range k (canonical, cutup, minimal, multiplex).
    #[arg(long)]
    k: Option<usize>,
    /// Marginal parameter p (canonical, minimal, multiplex, iid).
    #[arg(long)]
    p: Option<f64>,
    /// Block length N (cutup; its parameter is pinned to p_sh of the block).
    #[arg(long)]
    block: Option<usize>,
    /// Tree family: d_ary:D | periodic:M | single_ray | explicit:c0,c1,...
    #[arg(long)]
    tree: String,
    /// Truncation depth.
    #[arg(long)]
    depth: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKindArg {
    Canonical,
    Cutup,
    Minimal,
    Multiplex,
    Iid,
}

#[derive(Args, Clone)]
struct LawArgs {
    /// Law kind: shearer-factor | shearer-truncated | cutup | minimal | iid.
    #[arg(long)]
    kind: LawKindArg,
    /// Dependence range k.
    #[arg(long)]
    k: Option<usize>,
    /// Marginal parameter p.
    #[arg(long)]
    p: Option<f64>,
    /// Segment length (shearer-truncated).
    #[arg(long)]
    len: Option<usize>,
    /// Block length N (cutup).
    #[arg(long)]
    block: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawKindArg {
    ShearerFactor,
    ShearerTruncated,
    Cutup,
    Minimal,
    Iid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiameterModeArg {
    Auto,
    Exhaustive,
    Anchored,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuasiArg {
    Auto,
    Require,
    Skip,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form critical values p_min, p_max for (k, branching number).
    CriticalValues {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        br: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shearer-measure computations on k-fuzzes of lines.
    Shearer {
        #[arg(long)]
        k: usize,
        /// Critical value: closed form on the infinite fuzz, or of the
        /// N-point line when --line is given.
        #[arg(long, conflicts_with_all = ["xi", "b_seq", "p_graph"])]
        p_sh: bool,
        #[arg(long)]
        line: Option<usize>,
        /// Root of h_k(z) = 1-p (requires --p).
        #[arg(long, conflicts_with_all = ["b_seq", "p_graph"])]
        xi: bool,
        /// Emit b_1..b_N and the ratios beta_n (requires --p).
        #[arg(long, value_name = "N", conflicts_with = "p_graph")]
        b_seq: Option<usize>,
        /// Bisect Xi on the k-fuzz of an N-point path (subset algorithm).
        #[arg(long, value_name = "N")]
        p_graph: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Line-process laws: sampling and exact conditional queries.
    Line {
        #[command(flatten)]
        law: LawArgs,
        /// Sample a prefix of this length.
        #[arg(long, value_name = "N")]
        sample: Option<usize>,
        /// Number of sampled streams.
        #[arg(long, default_value_t = 1)]
        streams: u64,
        /// Exact P(first N bits all one).
        #[arg(long, value_name = "N")]
        allones: Option<usize>,
        /// Exact P(next bit = 1 | history), history as a 0/1 string.
        #[arg(long, value_name = "BITS")]
        next_prob: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of P(root connects to the target depth).
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 100_000)]
        replicas: u64,
        /// Emit the whole reach curve (depths 0..=depth) instead of the
        /// single target depth.
        #[arg(long)]
        curve: bool,
        /// Also write one full realization (columns vertex_id, level, bit)
        /// for the given --stream; needs a materializable tree.
        #[arg(long, value_name = "FILE")]
        export_sample: Option<PathBuf>,
        /// Replica index of the exported realization.
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-replica maximum open-cluster diameters.
    Diameters {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 100_000)]
        replicas: u64,
        #[arg(long, value_enum, default_value_t = DiameterModeArg::Auto)]
        mode: DiameterModeArg,
        /// Per-cluster exploration cap in anchored mode.
        #[arg(long, default_value_t = 1 << 20)]
        growth_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First/second moment bounds and the kernel certificate per level.
    Bounds {
        #[command(flatten)]
        model: ModelArgs,
        /// Flow parameter for the second-moment measure
        /// (default: br·(1−1e−3) when the branching number is closed-form).
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Percolation-kernel bound audit (exit 3 on any failed assertion).
    KernelAudit {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4096)]
        pairs: usize,
        #[arg(long, value_enum, default_value_t = QuasiArg::Auto)]
        quasi: QuasiArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive minimality audit of a law against Xi on fuzzed segments
    /// (exit 3 on any failed assertion).
    MinimalityAudit {
        #[command(flatten)]
        law: LawArgs,
        /// Number of line positions (exhaustive; at most 12).
        #[arg(long)]
        positions: usize,
        /// Dependence range of the ambient class (defaults to the law's k).
        #[arg(long)]
        class_k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase-diagram table: k in {0,1,2,3}, branching numbers in [1, 2.5],
    /// plus the corner points ((k+1)/k, p_sh).
    Figure1 {
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .is_err()
        {
            eprintln!("error: worker pool already initialized");
            return ExitCode::from(1);
        }
    }
    let seed = cli.seed.unwrap_or_else(|| {
        std::env::var("PERC_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_SEED)
    });
    match run(cli.command, seed) {
        Ok(code) => code,
        Err(RunError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        // Downstream consumer closed the pipe; not our error.
        Err(RunError::Pipe) => ExitCode::SUCCESS,
        Err(RunError::Internal(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(1)
        }
    }
}

enum RunError {
    Domain(String),
    Pipe,
    Internal(String),
}

impl From<PercError> for RunError {
    fn from(e: PercError) -> Self {
        RunError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            RunError::Pipe
        } else {
            RunError::Internal(e.to_string())
        }
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Internal(e.to_string())
    }
}

fn need<T: Copy>(value: Option<T>, what: &str) -> Result<T, RunError> {
    value.ok_or_else(|| RunError::Domain(format!("missing required parameter {what}")))
}

fn build_law(args: &LawArgs) -> Result<LineLaw, RunError> {
    let law = match args.kind {
        LawKindArg::ShearerFactor => {
            LineLaw::shearer_factor(need(args.k, "--k")?, need(args.p, "--p")?)?
        }
        LawKindArg::ShearerTruncated => LineLaw::shearer_truncated(
            need(args.k, "--k")?,
            need(args.len, "--len")?,
            need(args.p, "--p")?,
        )?,
        LawKindArg::Cutup => LineLaw::cutup(need(args.k, "--k")?, need(args.block, "--block")?)?,
        LawKindArg::Minimal => LineLaw::minimal(need(args.k, "--k")?, need(args.p, "--p")?)?,
        LawKindArg::Iid => LineLaw::iid(need(args.p, "--p")?)?,
    };
    Ok(law)
}

fn law_config(ctx: RunContext, args: &LawArgs, law: &LineLaw) -> RunContext {
    let kind = match args.kind {
        LawKindArg::ShearerFactor => "shearer_factor",
        LawKindArg::ShearerTruncated => "shearer_truncated",
        LawKindArg::Cutup => "cutup",
        LawKindArg::Minimal => "minimal",
        LawKindArg::Iid => "iid",
    };
    let mut ctx = ctx.with("law", kind).with("k", law.k()).with("p", law.marginal_p());
    if let Some(len) = args.len {
        ctx = ctx.with("len", len);
    }
    if let Some(block) = args.block {
        ctx = ctx.with("block", block);
    }
    ctx
}

fn build_model(args: &ModelArgs) -> Result<PercolationModel, RunError> {
    let spec: TreeSpec = args
        .tree
        .parse()
        .map_err(|e: PercError| RunError::Domain(e.to_string()))?;
    let view = TreeView::build(&spec, args.depth, MAX_MATERIALIZED_VERTICES)?;
    let model = match args.model {
        ModelKindArg::Canonical => {
            PercolationModel::canonical(view, need(args.k, "--k")?, need(args.p, "--p")?)?
        }
        ModelKindArg::Cutup => {
            PercolationModel::cutup(view, need(args.k, "--k")?, need(args.block, "--block")?)?
        }
        ModelKindArg::Minimal => {
            PercolationModel::minimal(view, need(args.k, "--k")?, need(args.p, "--p")?)?
        }
        ModelKindArg::Multiplex => {
            PercolationModel::multiplex(view, need(args.k, "--k")?, need(args.p, "--p")?)?
        }
        ModelKindArg::Iid => PercolationModel::iid(view, need(args.p, "--p")?)?,
    };
    Ok(model)
}

fn model_config(ctx: RunContext, args: &ModelArgs, model: &PercolationModel) -> RunContext {
    ctx.with("model", model.spec())
        .with("tree", &args.tree)
        .with("depth", args.depth)
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

fn run(command: Command, seed: u64) -> Result<ExitCode, RunError> {
    match command {
        Command::CriticalValues { k, br, out } => {
            let cv = critical_values(k, br)?;
            let ctx = RunContext::new("critical-values", seed)
                .with("k", k)
                .with("br", br);
            let row = vec![
                cv.k.to_string(),
                fmt(cv.br),
                fmt(cv.p_min),
                fmt(cv.p_max),
                cv.regime.to_string(),
            ];
            println!("{}", row.join(","));
            if out.is_some() {
                write_csv(
                    out.as_deref(),
                    &ctx,
                    &["k", "br", "p_min", "p_max", "regime"],
                    &[row],
                )?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Shearer { k, p_sh, line, xi: want_xi, b_seq, p_graph, p, out } => {
            if want_xi {
                let v = xi(k, need(p, "--p")?)?;
                println!("{}", fmt(v.xi));
            } else if let Some(n) = b_seq {
                let series = b_sequence(k, need(p, "--p")?, n);
                let ctx = RunContext::new("shearer", seed)
                    .with("k", k)
                    .with("p", series.p)
                    .with("b_seq", n);
                let rows: Vec<Vec<String>> = (1..=n)
                    .map(|i| {
                        vec![i.to_string(), fmt(series.b[i - 1]), fmt(series.beta[i - 1])]
                    })
                    .collect();
                write_csv(out.as_deref(), &ctx, &["n", "b", "beta"], &rows)?;
                if out.is_some() {
                    println!("wrote {} rows", rows.len());
                }
            } else if let Some(n) = p_graph {
                let g = k_fuzz(&FiniteGraph::path(n), k);
                println!("{}", fmt(p_shearer_graph(&g)?));
            } else if p_sh {
                let v = match line {
                    Some(n) => p_shearer_line(k, n),
                    None => p_shearer_kfuzz(k),
                };
                println!("{}", fmt(v));
            } else {
                return Err(RunError::Domain(
                    "pick one of --p-sh, --xi, --b-seq, --p-graph".into(),
                ));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Line { law: law_args, sample, streams, allones, next_prob, out } => {
            let law = build_law(&law_args)?;
            let ctx = law_config(RunContext::new("line", seed), &law_args, &law);
            if let Some(n) = sample {
                let rows: Vec<Vec<String>> = (0..streams)
                    .map(|stream| {
                        law.sample_prefix(n, seed, stream)
                            .map(|bits| vec![stream.to_string(), bits.to_string()])
                    })
                    .collect::<Result<_, _>>()?;
                write_csv(out.as_deref(), &ctx.with("sample", n), &["stream", "bits"], &rows)?;
            } else if let Some(n) = allones {
                println!("{}", fmt(law.allones_prob(n)?));
            } else if let Some(history) = next_prob {
                let bits: BitString = history
                    .parse()
                    .map_err(|e: PercError| RunError::Domain(e.to_string()))?;
                println!("{}", fmt(law.next_bit_prob(bits.bits())?));
            } else {
                return Err(RunError::Domain(
                    "pick one of --sample, --allones, --next-prob".into(),
                ));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { model: margs, replicas, curve, export_sample, stream, format, out } => {
            let model = build_model(&margs)?;
            let ctx = model_config(RunContext::new("simulate", seed), &margs, &model)
                .with("replicas", replicas)
                .with("curve", curve);
            if let Some(path) = &export_sample {
                let sample = model.sample(seed, stream)?;
                let tree = model
                    .tree()
                    .as_materialized()
                    .expect("sample() succeeded, so the tree is materialized");
                let rows: Vec<Vec<String>> = (0..tree.vertex_count())
                    .map(|v| {
                        vec![
                            v.to_string(),
                            tree.level(v).to_string(),
                            u8::from(sample.bits[v]).to_string(),
                        ]
                    })
                    .collect();
                let sample_ctx = ctx.clone().with("stream", stream);
                write_csv(
                    Some(path.as_path()),
                    &sample_ctx,
                    &["vertex_id", "level", "bit"],
                    &rows,
                )?;
            }
            let estimates = if curve {
                reach_curve(&model, margs.depth, replicas, seed)?
            } else {
                vec![simulate_reach(&model, margs.depth, replicas, seed)?]
            };
            let last = estimates.last().expect("at least one estimate");
            println!(
                "reach estimate {} (depth {}, 95% CI [{}, {}], replicas {}, seed {})",
                fmt(last.estimate),
                last.depth,
                fmt(last.ci_lo),
                fmt(last.ci_hi),
                replicas,
                seed
            );
            match format {
                FormatArg::Csv => {
                    let rows: Vec<Vec<String>> = estimates
                        .iter()
                        .map(|e| {
                            vec![
                                e.depth.to_string(),
                                fmt(e.estimate),
                                fmt(e.ci_lo),
                                fmt(e.ci_hi),
                            ]
                        })
                        .collect();
                    if out.is_some() {
                        write_csv(
                            out.as_deref(),
                            &ctx,
                            &["depth", "estimate", "ci_lo", "ci_hi"],
                            &rows,
                        )?;
                    }
                }
                FormatArg::Json => {
                    write_json(out.as_deref(), &ctx, serde_json::to_value(&estimates)?)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Diameters { model: margs, replicas, mode, growth_cap, out } => {
            let model = build_model(&margs)?;
            let mode = match mode {
                DiameterModeArg::Auto => None,
                DiameterModeArg::Exhaustive => Some(DiameterMode::Exhaustive),
                DiameterModeArg::Anchored => Some(DiameterMode::Anchored),
            };
            let stats =
                cluster_diameter_stats(&model, margs.depth, replicas, seed, mode, growth_cap)?;
            let ctx = model_config(RunContext::new("diameters", seed), &margs, &model)
                .with("replicas", replicas)
                .with("mode", format!("{:?}", stats.mode).to_lowercase())
                .with("max_diameter", stats.max_diameter)
                .with("truncated_clusters", stats.truncated_clusters);
            println!(
                "max cluster diameter {} over {} replicas ({:?} mode, {} truncated)",
                stats.max_diameter, replicas, stats.mode, stats.truncated_clusters
            );
            let rows: Vec<Vec<String>> = stats
                .histogram
                .iter()
                .map(|(d, c)| vec![d.to_string(), c.to_string()])
                .collect();
            write_csv(out.as_deref(), &ctx, &["diameter", "replicas"], &rows)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { model: margs, lambda, format, out } => {
            let model = build_model(&margs)?;
            let report = bounds_table(&model, margs.depth, lambda)?;
            let mut ctx = model_config(RunContext::new("bounds", seed), &margs, &model);
            if let Some(l) = report.lambda {
                ctx = ctx.with("lambda", l);
            }
            if let Some(cert) = &report.certificate {
                println!(
                    "certificate: alpha={} C={} br={} kernel_bound_verified={} percolates={}",
                    fmt(cert.alpha),
                    fmt(cert.c),
                    cert.br.map_or("unknown".into(), fmt),
                    cert.kernel_bound_verified,
                    cert.percolates.map_or("unknown".into(), |b| b.to_string()),
                );
            } else {
                println!("certificate: none (no exponential kernel envelope for this model)");
            }
            match format {
                FormatArg::Csv => {
                    let rows: Vec<Vec<String>> = report
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.depth.to_string(),
                                fmt(r.level_size),
                                fmt(r.first_moment),
                                fmt(r.first_moment_generic),
                                r.second_moment.map_or(String::new(), fmt),
                                fmt(r.exact_reach),
                            ]
                        })
                        .collect();
                    write_csv(
                        out.as_deref(),
                        &ctx,
                        &[
                            "depth",
                            "level_size",
                            "first_moment",
                            "first_moment_generic",
                            "second_moment",
                            "exact_reach",
                        ],
                        &rows,
                    )?;
                }
                FormatArg::Json => {
                    write_json(out.as_deref(), &ctx, serde_json::to_value(&report)?)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::KernelAudit { model: margs, pairs, quasi, out } => {
            let model = build_model(&margs)?;
            let quasi = match quasi {
                QuasiArg::Auto => QuasiMode::Auto,
                QuasiArg::Require => QuasiMode::Require,
                QuasiArg::Skip => QuasiMode::Skip,
            };
            let report = kernel_bound_audit(&model, margs.depth, pairs, quasi)?;
            let ctx = model_config(RunContext::new("kernel-audit", seed), &margs, &model)
                .with("pairs", report.pairs.len())
                .with("quasi_applicable", report.quasi_applicable);
            println!(
                "kernel audit: {} pairs, {} failures, worst margin {}, quasi {}",
                report.pairs.len(),
                report.failures,
                fmt(report.worst_margin),
                if report.quasi_applicable { "applicable" } else { "inapplicable" }
            );
            write_json(out.as_deref(), &ctx, serde_json::to_value(&report)?)?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::MinimalityAudit { law: law_args, positions, class_k, out } => {
            let law = build_law(&law_args)?;
            let k = class_k.unwrap_or(law.k());
            let report = minimality_audit(&law, k, positions)?;
            let ctx = law_config(RunContext::new("minimality-audit", seed), &law_args, &law)
                .with("class_k", k)
                .with("positions", positions);
            println!(
                "minimality audit: {} subsets, {} conditionals, {} failures, \
                 worst slack {}, equality gap {}",
                report.subsets_checked,
                report.conditionals_checked,
                report.failures,
                fmt(report.worst_slack),
                fmt(report.max_equality_gap)
            );
            write_json(out.as_deref(), &ctx, serde_json::to_value(&report)?)?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Figure1 { step, out } => {
            if !(step > 0.0 && step <= 1.5) {
                return Err(RunError::Domain(format!(
                    "grid step must lie in (0, 1.5], got {step}"
                )));
            }
            let steps = (1.5 / step).round() as u32;
            let grid: Vec<f64> = (0..=steps).map(|i| 1.0 + i as f64 * step).collect();
            let rows = figure_data(&[0, 1, 2, 3], &grid)?;
            let ctx = RunContext::new("figure1", seed)
                .with("k_set", "0,1,2,3")
                .with("br_min", 1.0)
                .with("br_max", 1.0 + steps as f64 * step)
                .with("step", step);
            let csv_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        fmt(r.br),
                        fmt(r.p_min),
                        fmt(r.p_max),
                        r.regime.to_string(),
                    ]
                })
                .collect();
            write_csv(
                out.as_deref(),
                &ctx,
                &["k", "br", "p_min", "p_max", "regime"],
                &csv_rows,
            )?;
            if out.is_some() {
                println!("wrote {} rows", csv_rows.len());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
