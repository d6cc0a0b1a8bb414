//! `gmax`: command-line laboratory for thin-triangle bases, Perron
//! trees, and maximal-function level sets, all in exact rational
//! arithmetic.
//!
//! Exit codes: 0 success, 1 evidence failure, 2 usage/config error.

use clap::{Args, Parser, Subcommand};
use gmax_cli::config::ExperimentConfig;
use gmax_cli::persist::{tree_to_text, TreeDocument};
use gmax_cli::pipeline::run_phase_diagram;
use gmax_cli::svg;
use gmax_cli::verify::run_verify_suite;
use gmax_core::basis::{ab_basis, build_triangle_family, TriangleFamily};
use gmax_core::geom::{Point, PolygonUnion};
use gmax_core::maximal::{brute_force_maxfn, level_set_from_perron, EnumerationConfig};
use gmax_core::perron::{
    choose_start, choose_start_adaptive, default_start_candidates, NSearch, PerronTree,
};
use gmax_core::scalar::{decimal_12, format_scalar, parse_scalar, rat, int};
use gmax_core::seq::tau_truncated;
use gmax_core::Scalar;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gmax", version, about = "exact thin-triangle laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated comparability functional of a tangent sequence.
    Tau(TauArgs),
    /// Build a Perron tree for a basis and print its exact ledger.
    Perron(PerronArgs),
    /// Run every verification campaign under the configured seed.
    Verify(RunArgs),
    /// Sweep the (a, b) grid and attach evidence to every cell.
    Phase(RunArgs),
    /// Evaluate the maximal function at a point by brute-force enumeration.
    Maxfn(MaxfnArgs),
    /// Render a construction to SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct TauArgs {
    /// Power-law exponent b for t_k = scale / k^b, as "p/q".
    #[arg(long, default_value = "1")]
    exponent: String,
    /// "quarter-pi" or an exact rational scale.
    #[arg(long, default_value = "quarter-pi")]
    scale: String,
    /// Truncation depth K.
    #[arg(long, default_value_t = 256)]
    k: usize,
}

#[derive(Args)]
struct PerronArgs {
    /// Eccentricity exponent a, as "p/q".
    #[arg(long)]
    a: String,
    /// Tangent exponent b, as "p/q".
    #[arg(long)]
    b: String,
    /// Bisection depth n (2^n triangles).
    #[arg(long)]
    n: u32,
    /// "optimized" (per-window) or a fixed "p/q".
    #[arg(long, default_value = "optimized")]
    alpha: String,
    /// Number of tangent terms to build.
    #[arg(long, default_value_t = 128)]
    k_max: u64,
    /// Write the tree document into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// TOML config path; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MaxfnArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    n: u32,
    /// Evaluation point, exact rationals.
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long, default_value_t = 128)]
    k_max: u64,
}

#[derive(Args)]
struct RenderArgs {
    /// One of: tree, family, certificate.
    #[arg(long)]
    what: String,
    #[arg(long, default_value = "1")]
    a: String,
    #[arg(long, default_value = "1")]
    b: String,
    #[arg(long, default_value_t = 3)]
    n: u32,
    #[arg(long, default_value_t = 128)]
    k_max: u64,
    /// Output SVG path.
    #[arg(long)]
    out: PathBuf,
}

/// Errors carrying their intended process exit code.
enum Failure {
    Usage(String),
    Evidence(String),
}

type Run = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn evidence<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Evidence(e.to_string())
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_toml(&text).map_err(usage)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.output_dir = out.display().to_string();
    }
    Ok(cfg)
}

fn write_out(dir: &Path, name: &str, content: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn build_family(a: &str, b: &str, k_max: u64) -> Result<(Scalar, Scalar, TriangleFamily), Failure> {
    let a = parse_scalar(a).map_err(usage)?;
    let b = parse_scalar(b).map_err(usage)?;
    let fam = build_triangle_family(&ab_basis(&a, &b, 1, k_max)).map_err(evidence)?;
    Ok((a, b, fam))
}

fn search(fam: &TriangleFamily, n: u32, alpha: &str) -> Result<NSearch, Failure> {
    let cands = default_start_candidates(fam.tvals.len(), n);
    if alpha == "optimized" {
        choose_start_adaptive(fam, n, &cands).map_err(evidence)
    } else {
        let a = parse_scalar(alpha).map_err(usage)?;
        choose_start(fam, &a, n, &cands).map_err(evidence)
    }
}

fn print_tree_ledger(tree: &PerronTree) {
    let ratio = &tree.area_x / &tree.area_sum;
    println!("alpha         {}", format_scalar(&tree.scale.alpha));
    println!("n             {}", tree.scale.n);
    println!("start         {}", tree.scale.start);
    println!("triangles     {}", tree.triangles.len());
    println!(
        "tau(slice)    {} ~ {}",
        format_scalar(&tree.tau_slice.value),
        decimal_12(&tree.tau_slice.value)
    );
    println!(
        "area |X|      {} ~ {}",
        format_scalar(&tree.area_x),
        decimal_12(&tree.area_x)
    );
    println!(
        "sum |delta_k| {} ~ {}",
        format_scalar(&tree.area_sum),
        decimal_12(&tree.area_sum)
    );
    println!("|X| / sum     {} ~ {}", format_scalar(&ratio), decimal_12(&ratio));
    println!(
        "epsilon bound {} ~ {}",
        format_scalar(&tree.epsilon_bound),
        decimal_12(&tree.epsilon_bound)
    );
}

fn cmd_tau(args: &TauArgs) -> Run {
    use gmax_core::seq::{eval_sequence, ScaleFactor, SequenceSpec};
    let exponent = parse_scalar(&args.exponent).map_err(usage)?;
    let scale = if args.scale == "quarter-pi" {
        ScaleFactor::QuarterPi
    } else {
        ScaleFactor::Rational(parse_scalar(&args.scale).map_err(usage)?)
    };
    let spec = SequenceSpec::power_law(exponent, scale, 1, args.k as u64);
    let values = eval_sequence(&spec).map_err(evidence)?;
    let est = tau_truncated(&values.values, args.k).map_err(evidence)?;
    println!(
        "tauterms {} truncation {}",
        values.values.len(),
        est.truncation
    );
    println!("tau {} ~ {}", format_scalar(&est.value), decimal_12(&est.value));
    println!("argmax k={} l={}", est.argmax.0, est.argmax.1);
    Ok(())
}

fn cmd_perron(args: &PerronArgs) -> Run {
    let (_, _, fam) = build_family(&args.a, &args.b, args.k_max)?;
    let found = search(&fam, args.n, &args.alpha)?;
    for c in &found.transcript {
        match &c.outcome {
            Ok(()) => println!("start {}: ok", c.start),
            Err(e) => println!("start {}: rejected ({e})", c.start),
        }
    }
    print_tree_ledger(&found.tree);
    if let Some(dir) = &args.out {
        let doc = TreeDocument::from(&found.tree);
        write_out(dir, "tree.txt", &tree_to_text(&doc))?;
        println!("wrote {}", dir.join("tree.txt").display());
    }
    Ok(())
}

fn cmd_verify(args: &RunArgs) -> Run {
    let cfg = load_config(args)?;
    let report = run_verify_suite(&cfg);
    print!("{}", report.text());
    write_out(Path::new(&cfg.output_dir), "verify.txt", &report.text())?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Evidence("verification failures".into()))
    }
}

fn cmd_phase(args: &RunArgs) -> Run {
    let cfg = load_config(args)?;
    let report = run_phase_diagram(&cfg).map_err(usage)?;
    print!("{}", report.text());
    let dir = Path::new(&cfg.output_dir);
    write_out(dir, "phase.txt", &report.text())?;
    write_out(dir, "phase_cells.csv", &report.cells_csv())?;
    write_out(dir, "phase_norms.csv", &report.norms_csv())?;
    if report.failed_cells() == 0 {
        Ok(())
    } else {
        Err(Failure::Evidence(format!(
            "{} FAILED cells",
            report.failed_cells()
        )))
    }
}

fn cmd_maxfn(args: &MaxfnArgs) -> Run {
    let (_, _, fam) = build_family(&args.a, &args.b, args.k_max)?;
    let found = search(&fam, args.n, "optimized")?;
    let tree = found.tree;
    let x = Point::new(
        parse_scalar(&args.x).map_err(usage)?,
        parse_scalar(&args.y).map_err(usage)?,
    );
    let union = PolygonUnion::new(tree.triangles.clone());
    let config = EnumerationConfig {
        k_lo: tree.scale.start,
        k_hi: tree.scale.start + tree.triangles.len(),
        dilations: vec![int(1), rat(1, 2), rat(1, 4)],
    };
    let witness = brute_force_maxfn(&x, &union, &fam, &config).map_err(evidence)?;
    println!(
        "point ({}, {})",
        format_scalar(&x.x),
        format_scalar(&x.y)
    );
    println!("generator {}", witness.element.generator);
    println!("dilation {}", format_scalar(&witness.element.dilation));
    println!(
        "value {} ~ {}",
        format_scalar(&witness.value),
        decimal_12(&witness.value)
    );
    Ok(())
}

fn cmd_render(args: &RenderArgs) -> Run {
    let (_, _, fam) = build_family(&args.a, &args.b, args.k_max)?;
    let document = match args.what.as_str() {
        "family" => svg::render_family(&fam, 8).map_err(evidence)?,
        "tree" => {
            let found = search(&fam, args.n, "optimized")?;
            svg::render_tree(&found.tree).map_err(evidence)?
        }
        "certificate" => {
            let found = search(&fam, args.n, "optimized")?;
            // gap-domination constant strictly above the observed ratios
            let tree = &found.tree;
            let worst = (0..tree.triangles.len())
                .map(|k| {
                    &fam.evals[tree.scale.start + k]
                        / (&tree.tvals[k] - &tree.tvals[k + 1])
                })
                .max()
                .ok_or_else(|| usage("empty tree"))?;
            let mu0 = int(2) * worst;
            let cert = level_set_from_perron(tree, &fam, &mu0).map_err(evidence)?;
            svg::render_certificate(&cert).map_err(evidence)?
        }
        other => return Err(usage(format!("unknown render target {other:?}"))),
    };
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| usage(format!("{e}")))?;
        }
    }
    std::fs::write(&args.out, document).map_err(|e| usage(format!("{e}")))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Tau(args) => cmd_tau(args),
        Command::Perron(args) => cmd_perron(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Phase(args) => cmd_phase(args),
        Command::Maxfn(args) => cmd_maxfn(args),
        Command::Render(args) => cmd_render(args),
    };
    match result {
        Ok(()) => ExitCode::from(0),
        Err(Failure::Evidence(msg)) => {
            eprintln!("evidence failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
