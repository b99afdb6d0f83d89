use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ungarian::experiments::{run, with_threads, write_outputs, ExperimentConfig, Family, Mode};
use ungarian::plot::{write_permutation_svg, Panel, PlotStyle};
use ungarian::sim::Executor;
use ungarian::verify::{run_suites, Status, Suite, VerifyOptions};
use ungarian::weak::Permutation;
use ungarian::{Error, Result};

/// Exact and Monte Carlo absorption times of Ungarian Markov chains.
#[derive(Parser)]
#[command(name = "ungar", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact expected absorption time from the top element.
    Exact(ExactArgs),
    /// Monte Carlo estimate of the absorption time.
    Simulate(SimulateArgs),
    /// Last-passage percolation with geometric weights.
    Lpp(LppArgs),
    /// Run verification suites and report pass/fail per case.
    Verify(VerifyArgs),
    /// Plot permutations as SVG.
    Plot(PlotArgs),
    /// Run an experiment described by a TOML config file.
    Run(RunArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// weak, tamari, nu-tamari, cambrian-A, cambrian-B, cambrian-D,
    /// cambrian-I2, J-of-poset, rectangle-lpp, custom-file, chain
    #[arg(long)]
    family: Family,
    /// Size or rank
    #[arg(long)]
    n: Option<usize>,
    /// m of I2(m)
    #[arg(long)]
    m: Option<usize>,
    /// Coxeter element as a word, e.g. s2s1s3
    #[arg(long)]
    c: Option<String>,
    /// nu as an N/E string
    #[arg(long)]
    nu: Option<String>,
    /// Poset or lattice file (element count, then one `a b` relation per line)
    #[arg(long)]
    poset: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// "a/b" for exact rational arithmetic, a decimal for floats
    #[arg(long, default_value = "1/2")]
    p: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON record here
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the JSON record instead of a summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Use the recursive solver instead of the linear one
    #[arg(long)]
    recursive: bool,
    #[arg(long)]
    exact_cap: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TrialArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Worker threads; never changes the output
    #[arg(long)]
    threads: Option<usize>,
    /// Per-trial CSV table
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Include wall time in the JSON record
    #[arg(long)]
    record_runtime: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    trials: TrialArgs,
    /// Times at which trial 0 is recorded, e.g. 0,200,400
    #[arg(long, value_delimiter = ',')]
    snapshots: Vec<u64>,
    #[arg(long)]
    step_cap: Option<u64>,
    /// CSV trace of the snapshots
    #[arg(long)]
    trace: Option<PathBuf>,
    /// SVG plot of the snapshots
    #[arg(long)]
    plot: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct LppArgs {
    /// Rectangle sides; otherwise --poset or a random poset of size --n
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    poset: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "1/2")]
    p: String,
    #[command(flatten)]
    trials: TrialArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// spine, galois, solvers, cambrian, nu-tamari or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Skip lattices larger than this (for nu-tamari: longest nu)
    #[arg(long, default_value_t = 2000)]
    max_size: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PlotArgs {
    /// Permutation in one-line notation, e.g. 3,1,2 (repeat for panels)
    #[arg(long = "perm", required = true)]
    perms: Vec<String>,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 4)]
    columns: usize,
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn base_config(f: FamilyArgs, mode: Mode) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(f.family, mode);
    cfg.n = f.n;
    cfg.m = f.m;
    cfg.c = f.c;
    cfg.nu = f.nu;
    cfg.poset = f.poset;
    cfg.k = f.k;
    cfg.l = f.l;
    cfg.p = f.p;
    cfg
}

fn apply_trials(cfg: &mut ExperimentConfig, t: &TrialArgs) {
    cfg.seed = t.seed;
    cfg.trials = t.trials;
    cfg.csv = t.csv.clone();
    cfg.record_runtime = t.record_runtime;
}

fn execute(cfg: &ExperimentConfig, threads: Option<usize>, json: bool) -> Result<()> {
    let exec = if threads == Some(1) {
        Executor::Sequential
    } else {
        Executor::Parallel
    };
    let (result, art) = with_threads(threads, || run(cfg, exec))??;
    write_outputs(cfg, &result, &art)?;
    if json {
        print!("{}", result.to_json());
    } else {
        print!("{}", result.summary());
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<()> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        args.suite.split(',').map(str::parse).collect::<Result<_>>()?
    };
    let opts = VerifyOptions {
        max_size: args.max_size,
        ..Default::default()
    };
    let outcomes = run_suites(&suites, &opts)?;
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::Skip));
    if args.json {
        println!("{}", serde_json::to_string_pretty(&outcomes).expect("outcomes serialize"));
    } else {
        for o in &outcomes {
            println!("{o}");
        }
        println!("{pass} passed, {fail} failed, {skip} skipped");
    }
    if fail > 0 {
        Err(Error::Verification(format!("{fail} check(s) failed")))
    } else {
        Ok(())
    }
}

fn plot(args: PlotArgs) -> Result<()> {
    let panels = args
        .perms
        .iter()
        .map(|s| {
            let perm: Permutation = s.parse()?;
            Ok(Panel {
                title: perm.to_string(),
                perm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let style = PlotStyle {
        columns: args.columns,
        ..Default::default()
    };
    write_permutation_svg(&args.output, &panels, &style)
}

fn main_inner(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Exact(a) => {
            let mode = if a.recursive { Mode::ExactRecursive } else { Mode::ExactLinear };
            let mut cfg = base_config(a.family, mode);
            cfg.exact_cap = a.exact_cap;
            cfg.output = a.out.output;
            execute(&cfg, None, a.out.json)
        }
        Cmd::Simulate(a) => {
            let mut cfg = base_config(a.family, Mode::Simulate);
            apply_trials(&mut cfg, &a.trials);
            cfg.snapshots = a.snapshots;
            cfg.step_cap = a.step_cap;
            cfg.trace = a.trace;
            cfg.plot = a.plot;
            cfg.output = a.out.output;
            execute(&cfg, a.trials.threads, a.out.json)
        }
        Cmd::Lpp(a) => {
            let family = if a.k.is_some() || a.l.is_some() {
                Family::RectangleLpp
            } else {
                Family::JOfPoset
            };
            let mut cfg = ExperimentConfig::new(family, Mode::Lpp);
            cfg.k = a.k;
            cfg.l = a.l;
            cfg.poset = a.poset;
            cfg.n = a.n;
            cfg.p = a.p;
            apply_trials(&mut cfg, &a.trials);
            cfg.output = a.out.output;
            execute(&cfg, a.trials.threads, a.out.json)
        }
        Cmd::Verify(a) => verify(a),
        Cmd::Plot(a) => plot(a),
        Cmd::Run(a) => {
            let text = std::fs::read_to_string(&a.config)
                .map_err(|e| Error::Io(format!("{}: {e}", a.config.display())))?;
            let cfg = ExperimentConfig::from_toml(&text)?;
            execute(&cfg, a.threads, a.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let class = e.class();
            let record = serde_json::json!({
                "error": { "class": class.as_str(), "message": e.to_string() }
            });
            eprintln!("{record}");
            ExitCode::from(class.exit_code() as u8)
        }
    }
}
