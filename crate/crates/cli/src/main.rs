//! `fairassort`: generate instances, solve them and run fairness sweeps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fairassort::harness::{
    self, gen_attractive, gen_synthetic, gen_two_group, AttractiveSpec, RatingsSpec, SweepConfig, SweepResult,
    SyntheticSpec, TwoGroupSpec,
};
use fairassort::{
    oracle_dispatch, solve, DualMatrix, Error, Instance, OracleMethod, SolverConfig, SolverMethod,
};

#[derive(Parser)]
#[command(name = "fairassort", version, about = "Fair assortment planning under the MNL choice model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic instances.
    Gen(GenArgs),
    /// Build an instance from a ratings file.
    Ingest(IngestArgs),
    /// Solve one instance and print the report as JSON.
    Solve(SolveArgs),
    /// Run a single separation-oracle call.
    Oracle(OracleArgs),
    /// Solve instances over a grid of delta values.
    Sweep(SweepArgs),
    /// Render a saved sweep as a table.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// n = 10, K = 5, r ~ U[0, 1], theta ~ U[0, 0.5], w = exp(beta r + theta), q = w.
    PriceSensitive,
    /// n = 4, K = 2, one item per (high/low quality, high/low revenue) pair.
    TwoGroup,
    /// n = 10, K = 3, `--attractive` items with a larger theta.
    Attractive,
}

#[derive(Args)]
struct PresetArgs {
    #[arg(long, value_enum, default_value = "price-sensitive")]
    preset: Preset,
    /// Price sensitivity in w = exp(beta r + theta).
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 1)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of highly attractive items (attractive preset).
    #[arg(long, default_value_t = 1)]
    attractive: usize,
    /// Override the item count.
    #[arg(long)]
    n: Option<usize>,
    /// Override the assortment size limit.
    #[arg(short = 'k', long = "capacity")]
    k: Option<usize>,
}

impl PresetArgs {
    fn instances(&self, delta: f64) -> Result<Vec<Instance>, Error> {
        match self.preset {
            Preset::PriceSensitive => {
                let mut spec = SyntheticSpec::price_sensitive(self.beta, self.instances, self.seed);
                spec.delta = delta;
                spec.n = self.n.unwrap_or(spec.n);
                spec.k = self.k.unwrap_or(spec.k);
                gen_synthetic(&spec)
            }
            Preset::TwoGroup => (0..self.instances as u64)
                .map(|i| {
                    let mut spec = TwoGroupSpec::quadrants(self.seed.wrapping_add(i));
                    spec.delta = delta;
                    spec.beta = self.beta;
                    spec.n = self.n.unwrap_or(spec.n);
                    spec.k = self.k.unwrap_or(spec.k);
                    gen_two_group(&spec)
                })
                .collect(),
            Preset::Attractive => (0..self.instances as u64)
                .map(|i| {
                    gen_attractive(&AttractiveSpec {
                        n: self.n.unwrap_or(10),
                        k: self.k.unwrap_or(3),
                        m: self.attractive,
                        delta,
                        beta: self.beta,
                        seed: self.seed.wrapping_add(i),
                    })
                })
                .collect(),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    preset: PresetArgs,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Directory for `instance-NNN.json` files.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["ratings", "stand_in"])))]
struct IngestArgs {
    /// Rows of `user item rating [...]`.
    #[arg(long)]
    ratings: Option<PathBuf>,
    /// Use a generated ratings file with averages U[3.14, 4.09] from this seed.
    #[arg(long, value_name = "SEED")]
    stand_in: Option<u64>,
    /// Field separator; whitespace when omitted. `tab` is accepted.
    #[arg(long)]
    delimiter: Option<String>,
    /// Pipe-delimited item metadata with genre flags.
    #[arg(long, requires = "genre")]
    items: Option<PathBuf>,
    #[arg(long, requires = "items")]
    genre: Option<String>,
    #[arg(long, default_value_t = 5)]
    min_raters: usize,
    #[arg(long, default_value_t = 3.0)]
    min_avg: f64,
    #[arg(long, default_value_t = 20)]
    top_n: usize,
    /// Weight per unit of average rating.
    #[arg(long, default_value_t = 0.05)]
    scale: f64,
    #[arg(short = 'k', long = "capacity", default_value_t = 5)]
    k: usize,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value = "colgen")]
    method: String,
    /// auto, brute, exact, half, uniform-half, ptas[:eps] or fptas[:eps].
    #[arg(long, default_value = "auto")]
    oracle: String,
    /// Ellipsoid iteration cap.
    #[arg(long, default_value_t = 10_000)]
    t_max: usize,
    /// Compare against enumeration when there are at most this many sets.
    #[arg(long, default_value_t = 1_000)]
    contract_cap: u64,
    /// Report zero wall time so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, Error> {
        let mut cfg = SolverConfig::default()
            .with_method(self.method.parse::<SolverMethod>()?)
            .with_oracle(self.oracle.parse::<OracleMethod>()?);
        cfg.ellipsoid.t_max = self.t_max;
        cfg.contract_cap = self.contract_cap;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Override the instance's delta.
    #[arg(long)]
    delta: Option<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    /// `zero`, or a JSON file holding an n x n matrix.
    #[arg(long, default_value = "zero")]
    z: String,
    #[arg(long, default_value = "auto")]
    method: String,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    preset: PresetArgs,
    /// Solve these instance files instead of generating a preset.
    #[arg(long, num_args = 1..)]
    instance: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "0,0.2,0.4,0.6,0.8,1")]
    deltas: Vec<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    /// CSV of per-delta means.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Full result, readable by `report`.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Sweep result written by `sweep --json`.
    #[arg(long)]
    sweep: PathBuf,
    /// Also list mean per-item outcomes.
    #[arg(long)]
    items: bool,
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Error> {
    Instance::from_json(&read(path)?)
}

fn gen(args: GenArgs) -> Result<(), Error> {
    let insts = args.preset.instances(args.delta)?;
    fs::create_dir_all(&args.out_dir)?;
    for (i, inst) in insts.iter().enumerate() {
        inst.save(args.out_dir.join(format!("instance-{i:03}.json")))?;
    }
    println!("wrote {} instance(s) to {}", insts.len(), args.out_dir.display());
    Ok(())
}

fn ingest(args: IngestArgs) -> Result<(), Error> {
    let delimiter = match args.delimiter.as_deref() {
        None => None,
        Some("tab") | Some("\\t") => Some('\t'),
        Some(s) if s.chars().count() == 1 => s.chars().next(),
        Some(s) => return Err(Error::Input(format!("delimiter must be one character, got '{s}'"))),
    };
    let spec = RatingsSpec {
        min_raters: args.min_raters,
        min_avg: args.min_avg,
        top_n: args.top_n,
        scale: args.scale,
        k: args.k,
        delta: args.delta,
        delimiter,
    };
    let inst = match (&args.ratings, args.stand_in) {
        (Some(path), _) => {
            let genre = args.items.as_deref().zip(args.genre.as_deref());
            harness::ingest_ratings(path, &spec, genre)?
        }
        (None, Some(seed)) => {
            let text = harness::stand_in_ratings(30, harness::STAND_IN_GAMMA, seed);
            harness::instance_from_ratings(&text, &RatingsSpec { delimiter: Some('\t'), ..spec }, None)?
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    inst.save(&args.out)?;
    println!("wrote {} items to {}", inst.n(), args.out.display());
    Ok(())
}

fn run_solve(args: SolveArgs) -> Result<(), Error> {
    let mut inst = load(&args.instance)?;
    if let Some(d) = args.delta {
        inst = inst.with_delta(d);
        inst.validate()?;
    }
    let mut report = solve(&inst, &args.solver.config()?)?;
    if args.solver.no_timing {
        report.wall_time_secs = 0.0;
    }
    let text = report.to_json() + "\n";
    match &args.out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_oracle(args: OracleArgs) -> Result<(), Error> {
    let inst = load(&args.instance)?;
    let z = if args.z == "zero" {
        DualMatrix::zeros(inst.n())
    } else {
        serde_json::from_str::<DualMatrix>(&read(Path::new(&args.z))?)?
    };
    if z.n() != inst.n() {
        return Err(Error::Input(format!("z is {}x{} but the instance has {} items", z.n(), z.n(), inst.n())));
    }
    let method = args.method.parse::<OracleMethod>()?;
    let res = oracle_dispatch(&inst, &z, method)?;
    let out = json!({
        "method": method.resolve(&inst).to_string(),
        "set": res.set,
        "value": res.value,
        "intervals": res.stats.intervals,
        "candidates": res.stats.candidates,
        "max_swaps": res.stats.max_swaps,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), Error> {
    let insts = if args.instance.is_empty() {
        args.preset.instances(0.0)?
    } else {
        args.instance.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?
    };
    let cfg = SweepConfig { solver: args.solver.config()?, timing: !args.solver.no_timing };
    let res = harness::delta_sweep(&insts, &args.deltas, &cfg)?;
    if let Some(p) = &args.out {
        write(p, &res.to_csv())?;
    }
    if let Some(p) = &args.json {
        write(p, &(serde_json::to_string_pretty(&res)? + "\n"))?;
    }
    print!("{}", res.to_table());
    Ok(())
}

fn report(args: ReportArgs) -> Result<(), Error> {
    let res: SweepResult = serde_json::from_str(&read(&args.sweep)?)?;
    print!("{}", res.to_table());
    if args.items {
        println!();
        for row in &res.rows {
            let vals: Vec<String> = row.outcomes.iter().map(|v| harness::sweep::sig6(*v)).collect();
            println!("delta {}: {}", harness::sweep::sig6(row.delta), vals.join(" "));
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Numerical(_) | Error::Convergence(_) | Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Ingest(a) => ingest(a),
        Command::Solve(a) => run_solve(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Sweep(a) => sweep(a),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Input("x".into())), 2);
        assert_eq!(exit_code(&Error::Parse { line: 1, msg: "x".into() }), 2);
        assert_eq!(exit_code(&Error::Numerical("x".into())), 3);
        assert_eq!(exit_code(&Error::Convergence("x".into())), 3);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
