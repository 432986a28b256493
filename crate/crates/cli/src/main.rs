mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use lpsym::maxid::{reciprocal_copula_batch, sample_maxid_batch, DEFAULT_ITERATION_CAP};
use lpsym::rng::par_batch;
use lpsym::survival::{copula_batch, sample_survival_batch};
use lpsym::verify::suite::{run_suite, SuiteConfig};
use lpsym::{
    coefficient_table, Dimension, MaxIdSampler, MeasureSpec, PowerParam, RadialLaw, RadialRadonMeasure, RadialSpec,
    RngStream, SurvivalSampler, VpSampler, DEFAULT_SEED,
};

use output::{numbered, CsvWriter};

/// Exact samplers for lp-norm symmetric survival laws, outer power copulas and max-id vectors.
#[derive(Parser, Debug)]
#[command(name = "lpsym", version, about)]
struct Cli {
    /// Worker threads (0 uses every core). Output does not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the mixture coefficient table as JSON.
    Coeffs {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        /// Output path (`-` for standard output).
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Sample the mixing variable V_p (or its level-k law with --level).
    SampleVp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Sample Z with survival function phi(||z||_p).
    SampleSurvival {
        #[command(flatten)]
        common: Common,
        /// `unit`, `clayton:A`, `erlang` or `table:PATH` (CSV with columns u,q).
        #[arg(long, default_value = "unit")]
        radial: RadialSpec,
        /// Append the r, vp and u1..ud draws behind each row.
        #[arg(long)]
        provenance: bool,
    },
    /// Sample the outer power Archimedean copula phi(Z).
    SampleCopula {
        #[command(flatten)]
        common: Common,
        /// `unit`, `clayton:A`, `erlang` or `table:PATH` (CSV with columns u,q).
        #[arg(long, default_value = "unit")]
        radial: RadialSpec,
    },
    /// Sample the max-id vector Y.
    SampleMaxid {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        maxid: MaxIdArgs,
    },
    /// Sample the outer power reciprocal Archimedean copula exp(-phi(Y)).
    SampleRcopula {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        maxid: MaxIdArgs,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        #[arg(long, env = "LPSYM_SEED", default_value_t = DEFAULT_SEED, conflicts_with = "fresh_seed")]
        seed: u64,
        /// Seed from the clock instead; the seed used is printed.
        #[arg(long)]
        fresh_seed: bool,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Dimension, at least 2.
    #[arg(long)]
    d: usize,
    /// Norm exponent, at least 1.
    #[arg(long)]
    p: f64,
    /// Number of rows.
    #[arg(long, default_value_t = 2500)]
    n: usize,
    #[arg(long, env = "LPSYM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output CSV path (`-` for standard output).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args, Debug)]
struct MaxIdArgs {
    /// `harmonic:A` or `inverse:PATH` (CSV with columns t,x).
    #[arg(long, default_value = "harmonic:1")]
    measure: MeasureSpec,
    /// Append the number of Poisson points used per row.
    #[arg(long)]
    emit_npoints: bool,
    /// Abort a row after this many points.
    #[arg(long, default_value_t = DEFAULT_ITERATION_CAP)]
    max_points: u64,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Checks,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn params(d: usize, p: f64) -> Result<(Dimension, PowerParam), Failure> {
    Ok((Dimension::new(d).map_err(usage)?, PowerParam::new(p).map_err(usage)?))
}

fn measure(args: &MaxIdArgs, d: Dimension, p: PowerParam) -> Result<MaxIdSampler, Failure> {
    if args.max_points == 0 {
        return Err(usage("--max-points must be positive"));
    }
    let nu = RadialRadonMeasure::from_spec(&args.measure).map_err(usage)?;
    Ok(MaxIdSampler::new(d, p, nu).with_iteration_cap(args.max_points))
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Coeffs { d, p, out } => {
            let (d, p) = params(d, p)?;
            let mut w = output::open(&out)?;
            writeln!(w, "{}", serde_json::to_string(&coefficient_table(d, p))?)?;
            w.flush()?;
        }
        Command::SampleVp { common, level } => {
            let (d, p) = params(common.d, common.p)?;
            check_n(common.n)?;
            let k = level.unwrap_or(d.get());
            if k == 0 || k > d.get() {
                return Err(usage(format!("--level must lie in 1..={}", d.get())));
            }
            let sampler = VpSampler::new(d, p);
            let rng = RngStream::new(common.seed, 0);
            let xs = par_batch(&rng, common.n, |r| sampler.sample_level(k, r))?;
            let mut w = CsvWriter::new(output::open(&common.out)?, &["vp".to_string()])?;
            for x in xs {
                w.row([x], None)?;
            }
            w.finish()?;
        }
        Command::SampleSurvival { common, radial, provenance } => {
            let (d, p) = params(common.d, common.p)?;
            check_n(common.n)?;
            let law = RadialLaw::from_spec(&radial, d).map_err(usage)?;
            let sampler = SurvivalSampler::new(p, law).with_provenance(provenance);
            let samples = sample_survival_batch(&sampler, common.n, &RngStream::new(common.seed, 0))?;
            let mut header = numbered("z", d.get());
            if provenance {
                header.extend(["r".to_string(), "vp".to_string()]);
                header.extend(numbered("u", d.get()));
            }
            let mut w = CsvWriter::new(output::open(&common.out)?, &header)?;
            for s in samples {
                let mut row = s.z;
                if let Some(pr) = s.provenance {
                    row.extend([pr.r, pr.vp]);
                    row.extend(pr.u);
                }
                w.row(row, None)?;
            }
            w.finish()?;
        }
        Command::SampleCopula { common, radial } => {
            let (d, p) = params(common.d, common.p)?;
            check_n(common.n)?;
            let law = RadialLaw::from_spec(&radial, d).map_err(usage)?;
            let sampler = SurvivalSampler::new(p, law);
            let rows = copula_batch(&sampler, common.n, &RngStream::new(common.seed, 0))?;
            let mut w = CsvWriter::new(output::open(&common.out)?, &numbered("u", d.get()))?;
            for u in rows {
                w.row(u, None)?;
            }
            w.finish()?;
        }
        Command::SampleMaxid { common, maxid } => {
            let (d, p) = params(common.d, common.p)?;
            check_n(common.n)?;
            let sampler = measure(&maxid, d, p)?;
            let rows = sample_maxid_batch(&sampler, common.n, &RngStream::new(common.seed, 0))?;
            let mut header = numbered("y", d.get());
            if maxid.emit_npoints {
                header.push("n_points".into());
            }
            let mut w = CsvWriter::new(output::open(&common.out)?, &header)?;
            for s in rows {
                w.row(s.y, maxid.emit_npoints.then_some(s.n_points))?;
            }
            w.finish()?;
        }
        Command::SampleRcopula { common, maxid } => {
            let (d, p) = params(common.d, common.p)?;
            check_n(common.n)?;
            let sampler = measure(&maxid, d, p)?;
            let rows = reciprocal_copula_batch(&sampler, common.n, &RngStream::new(common.seed, 0))?;
            let mut header = numbered("u", d.get());
            if maxid.emit_npoints {
                header.push("n_points".into());
            }
            let mut w = CsvWriter::new(output::open(&common.out)?, &header)?;
            for (u, n_points) in rows {
                w.row(u, maxid.emit_npoints.then_some(n_points))?;
            }
            w.finish()?;
        }
        Command::Verify { quick, full: _, seed, fresh_seed, json } => {
            let seed = if fresh_seed {
                let seed = SystemTime::now().duration_since(UNIX_EPOCH).map(|t| t.as_nanos() as u64).unwrap_or(0);
                eprintln!("fresh seed: {seed}");
                seed
            } else {
                seed
            };
            let cfg = if quick { SuiteConfig::quick(seed) } else { SuiteConfig::full(seed) };
            let report = run_suite(&cfg).map_err(usage)?;
            for c in &report.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                eprintln!(
                    "{verdict} {:<24} {:<48} metric={:.6e} tolerance={:.6e} ({:.2}s)",
                    c.name, c.params, c.metric, c.tolerance, c.seconds
                );
            }
            let failed = report.failures().count();
            eprintln!("{} checks, {} failed, seed {}", report.checks.len(), failed, report.seed);
            if let Some(path) = json {
                let mut w = output::open(&path)?;
                writeln!(w, "{}", report.to_json())?;
                w.flush()?;
            }
            if !report.pass {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => ExitCode::from(1),
    }
}
