use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use complexon::density::{density_in_complexon, Estimator};
use complexon::experiment::{run_convergence, ExperimentConfig};
use complexon::format::fmt_g;
use complexon::hom::hom_density;
use complexon::plot::convergence_svg;
use complexon::sampling::{latent_to_text, sample_complex, SampleConfig, RNG_ALGORITHM};
use complexon::spectral::{cso_spectrum, raised_adjacency};
use complexon::{Complexon, SimplicialComplex};

const BUILTIN: &str = "mean-triangle";

#[derive(Parser)]
#[command(
    name = "complexon",
    version,
    about = "Complexon shift operators on simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Track CSO eigenvalues of sampled complexes as n grows.
    Converge(ConvergeArgs),
    /// Signed-index CSO spectrum of a complex.
    Spectrum {
        complex: PathBuf,
        #[arg(long, short, default_value_t = 2)]
        dim: usize,
        /// Also print the step eigenfunction values.
        #[arg(long)]
        vectors: bool,
    },
    /// Raised adjacency matrix of a complex.
    Raise {
        complex: PathBuf,
        #[arg(long, short, default_value_t = 2)]
        dim: usize,
    },
    /// Homomorphism density of F in a complex or complexon.
    Density {
        /// Pattern complex F.
        pattern: PathBuf,
        /// Target complex file, complexon JSON file, or `mean-triangle`.
        target: String,
        /// Force Monte Carlo with this many samples.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a complex from a complexon.
    Sample {
        #[arg(long, default_value = BUILTIN)]
        complexon: String,
        #[arg(long, short)]
        n: usize,
        /// Highest dimension to sample; defaults to the complexon's.
        #[arg(long, short)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the complex here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Sidecar file for the latent points.
        #[arg(long)]
        latent: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConvergeArgs {
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    /// Comma separated signed indices, e.g. `1,2,-1,-2`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    indices: Option<Vec<i64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `mean-triangle` or a complexon JSON file.
    #[arg(long)]
    complexon: Option<String>,
    /// Per-trial CSV; stdout when omitted.
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Per-n summary CSV.
    #[arg(long)]
    out_summary: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConvergeFile {
    n_min: Option<usize>,
    n_max: Option<usize>,
    dim: Option<usize>,
    indices: Option<Vec<i64>>,
    trials: Option<usize>,
    seed: Option<u64>,
    complexon: Option<String>,
    out_csv: Option<PathBuf>,
    out_summary: Option<PathBuf>,
    out_svg: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Converge(args) => converge(args),
        Command::Spectrum {
            complex,
            dim,
            vectors,
        } => {
            let k = read_complex(&complex)?;
            let s = cso_spectrum(&k, dim)?;
            let mut out = io::stdout().lock();
            for p in s.pairs() {
                write!(out, "{} {}", p.index, fmt_g(p.value, 17))?;
                if vectors {
                    for x in &p.vector {
                        write!(out, " {}", fmt_g(*x, 17))?;
                    }
                }
                writeln!(out)?;
            }
            Ok(())
        }
        Command::Raise { complex, dim } => {
            let k = read_complex(&complex)?;
            print!("{}", raised_adjacency(&k, dim)?.dump());
            Ok(())
        }
        Command::Density {
            pattern,
            target,
            samples,
            seed,
        } => density(&pattern, &target, samples, seed),
        Command::Sample {
            complexon,
            n,
            dim,
            seed,
            out,
            latent,
        } => {
            let w = load_complexon(&complexon)?;
            let cfg = SampleConfig {
                n,
                dim: dim.unwrap_or(w.dim()),
                seed,
            };
            let (k, x) = sample_complex(&w, cfg)?;
            let text = format!("# {RNG_ALGORITHM} seed {seed}\n{}", k.to_text());
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            if let Some(path) = latent {
                write_file(&path, &latent_to_text(&x))?;
            }
            Ok(())
        }
    }
}

fn converge(args: ConvergeArgs) -> Result<()> {
    let file: ConvergeFile = match &args.config {
        Some(path) => {
            let text = read(path)?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => ConvergeFile::default(),
    };
    let defaults = ExperimentConfig::default();
    let cfg = ExperimentConfig {
        n_min: args.n_min.or(file.n_min).unwrap_or(defaults.n_min),
        n_max: args.n_max.or(file.n_max).unwrap_or(defaults.n_max),
        dim: args.dim.or(file.dim).unwrap_or(defaults.dim),
        indices: args.indices.or(file.indices).unwrap_or(defaults.indices),
        trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
    };
    let source = args
        .complexon
        .or(file.complexon)
        .unwrap_or_else(|| BUILTIN.to_string());
    let w = load_complexon(&source)?;
    let table = run_convergence(&cfg, &w)?;

    match args.out_csv.or(file.out_csv) {
        Some(path) => write_file(&path, &table.trials_csv())?,
        None => print!("{}", table.trials_csv()),
    }
    if let Some(path) = args.out_summary.or(file.out_summary) {
        write_file(&path, &table.summary_csv())?;
    }
    if let Some(path) = args.out_svg.or(file.out_svg) {
        write_file(&path, &convergence_svg(&table))?;
    }
    Ok(())
}

fn density(pattern: &Path, target: &str, samples: Option<usize>, seed: u64) -> Result<()> {
    let f = read_complex(pattern)?;
    let result = match (Target::load(target)?, samples) {
        (Target::Complex(k), None) => hom_density(&f, &k)?,
        (Target::Complex(k), Some(samples)) => density_in_complexon(
            &f,
            &Complexon::induced(&k),
            Estimator::MonteCarlo { samples, seed },
        )?,
        (Target::Complexon(w @ Complexon::Step(_)), None) => {
            density_in_complexon(&f, &w, Estimator::exact())?
        }
        (Target::Complexon(w), samples) => density_in_complexon(
            &f,
            &w,
            Estimator::MonteCarlo {
                samples: samples.unwrap_or(100_000),
                seed,
            },
        )?,
    };
    match result.std_error {
        Some(se) => println!("{} {}", fmt_g(result.value, 17), fmt_g(se, 17)),
        None => println!("{}", fmt_g(result.value, 17)),
    }
    Ok(())
}

enum Target {
    Complex(SimplicialComplex),
    Complexon(Complexon),
}

impl Target {
    fn load(arg: &str) -> Result<Self> {
        if arg == BUILTIN {
            return Ok(Target::Complexon(Complexon::mean_triangle()));
        }
        let text = read(Path::new(arg))?;
        if text.trim_start().starts_with('{') {
            let w = Complexon::from_json(&text).with_context(|| format!("parsing {arg}"))?;
            Ok(Target::Complexon(w))
        } else {
            let k =
                SimplicialComplex::from_text(&text).with_context(|| format!("parsing {arg}"))?;
            Ok(Target::Complex(k))
        }
    }
}

fn load_complexon(arg: &str) -> Result<Complexon> {
    match Target::load(arg)? {
        Target::Complexon(w) => Ok(w),
        Target::Complex(k) => Ok(Complexon::induced(&k)),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = read(path)?;
    SimplicialComplex::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if path.as_os_str().is_empty() {
        bail!("empty output path");
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
