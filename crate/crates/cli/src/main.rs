use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use barriers_core::barrier::{barrier_best_first, barrier_exact, code_barrier_exact, BestFirstConfig, CodeRef, ExactConfig, SyndromeEnergy, Target};
use barriers_core::classical::{composite_repetition, repetition_code, ClassicalCode};
use barriers_core::confinement::{confinement_scan, soundness_scan, ConfinementFn, ScanOptions};
use barriers_core::css::Kind;
use barriers_core::f2::BitVector;
use barriers_core::hgp::hgp;
use barriers_core::logicals::{block_supports, canonical_logicals};
use barriers_core::manifest::{load_code, write_hgp, LoadedCode};
use barriers_core::report::{emit_report, run_verify, Format, VerifyConfig};
use barriers_core::tensor::bound_ledger;
use barriers_core::{pcm, BitMatrix};

#[derive(Parser, Debug)]
#[command(name = "barriers-lab", version, about = "Codes over GF(2), their energy barriers and bound checks")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Largest n for exhaustive barrier search.
    #[arg(long = "cap-exact", global = true, default_value_t = 22)]
    cap_exact: usize,

    /// Wall-clock budget for scans; partial results are flagged incomplete.
    #[arg(long = "budget-secs", global = true)]
    budget_secs: Option<u64>,

    /// Output file (a directory for `hgp`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a classical parity-check matrix in pcm v1 format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build a 2D, 3D or 4D hypergraph product and write its matrices and manifest.
    Hgp {
        #[arg(long)]
        dim: usize,
        /// Comma-separated pcm files, one per factor.
        #[arg(long, value_delimiter = ',')]
        factors: Vec<PathBuf>,
    },
    /// Bound ledger of the tensor product of two classical codes.
    Tensor {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Also run the exact barrier search on the product.
        #[arg(long)]
        measure: bool,
    },
    /// Logical operators of a CSS code.
    Logicals {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        kind: QuantumKind,
        /// Emit the elementary canonical operators of a hypergraph product.
        #[arg(long)]
        canonical: bool,
    },
    /// Energy barrier of a code or of one logical operator.
    Barrier(BarrierArgs),
    /// Confinement or soundness scan.
    Confine {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        kind: QuantumKind,
        #[arg(long)]
        wmax: usize,
        /// Function of the form c*x^p/q, e.g. "x^3/4".
        #[arg(long)]
        f: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        soundness: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Repetition code, open chain unless --periodic.
    Rep {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        periodic: bool,
    },
    /// Grid region joined to a chain by a single check.
    Composite {
        #[arg(long)]
        len: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuantumKind {
    Z,
    X,
}

impl From<QuantumKind> for Kind {
    fn from(k: QuantumKind) -> Kind {
        match k {
            QuantumKind::Z => Kind::Z,
            QuantumKind::X => Kind::X,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BarrierKind {
    Z,
    X,
    Classical,
}

#[derive(Args, Debug)]
struct BarrierArgs {
    /// Manifest, or a pcm file for a classical code.
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum)]
    kind: BarrierKind,
    /// Canonical label such as "1:0,0,0", or a bit string of length n.
    #[arg(long)]
    target: Option<String>,
    #[arg(long, conflicts_with = "best_first")]
    exact: bool,
    #[arg(long = "best-first")]
    best_first: bool,
    #[arg(long, default_value_t = 1_000_000)]
    frontier: usize,
    /// Weight of the distance-to-target term in the best-first priority.
    #[arg(long, default_value_t = 0)]
    heuristic_weight: usize,
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    emit(cli, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn read_classical(path: &Path) -> Result<ClassicalCode> {
    let h = pcm::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ClassicalCode::from_parity(h)?)
}

fn exact_config(cli: &Cli) -> ExactConfig {
    ExactConfig {
        cap: cli.cap_exact,
        ..Default::default()
    }
}

fn scan_options(cli: &Cli) -> ScanOptions {
    ScanOptions {
        budget: cli.budget_secs.map(Duration::from_secs),
        ..Default::default()
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Gen(g) => {
            let code = match g {
                GenCommand::Rep { len, periodic } => repetition_code(*len, *periodic)?,
                GenCommand::Composite { len } => composite_repetition(*len)?,
            };
            emit(cli, &pcm::format(code.parity()))?;
        }
        Command::Hgp { dim, factors } => {
            if factors.len() != *dim {
                bail!("--dim {dim} needs {dim} factors, got {}", factors.len());
            }
            let dir = cli.out.as_ref().ok_or_else(|| anyhow!("hgp needs --out DIR"))?;
            let codes = factors.iter().map(|p| read_classical(p)).collect::<Result<Vec<_>>>()?;
            let code = hgp(&codes)?;
            let command = format!(
                "hgp --dim {dim} --factors {}",
                factors.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",")
            );
            let path = write_hgp(dir, &code, &codes, &command, None)?;
            print!("{}", fs::read_to_string(path)?);
        }
        Command::Tensor { a, b, measure } => {
            let (a, b) = (read_classical(a)?, read_classical(b)?);
            let ledger = bound_ledger(&a, &b, *measure, &exact_config(cli))?;
            let mut value = serde_json::to_value(&ledger)?;
            if let Some(m) = &ledger.measured {
                value["witness_path"] = json!(m.flips);
            }
            emit_json(cli, &value)?;
        }
        Command::Logicals { code, kind, canonical } => {
            let loaded = load_code(code)?;
            let kind = Kind::from(*kind);
            let out = if *canonical {
                let LoadedCode::Hgp(h) = &loaded else {
                    bail!("--canonical needs a manifest of a hypergraph product");
                };
                let set = canonical_logicals(h, kind)?;
                let ops: Vec<_> = set
                    .operators
                    .iter()
                    .map(|o| {
                        json!({
                            "label": o.label_string(),
                            "family": o.family,
                            "labels": o.labels,
                            "weight": o.vector.weight(),
                            "support": o.vector.iter_ones().collect::<Vec<_>>(),
                            "blocks": block_supports(h, &o.vector),
                        })
                    })
                    .collect();
                json!({ "kind": kind, "dim": set.dim, "count": ops.len(), "operators": ops })
            } else {
                let css = loaded.css().ok_or_else(|| anyhow!("logicals need a CSS code"))?;
                let reps = css.logical_space(kind);
                let ops: Vec<_> = reps
                    .iter()
                    .map(|v| json!({ "weight": v.weight(), "support": v.iter_ones().collect::<Vec<_>>() }))
                    .collect();
                json!({ "kind": kind, "count": ops.len(), "operators": ops })
            };
            emit_json(cli, &out)?;
        }
        Command::Barrier(args) => barrier(cli, args)?,
        Command::Confine { code, kind, wmax, f, t, soundness } => {
            let loaded = load_code(code)?;
            let css = match &loaded {
                LoadedCode::Classical(c) => barriers_core::CssCode::from_classical(c),
                other => other.css().expect("css").clone(),
            };
            let f: ConfinementFn = f.parse()?;
            let kind = Kind::from(*kind);
            if *soundness {
                emit_json(cli, &soundness_scan(&css, kind, *t, &f, *wmax, &scan_options(cli))?)?;
            } else {
                emit_json(cli, &confinement_scan(&css, kind, *wmax, &f, *t, &scan_options(cli))?)?;
            }
        }
        Command::Verify { suite } => {
            let config = VerifyConfig {
                seed: cli.seed,
                exact: exact_config(cli),
                ..Default::default()
            };
            let report = run_verify(suite, &config)?;
            let format = match cli.format {
                OutFormat::Json => Format::Json,
                OutFormat::Table => Format::Table,
                OutFormat::Csv => Format::Csv,
            };
            emit(cli, &emit_report(&report, format)?)?;
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn resolve_target(loaded: &LoadedCode, kind: Kind, n: usize, label: &str) -> Result<BitVector> {
    if label.contains(':') {
        let LoadedCode::Hgp(h) = loaded else {
            bail!("canonical labels need a manifest of a hypergraph product");
        };
        let set = canonical_logicals(h, kind)?;
        return set
            .operators
            .iter()
            .find(|o| o.label_string() == label)
            .map(|o| o.vector.clone())
            .ok_or_else(|| anyhow!("no canonical operator with label {label:?}"));
    }
    let v: BitVector = label.parse()?;
    if v.len() != n {
        bail!("target has length {}, code has n = {n}", v.len());
    }
    Ok(v)
}

fn barrier(cli: &Cli, args: &BarrierArgs) -> Result<()> {
    let loaded = load_code(&args.code)?;
    let (classical_h, css_kind): (Option<BitMatrix>, Option<Kind>) = match (args.kind, &loaded) {
        (BarrierKind::Classical, LoadedCode::Classical(c)) => (Some(c.parity().clone()), None),
        (BarrierKind::Classical, _) => bail!("--kind classical needs a classical code"),
        (BarrierKind::Z, _) => (None, Some(Kind::Z)),
        (BarrierKind::X, _) => (None, Some(Kind::X)),
    };
    let css = match (&loaded, css_kind) {
        (_, None) => None,
        (LoadedCode::Classical(c), Some(_)) => Some(barriers_core::CssCode::from_classical(c)),
        (other, Some(_)) => Some(other.css().expect("css").clone()),
    };
    let energy = match (&classical_h, &css, css_kind) {
        (Some(h), _, _) => SyndromeEnergy::new(h.clone()),
        (None, Some(c), Some(k)) => SyndromeEnergy::css(c, k),
        _ => unreachable!(),
    };
    let n = energy.matrix().cols();
    let target = args
        .target
        .as_deref()
        .map(|t| resolve_target(&loaded, css_kind.unwrap_or(Kind::Z), n, t))
        .transpose()?;

    let result = if args.best_first {
        let target = target.ok_or_else(|| anyhow!("--best-first needs --target"))?;
        let cfg = BestFirstConfig {
            frontier_cap: args.frontier,
            seed: cli.seed,
            heuristic_weight: args.heuristic_weight,
            ..Default::default()
        };
        barrier_best_first(&energy, &target, &cfg)?
    } else {
        let cfg = exact_config(cli);
        match target {
            Some(t) => barrier_exact(&energy, &Target::Vector(t), &cfg)?,
            None => match (&classical_h, &css, css_kind) {
                (Some(_), _, _) => {
                    let LoadedCode::Classical(c) = &loaded else { unreachable!() };
                    code_barrier_exact(CodeRef::Classical(c), &cfg)?
                }
                (None, Some(c), Some(k)) => code_barrier_exact(CodeRef::Css(c, k), &cfg)?,
                _ => unreachable!(),
            },
        }
    };
    let endpoint = result.endpoint().clone();
    emit_json(
        cli,
        &json!({
            "n": n,
            "value": result.value,
            "exact": result.exact,
            "target": result.target,
            "endpoint_weight": endpoint.weight(),
            "witness_path": result.flips,
            "explored": result.explored,
        }),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
