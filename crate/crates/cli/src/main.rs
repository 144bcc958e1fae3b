use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use cambrian::export::{self, TreeListing};
use cambrian::poset::{self, check_lattice, find_isomorphic_interval};
use cambrian::simplicial::{self, build_lift, regularity_check, verify_triangulation};
use cambrian::tropical::{associahedron_complex, orientation_functional, tropical_points};
use cambrian::{par, sample, Direction, Error, FlipDigraph, IndexPair, Instance, LiftKind, Signature};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

/// Largest signature length accepted without `--force`.
const MAX_N: usize = 12;

#[derive(Parser)]
#[command(name = "cambrian", version, about = "Cambrian trees, triangulations and tropical realizations")]
struct Cli {
    /// Worker threads for internal checks; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Lift the size guard on instances.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all trees of an instance in canonical order.
    Enumerate {
        #[command(flatten)]
        spec: InstanceSpec,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check one of the structural theorems on an instance.
    Verify {
        what: Check,
        #[command(flatten)]
        spec: InstanceSpec,
        #[arg(long, value_enum)]
        lift: Option<LiftArg>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Test whether an inner lattice is an interval of an outer one.
    ProbeConjecture(ProbeArgs),
    /// Write a drawing or data file.
    Export {
        format: Format,
        #[command(flatten)]
        spec: InstanceSpec,
        #[arg(long, value_enum)]
        lift: Option<LiftArg>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct InstanceSpec {
    #[arg(long, allow_hyphen_values = true)]
    signature: String,
    /// Comma-separated black labels.
    #[arg(long, value_delimiter = ',', conflicts_with = "full")]
    black: Option<Vec<usize>>,
    /// Comma-separated white labels.
    #[arg(long, value_delimiter = ',', conflicts_with = "full")]
    white: Option<Vec<usize>>,
    /// Use every black and white label (the default without --black/--white).
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present = "random")]
    signature: Option<String>,
    #[arg(long, value_delimiter = ',')]
    black: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    white: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    outer_black: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    outer_white: Option<Vec<usize>>,
    /// Draw random nested pairs with signature length up to this bound.
    #[arg(long, conflicts_with = "signature")]
    random: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Lattice,
    Interval,
    Triangulation,
    Regularity,
    Tropical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    SvgLattice,
    SvgMixed,
    SvgTropical,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftArg {
    Sqrt,
    Rational,
}

impl From<LiftArg> for LiftKind {
    fn from(l: LiftArg) -> Self {
        match l {
            LiftArg::Sqrt => LiftKind::Sqrt,
            LiftArg::Rational => LiftKind::Rational,
        }
    }
}

/// Failure carrying its exit code.
struct Exit {
    code: u8,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge(_) => 3,
            Error::Signature(_) | Error::IndexPair(_) | Error::Domain(_) | Error::UnknownEdge(_) => 2,
            _ => 1,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit {
            code: 2,
            message: format!("{e:#}"),
        }
    }
}

type Outcome = Result<bool, Exit>;

fn usage(message: impl Into<String>) -> Exit {
    Exit {
        code: 2,
        message: message.into(),
    }
}

fn parse_signature(text: &str, force: bool) -> Result<Signature, Exit> {
    let sig = Signature::parse(text).map_err(Error::from)?;
    if sig.len() > MAX_N && !force {
        return Err(Exit {
            code: 3,
            message: format!("n = {} exceeds {MAX_N}; pass --force to proceed", sig.len()),
        });
    }
    Ok(sig)
}

fn build_pair(n: usize, black: &Option<Vec<usize>>, white: &Option<Vec<usize>>) -> Result<IndexPair, Exit> {
    Ok(match (black, white) {
        (None, None) => IndexPair::full(n),
        (Some(b), Some(w)) => IndexPair::new(b.clone(), w.clone())?,
        _ => return Err(usage("--black and --white go together")),
    })
}

fn instance(spec: &InstanceSpec, force: bool) -> Result<Instance, Exit> {
    let sig = parse_signature(&spec.signature, force)?;
    let pair = build_pair(sig.len(), &spec.black, &spec.white)?;
    Ok(Instance::new(&sig, pair)?)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Exit> {
    match output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Exit::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn enumerate(spec: &InstanceSpec, output: &Option<PathBuf>, force: bool) -> Outcome {
    let inst = instance(spec, force)?;
    let listing = TreeListing::new(&inst, inst.enumerate_trees());
    emit(&export::to_json(&listing), output)?;
    Ok(true)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn verify(what: Check, spec: &InstanceSpec, lift: Option<LiftArg>, output: &Option<PathBuf>, force: bool) -> Outcome {
    let inst = instance(spec, force)?;
    let (pass, report): (bool, Value) = match what {
        Check::Lattice => {
            let g = FlipDigraph::new(inst)?;
            let witness = check_lattice(g.poset()).err();
            let pass = witness.is_none();
            (
                pass,
                json!({
                    "check": "lattice",
                    "verdict": verdict(pass),
                    "trees": g.len(),
                    "arcs": g.arcs().len(),
                    "source": g.trees()[g.source()],
                    "sink": g.trees()[g.sink()],
                    "witness": witness,
                }),
            )
        }
        Check::Interval => {
            let sig = inst.signature().clone();
            let g = FlipDigraph::new(inst)?;
            let big = poset::cambrian_lattice(&sig)?;
            let found = find_isomorphic_interval(g.poset(), &big);
            let full = FlipDigraph::new(Instance::full(&sig)?)?;
            (
                found.is_some(),
                json!({
                    "check": "interval",
                    "verdict": verdict(found.is_some()),
                    "trees": g.len(),
                    "cambrian_size": big.len(),
                    "interval": found.map(|(lo, hi)| [&full.trees()[lo], &full.trees()[hi]]),
                }),
            )
        }
        Check::Triangulation => {
            let sig = inst.signature().clone();
            let planar = inst.pair().white().len() == 3;
            let r = verify_triangulation(&sig, inst.pair().clone())?;
            let g = FlipDigraph::new(inst)?;
            let mixed = if planar {
                Some(simplicial::verify_mixed_subdivision(&g)?)
            } else {
                None
            };
            let pass = r.passes() && mixed.as_ref().is_none_or(|m| m.passes());
            (
                pass,
                json!({
                    "check": "triangulation",
                    "verdict": verdict(pass),
                    "report": r,
                    "mixed_subdivision": mixed,
                }),
            )
        }
        Check::Regularity => {
            let kind = lift.map_or(LiftKind::Rational, LiftKind::from);
            let g = FlipDigraph::new(inst)?;
            let l = build_lift(g.instance(), kind)?;
            match regularity_check(&g, &l) {
                Ok(r) => (
                    r.is_regular(),
                    json!({"check": "regularity", "verdict": verdict(r.is_regular()), "report": r}),
                ),
                Err(Error::DegenerateLift(msg)) => (
                    false,
                    json!({"check": "regularity", "verdict": "fail", "degenerate": msg}),
                ),
                Err(e) => return Err(e.into()),
            }
        }
        Check::Tropical => {
            let kind = lift.map_or(LiftKind::Sqrt, LiftKind::from);
            let g = FlipDigraph::new(inst)?;
            let l = build_lift(g.instance(), kind)?;
            let r = associahedron_complex(&g, &l)?;
            let points = tropical_points(&g, &l)?;
            let coords: Vec<Value> = g
                .trees()
                .iter()
                .zip(&points)
                .map(|(t, p)| {
                    json!({
                        "tree": t,
                        "coordinates": p.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "decimal": p.coords().iter().map(|x| x.to_decimal(12)).collect::<Vec<_>>(),
                        "orientation": orientation_functional(g.instance(), p).to_decimal(12),
                    })
                })
                .collect();
            let tmin = g.instance().extremal_tree(Direction::Min)?;
            let tmax = g.instance().extremal_tree(Direction::Max)?;
            let pass = r.passes();
            (
                pass,
                json!({
                    "check": "tropical",
                    "verdict": verdict(pass),
                    "white": g.instance().pair().white(),
                    "strictly_monotone": r.strictly_monotone(),
                    "report": r,
                    "t_min": g.index_of(&tmin),
                    "t_max": g.index_of(&tmax),
                    "points": coords,
                }),
            )
        }
    };
    emit(&export::to_json(&report), output)?;
    Ok(pass)
}

fn probe(args: &ProbeArgs, force: bool) -> Outcome {
    let cases: Vec<(Signature, IndexPair, IndexPair)> = match args.random {
        Some(max_n) => {
            if max_n == 0 {
                return Err(usage("--random needs a positive bound"));
            }
            if max_n > MAX_N && !force {
                return Err(Exit {
                    code: 3,
                    message: format!("n = {max_n} exceeds {MAX_N}; pass --force to proceed"),
                });
            }
            let mut rng = sample::rng(args.seed);
            (0..args.trials)
                .map(|_| {
                    let n = rng.gen_range(1..=max_n);
                    sample::random_nested(&mut rng, n)
                })
                .collect()
        }
        None => {
            let text = args.signature.as_deref().ok_or_else(|| usage("--signature is required"))?;
            let sig = parse_signature(text, force)?;
            let inner = build_pair(sig.len(), &args.black, &args.white)?;
            let outer = match (&args.outer_black, &args.outer_white) {
                (None, None) => IndexPair::full(sig.len()),
                (b, w) => build_pair(sig.len(), b, w)?,
            };
            if !outer.contains(&inner) {
                return Err(usage(format!("{inner} is not contained in {outer}")));
            }
            vec![(sig, inner, outer)]
        }
    };
    let reports = poset::conjecture_sweep(&cases)?;
    let holds = reports.iter().filter(|r| r.holds()).count();
    let counterexamples: Vec<_> = reports.iter().filter(|r| !r.holds()).collect();
    let pass = counterexamples.is_empty();
    let trials: Vec<Value> = reports
        .iter()
        .enumerate()
        .map(|(k, r)| {
            json!({
                "trial": k,
                "signature": r.instance.signature,
                "inner": r.instance.inner,
                "outer": r.instance.outer,
                "result": r.result,
            })
        })
        .collect();
    let report = json!({
        "trials": reports.len(),
        "intervals": holds,
        "counterexamples": counterexamples,
        "verdict": verdict(pass),
        "seed": args.random.map(|_| args.seed),
        "results": trials,
    });
    emit(&export::to_json(&report), &args.output)?;
    Ok(pass)
}

fn export_cmd(format: Format, spec: &InstanceSpec, lift: Option<LiftArg>, output: &Option<PathBuf>, force: bool) -> Outcome {
    let inst = instance(spec, force)?;
    let planar = matches!(format, Format::SvgMixed | Format::SvgTropical);
    if planar && inst.pair().white().len() != 3 {
        return Err(usage(format!(
            "planar formats need exactly three white labels, got {}",
            inst.pair().white().len()
        )));
    }
    let g = FlipDigraph::new(inst)?;
    let text = match format {
        Format::Dot => export::to_dot(&g),
        Format::SvgLattice => export::svg_lattice(&g),
        Format::SvgMixed => export::svg_mixed(&g)?,
        Format::SvgTropical => {
            let l = build_lift(g.instance(), lift.map_or(LiftKind::Sqrt, LiftKind::from))?;
            export::svg_tropical(&g, &l)?
        }
        Format::Json => export::to_json(&TreeListing::new(g.instance(), g.trees().to_vec())),
    };
    emit(&text, output)?;
    Ok(true)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Enumerate { spec, output } => enumerate(spec, output, cli.force),
        Command::Verify {
            what,
            spec,
            lift,
            output,
        } => verify(*what, spec, *lift, output, cli.force),
        Command::ProbeConjecture(args) => probe(args, cli.force),
        Command::Export {
            format,
            spec,
            lift,
            output,
        } => export_cmd(*format, spec, *lift, output, cli.force),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match par::with_threads(cli.jobs, || run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
