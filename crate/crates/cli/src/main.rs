//! `homtorsion`: admissibility, Nijenhuis torsion, integrability and
//! numerical cross-checks for operators on homogeneous pairs read from
//! `.lie` files.
//!
//! Exit codes: 0 when the property holds, 1 when it fails, 2 on usage or
//! input errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use homtorsion::complex::{check_integrable, ComplexError};
use homtorsion::harness::{
    relations::{DEMO_TOLERANCE, RELATION_TOLERANCE},
    run_harness, HarnessConfig, HarnessError, CONVERGENCE_RANGE, CONVERGENCE_STEP, PIREL_TOLERANCE, TORSION_TOLERANCE,
};
use homtorsion::nijenhuis::{check_nijenhuis, check_nijenhuis_ad, check_nijenhuis_with_mode, NijenhuisError, TorsionMode};
use homtorsion::operators::{check_admissible, check_split_admissible, HomogeneousPair, LinearOperator};
use homtorsion::specfile::{parse, resolve, serialize, OperatorForm, SpecDocument};

#[derive(Parser)]
#[command(name = "homtorsion", version, about = "Torsion and integrability checks for operators on homogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the operator descends to G/K.
    Check(Target),
    /// Decide whether the induced bundle map is a Nijenhuis operator.
    Torsion {
        #[command(flatten)]
        target: Target,
        /// Which pairs of basis vectors to test; defaults to complement pairs
        /// when the pair has a complement.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Decide integrability of the induced almost complex structure.
    Integrability(Target),
    /// Compare the algebraic torsion with finite-difference torsion on a
    /// concrete matrix model.
    Harness {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Rotation angle used in the operator demonstration on the sphere.
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        /// Write per-sample deviations as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Syntax-check a file and print its canonical form.
    Parse {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        report: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    /// A `.lie` file.
    file: PathBuf,
    /// Pair name; may be omitted when the file defines exactly one pair.
    #[arg(long)]
    pair: Option<String>,
    /// Operator name; may be omitted when exactly one operator lives on the
    /// pair's algebra.
    #[arg(long)]
    operator: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    All,
    Complement,
    Ad,
}

#[derive(Debug, Error)]
enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse {
        path: String,
        source: homtorsion::specfile::SpecError,
    },
    #[error("{path}:{source}")]
    Resolve {
        path: String,
        source: homtorsion::specfile::ResolveError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Nijenhuis(#[from] NijenhuisError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Operator(#[from] homtorsion::operators::OperatorError),
    #[error("{0}")]
    Csv(String),
}

/// What a command produced: the verdict, a JSON report and its text form.
struct Outcome {
    holds: bool,
    witnesses: Vec<Value>,
    dims: Map<String, Value>,
    details: Value,
    seed: Option<u64>,
    text: String,
}

struct Loaded {
    doc: SpecDocument,
    pair: HomogeneousPair,
    operator_name: String,
    operator: LinearOperator,
    labels: Vec<String>,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(target: &Target) -> Result<Loaded, InputError> {
    let path = target.file.display().to_string();
    let text = read(&target.file)?;
    let doc = parse(&text).map_err(|source| InputError::Parse { path: path.clone(), source })?;
    let resolved = resolve(&doc).map_err(|source| InputError::Resolve { path, source })?;
    let pair = match &target.pair {
        Some(name) => resolved
            .pairs
            .get(name)
            .ok_or_else(|| InputError::Usage(format!("no pair named `{name}`")))?,
        None => match resolved.pairs.values().collect::<Vec<_>>().as_slice() {
            [only] => *only,
            [] => return Err(InputError::Usage("the file defines no pair".into())),
            _ => return Err(InputError::Usage("several pairs defined; choose one with --pair".into())),
        },
    }
    .clone();
    let (operator_name, operator) = match &target.operator {
        Some(name) => {
            let op = resolved
                .operators
                .get(name)
                .ok_or_else(|| InputError::Usage(format!("no operator named `{name}`")))?;
            if !std::sync::Arc::ptr_eq(op.algebra(), pair.algebra()) {
                return Err(InputError::Usage(format!(
                    "operator `{name}` is not defined on the algebra of pair `{}`",
                    pair.name()
                )));
            }
            (name.clone(), op.clone())
        }
        None => match resolved.operators_on(&pair).collect::<Vec<_>>().as_slice() {
            [(name, op)] => ((*name).clone(), (*op).clone()),
            [] => return Err(InputError::Usage(format!("no operator on the algebra of pair `{}`", pair.name()))),
            _ => return Err(InputError::Usage("several operators defined; choose one with --operator".into())),
        },
    };
    let labels = pair.algebra().labels().to_vec();
    Ok(Loaded {
        doc,
        pair,
        operator_name,
        operator,
        labels,
    })
}

fn base_dims(l: &Loaded) -> Map<String, Value> {
    let mut dims = Map::new();
    dims.insert("g".into(), json!(l.pair.algebra().dim()));
    dims.insert("k".into(), json!(l.pair.k().dim()));
    if let Some(m) = l.pair.m() {
        dims.insert("m".into(), json!(m.dim()));
    }
    dims
}

fn cmd_check(l: &Loaded) -> Result<Outcome, InputError> {
    let report = check_admissible(&l.pair, &l.operator)?;
    let mut details = json!({ "admissibility": report::admissibility(&report) });
    let mut text = format!(
        "admissible: {} (scope {})\n{}",
        report.holds,
        report::scope(report.scope),
        report::admissibility_text(&l.labels, &report)
    );
    if l.pair.m().is_some() {
        let split = check_split_admissible(&l.pair, &l.operator)?;
        details["split_admissibility"] = report::admissibility(&split);
        text.push_str(&format!("split admissible: {}\n", split.holds));
    }
    Ok(Outcome {
        holds: report.holds,
        witnesses: report
            .witness
            .iter()
            .map(|w| report::admissibility_witness(&l.labels, w))
            .collect(),
        dims: base_dims(l),
        details,
        seed: None,
        text,
    })
}

fn cmd_torsion(l: &Loaded, mode: Option<Mode>) -> Result<Outcome, InputError> {
    let report = match mode {
        None => check_nijenhuis(&l.pair, &l.operator)?,
        Some(Mode::All) => check_nijenhuis_with_mode(&l.pair, &l.operator, TorsionMode::AllPairs)?,
        Some(Mode::Complement) => check_nijenhuis_with_mode(&l.pair, &l.operator, TorsionMode::ComplementPairs)?,
        Some(Mode::Ad) => {
            let d = match &l.doc.operators[&l.operator_name].form {
                OperatorForm::Ad(d) => d.clone(),
                _ => {
                    return Err(InputError::Usage(format!(
                        "--mode ad needs an operator of the form ad(d); `{}` is not",
                        l.operator_name
                    )))
                }
            };
            check_nijenhuis_ad(&l.pair, &d)?
        }
    };
    Ok(Outcome {
        holds: report.holds,
        witnesses: report::torsion_witnesses(&l.labels, &report),
        dims: base_dims(l),
        details: report::torsion(&report),
        seed: None,
        text: report::torsion_text(&l.labels, &report),
    })
}

fn cmd_integrability(l: &Loaded) -> Result<Outcome, InputError> {
    let report = check_integrable(&l.pair, &l.operator)?;
    let mut dims = base_dims(l);
    dims.insert("z_plus".into(), json!(report.z_plus.dim()));
    dims.insert("z_plus_mod_k".into(), json!(report.z_plus_mod_k.dim()));
    Ok(Outcome {
        holds: report.integrable(),
        witnesses: report::closure_witnesses(&l.labels, &report),
        dims,
        details: report::integrability(&l.labels, &report),
        seed: None,
        text: report::integrability_text(&l.labels, &report),
    })
}

fn write_csv(path: &Path, report: &homtorsion::harness::HarnessReport) -> Result<(), InputError> {
    let err = |e: csv::Error| InputError::Csv(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(["sample", "point", "v", "w", "step", "numerical_max", "predicted_max", "deviation"])
        .map_err(err)?;
    let join = |xs: &mut dyn Iterator<Item = f64>| xs.map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(" ");
    for (i, s) in report.samples.iter().enumerate() {
        w.write_record([
            i.to_string(),
            join(&mut s.point.iter().copied()),
            join(&mut s.v.iter().copied()),
            join(&mut s.w.iter().copied()),
            format!("{:.17e}", s.step),
            format!("{:.17e}", s.numerical_max),
            format!("{:.17e}", s.predicted.amax()),
            format!("{:.17e}", s.deviation),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| InputError::Csv(format!("{}: {e}", path.display())))
}

fn cmd_harness(l: &Loaded, config: HarnessConfig, csv: Option<&Path>) -> Result<Outcome, InputError> {
    let report = run_harness(&l.pair, &l.operator, &config)?;
    if let Some(path) = csv {
        write_csv(path, &report)?;
    }
    let witnesses = report
        .samples
        .iter()
        .filter(|s| s.deviation > TORSION_TOLERANCE)
        .map(|s| {
            json!({
                "kind": "sample",
                "point": report::floats(s.point.iter().copied()),
                "deviation": report::float(s.deviation),
            })
        })
        .collect();
    Ok(Outcome {
        holds: report.passed(),
        witnesses,
        dims: base_dims(l),
        details: report::harness(&report),
        seed: Some(config.seed),
        text: report::harness_text(&report),
    })
}

fn tolerances(command: &str) -> Value {
    match command {
        "harness" => json!({
            "torsion": report::float(TORSION_TOLERANCE),
            "relations": report::float(RELATION_TOLERANCE),
            "demonstrations": report::float(DEMO_TOLERANCE),
            "projected_bracket": report::float(PIREL_TOLERANCE),
            "convergence_step": report::float(CONVERGENCE_STEP),
            "convergence_ratio": report::floats([CONVERGENCE_RANGE.0, CONVERGENCE_RANGE.1]),
        }),
        _ => json!({ "exact": true }),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), InputError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| InputError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn envelope(command: &str, input: &Path, started: Instant) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("input".into(), json!(input.display().to_string()));
    m.insert("elapsed_ms".into(), report::float(started.elapsed().as_secs_f64() * 1e3));
    m
}

fn run_target(command: &str, target: &Target, f: impl FnOnce(&Loaded) -> Result<Outcome, InputError>) -> ExitCode {
    let started = Instant::now();
    let result = load(target).and_then(|l| f(&l).map(|o| (l, o)));
    match result {
        Ok((l, o)) => {
            let rendered = match target.report {
                Format::Text => format!(
                    "{command} {} / {} on {}: {}\n{}",
                    l.pair.name(),
                    l.operator_name,
                    target.file.display(),
                    report::verdict(o.holds),
                    o.text
                ),
                Format::Json => {
                    let mut m = envelope(command, &target.file, started);
                    m.insert("pair".into(), json!(l.pair.name()));
                    m.insert("operator".into(), json!(l.operator_name));
                    m.insert("verdict".into(), json!(report::verdict(o.holds)));
                    m.insert("witnesses".into(), Value::Array(o.witnesses));
                    m.insert("dims".into(), Value::Object(o.dims));
                    m.insert("tolerances".into(), tolerances(command));
                    m.insert("seed".into(), json!(o.seed));
                    m.insert("details".into(), o.details);
                    format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize"))
                }
            };
            if let Err(e) = emit(target.out.as_deref(), &rendered) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if o.holds { 0 } else { 1 })
        }
        Err(e) => input_error(command, &target.file, target.report, started, &e),
    }
}

fn input_error(command: &str, input: &Path, format: Format, started: Instant, e: &InputError) -> ExitCode {
    eprintln!("error: {e}");
    if format == Format::Json {
        let mut m = envelope(command, input, started);
        m.insert("verdict".into(), json!("error"));
        m.insert("error".into(), json!(e.to_string()));
        println!("{}", serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize"));
    }
    ExitCode::from(2)
}

fn cmd_parse(file: &Path, format: Format, out: Option<&Path>) -> ExitCode {
    let started = Instant::now();
    let result = read(file).and_then(|text| {
        parse(&text).map_err(|source| InputError::Parse {
            path: file.display().to_string(),
            source,
        })
    });
    let doc = match result {
        Ok(doc) => doc,
        Err(e) => return input_error("parse", file, format, started, &e),
    };
    let canonical = serialize(&doc);
    let rendered = match format {
        Format::Text => canonical,
        Format::Json => {
            let mut m = envelope("parse", file, started);
            m.insert("verdict".into(), json!("holds"));
            m.insert("witnesses".into(), json!([]));
            m.insert(
                "dims".into(),
                json!({
                    "algebras": doc.algebras.len() + doc.matrix_algebras.len(),
                    "subalgebras": doc.subalgebras.len(),
                    "complements": doc.complements.len(),
                    "operators": doc.operators.len(),
                    "pairs": doc.pairs.len(),
                }),
            );
            m.insert("tolerances".into(), tolerances("parse"));
            m.insert("seed".into(), Value::Null);
            m.insert("details".into(), json!({ "canonical": canonical }));
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize"))
        }
    };
    match emit(out, &rendered) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => input_error("parse", file, format, started, &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(target) => run_target("check", &target, cmd_check),
        Command::Torsion { target, mode } => run_target("torsion", &target, |l| cmd_torsion(l, mode)),
        Command::Integrability(target) => run_target("integrability", &target, cmd_integrability),
        Command::Harness {
            target,
            samples,
            step,
            seed,
            theta,
            csv,
        } => {
            let config = HarnessConfig {
                samples,
                step,
                seed,
                theta,
            };
            run_target("harness", &target, |l| cmd_harness(l, config, csv.as_deref()))
        }
        Command::Parse { file, report, out } => cmd_parse(&file, report, out.as_deref()),
    }
}
