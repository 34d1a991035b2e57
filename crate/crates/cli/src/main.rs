//! `protoalg`: validate, run and compare proto-algorithm definitions.
//!
//! Machine-readable output is JSON on stdout; one-line summaries go to
//! stderr. Exit status: 0 when the checked property holds (or the model is
//! valid), 1 when it fails, 2 on usage, I/O or parse errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use protoalg::bridge::{expand_to_interactive, verify_embedding, ExpansionSpec};
use protoalg::equivalence::{
    check_equivalence, check_isomorphism, greatest_simulation, validate_equivalence_witness, validate_iso_witness,
    validate_simulation_witness,
};
use protoalg::format::{
    embedding_report_to_json, parse_definition, parse_witness, relation_to_json, run_set_to_json,
    serialize_definition, serialize_witness, to_canonical_string, validation_report_to_json, witness_to_json,
    WitnessDocument,
};
use protoalg::model::{validate, Atom, Kind, ProtoAlgorithm, Table};
use protoalg::semantics::{computed_relation, run_set, Mode, StateSpace};
use protoalg::Error;

#[derive(Parser)]
#[command(name = "protoalg", version, about = "Proto-algorithms over finite domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a definition.
    Validate { path: PathBuf },
    /// List the runs on an input value or input stream.
    Run {
        path: PathBuf,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        input: Vec<String>,
        #[arg(long, value_enum, default_value_t = StepMode::Algorithmic)]
        mode: StepMode,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// List the computed relation.
    Relation {
        path: PathBuf,
        /// Longest input stream explored (interactive models only).
        #[arg(long, default_value_t = 3)]
        max_stream_len: usize,
    },
    /// Decide isomorphism, simulation or equivalence of A by B.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Expand a non-interactive definition into a trivial interactive one.
    Embed {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// JSON object `{d: {din: d}}`; defaults to ignoring the input.
        #[arg(long, requires = "out_table")]
        in_table: Option<PathBuf>,
        /// JSON object `{d: dout}`; defaults to the `fin` table.
        #[arg(long, requires = "in_table")]
        out_table: Option<PathBuf>,
    },
    /// Re-check a witness file against the two definitions it relates.
    VerifyWitness { a: PathBuf, b: PathBuf, witness: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum StepMode {
    Algorithmic,
    Computational,
}

impl From<StepMode> for Mode {
    fn from(m: StepMode) -> Mode {
        match m {
            StepMode::Algorithmic => Mode::Algorithmic,
            StepMode::Computational => Mode::Computational,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Iso,
    Asim,
    Csim,
    Aeqv,
    Ceqv,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Iso => "iso",
            CheckKind::Asim => "asim",
            CheckKind::Csim => "csim",
            CheckKind::Aeqv => "aeqv",
            CheckKind::Ceqv => "ceqv",
        }
    }
}

/// What a command prints and how it exits.
struct Outcome {
    json: Value,
    holds: bool,
    summary: String,
}

/// Usage, I/O and parse problems (exit 2).
struct Fatal(String);

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fatal> {
    std::fs::write(path, text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProtoAlgorithm, Fatal> {
    parse_definition(&read(path)?).map_err(|errs| {
        let lines: Vec<String> = errs.iter().map(|e| format!("{}: {e}", path.display())).collect();
        Fatal(lines.join("\n"))
    })
}

/// A parsed definition, or the outcome reporting why it is not valid.
fn load_valid(path: &Path) -> Result<Result<ProtoAlgorithm, Outcome>, Fatal> {
    let pa = load(path)?;
    let report = validate(&pa);
    if report.is_valid() {
        return Ok(Ok(pa));
    }
    Ok(Err(Outcome {
        json: json!({"file": path.display().to_string(), "validation": validation_report_to_json(&report)}),
        holds: false,
        summary: format!("{}: invalid ({})", path.display(), report.summary()),
    }))
}

macro_rules! valid_or_return {
    ($path:expr) => {
        match load_valid($path)? {
            Ok(pa) => pa,
            Err(outcome) => return Ok(outcome),
        }
    };
}

fn cmd_validate(path: &Path) -> Result<Outcome, Fatal> {
    let pa = load(path)?;
    let report = validate(&pa);
    let summary = if report.is_valid() {
        format!("{}: valid {} proto-algorithm", path.display(), pa.kind())
    } else {
        format!("{}: {} violation(s)", path.display(), report.violations.len())
    };
    Ok(Outcome { json: validation_report_to_json(&report), holds: report.is_valid(), summary })
}

fn cmd_run(path: &Path, input: &[String], mode: Mode, depth: usize) -> Result<Outcome, Fatal> {
    let pa = valid_or_return!(path);
    let din = &pa.interpretation.input_domain;
    let atoms: Vec<Atom> = input.iter().map(|s| Atom::resolve_key(s, din)).collect();
    let space = StateSpace::new(&pa)?;
    let runs = run_set(&space, &atoms, mode, depth)?;
    let complete = runs.complete().count();
    let mut json = run_set_to_json(&runs);
    json["mode"] = json!(mode.as_str());
    json["input"] = Value::Array(atoms.iter().map(Atom::to_json).collect());
    Ok(Outcome {
        json,
        holds: complete > 0,
        summary: format!("{} run(s), {complete} complete, {} residue", runs.runs.len(), runs.residue.len()),
    })
}

fn cmd_relation(path: &Path, max_stream_len: usize) -> Result<Outcome, Fatal> {
    let pa = valid_or_return!(path);
    if max_stream_len == 0 {
        return Err(Fatal("--max-stream-len must be at least 1".into()));
    }
    let rel = computed_relation(&StateSpace::new(&pa)?, max_stream_len);
    Ok(Outcome { json: relation_to_json(&rel), holds: !rel.is_empty(), summary: format!("{} pair(s)", rel.len()) })
}

fn decide(kind: CheckKind, a: &ProtoAlgorithm, b: &ProtoAlgorithm) -> Result<Option<WitnessDocument>, Error> {
    if let CheckKind::Iso = kind {
        return Ok(check_isomorphism(a, b)?.map(WitnessDocument::Isomorphism));
    }
    let (sa, sb) = (StateSpace::new(a)?, StateSpace::new(b)?);
    Ok(match kind {
        CheckKind::Asim => greatest_simulation(&sa, &sb, Mode::Algorithmic)?.map(WitnessDocument::Simulation),
        CheckKind::Csim => greatest_simulation(&sa, &sb, Mode::Computational)?.map(WitnessDocument::Simulation),
        CheckKind::Aeqv => check_equivalence(&sa, &sb, Mode::Algorithmic)?.map(WitnessDocument::Equivalence),
        CheckKind::Ceqv => check_equivalence(&sa, &sb, Mode::Computational)?.map(WitnessDocument::Equivalence),
        CheckKind::Iso => unreachable!(),
    })
}

fn cmd_check(kind: CheckKind, a: &Path, b: &Path, emit: Option<&Path>) -> Result<Outcome, Fatal> {
    let pa = valid_or_return!(a);
    let pb = valid_or_return!(b);
    let name = kind.name();
    let (witness, note) = match decide(kind, &pa, &pb) {
        Ok(w) => (w, None),
        // Models of different kinds are never related.
        Err(Error::KindMismatch { expected, found }) => (None, Some(format!("kinds differ: {expected} vs {found}"))),
        Err(e) => return Err(e.into()),
    };
    if let (Some(w), Some(path)) = (&witness, emit) {
        write(path, &serialize_witness(w))?;
    }
    let holds = witness.is_some();
    let mut json = json!({
        "check": name,
        "holds": holds,
        "witness": witness.as_ref().map_or(Value::Null, witness_to_json),
    });
    if let Some(n) = &note {
        json["note"] = json!(n);
    }
    let verdict = if holds { "holds" } else { "does not hold" };
    Ok(Outcome { json, holds, summary: format!("{name}: {verdict}{}", note.map(|n| format!(" ({n})")).unwrap_or_default()) })
}

fn read_json(path: &Path) -> Result<Value, Fatal> {
    serde_json::from_str(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn json_table(v: &Value, keys: &[Atom], path: &Path) -> Result<Table, Fatal> {
    let obj = v.as_object().ok_or_else(|| Fatal(format!("{}: expected an object", path.display())))?;
    obj.iter()
        .map(|(k, x)| {
            let value = Atom::from_json(x).ok_or_else(|| Fatal(format!("{}: `{k}` does not map to an atom", path.display())))?;
            Ok((Atom::resolve_key(k, keys), value))
        })
        .collect()
}

fn cmd_embed(path: &Path, out: &Path, tables: Option<(&Path, &Path)>) -> Result<Outcome, Fatal> {
    let na = load(path)?;
    if na.kind() != Kind::NonInteractive {
        return Err(Fatal(format!("{}: expected a non-interactive definition", path.display())));
    }
    if let Err(outcome) = load_valid(path)? {
        return Ok(outcome);
    }
    let i = &na.interpretation;
    let spec = match tables {
        None => ExpansionSpec::projection(&na),
        Some((in_path, out_path)) => {
            let raw = read_json(in_path)?;
            let outer = raw.as_object().ok_or_else(|| Fatal(format!("{}: expected an object", in_path.display())))?;
            let mut in_table = BTreeMap::new();
            for (k, inner) in outer {
                in_table.insert(Atom::resolve_key(k, &i.domain), json_table(inner, &i.input_domain, in_path)?);
            }
            ExpansionSpec { in_table, out_table: json_table(&read_json(out_path)?, &i.domain, out_path)? }
        }
    };
    let ia = match expand_to_interactive(&na, &spec) {
        Ok(ia) => ia,
        Err(Error::InvalidExpansion(report)) => {
            return Ok(Outcome {
                summary: format!("expansion is not valid ({})", report.summary()),
                json: json!({"expansion": validation_report_to_json(&report)}),
                holds: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    write(out, &serialize_definition(&ia))?;
    let report = verify_embedding(&na, &ia, 3)?;
    Ok(Outcome {
        json: json!({"output": out.display().to_string(), "embedding": embedding_report_to_json(&report)}),
        holds: report.holds(),
        summary: format!("wrote {}; embedding {}", out.display(), if report.holds() { "verified" } else { "FAILED" }),
    })
}

fn cmd_verify_witness(a: &Path, b: &Path, witness: &Path) -> Result<Outcome, Fatal> {
    let pa = valid_or_return!(a);
    let pb = valid_or_return!(b);
    let w = parse_witness(&read(witness)?).map_err(|errs| {
        Fatal(errs.iter().map(|e| format!("{}: {e}", witness.display())).collect::<Vec<_>>().join("\n"))
    })?;
    let errors = match &w {
        WitnessDocument::Isomorphism(w) => validate_iso_witness(&pa, &pb, w),
        WitnessDocument::Simulation(w) => validate_simulation_witness(&StateSpace::new(&pa)?, &StateSpace::new(&pb)?, w),
        WitnessDocument::Equivalence(w) => {
            validate_equivalence_witness(&StateSpace::new(&pa)?, &StateSpace::new(&pb)?, w)
        }
    };
    let holds = errors.is_empty();
    Ok(Outcome {
        summary: if holds { "witness is valid".into() } else { format!("witness rejected: {}", errors.join("; ")) },
        json: json!({"valid": holds, "errors": errors}),
        holds,
    })
}

fn dispatch(cli: Cli) -> Result<Outcome, Fatal> {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Run { path, input, mode, depth } => cmd_run(&path, &input, mode.into(), depth),
        Command::Relation { path, max_stream_len } => cmd_relation(&path, max_stream_len),
        Command::Check { kind, a, b, emit_witness } => cmd_check(kind, &a, &b, emit_witness.as_deref()),
        Command::Embed { path, out, in_table, out_table } => {
            cmd_embed(&path, &out, in_table.as_deref().zip(out_table.as_deref()))
        }
        Command::VerifyWitness { a, b, witness } => cmd_verify_witness(&a, &b, &witness),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(o) => {
            print!("{}", to_canonical_string(&o.json));
            eprintln!("{}", o.summary);
            ExitCode::from(if o.holds { 0 } else { 1 })
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
