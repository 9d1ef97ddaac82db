//! The `toupie` command line.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use toupie_core::algebra::{AlgebraError, BasedAlgebra};
use toupie_core::classifier::{classify, verify, ClassLabel, Evidence, VerificationReport};
use toupie_core::field::{format_scalar, parse_scalar, Scalar};
use toupie_core::ideal::{close_ideal, IdealError};
use toupie_core::minimal::minimal_relations;
use toupie_core::quiver::GeneralBoundQuiver;
use toupie_core::rep::{RepEngine, Representation};
use toupie_core::toupie::{parse_vertex, recognize_toupie, ToupiePresentation};
use toupie_core::witness::{build_d_xy, WitnessError, WitnessSpec};

use crate::evidence::{
    to_json, EvidenceDoc, InvariantsDoc, ModuleDoc, VerificationDoc, WitnessDoc, SCHEMA,
};
use crate::grammar::{self, SyntaxError};
use crate::literal::{format_module, parse_module};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "toupie",
    version,
    about = "Classify toupie bound quiver algebras and compute with their modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a presentation against the toupie and admissibility rules.
    Validate {
        /// Presentation file, or `-` for standard input.
        input: String,
    },
    /// Print m, simple connectedness, linkage, branches in I, relation counts
    /// and canonical parameters.
    Invariants {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Classify one or more presentations.
    Classify(ClassifyArgs),
    /// Build a witness module of the given family for the input algebra.
    Witness {
        input: String,
        /// Family tag as listed in the classification evidence.
        #[arg(long)]
        family: String,
        /// Parameter of a one-parameter family.
        #[arg(long)]
        lambda: Option<String>,
        /// Which witness of the family, counting from 1.
        #[arg(long, default_value_t = 1)]
        index: usize,
        /// Also write the witness's presentation to this file.
        #[arg(long)]
        quiver_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Auslander-Reiten translate of a module (default: rad P_0).
    Tau {
        input: String,
        /// Module in the representation literal format.
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Apply the inverse translate instead.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        json: bool,
    },
    /// Presentation of eAe for the idempotents at the given vertices.
    Truncate {
        input: String,
        /// Vertex labels such as `0,1.1,2.1,inf`.
        #[arg(long)]
        vertices: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Presentation files; `-` reads standard input.
    #[arg(required = true)]
    pub inputs: Vec<String>,
    /// Run the engine checks behind the label.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: bool,
    /// Worker threads for batches.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for the random-module checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Capacity(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Capacity(_) => EXIT_CAPACITY,
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::Capacity { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Capacity(_) => CliError::Capacity(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn read_input(io: &mut Io<'_>, path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        io.stdin
            .read_to_string(&mut s)
            .map_err(|e| CliError::Invalid(format!("standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn located(path: &str, e: SyntaxError) -> CliError {
    CliError::Invalid(format!("{path}:{}:{}: {}", e.line, e.column, e.message))
}

/// Parses, validates and puts the branches in canonical order.
fn load_text(path: &str, text: &str) -> Result<(ToupiePresentation, Option<String>)> {
    let p = grammar::parse(text).map_err(|e| located(path, e))?;
    let report = p.validate();
    if !report.is_valid() {
        let lines: Vec<String> = report
            .issues
            .iter()
            .map(|i| format!("{path}: {i}"))
            .collect();
        return Err(CliError::Invalid(lines.join("\n")));
    }
    let c = p.canonicalize();
    let note = (c.lengths() != p.lengths()).then(|| {
        format!(
            "branches reordered by length: lengths {}",
            c.lengths()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        )
    });
    Ok((c, note))
}

fn load(io: &mut Io<'_>, path: &str) -> Result<ToupiePresentation> {
    let text = read_input(io, path)?;
    let (p, note) = load_text(path, &text)?;
    if let Some(n) = note {
        let _ = writeln!(io.err, "{path}: note: {n}");
    }
    Ok(p)
}

fn emit(io: &mut Io<'_>, s: &str) -> Result<()> {
    io.out
        .write_all(s.as_bytes())
        .map_err(|e| CliError::Invalid(format!("output: {e}")))
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    match dispatch(&mut io, cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(io: &mut Io<'_>, cmd: Command) -> Result<i32> {
    match cmd {
        Command::Validate { input } => validate_cmd(io, &input),
        Command::Invariants { input, json } => invariants_cmd(io, &input, json),
        Command::Classify(args) => classify_cmd(io, args),
        Command::Witness {
            input,
            family,
            lambda,
            index,
            quiver_out,
            json,
        } => witness_cmd(
            io,
            &input,
            &family,
            lambda.as_deref(),
            index,
            quiver_out,
            json,
        ),
        Command::Tau {
            input,
            module,
            power,
            inverse,
            json,
        } => tau_cmd(io, &input, module.as_deref(), power, inverse, json),
        Command::Truncate {
            input,
            vertices,
            json,
        } => truncate_cmd(io, &input, &vertices, json),
    }
}

fn validate_cmd(io: &mut Io<'_>, input: &str) -> Result<i32> {
    let text = read_input(io, input)?;
    let p = match grammar::parse(&text) {
        Ok(p) => p,
        Err(e) => {
            writeln!(io.err, "{input}:{}:{}: {}", e.line, e.column, e.message).ok();
            return Ok(EXIT_INVALID);
        }
    };
    let report = p.validate();
    if !report.is_valid() {
        for i in &report.issues {
            writeln!(io.err, "{input}: {i}").ok();
        }
        return Ok(EXIT_INVALID);
    }
    let mut s = String::from("valid\n");
    if report.linear {
        s.push_str("linear: a single branch\n");
    }
    emit(io, &s)?;
    Ok(EXIT_OK)
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>, sep: &str) -> String {
    v.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn or_none(s: String) -> String {
    if s.is_empty() {
        "none".into()
    } else {
        s
    }
}

fn invariants_cmd(io: &mut Io<'_>, input: &str, json: bool) -> Result<i32> {
    let p = load(io, input)?;
    let c = close_ideal(&p)?;
    let cat = minimal_relations(&c)?;
    let doc = InvariantsDoc::new(&c, &cat);
    if json {
        emit(io, &to_json(&doc))?;
        return Ok(EXIT_OK);
    }
    let mut s = String::new();
    writeln!(s, "t: {}", doc.t).unwrap();
    writeln!(s, "m: {}", doc.m).unwrap();
    writeln!(s, "lengths: {}", join(&doc.lengths, " ")).unwrap();
    writeln!(s, "simply_connected: {}", doc.simply_connected).unwrap();
    writeln!(
        s,
        "linkage: {}",
        or_none(join(
            doc.linkage_edges.iter().map(|[a, b]| format!("{a}-{b}")),
            " "
        ))
    )
    .unwrap();
    writeln!(
        s,
        "branches_in_I: {}",
        or_none(join(&doc.branches_in_i, " "))
    )
    .unwrap();
    writeln!(
        s,
        "relations_per_branch: {}",
        join(&doc.relations_per_branch, " ")
    )
    .unwrap();
    match &doc.canonical {
        Some(c) => writeln!(s, "canonical: lambdas {}", join(&c.lambdas, " ")).unwrap(),
        None => writeln!(s, "canonical: none").unwrap(),
    }
    for r in &doc.minimal_relations {
        writeln!(
            s,
            "minimal_relation: {{{}}} ({})",
            join(&r.support, ","),
            join(&r.witness, ",")
        )
        .unwrap();
    }
    emit(io, &s)?;
    Ok(EXIT_OK)
}

struct Classified {
    label: ClassLabel,
    evidence: Evidence,
    report: Option<VerificationReport>,
}

fn classify_one(
    p: &ToupiePresentation,
    note: Option<String>,
    verify_seed: Option<u64>,
) -> Result<Classified> {
    let (label, mut evidence) = classify(p)?;
    if let Some(n) = note {
        evidence.warnings.insert(0, n);
    }
    let report = match verify_seed {
        Some(seed) => Some(verify(p, label, &evidence, seed)?),
        None => None,
    };
    Ok(Classified {
        label,
        evidence,
        report,
    })
}

fn evidence_doc(c: &Classified, seed: u64) -> EvidenceDoc {
    let mut doc = EvidenceDoc::new(c.label, &c.evidence);
    doc.verification = c.report.as_ref().map(|r| VerificationDoc::new(r, seed));
    doc
}

fn evidence_text(c: &Classified) -> String {
    let ev = &c.evidence;
    let mut s = String::new();
    writeln!(s, "label: {}", c.label.slug()).unwrap();
    writeln!(s, "fired_case: {}", ev.fired_case).unwrap();
    writeln!(s, "t: {}", ev.t).unwrap();
    writeln!(s, "m: {}", ev.m).unwrap();
    writeln!(s, "lengths: {}", join(&ev.lengths, " ")).unwrap();
    writeln!(s, "simply_connected: {}", ev.simply_connected).unwrap();
    writeln!(
        s,
        "linkage: {}",
        or_none(join(
            ev.linkage_edges
                .iter()
                .map(|&(a, b)| format!("{}-{}", a + 1, b + 1)),
            " "
        ))
    )
    .unwrap();
    writeln!(
        s,
        "branches_in_I: {}",
        or_none(join(ev.branches_in_i.iter().map(|b| b + 1), " "))
    )
    .unwrap();
    writeln!(
        s,
        "relations_per_branch: {}",
        join(&ev.relations_per_branch, " ")
    )
    .unwrap();
    match &ev.canonical {
        Some(l) => writeln!(
            s,
            "canonical: lambdas {}",
            join(l.iter().map(format_scalar), " ")
        )
        .unwrap(),
        None => writeln!(s, "canonical: none").unwrap(),
    }
    for w in &ev.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    for w in &ev.witnesses {
        let d = WitnessDoc::new(w);
        let mut line = format!("witness: {}", d.family);
        for (k, v) in &d.params.0 {
            line.push_str(&format!(" {k}={v}"));
        }
        writeln!(s, "{line}").unwrap();
    }
    if let Some(r) = &c.report {
        let failed = r.failures().count();
        if failed == 0 {
            writeln!(s, "verification: ok ({} checks)", r.checks.len()).unwrap();
        } else {
            writeln!(
                s,
                "verification: FAILED ({failed} of {} checks)",
                r.checks.len()
            )
            .unwrap();
        }
        for k in &r.checks {
            let mark = if k.passed { "ok  " } else { "FAIL" };
            if k.detail.is_empty() {
                writeln!(s, "  {mark} {}: {}", k.subject, k.property).unwrap();
            } else {
                writeln!(s, "  {mark} {}: {} ({})", k.subject, k.property, k.detail).unwrap();
            }
        }
    }
    s
}

#[derive(Serialize)]
struct BatchEntry {
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<EvidenceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn classify_cmd(io: &mut Io<'_>, args: ClassifyArgs) -> Result<i32> {
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let seed = args.verify.then_some(args.seed);
    if args.inputs.len() == 1 {
        let path = &args.inputs[0];
        let text = read_input(io, path)?;
        let (p, note) = load_text(path, &text)?;
        let c = classify_one(&p, note, seed)?;
        let out = if args.json {
            to_json(&evidence_doc(&c, args.seed))
        } else {
            evidence_text(&c)
        };
        emit(io, &out)?;
        let ok = c.report.as_ref().is_none_or(VerificationReport::ok);
        return Ok(if ok { EXIT_OK } else { EXIT_VERIFY });
    }

    let mut inputs = args.inputs.clone();
    inputs.sort();
    inputs.dedup();
    if inputs.iter().any(|i| i == "-") {
        return Err(CliError::Usage(
            "standard input cannot be part of a batch".into(),
        ));
    }
    let work = |path: &String| -> (String, Result<Classified>) {
        let r = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{path}: {e}")))
            .and_then(|text| load_text(path, &text))
            .and_then(|(p, note)| classify_one(&p, note, seed));
        (path.clone(), r)
    };
    let results: Vec<(String, Result<Classified>)> = if args.jobs == 1 {
        inputs.iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        pool.install(|| inputs.par_iter().map(work).collect())
    };

    let mut code = EXIT_OK;
    let mut entries = Vec::new();
    let mut text = String::new();
    for (path, r) in results {
        match r {
            Ok(c) => {
                if !c.report.as_ref().is_none_or(VerificationReport::ok) {
                    code = code.max(EXIT_VERIFY);
                }
                if args.json {
                    entries.push(BatchEntry {
                        input: path,
                        evidence: Some(evidence_doc(&c, args.seed)),
                        error: None,
                    });
                } else {
                    writeln!(text, "== {path}").unwrap();
                    text.push_str(&evidence_text(&c));
                }
            }
            Err(e) => {
                code = code.max(e.code());
                writeln!(io.err, "error: {e}").ok();
                if args.json {
                    entries.push(BatchEntry {
                        input: path,
                        evidence: None,
                        error: Some(e.to_string()),
                    });
                } else {
                    writeln!(text, "== {path}\nerror: {e}").unwrap();
                }
            }
        }
    }
    if args.json {
        emit(io, &to_json(&entries))?;
    } else {
        emit(io, &text)?;
    }
    Ok(code)
}

/// Rebuilds `spec`, with `lambda` substituted when the family has one.
fn rebuild(
    p: &ToupiePresentation,
    spec: &WitnessSpec,
    lambda: Option<Scalar>,
) -> Result<(ToupiePresentation, Representation)> {
    let mut spec = spec.clone();
    if let Some(v) = lambda {
        match &mut spec {
            WitnessSpec::NoBranchInIdeal { lambda, .. }
            | WitnessSpec::BranchInIdealM2 { lambda, .. }
            | WitnessSpec::TwoBranchesInIdeal { lambda, .. }
            | WitnessSpec::InfiniteFamily { lambda, .. } => *lambda = v,
            _ => {}
        }
    }
    let w = match spec.build() {
        Some(w) => w?,
        None => match spec {
            WitnessSpec::Dxy { x, y } => return Ok((p.clone(), build_d_xy(p, x, y)?)),
            _ => return Ok((p.clone(), RepEngine::from_toupie(p)?.rad_p0())),
        },
    };
    Ok((w.presentation, w.module))
}

#[derive(Serialize)]
struct WitnessOut {
    schema: u32,
    family: &'static str,
    params: crate::evidence::Params,
    presentation: String,
    module: ModuleDoc,
}

fn witness_cmd(
    io: &mut Io<'_>,
    input: &str,
    family: &str,
    lambda: Option<&str>,
    index: usize,
    quiver_out: Option<PathBuf>,
    json: bool,
) -> Result<i32> {
    let p = load(io, input)?;
    let lambda = lambda
        .map(|s| parse_scalar(s).map_err(|e| CliError::Usage(format!("--lambda: {e}"))))
        .transpose()?;
    let (_, ev) = classify(&p)?;
    let of_family: Vec<&WitnessSpec> = ev.witnesses.iter().filter(|w| w.tag() == family).collect();
    if of_family.is_empty() {
        let mut tags: Vec<&str> = ev.witnesses.iter().map(|w| w.tag()).collect();
        tags.dedup();
        return Err(CliError::Invalid(format!(
            "no `{family}` witness for this algebra (available: {})",
            or_none(tags.join(", "))
        )));
    }
    let spec = if lambda.is_some() {
        of_family[0]
    } else {
        *of_family.get(index.wrapping_sub(1)).ok_or_else(|| {
            CliError::Usage(format!(
                "--index {index}: only {} witnesses",
                of_family.len()
            ))
        })?
    };
    if lambda.is_some() && spec.lambda().is_none() {
        return Err(CliError::Usage(format!(
            "family `{family}` has no parameter"
        )));
    }
    let (wp, module) = rebuild(&p, spec, lambda.clone())?;
    let mut params = WitnessDoc::new(spec).params;
    if let Some(l) = &lambda {
        for (k, v) in &mut params.0 {
            if k == "lambda" {
                *v = format_scalar(l);
            }
        }
    }
    let q = wp.to_general();
    if let Some(path) = quiver_out {
        std::fs::write(&path, grammar::serialize(&wp))
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    }
    if json {
        let doc = WitnessOut {
            schema: SCHEMA,
            family: spec.tag(),
            params,
            presentation: grammar::serialize(&wp),
            module: ModuleDoc::new(&q, &module),
        };
        emit(io, &to_json(&doc))?;
    } else {
        let mut s = String::new();
        writeln!(
            s,
            "# family {} {}",
            spec.tag(),
            join(params.0.iter().map(|(k, v)| format!("{k}={v}")), " ")
        )
        .unwrap();
        writeln!(s, "# over the algebra").unwrap();
        grammar::write_presentation(&mut s, &wp, "#   ").unwrap();
        s.push_str(&format_module(&q, &module));
        emit(io, &s)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TauOut {
    schema: u32,
    power: usize,
    inverse: bool,
    dims: Vec<usize>,
    module: ModuleDoc,
}

fn tau_cmd(
    io: &mut Io<'_>,
    input: &str,
    module: Option<&str>,
    power: usize,
    inverse: bool,
    json: bool,
) -> Result<i32> {
    let p = load(io, input)?;
    let e = RepEngine::from_toupie(&p)?;
    let q = e.quiver().clone();
    let m = match module {
        None => e.rad_p0(),
        Some(path) => {
            let text = read_input(io, path)?;
            let m = parse_module(&q, &text).map_err(|err| located(path, err))?;
            if !m
                .check(&q)
                .map_err(|err| CliError::Invalid(format!("{path}: {err}")))?
            {
                return Err(CliError::Invalid(format!(
                    "{path}: the module does not satisfy the relations"
                )));
            }
            m
        }
    };
    let mut r = m;
    for _ in 0..power {
        r = if inverse {
            e.tau_inverse(&r)
        } else {
            e.tau(&r)
        };
    }
    if json {
        let doc = TauOut {
            schema: SCHEMA,
            power,
            inverse,
            dims: r.dims.clone(),
            module: ModuleDoc::new(&q, &r),
        };
        emit(io, &to_json(&doc))?;
    } else {
        emit(io, &format_module(&q, &r))?;
    }
    Ok(EXIT_OK)
}

fn general_text(g: &GeneralBoundQuiver) -> String {
    let mut s = String::new();
    writeln!(s, "field {}", g.field).unwrap();
    writeln!(s, "vertices {}", g.vertices.join(" ")).unwrap();
    for a in &g.arrows {
        writeln!(
            s,
            "arrow {} {} {}",
            a.label, g.vertices[a.source], g.vertices[a.target]
        )
        .unwrap();
    }
    for r in &g.relations {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|(c, p)| {
                let labels: Vec<&str> = p
                    .arrows
                    .iter()
                    .map(|&a| g.arrows[a].label.as_str())
                    .collect();
                format!("{} {}", format_scalar(c), labels.join("*"))
            })
            .collect();
        writeln!(s, "relation {}", terms.join(" + ")).unwrap();
    }
    s
}

#[derive(Serialize)]
struct ArrowDoc {
    label: String,
    source: String,
    target: String,
}

#[derive(Serialize)]
struct TermDoc {
    coefficient: String,
    path: Vec<String>,
}

#[derive(Serialize)]
struct TruncateOut {
    schema: u32,
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
    relations: Vec<Vec<TermDoc>>,
    toupie: Option<String>,
}

fn truncate_cmd(io: &mut Io<'_>, input: &str, vertices: &str, json: bool) -> Result<i32> {
    let p = load(io, input)?;
    let mut idx = Vec::new();
    for label in vertices
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
    {
        let v = parse_vertex(label)
            .ok_or_else(|| CliError::Usage(format!("--vertices: bad vertex `{label}`")))?;
        let i = p.quiver.vertex_index(v).ok_or_else(|| {
            CliError::Invalid(format!("--vertices: no vertex `{label}` in this quiver"))
        })?;
        idx.push(i);
    }
    if idx.is_empty() {
        return Err(CliError::Usage("--vertices: empty vertex list".into()));
    }
    let a = BasedAlgebra::from_toupie(&p)?;
    let g = a.truncate(&idx)?;
    let toupie = recognize_toupie(&g).map(|t| grammar::serialize(&t));
    if json {
        let doc = TruncateOut {
            schema: SCHEMA,
            vertices: g.vertices.clone(),
            arrows: g
                .arrows
                .iter()
                .map(|x| ArrowDoc {
                    label: x.label.clone(),
                    source: g.vertices[x.source].clone(),
                    target: g.vertices[x.target].clone(),
                })
                .collect(),
            relations: g
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermDoc {
                            coefficient: format_scalar(c),
                            path: path
                                .arrows
                                .iter()
                                .map(|&x| g.arrows[x].label.clone())
                                .collect(),
                        })
                        .collect()
                })
                .collect(),
            toupie,
        };
        emit(io, &to_json(&doc))?;
    } else {
        let mut s = general_text(&g);
        if let Some(t) = toupie {
            s.push_str("# toupie presentation\n");
            for line in t.lines() {
                writeln!(s, "#   {line}").unwrap();
            }
        }
        emit(io, &s)?;
    }
    Ok(EXIT_OK)
}
