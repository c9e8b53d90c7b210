//! The `toric-resolve` command line.
//!
//! Exit codes: 0 success, 1 domain failure (invalid data, unknown face,
//! rejected point or vector), 2 input or schema failure, 3 resolution
//! guard exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::charpair::{HyperCharPair, RCharPair};
use crate::cobordism::{
    cobound_with, cone_hyper_characteristic, transverse_violation, CobordismCertificate,
};
use crate::error::{Error, Result};
use crate::io::{
    parse_document, parse_input, parse_rational, to_canonical_json, Document, Input,
    InputDocument, InputKind, OutputDocument, OutputKind,
};
use crate::lattice::{IntVector, RationalVector};
use crate::polytope::{Face, SimplePolytope, ValidationReport};
use crate::resolution::{
    blowup_pair, choice_from_coefficients, choose_lattice_point, resolve, FaceRule, PointRule,
    ResolutionConfig, ResolutionTrace,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toric-resolve", version, about = "Singularity orders, blowup resolutions and cobordism certificates for characteristic pairs")]
pub struct Cli {
    /// Input document; standard input when omitted or `-`.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a polytope, pair or embedded polytope against its invariants.
    Validate {
        /// Expected document kind; `polytope` checks only the polytope of a pair.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Orders of faces of an R-characteristic pair.
    Orders(OrdersArgs),
    /// Blow up one face of an R-characteristic pair.
    Blowup {
        /// Facet names or indices, comma separated, or facet vectors `(a,b,c),(d,e,f)`.
        #[arg(long)]
        face: String,
        /// `auto`, or coefficients `c1,c2,...` such as `1/2,1/2`.
        #[arg(long, default_value = "auto")]
        point: String,
    },
    /// Blow up maximal singular faces until every vertex is smooth.
    Resolve {
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = FaceRuleArg::MaxOrderThenLex)]
        face_rule: FaceRuleArg,
        #[arg(long, value_enum, default_value_t = PointRuleArg::MinSumThenLex)]
        point_rule: PointRuleArg,
        /// Also write the full trace document here.
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Build and resolve the capped prism over a hyper characteristic pair.
    Cobound {
        /// `auto`, or the cap vector `a1,a2,...`.
        #[arg(long, default_value = "auto")]
        transverse: String,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Also write the certificate document here.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Facet normals of the cone over an embedded polytope.
    ConeNormals,
    /// Recompute a trace or certificate document and compare it byte for byte.
    Replay,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OrdersArgs {
    /// All faces of this codimension.
    #[arg(long)]
    codim: Option<usize>,
    /// A single face.
    #[arg(long)]
    face: Option<String>,
    /// The singular locus with maximality flags.
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Polytope,
    Rcharpair,
    Hypercharpair,
    EmbeddedPolytope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaceRuleArg {
    MaxOrderThenLex,
    LexOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PointRuleArg {
    MinSumThenLex,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Schema(_) | Error::Json(_) | Error::Io(_) => EXIT_INPUT,
        Error::GuardExceeded { .. } => EXIT_GUARD,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    run_cli(&cli, stdin)
}

pub fn run_cli(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let (code, body, err) = match execute(cli, stdin) {
        Ok(Rendered { code, body }) => (code, body, None),
        Err(Failure { error, body }) => (exit_code(&error), body, Some(error)),
    };
    let mut out = Outcome {
        code,
        ..Outcome::default()
    };
    if let Some(e) = err {
        out.stderr = format!("error: {e}\n");
    }
    if let Some(body) = body {
        match &cli.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, body) {
                    out.code = EXIT_INPUT;
                    out.stderr.push_str(&format!("error: writing {}: {e}\n", path.display()));
                }
            }
            None => out.stdout = body,
        }
    }
    out
}

struct Rendered {
    code: i32,
    body: Option<String>,
}

/// An error, possibly with a document still worth printing.
struct Failure {
    error: Error,
    body: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, body: None }
    }
}

type CmdResult = std::result::Result<Rendered, Failure>;

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match cli.input.as_deref() {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::Schema(format!("reading {}: {e}", p.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> CmdResult {
    let text = read_input(cli, stdin)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { kind } => cmd_validate(&text, *kind, fmt),
        Command::Orders(args) => cmd_orders(&text, args, fmt),
        Command::Blowup { face, point } => cmd_blowup(&text, face, point, fmt),
        Command::Resolve {
            max_steps,
            face_rule,
            point_rule,
            emit_trace,
        } => {
            let config = ResolutionConfig {
                max_steps: *max_steps,
                face_rule: match face_rule {
                    FaceRuleArg::MaxOrderThenLex => FaceRule::MaxOrderThenLex,
                    FaceRuleArg::LexOnly => FaceRule::LexOnly,
                },
                point_rule: match point_rule {
                    PointRuleArg::MinSumThenLex => PointRule::MinSumThenLex,
                },
            };
            cmd_resolve(&text, &config, emit_trace.as_deref(), fmt)
        }
        Command::Cobound {
            transverse,
            max_steps,
            emit_certificate,
        } => {
            let config = ResolutionConfig {
                max_steps: *max_steps,
                ..ResolutionConfig::default()
            };
            cmd_cobound(&text, transverse, &config, emit_certificate.as_deref(), fmt)
        }
        Command::ConeNormals => cmd_cone_normals(&text, fmt),
        Command::Replay => cmd_replay(&text, fmt),
    }
}

fn json_body(doc: &impl Serialize) -> Result<Option<String>> {
    to_canonical_json(doc).map(Some)
}

fn emit(
    kind: OutputKind,
    config: Value,
    payload: impl Serialize,
    fmt: Format,
    text: impl FnOnce(&Value) -> String,
) -> Result<Option<String>> {
    let doc = OutputDocument::new(kind, config, payload)?;
    match fmt {
        Format::Json => json_body(&doc),
        Format::Text => Ok(Some(text(&doc.payload))),
    }
}

fn wrong_kind(expected: &str, got: InputKind) -> Error {
    Error::Schema(format!("expected a {expected} document, got {got}"))
}

fn expect_rcharpair(text: &str) -> Result<RCharPair> {
    match parse_input(text)? {
        Input::RCharPair(p) => {
            p.ensure_valid()?;
            Ok(p)
        }
        other => Err(wrong_kind("rcharpair", other.kind())),
    }
}

fn expect_hypercharpair(text: &str) -> Result<HyperCharPair> {
    match parse_input(text)? {
        Input::HyperCharPair(p) => {
            p.ensure_valid()?;
            Ok(p)
        }
        other => Err(wrong_kind("hypercharpair", other.kind())),
    }
}

fn report_text(report: &ValidationReport) -> String {
    if report.is_valid() {
        return "valid\n".into();
    }
    let mut s = String::from("invalid\n");
    for v in &report.violations {
        let _ = writeln!(s, "  {}", v.message);
    }
    s
}

fn cmd_validate(text: &str, kind: Option<KindArg>, fmt: Format) -> CmdResult {
    let input = parse_input(text)?;
    let got = input.kind();
    let report = match (kind, input) {
        (Some(KindArg::Polytope), Input::RCharPair(p)) => p.polytope().validate(),
        (Some(KindArg::Polytope), Input::HyperCharPair(p)) => p.polytope().validate(),
        (Some(KindArg::Polytope), Input::Embedded(e)) => e.polytope.validate(),
        (Some(k), _) if kind_matches(k) != got => {
            return Err(wrong_kind(&kind_matches(k).to_string(), got).into())
        }
        (_, Input::Polytope(p)) => p.validate(),
        (_, Input::RCharPair(p)) => p.validate_r_characteristic(),
        (_, Input::HyperCharPair(p)) => p.validate_hyper_characteristic(),
        (_, Input::Embedded(e)) => e.validate(),
    };
    let checked = kind.map_or(got, kind_matches);
    let valid = report.is_valid();
    let payload = json!({
        "input_kind": got,
        "checked_as": checked,
        "valid": valid,
        "violations": report.violations,
    });
    let body = emit(
        OutputKind::Report,
        json!({ "kind": kind.map(kind_matches) }),
        payload,
        fmt,
        |_| report_text(&report),
    )?;
    Ok(Rendered {
        code: if valid { EXIT_OK } else { EXIT_DOMAIN },
        body,
    })
}

fn kind_matches(k: KindArg) -> InputKind {
    match k {
        KindArg::Polytope => InputKind::Polytope,
        KindArg::Rcharpair => InputKind::Rcharpair,
        KindArg::Hypercharpair => InputKind::Hypercharpair,
        KindArg::EmbeddedPolytope => InputKind::EmbeddedPolytope,
    }
}

/// Resolves a face argument against a polytope: facet names first, then
/// indices; or a list of parenthesized vectors matched against facets.
pub fn parse_face(arg: &str, polytope: &SimplePolytope, vectors: &[IntVector]) -> Result<Face> {
    let arg = arg.trim();
    if arg.starts_with('(') {
        let mut facets = Vec::new();
        for chunk in arg.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = chunk.trim_start_matches(',').trim().trim_start_matches('(');
            let v = parse_int_list(body)?;
            let hits: Vec<usize> = (0..vectors.len()).filter(|&i| vectors[i] == v).collect();
            match hits.as_slice() {
                [i] => facets.push(*i),
                [] => return Err(Error::InvalidPoint(format!("no facet carries {v}"))),
                _ => {
                    return Err(Error::InvalidPoint(format!(
                        "vector {v} is on several facets; name the facets instead"
                    )))
                }
            }
        }
        return checked_face(facets, polytope);
    }
    let mut facets = Vec::new();
    for token in arg.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let idx = polytope
            .facet_index(token)
            .or_else(|| token.parse::<usize>().ok().filter(|&i| i < polytope.num_facets()))
            .ok_or_else(|| Error::InvalidPoint(format!("unknown facet {token:?}")))?;
        facets.push(idx);
    }
    checked_face(facets, polytope)
}

fn checked_face(facets: Vec<usize>, polytope: &SimplePolytope) -> Result<Face> {
    let face = Face::new(facets.iter().copied());
    if face.codim() != facets.len() {
        return Err(Error::InvalidPoint("a facet is listed twice".into()));
    }
    if face.codim() == 0 || !polytope.is_face(&face) {
        return Err(Error::InvalidFace(face.indices()));
    }
    Ok(face)
}

/// Drops one pair of surrounding parentheses, so `(1,2,0)` and `1,2,0`
/// read the same.
fn unparen(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
}

fn parse_int_list(s: &str) -> Result<IntVector> {
    let entries = unparen(s)
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<num_bigint::BigInt>()
                .map_err(|_| Error::Schema(format!("{t:?} is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntVector::new(entries))
}

fn face_names(face: &Face, polytope: &SimplePolytope) -> Vec<String> {
    face.indices()
        .into_iter()
        .map(|i| polytope.facet_name(i).to_string())
        .collect()
}

fn cmd_orders(text: &str, args: &OrdersArgs, fmt: Format) -> CmdResult {
    let pair = expect_rcharpair(text)?;
    let p = pair.polytope();
    if args.all {
        let locus = pair.singular_locus()?;
        let entries: Vec<Value> = locus
            .entries
            .iter()
            .map(|e| {
                json!({
                    "face": e.face,
                    "names": face_names(&e.face, p),
                    "order": crate::io::JsonInt(&e.order),
                    "maximal": e.maximal,
                })
            })
            .collect();
        let body = emit(
            OutputKind::Locus,
            json!({ "all": true }),
            json!({ "entries": entries }),
            fmt,
            |_| {
                let mut s = String::new();
                if locus.is_empty() {
                    s.push_str("no singular faces\n");
                }
                for e in &locus.entries {
                    let _ = writeln!(
                        s,
                        "{:<16} {:<24} order {}{}",
                        e.face.to_string(),
                        face_names(&e.face, p).join(","),
                        e.order,
                        if e.maximal { "  maximal" } else { "" }
                    );
                }
                s
            },
        )?;
        return Ok(Rendered { code: EXIT_OK, body });
    }
    let (faces, config) = match (&args.face, args.codim) {
        (Some(arg), _) => (vec![parse_face(arg, p, pair.vectors())?], json!({ "face": arg })),
        (None, Some(k)) => {
            if k == 0 || k > p.dim() {
                return Err(Error::CodimOutOfRange { codim: k, dim: p.dim() }.into());
            }
            (p.faces_of_codim(k)?, json!({ "codim": k }))
        }
        (None, None) => unreachable!("clap requires one selector"),
    };
    let mut rows = Vec::with_capacity(faces.len());
    for f in &faces {
        rows.push((f.clone(), pair.face_order(f)?));
    }
    let entries: Vec<Value> = rows
        .iter()
        .map(|(f, o)| {
            json!({
                "face": f,
                "names": face_names(f, p),
                "order": crate::io::JsonInt(o),
            })
        })
        .collect();
    let body = emit(OutputKind::Orders, config, json!({ "entries": entries }), fmt, |_| {
        let mut s = String::new();
        for (f, o) in &rows {
            let _ = writeln!(s, "{:<16} {:<24} order {o}", f.to_string(), face_names(f, p).join(","));
        }
        s
    })?;
    Ok(Rendered { code: EXIT_OK, body })
}

fn parse_point(arg: &str) -> Result<RationalVector> {
    let entries = unparen(arg)
        .split(',')
        .map(|t| parse_rational(t).map_err(|_| Error::Schema(format!("{t:?} is not a rational number"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalVector::new(entries))
}

fn cmd_blowup(text: &str, face: &str, point: &str, fmt: Format) -> CmdResult {
    let pair = expect_rcharpair(text)?;
    let face = parse_face(face, pair.polytope(), pair.vectors())?;
    let choice = if point.trim() == "auto" {
        choose_lattice_point(&pair, &face, PointRule::default())?
    } else {
        choice_from_coefficients(&pair, &face, parse_point(point)?)?
    };
    let blown = blowup_pair(&pair, &choice)?;
    let payload = json!({
        "choice": choice,
        "face_names": face_names(&face, pair.polytope()),
        "new_facet": blown.new_facet,
        "provenance": blown.provenance,
        "pair": InputDocument::from_rcharpair(&blown.pair),
    });
    let body = emit(
        OutputKind::BlowupResult,
        json!({ "face": face, "point": point.trim() }),
        payload,
        fmt,
        |_| {
            format!(
                "blew up {} ({}) at c = {} -> {}\nnew facet {} carries {} (d = {})\n{} facets, {} vertices\n",
                face,
                face_names(&face, pair.polytope()).join(","),
                choice.coefficients,
                choice.lattice_point,
                blown.new_facet,
                choice.new_vector,
                choice.d,
                blown.pair.polytope().num_facets(),
                blown.pair.polytope().num_vertices(),
            )
        },
    )?;
    Ok(Rendered { code: EXIT_OK, body })
}

fn trace_document(trace: &ResolutionTrace) -> Result<OutputDocument> {
    OutputDocument::new(OutputKind::Trace, serde_json::to_value(&trace.config)?, trace)
}

fn trace_text(trace: &ResolutionTrace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>4}  {:<16} {:>6}  {:<20} {:<16} vertices", "step", "face", "order", "c", "new vector");
    for (i, step) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>4}  {:<16} {:>6}  {:<20} {:<16} {} -> {}",
            i + 1,
            step.choice.face.to_string(),
            step.face_order.to_string(),
            step.choice.coefficients.to_string(),
            step.choice.new_vector.to_string(),
            step.before.vertices,
            step.after.vertices,
        );
    }
    let p = trace.final_pair.polytope();
    let _ = writeln!(
        s,
        "{} steps; final pair has {} facets and {} vertices",
        trace.steps.len(),
        p.num_facets(),
        p.num_vertices()
    );
    s
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::Schema(format!("writing {}: {e}", path.display())))
}

fn cmd_resolve(
    text: &str,
    config: &ResolutionConfig,
    emit_trace: Option<&Path>,
    fmt: Format,
) -> CmdResult {
    let pair = expect_rcharpair(text)?;
    let (trace, failure) = match resolve(&pair, config) {
        Ok(t) => (t, None),
        Err(Error::GuardExceeded { max_steps, partial }) => {
            let trace = (*partial).clone();
            (trace, Some(Error::GuardExceeded { max_steps, partial }))
        }
        Err(e) => return Err(e.into()),
    };
    let doc = trace_document(&trace)?;
    let json = to_canonical_json(&doc)?;
    if let Some(path) = emit_trace {
        write_file(path, &json)?;
    }
    let body = Some(match fmt {
        Format::Json => json,
        Format::Text => trace_text(&trace),
    });
    match failure {
        None => Ok(Rendered { code: EXIT_OK, body }),
        Some(error) => Err(Failure { error, body }),
    }
}

fn certificate_document(cert: &CobordismCertificate) -> Result<OutputDocument> {
    OutputDocument::new(
        OutputKind::Certificate,
        json!({
            "resolution": cert.trace.config,
            "transverse": if cert.searched { json!("auto") } else { serde_json::to_value(&cert.transverse_vector)? },
        }),
        cert,
    )
}

fn certificate_text(cert: &CobordismCertificate) -> String {
    let mut s = format!(
        "cap vector {} ({})\n",
        cert.transverse_vector,
        if cert.searched { "searched" } else { "given" }
    );
    for l in &cert.locality {
        let _ = writeln!(s, "step {}: {} at the {} cap", l.step + 1, l.face, l.cap);
    }
    let p = cert.trace.final_pair.polytope();
    let _ = writeln!(
        s,
        "{} steps; bounding pair has {} facets and {} vertices",
        cert.trace.steps.len(),
        p.num_facets(),
        p.num_vertices()
    );
    s
}

fn cmd_cobound(
    text: &str,
    transverse: &str,
    config: &ResolutionConfig,
    emit_certificate: Option<&Path>,
    fmt: Format,
) -> CmdResult {
    let pair = expect_hypercharpair(text)?;
    let given = if transverse.trim() == "auto" {
        None
    } else {
        let a = parse_int_list(transverse)?;
        if let Some(vertex) = transverse_violation(&pair, &a)? {
            return Err(Error::NotTransverse {
                vertex,
                vector: a.to_string(),
            }
            .into());
        }
        Some(a)
    };
    let cert = cobound_with(&pair, given.as_ref(), config)?;
    let json = to_canonical_json(&certificate_document(&cert)?)?;
    if let Some(path) = emit_certificate {
        write_file(path, &json)?;
    }
    let body = Some(match fmt {
        Format::Json => json,
        Format::Text => certificate_text(&cert),
    });
    Ok(Rendered { code: EXIT_OK, body })
}

fn cmd_cone_normals(text: &str, fmt: Format) -> CmdResult {
    let ep = match parse_input(text)? {
        Input::Embedded(ep) => ep,
        other => return Err(wrong_kind("embedded_polytope", other.kind()).into()),
    };
    let cone = cone_hyper_characteristic(&ep)?;
    let mut doc = InputDocument::from_hypercharpair(&cone.pair);
    doc.metadata.insert(
        "report".into(),
        json!({ "valid": cone.report.is_valid(), "violations": cone.report.violations }),
    );
    let body = Some(match fmt {
        Format::Json => to_canonical_json(&doc)?,
        Format::Text => {
            let mut s = String::new();
            for (i, v) in cone.pair.vectors().iter().enumerate() {
                let _ = writeln!(s, "{:<12} {v}", cone.pair.polytope().facet_name(i));
            }
            s + &report_text(&cone.report)
        }
    });
    if cone.report.is_valid() {
        Ok(Rendered { code: EXIT_OK, body })
    } else {
        Err(Failure {
            error: Error::InvalidPair(cone.report),
            body,
        })
    }
}

fn cmd_replay(text: &str, fmt: Format) -> CmdResult {
    let Document::Output(out) = parse_document(text)? else {
        return Err(Error::Schema("replay expects a trace or certificate document".into()).into());
    };
    let original = to_canonical_json(&out)?;
    let schema = |e: serde_json::Error| Error::Schema(e.to_string());
    let (kind, fresh, steps) = match out.kind {
        OutputKind::Trace => {
            let trace: ResolutionTrace = serde_json::from_value(out.payload.clone()).map_err(schema)?;
            trace.replay()?;
            let again = resolve(&trace.initial, &trace.config)?;
            (out.kind, to_canonical_json(&trace_document(&again)?)?, again.steps.len())
        }
        OutputKind::Certificate => {
            let cert: CobordismCertificate =
                serde_json::from_value(out.payload.clone()).map_err(schema)?;
            cert.replay()?;
            let given = (!cert.searched).then_some(&cert.transverse_vector);
            let again = cobound_with(&cert.boundary, given, &cert.trace.config)?;
            (out.kind, to_canonical_json(&certificate_document(&again)?)?, again.trace.steps.len())
        }
        _ => {
            return Err(Error::Schema("replay expects a trace or certificate document".into()).into())
        }
    };
    if fresh != original {
        return Err(Error::ReplayMismatch("recomputed document differs from the input".into()).into());
    }
    let body = emit(
        OutputKind::Report,
        json!({}),
        json!({ "replayed": kind, "steps": steps, "identical": true }),
        fmt,
        |_| format!("replayed {steps} steps; output identical\n"),
    )?;
    Ok(Rendered { code: EXIT_OK, body })
}
