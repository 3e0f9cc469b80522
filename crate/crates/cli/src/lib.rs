//! Command-line surface: argument parsing, dispatch to the library and
//! report rendering.
//!
//! Every command produces a [`Report`], printed as indented text or as JSON
//! (`--format json`). Rationals are always strings `p/q` (or `p` when
//! integral); polynomials and maps are strings in the input grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use folia::certificates::{self, Closure, FitOutcome};
use folia::degeneration::{self, Absence, DegenerationCertificate, Outcome};
use folia::form::{parse_form, parse_param, parse_rational, rat};
use folia::{corpus, inflection, local, symmetry, Error, Foliation, ProjectiveMap};
use folia_algebra::{QPoly, Vars, Q};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A mathematical claim was checked and found false.
    Falsified,
    /// A semi-decision did not conclude.
    Inconclusive,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Falsified => 1,
            Status::Inconclusive => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Falsified => "falsified",
            Status::Inconclusive => "inconclusive",
        }
    }
}

pub const USAGE_ERROR: i32 = 3;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub notes: Vec<String>,
    pub status: Status,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Map::new(), results: Map::new(), notes: Vec::new(), status: Status::Ok }
    }

    fn input(&mut self, k: &str, v: impl Into<Value>) {
        self.inputs.insert(k.into(), v.into());
    }

    fn put(&mut self, k: &str, v: impl Into<Value>) {
        self.results.insert(k.into(), v.into());
    }

    /// Keeps the weaker of two statuses.
    fn degrade(&mut self, s: Status) {
        if self.status == Status::Ok || s == Status::Falsified {
            self.status = s;
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "notes": self.notes,
            "status": self.status.name(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.inputs.is_empty() {
            out.push_str("inputs:\n");
            write_map(&mut out, &self.inputs, 1);
        }
        out.push_str("results:\n");
        write_map(&mut out, &self.results, 1);
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("status: {}\n", self.status.name()));
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn write_map(out: &mut String, m: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_value(out, v, depth + 1);
            }
        }
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => write_map(out, m, depth),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for it in items {
                match scalar(it) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, it, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

#[derive(Parser, Debug)]
#[command(name = "folia", about = "Exact computations with foliations of the projective plane")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Where the foliation comes from: exactly one of `--form`, `--file`,
/// `--corpus`.
#[derive(Args, Debug)]
struct Input {
    /// A 1-form, e.g. "x*dy - 2*y*dx + y^2*dy @ z=1" or "a; b; c".
    #[arg(long)]
    form: Option<String>,
    /// File holding a 1-form.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Corpus entry name (see `corpus --list`).
    #[arg(long)]
    corpus: Option<String>,
    /// Degree for corpus entries.
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Parameter values NAME=VALUE, such as lambda=3/2.
    #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    params: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    F1,
    F2,
    H12,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyArg {
    P3,
    P4,
    P5,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular points, local invariants, inflection divisor and isotropy.
    Analyze(Input),
    /// Singular points with their local invariants.
    Invariants(Input),
    /// Inflection divisor split into invariant and transverse parts.
    Inflection(Input),
    /// Whether the foliation is convex.
    Convex(Input),
    /// Dimension of the isotropy algebra.
    IsoDim(Input),
    /// Certified degeneration onto a model foliation.
    Degenerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        target: TargetArg,
    },
    /// Coordinates of the foliation in the space of degree-d foliations.
    Xi(Input),
    /// Evaluates a stored certificate on random points of the orbit of F0(lambda).
    Certify {
        #[arg(long, value_enum)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Also check the certificate with symbolic map entries.
        #[arg(long)]
        symbolic: bool,
    },
    /// Fits the cubic certificate Q_d (d >= 6) and cross-validates it.
    FitQd {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        seed: u64,
        /// Maximum number of training samples (default: four times the unknowns).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 200)]
        held_out: usize,
    },
    /// Whether the orbit of F0(lambda) is closed.
    Closure {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Prints a corpus entry, or the list of entries.
    Corpus {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long)]
        list: bool,
    },
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run(argv: &[String]) -> Output {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.to_text(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("serializable")),
            };
            Output { code: r.status.code(), stdout, stderr: String::new() }
        }
        Err(e) => Output { code: error_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::DegenerateLimit { .. } => Status::Inconclusive.code(),
        _ => USAGE_ERROR,
    }
}

fn load(input: &Input, r: &mut Report) -> folia::Result<Foliation> {
    let params: Vec<(String, Q)> = input.params.iter().map(|p| parse_param(p)).collect::<folia::Result<_>>()?;
    let sources = [input.form.is_some(), input.file.is_some(), input.corpus.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(Error::Parse("give exactly one of --form, --file, --corpus".into()));
    }
    for (k, v) in &params {
        r.input(k, rat(v));
    }
    if let Some(name) = &input.corpus {
        let (_, pname) = corpus::NAMES
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown corpus entry `{name}`")))?;
        let value = pname.and_then(|p| params.iter().find(|(k, _)| k == p)).map(|(_, v)| v.clone());
        let e = corpus::entry(name, input.d, value)?;
        r.input("corpus", name.as_str());
        r.input("d", input.d);
        for (k, v) in &e.params {
            r.input(k, rat(v));
        }
        r.input("form", e.text.as_str());
        return Ok(e.foliation);
    }
    let text = match (&input.form, &input.file) {
        (Some(t), _) => t.clone(),
        (_, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?
        }
        _ => unreachable!(),
    };
    let text = text.trim().to_string();
    r.input("form", text.as_str());
    parse_form(&text, &params)
}

fn dispatch(cmd: &Command) -> folia::Result<Report> {
    match cmd {
        Command::Analyze(input) => {
            let mut r = Report::new("analyze");
            let f = load(input, &mut r)?;
            header(&mut r, &f);
            local_section(&mut r, &f)?;
            inflection_section(&mut r, &f)?;
            r.put("iso_dim", symmetry::symmetry_space(&f).dimension());
            Ok(r)
        }
        Command::Invariants(input) => {
            let mut r = Report::new("invariants");
            let f = load(input, &mut r)?;
            header(&mut r, &f);
            local_section(&mut r, &f)?;
            Ok(r)
        }
        Command::Inflection(input) => {
            let mut r = Report::new("inflection");
            let f = load(input, &mut r)?;
            header(&mut r, &f);
            inflection_section(&mut r, &f)?;
            Ok(r)
        }
        Command::Convex(input) => {
            let mut r = Report::new("convex");
            let f = load(input, &mut r)?;
            header(&mut r, &f);
            let dec = inflection::decompose_divisor(&f)?;
            r.put("convex", dec.transverse.degree() == 0);
            r.put("transverse_degree", dec.transverse.degree());
            Ok(r)
        }
        Command::IsoDim(input) => {
            let mut r = Report::new("iso-dim");
            let f = load(input, &mut r)?;
            header(&mut r, &f);
            let s = symmetry::symmetry_space(&f);
            r.put("iso_dim", s.dimension());
            r.put("orbit_dim", s.orbit_dimension());
            r.put("basis", s.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>());
            Ok(r)
        }
        Command::Degenerate { input, target } => {
            let mut r = Report::new("degenerate");
            let f = load(input, &mut r)?;
            r.input("target", format!("{target:?}").to_lowercase());
            header(&mut r, &f);
            let out = match target {
                TargetArg::F1 => degeneration::certify_f1_degeneration(&f)?,
                TargetArg::F2 => degeneration::certify_f2_degeneration(&f)?,
                TargetArg::H12 => degeneration::certify_h12_degeneration(&f)?,
            };
            match out {
                Outcome::Certified(c) => {
                    let v = certificate_json(&c)?;
                    if !c.replay()? {
                        r.degrade(Status::Falsified);
                    }
                    r.put("certified", true);
                    r.put("certificate", v);
                }
                Outcome::Absent(a) => {
                    r.put("certified", false);
                    let (kind, status) = match &a {
                        Absence::Obstruction(_) => ("obstruction", Status::Falsified),
                        Absence::NoWitness(_) => ("no-witness", Status::Inconclusive),
                        Absence::Inconclusive(_) => ("inconclusive", Status::Inconclusive),
                    };
                    r.put("absence", kind);
                    r.put("reason", a.reason());
                    r.degrade(status);
                }
            }
            Ok(r)
        }
        Command::Xi(input) => {
            let mut r = Report::new("xi");
            let f = load(input, &mut r)?;
            header(&mut r, &f);
            let p = certificates::to_xi(&f)?;
            r.put("length", p.coords.len());
            r.put("point", p.to_string());
            r.put("coordinates", p.coords.iter().map(rat).collect::<Vec<_>>());
            Ok(r)
        }
        Command::Certify { poly, lambda, samples, seed, symbolic } => {
            let mut r = Report::new("certify");
            let d = match poly {
                PolyArg::P3 => 3,
                PolyArg::P4 => 4,
                PolyArg::P5 => 5,
            };
            let lam = parse_rational(lambda)?;
            r.input("poly", format!("P{d}"));
            r.input("lambda", rat(&lam));
            r.input("samples", *samples);
            r.input("seed", *seed);
            let p = certificates::stored_certificate(d)?;
            r.put("sha256", certificates::source_checksum(d).unwrap_or_default());
            let rep = certificates::verify_certificate(&p, &lam, *samples, *seed)?;
            r.put("zeros", rep.zeros);
            r.put("samples", rep.samples);
            r.put("f2_value", rat(&rep.f2_value));
            match &rep.failure {
                Some((m, v)) => {
                    r.put("failure", json!({ "map": ProjectiveMap::from_i64(*m).to_string(), "value": rat(v) }));
                    r.degrade(Status::Falsified);
                }
                None => r.put("failure", Value::Null),
            }
            if rep.f2_value == Q::from_integer(0.into()) {
                r.notes.push("the certificate vanishes at F2".into());
                r.degrade(Status::Falsified);
            }
            if *symbolic {
                let names = ["m00", "m01", "m02", "m10", "m11", "m12", "m20", "m21", "m22"];
                let v = Vars::new(&names);
                let e = |i| QPoly::q_var(&v, i);
                let m = ProjectiveMap::symbolic(&v, std::array::from_fn(|i| std::array::from_fn(|j| e(3 * i + j))));
                let ok = certificates::verify_symbolic(&p, &QPoly::q_const(&v, lam.clone()), &m)?;
                r.put("symbolic", ok);
                if !ok {
                    r.degrade(Status::Falsified);
                }
            }
            Ok(r)
        }
        Command::FitQd { degree, seed, budget, held_out } => {
            let mut r = Report::new("fit-qd");
            r.input("degree", *degree);
            r.input("seed", *seed);
            let budget = budget.unwrap_or(4 * certificates::qd_ansatz(*degree).len());
            r.input("budget", budget);
            r.input("held_out", *held_out);
            match certificates::fit_qd(*degree, budget, *held_out, *seed)? {
                FitOutcome::Fitted(f) => {
                    r.put("fitted", true);
                    r.put("unknowns", f.unknowns);
                    r.put("training_samples", f.training_samples);
                    r.put("nullity", f.nullity);
                    r.put("held_out_zeros", f.held_out);
                    r.put("f2_value", rat(&f.f2_value));
                    let mut coeffs = Map::new();
                    for (label, c) in &f.coefficients {
                        coeffs.insert(label.clone(), rat(c).into());
                    }
                    r.put("coefficients", coeffs);
                    r.put("polynomial", f.certificate.canonical_text());
                    r.notes.push("fitted from samples; empirical, not a proof".into());
                }
                FitOutcome::Infeasible { reason, training_samples } => {
                    r.put("fitted", false);
                    r.put("reason", reason);
                    r.put("training_samples", training_samples);
                    r.notes.push("infeasibility within the budget does not refute the existence of Q_d".into());
                    r.degrade(Status::Inconclusive);
                }
            }
            Ok(r)
        }
        Command::Closure { lambda, d, samples, seed } => {
            let mut r = Report::new("closure");
            let lam = parse_rational(lambda)?;
            r.input("lambda", rat(&lam));
            r.input("d", *d);
            r.input("samples", *samples);
            r.input("seed", *seed);
            let v = certificates::closure_conclusion(&lam, *d, *samples, *seed)?;
            let verdict = match v.closure {
                Closure::Closed => "closed",
                Closure::NotClosed => "not closed",
                Closure::Undecided => "undecided",
            };
            r.put("verdict", verdict);
            r.put("reason", v.reason);
            r.put("empirical", v.empirical);
            if v.closure == Closure::Undecided {
                r.degrade(Status::Inconclusive);
            }
            Ok(r)
        }
        Command::Corpus { name, d, params, list } => {
            let mut r = Report::new("corpus");
            if *list || name.is_none() {
                let mut entries = Map::new();
                for (n, p) in corpus::NAMES {
                    entries.insert(n.to_string(), p.map_or(Value::Null, |p| p.into()));
                }
                r.put("entries", entries);
                return Ok(r);
            }
            let name = name.as_ref().unwrap();
            let params: Vec<(String, Q)> = params.iter().map(|p| parse_param(p)).collect::<folia::Result<_>>()?;
            let e = corpus::entry(name, *d, params.first().map(|(_, v)| v.clone()))?;
            r.input("name", name.as_str());
            r.input("d", *d);
            for (k, v) in &e.params {
                r.put(k, rat(v));
            }
            r.put("text", e.text.as_str());
            r.put("degree", e.foliation.degree());
            r.put("homogeneous", e.foliation.homogeneous_text());
            Ok(r)
        }
    }
}

fn header(r: &mut Report, f: &Foliation) {
    r.put("degree", f.degree());
    r.put("homogeneous", f.homogeneous_text());
}

fn local_section(r: &mut Report, f: &Foliation) -> folia::Result<()> {
    let s = local::classify(f)?;
    let mut pts = Vec::new();
    let mut u1 = true;
    for p in &s.profiles {
        u1 &= p.mu_is_one && p.tau == 1;
        pts.push(json!({
            "point": p.point.to_string(),
            "conjugates": p.point.count(),
            "mu": p.mu,
            "nu": p.nu,
            "tau": p.tau,
            "bb": p.bb_text(),
            "kappa": p.kappa,
            "kappa_line": p.kappa_line.as_ref().map(|l| l.to_string()),
            "class": p.class.to_string(),
            "undecided": p.undecided,
        }));
    }
    r.put("singular_complete", s.singular.complete);
    r.put("milnor_sum", s.singular.milnor_sum());
    r.put("singular_points", pts);
    r.put("u1", u1);
    if s.singular.map != ProjectiveMap::identity() {
        r.notes.push(format!("singular points eliminated after the coordinate change {}", s.singular.map));
    }
    if !s.singular.complete {
        r.notes.push("the singular set is incomplete".into());
        r.degrade(Status::Inconclusive);
    }
    if s.profiles.iter().any(|p| p.undecided) {
        r.notes.push("kappa undecided at an algebraic point".into());
        r.degrade(Status::Inconclusive);
    }
    Ok(())
}

fn inflection_section(r: &mut Report, f: &Foliation) -> folia::Result<()> {
    let dec = inflection::decompose_divisor(f)?;
    r.put("divisor", dec.total.to_string());
    r.put("invariant", dec.invariant.to_string());
    r.put("transverse", dec.transverse.to_string());
    r.put("divisor_degree", dec.total.degree());
    r.put("reduced", dec.total.is_reduced());
    r.put("convex", dec.transverse.degree() == 0);
    if dec.total.is_reduced() {
        r.put("squarefree_mod2", inflection::squarefree_mod2(&dec.total.product()));
    }
    Ok(())
}

fn certificate_json(c: &DegenerationCertificate) -> folia::Result<Value> {
    let chained: Vec<Value> = c.chained.iter().map(certificate_json).collect::<folia::Result<_>>()?;
    Ok(json!({
        "source": c.source.homogeneous_text(),
        "target": c.target.name(),
        "witness": c.witness.to_string(),
        "normalization": c.normalization.to_string(),
        "family": c.family.to_string(),
        "k": c.k,
        "limit": c.limit.homogeneous_text(),
        "conjugation": c.conjugation.to_string(),
        "replay": c.replay()?,
        "chained": chained,
    }))
}
