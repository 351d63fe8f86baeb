//! `krull`: reads a JSON request, runs one library operation and writes a
//! versioned JSON response. Exit codes: 0 true or valid, 1 false or invalid,
//! 2 input error, 3 resource exhausted.

mod certs;
mod ext_cmd;
mod input;
mod lattice_cmd;
mod ring_cmd;
mod testset;
mod text;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use krull_core::Error;
use serde_json::{json, Map, Value};

use input::{Req, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "krull", version, about = "Collapse certificates, entailment lattices and Krull dimension queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read the request from this file instead of stdin.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Seed for generated test sets.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Comma-separated overrides: degree, exponent, candidates, lattice, elements, testset.
    #[arg(long, global = true)]
    caps: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an idealistic chain collapses.
    Collapse,
    /// Produce a collapse certificate.
    Certify,
    /// Decide pseudo-regularity of a sequence.
    PseudoRegular,
    /// Test dim ≤ ℓ on a test set.
    DimLe,
    /// Membership in the saturation of an idealistic prime.
    SaturateMember,
    /// Finitely presented distributive lattices.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// The Zariski lattice of a ring.
    Zar {
        #[command(subcommand)]
        op: ZarOp,
    },
    /// Integral extensions R ⊆ R[Y]/(f).
    Ext {
        #[command(subcommand)]
        op: ExtOp,
    },
    /// Re-check the certificates of a response or certificate record.
    Verify,
}

#[derive(Subcommand)]
enum LatticeOp {
    /// Close a presentation under the entailment rules.
    Close,
    /// Compare two lattice elements.
    Leq,
    /// Test dim ≤ d with ladder witnesses.
    Dim,
    /// Enumerate prime filter and ideal pairs.
    Spec,
    /// Build the Krull lattice of a given level.
    Kr,
    /// List the complemented elements.
    Bool,
}

#[derive(Subcommand)]
enum ZarOp {
    /// Decide an entailment between finite sets of ring elements.
    Entails,
    /// Test dim ≤ ℓ of the Zariski lattice on a test set.
    DimLe,
    /// Compare ring collapse with lattice collapse.
    Bridge,
}

#[derive(Subcommand)]
enum ExtOp {
    /// Transfer a chain of the base ring up to the extension.
    GoingUp,
    /// Run one going-down step or a flat decomposition.
    GoingDown,
    /// Certify that a prime of the base lies under one of the extension.
    LyingOver,
    /// Decide relative dimension 0 above the base for one element.
    Above,
}

/// A failed request: an error kind, a message and its exit code.
#[derive(Debug)]
pub struct Failure {
    kind: String,
    message: String,
    code: u8,
}

impl Failure {
    pub fn input(kind: &str, message: String) -> Failure {
        Failure { kind: kind.into(), message, code: 2 }
    }

    pub fn core(e: Error) -> Failure {
        let debug = format!("{e:?}");
        let kind = debug.split('(').next().unwrap_or("Error").to_string();
        let code = match e {
            Error::ResourceExhausted(_) | Error::CapExceeded(_) => 3,
            Error::InternalMismatch(_) => 1,
            _ => 2,
        };
        Failure { kind, message: e.to_string(), code }
    }
}

/// Search caps; `None` keeps the library's per-ring default.
#[derive(Clone, Debug)]
pub struct Caps {
    pub degree: Option<u32>,
    pub exponent: Option<u64>,
    pub candidates: Option<usize>,
    pub lattice: usize,
    pub elements: usize,
    pub testset: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            degree: None,
            exponent: None,
            candidates: None,
            lattice: krull_core::lattice::DEFAULT_CAP,
            elements: 4096,
            testset: 10,
        }
    }
}

impl Caps {
    fn parse(s: &str) -> Result<Caps, Failure> {
        let mut caps = Caps::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Failure::input("Caps", format!("{part:?} is not key=value")))?;
            let n: u64 = v.trim().parse().map_err(|_| Failure::input("Caps", format!("{v:?} is not a natural")))?;
            match k.trim() {
                "degree" => caps.degree = Some(n as u32),
                "exponent" => caps.exponent = Some(n),
                "candidates" => caps.candidates = Some(n as usize),
                "lattice" => caps.lattice = n as usize,
                "elements" => caps.elements = n as usize,
                "testset" => caps.testset = n as usize,
                other => return Err(Failure::input("Caps", format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "exponent": self.exponent,
            "candidates": self.candidates,
            "lattice": self.lattice,
            "elements": self.elements,
            "testset": self.testset,
        })
    }
}

pub struct Ctx {
    pub caps: Caps,
    pub seed: u64,
}

/// What a command found, before the certificates are re-checked.
pub struct Outcome {
    pub verdict: bool,
    pub result: Value,
    pub certificates: Vec<Value>,
    pub diagnostics: Map<String, Value>,
    /// The verdict stands but a requested certificate was not produced.
    pub exhausted: bool,
}

impl Outcome {
    pub fn new(verdict: bool, result: Value) -> Outcome {
        Outcome { verdict, result, certificates: Vec::new(), diagnostics: Map::new(), exhausted: false }
    }

    pub fn note_caps(&mut self, msg: &str) {
        self.diagnostics.insert("caps_hit".into(), json!(msg));
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Collapse => "collapse",
        Command::Certify => "certify",
        Command::PseudoRegular => "pseudo-regular",
        Command::DimLe => "dim-le",
        Command::SaturateMember => "saturate-member",
        Command::Lattice { op } => match op {
            LatticeOp::Close => "lattice close",
            LatticeOp::Leq => "lattice leq",
            LatticeOp::Dim => "lattice dim",
            LatticeOp::Spec => "lattice spec",
            LatticeOp::Kr => "lattice kr",
            LatticeOp::Bool => "lattice bool",
        },
        Command::Zar { op } => match op {
            ZarOp::Entails => "zar entails",
            ZarOp::DimLe => "zar dim-le",
            ZarOp::Bridge => "zar bridge",
        },
        Command::Ext { op } => match op {
            ExtOp::GoingUp => "ext going-up",
            ExtOp::GoingDown => "ext going-down",
            ExtOp::LyingOver => "ext lying-over",
            ExtOp::Above => "ext above",
        },
        Command::Verify => "verify",
    }
}

/// Top-level fields of a response, which `verify` accepts as input.
const RESPONSE_FIELDS: &[&str] = &["command", "verdict", "result", "certificates", "diagnostics"];

fn verify(v: Value) -> Result<Outcome, Failure> {
    let records: Vec<Value> = if v.get("certificates").is_some() {
        let q = Req::new(v, RESPONSE_FIELDS)?;
        q.need("certificates")?
            .as_array()
            .ok_or_else(|| Failure::input("Invalid", "\"certificates\" must be a list".into()))?
            .clone()
    } else {
        vec![v]
    };
    if records.is_empty() {
        return Err(Failure::input("Invalid", "no certificate to verify".into()));
    }
    let valid = records.iter().map(certs::check).collect::<Result<Vec<bool>, Failure>>()?;
    let all = valid.iter().all(|&b| b);
    Ok(Outcome::new(all, json!({ "checked": valid.len(), "valid": valid })))
}

fn dispatch(cmd: &Command, v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    match cmd {
        Command::Collapse => ring_cmd::collapse(v, ctx),
        Command::Certify => ring_cmd::certify(v, ctx),
        Command::PseudoRegular => ring_cmd::pseudo_regular_cmd(v, ctx),
        Command::DimLe => ring_cmd::dim_le(v, ctx),
        Command::SaturateMember => ring_cmd::saturate_member(v, ctx),
        Command::Lattice { op } => match op {
            LatticeOp::Close => lattice_cmd::close(v, ctx),
            LatticeOp::Leq => lattice_cmd::leq(v, ctx),
            LatticeOp::Dim => lattice_cmd::dim(v, ctx),
            LatticeOp::Spec => lattice_cmd::spec(v, ctx),
            LatticeOp::Kr => lattice_cmd::kr(v, ctx),
            LatticeOp::Bool => lattice_cmd::boolean(v, ctx),
        },
        Command::Zar { op } => match op {
            ZarOp::Entails => ring_cmd::zar_entails_cmd(v, ctx),
            ZarOp::DimLe => ring_cmd::zar_dim_le(v, ctx),
            ZarOp::Bridge => ring_cmd::zar_bridge(v, ctx),
        },
        Command::Ext { op } => match op {
            ExtOp::GoingUp => ext_cmd::going_up(v, ctx),
            ExtOp::GoingDown => ext_cmd::going_down(v, ctx),
            ExtOp::LyingOver => ext_cmd::lying_over_cmd(v, ctx),
            ExtOp::Above => ext_cmd::above(v, ctx),
        },
        Command::Verify => verify(v),
    }
}

fn read_request(file: Option<&PathBuf>) -> Result<Value, Failure> {
    let (text, source) = match file {
        Some(p) => (
            std::fs::read_to_string(p).map_err(|e| Failure::input("Io", format!("{}: {e}", p.display())))?,
            p.display().to_string(),
        ),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::input("Io", format!("stdin: {e}")))?;
            (s, "stdin".to_string())
        }
    };
    input::parse_json(&text, &source)
}

/// The response and its exit code.
fn run(cli: &Cli) -> (Value, u8) {
    let name = command_name(&cli.command);
    let attempt = || -> Result<(Value, u8), Failure> {
        let caps = match &cli.caps {
            Some(s) => Caps::parse(s)?,
            None => Caps::default(),
        };
        if let Some(d) = caps.degree {
            krull_core::groebner::set_degree_cap(d);
        }
        let ctx = Ctx { caps, seed: cli.seed };
        let request = read_request(cli.file.as_ref())?;
        let mut out = dispatch(&cli.command, request, &ctx)?;
        // Every emitted certificate is re-checked from its serialized form.
        for (i, c) in out.certificates.iter().enumerate() {
            if !certs::check(c)? {
                return Err(Failure::core(Error::InternalMismatch(format!("emitted certificate {i} does not verify"))));
            }
        }
        out.diagnostics.insert("caps".into(), ctx.caps.to_json());
        out.diagnostics.insert("seed".into(), json!(ctx.seed));
        let code = if out.exhausted { 3 } else if out.verdict { 0 } else { 1 };
        let body = json!({
            "v": SCHEMA_VERSION,
            "command": name,
            "verdict": out.verdict,
            "result": out.result,
            "certificates": out.certificates,
            "diagnostics": out.diagnostics,
        });
        Ok((body, code))
    };
    match attempt() {
        Ok(r) => r,
        Err(f) => (json!({ "v": SCHEMA_VERSION, "command": name, "error": { "kind": f.kind, "message": f.message } }), f.code),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = run(&cli);
    if let Some(e) = body.get("error") {
        eprintln!("krull: {}", e["message"].as_str().unwrap_or_default());
    }
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&body).expect("serializable") + "\n",
        Format::Text => text::render(&body),
    };
    // A closed stdout (e.g. a pipe into `head`) does not change the exit code.
    let _ = std::io::stdout().write_all(rendered.as_bytes());
    ExitCode::from(code)
}
