//! The `tbisp` command line.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use tbisp_core::bispectral_core::{is_point_supported, BispectralData, ConditionSpace, Identity};
use tbisp_core::exactfield::PolyExp;
use tbisp_core::text::{parse_polyexp, Render, Style, ZPoly};

use crate::document::{ConditionDocument, DocumentError};
use crate::oracle::{check_sides, OracleReport, Side, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

const DEFAULT_M_MAX: usize = 3;
const DEFAULT_SAMPLES: usize = 20;
const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "tbisp", version, about = "Exact wave functions, tau functions and bispectral operators for KP solitons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Multiplier g(x) for the factorization, as a polynomial-exponential expression.
    #[arg(long, global = true)]
    pub g: Option<String>,
    /// Largest m for the ad-chain identities.
    #[arg(long = "m-max", global = true)]
    pub m_max: Option<usize>,
    /// Number of random points per numeric check.
    #[arg(long = "oracle-samples", global = true)]
    pub oracle_samples: Option<usize>,
    /// Seed for the numeric checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relative tolerance of the numeric checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Condition-space document; standard input when absent or "-".
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The tau function.
    Tau(Input),
    /// The wave function.
    Psi(Input),
    /// The polynomial q_C.
    Qpoly(Input),
    /// The factorization q_C(D) = Qbar 1/pi Kbar.
    Factor(Input),
    /// The operator in z with eigenvalue pi(x).
    Lambda(Input),
    /// Checks both eigenvalue equations exactly and numerically.
    Verify(Input),
    /// Iterated commutators with p = q_C.
    Ad {
        /// Largest m for the identities (overrides --m-max).
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Whether the space has a basis of single-point distributions.
    Wilson(Input),
    /// Every artifact in LaTeX.
    Latex(Input),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tau(_) => "tau",
            Command::Psi(_) => "psi",
            Command::Qpoly(_) => "qpoly",
            Command::Factor(_) => "factor",
            Command::Lambda(_) => "lambda",
            Command::Verify(_) => "verify",
            Command::Ad { .. } => "ad",
            Command::Wilson(_) => "wilson",
            Command::Latex(_) => "latex",
        }
    }

    fn input(&self) -> &Input {
        match self {
            Command::Tau(i)
            | Command::Psi(i)
            | Command::Qpoly(i)
            | Command::Factor(i)
            | Command::Lambda(i)
            | Command::Verify(i)
            | Command::Wilson(i)
            | Command::Latex(i) => i,
            Command::Ad { input, .. } => input,
        }
    }
}

/// A computed value in both notations.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Item {
    Expr { text: String, latex: String },
    Bool(bool),
    Count(usize),
}

impl Item {
    fn expr<T: Render + ?Sized>(v: &T) -> Item {
        Item::Expr { text: v.text(), latex: v.latex() }
    }

    fn show(&self, style: Style) -> String {
        match (self, style) {
            (Item::Expr { text, .. }, Style::Text) => text.clone(),
            (Item::Expr { latex, .. }, Style::Latex) => latex.clone(),
            (Item::Bool(b), _) => b.to_string(),
            (Item::Count(n), _) => n.to_string(),
        }
    }
}

/// One certified identity.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub identity: String,
    pub structural: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    /// `lhs − rhs` when the structural check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.structural && self.oracle.as_ref().is_none_or(|o| o.pass)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Document(#[from] DocumentError),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Input(String),
    #[error("verification failure: {0}")]
    Verify(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Verify(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        }
    }
}

impl From<tbisp_core::Error> for CliError {
    fn from(e: tbisp_core::Error) -> Self {
        match e {
            tbisp_core::Error::Internal(_) => CliError::Verify(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Effective settings after merging flags over document settings.
#[derive(Clone, Debug, Serialize)]
pub struct Effective {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_override: Option<String>,
    pub m_max: usize,
    pub oracle_samples: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Everything one command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub items: Vec<(String, Item)>,
    pub certification: Vec<Certificate>,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.certification.iter().all(Certificate::pass)
    }
}

struct Ctx {
    space: ConditionSpace,
    g: Option<PolyExp>,
    eff: Effective,
}

impl Ctx {
    fn data(&self) -> Result<BispectralData, CliError> {
        Ok(BispectralData::compute(&self.space, self.g.as_ref())?)
    }

    /// Structural result of `id` plus a numeric check of `lhs` against `rhs`.
    fn certify(&self, k: usize, id: &Identity, lhs: Side<'_>, rhs: Side<'_>) -> Result<Certificate, CliError> {
        let report = check_sides(
            &id.name,
            lhs,
            rhs,
            self.eff.oracle_samples,
            self.eff.tol,
            self.eff.seed.wrapping_add(k as u64),
        )
        .map_err(|e| CliError::Verify(e.to_string()))?;
        Ok(Certificate {
            identity: id.name.clone(),
            structural: id.holds,
            oracle: Some(report),
            residual: (!id.holds).then(|| (&id.lhs - &id.rhs).text()),
        })
    }
}

fn structural(name: impl Into<String>, holds: bool) -> Certificate {
    Certificate { identity: name.into(), structural: holds, oracle: None, residual: None }
}

fn execute(cmd: &Command, ctx: &Ctx) -> Result<Outcome, CliError> {
    let mut items: Vec<(String, Item)> = Vec::new();
    let mut cert = Vec::new();
    let mut push = |k: &str, v: Item| items.push((k.to_string(), v));
    match cmd {
        Command::Tau(_) => push("tau", Item::expr(&tbisp_core::bispectral_core::tau(&ctx.space)?)),
        Command::Psi(_) => push("psi", Item::expr(&tbisp_core::bispectral_core::wavefunction(&ctx.space)?)),
        Command::Qpoly(_) => push("q", Item::expr(&ZPoly(&tbisp_core::bispectral_core::qpoly(&ctx.space)))),
        Command::Wilson(_) => push("point_supported", Item::Bool(is_point_supported(&ctx.space))),
        Command::Factor(_) => {
            let d = ctx.data()?;
            push("kbar", Item::expr(&d.kbar));
            push("qbar", Item::expr(&d.qbar));
            push("g", Item::expr(&d.g));
            push("pi", Item::expr(&d.pi));
            cert.push(structural("Qbar has polynomial-exponential coefficients", d.qbar.has_polyexp_coeffs()));
            cert.push(structural("pi = g tau", d.pi == &d.g * &d.tau));
        }
        Command::Lambda(_) => {
            let d = ctx.data()?;
            push("lambda", Item::expr(&d.lambda_op));
            push("pi", Item::expr(&d.pi));
            push("shift_free", Item::Bool(d.lambda_op.is_shift_free()));
        }
        Command::Verify(_) => {
            let d = ctx.data()?;
            push("tau", Item::expr(&d.tau));
            push("psi", Item::expr(&d.psi));
            push("q", Item::expr(&ZPoly(&d.q)));
            push("pi", Item::expr(&d.pi));
            cert.push(structural("Kbar annihilates the kernel functions", d.kernel_identity()));
            let l = d.lp(&d.q)?;
            let id = d.lp_identity(&d.q)?;
            cert.push(ctx.certify(0, &id, Side::ApplyX(&l, &d.psi), Side::Form(&id.rhs))?);
            let id = d.lambda_identity();
            cert.push(ctx.certify(1, &id, Side::ApplyZ(&d.lambda_op, &d.psi), Side::Form(&id.rhs))?);
        }
        Command::Ad { m, .. } => {
            let d = ctx.data()?;
            let m_max = m.unwrap_or(ctx.eff.m_max);
            let chain = d.ad_chain(&d.q, m_max)?;
            push("order", Item::Count(chain.order));
            push("m_max", Item::Count(m_max));
            for s in &chain.steps {
                if s.m > chain.order {
                    cert.push(structural(format!("B_{} = 0", s.m), s.b_zero));
                    cert.push(structural(format!("Bhat_{} = 0", s.m), s.bhat_zero));
                }
                if let [ia, ib] = s.identities.as_slice() {
                    let psi = &d.psi;
                    cert.push(ctx.certify(cert.len(), ia, Side::ApplyX(&s.a, psi), Side::ApplyZ(&s.ahat, psi))?);
                    cert.push(ctx.certify(cert.len(), ib, Side::ApplyX(&s.b, psi), Side::ApplyZ(&s.bhat, psi))?);
                }
            }
        }
        Command::Latex(_) => {
            let d = ctx.data()?;
            push("tau", Item::expr(&d.tau));
            push("psi", Item::expr(&d.psi));
            push("q", Item::expr(&ZPoly(&d.q)));
            push("kbar", Item::expr(&d.kbar));
            push("qbar", Item::expr(&d.qbar));
            push("g", Item::expr(&d.g));
            push("pi", Item::expr(&d.pi));
            push("lambda", Item::expr(&d.lambda_op));
        }
    }
    Ok(Outcome { command: cmd.name(), items, certification: cert })
}

fn render_certificate(c: &Certificate) -> String {
    let verdict = if c.pass() { "PASS" } else { "FAIL" };
    let mut line = format!("{verdict} {}", c.identity);
    if let Some(o) = &c.oracle {
        line.push_str(&format!(" (oracle: {} samples, max residual {:.3e}, tol {:.0e})", o.samples, o.max_residual, o.tol));
    }
    if let Some(r) = &c.residual {
        line.push_str(&format!("\n  residual: {r}"));
    }
    line
}

fn render(out: &Outcome, ctx: &Ctx, format: Format) -> String {
    let style = match (format, out.command) {
        (_, "latex") | (Format::Latex, _) => Style::Latex,
        _ => Style::Text,
    };
    match format {
        Format::Structured => {
            let mut results = Map::new();
            for (k, v) in &out.items {
                results.insert(k.clone(), serde_json::to_value(v).expect("serializable"));
            }
            let doc = json!({
                "command": out.command,
                "space": ConditionDocument::from_space(&ctx.space).distributions,
                "settings": ctx.eff,
                "results": Value::Object(results),
                "certification": out.certification,
                "pass": out.pass(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            if out.items.len() == 1 && out.certification.is_empty() {
                s.push_str(&out.items[0].1.show(style));
                s.push('\n');
                return s;
            }
            for (k, v) in &out.items {
                s.push_str(&format!("{k} = {}\n", v.show(style)));
            }
            for c in &out.certification {
                s.push_str(&render_certificate(c));
                s.push('\n');
            }
            s
        }
    }
}

fn read_document(input: &Input, stdin: &mut dyn Read) -> Result<ConditionDocument, CliError> {
    let text = match &input.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Ok(ConditionDocument::from_json(&text)?)
}

fn prepare(cli: &Cli, stdin: &mut dyn Read) -> Result<Ctx, CliError> {
    let doc = read_document(cli.command.input(), stdin)?;
    let space = doc.space()?;
    let g_text = cli.g.clone().or_else(|| doc.settings.g_override.clone());
    let g = g_text.as_deref().map(parse_polyexp).transpose().map_err(|e| CliError::Input(format!("bad --g: {e}")))?;
    let eff = Effective {
        g_override: g_text,
        m_max: cli.m_max.or(doc.settings.m_max).unwrap_or(DEFAULT_M_MAX),
        oracle_samples: cli.oracle_samples.or(doc.settings.oracle_samples).unwrap_or(DEFAULT_SAMPLES),
        seed: cli.seed.or(doc.settings.seed).unwrap_or(DEFAULT_SEED),
        tol: cli.tol.unwrap_or(DEFAULT_TOL),
    };
    if eff.oracle_samples == 0 {
        return Err(CliError::Input("--oracle-samples must be positive".into()));
    }
    if !(eff.tol > 0.0) {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    Ok(Ctx { space, g, eff })
}

/// Runs one parsed invocation; returns the command's outcome for callers
/// that inspect results directly.
pub fn run_cli(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let ctx = prepare(cli, stdin)?;
    let outcome = execute(&cli.command, &ctx)?;
    out.write_all(render(&outcome, &ctx, cli.format).as_bytes())?;
    Ok(outcome)
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run_cli(&cli, stdin, out) {
        Ok(o) if o.pass() => EXIT_OK,
        Ok(_) => {
            let _ = writeln!(err, "verification failure");
            EXIT_VERIFY
        }
        Err(e) => {
            let _ = writeln!(err, "tbisp: {e}");
            e.code()
        }
    }
}
