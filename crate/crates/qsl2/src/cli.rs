//! Command-line surface tying the pipeline together for batch computation
//! and theorem verification.
//!
//! Subcommands:
//!
//! * `invariant` — the truncated universal invariant of a diagram as a sum
//!   of PBW tensor monomials, with the Cartan ledger printed explicitly for
//!   diagrams of nonzero linking.
//! * `jones` — colored Jones values through quantum traces, computed by the
//!   universal route, the matrix route, or `both` (which insists the two
//!   exact scalars agree and prints once).
//! * `verify brunnian-membership | divisibility | ideal-lattice` —
//!   machine-checkable reports: per-state integral-form certificates,
//!   quotient certificates against a divisibility lattice, and the
//!   inclusion lattice of the four ideals at a color tuple.
//! * `ideal show` — factored generators of `I_l`, `Z_a`, `Z_rb`, `Z_Br`
//!   and `Z~_Br`.
//! * `tangle lint` — parse and validate a diagram file.
//!
//! Output is `text` (default) or `json` via `--format`; the process exits 0
//! iff every requested computation and verification succeeded, 1 on a
//! failed verification, and 2 on configuration errors (bad flags, unknown
//! builtins, unreadable files, or hypothesis violations such as a Brunnian
//! lattice on fewer than three colors).  Worker threads are set with
//! `--workers` or the `QSL2_WORKERS` environment variable and default to
//! the available parallelism; results are exact and independent of the
//! worker count.

use crate::ideals::{
    certify_membership, ideal_i, ideal_za, ideal_zbr, ideal_zbr_tilde, ideal_zrb, FactoredIdeal,
    IdealError, Membership,
};
use crate::reptheory::{color_p, color_pdoubleprime, color_ptilde, Color};
use crate::scalars::RationalScalar;
use crate::statesum::{
    colored_jones_matrix, colored_jones_universal, universal_invariant,
    verify_brunnian_membership, UniversalInvariant,
};
use crate::tangle::{builtin, builtin_names, parse, Diagram};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Output format for every subcommand.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable lines.
    Text,
    /// One pretty-printed JSON object.
    Json,
}

/// Evaluation route for colored Jones values.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Quantum traces of the universal invariant.
    Universal,
    /// Direct weight-basis tensor evaluation.
    Matrix,
    /// Run both and insist on exact agreement.
    Both,
}

/// Which divisibility ideal a command refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdealKind {
    /// The algebraically-split lattice `Z_a`.
    A,
    /// The ribbon/boundary lattice `Z_rb`.
    Rb,
    /// The Brunnian lattice `Z_Br`.
    Br,
    /// The intersection lattice `Z~_Br`.
    Brtilde,
    /// The ideal `I_l` (takes a single `l`).
    #[value(name = "I", alias = "i")]
    I,
}

impl IdealKind {
    /// Display label, e.g. `Z~_Br`.
    fn label(self) -> &'static str {
        match self {
            IdealKind::A => "Z_a",
            IdealKind::Rb => "Z_rb",
            IdealKind::Br => "Z_Br",
            IdealKind::Brtilde => "Z~_Br",
            IdealKind::I => "I",
        }
    }
}

/// The resolved command with its specific parameters.
#[derive(Clone, Debug)]
pub enum Command {
    /// Print the truncated universal invariant.
    Invariant,
    /// Evaluate a colored Jones value.
    Jones {
        /// Which route(s) to evaluate.
        route: Route,
    },
    /// Check every state term of a Brunnian-form diagram against the
    /// integral-form pattern.
    VerifyBrunnian {
        /// 1-based special component index.
        special: usize,
    },
    /// Certify a colored Jones value against a divisibility lattice.
    VerifyDivisibility {
        /// Color indices `l_i`, one per component.
        ls: Vec<u32>,
        /// Which lattice to certify against.
        lattice: IdealKind,
    },
    /// Report the inclusion lattice of the divisibility ideals.
    VerifyIdealLattice {
        /// Color indices.
        ls: Vec<u32>,
    },
    /// Print one ideal in factored form.
    IdealShow {
        /// Which family.
        kind: IdealKind,
        /// Color indices (a single `l` for `I`).
        ls: Vec<u32>,
    },
    /// Parse and validate a diagram file.
    TangleLint {
        /// Path to the DSL file.
        path: PathBuf,
    },
}

/// Fully resolved run configuration shared by the command handlers.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// The requested command.
    pub command: Command,
    /// The input diagram, for commands that take one.
    pub diagram: Option<Diagram>,
    /// Truncation bound `p >= 0` (states with any crossing index `>= p`
    /// are dropped).
    pub p: u32,
    /// Parsed colors paired with their input spellings.
    pub colors: Vec<(String, Color)>,
    /// Output format.
    pub format: OutputFormat,
    /// Worker-thread override (`None` = available parallelism).
    pub workers: Option<usize>,
}

/// Configuration errors: anything wrong with the request itself, as opposed
/// to a verification that ran and failed.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Neither `--builtin` nor `--file` was given.
    #[error("no input diagram: pass --builtin <name> or --file <path>")]
    MissingInput,
    /// `--builtin` name not recognized.
    #[error("unknown builtin `{0}`; available: {1}")]
    UnknownBuiltin(String, String),
    /// File could not be read.
    #[error("cannot read `{path}`: {source}")]
    Io {
        /// Offending path.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// DSL parse failure (message carries line/token locations).
    #[error("parse error: {0}")]
    Parse(String),
    /// Diagram failed validation or the state sum rejected it.
    #[error("diagram error: {0}")]
    Diagram(String),
    /// A color spelling was not understood.
    #[error("bad color `{0}`: expected V<m> (m >= 1), P<l>, P<l>' or P<l>''")]
    BadColor(String),
    /// Wrong number of colors for the diagram.
    #[error("expected {expected} colors for {diagram}, got {got}")]
    ColorCount {
        /// Component count of the diagram.
        expected: usize,
        /// Colors supplied.
        got: usize,
        /// Diagram name.
        diagram: String,
    },
    /// A hypothesis of the requested verification is violated.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        CliError::Hypothesis(e.to_string())
    }
}

/// Parse one color spelling: `V<m>`, `P<l>`, `P<l>'` or `P<l>''`.
///
/// # Returns
/// The representation-ring element: the irreducible `V_m`, or Habiro's
/// `P_l`, `P~'_l`, `P''_l`.
pub fn parse_color(spec: &str) -> Result<Color, CliError> {
    let bad = || CliError::BadColor(spec.to_owned());
    let s = spec.trim();
    if let Some(m) = s.strip_prefix('V') {
        let m: u32 = m.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        return Ok(Color::irreducible(m));
    }
    if let Some(rest) = s.strip_prefix('P') {
        if let Some(l) = rest.strip_suffix("''") {
            return Ok(color_pdoubleprime(l.parse().map_err(|_| bad())?));
        }
        if let Some(l) = rest.strip_suffix('\'') {
            return Ok(color_ptilde(l.parse().map_err(|_| bad())?));
        }
        return Ok(color_p(rest.parse().map_err(|_| bad())?));
    }
    Err(bad())
}

/// Resolve a diagram from a builtin name or a DSL file.
fn resolve_diagram(builtin_name: Option<&str>, file: Option<&PathBuf>) -> Result<Diagram, CliError> {
    if let Some(name) = builtin_name {
        // Accept both `trivial(3)` and the shorthand `trivial3`.
        let canonical = name
            .strip_prefix("trivial")
            .filter(|rest| rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty())
            .map(|rest| format!("trivial({rest})"));
        let looked_up = builtin(canonical.as_deref().unwrap_or(name));
        return looked_up.ok_or_else(|| {
            CliError::UnknownBuiltin(name.to_owned(), builtin_names().join(", "))
        });
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        return parse(&text).map_err(|e| CliError::Parse(e.to_string()));
    }
    Err(CliError::MissingInput)
}

// ---------------------------------------------------------------------------
// Argument grammar (clap)
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "qsl2",
    version,
    about = "Exact universal sl2 invariants, colored Jones values, and cyclotomic divisibility certificates for bottom tangles"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Worker threads (default: QSL2_WORKERS, then available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct DiagramInput {
    /// Builtin diagram: trivial(n), clasp_B, borromean_TB, borromean_P,
    /// borromean_plus_arc.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Path to a diagram in the tangle DSL.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Compute the truncated universal invariant of a diagram.
    Invariant {
        #[command(flatten)]
        input: DiagramInput,
        /// Truncation bound (crossing indices run over 0..p).
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Evaluate a colored Jones value by quantum traces.
    Jones {
        #[command(flatten)]
        input: DiagramInput,
        /// Comma-separated colors, one per component: V<m>, P<l>, P<l>',
        /// P<l>''.
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<String>,
        /// Evaluation route.
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Verify membership and divisibility statements.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Inspect cyclotomic divisibility ideals.
    Ideal {
        #[command(subcommand)]
        what: IdealCommand,
    },
    /// Diagram utilities.
    Tangle {
        #[command(subcommand)]
        what: TangleCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check per-state integral-form membership on a Brunnian-form diagram.
    BrunnianMembership {
        #[command(flatten)]
        input: DiagramInput,
        /// 1-based index of the special component.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Truncation bound.
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Certify a colored Jones value against a divisibility lattice.
    Divisibility {
        #[command(flatten)]
        input: DiagramInput,
        /// Comma-separated color indices l_i, one per component; the i-th
        /// component is colored P<l_i>'.
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u32>,
        /// Which lattice to certify against.
        #[arg(long, value_enum, default_value_t = IdealKind::Brtilde)]
        ideal: IdealKind,
    },
    /// Report the inclusion lattice of the divisibility ideals at a tuple.
    IdealLattice {
        /// Comma-separated color indices.
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum IdealCommand {
    /// Print the factored generator of a divisibility ideal.
    Show {
        /// Ideal family.
        #[arg(long = "type", value_enum)]
        kind: IdealKind,
        /// Comma-separated color indices (a single l for type I).
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum TangleCommand {
    /// Parse and validate a diagram file.
    Lint {
        /// Path to the DSL file.
        file: PathBuf,
    },
}

/// Lower the parsed argument tree into a [`RunConfig`], resolving diagrams
/// and colors.
fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let format = cli.format;
    let workers = cli.workers;
    let (command, diagram, p, colors) = match cli.command {
        CliCommand::Invariant { input, p } => {
            let d = resolve_diagram(input.builtin.as_deref(), input.file.as_ref())?;
            (Command::Invariant, Some(d), p, Vec::new())
        }
        CliCommand::Jones {
            input,
            colors,
            route,
        } => {
            let d = resolve_diagram(input.builtin.as_deref(), input.file.as_ref())?;
            let parsed = colors
                .iter()
                .map(|s| Ok((s.clone(), parse_color(s)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            if parsed.len() != d.components {
                return Err(CliError::ColorCount {
                    expected: d.components,
                    got: parsed.len(),
                    diagram: d.name.clone(),
                });
            }
            (Command::Jones { route }, Some(d), 0, parsed)
        }
        CliCommand::Verify { what } => match what {
            VerifyCommand::BrunnianMembership { input, i, p } => {
                let d = resolve_diagram(input.builtin.as_deref(), input.file.as_ref())?;
                (Command::VerifyBrunnian { special: i }, Some(d), p, Vec::new())
            }
            VerifyCommand::Divisibility { input, l, ideal } => {
                let d = resolve_diagram(input.builtin.as_deref(), input.file.as_ref())?;
                if l.len() != d.components {
                    return Err(CliError::ColorCount {
                        expected: d.components,
                        got: l.len(),
                        diagram: d.name.clone(),
                    });
                }
                let colors = l
                    .iter()
                    .map(|&li| (format!("P{li}'"), color_ptilde(li)))
                    .collect();
                (
                    Command::VerifyDivisibility { ls: l, lattice: ideal },
                    Some(d),
                    0,
                    colors,
                )
            }
            VerifyCommand::IdealLattice { l } => {
                (Command::VerifyIdealLattice { ls: l }, None, 0, Vec::new())
            }
        },
        CliCommand::Ideal {
            what: IdealCommand::Show { kind, l },
        } => (Command::IdealShow { kind, ls: l }, None, 0, Vec::new()),
        CliCommand::Tangle {
            what: TangleCommand::Lint { file },
        } => (Command::TangleLint { path: file }, None, 0, Vec::new()),
    };
    Ok(RunConfig {
        command,
        diagram,
        p,
        colors,
        format,
        workers,
    })
}

// ---------------------------------------------------------------------------
// Command handlers
// ---------------------------------------------------------------------------

/// What a handler produced: a pass/fail verdict plus both renderings.
#[derive(Clone, Debug)]
pub struct CmdOutput {
    /// False iff a requested verification failed.
    pub pass: bool,
    /// Text rendering.
    pub text: String,
    /// JSON rendering.
    pub json: serde_json::Value,
}

fn monomial_string(&(a, b, c): &(u32, i64, u32)) -> String {
    let mut parts = Vec::new();
    if a > 0 {
        parts.push(format!("F~({a})"));
    }
    if b != 0 {
        parts.push(format!("K^{b}"));
    }
    if c > 0 {
        parts.push(format!("E~({c})"));
    }
    if parts.is_empty() {
        "1".to_owned()
    } else {
        parts.join(" ")
    }
}

fn ledger_json(inv: &UniversalInvariant) -> serde_json::Value {
    serde_json::json!({
        "trivial": inv.ledger.is_trivial(),
        "exponents": inv.ledger.exponents,
    })
}

/// Compute and render the truncated universal invariant.
///
/// # Panics
/// Panics if `cfg.command` is not [`Command::Invariant`] (the dispatcher
/// guarantees it).
pub fn cmd_invariant(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    assert!(matches!(cfg.command, Command::Invariant));
    let d = cfg.diagram.as_ref().expect("invariant takes a diagram");
    let inv = universal_invariant(d, cfg.p).map_err(|e| CliError::Diagram(e.to_string()))?;
    let mut text = format!(
        "diagram: {} ({} components)\ntruncation: p = {}\n",
        d.name, d.components, cfg.p
    );
    if inv.ledger.is_trivial() {
        text.push_str("ledger: trivial (zero linking matrix)\n");
    } else {
        text.push_str("ledger: nontrivial Cartan factor, D-exponents per component pair:\n");
        for row in &inv.ledger.exponents {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            text.push_str(&format!("  [{}]\n", cells.join(", ")));
        }
    }
    text.push_str(&format!("terms: {}\n", inv.tensor.terms.len()));
    for (factors, coeff) in &inv.tensor.terms {
        let mono: Vec<String> = factors.iter().map(monomial_string).collect();
        text.push_str(&format!("  ({})  {}\n", coeff, mono.join(" (x) ")));
    }
    let json = serde_json::json!({
        "diagram": d.name,
        "components": d.components,
        "p": cfg.p,
        "ledger": ledger_json(&inv),
        "terms": inv.tensor.terms.iter().map(|(factors, coeff)| {
            serde_json::json!({
                "coeff": coeff.to_json(),
                "factors": factors,
            })
        }).collect::<Vec<_>>(),
    });
    Ok(CmdOutput {
        pass: true,
        text,
        json,
    })
}

/// Evaluate a colored Jones value on the configured route(s).
///
/// # Panics
/// Panics if `cfg.command` is not [`Command::Jones`].
pub fn cmd_jones(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let Command::Jones { route } = cfg.command else {
        unreachable!("dispatcher sends only jones configs here")
    };
    let d = cfg.diagram.as_ref().expect("jones takes a diagram");
    let colors: Vec<Color> = cfg.colors.iter().map(|(_, c)| c.clone()).collect();
    let spellings: Vec<String> = cfg.colors.iter().map(|(s, _)| s.clone()).collect();
    let compute = |r: Route| -> Result<RationalScalar, CliError> {
        let value = match r {
            Route::Universal => colored_jones_universal(d, &colors),
            Route::Matrix => colored_jones_matrix(d, &colors),
            Route::Both => unreachable!("expanded below"),
        };
        value.map_err(|e| CliError::Diagram(e.to_string()))
    };
    let (value, routes_agree, matrix_value) = match route {
        Route::Universal => (compute(Route::Universal)?, None, None),
        Route::Matrix => (compute(Route::Matrix)?, None, None),
        Route::Both => {
            let u = compute(Route::Universal)?;
            let m = compute(Route::Matrix)?;
            let agree = u == m;
            (u, Some(agree), Some(m))
        }
    };
    let pass = routes_agree != Some(false);
    let mut text = format!(
        "diagram: {}\ncolors: {}\n",
        d.name,
        spellings.join(",")
    );
    match routes_agree {
        Some(true) => {
            text.push_str(&format!("routes: universal = matrix (agree)\nvalue: {value}\n"));
        }
        Some(false) => {
            text.push_str("ROUTE DISAGREEMENT\n");
            text.push_str(&format!("universal: {value}\n"));
            text.push_str(&format!("matrix:    {}\n", matrix_value.as_ref().expect("both")));
            let diff = value.sub(matrix_value.as_ref().expect("both"));
            text.push_str(&format!("difference: {diff}\n"));
        }
        None => {
            text.push_str(&format!("value: {value}\n"));
        }
    }
    let json = serde_json::json!({
        "diagram": d.name,
        "colors": spellings,
        "route": match route {
            Route::Universal => "universal",
            Route::Matrix => "matrix",
            Route::Both => "both",
        },
        "value": value.to_json(),
        "value_string": value.to_string(),
        "routes_agree": routes_agree,
        "matrix_value": matrix_value.as_ref().map(|m| m.to_string()),
    });
    Ok(CmdOutput { pass, text, json })
}

/// Run one of the verification subcommands.
///
/// # Panics
/// Panics if `cfg.command` is not a verify variant.
pub fn cmd_verify(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    match &cfg.command {
        Command::VerifyBrunnian { special } => verify_brunnian(cfg, *special),
        Command::VerifyDivisibility { ls, lattice } => verify_divisibility(cfg, ls, *lattice),
        Command::VerifyIdealLattice { ls } => verify_ideal_lattice(ls),
        _ => unreachable!("dispatcher sends only verify configs here"),
    }
}

fn verify_brunnian(cfg: &RunConfig, special: usize) -> Result<CmdOutput, CliError> {
    let d = cfg.diagram.as_ref().expect("verify takes a diagram");
    let report =
        verify_brunnian_membership(d, special, cfg.p).map_err(|e| CliError::Diagram(e.to_string()))?;
    let pass = report.verified();
    let mut text = format!(
        "diagram: {}\nspecial component: {}\nbrunnian form: {}\nstates checked: {}\nwitness terms: {}\n",
        d.name,
        report.special,
        if report.brunnian_form { "yes" } else { "no" },
        report.states_checked,
        report.witness_terms,
    );
    for f in report.failures.iter().take(5) {
        text.push_str(&format!(
            "  failure at state {:?}, strand {}: {}\n",
            f.state, f.strand, f.reason
        ));
    }
    if report.failures.len() > 5 {
        text.push_str(&format!(
            "  ... and {} more failures\n",
            report.failures.len() - 5
        ));
    }
    text.push_str(&format!(
        "membership: {}\n",
        if pass { "PASS" } else { "FAIL" }
    ));
    let json = serde_json::json!({
        "diagram": d.name,
        "special": report.special,
        "brunnian_form": report.brunnian_form,
        "p": report.cutoff,
        "states_checked": report.states_checked,
        "witness_terms": report.witness_terms,
        "failures": report.failures.iter().map(|f| serde_json::json!({
            "state": f.state,
            "strand": f.strand,
            "reason": f.reason,
        })).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok(CmdOutput { pass, text, json })
}

/// Build the requested lattice; `I` is rejected here because it takes a
/// single `l`, not a tuple.
fn lattice_ideal(kind: IdealKind, ls: &[u32]) -> Result<FactoredIdeal, CliError> {
    match kind {
        IdealKind::A => Ok(ideal_za(ls)),
        IdealKind::Rb => Ok(ideal_zrb(ls)),
        IdealKind::Br => Ok(ideal_zbr(ls)?),
        IdealKind::Brtilde => Ok(ideal_zbr_tilde(ls)?),
        IdealKind::I => Err(CliError::Hypothesis(
            "type I is not a divisibility lattice; choose a, rb, br or brtilde".to_owned(),
        )),
    }
}

fn tuple_string(ls: &[u32]) -> String {
    let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(","))
}

fn verify_divisibility(
    cfg: &RunConfig,
    ls: &[u32],
    lattice: IdealKind,
) -> Result<CmdOutput, CliError> {
    let d = cfg.diagram.as_ref().expect("verify takes a diagram");
    let ideal = lattice_ideal(lattice, ls)?;
    let colors: Vec<Color> = cfg.colors.iter().map(|(_, c)| c.clone()).collect();
    let value = colored_jones_matrix(d, &colors).map_err(|e| CliError::Diagram(e.to_string()))?;
    let membership = certify_membership(&value, &ideal);
    let pass = membership.is_member();
    let mut text = format!(
        "diagram: {}\ncolors: {}\nvalue: {}\nideal {}{}: {}\n",
        d.name,
        cfg.colors
            .iter()
            .map(|(s, _)| s.clone())
            .collect::<Vec<_>>()
            .join(","),
        value,
        lattice.label(),
        tuple_string(ls),
        ideal,
    );
    match &membership {
        Membership::Certified { quotient } => {
            text.push_str(&format!("membership: PASS\nquotient: {quotient}\n"));
        }
        Membership::Refused { witness } => {
            text.push_str(&format!("membership: FAIL\nwitness: {witness}\n"));
        }
    }
    let json = serde_json::json!({
        "diagram": d.name,
        "l": ls,
        "ideal": {
            "kind": lattice.label(),
            "divisor": ideal.to_json(),
        },
        "value": value.to_json(),
        "value_string": value.to_string(),
        "certificate": membership.to_json(),
        "pass": pass,
    });
    Ok(CmdOutput { pass, text, json })
}

fn verify_ideal_lattice(ls: &[u32]) -> Result<CmdOutput, CliError> {
    let za = ideal_za(ls);
    let zrb = ideal_zrb(ls);
    let zbr = ideal_zbr(ls)?;
    let ztilde = ideal_zbr_tilde(ls)?;
    let rb_in_tilde = ztilde.contains_ideal(&zrb);
    let tilde_in_a = za.contains_ideal(&ztilde);
    let a_in_br = zbr.contains_ideal(&za);
    let br_in_a = za.contains_ideal(&zbr);
    let pass = rb_in_tilde && tilde_in_a;
    let yn = |b: bool| if b { "yes" } else { "no" };
    let text = format!(
        "l = {}\nZ_a    = {}\nZ_rb   = {}\nZ_Br   = {}\nZ~_Br  = {}\n\
         Z_rb  inside Z~_Br: {}\nZ~_Br inside Z_a:   {}\n\
         Z_a   inside Z_Br:  {}\nZ_Br  inside Z_a:   {}\nlattice: {}\n",
        tuple_string(ls),
        za,
        zrb,
        zbr,
        ztilde,
        yn(rb_in_tilde),
        yn(tilde_in_a),
        yn(a_in_br),
        yn(br_in_a),
        if pass { "PASS" } else { "FAIL" },
    );
    let json = serde_json::json!({
        "l": ls,
        "Z_a": za.to_json(),
        "Z_rb": zrb.to_json(),
        "Z_Br": zbr.to_json(),
        "Z~_Br": ztilde.to_json(),
        "inclusions": {
            "rb_in_brtilde": rb_in_tilde,
            "brtilde_in_a": tilde_in_a,
            "a_in_br": a_in_br,
            "br_in_a": br_in_a,
        },
        "pass": pass,
    });
    Ok(CmdOutput { pass, text, json })
}

/// Print one ideal in factored form.
///
/// # Panics
/// Panics if `cfg.command` is not [`Command::IdealShow`].
pub fn cmd_ideal_show(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let Command::IdealShow { kind, ref ls } = cfg.command else {
        unreachable!("dispatcher sends only ideal-show configs here")
    };
    let (ideal, label) = if kind == IdealKind::I {
        if ls.len() != 1 {
            return Err(CliError::Hypothesis(format!(
                "type I takes a single l, got {}",
                ls.len()
            )));
        }
        (ideal_i(ls[0]), format!("I_{}", ls[0]))
    } else {
        (
            lattice_ideal(kind, ls)?,
            format!("{}{}", kind.label(), tuple_string(ls)),
        )
    };
    let mut text = format!("ideal: {label}\ngenerator: {ideal}\n");
    if !ideal.generators.is_empty() {
        text.push_str("generating set:\n");
        for g in &ideal.generators {
            text.push_str(&format!("  {g}\n"));
        }
    }
    let json = serde_json::json!({
        "ideal": label,
        "factored": ideal.to_json(),
        "generating_set": ideal.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    });
    Ok(CmdOutput {
        pass: true,
        text,
        json,
    })
}

/// Parse and validate a diagram file, reporting structure or errors.
///
/// # Panics
/// Panics if `cfg.command` is not [`Command::TangleLint`].
pub fn cmd_tangle_lint(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let Command::TangleLint { ref path } = cfg.command else {
        unreachable!("dispatcher sends only lint configs here")
    };
    let text_src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let outcome = parse(&text_src)
        .map_err(|e| e.to_string())
        .and_then(|d| match d.traverse() {
            Ok(t) => Ok((d.clone(), t, d.linking_matrix().expect("traversed"))),
            Err(e) => Err(e.to_string()),
        });
    match outcome {
        Ok((d, t, linking)) => {
            let rows: Vec<String> = linking
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            let text = format!(
                "{}: ok\nname: {}\ncomponents: {}\nrows: {}\ncrossings: {}\nlinking matrix: {}\n",
                path.display(),
                d.name,
                d.components,
                d.rows.len(),
                t.crossings.len(),
                rows.join(" "),
            );
            let json = serde_json::json!({
                "file": path.display().to_string(),
                "ok": true,
                "name": d.name,
                "components": d.components,
                "rows": d.rows.len(),
                "crossings": t.crossings.len(),
                "linking_matrix": linking,
                "dsl": d.to_string(),
            });
            Ok(CmdOutput {
                pass: true,
                text,
                json,
            })
        }
        Err(msg) => {
            let text = format!("{}: INVALID\n{}\n", path.display(), msg);
            let json = serde_json::json!({
                "file": path.display().to_string(),
                "ok": false,
                "error": msg,
            });
            Ok(CmdOutput {
                pass: false,
                text,
                json,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

/// Apply the worker override: explicit flag first, then `QSL2_WORKERS`.
fn configure_workers(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("QSL2_WORKERS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = n.filter(|&n| n > 0) {
        // Ignore the error when a global pool already exists (tests call
        // this repeatedly); results do not depend on the pool size.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn emit(out: &mut String, format: OutputFormat, output: &CmdOutput) {
    match format {
        OutputFormat::Text => out.push_str(&output.text),
        OutputFormat::Json => {
            out.push_str(&serde_json::to_string_pretty(&output.json).expect("serializable"));
            out.push('\n');
        }
    }
}

fn emit_error(out: &mut String, format: OutputFormat, err: &CliError) {
    match format {
        OutputFormat::Text => out.push_str(&format!("error: {err}\n")),
        OutputFormat::Json => {
            let payload = serde_json::json!({ "error": err.to_string() });
            out.push_str(&serde_json::to_string_pretty(&payload).expect("serializable"));
            out.push('\n');
        }
    }
}

/// Parse `args`, run the requested command, and append output to `out`.
///
/// # Returns
/// Process exit code: 0 on success, 1 when a verification failed, 2 on
/// configuration errors.
pub fn run_from<I, T>(args: I, out: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            out.push_str(&e.to_string());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let format = cli.format;
    let cfg = match build_config(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            emit_error(out, format, &e);
            return 2;
        }
    };
    configure_workers(cfg.workers);
    let result = match cfg.command {
        Command::Invariant => cmd_invariant(&cfg),
        Command::Jones { .. } => cmd_jones(&cfg),
        Command::VerifyBrunnian { .. }
        | Command::VerifyDivisibility { .. }
        | Command::VerifyIdealLattice { .. } => cmd_verify(&cfg),
        Command::IdealShow { .. } => cmd_ideal_show(&cfg),
        Command::TangleLint { .. } => cmd_tangle_lint(&cfg),
    };
    match result {
        Ok(output) => {
            emit(out, cfg.format, &output);
            i32::from(!output.pass)
        }
        Err(e) => {
            emit_error(out, cfg.format, &e);
            2
        }
    }
}

/// Entry point for the binary: parse `std::env::args`, print, and return
/// the exit code.
pub fn run() -> i32 {
    let mut out = String::new();
    let code = run_from(std::env::args_os(), &mut out);
    print!("{out}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut out = String::new();
        let full: Vec<&str> = std::iter::once("qsl2").chain(args.iter().copied()).collect();
        let code = run_from(full, &mut out);
        (code, out)
    }

    #[test]
    fn invariant_of_trivial_tangles_is_a_tensor_of_ones() {
        let (code, out) = run_cli(&["invariant", "--builtin", "trivial3", "--p", "5"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("terms: 1"), "{out}");
        assert!(out.contains("(1)  1 (x) 1 (x) 1"), "{out}");
        assert!(out.contains("ledger: trivial"), "{out}");
    }

    #[test]
    fn invariant_of_the_clasp_prints_the_ledger_and_four_terms() {
        let (code, out) = run_cli(&["invariant", "--builtin", "clasp_B", "--p", "2"]);
        assert_eq!(code, 0, "{out}");
        // Four states (m, n) with m, n < 2, and a nonzero linking ledger.
        assert!(out.contains("terms: 4"), "{out}");
        assert!(out.contains("nontrivial Cartan factor"), "{out}");
    }

    #[test]
    fn jones_of_the_unknot_is_the_quantum_dimension() {
        let (code, out) = run_cli(&["jones", "--builtin", "trivial1", "--colors", "V2"]);
        assert_eq!(code, 0, "{out}");
        // [2]_v = v + v^-1 = u^-2 + u^2.
        assert!(out.contains("u^-2 + u^2"), "{out}");
        assert!(out.contains("routes: universal = matrix (agree)"), "{out}");
    }

    #[test]
    fn jones_routes_agree_on_the_clasp() {
        let (code, out) = run_cli(&[
            "jones",
            "--builtin",
            "clasp_B",
            "--colors",
            "V2,V2",
            "--route",
            "both",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("(agree)"), "{out}");
    }

    #[test]
    fn jones_rejects_wrong_color_counts() {
        let (code, out) = run_cli(&["jones", "--builtin", "clasp_B", "--colors", "V2"]);
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("expected 2 colors"), "{out}");
    }

    #[test]
    fn brunnian_membership_passes_on_the_brunnian_presentation() {
        let (code, out) = run_cli(&[
            "verify",
            "brunnian-membership",
            "--builtin",
            "borromean_P",
            "--i",
            "1",
            "--p",
            "2",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("membership: PASS"), "{out}");
        assert!(out.contains("brunnian form: yes"), "{out}");
    }

    #[test]
    fn brunnian_membership_fails_on_the_arc_extension() {
        let (code, out) = run_cli(&[
            "verify",
            "brunnian-membership",
            "--builtin",
            "borromean_plus_arc",
            "--i",
            "4",
            "--p",
            "2",
        ]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("membership: FAIL"), "{out}");
    }

    #[test]
    fn divisibility_certificate_for_the_borromean_rings() {
        let (code, out) = run_cli(&[
            "verify",
            "divisibility",
            "--builtin",
            "borromean_TB",
            "--l",
            "1,1,1",
            "--ideal",
            "brtilde",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("membership: PASS"), "{out}");
        assert!(out.contains("quotient:"), "{out}");
    }

    #[test]
    fn divisibility_below_three_components_is_a_configuration_error() {
        let (code, out) = run_cli(&[
            "verify",
            "divisibility",
            "--builtin",
            "clasp_B",
            "--l",
            "1,1",
            "--ideal",
            "br",
        ]);
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("hypothesis violation"), "{out}");
    }

    #[test]
    fn ideal_lattice_report_at_the_printed_tuple() {
        let (code, out) = run_cli(&["verify", "ideal-lattice", "--l", "2,2,2,2"]);
        assert_eq!(code, 0, "{out}");
        assert!(
            out.contains("(q - 1)^2 (q + 1) (q^2 + q + 1) (q^2 + 1) (q^4 + q^3 + q^2 + q + 1)"),
            "{out}"
        );
        assert!(
            out.contains("(q - 1)^4 (q^2 + q + 1) (q^2 + 1) (q^4 + q^3 + q^2 + q + 1)"),
            "{out}"
        );
        assert!(out.contains("Z_a   inside Z_Br:  no"), "{out}");
        assert!(out.contains("Z_Br  inside Z_a:   no"), "{out}");
        assert!(out.contains("lattice: PASS"), "{out}");
    }

    #[test]
    fn ideal_show_prints_factored_generators() {
        let (code, out) = run_cli(&["ideal", "show", "--type", "I", "--l", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("(q - 1)^4 (q + 1)"), "{out}");
        assert!(out.contains("generating set:"), "{out}");

        let (code, out) = run_cli(&["ideal", "show", "--type", "brtilde", "--l", "2,2,2"]);
        assert_eq!(code, 0, "{out}");
        assert!(
            out.contains("(q - 1)^2 (q + 1) (q^2 + q + 1) (q^2 + 1) (q^4 + q^3 + q^2 + q + 1)"),
            "{out}"
        );
    }

    #[test]
    fn unknown_builtin_is_a_configuration_error() {
        let (code, out) = run_cli(&["invariant", "--builtin", "nonsense"]);
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("unknown builtin"), "{out}");
    }

    #[test]
    fn lint_accepts_valid_and_rejects_invalid_files() {
        let dir = std::env::temp_dir();
        let good = dir.join("qsl2_lint_good.tangle");
        let bad = dir.join("qsl2_lint_bad.tangle");
        std::fs::write(&good, crate::tangle::clasp_b().to_string()).unwrap();
        std::fs::write(&bad, "tangle broken components=1\n| ?\n").unwrap();
        let (code, out) = run_cli(&["tangle", "lint", good.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("ok"), "{out}");
        assert!(out.contains("crossings: 2"), "{out}");
        let (code, out) = run_cli(&["tangle", "lint", bad.to_str().unwrap()]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("INVALID"), "{out}");
        assert!(out.contains("line"), "{out}");
        std::fs::remove_file(&good).ok();
        std::fs::remove_file(&bad).ok();
    }

    #[test]
    fn json_outputs_are_well_formed_and_round_trip() {
        let (code, out) = run_cli(&[
            "invariant",
            "--builtin",
            "trivial(2)",
            "--p",
            "1",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
        assert_eq!(v["components"], 2);
        assert_eq!(v["ledger"]["trivial"], true);

        let (code, out) = run_cli(&[
            "jones",
            "--builtin",
            "trivial1",
            "--colors",
            "V2",
            "--route",
            "matrix",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
        assert_eq!(v["value_string"], "u^-2 + u^2");

        let (code, out) = run_cli(&[
            "ideal",
            "show",
            "--type",
            "a",
            "--l",
            "2,2,2,2",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
        assert_eq!(
            v["factored"]["generator"],
            "(q - 1)^2 (q + 1) (q^2 + q + 1) (q^2 + 1) (q^4 + q^3 + q^2 + q + 1)"
        );
    }

    #[test]
    fn color_spellings_cover_the_special_elements() {
        assert_eq!(parse_color("V3").unwrap(), Color::irreducible(3));
        assert_eq!(parse_color("P2'").unwrap(), color_ptilde(2));
        assert_eq!(parse_color("P2''").unwrap(), color_pdoubleprime(2));
        assert_eq!(parse_color("P2").unwrap(), color_p(2));
        assert!(parse_color("V0").is_err());
        assert!(parse_color("W2").is_err());
        assert!(parse_color("P").is_err());
    }
}
