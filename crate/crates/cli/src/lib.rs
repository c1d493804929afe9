//! The `superklr` command line: argument parsing, dispatch and output.
//!
//! [`run`] is the whole program minus process I/O, so tests can drive it
//! in-process and compare bytes.

pub mod io;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use superklr_core::basis::{distinct_root_basis, onh_basis, tilde_basis, MonomialLabel};
use superklr_core::dimension::dim_table;
use superklr_core::onh::{parse_element, CyclotomicOnh, Scalars};
use superklr_core::oracle::oracle_dim;
use superklr_core::qpi::big_to_json;
use superklr_core::structure::{build_graph_with, DEFAULT_SEQUENCE_CAP};
use superklr_core::{
    connectivity_report, idempotent_nonzero, tilde_dims, CartanSuperdatum, Composition, DimensionQuery,
    DominantWeight, ErrorCategory, Execution, Permutation, RootVector,
};

use io::{document, label_json, label_line, laurent_json, load_datum, poly_json, seq_text};

/// Default bound on the sequence length `n`.
pub const DEFAULT_MAX_N: usize = 10;
/// Environment variable that replaces the default bound on `n`.
pub const MAX_N_ENV: &str = "SUPERKLR_MAX_N";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] superklr_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "E_IO",
            CliError::Usage(_) => "E_USAGE",
        }
    }

    /// 1 parse, 2 validation, 3 guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.category() {
                ErrorCategory::Parse => 1,
                ErrorCategory::Validation => 2,
                ErrorCategory::Guard => 3,
            },
            CliError::Io { .. } | CliError::Usage(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "superklr", version, about = "Graded dimensions and bases of cyclotomic quiver Hecke superalgebras")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest sequence length accepted (default 10, or $SUPERKLR_MAX_N).
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Cartan superdatum config (JSON).
    #[arg(long)]
    pub cartan: PathBuf,
    /// Dominant weight, e.g. "2,1".
    #[arg(long)]
    pub lambda: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a Cartan superdatum config.
    Validate { file: PathBuf },
    /// Graded dimension of e(nu) R e(nu').
    Dim {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Defaults to --nu.
        #[arg(long)]
        nu_prime: Option<String>,
        /// Also print the single transporter term for this permutation ("3,2,1" or "(1 3)").
        #[arg(long)]
        term: Option<String>,
    },
    /// All graded dimensions over I^beta x I^beta.
    DimTable {
        #[command(flatten)]
        datum: DatumArgs,
        /// Root vector, e.g. "1:2,2:1".
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = DEFAULT_SEQUENCE_CAP)]
        cap: usize,
    },
    /// Whether e(nu) is nonzero.
    Nonzero {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        nu: String,
    },
    /// Dimension data of a block sequence nu~ = (l_1)^{b_1} ... (l_p)^{b_p}.
    Tilde {
        #[command(flatten)]
        datum: DatumArgs,
        /// Pairwise distinct block labels.
        #[arg(long)]
        labels: String,
        /// Block sizes.
        #[arg(long)]
        b: String,
    },
    /// Monomial bases.
    Basis {
        #[command(subcommand)]
        kind: BasisCommand,
    },
    /// The cyclotomic odd nilHecke algebra.
    Onh {
        #[command(subcommand)]
        action: OnhCommand,
    },
    /// Idempotent graph components and the indecomposability verdict.
    Connectivity {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = DEFAULT_SEQUENCE_CAP)]
        cap: usize,
    },
    /// Compare the closed formula with the quantum-group action.
    OracleCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        nu_prime: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BasisCommand {
    Tilde {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        labels: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        list: bool,
    },
    Onh {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        list: bool,
    },
    /// Basis of e(nu) R e(mu) for mu with distinct entries.
    Distinct {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum OnhCommand {
    /// Reduced product of two elements, e.g. "x1*t[1]" "x2 + 1".
    Mult {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        /// Work over F_p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Products of all pairs of basis elements.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Graded super dimension from the basis.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run with explicit arguments (including the program name) and the value of
/// `SUPERKLR_MAX_N`, if set.
pub fn run<I, T>(args: I, env_max_n: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let json = cli.json;
    match execute(&cli, env_max_n) {
        Ok(out) => Outcome {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => {
            let message = e.to_string();
            if json {
                Outcome {
                    code: e.exit_code(),
                    stdout: format!("{}\n", io::error_document(e.code(), &message)),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr: format!("error[{}]: {message}\n", e.code()),
                }
            }
        }
    }
}

fn max_n(cli: &Cli, env: Option<&str>) -> Result<usize, CliError> {
    if let Some(n) = cli.max_n {
        return Ok(n);
    }
    match env {
        Some(text) => text
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{MAX_N_ENV} must be a nonnegative integer, got {text:?}"))),
        None => Ok(DEFAULT_MAX_N),
    }
}

fn check_n(n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        return Err(superklr_core::Error::CapExceeded { what: "n", size: n, cap }.into());
    }
    Ok(())
}

struct Ctx {
    json: bool,
    max_n: usize,
}

impl Ctx {
    fn emit(&self, command: &str, text: String, body: Value) -> String {
        if self.json {
            format!("{}\n", document(command, body))
        } else {
            text
        }
    }
}

fn load(args: &DatumArgs) -> Result<(CartanSuperdatum, DominantWeight), CliError> {
    let (datum, _) = load_datum(&args.cartan)?;
    let weight = datum.parse_weight(&args.lambda)?;
    Ok((datum, weight))
}

fn execute(cli: &Cli, env: Option<&str>) -> Result<String, CliError> {
    let ctx = Ctx {
        json: cli.json,
        max_n: max_n(cli, env)?,
    };
    match &cli.command {
        Command::Validate { file } => validate(&ctx, file),
        Command::Dim {
            datum,
            nu,
            nu_prime,
            term,
        } => dim(&ctx, datum, nu, nu_prime.as_deref(), term.as_deref()),
        Command::DimTable { datum, beta, cap } => table(&ctx, datum, beta, *cap),
        Command::Nonzero { datum, nu } => nonzero(&ctx, datum, nu),
        Command::Tilde { datum, labels, b } => tilde(&ctx, datum, labels, b),
        Command::Basis { kind } => basis(&ctx, kind),
        Command::Onh { action } => onh(&ctx, action),
        Command::Connectivity { datum, beta, cap } => connectivity(&ctx, datum, beta, *cap),
        Command::OracleCheck { datum, nu, nu_prime } => oracle_check(&ctx, datum, nu, nu_prime.as_deref()),
    }
}

fn validate(ctx: &Ctx, file: &std::path::Path) -> Result<String, CliError> {
    let (datum, report) = load_datum(file)?;
    let labels = datum.labels().join(",");
    let parity: Vec<&str> = datum.parities().iter().map(|p| p.name()).collect();
    let sym: Vec<String> = report.symmetrizer.iter().map(u32::to_string).collect();
    let source = if report.symmetrizer_computed { "computed" } else { "given" };
    let text = format!(
        "valid\nlabels: {labels}\nparity: {}\nsymmetrizer: {} ({source})\n",
        parity.join(","),
        sym.join(",")
    );
    Ok(ctx.emit(
        "validate",
        text,
        json!({
            "valid": true,
            "labels": datum.labels(),
            "cartan": datum.matrix(),
            "parity": parity,
            "symmetrizer": report.symmetrizer,
            "symmetrizer_computed": report.symmetrizer_computed,
        }),
    ))
}

fn query(
    ctx: &Ctx,
    args: &DatumArgs,
    nu: &str,
    nu_prime: Option<&str>,
) -> Result<(CartanSuperdatum, DominantWeight, DimensionQuery), CliError> {
    let (datum, weight) = load(args)?;
    let nu = datum.parse_seq(nu)?;
    let nu_prime = match nu_prime {
        Some(text) => datum.parse_seq(text)?,
        None => nu.clone(),
    };
    check_n(nu.len().max(nu_prime.len()), ctx.max_n)?;
    let q = DimensionQuery::new(&datum, &weight, &nu, &nu_prime)?;
    Ok((datum, weight, q))
}

fn dim(ctx: &Ctx, args: &DatumArgs, nu: &str, nu_prime: Option<&str>, term: Option<&str>) -> Result<String, CliError> {
    let (datum, _, q) = query(ctx, args, nu, nu_prime)?;
    let graded = q.graded_dim();
    let mut text = format!("{graded}\n");
    let mut body = json!({
        "nu": seq_text(&datum, q.nu()),
        "nu_prime": seq_text(&datum, q.nu_prime()),
        "graded": poly_json(&graded),
        "graded_z": laurent_json(&q.graded_dim_z()),
        "ungraded": big_to_json(&q.ungraded_dim()),
    });
    if let Some(w) = term {
        let w = Permutation::parse(w, Some(q.n()))?;
        let value = q.term(&w)?;
        let stats = (0..q.n()).map(|t| q.n_stat(&w, t)).collect::<Result<Vec<_>, _>>()?;
        let parities = (0..q.n())
            .map(|t| q.p_stat(&w, t).map(|p| p.name()))
            .collect::<Result<Vec<_>, _>>()?;
        let rendered: Vec<String> = stats.iter().map(i64::to_string).collect();
        let _ = writeln!(text, "term {w}: {value}  (N = {}; p = {})", rendered.join(","), parities.join(","));
        body["term"] = json!({
            "perm": w.to_string(),
            "value": poly_json(&value),
            "n_stats": stats,
            "p_stats": parities,
        });
    }
    Ok(ctx.emit("dim", text, body))
}

fn parse_beta(ctx: &Ctx, datum: &CartanSuperdatum, text: &str) -> Result<RootVector, CliError> {
    let beta = datum.parse_root(text)?;
    check_n(beta.height(), ctx.max_n)?;
    Ok(beta)
}

fn table(ctx: &Ctx, args: &DatumArgs, beta: &str, cap: usize) -> Result<String, CliError> {
    let (datum, weight) = load(args)?;
    let beta = parse_beta(ctx, &datum, beta)?;
    let t = dim_table(&datum, &weight, &beta, cap, Execution::default())?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (a, mu) in t.sequences.iter().enumerate() {
        for (b, nu) in t.sequences.iter().enumerate() {
            let value = &t.entries[a][b];
            let _ = writeln!(text, "e({}) R e({}): {value}", seq_text(&datum, mu), seq_text(&datum, nu));
            rows.push(json!({
                "nu": seq_text(&datum, mu),
                "nu_prime": seq_text(&datum, nu),
                "graded": poly_json(value),
            }));
        }
    }
    let total = t.total();
    let _ = writeln!(text, "total: {total}");
    let sequences: Vec<String> = t.sequences.iter().map(|s| seq_text(&datum, s)).collect();
    Ok(ctx.emit(
        "dim-table",
        text,
        json!({"sequences": sequences, "entries": rows, "total": poly_json(&total)}),
    ))
}

fn nonzero(ctx: &Ctx, args: &DatumArgs, nu: &str) -> Result<String, CliError> {
    let (datum, weight, q) = query(ctx, args, nu, None)?;
    let alive = idempotent_nonzero(&datum, &weight, q.nu())?;
    let text = format!("{}\n", if alive { "nonzero" } else { "zero" });
    Ok(ctx.emit(
        "nonzero",
        text,
        json!({
            "nu": seq_text(&datum, q.nu()),
            "nonzero": alive,
            "ungraded": big_to_json(&q.ungraded_dim()),
        }),
    ))
}

fn parse_blocks(ctx: &Ctx, datum: &CartanSuperdatum, labels: &str, b: &str) -> Result<(Vec<usize>, Composition), CliError> {
    let labels = datum.parse_seq(labels)?.0;
    let b = Composition::parse(b)?;
    check_n(b.total(), ctx.max_n)?;
    Ok((labels, b))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn tilde(ctx: &Ctx, args: &DatumArgs, labels: &str, b: &str) -> Result<String, CliError> {
    let (datum, weight) = load(args)?;
    let (labels, b) = parse_blocks(ctx, &datum, labels, b)?;
    let dims = tilde_dims(&datum, &weight, &labels, &b)?;
    let text = format!(
        "nu~: {}\nblock values: {}\nposition values: {}\ndimension: {}\nnonzero: {}\n",
        seq_text(&datum, &dims.nu_tilde),
        join(&dims.block_values),
        join(&dims.position_values),
        dims.total,
        if dims.nonzero { "yes" } else { "no" }
    );
    Ok(ctx.emit(
        "tilde",
        text,
        json!({
            "nu_tilde": seq_text(&datum, &dims.nu_tilde),
            "block_values": dims.block_values,
            "position_values": dims.position_values,
            "dimension": big_to_json(&dims.total),
            "nonzero": dims.nonzero,
        }),
    ))
}

fn basis_output(ctx: &Ctx, kind: &str, labels: &[MonomialLabel], list: bool, empty_note: Option<&str>) -> String {
    let mut text = match empty_note {
        Some(note) if labels.is_empty() => format!("empty ({note})\n"),
        _ => format!("count: {}\n", labels.len()),
    };
    if list {
        for l in labels {
            let _ = writeln!(text, "{}", label_line(l));
        }
    }
    let listed: Value = if list {
        Value::Array(labels.iter().map(label_json).collect())
    } else {
        Value::Null
    };
    ctx.emit(
        "basis",
        text,
        json!({"kind": kind, "count": labels.len(), "labels": listed}),
    )
}

fn basis(ctx: &Ctx, kind: &BasisCommand) -> Result<String, CliError> {
    match kind {
        BasisCommand::Tilde { datum, labels, b, list } => {
            let (d, weight) = load(datum)?;
            let (labels, b) = parse_blocks(ctx, &d, labels, b)?;
            let basis = tilde_basis(&d, &weight, &labels, &b)?;
            Ok(basis_output(ctx, "tilde", &basis, *list, None))
        }
        BasisCommand::Onh { n, ell, list } => {
            check_n(*n, ctx.max_n)?;
            let basis = onh_basis(*n, *ell);
            Ok(basis_output(ctx, "onh", &basis, *list, Some("ell < n")))
        }
        BasisCommand::Distinct { datum, mu, nu, list } => {
            let (d, weight) = load(datum)?;
            let mu = d.parse_seq(mu)?;
            let nu = d.parse_seq(nu)?;
            check_n(mu.len().max(nu.len()), ctx.max_n)?;
            let basis = distinct_root_basis(&d, &weight, &mu, &nu)?;
            Ok(basis_output(ctx, "distinct", &basis, *list, None))
        }
    }
}

fn scalars(prime: Option<u64>) -> Result<Scalars, CliError> {
    Ok(match prime {
        Some(p) => Scalars::prime(p)?,
        None => Scalars::Rationals,
    })
}

fn scalars_name(s: Scalars) -> String {
    match s {
        Scalars::Rationals => "Q".into(),
        Scalars::PrimeField(p) => format!("F_{p}"),
    }
}

fn onh(ctx: &Ctx, action: &OnhCommand) -> Result<String, CliError> {
    match action {
        OnhCommand::Mult { n, ell, prime, a, b } => {
            check_n(*n, ctx.max_n)?;
            let s = scalars(*prime)?;
            let product = if ell < n {
                // still reject malformed input in the zero algebra
                let alg = superklr_core::onh::OnhAlgebra::new(*n)?;
                parse_element(&alg, a)?;
                parse_element(&alg, b)?;
                "0".to_string()
            } else {
                let algebra = CyclotomicOnh::with_scalars(*n, *ell, s)?;
                let x = algebra.reduce(&parse_element(algebra.algebra(), a)?)?;
                let y = algebra.reduce(&parse_element(algebra.algebra(), b)?)?;
                algebra.multiply(&x, &y)?.to_string()
            };
            Ok(ctx.emit(
                "onh-mult",
                format!("{product}\n"),
                json!({"n": n, "ell": ell, "scalars": scalars_name(s), "product": product}),
            ))
        }
        OnhCommand::Table { n, ell, prime } => {
            check_n(*n, ctx.max_n)?;
            let s = scalars(*prime)?;
            if ell < n {
                return Ok(ctx.emit(
                    "onh-table",
                    "empty (ell < n)\n".into(),
                    json!({"n": n, "ell": ell, "scalars": scalars_name(s), "basis": [], "products": []}),
                ));
            }
            let algebra = CyclotomicOnh::with_scalars(*n, *ell, s)?;
            let t = algebra.structure_table(Execution::default())?;
            let names: Vec<String> = t.basis().iter().map(|b| b.to_string()).collect();
            let mut text = format!("basis ({}): {}\n", names.len(), names.join(", "));
            let mut products = Vec::new();
            for (a, x) in names.iter().enumerate() {
                for (b, y) in names.iter().enumerate() {
                    let value = t.entry(a, b).to_string();
                    let _ = writeln!(text, "({x}) * ({y}) = {value}");
                    products.push(json!({"left": x, "right": y, "product": value}));
                }
            }
            Ok(ctx.emit(
                "onh-table",
                text,
                json!({"n": n, "ell": ell, "scalars": scalars_name(s), "basis": names, "products": products}),
            ))
        }
        OnhCommand::Dim { n, ell } => {
            check_n(*n, ctx.max_n)?;
            let formula = DimensionQuery::odd_nilhecke(*n, *ell as u64).graded_dim();
            let census = if ell < n {
                formula.clone()
            } else {
                CyclotomicOnh::new(*n, *ell)?.graded_super_dimension()
            };
            if census != formula {
                return Err(superklr_core::Error::Internal(format!("basis census {census} differs from formula {formula}")).into());
            }
            Ok(ctx.emit(
                "onh-dim",
                format!("{census}\n"),
                json!({"n": n, "ell": ell, "graded": poly_json(&census), "ungraded": big_to_json(&census.specialize_total())}),
            ))
        }
    }
}

fn connectivity(ctx: &Ctx, args: &DatumArgs, beta: &str, cap: usize) -> Result<String, CliError> {
    let (datum, weight) = load(args)?;
    let beta = parse_beta(ctx, &datum, beta)?;
    let graph = build_graph_with(&datum, &weight, &beta, cap, Execution::default())?;
    let report = connectivity_report(&graph);
    let names: Vec<String> = graph.vertices.iter().map(|v| seq_text(&datum, v)).collect();
    let mut text = format!("vertices: {}\n", names.len());
    for v in &names {
        let _ = writeln!(text, "  {v}");
    }
    let _ = writeln!(text, "edges: {}", graph.edges.len());
    for &(a, b) in &graph.edges {
        let _ = writeln!(text, "  {} -- {}", names[a], names[b]);
    }
    let _ = writeln!(text, "components: {}", report.components.len());
    let components: Vec<Vec<&str>> = report
        .components
        .iter()
        .map(|c| c.iter().map(|&i| names[i].as_str()).collect())
        .collect();
    for c in &components {
        let _ = writeln!(text, "  {{{}}}", c.join(" | "));
    }
    let _ = writeln!(text, "verdict: {}", report.verdict);
    let edges: Vec<[&str; 2]> = graph.edges.iter().map(|&(a, b)| [names[a].as_str(), names[b].as_str()]).collect();
    Ok(ctx.emit(
        "connectivity",
        text,
        json!({
            "vertices": names,
            "edges": edges,
            "components": components,
            "verdict": report.verdict.code(),
            "verdict_text": report.verdict.to_string(),
        }),
    ))
}

fn oracle_check(ctx: &Ctx, args: &DatumArgs, nu: &str, nu_prime: Option<&str>) -> Result<String, CliError> {
    let (datum, weight, q) = query(ctx, args, nu, nu_prime)?;
    let formula = q.graded_dim();
    let oracle = oracle_dim(&datum, &weight, q.nu(), q.nu_prime())?;
    let equal = formula == oracle;
    if !equal {
        return Err(superklr_core::Error::Internal(format!("formula {formula} and oracle {oracle} disagree")).into());
    }
    let text = format!("formula: {formula}\noracle: {oracle}\nequal: yes\n");
    Ok(ctx.emit(
        "oracle-check",
        text,
        json!({"formula": poly_json(&formula), "oracle": poly_json(&oracle), "equal": equal}),
    ))
}
