//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tlsym_core::algebra::{boxtimes_trace, gr_level, v_trace, voiculescu_trace, w_trace};
use tlsym_core::gns::{conditional_expectation, gram_matrix, Pairing};
use tlsym_core::meander::enumerate_meanders;
use tlsym_core::spectrum::{global_index, pf_dimensions, r_parameter, GlobalIndex, VertexParity};
use tlsym_core::{BoxShape, Flavor, Scalar, Shading};

use crate::config::{DeltaMode, OutputFormat, RunConfig};
use crate::error::{AppError, Result};
use crate::io::{self, ElementInput};
use crate::report::Report;
use crate::suites;

#[derive(Parser, Debug)]
#[command(name = "tlsym", version, about = "Exact computations in four-sided Temperley-Lieb diagram algebras")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Loop parameter: `symbolic` or a number
    #[arg(long, global = true, default_value = "symbolic")]
    delta: DeltaMode,
    /// Degree bound for quantified checks
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    /// Boundary-point bound for quantified checks (command-specific default)
    #[arg(long, global = true)]
    max_boundary: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Seed for randomized sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reject input documents that are not already canonical
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Traces of an element, or the associativity and trace checks
    Trace {
        #[arg(long)]
        element: Option<PathBuf>,
    },
    /// Gram matrix of one shape, or the positivity check over all shapes
    Gram {
        /// `left,right,top,bottom,shading`, e.g. `0,0,2,2,+`
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, value_enum, default_value_t = PairingArg::Tau)]
        pairing: PairingArg,
    },
    /// Meander counts of order `n`, or the trace-moment identity
    Meander {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check that X and Y are inverse and X is a trace-preserving *-map
    CobCheck,
    /// Check the derivation identities and the kernel reconstruction
    DerivationCheck,
    /// Check the conjugate-variable pairing
    ConjugateCheck,
    /// Conditional expectation of an element, or its checks
    Expectation {
        #[arg(long)]
        element: Option<PathBuf>,
    },
    /// Dimensions, global index and r_k of a principal graph
    Index {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PairingArg {
    Tau,
    TauPrime,
}

impl From<PairingArg> for Pairing {
    fn from(p: PairingArg) -> Self {
        match p {
            PairingArg::Tau => Pairing::Tau,
            PairingArg::TauPrime => Pairing::TauPrime,
        }
    }
}

/// Exit status of a command.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Run with the given arguments (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli) {
        Ok(Outcome { text, passed }) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }

    fn report(r: &Report, format: OutputFormat) -> Self {
        Outcome { text: r.render(format), passed: r.passed() }
    }
}

fn config(g: &GlobalArgs, default_boundary: usize) -> Result<RunConfig> {
    let cfg = RunConfig {
        delta: g.delta,
        max_degree: g.max_degree,
        max_boundary: g.max_boundary.unwrap_or(default_boundary),
        format: g.format,
        seed: g.seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| AppError::Io { path: path.to_owned(), source })
}

fn load_element(path: &Path, strict: bool) -> Result<ElementInput> {
    let parsed = io::parse_element(&read(path)?)?;
    if strict {
        parsed.strict()
    } else {
        Ok(parsed.value)
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    let g = &cli.global;
    match cli.command {
        Command::Trace { element: Some(path) } => {
            let cfg = config(g, 10)?;
            trace_element(&load_element(&path, g.strict)?, &cfg)
        }
        Command::Trace { element: None } => {
            let cfg = config(g, 10)?;
            Ok(Outcome::report(&suites::algebra(cfg.max_boundary, 200, cfg.seed), cfg.format))
        }
        Command::Gram { shape: Some(shape), pairing } => {
            let cfg = config(g, 8)?;
            gram(&parse_shape(&shape)?, pairing.into(), &cfg)
        }
        Command::Gram { shape: None, .. } => {
            let cfg = config(g, 8)?;
            let deltas = match cfg.numeric_delta() {
                Some(d) => vec![d],
                None => suites::POSITIVITY_DELTAS.to_vec(),
            };
            Ok(Outcome::report(&suites::positivity(cfg.max_boundary, &deltas), cfg.format))
        }
        Command::Meander { n: Some(n) } => {
            let cfg = config(g, 0)?;
            meander(n, &cfg)
        }
        Command::Meander { n: None } => {
            let cfg = config(g, 0)?;
            Ok(Outcome::report(&suites::meander_identity(6), cfg.format))
        }
        Command::CobCheck => {
            let cfg = config(g, 10)?;
            Ok(Outcome::report(&suites::orthogonalization(cfg.max_boundary, 200, cfg.seed), cfg.format))
        }
        Command::DerivationCheck => {
            let cfg = config(g, 8)?;
            let r = suites::derivations(cfg.max_boundary, cfg.max_degree, 200, cfg.seed)
                .merge(suites::coassociativity(cfg.max_degree.min(3)));
            Ok(Outcome::report(&r, cfg.format))
        }
        Command::ConjugateCheck => {
            let cfg = config(g, 5)?;
            Ok(Outcome::report(&suites::conjugate(cfg.max_boundary, cfg.max_degree), cfg.format))
        }
        Command::Expectation { element: Some(path) } => {
            let cfg = config(g, 8)?;
            let input = load_element(&path, g.strict)?;
            let e = conditional_expectation(&input.element)?;
            Ok(Outcome::ok(match cfg.format {
                OutputFormat::Text => format!("{e}\n"),
                _ => io::emit_element(&e, None),
            }))
        }
        Command::Expectation { element: None } => {
            let cfg = config(g, 8)?;
            Ok(Outcome::report(&suites::expectation(2, cfg.max_boundary), cfg.format))
        }
        Command::Index { graph: Some(path), k } => {
            let cfg = config(g, 0)?;
            index(&path, k, &cfg)
        }
        Command::Index { graph: None, .. } => {
            let cfg = config(g, 0)?;
            Ok(Outcome::report(&suites::index_arithmetic(100, cfg.seed), cfg.format))
        }
    }
}

fn parse_shape(s: &str) -> Result<BoxShape> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || AppError::Usage(format!("--shape expects `left,right,top,bottom,+|-`, got `{s}`"));
    if parts.len() != 5 {
        return Err(bad());
    }
    let n: Vec<usize> = parts[..4].iter().map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    let shading = match parts[4] {
        "+" => Shading::Plus,
        "-" => Shading::Minus,
        _ => return Err(bad()),
    };
    let shape = BoxShape::new(n[0], n[1], n[2], n[3], shading);
    shape.check_even()?;
    Ok(shape)
}

/// Shortest decimal up to 12 places.
fn float(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn value(s: &Scalar, delta: DeltaMode) -> Result<String> {
    Ok(match delta {
        DeltaMode::Symbolic => s.to_string(),
        DeltaMode::Numeric(d) => float(s.evaluate(d)?),
    })
}

fn table(rows: &[(String, String)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
        OutputFormat::Csv => {
            let mut out = String::from("quantity,value\n");
            for (k, v) in rows {
                out.push_str(&format!("{k},{v}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, Value> = rows.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
            io::to_pretty(&map)
        }
    }
}

fn trace_element(input: &ElementInput, cfg: &RunConfig) -> Result<Outcome> {
    let e = &input.element;
    let mut rows = Vec::new();
    match e.flavor() {
        Flavor::V => {
            rows.push(("Tr".to_string(), value(&v_trace(e), cfg.delta)?));
            if e.shapes().all(|s| s.left == s.right) {
                rows.push(("tau_boxtimes".to_string(), value(&boxtimes_trace(e), cfg.delta)?));
            }
            if let Ok(Some((k, _))) = gr_level(e) {
                rows.push((format!("tau_{k}"), value(&voiculescu_trace(e)?, cfg.delta)?));
            }
        }
        Flavor::W => rows.push(("Tr'".to_string(), value(&w_trace(e), cfg.delta)?)),
    }
    Ok(Outcome::ok(table(&rows, cfg.format)))
}

fn gram(shape: &BoxShape, pairing: Pairing, cfg: &RunConfig) -> Result<Outcome> {
    let m = gram_matrix(*shape, pairing)?;
    let numeric = match cfg.numeric_delta() {
        Some(d) => Some((m.numeric(d)?, m.eigenvalues(d)?)),
        None => None,
    };
    let cell = |i: usize, j: usize| match &numeric {
        Some((n, _)) => float(n[i][j]),
        None => m.entries[i][j].to_string(),
    };
    let n = m.basis.len();
    let text = match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| cell(i, j)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let basis: Vec<_> = m.basis.iter().map(|d| json!(io::diagram_doc(d).pairs)).collect();
            let entries: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| cell(i, j)).collect()).collect();
            let mut doc = json!({
                "shape": io::ShapeDoc::from(*shape),
                "delta": cfg.delta.to_string(),
                "basis": basis,
                "entries": entries,
            });
            if let Some((_, eig)) = &numeric {
                doc["eigenvalues"] = json!(eig.iter().map(|&x| float(x)).collect::<Vec<_>>());
            }
            io::to_pretty(&doc)
        }
        OutputFormat::Text => {
            let mut out = format!("Gram matrix of {shape} ({} basis diagrams)\n", n);
            for (i, d) in m.basis.iter().enumerate() {
                out.push_str(&format!("  b{i} = {d}\n"));
            }
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| cell(i, j)).collect();
                out.push_str(&format!("[{}]\n", row.join(", ")));
            }
            if let Some((_, eig)) = &numeric {
                let e: Vec<String> = eig.iter().map(|&x| float(x)).collect();
                out.push_str(&format!("eigenvalues: {}\n", e.join(", ")));
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn meander(n: usize, cfg: &RunConfig) -> Result<Outcome> {
    let m = enumerate_meanders(n)?;
    let doc = io::meander_doc(&m);
    let text = match cfg.format {
        OutputFormat::Json => io::to_pretty(&doc),
        OutputFormat::Csv => {
            let mut out = String::from("components,count\n");
            for (k, c) in doc.counts.iter().enumerate() {
                out.push_str(&format!("{},{c}\n", k + 1));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!("meanders of order {n}\n");
            for (k, c) in doc.counts.iter().enumerate() {
                out.push_str(&format!("  {} component(s): {c}\n", k + 1));
            }
            out.push_str(&format!("total = {}\nm_{n}(q) = {}\n", doc.total, doc.polynomial));
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn index(path: &Path, k: u32, cfg: &RunConfig) -> Result<Outcome> {
    let g = io::parse_graph(&read(path)?)?;
    let pf = pf_dimensions(&g)?;
    if let Some(d) = cfg.numeric_delta() {
        if (d - pf.delta).abs() > 1e-9 {
            return Err(tlsym_core::Error::DeltaMismatch { given: d, derived: pf.delta }.into());
        }
    }
    let gi = global_index(&g)?;
    let rs: Vec<f64> = match gi {
        GlobalIndex::Finite(i) => (0..=k).map(|j| r_parameter(j, pf.delta, i)).collect::<Result<_, _>>()?,
        GlobalIndex::Infinite => vec![f64::INFINITY; k as usize + 1],
    };
    let parity = |p: VertexParity| match p {
        VertexParity::Even => "even",
        VertexParity::Odd => "odd",
    };
    let text = match cfg.format {
        OutputFormat::Json => {
            let vertices: Vec<Value> = g
                .vertices()
                .iter()
                .zip(&pf.dims)
                .map(|(v, d)| json!({"id": v.id, "parity": parity(v.parity), "dim": float(*d)}))
                .collect();
            io::to_pretty(&json!({
                "vertices": vertices,
                "delta": float(pf.delta),
                "index": float(gi.value()),
                "r": rs.iter().map(|&r| float(r)).collect::<Vec<_>>(),
            }))
        }
        OutputFormat::Csv => {
            let mut out = String::from("vertex,parity,dim\n");
            for (v, d) in g.vertices().iter().zip(&pf.dims) {
                out.push_str(&format!("{},{},{}\n", v.id, parity(v.parity), float(*d)));
            }
            out.push_str(&format!("I,,{}\ndelta,,{}\n", float(gi.value()), float(pf.delta)));
            for (j, r) in rs.iter().enumerate() {
                out.push_str(&format!("r_{j},,{}\n", float(*r)));
            }
            out
        }
        OutputFormat::Text => {
            let width = g.vertices().iter().map(|v| v.id.len()).max().unwrap_or(0).max(6);
            let mut out = format!("{:width$}  parity  dim\n", "vertex");
            for (v, d) in g.vertices().iter().zip(&pf.dims) {
                out.push_str(&format!("{:width$}  {:6}  {}\n", v.id, parity(v.parity), float(*d)));
            }
            let rs: Vec<String> = rs.iter().enumerate().map(|(j, r)| format!("r_{j} = {}", float(*r))).collect();
            out.push_str(&format!("delta = {}\nI = {}, {}\n", float(pf.delta), float(gi.value()), rs.join(", ")));
            out
        }
    };
    Ok(Outcome::ok(text))
}
