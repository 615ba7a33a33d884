//! matpow: matrix powers through characteristic-polynomial coefficients.
//!
//! Reads a JSON document carrying a matrix or a monic polynomial,
//! computes the combination coefficients b_j(n) with A^n = sum b_j(n) A^j
//! by the requested route, and emits JSON on stdout. Diagnostics go to
//! stderr. Exit codes: 0 success, 2 parse error, 3 dimension error,
//! 4 when the chosen method rejects the input.

mod input;
mod output;

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use matpow::{
    build_estimate, char_poly, coeffs_closed_distinct, coeffs_contour, coeffs_recurrence,
    eval_estimate, find_roots_default, matrix_power_binary, matrix_power_via_coeffs,
    compare_methods, EigenStructure, Error, Method, Polynomial, QuadratureConfig, SquareMatrix,
    DEFAULT_DOM_TOL,
};

use input::{parse_document, Document, Flavor};
use output::{emit, exact_matrix_value, float_matrix_value, rational_string, rational_value};

#[derive(Parser)]
#[command(
    name = "matpow",
    version,
    about = "Matrix powers through characteristic-polynomial coefficients",
    after_help = "Input is a JSON document {\"matrix\": [[..],..]} or {\"poly\": [a0,..]} read \
                  from a file path or stdin. Exact-flavor entries are integers or \"p/q\" strings."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the monic characteristic polynomial coefficients a_0..a_{k-1}
    Charpoly {
        /// Input file path; "-" or absent reads stdin
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        flavor: Option<Flavor>,
        /// Pretty-print the JSON output
        #[arg(long)]
        json: bool,
    },
    /// Compute the coefficients b_j(n) with A^n = sum_j b_j(n) A^j
    Coeffs {
        /// Input file path; "-" or absent reads stdin
        input: Option<PathBuf>,
        /// Exponent n (must be at least the polynomial degree)
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = CoeffMethod::Recurrence)]
        method: CoeffMethod,
        /// Contour radius (default 1.25 * spectral radius + 0.5)
        #[arg(long)]
        radius: Option<f64>,
        /// Contour node count (default 2048)
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long, value_enum)]
        flavor: Option<Flavor>,
        /// Pretty-print the JSON output
        #[arg(long)]
        json: bool,
    },
    /// Reconstruct A^n from the coefficients of the chosen route
    Power {
        /// Input file path; "-" or absent reads stdin
        input: Option<PathBuf>,
        /// Exponent n (at least the dimension; "binary" accepts any n >= 0)
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = PowerMethod::Recurrence)]
        method: PowerMethod,
        /// Check the result against the repeated-squaring oracle
        #[arg(long)]
        verify: bool,
        /// Contour radius (default 1.25 * spectral radius + 0.5)
        #[arg(long)]
        radius: Option<f64>,
        /// Contour node count (default 2048)
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long, value_enum)]
        flavor: Option<Flavor>,
        /// Pretty-print the JSON output
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffMethod {
    Recurrence,
    Closedform,
    Contour,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PowerMethod {
    Recurrence,
    Closedform,
    Contour,
    Asymptotic,
    Binary,
}

/// Error with its process exit code.
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Dimension(_) => 3,
            Error::InvalidInput(_) => 2,
            _ => 4,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Charpoly {
            input,
            flavor,
            json,
        } => {
            let doc = load(input.as_deref(), flavor)?;
            cmd_charpoly(doc, json)
        }
        Command::Coeffs {
            input,
            n,
            method,
            radius,
            nodes,
            flavor,
            json,
        } => {
            let doc = load(input.as_deref(), flavor)?;
            cmd_coeffs(doc, n, method, radius, nodes, json)
        }
        Command::Power {
            input,
            n,
            method,
            verify,
            radius,
            nodes,
            flavor,
            json,
        } => {
            let doc = load(input.as_deref(), flavor)?;
            cmd_power(doc, n, method, verify, radius, nodes, json)
        }
    }
}

fn load(path: Option<&Path>, flavor: Option<Flavor>) -> Result<Document, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::parse(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    parse_document(&text, flavor)
}

fn cmd_charpoly(doc: Document, pretty: bool) -> Result<(), CliError> {
    let value = match doc {
        Document::ExactMatrix(m) => {
            let p = char_poly(&m)?;
            serde_json::Value::Array(p.low_coeffs().iter().map(rational_value).collect())
        }
        Document::FloatMatrix(m) => {
            let p = char_poly(&m)?;
            serde_json::Value::Array(p.low_coeffs().iter().map(|c| json!(c)).collect())
        }
        _ => return Err(CliError::parse("charpoly requires a \"matrix\" input")),
    };
    emit(&value, pretty);
    Ok(())
}

/// The polynomial pair a command works with: the exact one when the
/// input flavor allows it, plus the floating projection used by the
/// numeric routes.
struct PolyPair {
    exact: Option<Polynomial<BigRational>>,
    float: Polynomial<f64>,
}

fn resolve_poly(doc: &Document) -> Result<PolyPair, CliError> {
    Ok(match doc {
        Document::ExactPoly(p) => PolyPair {
            float: p.to_f64_poly(),
            exact: Some(p.clone()),
        },
        Document::FloatPoly(p) => PolyPair {
            exact: None,
            float: p.clone(),
        },
        Document::ExactMatrix(m) => {
            let p = char_poly(m)?;
            PolyPair {
                float: p.to_f64_poly(),
                exact: Some(p),
            }
        }
        Document::FloatMatrix(m) => PolyPair {
            exact: None,
            float: char_poly(m)?,
        },
    })
}

fn eigen_with_warnings(p: &Polynomial<f64>) -> Result<EigenStructure, CliError> {
    let eig = find_roots_default(p)?;
    for d in eig.diagnostics() {
        eprintln!("warning: {d}");
    }
    Ok(eig)
}

fn quadrature_config(
    eig: &EigenStructure,
    radius: Option<f64>,
    nodes: Option<usize>,
) -> Result<QuadratureConfig, CliError> {
    let mut cfg = QuadratureConfig::auto(eig.spectral_radius());
    if let Some(r) = radius {
        cfg = cfg.with_radius(r)?;
    }
    if let Some(nd) = nodes {
        cfg = cfg.with_nodes(nd)?;
    }
    Ok(cfg)
}

fn cmd_coeffs(
    doc: Document,
    n: u64,
    method: CoeffMethod,
    radius: Option<f64>,
    nodes: Option<usize>,
    pretty: bool,
) -> Result<(), CliError> {
    let pair = resolve_poly(&doc)?;
    let (tag, b): (&str, Vec<serde_json::Value>) = match method {
        CoeffMethod::Recurrence => match &pair.exact {
            Some(exact) => {
                let c = coeffs_recurrence(exact, n)?;
                ("recurrence", c.values.iter().map(rational_string).collect())
            }
            None => {
                let c = coeffs_recurrence(&pair.float, n)?;
                ("recurrence", c.values.iter().map(|v| json!(v)).collect())
            }
        },
        CoeffMethod::Closedform => {
            let eig = eigen_with_warnings(&pair.float)?;
            let c = coeffs_closed_distinct(&eig, &pair.float, n)?;
            ("closedform", c.values.iter().map(|v| json!(v)).collect())
        }
        CoeffMethod::Contour => {
            let eig = eigen_with_warnings(&pair.float)?;
            let cfg = quadrature_config(&eig, radius, nodes)?;
            let c = coeffs_contour(&pair.float, n, &cfg, &eig)?;
            ("contour", c.values.iter().map(|v| json!(v)).collect())
        }
        CoeffMethod::Asymptotic => {
            let eig = eigen_with_warnings(&pair.float)?;
            let est = build_estimate(&eig, &pair.float, DEFAULT_DOM_TOL)?;
            for &j in est.vanished_js() {
                eprintln!("warning: leading term vanished for b_{j}; its estimate is 0");
            }
            let c = eval_estimate(&est, n)?;
            ("asymptotic", c.values.iter().map(|v| json!(v)).collect())
        }
    };
    emit(&json!({ "n": n, "method": tag, "b": b }), pretty);
    Ok(())
}

fn cmd_power(
    doc: Document,
    n: u64,
    method: PowerMethod,
    verify: bool,
    radius: Option<f64>,
    nodes: Option<usize>,
    pretty: bool,
) -> Result<(), CliError> {
    if !doc.is_matrix() {
        return Err(CliError::parse("power requires a \"matrix\" input"));
    }
    let flavor = doc.flavor();
    let (exact_m, float_m) = match &doc {
        Document::ExactMatrix(m) => (m.clone(), m.to_f64()),
        Document::FloatMatrix(m) => (exactify(m), m.clone()),
        _ => unreachable!(),
    };

    if method == PowerMethod::Binary {
        let (matrix, oracle_exact) = match flavor {
            Flavor::Exact => {
                let r = matrix_power_binary(&exact_m, n);
                (exact_matrix_value(&r), r)
            }
            Flavor::Float => (
                float_matrix_value(&matrix_power_binary(&float_m, n)),
                matrix_power_binary(&exact_m, n),
            ),
        };
        let mut out = json!({ "n": n, "method": "binary", "matrix": matrix });
        if verify {
            // The binary route is the oracle; deviations are definitionally
            // zero in the exact flavor.
            let _ = oracle_exact;
            out["verify"] = json!({ "max_abs_dev": 0.0, "max_rel_dev": 0.0 });
        }
        emit(&out, pretty);
        return Ok(());
    }

    let lib_method = match method {
        PowerMethod::Recurrence => Method::Recurrence,
        PowerMethod::Closedform => Method::ClosedForm,
        PowerMethod::Contour => Method::Contour,
        PowerMethod::Asymptotic => Method::Asymptotic,
        PowerMethod::Binary => unreachable!(),
    };

    if verify {
        let cfg = match (radius, nodes) {
            (None, None) => None,
            _ => {
                let p_float = char_poly(&exact_m)?.to_f64_poly();
                let eig = eigen_with_warnings(&p_float)?;
                Some(quadrature_config(&eig, radius, nodes)?)
            }
        };
        let report = compare_methods(&exact_m, n, &[lib_method], cfg.as_ref())?;
        let (_, outcome) = report
            .routes
            .into_iter()
            .next()
            .expect("one route requested");
        let route = outcome?;
        let matrix = match (&route.exact_matrix, flavor) {
            (Some(exact), Flavor::Exact) => exact_matrix_value(exact),
            _ => float_matrix_value(&route.matrix),
        };
        emit(
            &json!({
                "n": n,
                "method": lib_method.tag(),
                "matrix": matrix,
                "verify": {
                    "max_abs_dev": route.max_abs_dev,
                    "max_rel_dev": route.max_rel_dev,
                    "coeff_ns": route.coeff_ns as u64,
                    "reconstruct_ns": route.reconstruct_ns as u64,
                    "oracle_ns": report.oracle_ns as u64,
                }
            }),
            pretty,
        );
        return Ok(());
    }

    // Direct route without verification.
    let matrix = match (method, flavor) {
        (PowerMethod::Recurrence, Flavor::Exact) => {
            let p = char_poly(&exact_m)?;
            let c = coeffs_recurrence(&p, n)?;
            exact_matrix_value(&matrix_power_via_coeffs(&exact_m, &c)?)
        }
        _ => {
            let p = char_poly(&float_m)?;
            let coeffs = match method {
                PowerMethod::Recurrence => coeffs_recurrence(&p, n)?,
                PowerMethod::Closedform => {
                    let eig = eigen_with_warnings(&p)?;
                    coeffs_closed_distinct(&eig, &p, n)?
                }
                PowerMethod::Contour => {
                    let eig = eigen_with_warnings(&p)?;
                    let cfg = quadrature_config(&eig, radius, nodes)?;
                    coeffs_contour(&p, n, &cfg, &eig)?
                }
                PowerMethod::Asymptotic => {
                    let eig = eigen_with_warnings(&p)?;
                    let est = build_estimate(&eig, &p, DEFAULT_DOM_TOL)?;
                    eval_estimate(&est, n)?
                }
                PowerMethod::Binary => unreachable!(),
            };
            float_matrix_value(&matrix_power_via_coeffs(&float_m, &coeffs)?)
        }
    };
    emit(&json!({ "n": n, "method": lib_method.tag(), "matrix": matrix }), pretty);
    Ok(())
}

/// Lossless f64 -> rational conversion (every finite double is rational).
fn exactify(m: &SquareMatrix<f64>) -> SquareMatrix<BigRational> {
    let k = m.dim();
    let rows: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigRational::from_float(*m.entry(i, j)).expect("finite by construction"))
                .collect()
        })
        .collect();
    SquareMatrix::from_rows(rows).expect("shape preserved")
}
