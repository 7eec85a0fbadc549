//! Command-line surface: every capability of the crate behind one binary
//! with JSON input and output, suitable for scripting and golden-file
//! regression tests.
//!
//! Output contract: with `--format json` (the default) each invocation
//! writes exactly one JSON document to standard output. Keys are sorted,
//! reals carry 17 significant digits in scientific notation, and identical
//! argv + input files + seed produce byte-identical payloads. Diagnostics
//! go to standard error. Exit codes: 0 success, 1 verification failure,
//! 2 input error (the payload then has an `error` field with a
//! machine-readable `code`).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{self, AlgebraElement, InheritanceTensor};
use crate::derivations;
use crate::dynamics;
use crate::oracle::{self, SearchConfig, TargetEquation};
use crate::properties;
use crate::special::{self, EnumerationParams, StochasticMatrixPair};

/// Outcome of one CLI invocation.
#[derive(Debug, Clone)]
pub struct CommandResult {
    /// 0 success, 1 verification failure, 2 input error.
    pub exit_code: i32,
    /// The single JSON document to print.
    pub payload: Value,
    /// Requested rendering.
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "eabp", about = "Evolution algebra of a bisexual population", version)]
struct Cli {
    /// Input JSON file (tensor, matrix pair, and/or elements).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Tolerance override for the command's main check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Seed for sampling-based commands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check tensor shape and stochasticity.
    Validate,
    /// Product of the two elements `z` and `t` from the input file.
    Mul,
    /// One evolution step applied to `z`.
    Evolve,
    /// Plenary power `z^[t]`.
    Power {
        #[arg(long)]
        t: u32,
    },
    /// Iterate the evolution operator and report the trajectory.
    Trajectory {
        #[arg(long)]
        steps: usize,
    },
    /// Mass-class estimate for the limit set of `z`.
    Classify,
    /// Check the sex-mass recurrence along a trajectory.
    Recurrence {
        #[arg(long)]
        steps: usize,
    },
    /// Basis of the derivation space.
    Derivations {
        #[arg(long)]
        rank_tol: Option<f64>,
    },
    /// Run the full property suite.
    Properties {
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Solve the character constraint system and emit the certificate.
    Characters,
    /// Sampled check of the sex-differentiation homomorphism.
    DibaricCheck {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Special-case enumeration for a stochastic matrix pair.
    Special {
        #[command(subcommand)]
        sub: SpecialCmd,
    },
    /// Cross-check the analytic enumeration against the brute-force oracle.
    Verify {
        /// Run the grid+Newton oracle (required; reserved for future modes).
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 9)]
        grid: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SpecialCmd {
    /// Exact idempotent set.
    Idempotents {
        #[arg(long)]
        det_tol: Option<f64>,
    },
    /// Exact absolute nilpotent set.
    Nilpotents {
        #[arg(long)]
        det_tol: Option<f64>,
    },
    /// Case label of the element `z` from the input file.
    Classify,
}

/// Runs the CLI on the given arguments (without the program name).
pub fn run<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("eabp".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            // Help and version are a success path; everything else is a
            // usage error (exit 2) with a machine-readable payload.
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult {
                    exit_code: 0,
                    payload: json!({ "help": e.to_string() }),
                    format: OutputFormat::Text,
                };
            }
            return CommandResult {
                exit_code: 2,
                payload: json!({
                    "error": { "code": "usage", "message": e.to_string() }
                }),
                format: OutputFormat::Json,
            };
        }
    };
    let format = cli.format;
    match dispatch(&cli) {
        Ok((exit_code, payload)) => CommandResult {
            exit_code,
            payload,
            format,
        },
        Err(err) => CommandResult {
            exit_code: err.exit_code,
            payload: err.payload,
            format,
        },
    }
}

/// Renders the payload: compact JSON with sorted keys and 17-significant-
/// digit reals, or an indented key/value listing for humans.
pub fn render(result: &CommandResult) -> String {
    match result.format {
        OutputFormat::Json => {
            let mut out = Vec::new();
            let mut ser =
                serde_json::Serializer::with_formatter(&mut out, SciFormatter);
            serde::Serialize::serialize(&result.payload, &mut ser)
                .expect("JSON value serializes");
            String::from_utf8(out).expect("formatter emits UTF-8")
        }
        OutputFormat::Text => {
            let mut out = String::new();
            render_text(&result.payload, "", &mut out);
            out
        }
    }
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(val, &key, out);
            }
        }
        Value::Array(items) => {
            if items.len() > 16 {
                out.push_str(&format!("{prefix} = [{} items]\n", items.len()));
            } else if items.iter().all(|i| i.is_number()) {
                let nums: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("{prefix} = [{}]\n", nums.join(", ")));
            } else {
                for (idx, item) in items.iter().enumerate() {
                    render_text(item, &format!("{prefix}[{idx}]"), out);
                }
            }
        }
        Value::String(s) if prefix == "help" => {
            out.push_str(s);
            out.push('\n');
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

/// serde_json formatter printing every real with 17 significant digits so
/// golden files are stable across runs. Non-finite values (which the
/// library never emits) degrade to `null` to keep the document well-formed.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

struct CmdError {
    exit_code: i32,
    payload: Value,
}

fn input_error(code: &str, message: impl Into<String>) -> CmdError {
    CmdError {
        exit_code: 2,
        payload: json!({
            "error": { "code": code, "message": message.into() }
        }),
    }
}

type CmdResult = std::result::Result<(i32, Value), CmdError>;

#[derive(Deserialize)]
struct TensorDoc {
    n: usize,
    nu: usize,
    pf: Vec<Vec<Vec<f64>>>,
    pm: Vec<Vec<Vec<f64>>>,
    z: Option<AlgebraElement>,
    t: Option<AlgebraElement>,
}

#[derive(Deserialize)]
struct PairDoc {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<f64>>,
    z: Option<AlgebraElement>,
}

#[derive(Deserialize)]
struct ElementDoc {
    z: Option<AlgebraElement>,
    x: Option<Vec<f64>>,
    y: Option<Vec<f64>>,
}

fn load_input(cli: &Cli) -> std::result::Result<String, CmdError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| input_error("missing_input", "this command requires --input FILE"))?;
    std::fs::read_to_string(path)
        .map_err(|e| input_error("io", format!("cannot read {}: {e}", path.display())))
}

fn parse_doc<T: serde::de::DeserializeOwned>(raw: &str) -> std::result::Result<T, CmdError> {
    serde_json::from_str(raw).map_err(|e| {
        input_error(
            "malformed_json",
            format!("line {}, column {}: {e}", e.line(), e.column()),
        )
    })
}

/// Loads and shape-checks the tensor; stochasticity is checked separately
/// so `validate` can report residuals instead of failing.
fn load_tensor(cli: &Cli) -> std::result::Result<(InheritanceTensor, TensorDoc), CmdError> {
    let raw = load_input(cli)?;
    let doc: TensorDoc = parse_doc(&raw)?;
    let tensor = InheritanceTensor::new(doc.pf.clone(), doc.pm.clone())
        .map_err(|e| input_error("shape_mismatch", e.to_string()))?;
    if tensor.n() != doc.n || tensor.nu() != doc.nu {
        return Err(input_error(
            "shape_mismatch",
            format!(
                "declared (n, nu) = ({}, {}) but arrays give ({}, {})",
                doc.n,
                doc.nu,
                tensor.n(),
                tensor.nu()
            ),
        ));
    }
    Ok((tensor, doc))
}

fn require_stochastic(
    tensor: &InheritanceTensor,
    tol_stoch: f64,
) -> std::result::Result<(), CmdError> {
    let report = tensor.validate(tol_stoch);
    if report.ok {
        Ok(())
    } else {
        Err(CmdError {
            exit_code: 2,
            payload: json!({
                "error": { "code": "stochasticity_violation",
                           "message": "tensor rows do not sum to one" },
                "violations": serde_json::to_value(&report.violations).unwrap(),
            }),
        })
    }
}

fn element_field(
    elem: &Option<AlgebraElement>,
    name: &str,
) -> std::result::Result<AlgebraElement, CmdError> {
    elem.clone().ok_or_else(|| {
        input_error(
            "missing_element",
            format!("input file must carry an \"{name}\" element {{\"x\": [...], \"y\": [...]}}"),
        )
    })
}

fn load_pair(cli: &Cli) -> std::result::Result<(StochasticMatrixPair, PairDoc), CmdError> {
    let raw = load_input(cli)?;
    let doc: PairDoc = parse_doc(&raw)?;
    let pair = StochasticMatrixPair::new(doc.a.clone(), doc.b.clone())
        .map_err(|e| input_error("shape_mismatch", e.to_string()))?;
    let report = pair.validate(algebra::TOL_STOCH);
    if !report.ok {
        return Err(CmdError {
            exit_code: 2,
            payload: json!({
                "error": { "code": "stochasticity_violation",
                           "message": "matrix rows do not sum to one" },
                "violations": serde_json::to_value(&report.violations).unwrap(),
            }),
        });
    }
    Ok((pair, doc))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::Validate => {
            let (tensor, _) = load_tensor(cli)?;
            let tol = cli.tol.unwrap_or(algebra::TOL_STOCH);
            let report = tensor.validate(tol);
            if report.ok {
                Ok((0, json!({ "ok": true, "n": tensor.n(), "nu": tensor.nu() })))
            } else {
                Err(CmdError {
                    exit_code: 2,
                    payload: json!({
                        "ok": false,
                        "error": { "code": "stochasticity_violation",
                                   "message": "tensor rows do not sum to one" },
                        "violations": to_json(&report.violations),
                    }),
                })
            }
        }
        Cmd::Mul => {
            let (tensor, doc) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let z = element_field(&doc.z, "z")?;
            let t = element_field(&doc.t, "t")?;
            let product = tensor
                .multiply(&z, &t)
                .map_err(|e| input_error("dimension_mismatch", e.to_string()))?;
            Ok((0, json!({ "result": to_json(&product) })))
        }
        Cmd::Evolve => {
            let (tensor, doc) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let z = element_field(&doc.z, "z")?;
            let image = tensor
                .evolve(&z)
                .map_err(|e| input_error("dimension_mismatch", e.to_string()))?;
            Ok((0, json!({ "result": to_json(&image) })))
        }
        Cmd::Power { t } => {
            let (tensor, doc) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let z = element_field(&doc.z, "z")?;
            let power = tensor
                .plenary_power(&z, *t)
                .map_err(|e| input_error("dimension_mismatch", e.to_string()))?;
            Ok((0, json!({ "result": to_json(&power), "t": t })))
        }
        Cmd::Trajectory { steps } => {
            let (tensor, doc) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let z = element_field(&doc.z, "z")?;
            let tol = cli.tol.unwrap_or(1e-12);
            let report = dynamics::trajectory(&tensor, &z, *steps, tol)
                .map_err(|e| input_error("dimension_mismatch", e.to_string()))?;
            // Full state list up to 64 steps, else an explicit subsample.
            let (states, indices): (Vec<&AlgebraElement>, Vec<usize>) =
                if report.states.len() <= 65 {
                    (
                        report.states.iter().collect(),
                        (0..report.states.len()).collect(),
                    )
                } else {
                    let stride = report.states.len().div_ceil(64);
                    let mut idx: Vec<usize> = (0..report.states.len()).step_by(stride).collect();
                    if *idx.last().unwrap() != report.states.len() - 1 {
                        idx.push(report.states.len() - 1);
                    }
                    (idx.iter().map(|&i| &report.states[i]).collect(), idx)
                };
            Ok((
                0,
                json!({
                    "classification": to_json(&report.classification),
                    "states": states.iter().map(to_json).collect::<Vec<_>>(),
                    "indices": indices,
                    "xy_values": report.xy_values,
                    "converged_to": report.converged_to.as_ref().map(to_json),
                    "diverged": report.diverged,
                }),
            ))
        }
        Cmd::Classify => {
            let raw = load_input(cli)?;
            let doc: ElementDoc = parse_doc(&raw)?;
            let z = match (doc.z, doc.x, doc.y) {
                (Some(z), _, _) => z,
                (None, Some(x), Some(y)) => AlgebraElement::new(x, y),
                _ => {
                    return Err(input_error(
                        "missing_element",
                        "provide \"z\" or top-level \"x\"/\"y\" arrays",
                    ))
                }
            };
            let tol = cli.tol.unwrap_or(dynamics::TOL_CLS);
            let (x_mass, y_mass) = dynamics::linear_forms(&z);
            Ok((
                0,
                json!({
                    "classification": to_json(&dynamics::classify_limit(&z, tol)),
                    "x_mass": x_mass,
                    "y_mass": y_mass,
                    "product": x_mass * y_mass,
                    "fixed_point_possible": dynamics::check_fixed_point_necessary(&z, tol),
                    "zero_point_possible": dynamics::check_zero_point_necessary(&z, tol),
                }),
            ))
        }
        Cmd::Recurrence { steps } => {
            let (tensor, doc) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let z = element_field(&doc.z, "z")?;
            let tol = cli.tol.unwrap_or(1e-9);
            let report = dynamics::verify_xy_recurrence(&tensor, &z, *steps, tol)
                .map_err(|e| input_error("dimension_mismatch", e.to_string()))?;
            let ok = report.ok;
            Ok((if ok { 0 } else { 1 }, json!({ "ok": ok, "report": to_json(&report) })))
        }
        Cmd::Derivations { rank_tol } => {
            let (tensor, _) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let rank_tol = rank_tol.unwrap_or(1e-10);
            let system = derivations::build_derivation_system(&tensor);
            let basis = derivations::derivation_basis(&tensor, rank_tol);
            let residuals: Vec<f64> = basis
                .iter()
                .map(|d| derivations::leibniz_residual(&tensor, d).expect("conformant basis"))
                .collect();
            Ok((
                0,
                json!({
                    "dimension": basis.len(),
                    "basis": basis.iter().map(to_json).collect::<Vec<_>>(),
                    "leibniz_residuals": residuals,
                    "system_rows": system.rows,
                    "system_cols": system.cols,
                }),
            ))
        }
        Cmd::Properties { trials } => {
            let (tensor, _) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let tol = cli.tol.unwrap_or(1e-9);
            let seed = cli.seed;
            let reports = [properties::find_associativity_violation(&tensor, *trials, seed, tol)
                    .map_err(internal)?,
                properties::find_power_assoc_violation(&tensor, *trials, seed ^ 0x1, tol)
                    .map_err(internal)?,
                character_report(&tensor, tol)?,
                properties::check_dibaric_sampled(&tensor, *trials, seed ^ 0x2, 1e-12)
                    .map_err(internal)?,
                properties::check_norm_bound_sampled(&tensor, *trials, seed ^ 0x3, 1e-12)
                    .map_err(internal)?];
            Ok((0, json!({ "reports": reports.iter().map(to_json).collect::<Vec<_>>() })))
        }
        Cmd::Characters => {
            let (tensor, _) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let tol = cli.tol.unwrap_or(1e-9);
            let search = properties::find_characters(&tensor, tol).map_err(internal)?;
            Ok((
                0,
                json!({
                    "characters": to_json(&search.characters),
                    "certificate": to_json(&search.certificate),
                }),
            ))
        }
        Cmd::DibaricCheck { trials } => {
            let (tensor, _) = load_tensor(cli)?;
            require_stochastic(&tensor, algebra::TOL_STOCH)?;
            let tol = cli.tol.unwrap_or(1e-12);
            let report =
                properties::check_dibaric_sampled(&tensor, *trials, cli.seed, tol).map_err(internal)?;
            let ok = matches!(report.verdict, properties::Verdict::Holds);
            Ok((
                if ok { 0 } else { 1 },
                json!({ "ok": ok, "pairs": trials, "max_residual": report.residual }),
            ))
        }
        Cmd::Special { sub } => {
            let (pair, doc) = load_pair(cli)?;
            match sub {
                SpecialCmd::Idempotents { det_tol } => {
                    let params = enumeration_params(cli, *det_tol);
                    let set = special::idempotents(&pair, &params)
                        .map_err(|e| input_error("enumeration_failed", e.to_string()))?;
                    Ok((0, json!({ "idempotents": to_json(&set) })))
                }
                SpecialCmd::Nilpotents { det_tol } => {
                    let params = enumeration_params(cli, *det_tol);
                    let set = special::absolute_nilpotents(&pair, &params)
                        .map_err(|e| input_error("enumeration_failed", e.to_string()))?;
                    Ok((0, json!({ "nilpotents": to_json(&set) })))
                }
                SpecialCmd::Classify => {
                    let z = element_field(&doc.z, "z")?;
                    let tol = cli.tol.unwrap_or(1e-9);
                    let label = special::classify_membership(&pair, &z, tol);
                    Ok((0, json!({ "label": label })))
                }
            }
        }
        Cmd::Verify { oracle, grid } => {
            if !oracle {
                return Err(input_error("usage", "verify requires --oracle"));
            }
            let (pair, _) = load_pair(cli)?;
            verify_against_oracle(&pair, *grid, cli.tol.unwrap_or(1e-6))
        }
    }
}

fn internal(e: crate::error::Error) -> CmdError {
    input_error("internal", e.to_string())
}

fn enumeration_params(cli: &Cli, det_tol: Option<f64>) -> EnumerationParams {
    let mut params = EnumerationParams::default();
    if let Some(t) = cli.tol {
        params.membership_tol = t;
    }
    if let Some(d) = det_tol {
        params.det_tol = d;
    }
    params
}

fn character_report(
    tensor: &InheritanceTensor,
    tol: f64,
) -> std::result::Result<properties::PropertyReport, CmdError> {
    let search = properties::find_characters(tensor, tol).map_err(internal)?;
    Ok(properties::PropertyReport {
        property_name: properties::PropertyName::Character,
        verdict: if search.characters.is_empty() {
            properties::Verdict::NoneFound
        } else {
            properties::Verdict::Holds
        },
        witness: None,
        residual: search.certificate.max_residual,
    })
}

/// Runs the grid+Newton oracle for both equations against the analytic
/// enumeration. A root the analytic set cannot explain is a verification
/// failure (exit 1), not an input error.
fn verify_against_oracle(pair: &StochasticMatrixPair, grid: usize, match_tol: f64) -> CmdResult {
    let tensor = special::expand_tensor(pair);
    let params = EnumerationParams::default();
    // Quadratic flat spot at the origin: matching roots at 1e-6 requires
    // residuals around 1e-14 (a residual r only pins a root to sqrt(r)).
    let cfg = SearchConfig {
        grid_points_per_axis: grid,
        newton_tol: 1e-14,
        ..SearchConfig::default()
    };
    let mut all_ok = true;
    let mut sections = serde_json::Map::new();
    for (name, equation, set) in [
        (
            "idempotents",
            TargetEquation::Idempotent,
            special::idempotents(pair, &params)
                .map_err(|e| input_error("enumeration_failed", e.to_string()))?,
        ),
        (
            "nilpotents",
            TargetEquation::Nilpotent,
            special::absolute_nilpotents(pair, &params)
                .map_err(|e| input_error("enumeration_failed", e.to_string()))?,
        ),
    ] {
        let roots = oracle::brute_force_solutions(&tensor, equation, &cfg)
            .map_err(|e| input_error("oracle_failed", e.to_string()))?;
        let mut max_distance: f64 = 0.0;
        let mut unmatched = Vec::new();
        for root in &roots {
            let distance = set.distance_to(root);
            let label = special::classify_membership(pair, root, match_tol);
            max_distance = max_distance.max(distance);
            if distance > match_tol || label == "none" {
                unmatched.push(json!({
                    "root": to_json(root),
                    "distance": distance,
                    "label": label,
                }));
            }
        }
        // Soundness direction: emitted members satisfy their equation.
        let mut max_member_residual: f64 = 0.0;
        for member in set.sample_members(10, 0xc0de) {
            let image = special::evolve_special(pair, &member)
                .map_err(|e| input_error("dimension_mismatch", e.to_string()))?;
            let residual = match equation {
                TargetEquation::Idempotent => image.sub(&member).norm_l1(),
                TargetEquation::Nilpotent => image.norm_l1(),
            };
            max_member_residual = max_member_residual.max(residual);
        }
        let ok = unmatched.is_empty() && max_member_residual <= 1e-9;
        all_ok &= ok;
        sections.insert(
            name.to_string(),
            json!({
                "ok": ok,
                "oracle_roots": roots.len(),
                "analytic_components": set.component_count(),
                "max_distance": max_distance,
                "max_member_residual": max_member_residual,
                "unmatched": unmatched,
            }),
        );
    }
    sections.insert("ok".to_string(), Value::Bool(all_ok));
    Ok((
        if all_ok { 0 } else { 1 },
        Value::Object(sections),
    ))
}
