//! The `rml` subcommands.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rankmetric::genweights::{d_weights, delta_weights, w_weights, WDefinition, WeightProfile};
use rankmetric::macwilliams::macwilliams_transform;
use rankmetric::qpolymatroid::{from_code, pm_characterize, recover, weight_enumerator, QPolymatroid};
use rankmetric::{are_equivalent, v_equivalent, Budget, Field, FieldBasis, Mat, MatrixCode, Subspace, VectorCode};
use serde_json::{json, Value};

use crate::codefile::{Code, CodeFile};
use crate::grid::Grid;
use crate::report::{Format, Report};
use crate::verify::{self, Config, Mutant};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "rml", version, about = "Exact invariants of linear rank-metric codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Cap on the number of objects any exhaustive search may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightFlavor {
    /// d_i, via optimal anticodes (matrix codes).
    D,
    /// δ_i, via column spaces (matrix codes).
    Delta,
    /// w_i as the smallest support of an i-dimensional subcode (vector codes).
    Support,
    Oggier,
    Ducoat,
    Anticode,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, distances, weight distribution and bound-equality flags.
    Info { file: PathBuf },
    /// The dual code, as a canonical code file.
    Dual { file: PathBuf },
    /// The matrix code Γ(C) of a vector code.
    Expand {
        file: PathBuf,
        /// `power`, `orthogonal` (of the power basis) or a JSON list of
        /// coefficient arrays such as `[[1],[0,1],[0,0,1]]`.
        #[arg(long, default_value = "power")]
        basis: String,
    },
    /// Weight distribution, with the MacWilliams prediction for the dual.
    Weights { file: PathBuf },
    /// Generalized weights.
    Genweights {
        file: PathBuf,
        /// Defaults to `d` for matrix codes and `support` for vector codes.
        #[arg(long, value_enum)]
        kind: Option<WeightFlavor>,
    },
    /// The associated q-polymatroid(s) and what they recover.
    Polymatroid { file: PathBuf },
    /// Searches for an isometry between two codes.
    Equiv { file: PathBuf, other: PathBuf },
    /// Runs the theorem-verification suites over a grid of codes.
    Verify {
        #[arg(long, default_value_t = Grid::default())]
        grid: Grid,
        /// Comma-separated suite names; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum)]
        mutant: Option<Mutant>,
    },
}

pub fn load(path: &PathBuf) -> Result<Code, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    CodeFile::parse(&text)?.to_code()
}

fn file_json(code: &Code) -> Value {
    serde_json::to_value(CodeFile::from_code(code)).expect("code files serialize")
}

fn rows(s: &Subspace) -> Value {
    json!(s.rows().map(<[u32]>::to_vec).collect::<Vec<_>>())
}

fn mat_rows(m: &Mat) -> Value {
    json!((0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>())
}

fn dist(a: &[u128]) -> Value {
    json!(a.iter().map(|&x| x as u64).collect::<Vec<_>>())
}

fn matrix_info(c: &MatrixCode, b: Budget) -> Result<Value, CliError> {
    let cls = c.classify(b)?;
    Ok(json!({
        "kind": "matrix",
        "n": c.n(),
        "m": c.m(),
        "q": c.field().order(),
        "dim": c.dim(),
        "d_min": cls.d_min,
        "max_rank": cls.max_rank,
        "dual_d_min": cls.dual_d_min,
        "weight_distribution": dist(&c.weight_distribution(b)?),
        "mrd": cls.is_mrd,
        "optimal_anticode": cls.is_optimal_anticode,
        "dually_quasi_mrd": cls.is_dually_quasi_mrd,
    }))
}

fn vector_info(c: &VectorCode, b: Budget) -> Result<Value, CliError> {
    let cls = c.classify(b)?;
    Ok(json!({
        "kind": "vector",
        "n": c.n(),
        "m": c.m(),
        "q": c.field().characteristic(),
        "dim": c.dim(),
        "d_min": cls.d_min,
        "max_rank": cls.max_rank,
        "weight_distribution": dist(&c.weight_distribution(b)?),
        "mrd": cls.is_mrd,
        "optimal_vector_anticode": cls.is_optimal_vector_anticode,
        "frobenius_fixed": c.is_frobenius_fixed(),
        "support": rows(&c.support()),
    }))
}

fn parse_basis(field: &Field, spec: &str) -> Result<FieldBasis, CliError> {
    match spec {
        "power" => Ok(FieldBasis::power(field)),
        "orthogonal" => Ok(FieldBasis::power(field).orthogonal()),
        _ => {
            let coeffs: Vec<Vec<u32>> = serde_json::from_str(spec)
                .map_err(|e| CliError::Usage(format!("--basis must be power, orthogonal or a JSON list: {e}")))?;
            let els = coeffs
                .iter()
                .map(|c| field.from_coeffs(c))
                .collect::<rankmetric::Result<Vec<_>>>()?;
            Ok(FieldBasis::new(field, els)?)
        }
    }
}

fn profile_json(p: &WeightProfile) -> Value {
    json!({
        "values": p.values,
        "witnesses": p.witnesses.iter().map(rows).collect::<Vec<_>>(),
    })
}

fn table_json(p: &QPolymatroid) -> Value {
    json!(p
        .entries()
        .map(|(v, x)| json!({"space": rows(v), "rho": x.to_string()}))
        .collect::<Vec<_>>())
}

fn polymatroid(c: &MatrixCode, b: Budget) -> Result<Value, CliError> {
    let cp = from_code(c, b)?;
    let rec = recover(&cp)?;
    let ch = pm_characterize(&cp, b)?;
    let enumerator = if c.n() <= c.m() {
        json!(weight_enumerator(&cp.p, c.n(), c.m())?.to_string())
    } else {
        Value::Null
    };
    Ok(json!({
        "ground": cp.p.ground(),
        "rho": table_json(&cp.p),
        "rho_transpose": cp.transposed.as_ref().map(table_json),
        "recovered": {"dim": rec.dim, "d_min": rec.d_min, "d": rec.profile},
        "mrd": ch.mrd,
        "optimal_anticode": ch.anticode,
        "anticode_rank": ch.anticode_rank,
        "anticode_via_transpose": ch.anticode_via_transpose,
        "anticode_witness": ch.anticode_witness.as_ref().map(mat_rows),
        "weight_enumerator": enumerator,
    }))
}

/// Executes one command. The flag is false when `verify` found a failure.
pub fn execute(cli: &Cli) -> Result<(Value, bool), CliError> {
    let b = Budget(cli.budget);
    let value = match &cli.command {
        Command::Info { file } => match load(file)? {
            Code::Matrix(c) => matrix_info(&c, b)?,
            Code::Vector(c) => vector_info(&c, b)?,
        },
        Command::Dual { file } => {
            let dual = match load(file)? {
                Code::Matrix(c) => Code::Matrix(c.dual()),
                Code::Vector(c) => Code::Vector(c.dual()),
            };
            json!({"code": file_json(&dual)})
        }
        Command::Expand { file, basis } => {
            let Code::Vector(c) = load(file)? else {
                return Err(CliError::Usage("expand needs a vector code".into()));
            };
            let basis = parse_basis(c.field(), basis)?;
            let g = c.expand(&basis)?;
            let f = c.field();
            let mut images = Vec::new();
            for r in c.space().rows() {
                let mut v = r.to_vec();
                for _ in 0..c.m() {
                    images.push(mat_rows(&rankmetric::vector_codes::expand_vector(&v, &basis)?));
                    v.iter_mut().for_each(|x| *x = f.mul(f.alpha(), *x));
                }
            }
            json!({
                "basis": basis.elements().iter().map(|&x| f.coeffs(x)).collect::<Vec<_>>(),
                "images": images,
                "code": file_json(&Code::Matrix(g)),
            })
        }
        Command::Weights { file } => match load(file)? {
            Code::Matrix(c) => {
                let a = c.weight_distribution(b)?;
                let q = c.field().order() as u64;
                let predicted = macwilliams_transform(&a, c.n(), c.m(), q, c.cardinality())?;
                let enumerated = c.dual().weight_distribution(b)?;
                json!({
                    "weight_distribution": dist(&a),
                    "dual_weight_distribution": dist(&predicted),
                    "dual_matches_enumeration": predicted == enumerated,
                })
            }
            Code::Vector(c) => json!({"weight_distribution": dist(&c.weight_distribution(b)?)}),
        },
        Command::Genweights { file, kind } => {
            let code = load(file)?;
            let kind = kind.unwrap_or(match code {
                Code::Matrix(_) => WeightFlavor::D,
                Code::Vector(_) => WeightFlavor::Support,
            });
            let p = match (&code, kind) {
                (Code::Matrix(c), WeightFlavor::D) => d_weights(c, b)?,
                (Code::Matrix(c), WeightFlavor::Delta) => delta_weights(c, None, b)?,
                (Code::Vector(c), WeightFlavor::Support) => w_weights(c, WDefinition::Support, b)?,
                (Code::Vector(c), WeightFlavor::Oggier) => w_weights(c, WDefinition::Oggier, b)?,
                (Code::Vector(c), WeightFlavor::Ducoat) => w_weights(c, WDefinition::Ducoat, b)?,
                (Code::Vector(c), WeightFlavor::Anticode) => w_weights(c, WDefinition::Anticode, b)?,
                (Code::Matrix(_), k) => {
                    return Err(CliError::Usage(format!("--kind {k:?} needs a vector code; use d or delta")))
                }
                (Code::Vector(_), k) => {
                    return Err(CliError::Usage(format!(
                        "--kind {k:?} needs a matrix code; use support, oggier, ducoat or anticode"
                    )))
                }
            };
            json!({"kind": format!("{kind:?}").to_lowercase(), "weights": profile_json(&p)})
        }
        Command::Polymatroid { file } => match load(file)? {
            Code::Matrix(c) => polymatroid(&c, b)?,
            Code::Vector(_) => return Err(CliError::Usage("polymatroid needs a matrix code; expand it first".into())),
        },
        Command::Equiv { file, other } => match (load(file)?, load(other)?) {
            (Code::Matrix(c), Code::Matrix(d)) => {
                let iso = are_equivalent(&c, &d, b)?;
                json!({
                    "equivalent": iso.is_some(),
                    "witness": iso.map(|i| json!({"a": mat_rows(&i.a), "b": mat_rows(&i.b), "transposed": i.transposed})),
                })
            }
            (Code::Vector(c), Code::Vector(d)) => {
                let iso = v_equivalent(&c, &d, b)?;
                json!({
                    "equivalent": iso.is_some(),
                    "witness": iso.map(|i| json!({"alpha": c.field().coeffs(i.alpha), "b": mat_rows(&i.b)})),
                })
            }
            _ => return Err(CliError::Usage("equiv compares two codes of the same kind".into())),
        },
        Command::Verify { grid, only, mutant } => {
            let cfg = Config {
                grid: grid.clone(),
                budget: b,
                mutant: *mutant,
            };
            let results = verify::run(&cfg, only)?;
            let ok = results.iter().all(|r| r.passed);
            let value = json!({
                "grid": grid.to_string(),
                "mutant": mutant.map(|m| format!("{m:?}")),
                "passed": ok,
                "suites": results,
            });
            return Ok((value, ok));
        }
    };
    Ok((value, true))
}

/// Parses `args` (without the program name), runs the command and returns
/// the rendered report and the process exit status.
pub fn run(args: &[String]) -> (String, i32) {
    let argv = std::iter::once("rml".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.to_string(), code);
        }
    };
    let command: Vec<String> = std::iter::once("rml".to_string()).chain(args.iter().cloned()).collect();
    match execute(&cli) {
        Ok((value, ok)) => (Report::new(command, value).render(cli.format), if ok { 0 } else { 1 }),
        Err(e) => (format!("error: {e}\n"), 2),
    }
}
