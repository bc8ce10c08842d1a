//! The four subcommands. Each returns the JSON to print and the exit code, or an
//! error carrying its exit code.

use std::fs;
use std::path::Path;

use pickcara::json::{complex_to_pair, matrix_to_rows, pair_to_complex, ComplexPair, MatrixRows, MeasureFile, ParameterFile, ProblemFile};
use pickcara::{
    make_problem, prepare_with, random_measure, verify_solution, Complex64, MatrixFunction, Measure64, ParameterSpec,
    PickError, Prepared64, Problem64, Tolerances64,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::{CheckArgs, GenerateArgs, SolveArgs, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

/// Acceptance thresholds of `verify`.
const VERIFY_RESIDUAL: f64 = 1e-6;
const VERIFY_RE_EIGENVALUE: f64 = -1e-6;

/// Radius of the `--grid` spiral.
const GRID_RADIUS: f64 = 0.9;

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<PickError> for CliError {
    fn from(e: PickError) -> Self {
        let code = match e {
            PickError::Infeasible { .. } => EXIT_INFEASIBLE,
            // Internal consistency checks of the numerical pipeline.
            PickError::IsometryResidual { .. } | PickError::EigenFailure => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("malformed {what} {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn load_problem(path: &Path) -> CliResult<Problem64> {
    Ok(read_json::<ProblemFile>(path, "problem file")?.to_problem()?)
}

fn load_parameter(path: Option<&Path>) -> CliResult<ParameterSpec<f64>> {
    match path {
        None => Ok(ParameterSpec::Zero),
        Some(p) => Ok(read_json::<ParameterFile>(p, "parameter file")?.to_spec()?),
    }
}

#[derive(Serialize)]
struct ModelDump {
    rank: usize,
    /// Coordinates of `x_j` for the normalized problem, one entry per vector.
    vectors: Vec<Vec<ComplexPair>>,
}

#[derive(Serialize)]
struct CheckReport {
    feasible: bool,
    min_eigenvalue: f64,
    psd_tol: f64,
    pick_dim: usize,
    rank: Option<usize>,
    ambient_dim: Option<usize>,
    defect_dim: Option<usize>,
    determinate: Option<bool>,
    routes_agree: Option<bool>,
    condition_a: Option<bool>,
    condition_b: Option<bool>,
    pivot: ComplexPair,
    warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<ModelDump>,
}

pub fn check(args: &CheckArgs) -> CliResult<Outcome> {
    let problem = load_problem(&args.problem)?;
    let mut tol = Tolerances64::default();
    if let Some(rank) = args.rank_tol {
        tol.rank = rank;
    }
    let pivot = complex_to_pair(problem.nodes()[0]);
    let pick_dim = problem.node_count() * problem.matrix_size();
    match prepare_with(&problem, &tol, args.psd_tol) {
        Ok(prepared) => {
            let model = args.dump_model.then(|| ModelDump {
                rank: prepared.gram.rank(),
                vectors: (0..prepared.gram.vector_count())
                    .map(|j| prepared.gram.vector(j).iter().map(|&z| complex_to_pair(z)).collect())
                    .collect(),
            });
            let report = CheckReport {
                feasible: true,
                min_eigenvalue: prepared.psd.min_eigenvalue,
                psd_tol: prepared.psd.tolerance_used,
                pick_dim,
                rank: Some(prepared.gram.rank()),
                ambient_dim: Some(prepared.isometry.ambient_dim()),
                defect_dim: Some(prepared.defect_dim()),
                determinate: Some(prepared.determinate()),
                routes_agree: Some(prepared.routes_agree()),
                condition_a: Some(prepared.linear.condition_a),
                condition_b: Some(prepared.linear.condition_b),
                pivot,
                warnings: prepared.warnings.clone(),
                model,
            };
            Ok(Outcome { stdout: to_json(&report), code: EXIT_OK })
        }
        Err(PickError::Infeasible { min_eigenvalue, tolerance }) => {
            let report = CheckReport {
                feasible: false,
                min_eigenvalue,
                psd_tol: tolerance,
                pick_dim,
                rank: None,
                ambient_dim: None,
                defect_dim: None,
                determinate: None,
                routes_agree: None,
                condition_a: None,
                condition_b: None,
                pivot,
                warnings: vec!["no solution exists: the Pick matrix is not positive semidefinite".to_string()],
                model: None,
            };
            Ok(Outcome { stdout: to_json(&report), code: EXIT_INFEASIBLE })
        }
        Err(e) => Err(e.into()),
    }
}

fn prepare_default(problem: &Problem64) -> CliResult<Prepared64> {
    Ok(prepare_with(problem, &Tolerances64::default(), None)?)
}

#[derive(Serialize)]
struct SolutionRow {
    kind: &'static str,
    z: ComplexPair,
    value: MatrixRows,
}

#[derive(Serialize)]
struct SolveReport {
    pivot: ComplexPair,
    defect_dim: usize,
    determinate: bool,
    rows: Vec<SolutionRow>,
}

/// Deterministic golden-angle spiral with `count` points in `|z| <= radius`.
fn spiral(count: usize, radius: f64) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|j| Complex64::from_polar(radius * ((j as f64 + 0.5) / count as f64).sqrt(), golden * j as f64))
        .collect()
}

pub fn solve(args: &SolveArgs) -> CliResult<Outcome> {
    let problem = load_problem(&args.problem)?;
    let spec = load_parameter(args.param.as_deref())?;
    let prepared = prepare_default(&problem)?;
    let solution = prepared.solution(spec)?;

    let mut points: Vec<(&'static str, Complex64)> = problem.nodes().iter().map(|&z| ("node", z)).collect();
    if let Some(count) = args.grid {
        points.extend(spiral(count, GRID_RADIUS).into_iter().map(|z| ("grid", z)));
    }
    points.extend(args.at.iter().map(|&p| ("point", pair_to_complex(p))));

    // Evaluators are immutable, so the points are evaluated in parallel.
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = points.len().div_ceil(workers).max(1);
    let solution = &solution;
    let values: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|&(_, z)| solution.eval(z)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("evaluation thread")).collect()
    });
    let rows = points
        .iter()
        .zip(values)
        .map(|(&(kind, z), value)| Ok(SolutionRow { kind, z: complex_to_pair(z), value: matrix_to_rows(&value?) }))
        .collect::<CliResult<Vec<_>>>()?;

    let report = SolveReport {
        pivot: complex_to_pair(prepared.transform.pivot()),
        defect_dim: prepared.defect_dim(),
        determinate: prepared.determinate(),
        rows,
    };
    Ok(Outcome { stdout: to_json(&report), code: EXIT_OK })
}

#[derive(Serialize)]
struct ReferenceRow {
    z: ComplexPair,
    value: MatrixRows,
}

#[derive(Serialize)]
struct ReferenceTable {
    matrix_size: usize,
    atoms: usize,
    nodes: Vec<ReferenceRow>,
}

pub fn generate(args: &GenerateArgs) -> CliResult<Outcome> {
    let measure: Measure64 = match (&args.measure, &args.random) {
        (Some(path), _) => read_json::<MeasureFile>(path, "measure file")?.to_measure()?,
        (None, Some(r)) => {
            let (n, atoms, seed) = (r[0] as usize, r[1] as usize, r[2]);
            if n == 0 {
                return Err(CliError::input("matrix size must be positive"));
            }
            random_measure(n, atoms, seed)
        }
        (None, None) => return Err(CliError::input("either --measure or --random is required")),
    };
    let nodes: Vec<Complex64> = args.nodes.iter().map(|&p| pair_to_complex(p)).collect();
    let problem = make_problem(&measure, &nodes)?;

    let file = ProblemFile::from_problem(&problem);
    fs::write(&args.out, to_json(&file) + "\n")
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", args.out.display())))?;

    let table = ReferenceTable {
        matrix_size: problem.matrix_size(),
        atoms: measure.atoms().len(),
        nodes: file.nodes.iter().zip(&file.values).map(|(&z, v)| ReferenceRow { z, value: v.clone() }).collect(),
    };
    Ok(Outcome { stdout: to_json(&table), code: EXIT_OK })
}

#[derive(Serialize)]
struct VerifyReport {
    node_residuals: Vec<f64>,
    min_re_eigenvalue: f64,
    samples: usize,
    seed: u64,
    passed: bool,
}

pub fn verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let problem = load_problem(&args.problem)?;
    let spec = load_parameter(args.param.as_deref())?;
    let prepared = prepare_default(&problem)?;
    let solution = prepared.solution(spec)?;
    let report = verify_solution(&problem, &solution, args.samples, args.seed)?;
    let passed = report.max_residual() <= VERIFY_RESIDUAL && report.min_re_eigenvalue >= VERIFY_RE_EIGENVALUE;
    let out = VerifyReport {
        node_residuals: report.node_residuals,
        min_re_eigenvalue: report.min_re_eigenvalue,
        samples: report.samples,
        seed: report.seed,
        passed,
    };
    Ok(Outcome { stdout: to_json(&out), code: if passed { EXIT_OK } else { EXIT_VERIFY } })
}
