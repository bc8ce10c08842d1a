//! End-to-end pipeline: normalize, gate on feasibility, factor, build the isometry,
//! then hand out solutions for any admissible parameter.

use crate::error::{PickError, Result};
use crate::hilbert_model::{factor_gram_with, GramModel};
use crate::isometry::{build_isometry_with, determinacy_by_defect, linear_determinacy, IsometryModel, LinearDeterminacy};
use crate::mobius::{normalize_problem, MobiusTransform, PulledBack};
use crate::pick_kernel::{build_pick_matrix, validate_psd, InterpolationProblem, PickMatrix, PsdReport};
use crate::resolvent::{make_contraction_parameter_with, ParameterSpec, SolutionEvaluator};
use crate::scalar::{Real, Tolerances};

/// Everything derived from a feasible problem that does not depend on the parameter.
#[derive(Clone, Debug)]
pub struct PreparedProblem<T: Real> {
    pub original: InterpolationProblem<T>,
    pub normalized: InterpolationProblem<T>,
    pub transform: MobiusTransform<T>,
    /// Feasibility of the original Pick matrix.
    pub psd: PsdReport<T>,
    /// Pick matrix of the normalized problem.
    pub pick: PickMatrix<T>,
    pub gram: GramModel<T>,
    pub isometry: IsometryModel<T>,
    pub linear: LinearDeterminacy,
    pub warnings: Vec<String>,
    pub tol: Tolerances<T>,
}

impl<T: Real> PreparedProblem<T> {
    pub fn defect_dim(&self) -> usize {
        self.isometry.defect_dim()
    }

    pub fn determinate(&self) -> bool {
        determinacy_by_defect(&self.isometry)
    }

    pub fn routes_agree(&self) -> bool {
        self.determinate() == self.linear.determinate()
    }

    /// Solution for the given parameter, evaluated in the original variable.
    pub fn solution(&self, spec: ParameterSpec<T>) -> Result<PulledBack<T>> {
        let param = make_contraction_parameter_with(spec, self.defect_dim(), &self.tol)?;
        let evaluator = SolutionEvaluator::with_tolerances(
            self.gram.clone(),
            self.isometry.clone(),
            param,
            &self.normalized.values()[0],
            self.tol,
        )?;
        Ok(PulledBack { evaluator, transform: self.transform })
    }
}

pub fn prepare<T: Real>(problem: &InterpolationProblem<T>) -> Result<PreparedProblem<T>> {
    prepare_with(problem, &Tolerances::default(), None)
}

/// `psd_tol` overrides the scale-relative default on both the original and the
/// normalized Pick matrix.
pub fn prepare_with<T: Real>(
    problem: &InterpolationProblem<T>,
    tol: &Tolerances<T>,
    psd_tol: Option<T>,
) -> Result<PreparedProblem<T>> {
    let original_pick = build_pick_matrix(problem);
    let psd = validate_psd(&original_pick, psd_tol.unwrap_or_else(|| original_pick.default_psd_tol(tol)))?;
    if !psd.feasible {
        return Err(PickError::Infeasible {
            min_eigenvalue: psd.min_eigenvalue.as_f64(),
            tolerance: psd.tolerance_used.as_f64(),
        });
    }
    let (normalized, transform) = normalize_problem(problem);
    let pick = build_pick_matrix(&normalized);
    let gram = factor_gram_with(&pick, tol.rank, psd_tol.unwrap_or_else(|| pick.default_psd_tol(tol)))?;
    let isometry = build_isometry_with(&gram, normalized.nodes(), tol)?;
    let linear = linear_determinacy(&pick, tol)?;
    let mut warnings = problem.warnings(tol);
    let max_err = gram.reconstruction_error(&pick);
    if max_err > tol.gram * (T::one() + pick.max_abs()) {
        warnings.push(format!("Gram reconstruction error {} exceeds tolerance", max_err.as_f64()));
    }
    if determinacy_by_defect(&isometry) != linear.determinate() {
        warnings.push("determinacy routes disagree".to_string());
    }
    Ok(PreparedProblem { original: problem.clone(), normalized, transform, psd, pick, gram, isometry, linear, warnings, tol: *tol })
}
