//! The isometric operator of a normalized problem and its defect spaces.
//!
//! With `z_0 = 0`, the operator is defined on `D(A) = span{x_{kN+m} : k >= 1}` by
//!
//! ```text
//! A x_{kN+m} = (x_{kN+m} - x_m) / z_k
//! ```
//!
//! Determinacy holds exactly when the defect spaces `H - D(A)` and `H - R(A)` are
//! trivial. That is decided twice: from the constructed bases, and independently
//! from consistency of two linear systems written directly in Pick entries.

use nalgebra::Complex;

use crate::error::{PickError, Result};
use crate::hilbert_model::GramModel;
use crate::linalg::{self, CMatrix, CVector};
use crate::pick_kernel::PickMatrix;
use crate::scalar::{Real, Tolerances};

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryModel<T: Real> {
    /// `A` on `D(A)`, zero on `H - D(A)`.
    a_full: CMatrix<T>,
    q_dom: CMatrix<T>,
    q_defect_dom: CMatrix<T>,
    q_ran: CMatrix<T>,
    q_defect_ran: CMatrix<T>,
    isometry_residual: T,
    fit_residual: T,
}

impl<T: Real> IsometryModel<T> {
    pub fn ambient_dim(&self) -> usize {
        self.a_full.nrows()
    }

    pub fn a_full(&self) -> &CMatrix<T> {
        &self.a_full
    }

    pub fn q_dom(&self) -> &CMatrix<T> {
        &self.q_dom
    }

    pub fn q_defect_dom(&self) -> &CMatrix<T> {
        &self.q_defect_dom
    }

    pub fn q_ran(&self) -> &CMatrix<T> {
        &self.q_ran
    }

    pub fn q_defect_ran(&self) -> &CMatrix<T> {
        &self.q_defect_ran
    }

    /// `(dim(H - D(A)), dim(H - R(A)))`.
    pub fn defect_dims(&self) -> (usize, usize) {
        (self.q_defect_dom.ncols(), self.q_defect_ran.ncols())
    }

    pub fn defect_dim(&self) -> usize {
        self.q_defect_dom.ncols()
    }

    pub fn domain_dim(&self) -> usize {
        self.q_dom.ncols()
    }

    /// `max |((A Q)^*(A Q) - I)_ij|` for the domain basis `Q`.
    pub fn isometry_residual(&self) -> T {
        self.isometry_residual
    }

    /// `max |A x_j - (x_j - x_m) / z_k|` over the domain vectors, relative to `1 + sqrt(lambda_max)`.
    pub fn fit_residual(&self) -> T {
        self.fit_residual
    }
}

pub fn build_isometry<T: Real>(model: &GramModel<T>, nodes: &[Complex<T>]) -> Result<IsometryModel<T>> {
    build_isometry_with(model, nodes, &Tolerances::default())
}

/// Builds `A` from the Gram model of a normalized problem.
///
/// The domain basis is a truncated SVD of the domain vectors. `A` is the orthonormal
/// polar factor of the least-squares fit of the images, so it is isometric on `D(A)`
/// to rounding even when the domain family is badly conditioned.
pub fn build_isometry_with<T: Real>(
    model: &GramModel<T>,
    nodes: &[Complex<T>],
    tol: &Tolerances<T>,
) -> Result<IsometryModel<T>> {
    let n = model.block_size();
    if nodes.len() != model.node_count() {
        return Err(PickError::DimensionMismatch {
            what: "node list for Gram model",
            expected: model.node_count().to_string(),
            found: nodes.len().to_string(),
        });
    }
    if nodes[0] != Complex::new(T::zero(), T::zero()) {
        return Err(PickError::NotNormalized);
    }
    let r = model.rank();
    let x = model.vectors();
    let domain_count = x.ncols() - n;

    let domain = x.columns(n, domain_count).into_owned();
    let mut images = CMatrix::zeros(r, domain_count);
    for (k, &zk) in nodes.iter().enumerate().skip(1) {
        for m in 0..n {
            let col = (x.column(k * n + m) - x.column(m)).map(|e| e / zk);
            images.set_column((k - 1) * n + m, &col);
        }
    }

    // Singular values of the domain family are compared with `rank * sqrt(lambda_max)`,
    // the coordinate-level counterpart of the eigenvalue cutoff.
    let cutoff_sq = model.rank_tol_used() * model.rank_tol_used() * model.eigen_scale();
    let dom = linalg::truncated_svd(&domain, cutoff_sq)?;
    let q_dom = dom.u.clone();
    let q_defect_dom = linalg::orthogonal_complement(&q_dom, r)?;

    // Least-squares images of the domain basis, then their nearest orthonormal frame.
    let fitted = &images * dom.pseudo_inverse() * &q_dom;
    let q_ran = linalg::polar_factor(&fitted)?;
    let a_full = &q_ran * q_dom.adjoint();

    let isometry_residual = linalg::orthonormality_defect(&(&a_full * &q_dom));
    if isometry_residual > tol.iso {
        return Err(PickError::IsometryResidual {
            residual: isometry_residual.as_f64(),
            tolerance: tol.iso.as_f64(),
        });
    }
    let scale = T::one() + model.eigen_scale().sqrt();
    let fit_residual = linalg::max_abs(&(&a_full * &domain - &images)) / scale;
    let q_defect_ran = linalg::orthogonal_complement(&q_ran, r)?;

    Ok(IsometryModel { a_full, q_dom, q_defect_dom, q_ran, q_defect_ran, isometry_residual, fit_residual })
}

/// Determinacy from the defect numbers: determinate iff the defect spaces are trivial.
pub fn determinacy_by_defect<T: Real>(iso: &IsometryModel<T>) -> bool {
    let (dom, ran) = iso.defect_dims();
    dom == 0 || ran == 0
}

/// Consistency of the two determinacy systems written in Pick entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearDeterminacy {
    /// Every `x_k`, `k < N`, lies in the span of the domain vectors `x_j`, `j >= N`.
    pub condition_a: bool,
    /// Every `x_j`, `j < N`, lies in the span of `x_{kN+m} - x_m`, `k >= 1`.
    pub condition_b: bool,
}

impl LinearDeterminacy {
    pub fn determinate(&self) -> bool {
        self.condition_a || self.condition_b
    }
}

pub fn determinacy_by_linear_systems<T: Real>(pick: &PickMatrix<T>) -> Result<bool> {
    Ok(linear_determinacy(pick, &Tolerances::default())?.determinate())
}

/// Decides both systems by least squares. For each left-hand index `k < N`:
///
/// ```text
/// (A)  sum_{j >= N} a_{k,j} p_{j,l} = p_{k,l}                          for all l
/// (B)  sum_{k' >= 1, m} b_{k,k'N+m} (p_{k'N+m,l} - p_{m,l}) = p_{k,l}   for all l
/// ```
///
/// A system counts as consistent when its residual is at most `lsq * (1 + ||rhs||)`.
/// Empty sums are zero, so with a single node each system is consistent iff its
/// right-hand side vanishes.
pub fn linear_determinacy<T: Real>(pick: &PickMatrix<T>, tol: &Tolerances<T>) -> Result<LinearDeterminacy> {
    let n = pick.block_size();
    let dim = pick.dim();
    let unknowns = dim - n;
    let p = pick.entries();

    // Column j of each coefficient matrix holds the l-indexed equation coefficients of unknown j.
    let coeff_a = CMatrix::from_fn(dim, unknowns, |l, j| p[(j + n, l)]);
    let coeff_b = CMatrix::from_fn(dim, unknowns, |l, j| p[(j + n, l)] - p[(j % n, l)]);

    let consistent = |coeff: &CMatrix<T>| -> Result<bool> {
        for k in 0..n {
            let rhs = CVector::from_fn(dim, |l, _| p[(k, l)]);
            let residual = linalg::lstsq_residual(coeff, &rhs, tol.rank)?;
            if residual > tol.lsq * (T::one() + rhs.norm()) {
                return Ok(false);
            }
        }
        Ok(true)
    };

    Ok(LinearDeterminacy { condition_a: consistent(&coeff_a)?, condition_b: consistent(&coeff_b)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert_model::factor_gram;
    use crate::pick_kernel::{build_pick_matrix, InterpolationProblem};

    fn scalar_problem(pairs: &[(f64, f64)]) -> InterpolationProblem<f64> {
        InterpolationProblem::new(
            1,
            pairs.iter().map(|p| Complex::new(p.0, 0.0)).collect(),
            pairs.iter().map(|p| CMatrix::from_element(1, 1, Complex::new(p.1, 0.0))).collect(),
        )
        .unwrap()
    }

    fn iso_of(problem: &InterpolationProblem<f64>) -> IsometryModel<f64> {
        let g = factor_gram(&build_pick_matrix(problem), 1e-10).unwrap();
        build_isometry(&g, problem.nodes()).unwrap()
    }

    #[test]
    fn one_node_has_full_defect() {
        let iso = iso_of(&scalar_problem(&[(0.0, 1.0)]));
        assert_eq!(iso.ambient_dim(), 1);
        assert_eq!(iso.domain_dim(), 0);
        assert_eq!(iso.a_full()[(0, 0)], Complex::new(0.0, 0.0));
        assert_eq!(iso.defect_dims(), (1, 1));
        assert!(!determinacy_by_defect(&iso));
    }

    #[test]
    fn two_node_rank_one_is_determinate() {
        let iso = iso_of(&scalar_problem(&[(0.0, 1.0), (0.5, 3.0)]));
        assert_eq!(iso.ambient_dim(), 1);
        assert!((iso.a_full()[(0, 0)] - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(iso.defect_dims(), (0, 0));
        assert!(determinacy_by_defect(&iso));
    }

    #[test]
    fn zero_model() {
        let p = InterpolationProblem::new(1, vec![Complex::new(0.0, 0.0)], vec![CMatrix::from_element(1, 1, Complex::new(0.0, 1.0))]).unwrap();
        let iso = iso_of(&p);
        assert_eq!(iso.ambient_dim(), 0);
        assert_eq!(iso.defect_dims(), (0, 0));
        assert!(determinacy_by_defect(&iso));
    }

    #[test]
    fn requires_normalized_nodes() {
        let p = scalar_problem(&[(0.1, 1.0)]);
        let g = factor_gram(&build_pick_matrix(&p), 1e-10).unwrap();
        assert_eq!(build_isometry(&g, p.nodes()), Err(PickError::NotNormalized));
    }

    fn pick(rows: &[&[f64]]) -> PickMatrix<f64> {
        let n = rows.len();
        PickMatrix::from_entries(CMatrix::from_fn(n, n, |j, l| Complex::new(rows[j][l], 0.0)), 1).unwrap()
    }

    #[test]
    fn linear_systems_examples() {
        let two = linear_determinacy(&pick(&[&[1.0, 2.0], &[2.0, 4.0]]), &Tolerances::default()).unwrap();
        assert!(two.condition_a);
        assert!(two.determinate());

        let one = linear_determinacy(&pick(&[&[1.0]]), &Tolerances::default()).unwrap();
        assert_eq!(one, LinearDeterminacy { condition_a: false, condition_b: false });

        assert!(determinacy_by_linear_systems(&pick(&[&[0.0]])).unwrap());
    }
}
