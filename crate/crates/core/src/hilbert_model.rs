//! Gram realization of a positive semidefinite Pick matrix.

use nalgebra::Complex;

use crate::error::{PickError, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::pick_kernel::PickMatrix;
use crate::scalar::{Real, Tolerances};

/// Coordinate vectors `x_0, ..., x_{(d+1)N-1}` in `C^r` with
/// `inner(x_j, x_l) = p_jl`, where `inner(u, v) = v^* u`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramModel<T: Real> {
    /// Column `j` is `x_j`.
    vectors: CMatrix<T>,
    rank_tol_used: T,
    /// Largest Pick eigenvalue, the scale every relative rank cutoff refers to.
    eigen_scale: T,
    block_size: usize,
}

impl<T: Real> GramModel<T> {
    pub fn rank(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn vectors(&self) -> &CMatrix<T> {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> CVector<T> {
        self.vectors.column(j).into_owned()
    }

    pub fn rank_tol_used(&self) -> T {
        self.rank_tol_used
    }

    pub fn eigen_scale(&self) -> T {
        self.eigen_scale
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn node_count(&self) -> usize {
        self.vectors.ncols() / self.block_size
    }

    pub fn vector_count(&self) -> usize {
        self.vectors.ncols()
    }

    /// `inner(x_j, x_l)`, linear in the first slot.
    pub fn inner(&self, j: usize, l: usize) -> Complex<T> {
        self.vectors.column(l).dotc(&self.vectors.column(j))
    }

    /// Gram matrix `G_jl = inner(x_j, x_l)`.
    pub fn gram(&self) -> CMatrix<T> {
        (self.vectors.adjoint() * &self.vectors).transpose()
    }

    /// `max_jl |inner(x_j, x_l) - p_jl|`.
    pub fn reconstruction_error(&self, pick: &PickMatrix<T>) -> T {
        linalg::max_abs(&(self.gram() - pick.entries()))
    }
}

/// Factors `P` as a Gram matrix after checking feasibility with the default PSD slack.
pub fn factor_gram<T: Real>(pick: &PickMatrix<T>, rank_tol: T) -> Result<GramModel<T>> {
    let tol = Tolerances::<T>::default();
    factor_gram_with(pick, rank_tol, pick.default_psd_tol(&tol))
}

/// Eigendecomposes `P = V diag(lambda) V^*`, keeps `lambda > rank_tol * lambda_max`, and
/// sets `x_j` to row `j` of `V_r diag(sqrt(lambda_r))` read as a column vector.
pub fn factor_gram_with<T: Real>(pick: &PickMatrix<T>, rank_tol: T, psd_tol: T) -> Result<GramModel<T>> {
    let (values, vectors) = linalg::hermitian_eigen(pick.entries())?;
    let min = values.last().copied().unwrap_or_else(T::zero);
    if min < -psd_tol {
        return Err(PickError::Infeasible { min_eigenvalue: min.as_f64(), tolerance: psd_tol.as_f64() });
    }
    let eigen_scale = values.first().copied().unwrap_or_else(T::zero).max(T::zero());
    let cutoff = rank_tol * eigen_scale;
    let kept: Vec<usize> = (0..values.len())
        .filter(|&i| values[i] > cutoff && values[i] > T::zero())
        .collect();
    let n = pick.dim();
    let coords = CMatrix::from_fn(kept.len(), n, |row, j| {
        let i = kept[row];
        vectors[(j, i)] * values[i].sqrt()
    });
    Ok(GramModel { vectors: coords, rank_tol_used: rank_tol, eigen_scale, block_size: pick.block_size() })
}
