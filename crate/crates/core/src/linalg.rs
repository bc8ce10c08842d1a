//! Dense complex linear-algebra helpers shared by the pipeline stages.

use nalgebra::ComplexField;
use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen, SVD};

use crate::error::{PickError, Result};
use crate::scalar::Real;

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

const MAX_ITER: usize = 10_000;

/// Convergence threshold for the bidiagonal SVD iteration. At exactly machine epsilon
/// nalgebra can stop on a wrong split of a rank-deficient complex matrix; five ulps is
/// its own default.
fn svd_eps<T: Real>() -> T {
    T::default_epsilon() * T::lit(5.0)
}

pub(crate) fn all_finite<T: Real>(m: &CMatrix<T>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

pub fn frobenius<T: Real>(m: &CMatrix<T>) -> T {
    m.iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> Result<(Vec<T>, CMatrix<T>)> {
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    if !all_finite(m) {
        return Err(PickError::NonFinite("Hermitian matrix"));
    }
    let eig = SymmetricEigen::try_new(m.clone(), T::default_epsilon(), MAX_ITER)
        .ok_or(PickError::EigenFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    Ok((values, vectors))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Real>(m: &CMatrix<T>) -> Result<T> {
    let (values, _) = hermitian_eigen(m)?;
    Ok(values.last().copied().unwrap_or_else(T::zero))
}

/// Largest singular value; zero for empty matrices.
pub fn operator_norm<T: Real>(m: &CMatrix<T>) -> Result<T> {
    if m.is_empty() {
        return Ok(T::zero());
    }
    if !all_finite(m) {
        return Err(PickError::NonFinite("matrix"));
    }
    let svd = SVD::try_new(m.clone(), false, false, svd_eps(), MAX_ITER)
        .ok_or(PickError::EigenFailure)?;
    Ok(svd.singular_values.iter().fold(T::zero(), |a, &s| a.max(s)))
}

/// Thin SVD truncated to singular values with `sigma^2 > cutoff_sq`.
pub(crate) struct TruncatedSvd<T: Real> {
    /// `rows x p` orthonormal columns spanning the numerical range.
    pub u: CMatrix<T>,
    pub sigma: Vec<T>,
    /// `cols x p` right singular vectors.
    pub v: CMatrix<T>,
}

impl<T: Real> TruncatedSvd<T> {
    /// Moore-Penrose pseudo-inverse restricted to the retained singular triplets.
    pub fn pseudo_inverse(&self) -> CMatrix<T> {
        let mut vs = self.v.clone();
        for (j, &s) in self.sigma.iter().enumerate() {
            vs.column_mut(j).unscale_mut(s);
        }
        vs * self.u.adjoint()
    }
}

pub(crate) fn truncated_svd<T: Real>(m: &CMatrix<T>, cutoff_sq: T) -> Result<TruncatedSvd<T>> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Ok(TruncatedSvd {
            u: CMatrix::zeros(rows, 0),
            sigma: Vec::new(),
            v: CMatrix::zeros(cols, 0),
        });
    }
    if !all_finite(m) {
        return Err(PickError::NonFinite("matrix"));
    }
    let svd = SVD::try_new(m.clone(), true, true, svd_eps(), MAX_ITER)
        .ok_or(PickError::EigenFailure)?;
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^*");
    let mut keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| {
            let s = svd.singular_values[i];
            s * s > cutoff_sq && s > T::zero()
        })
        .collect();
    keep.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).expect("finite"));
    Ok(TruncatedSvd {
        u: CMatrix::from_fn(rows, keep.len(), |r, j| u[(r, keep[j])]),
        sigma: keep.iter().map(|&i| svd.singular_values[i]).collect(),
        v: CMatrix::from_fn(cols, keep.len(), |r, j| v_t[(keep[j], r)].conj()),
    })
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns `q` inside `C^dim`.
pub(crate) fn orthogonal_complement<T: Real>(q: &CMatrix<T>, dim: usize) -> Result<CMatrix<T>> {
    let p = q.ncols();
    if p >= dim {
        return Ok(CMatrix::zeros(dim, 0));
    }
    if p == 0 {
        return Ok(CMatrix::identity(dim, dim));
    }
    let projector = CMatrix::identity(dim, dim) - q * q.adjoint();
    let (_, vectors) = hermitian_eigen(&projector)?;
    // Projector eigenvalues sit at 0 and 1; the top dim - p eigenvectors span the complement.
    let mut basis = vectors.columns(0, dim - p).into_owned();
    reorthonormalize(&mut basis);
    Ok(basis)
}

/// Orthonormal factor `W` of the polar decomposition `M = W H` of a full column rank `M`.
pub(crate) fn polar_factor<T: Real>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Ok(CMatrix::zeros(m.nrows(), m.ncols()));
    }
    if !all_finite(m) {
        return Err(PickError::NonFinite("matrix"));
    }
    let svd = SVD::try_new(m.clone(), true, true, svd_eps(), MAX_ITER).ok_or(PickError::EigenFailure)?;
    Ok(svd.u.expect("requested U") * svd.v_t.expect("requested V^*"))
}

/// Modified Gram-Schmidt pass over already nearly orthonormal columns.
pub(crate) fn reorthonormalize<T: Real>(m: &mut CMatrix<T>) {
    for j in 0..m.ncols() {
        for i in 0..j {
            let proj = m.column(i).dotc(&m.column(j));
            let ci = m.column(i).into_owned();
            m.column_mut(j).axpy(-proj, &ci, Complex::new(T::one(), T::zero()));
        }
        let n = m.column(j).norm();
        if n > T::zero() {
            m.column_mut(j).unscale_mut(n);
        }
    }
}

/// Least-squares residual `min_a || M a - b ||` over the singular directions of `M`
/// above `cutoff_rel * sigma_max`.
///
/// Residuals are taken for every leading truncation of the kept directions and the
/// smallest is returned. In exact arithmetic they decrease with the rank, so this is
/// the full residual; in floating point it keeps a barely resolved direction, whose
/// left singular vector is only known to about `eps / sigma`, from polluting the answer.
pub fn lstsq_residual<T: Real>(m: &CMatrix<T>, b: &CVector<T>, cutoff_rel: T) -> Result<T> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Ok(b.norm());
    }
    let sigma_max = operator_norm(m)?;
    let cutoff = cutoff_rel * sigma_max;
    let svd = truncated_svd(m, cutoff * cutoff)?;
    let mut rest = b.clone();
    let mut best = rest.norm();
    for u in svd.u.column_iter() {
        let coeff = u.dotc(&rest);
        rest.axpy(-coeff, &u, Complex::new(T::one(), T::zero()));
        best = best.min(rest.norm());
    }
    Ok(best)
}

/// `max_ij |(A^* A - I)_ij|`.
pub(crate) fn orthonormality_defect<T: Real>(a: &CMatrix<T>) -> T {
    let g = a.adjoint() * a;
    let eye = CMatrix::<T>::identity(g.nrows(), g.ncols());
    max_abs(&(g - eye))
}
