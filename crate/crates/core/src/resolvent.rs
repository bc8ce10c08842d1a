//! Solutions of the interpolation problem through generalized resolvents.
//!
//! For a contraction `Phi_z` from `H - D(A)` into `H - R(A)`, the operator
//! `U_z = A + Q_defect_ran Phi_z Q_defect_dom^*` is a contraction on `H` and
//!
//! ```text
//! T(z)_{m,l} = (i Im C_0)_{m,l} + inner(2 (I - z U_z)^{-1} x_m - x_m, x_l)
//! ```
//!
//! is a Caratheodory-class interpolant. Every solution arises this way, and
//! distinct parameters give distinct solutions.

use std::fmt;
use std::sync::Arc;

use nalgebra::ComplexField;
use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PickError, Result};
use crate::hilbert_model::GramModel;
use crate::isometry::IsometryModel;
use crate::linalg::{self, CMatrix};
use crate::pick_kernel::InterpolationProblem;
use crate::scalar::{c, Real, Tolerances};

/// Supplier of `Phi_z` for point-dependent parameters. Analyticity in `z` is the
/// supplier's responsibility; only the contraction bound is checked.
pub type ParameterProvider<T> = Arc<dyn Fn(Complex<T>) -> CMatrix<T> + Send + Sync>;

#[derive(Clone)]
pub enum ContractionParameter<T: Real> {
    Zero { dim: usize },
    Constant(CMatrix<T>),
    PerPoint { dim: usize, provider: ParameterProvider<T> },
}

impl<T: Real> fmt::Debug for ContractionParameter<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero { dim } => f.debug_struct("Zero").field("dim", dim).finish(),
            Self::Constant(m) => f.debug_tuple("Constant").field(m).finish(),
            Self::PerPoint { dim, .. } => f.debug_struct("PerPoint").field("dim", dim).finish_non_exhaustive(),
        }
    }
}

/// Raw parameter data before validation.
pub enum ParameterSpec<T: Real> {
    Zero,
    Constant(CMatrix<T>),
    PerPoint(ParameterProvider<T>),
}

impl<T: Real> ContractionParameter<T> {
    pub fn dim(&self) -> usize {
        match self {
            Self::Zero { dim } | Self::PerPoint { dim, .. } => *dim,
            Self::Constant(m) => m.nrows(),
        }
    }

    /// `Phi_z`, norm-checked for point-dependent parameters.
    pub fn at(&self, z: Complex<T>, tol: &Tolerances<T>) -> Result<CMatrix<T>> {
        match self {
            Self::Zero { dim } => Ok(CMatrix::zeros(*dim, *dim)),
            Self::Constant(m) => Ok(m.clone()),
            Self::PerPoint { dim, provider } => {
                let m = provider(z);
                check_shape(&m, *dim)?;
                check_contraction(&m, tol.contraction, Some(z))?;
                Ok(m)
            }
        }
    }
}

fn check_shape<T: Real>(m: &CMatrix<T>, q: usize) -> Result<()> {
    if m.nrows() != q || m.ncols() != q {
        return Err(PickError::ParameterDimension { expected: q, found: m.nrows().max(m.ncols()) });
    }
    Ok(())
}

fn check_contraction<T: Real>(m: &CMatrix<T>, slack: T, at: Option<Complex<T>>) -> Result<()> {
    let norm = linalg::operator_norm(m)?;
    if norm > T::one() + slack {
        return Err(PickError::NotAContraction {
            norm: norm.as_f64(),
            at: at.map(|z| (z.re.as_f64(), z.im.as_f64())),
        });
    }
    Ok(())
}

pub fn make_contraction_parameter<T: Real>(spec: ParameterSpec<T>, q: usize) -> Result<ContractionParameter<T>> {
    make_contraction_parameter_with(spec, q, &Tolerances::default())
}

pub fn make_contraction_parameter_with<T: Real>(
    spec: ParameterSpec<T>,
    q: usize,
    tol: &Tolerances<T>,
) -> Result<ContractionParameter<T>> {
    match spec {
        ParameterSpec::Zero => Ok(ContractionParameter::Zero { dim: q }),
        ParameterSpec::Constant(m) => {
            check_shape(&m, q)?;
            check_contraction(&m, tol.contraction, None)?;
            Ok(ContractionParameter::Constant(m))
        }
        ParameterSpec::PerPoint(provider) => Ok(ContractionParameter::PerPoint { dim: q, provider }),
    }
}

/// `U_z = A_full + Q_defect_ran Phi_z Q_defect_dom^*`.
pub fn extended_operator<T: Real>(
    iso: &IsometryModel<T>,
    param: &ContractionParameter<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    extended_operator_with(iso, param, z, &Tolerances::default())
}

pub fn extended_operator_with<T: Real>(
    iso: &IsometryModel<T>,
    param: &ContractionParameter<T>,
    z: Complex<T>,
    tol: &Tolerances<T>,
) -> Result<CMatrix<T>> {
    let q = iso.defect_dim();
    if param.dim() != q {
        return Err(PickError::ParameterDimension { expected: q, found: param.dim() });
    }
    if q == 0 {
        return Ok(iso.a_full().clone());
    }
    let phi = param.at(z, tol)?;
    Ok(iso.a_full() + iso.q_defect_ran() * phi * iso.q_defect_dom().adjoint())
}

/// Anything that can be evaluated as an `N x N` matrix function on the disk.
pub trait MatrixFunction<T: Real> {
    fn matrix_size(&self) -> usize;
    fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>>;
}

pub(crate) fn check_in_disk<T: Real>(z: Complex<T>) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.modulus() >= T::one() {
        return Err(PickError::PointOutsideDisk { re: z.re.as_f64(), im: z.im.as_f64() });
    }
    Ok(())
}

/// One member of the solution family of a normalized problem.
#[derive(Clone, Debug)]
pub struct SolutionEvaluator<T: Real> {
    gram: GramModel<T>,
    iso: IsometryModel<T>,
    parameter: ContractionParameter<T>,
    /// `i Im C_0 = (C_0 - C_0^*) / 2`.
    skew_part: CMatrix<T>,
    tol: Tolerances<T>,
}

impl<T: Real> SolutionEvaluator<T> {
    pub fn new(
        gram: GramModel<T>,
        iso: IsometryModel<T>,
        parameter: ContractionParameter<T>,
        c0: &CMatrix<T>,
    ) -> Result<Self> {
        Self::with_tolerances(gram, iso, parameter, c0, Tolerances::default())
    }

    pub fn with_tolerances(
        gram: GramModel<T>,
        iso: IsometryModel<T>,
        parameter: ContractionParameter<T>,
        c0: &CMatrix<T>,
        tol: Tolerances<T>,
    ) -> Result<Self> {
        let q = iso.defect_dim();
        if parameter.dim() != q {
            return Err(PickError::ParameterDimension { expected: q, found: parameter.dim() });
        }
        let n = gram.block_size();
        if c0.nrows() != n || c0.ncols() != n {
            return Err(PickError::DimensionMismatch {
                what: "C_0",
                expected: format!("{n}x{n}"),
                found: format!("{}x{}", c0.nrows(), c0.ncols()),
            });
        }
        let skew_part = (c0 - c0.adjoint()).map(|e| e * T::lit(0.5));
        Ok(Self { gram, iso, parameter, skew_part, tol })
    }

    pub fn gram(&self) -> &GramModel<T> {
        &self.gram
    }

    pub fn isometry(&self) -> &IsometryModel<T> {
        &self.iso
    }

    pub fn parameter(&self) -> &ContractionParameter<T> {
        &self.parameter
    }

    pub fn skew_part(&self) -> &CMatrix<T> {
        &self.skew_part
    }
}

pub fn evaluate_solution<T: Real>(ev: &SolutionEvaluator<T>, z: Complex<T>) -> Result<CMatrix<T>> {
    check_in_disk(z)?;
    let n = ev.gram.block_size();
    let r = ev.gram.rank();
    if r == 0 {
        return Ok(ev.skew_part.clone());
    }
    let u = extended_operator_with(&ev.iso, &ev.parameter, z, &ev.tol)?;
    let system = CMatrix::identity(r, r) - u.map(|e| e * z);
    let base = ev.gram.vectors().columns(0, n).into_owned();
    // ||z U_z|| <= |z| < 1 keeps the system nonsingular.
    let y = system.lu().solve(&base).ok_or(PickError::EigenFailure)?;
    let w = y.map(|e| e * T::lit(2.0)) - &base;
    // (base^* w)_{l,m} = inner(w_m, x_l).
    Ok((base.adjoint() * w).transpose() + &ev.skew_part)
}

impl<T: Real> MatrixFunction<T> for SolutionEvaluator<T> {
    fn matrix_size(&self) -> usize {
        self.gram.block_size()
    }

    fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        evaluate_solution(self, z)
    }
}

/// Constant matrix function, mostly for checking the verifier against impostors.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantFunction<T: Real>(pub CMatrix<T>);

impl<T: Real> MatrixFunction<T> for ConstantFunction<T> {
    fn matrix_size(&self) -> usize {
        self.0.nrows()
    }

    fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        check_in_disk(z)?;
        Ok(self.0.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<T> {
    /// `||T(z_k) - C_k||_F` per node.
    pub node_residuals: Vec<T>,
    /// Smallest eigenvalue of `(T + T^*)/2` over the sample points.
    pub min_re_eigenvalue: T,
    pub samples: usize,
    pub seed: u64,
}

impl<T: Real> VerificationReport<T> {
    pub fn max_residual(&self) -> T {
        self.node_residuals.iter().fold(T::zero(), |a, &r| a.max(r))
    }
}

/// Deterministic sample points, uniform in the disk of radius `radius`.
pub fn sample_disk<T: Real>(count: usize, radius: f64, seed: u64) -> Vec<Complex<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rho = radius * rng.random::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            let z = Complex::from_polar(rho, theta);
            c(T::lit(z.re), T::lit(z.im))
        })
        .collect()
}

/// Hermitian part `(M + M^*)/2`.
pub fn hermitian_part<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()).map(|e| e * T::lit(0.5))
}

pub fn verify_solution<T: Real, F: MatrixFunction<T> + ?Sized>(
    problem: &InterpolationProblem<T>,
    solution: &F,
    sample_count: usize,
    seed: u64,
) -> Result<VerificationReport<T>> {
    let node_residuals = problem
        .nodes()
        .iter()
        .zip(problem.values())
        .map(|(&z, value)| Ok(linalg::frobenius(&(solution.eval(z)? - value))))
        .collect::<Result<Vec<_>>>()?;
    let mut min_re_eigenvalue = T::max_value().unwrap_or_else(|| T::lit(f64::MAX));
    for z in sample_disk::<T>(sample_count, 0.95, seed) {
        let re_part = hermitian_part(&solution.eval(z)?);
        min_re_eigenvalue = min_re_eigenvalue.min(linalg::min_eigenvalue(&re_part)?);
    }
    if sample_count == 0 {
        min_re_eigenvalue = T::zero();
    }
    Ok(VerificationReport { node_residuals, min_re_eigenvalue, samples: sample_count, seed })
}
