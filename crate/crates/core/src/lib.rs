//! Matrix Nevanlinna-Pick interpolation in the Caratheodory class.
//!
//! Given nodes `z_0, ..., z_d` in the unit disk and `N x N` matrices `C_k`, this crate
//! decides whether an analytic `T` with `T(z) + T(z)^* >= 0` and `T(z_k) = C_k` exists,
//! whether it is unique, and evaluates every solution through a contraction parameter.
//!
//! The pipeline, bottom up:
//!
//! * [`pick_kernel`]: problem data, the block Pick matrix, PSD gate, incremental extension.
//! * [`hilbert_model`]: Gram factorization of the Pick matrix, rank-deficient cases included.
//! * [`isometry`]: the isometric operator on the Gram model, defect spaces, determinacy.
//! * [`resolvent`]: the solution family parametrized by contractions between defect spaces.
//! * [`mobius`]: reduction of an arbitrary first node to the origin.
//! * [`oracle`]: atomic Herglotz measures for ground-truth test data.
//! * [`solve`]: the assembled pipeline; [`json`]: file formats.
//!
//! Everything is generic over [`Real`] (`f64` or `f32`); the `*64` aliases below are
//! what most callers want.

pub mod error;
pub mod hilbert_model;
pub mod isometry;
pub mod json;
pub mod linalg;
pub mod mobius;
pub mod oracle;
pub mod pick_kernel;
pub mod resolvent;
pub mod scalar;
pub mod solve;

pub use error::{PickError, Result};
pub use hilbert_model::{factor_gram, factor_gram_with, GramModel};
pub use isometry::{
    build_isometry, build_isometry_with, determinacy_by_defect, determinacy_by_linear_systems, linear_determinacy,
    IsometryModel, LinearDeterminacy,
};
pub use linalg::{CMatrix, CVector};
pub use mobius::{normalize_problem, pullback_evaluate, MobiusTransform, PulledBack};
pub use oracle::{eval_herglotz, make_problem, random_measure, random_nodes, Atom, AtomicHerglotzMeasure};
pub use pick_kernel::{
    build_pick_matrix, extend_problem, extend_problem_with, kernel_block, validate_psd, InterpolationProblem,
    PickMatrix, PsdReport,
};
pub use resolvent::{
    evaluate_solution, extended_operator, make_contraction_parameter, verify_solution, ConstantFunction,
    ContractionParameter, MatrixFunction, ParameterProvider, ParameterSpec, SolutionEvaluator, VerificationReport,
};
pub use scalar::{Real, Tolerances};
pub use solve::{prepare, prepare_with, PreparedProblem};

pub use nalgebra::Complex;

pub type Complex64 = Complex<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type Problem64 = InterpolationProblem<f64>;
pub type Problem32 = InterpolationProblem<f32>;
pub type Pick64 = PickMatrix<f64>;
pub type Gram64 = GramModel<f64>;
pub type Isometry64 = IsometryModel<f64>;
pub type Evaluator64 = SolutionEvaluator<f64>;
pub type Evaluator32 = SolutionEvaluator<f32>;
pub type Measure64 = AtomicHerglotzMeasure<f64>;
pub type Prepared64 = PreparedProblem<f64>;
pub type Prepared32 = PreparedProblem<f32>;
pub type Tolerances64 = Tolerances<f64>;
