//! Scalar abstraction and numerical tolerances.

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar the solver is generic over (`f32` or `f64`).
///
/// Complex quantities are `nalgebra::Complex<T>`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync {
    /// Default tolerance set sized for this precision.
    fn default_tolerances() -> Tolerances<Self>;

    /// Lossy literal conversion.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal representable")
    }

    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tolerances() -> Tolerances<f64> {
        Tolerances {
            psd_rel: 1e-10,
            node_sep: 1e-12,
            boundary_margin: 1e-9,
            rank: 1e-10,
            gram: 1e-10,
            iso: 1e-8,
            lsq: 1e-8,
            contraction: 1e-12,
        }
    }
}

impl Real for f32 {
    fn default_tolerances() -> Tolerances<f32> {
        Tolerances {
            psd_rel: 1e-5,
            node_sep: 1e-6,
            boundary_margin: 1e-4,
            rank: 1e-5,
            gram: 1e-4,
            iso: 1e-3,
            lsq: 1e-3,
            contraction: 1e-5,
        }
    }
}

/// Every threshold used by the construction pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// PSD slack relative to `1 + max |p_jl|`.
    pub psd_rel: T,
    /// Absolute minimum separation between nodes.
    pub node_sep: T,
    /// Nodes with `|z| >= 1 - boundary_margin` trigger a conditioning warning.
    pub boundary_margin: T,
    /// Eigenvalue cutoff relative to the largest Pick eigenvalue.
    pub rank: T,
    /// Gram reconstruction slack relative to `1 + max |p_jl|`.
    pub gram: T,
    /// Isometry defect `|| (AQ)^*(AQ) - I ||_max`.
    pub iso: T,
    /// Relative least-squares residual for the determinacy systems.
    pub lsq: T,
    /// Slack on the operator norm of contraction parameters.
    pub contraction: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        T::default_tolerances()
    }
}

pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}
