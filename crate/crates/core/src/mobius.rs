//! Disk automorphism moving the first node to the origin.

use nalgebra::ComplexField;
use nalgebra::Complex;

use crate::error::{PickError, Result};
use crate::linalg::CMatrix;
use crate::pick_kernel::InterpolationProblem;
use crate::resolvent::{check_in_disk, evaluate_solution, MatrixFunction, SolutionEvaluator};
use crate::scalar::{c, Real};

/// `u(z) = (z - z_0) / (1 - conj(z_0) z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusTransform<T: Real> {
    pivot: Complex<T>,
}

impl<T: Real> MobiusTransform<T> {
    pub fn new(pivot: Complex<T>) -> Result<Self> {
        if pivot.modulus() >= T::one() {
            return Err(PickError::NodeOutsideDisk { index: 0, modulus: pivot.modulus().as_f64() });
        }
        Ok(Self { pivot })
    }

    pub fn identity() -> Self {
        Self { pivot: c(T::zero(), T::zero()) }
    }

    pub fn pivot(&self) -> Complex<T> {
        self.pivot
    }

    pub fn is_identity(&self) -> bool {
        self.pivot == c(T::zero(), T::zero())
    }

    pub fn apply(&self, z: Complex<T>) -> Complex<T> {
        if self.is_identity() {
            return z;
        }
        (z - self.pivot) / (c(T::one(), T::zero()) - self.pivot.conj() * z)
    }
}

/// Maps all nodes through the automorphism pivoted at the first node; values are unchanged.
pub fn normalize_problem<T: Real>(problem: &InterpolationProblem<T>) -> (InterpolationProblem<T>, MobiusTransform<T>) {
    let transform = MobiusTransform { pivot: problem.nodes()[0] };
    let mut nodes: Vec<_> = problem.nodes().iter().map(|&z| transform.apply(z)).collect();
    nodes[0] = c(T::zero(), T::zero());
    (problem.with_nodes(nodes), transform)
}

/// `T(z) = R(u(z))` for a solution `R` of the normalized problem.
pub fn pullback_evaluate<T: Real>(
    ev: &SolutionEvaluator<T>,
    transform: &MobiusTransform<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    check_in_disk(z)?;
    evaluate_solution(ev, transform.apply(z))
}

/// A normalized-problem solution composed with the automorphism.
#[derive(Clone, Debug)]
pub struct PulledBack<T: Real> {
    pub evaluator: SolutionEvaluator<T>,
    pub transform: MobiusTransform<T>,
}

impl<T: Real> MatrixFunction<T> for PulledBack<T> {
    fn matrix_size(&self) -> usize {
        self.evaluator.matrix_size()
    }

    fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        pullback_evaluate(&self.evaluator, &self.transform, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn problem(nodes: Vec<Complex<f64>>) -> InterpolationProblem<f64> {
        let values = nodes.iter().map(|_| CMatrix::from_element(1, 1, r(1.0))).collect();
        InterpolationProblem::new(1, nodes, values).unwrap()
    }

    #[test]
    fn zero_pivot_is_identity() {
        let p = problem(vec![r(0.0), Complex::new(0.3, -0.2)]);
        let (q, t) = normalize_problem(&p);
        assert!(t.is_identity());
        assert_eq!(q.nodes(), p.nodes());
    }

    #[test]
    fn half_pivot() {
        let (q, t) = normalize_problem(&problem(vec![r(0.5), r(0.0)]));
        assert_eq!(q.nodes()[0], r(0.0));
        assert!((q.nodes()[1] - r(-0.5)).norm() < 1e-15);
        assert!(q.is_normalized());
        assert_eq!(t.pivot(), r(0.5));
    }

    proptest! {
        #[test]
        fn distinct_nodes_stay_distinct(raw in proptest::collection::vec((0.0f64..0.95, 0.0f64..std::f64::consts::TAU), 2..6)) {
            let nodes: Vec<_> = raw.iter().map(|&(rho, t)| Complex::from_polar(rho, t)).collect();
            let values = nodes.iter().map(|_| CMatrix::from_element(1, 1, r(1.0))).collect();
            if let Ok(p) = InterpolationProblem::with_separation(1, nodes, values, 1e-6) {
                let (q, _) = normalize_problem(&p);
                for j in 0..q.node_count() {
                    prop_assert!(q.nodes()[j].norm() < 1.0);
                    for l in 0..j {
                        prop_assert!((q.nodes()[j] - q.nodes()[l]).norm() > 1e-9);
                    }
                }
            }
        }
    }
}
