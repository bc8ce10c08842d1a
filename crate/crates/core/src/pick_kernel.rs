//! Interpolation data and the Pick matrix it induces.
//!
//! A problem is a list of distinct nodes `z_0, ..., z_d` in the open unit disk with
//! `N x N` target values `C_k`. Its Pick matrix is the `(d+1)N x (d+1)N` Hermitian
//! block matrix with blocks
//!
//! ```text
//! K(z_k, z_l) = (C_k + C_l^*) / (2 (1 - z_k conj(z_l)))
//! ```
//!
//! laid out so that scalar entry `(kN + m, lN + n)` is entry `(m, n)` of block `(k, l)`.
//! Positive semidefiniteness of every leading block truncation is necessary for a
//! Caratheodory-class interpolant to exist.

use nalgebra::ComplexField;
use nalgebra::Complex;

use crate::error::{PickError, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::{c, Real, Tolerances};

/// Nodes in the open unit disk together with the matrix values prescribed there.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationProblem<T: Real> {
    matrix_size: usize,
    nodes: Vec<Complex<T>>,
    values: Vec<CMatrix<T>>,
}

impl<T: Real> InterpolationProblem<T> {
    /// Validates and assembles a problem using the default node separation.
    pub fn new(matrix_size: usize, nodes: Vec<Complex<T>>, values: Vec<CMatrix<T>>) -> Result<Self> {
        Self::with_separation(matrix_size, nodes, values, Tolerances::<T>::default().node_sep)
    }

    pub fn with_separation(
        matrix_size: usize,
        nodes: Vec<Complex<T>>,
        values: Vec<CMatrix<T>>,
        node_sep: T,
    ) -> Result<Self> {
        if matrix_size == 0 {
            return Err(PickError::ZeroMatrixSize);
        }
        if nodes.is_empty() {
            return Err(PickError::EmptyProblem);
        }
        if nodes.len() != values.len() {
            return Err(PickError::DimensionMismatch {
                what: "value count",
                expected: nodes.len().to_string(),
                found: values.len().to_string(),
            });
        }
        for value in &values {
            check_square(value, matrix_size, "interpolation value")?;
            if !linalg::all_finite(value) {
                return Err(PickError::NonFinite("interpolation value"));
            }
        }
        for (index, z) in nodes.iter().enumerate() {
            check_node(*z, index)?;
            for (first, w) in nodes[..index].iter().enumerate() {
                let separation = (*z - *w).modulus();
                if separation <= node_sep {
                    return Err(PickError::DuplicateNode {
                        first,
                        second: index,
                        separation: separation.as_f64(),
                    });
                }
            }
        }
        Ok(Self { matrix_size, nodes, values })
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn nodes(&self) -> &[Complex<T>] {
        &self.nodes
    }

    pub fn values(&self) -> &[CMatrix<T>] {
        &self.values
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `true` when the first node is exactly the origin.
    pub fn is_normalized(&self) -> bool {
        self.nodes[0] == Complex::new(T::zero(), T::zero())
    }

    /// Conditioning warnings for nodes hugging the unit circle.
    pub fn warnings(&self, tol: &Tolerances<T>) -> Vec<String> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, z)| z.modulus() >= T::one() - tol.boundary_margin)
            .map(|(k, z)| {
                format!(
                    "node {k} has modulus {} within {} of the unit circle; the Pick matrix is ill-conditioned",
                    z.modulus().as_f64(),
                    tol.boundary_margin.as_f64()
                )
            })
            .collect()
    }

    /// Same values at new node positions (used by the Moebius reduction).
    pub(crate) fn with_nodes(&self, nodes: Vec<Complex<T>>) -> Self {
        Self { matrix_size: self.matrix_size, nodes, values: self.values.clone() }
    }

    /// Problem consisting of the first `count` nodes.
    pub fn truncate(&self, count: usize) -> Result<Self> {
        let count = count.min(self.nodes.len());
        if count == 0 {
            return Err(PickError::EmptyProblem);
        }
        Ok(Self {
            matrix_size: self.matrix_size,
            nodes: self.nodes[..count].to_vec(),
            values: self.values[..count].to_vec(),
        })
    }
}

fn check_square<T: Real>(m: &CMatrix<T>, n: usize, what: &'static str) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(PickError::DimensionMismatch {
            what,
            expected: format!("{n}x{n}"),
            found: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}

fn check_node<T: Real>(z: Complex<T>, index: usize) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(PickError::NonFinite("node"));
    }
    let modulus = z.modulus();
    if modulus >= T::one() {
        return Err(PickError::NodeOutsideDisk { index, modulus: modulus.as_f64() });
    }
    Ok(())
}

/// Hermitian block Pick matrix of a problem.
#[derive(Clone, Debug, PartialEq)]
pub struct PickMatrix<T: Real> {
    entries: CMatrix<T>,
    block_size: usize,
}

impl<T: Real> PickMatrix<T> {
    /// Wraps an explicit Hermitian matrix. The lower triangle is overwritten by
    /// conjugates of the upper one so the result is Hermitian exactly.
    pub fn from_entries(mut entries: CMatrix<T>, block_size: usize) -> Result<Self> {
        let n = entries.nrows();
        if n != entries.ncols() || block_size == 0 || !n.is_multiple_of(block_size) {
            return Err(PickError::DimensionMismatch {
                what: "Pick matrix",
                expected: format!("square with side a multiple of {block_size}"),
                found: format!("{}x{}", entries.nrows(), entries.ncols()),
            });
        }
        hermitize(&mut entries);
        Ok(Self { entries, block_size })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn node_count(&self) -> usize {
        self.dim() / self.block_size
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn entry(&self, j: usize, l: usize) -> Complex<T> {
        self.entries[(j, l)]
    }

    pub fn max_abs(&self) -> T {
        linalg::max_abs(&self.entries)
    }

    /// Default PSD slack: `psd_rel * (1 + max |p_jl|)`.
    pub fn default_psd_tol(&self, tol: &Tolerances<T>) -> T {
        tol.psd_rel * (T::one() + self.max_abs())
    }

    /// Leading principal block covering the first `nodes` nodes.
    pub fn leading(&self, nodes: usize) -> PickMatrix<T> {
        let side = nodes.min(self.node_count()) * self.block_size;
        Self {
            entries: self.entries.view((0, 0), (side, side)).into_owned(),
            block_size: self.block_size,
        }
    }
}

fn hermitize<T: Real>(m: &mut CMatrix<T>) {
    let n = m.nrows();
    for j in 0..n {
        m[(j, j)].im = T::zero();
        for l in 0..j {
            m[(j, l)] = m[(l, j)].conj();
        }
    }
}

/// `(C_k + C_l^*) / (2 (1 - z_k conj(z_l)))`.
pub fn kernel_block<T: Real>(
    z_k: Complex<T>,
    z_l: Complex<T>,
    c_k: &CMatrix<T>,
    c_l: &CMatrix<T>,
) -> Result<CMatrix<T>> {
    if c_k.shape() != c_l.shape() || c_k.nrows() != c_k.ncols() {
        return Err(PickError::DimensionMismatch {
            what: "kernel block",
            expected: format!("{}x{}", c_k.nrows(), c_k.nrows()),
            found: format!("{}x{}", c_l.nrows(), c_l.ncols()),
        });
    }
    let one = c(T::one(), T::zero());
    let denom = (one - z_k * z_l.conj()) * T::lit(2.0);
    Ok((c_k + c_l.adjoint()).map(|e| e / denom))
}

pub fn build_pick_matrix<T: Real>(problem: &InterpolationProblem<T>) -> PickMatrix<T> {
    let n = problem.matrix_size;
    let count = problem.node_count();
    let mut entries = CMatrix::zeros(count * n, count * n);
    for k in 0..count {
        for l in k..count {
            let block = kernel_block(problem.nodes[k], problem.nodes[l], &problem.values[k], &problem.values[l])
                .expect("validated problem has square values");
            entries.view_mut((k * n, l * n), (n, n)).copy_from(&block);
        }
    }
    hermitize(&mut entries);
    PickMatrix { entries, block_size: n }
}

/// Outcome of the positive-semidefiniteness gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdReport<T> {
    pub min_eigenvalue: T,
    pub feasible: bool,
    pub tolerance_used: T,
}

pub fn validate_psd<T: Real>(pick: &PickMatrix<T>, psd_tol: T) -> Result<PsdReport<T>> {
    let min_eigenvalue = linalg::min_eigenvalue(&pick.entries)?;
    Ok(PsdReport {
        min_eigenvalue,
        feasible: min_eigenvalue >= -psd_tol,
        tolerance_used: psd_tol,
    })
}

/// Appends one node and re-checks the enlarged Pick matrix from scratch.
///
/// An infeasible extension is still returned; callers read `feasible` on the report.
pub fn extend_problem<T: Real>(
    problem: &InterpolationProblem<T>,
    new_node: Complex<T>,
    new_value: CMatrix<T>,
    psd_tol: T,
) -> Result<(InterpolationProblem<T>, PsdReport<T>)> {
    extend_problem_with(problem, new_node, new_value, psd_tol, &Tolerances::default())
}

pub fn extend_problem_with<T: Real>(
    problem: &InterpolationProblem<T>,
    new_node: Complex<T>,
    new_value: CMatrix<T>,
    psd_tol: T,
    tol: &Tolerances<T>,
) -> Result<(InterpolationProblem<T>, PsdReport<T>)> {
    let mut nodes = problem.nodes.clone();
    let mut values = problem.values.clone();
    nodes.push(new_node);
    values.push(new_value);
    let extended = InterpolationProblem::with_separation(problem.matrix_size, nodes, values, tol.node_sep)?;
    let report = validate_psd(&build_pick_matrix(&extended), psd_tol)?;
    Ok((extended, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: f64) -> CMatrix<f64> {
        CMatrix::from_element(1, 1, Complex::new(x, 0.0))
    }

    fn z(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn scalar_problem(pairs: &[(f64, f64)]) -> InterpolationProblem<f64> {
        InterpolationProblem::new(
            1,
            pairs.iter().map(|p| z(p.0)).collect(),
            pairs.iter().map(|p| s(p.1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_identity_case() {
        let k = kernel_block(z(0.0), z(0.0), &s(1.0), &s(1.0)).unwrap();
        assert_eq!(k[(0, 0)], Complex::new(1.0, 0.0));
    }

    #[test]
    fn kernel_hand_value() {
        let k = kernel_block(z(0.5), z(0.0), &s(3.0), &s(1.0)).unwrap();
        assert!((k[(0, 0)] - Complex::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_two_by_two() {
        let one = Complex::new(1.0, 0.0);
        let i = Complex::new(0.0, 1.0);
        let zero = Complex::new(0.0, 0.0);
        let m = CMatrix::from_row_slice(2, 2, &[one, i, zero, one]);
        let k = kernel_block(z(0.0), z(0.0), &m, &m).unwrap();
        let expected = CMatrix::from_row_slice(2, 2, &[one, i * 0.5, -i * 0.5, one]);
        assert!(linalg::max_abs(&(k - expected)) < 1e-15);
    }

    #[test]
    fn kernel_dimension_mismatch() {
        let err = kernel_block(z(0.0), z(0.0), &s(1.0), &CMatrix::zeros(2, 2)).unwrap_err();
        assert!(matches!(err, PickError::DimensionMismatch { .. }));
    }

    #[test]
    fn pick_two_nodes() {
        let p = build_pick_matrix(&scalar_problem(&[(0.0, 1.0), (0.5, 3.0)]));
        let expected = [[1.0, 2.0], [2.0, 4.0]];
        for (j, row) in expected.iter().enumerate() {
            for (l, &e) in row.iter().enumerate() {
                assert!((p.entry(j, l) - z(e)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn pick_skew_value_is_zero() {
        let p = InterpolationProblem::new(1, vec![z(0.0)], vec![CMatrix::from_element(1, 1, Complex::new(0.0, 1.0))]).unwrap();
        assert_eq!(build_pick_matrix(&p).entry(0, 0), Complex::new(0.0, 0.0));
        assert_eq!(build_pick_matrix(&scalar_problem(&[(0.0, 1.0)])).entry(0, 0), z(1.0));
    }

    #[test]
    fn psd_gate_examples() {
        let ok = build_pick_matrix(&scalar_problem(&[(0.0, 1.0), (0.5, 3.0)]));
        let rep = validate_psd(&ok, 1e-10 * 5.0).unwrap();
        assert!(rep.feasible);
        assert!(rep.min_eigenvalue.abs() < 1e-12);

        let zero = build_pick_matrix(&InterpolationProblem::new(1, vec![z(0.0)], vec![CMatrix::from_element(1, 1, Complex::new(0.0, 1.0))]).unwrap());
        let rep = validate_psd(&zero, 1e-10).unwrap();
        assert!(rep.feasible && rep.min_eigenvalue == 0.0);

        let bad = build_pick_matrix(&scalar_problem(&[(0.0, 1.0), (0.5, -3.0)]));
        assert_eq!(bad.entry(1, 1), z(-4.0));
        let rep = validate_psd(&bad, 1e-10 * 5.0).unwrap();
        assert!(!rep.feasible);
        assert!(rep.min_eigenvalue < -1.0);
    }

    #[test]
    fn psd_rejects_nonfinite() {
        let p = PickMatrix::from_entries(CMatrix::from_element(1, 1, Complex::new(f64::INFINITY, 0.0)), 1).unwrap();
        assert!(validate_psd(&p, 1e-10).is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            InterpolationProblem::new(1, vec![z(0.0), z(0.0)], vec![s(1.0), s(1.0)]),
            Err(PickError::DuplicateNode { first: 0, second: 1, .. })
        ));
        assert!(matches!(
            InterpolationProblem::new(1, vec![z(1.0)], vec![s(1.0)]),
            Err(PickError::NodeOutsideDisk { index: 0, .. })
        ));
        assert!(matches!(
            InterpolationProblem::new(2, vec![z(0.0)], vec![s(1.0)]),
            Err(PickError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            InterpolationProblem::<f64>::new(1, vec![], vec![]),
            Err(PickError::EmptyProblem)
        ));
        assert!(scalar_problem(&[(0.0, 1.0)]).is_normalized());
        assert!(!scalar_problem(&[(0.1, 1.0)]).is_normalized());
    }

    #[test]
    fn boundary_warning() {
        let p = scalar_problem(&[(0.0, 1.0), (1.0 - 1e-10, 1.0)]);
        let w = p.warnings(&Tolerances::default());
        assert_eq!(w.len(), 1);
        assert!(w[0].starts_with("node 1"));
    }

    #[test]
    fn extend_examples() {
        let base = scalar_problem(&[(0.0, 1.0)]);
        let (ext, rep) = extend_problem(&base, z(0.5), s(3.0), 1e-9).unwrap();
        assert!(rep.feasible);
        assert_eq!(ext.node_count(), 2);
        assert_eq!(ext.nodes()[0], base.nodes()[0]);

        assert!(matches!(
            extend_problem(&base, z(0.0), s(2.0), 1e-9),
            Err(PickError::DuplicateNode { .. })
        ));
        assert!(matches!(
            extend_problem(&base, z(1.5), s(2.0), 1e-9),
            Err(PickError::NodeOutsideDisk { .. })
        ));
        let (flagged, rep) = extend_problem(&base, z(0.5), s(-3.0), 1e-9).unwrap();
        assert!(!rep.feasible);
        assert_eq!(flagged.node_count(), 2);
    }

    fn arb_problem() -> impl Strategy<Value = InterpolationProblem<f64>> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(n, count)| {
            let nodes = proptest::collection::vec((0.0f64..0.9, 0.0f64..std::f64::consts::TAU), count);
            let values = proptest::collection::vec(proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n), count);
            (Just(n), nodes, values)
        })
        .prop_filter_map("distinct nodes", |(n, nodes, values)| {
            let nodes: Vec<_> = nodes.into_iter().map(|(r, t)| Complex::from_polar(r, t)).collect();
            let values = values
                .into_iter()
                .map(|v| CMatrix::from_row_iterator(n, n, v.into_iter().map(|(a, b)| Complex::new(a, b))))
                .collect();
            InterpolationProblem::with_separation(n, nodes, values, 1e-3).ok()
        })
    }

    proptest! {
        #[test]
        fn pick_is_hermitian_and_blockwise(problem in arb_problem()) {
            let p = build_pick_matrix(&problem);
            let n = problem.matrix_size();
            for j in 0..p.dim() {
                for l in 0..p.dim() {
                    prop_assert_eq!(p.entry(j, l), p.entry(l, j).conj());
                }
            }
            for k in 0..problem.node_count() {
                for l in 0..problem.node_count() {
                    let block = kernel_block(problem.nodes()[k], problem.nodes()[l], &problem.values()[k], &problem.values()[l]).unwrap();
                    for m in 0..n {
                        for q in 0..n {
                            prop_assert!((p.entry(k * n + m, l * n + q) - block[(m, q)]).norm() <= 1e-15 * (1.0 + block[(m, q)].norm()));
                        }
                    }
                }
            }
        }

        #[test]
        fn kernel_swap_is_adjoint(problem in arb_problem()) {
            let (nodes, values) = (problem.nodes(), problem.values());
            let last = nodes.len() - 1;
            let a = kernel_block(nodes[0], nodes[last], &values[0], &values[last]).unwrap();
            let b = kernel_block(nodes[last], nodes[0], &values[last], &values[0]).unwrap();
            prop_assert!(linalg::max_abs(&(a - b.adjoint())) <= 1e-14);
        }
    }
}
