//! Ground-truth Caratheodory functions from atomic Herglotz measures.
//!
//! `F(z) = i T_0 + sum_j (e^{i t_j} + z) / (e^{i t_j} - z) W_j` with Hermitian `T_0`
//! and PSD weights `W_j`. Sampling such a function at nodes gives interpolation data
//! whose Pick matrix is PSD with rank at most `N * atoms`.

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PickError, Result};
use crate::linalg::{self, CMatrix};
use crate::pick_kernel::InterpolationProblem;
use crate::resolvent::{check_in_disk, MatrixFunction};
use crate::scalar::{c, Real, Tolerances};

/// Minimum angular gap between atoms drawn by [`random_measure`].
const MIN_ANGLE_GAP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct Atom<T: Real> {
    pub angle: T,
    pub weight: CMatrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtomicHerglotzMeasure<T: Real> {
    matrix_size: usize,
    skew_seed: CMatrix<T>,
    atoms: Vec<Atom<T>>,
}

impl<T: Real> AtomicHerglotzMeasure<T> {
    /// Validates Hermitian `T_0`, PSD weights and distinct angles.
    pub fn new(matrix_size: usize, skew_seed: CMatrix<T>, atoms: Vec<Atom<T>>) -> Result<Self> {
        let n = matrix_size;
        if n == 0 {
            return Err(PickError::ZeroMatrixSize);
        }
        let hermitian_slack = T::lit(1e-12).max(T::default_epsilon() * T::lit(16.0));
        check_dims(&skew_seed, n, "skew seed")?;
        if linalg::max_abs(&(&skew_seed - skew_seed.adjoint())) > hermitian_slack * (T::one() + linalg::max_abs(&skew_seed)) {
            return Err(PickError::InvalidMeasure("skew seed is not Hermitian".into()));
        }
        for (j, atom) in atoms.iter().enumerate() {
            check_dims(&atom.weight, n, "atom weight")?;
            if !atom.angle.is_finite() {
                return Err(PickError::InvalidMeasure(format!("atom {j} has a non-finite angle")));
            }
            let w = &atom.weight;
            let scale = T::one() + linalg::max_abs(w);
            if linalg::max_abs(&(w - w.adjoint())) > hermitian_slack * scale {
                return Err(PickError::InvalidMeasure(format!("atom {j} weight is not Hermitian")));
            }
            let min = linalg::min_eigenvalue(&crate::resolvent::hermitian_part(w))?;
            if min < -hermitian_slack * scale {
                return Err(PickError::InvalidMeasure(format!(
                    "atom {j} weight is not positive semidefinite (min eigenvalue {})",
                    min.as_f64()
                )));
            }
            for (i, other) in atoms[..j].iter().enumerate() {
                if unit(other.angle) == unit(atom.angle) {
                    return Err(PickError::InvalidMeasure(format!("atoms {i} and {j} share an angle")));
                }
            }
        }
        Ok(Self { matrix_size, skew_seed, atoms })
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn skew_seed(&self) -> &CMatrix<T> {
        &self.skew_seed
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }
}

fn check_dims<T: Real>(m: &CMatrix<T>, n: usize, what: &'static str) -> Result<()> {
    if m.shape() != (n, n) {
        return Err(PickError::DimensionMismatch {
            what,
            expected: format!("{n}x{n}"),
            found: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}

fn unit<T: Real>(angle: T) -> Complex<T> {
    c(angle.cos(), angle.sin())
}

pub fn eval_herglotz<T: Real>(measure: &AtomicHerglotzMeasure<T>, z: Complex<T>) -> Result<CMatrix<T>> {
    check_in_disk(z)?;
    let i = c(T::zero(), T::one());
    let mut out = measure.skew_seed.map(|e| e * i);
    for atom in &measure.atoms {
        let e = unit(atom.angle);
        let kernel = (e + z) / (e - z);
        out += atom.weight.map(|w| w * kernel);
    }
    Ok(out)
}

impl<T: Real> MatrixFunction<T> for AtomicHerglotzMeasure<T> {
    fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        eval_herglotz(self, z)
    }
}

/// Samples the measure's function at `nodes`.
pub fn make_problem<T: Real>(measure: &AtomicHerglotzMeasure<T>, nodes: &[Complex<T>]) -> Result<InterpolationProblem<T>> {
    let values = nodes.iter().map(|&z| eval_herglotz(measure, z)).collect::<Result<Vec<_>>>()?;
    InterpolationProblem::with_separation(measure.matrix_size, nodes.to_vec(), values, Tolerances::<T>::default().node_sep)
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix<f64> {
    CMatrix::from_fn(n, n, |_, _| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn lift<T: Real>(m: &CMatrix<f64>) -> CMatrix<T> {
    m.map(|e| c(T::lit(e.re), T::lit(e.im)))
}

/// Seeded random measure: weights `G G^*`, skew seed `(B + B^*)/2`, angles at least
/// `1e-3` apart. The draw sequence is done in `f64`, so every precision sees the same measure.
pub fn random_measure<T: Real>(n: usize, atom_count: usize, seed: u64) -> AtomicHerglotzMeasure<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_matrix(&mut rng, n);
    let skew = lift(&((&b + b.adjoint()) * Complex::new(0.5, 0.0)));
    let mut angles: Vec<f64> = Vec::with_capacity(atom_count);
    while angles.len() < atom_count {
        let t = rng.random_range(0.0..std::f64::consts::TAU);
        let gap_ok = angles.iter().all(|&s| {
            let d = (t - s).abs();
            d.min(std::f64::consts::TAU - d) > MIN_ANGLE_GAP
        });
        if gap_ok {
            angles.push(t);
        }
    }
    let atoms = angles
        .into_iter()
        .map(|t| {
            let g = random_matrix(&mut rng, n);
            let mut w = &g * g.adjoint();
            for j in 0..n {
                w[(j, j)].im = 0.0;
                for l in 0..j {
                    w[(j, l)] = w[(l, j)].conj();
                }
            }
            Atom { angle: T::lit(t), weight: lift(&w) }
        })
        .collect();
    AtomicHerglotzMeasure { matrix_size: n, skew_seed: skew, atoms }
}

/// Seeded distinct nodes with `|z| <= max_radius`, pairwise at least `min_sep` apart.
/// With `origin_first` the first node is exactly zero.
pub fn random_nodes<T: Real>(count: usize, max_radius: f64, min_sep: f64, origin_first: bool, seed: u64) -> Vec<Complex<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<Complex<f64>> = Vec::with_capacity(count);
    if origin_first && count > 0 {
        nodes.push(Complex::new(0.0, 0.0));
    }
    while nodes.len() < count {
        let rho = max_radius * rng.random::<f64>().sqrt();
        let z = Complex::from_polar(rho, rng.random_range(0.0..std::f64::consts::TAU));
        if nodes.iter().all(|w| (z - w).norm() >= min_sep) {
            nodes.push(z);
        }
    }
    nodes.into_iter().map(|z| c(T::lit(z.re), T::lit(z.im))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert_model::factor_gram;
    use crate::pick_kernel::{build_pick_matrix, validate_psd};

    fn r(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn one_atom() -> AtomicHerglotzMeasure<f64> {
        AtomicHerglotzMeasure::new(1, CMatrix::zeros(1, 1), vec![Atom { angle: 0.0, weight: CMatrix::from_element(1, 1, r(1.0)) }]).unwrap()
    }

    #[test]
    fn single_atom_closed_form() {
        let v = eval_herglotz(&one_atom(), r(0.5)).unwrap();
        assert!((v[(0, 0)] - r(3.0)).norm() < 1e-14);
    }

    #[test]
    fn origin_sums_weights() {
        let m = random_measure::<f64>(2, 3, 11);
        let mut expected = m.skew_seed().map(|e| e * Complex::new(0.0, 1.0));
        for a in m.atoms() {
            expected += &a.weight;
        }
        assert!(linalg::max_abs(&(eval_herglotz(&m, r(0.0)).unwrap() - expected)) < 1e-14);
    }

    #[test]
    fn empty_measure_is_constant() {
        let m = AtomicHerglotzMeasure::new(1, CMatrix::from_element(1, 1, r(1.0)), vec![]).unwrap();
        for z in [r(0.0), Complex::new(0.3, 0.7)] {
            assert_eq!(eval_herglotz(&m, z).unwrap()[(0, 0)], Complex::new(0.0, 1.0));
        }
        let p = make_problem(&m, &[r(0.0), r(0.5)]).unwrap();
        assert!(linalg::max_abs(build_pick_matrix(&p).entries()) == 0.0);
    }

    #[test]
    fn problem_from_single_atom() {
        let p = make_problem(&one_atom(), &[r(0.0), r(0.5)]).unwrap();
        assert!((p.values()[0][(0, 0)] - r(1.0)).norm() < 1e-14);
        assert!((p.values()[1][(0, 0)] - r(3.0)).norm() < 1e-14);
        let pick = build_pick_matrix(&p);
        assert_eq!(factor_gram(&pick, 1e-10).unwrap().rank(), 1);
    }

    #[test]
    fn rank_bounded_by_atoms() {
        let m = random_measure::<f64>(1, 2, 5);
        let nodes = random_nodes::<f64>(3, 0.8, 0.05, true, 5);
        let pick = build_pick_matrix(&make_problem(&m, &nodes).unwrap());
        assert!(validate_psd(&pick, 1e-10 * (1.0 + pick.max_abs())).unwrap().feasible);
        assert!(factor_gram(&pick, 1e-10).unwrap().rank() <= 2);
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert!(matches!(make_problem(&one_atom(), &[r(0.1), r(0.1)]), Err(PickError::DuplicateNode { .. })));
    }

    #[test]
    fn random_measure_contracts() {
        assert!(random_measure::<f64>(2, 0, 1).atoms().is_empty());
        assert_eq!(random_measure::<f64>(2, 3, 42), random_measure::<f64>(2, 3, 42));
        let m = random_measure::<f64>(2, 3, 42);
        for a in m.atoms() {
            assert!(linalg::min_eigenvalue(&a.weight).unwrap() >= -1e-12);
        }
        // Re-validating through the checked constructor succeeds.
        assert!(AtomicHerglotzMeasure::new(2, m.skew_seed().clone(), m.atoms().to_vec()).is_ok());
    }

    #[test]
    fn rejects_indefinite_weight() {
        let err = AtomicHerglotzMeasure::new(1, CMatrix::zeros(1, 1), vec![Atom { angle: 0.0, weight: CMatrix::from_element(1, 1, r(-1.0)) }]);
        assert!(matches!(err, Err(PickError::InvalidMeasure(_))));
    }

    #[test]
    fn hermitian_part_nonnegative_on_disk() {
        let m = random_measure::<f64>(3, 4, 8);
        for z in crate::resolvent::sample_disk::<f64>(100, 0.99, 8) {
            let h = crate::resolvent::hermitian_part(&eval_herglotz(&m, z).unwrap());
            assert!(linalg::min_eigenvalue(&h).unwrap() >= -1e-10);
        }
    }
}
