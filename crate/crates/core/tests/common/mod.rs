#![allow(dead_code)]

use pickcara::{make_problem, random_measure, random_nodes, CMatrix, Complex, Problem64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct SuiteInstance {
    pub label: String,
    pub atoms: usize,
    pub problem: Problem64,
}

/// 50 seeded oracle problems: N cycles through 1..=3, node counts through 1..=6,
/// atom counts are drawn from 0..=5. The first node is always the origin.
pub fn suite() -> Vec<SuiteInstance> {
    (0..50u64)
        .map(|i| {
            let n = 1 + (i % 3) as usize;
            let count = 1 + ((i / 3) % 6) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE + i);
            let atoms = rng.random_range(0..=5usize);
            let measure = random_measure::<f64>(n, atoms, 1000 + i);
            let nodes = random_nodes::<f64>(count, 0.85, 0.05, true, 2000 + i);
            let problem = make_problem(&measure, &nodes).expect("suite nodes are distinct");
            SuiteInstance { label: format!("#{i} (N={n}, nodes={count}, atoms={atoms})"), atoms, problem }
        })
        .collect()
}

/// Deterministic spiral covering the disk of radius `radius`.
pub fn probe_grid(count: usize, radius: f64) -> Vec<Complex<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|j| {
            let rho = radius * ((j as f64 + 0.5) / count as f64).sqrt();
            Complex::from_polar(rho, golden * j as f64 + 0.3)
        })
        .collect()
}

/// Random `q x q` contraction with operator norm in `(0, 1]`.
pub fn random_contraction(q: usize, rng: &mut ChaCha8Rng) -> CMatrix<f64> {
    let g = CMatrix::from_fn(q, q, |_, _| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let norm = pickcara::linalg::operator_norm(&g).unwrap();
    let target: f64 = rng.random_range(0.05..=1.0);
    g.map(|e| e * (target / norm))
}

pub fn rel_residual(a: &CMatrix<f64>, b: &CMatrix<f64>) -> f64 {
    pickcara::linalg::frobenius(&(a - b)) / (1.0 + pickcara::linalg::frobenius(b))
}

/// Scalar identity embedded on the diagonal of a `q x q` matrix.
pub fn diagonal(q: usize, value: Complex<f64>) -> CMatrix<f64> {
    CMatrix::from_fn(q, q, |i, j| if i == j { value } else { Complex::new(0.0, 0.0) })
}
