//! JSON wire formats. Complex scalars are `[re, im]` pairs, matrices are row-major
//! nested arrays, and all reals are IEEE-754 doubles.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{PickError, Result};
use crate::linalg::CMatrix;
use crate::oracle::{Atom, AtomicHerglotzMeasure};
use crate::pick_kernel::InterpolationProblem;
use crate::resolvent::ParameterSpec;
use crate::scalar::{c, Real};

pub type ComplexPair = [f64; 2];
pub type MatrixRows = Vec<Vec<ComplexPair>>;

pub fn complex_to_pair<T: Real>(z: Complex<T>) -> ComplexPair {
    [z.re.as_f64(), z.im.as_f64()]
}

pub fn pair_to_complex<T: Real>(p: ComplexPair) -> Complex<T> {
    c(T::lit(p[0]), T::lit(p[1]))
}

pub fn matrix_to_rows<T: Real>(m: &CMatrix<T>) -> MatrixRows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_to_pair(m[(i, j)])).collect())
        .collect()
}

pub fn rows_to_matrix<T: Real>(rows: &MatrixRows, what: &'static str) -> Result<CMatrix<T>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(PickError::DimensionMismatch {
            what,
            expected: format!("rows of length {ncols}"),
            found: format!("row of length {}", bad.len()),
        });
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| pair_to_complex(rows[i][j])))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub matrix_size: usize,
    pub nodes: Vec<ComplexPair>,
    pub values: Vec<MatrixRows>,
}

impl ProblemFile {
    pub fn from_problem<T: Real>(p: &InterpolationProblem<T>) -> Self {
        Self {
            matrix_size: p.matrix_size(),
            nodes: p.nodes().iter().map(|&z| complex_to_pair(z)).collect(),
            values: p.values().iter().map(matrix_to_rows).collect(),
        }
    }

    pub fn to_problem<T: Real>(&self) -> Result<InterpolationProblem<T>> {
        let values = self
            .values
            .iter()
            .map(|rows| rows_to_matrix(rows, "interpolation value"))
            .collect::<Result<Vec<_>>>()?;
        InterpolationProblem::new(self.matrix_size, self.nodes.iter().map(|&p| pair_to_complex(p)).collect(), values)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParameterFile {
    Zero,
    Constant { matrix: MatrixRows },
}

impl ParameterFile {
    pub fn to_spec<T: Real>(&self) -> Result<ParameterSpec<T>> {
        Ok(match self {
            Self::Zero => ParameterSpec::Zero,
            Self::Constant { matrix } => ParameterSpec::Constant(rows_to_matrix(matrix, "parameter matrix")?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomFile {
    pub angle: f64,
    pub weight: MatrixRows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub matrix_size: usize,
    pub skew_seed: MatrixRows,
    pub atoms: Vec<AtomFile>,
}

impl MeasureFile {
    pub fn from_measure<T: Real>(m: &AtomicHerglotzMeasure<T>) -> Self {
        Self {
            matrix_size: m.matrix_size(),
            skew_seed: matrix_to_rows(m.skew_seed()),
            atoms: m
                .atoms()
                .iter()
                .map(|a| AtomFile { angle: a.angle.as_f64(), weight: matrix_to_rows(&a.weight) })
                .collect(),
        }
    }

    pub fn to_measure<T: Real>(&self) -> Result<AtomicHerglotzMeasure<T>> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Ok(Atom { angle: T::lit(a.angle), weight: rows_to_matrix(&a.weight, "atom weight")? }))
            .collect::<Result<Vec<_>>>()?;
        AtomicHerglotzMeasure::new(self.matrix_size, rows_to_matrix(&self.skew_seed, "skew seed")?, atoms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_schema() {
        let text = r#"{"matrix_size":1,"nodes":[[0,0],[0.5,0]],"values":[[[[1,0]]],[[[3,0]]]]}"#;
        let file: ProblemFile = serde_json::from_str(text).unwrap();
        let p = file.to_problem::<f64>().unwrap();
        assert_eq!(p.node_count(), 2);
        assert_eq!(p.values()[1][(0, 0)], Complex::new(3.0, 0.0));
        assert_eq!(ProblemFile::from_problem(&p), file);
    }

    #[test]
    fn ragged_rows_rejected() {
        let file: ProblemFile = serde_json::from_str(r#"{"matrix_size":2,"nodes":[[0,0]],"values":[[[[1,0],[0,0]],[[1,0]]]]}"#).unwrap();
        assert!(matches!(file.to_problem::<f64>(), Err(PickError::DimensionMismatch { .. })));
    }

    #[test]
    fn parameter_schema() {
        let zero: ParameterFile = serde_json::from_str(r#"{"kind":"zero"}"#).unwrap();
        assert_eq!(zero, ParameterFile::Zero);
        let k: ParameterFile = serde_json::from_str(r#"{"kind":"constant","matrix":[[[0.5,0.25]]]}"#).unwrap();
        match k.to_spec::<f64>().unwrap() {
            ParameterSpec::Constant(m) => assert_eq!(m[(0, 0)], Complex::new(0.5, 0.25)),
            _ => panic!("expected constant"),
        }
        assert_eq!(serde_json::to_string(&ParameterFile::Zero).unwrap(), r#"{"kind":"zero"}"#);
    }

    #[test]
    fn measure_schema() {
        let text = r#"{"matrix_size":1,"skew_seed":[[[0,0]]],"atoms":[{"angle":0.0,"weight":[[[1,0]]]}]}"#;
        let m: MeasureFile = serde_json::from_str(text).unwrap();
        let measure = m.to_measure::<f64>().unwrap();
        assert_eq!(measure.atoms().len(), 1);
        assert_eq!(MeasureFile::from_measure(&measure), m);
    }
}
