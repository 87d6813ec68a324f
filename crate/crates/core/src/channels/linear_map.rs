use super::choi::ChoiMatrix;
use crate::error::Result;
use crate::qmat::ComplexMatrix;

/// A linear map given by its Choi matrix, with the spectrum that decides complete positivity.
#[derive(Clone, Debug)]
pub struct MapSpectrum {
    pub din: usize,
    pub dout: usize,
    /// Choi matrix, output factor first.
    pub choi: ComplexMatrix,
    /// Eigenvalues of `choi`, descending.
    pub eigenvalues: Vec<f64>,
}

impl MapSpectrum {
    pub fn new(din: usize, dout: usize, choi: ComplexMatrix) -> Result<Self> {
        let eigenvalues = choi.hermitian_eigenvalues()?;
        Ok(MapSpectrum {
            din,
            dout,
            choi,
            eigenvalues,
        })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Validated Choi matrix; fails with `NotCompletelyPositive` when the map is not CP.
    pub fn to_choi(&self) -> Result<ChoiMatrix> {
        ChoiMatrix::new(self.din, self.dout, self.choi.clone())
    }
}
