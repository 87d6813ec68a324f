use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues at or below this contribute nothing to entropies.
pub const ENTROPY_CLIP: f64 = 1e-12;

/// Square, Hermitian, unit-trace, positive semidefinite matrix (all within `tol`).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    tol: f64,
}

impl DensityMatrix {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(mat, Self::DEFAULT_TOL)
    }

    pub fn with_tolerance(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::invalid(format!("tolerance must be finite and nonnegative, got {tol}")));
        }
        if !mat.is_square() {
            return Err(Error::invalid(format!(
                "density matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > tol {
            return Err(Error::invalid(format!("not Hermitian: max |M - M†| = {defect:e}")));
        }
        let mat = mat.hermitian_part();
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > tol {
            return Err(Error::invalid(format!("trace {tr} differs from 1")));
        }
        let min_eig = mat.hermitian_eigensystem()?.min();
        if min_eig < -tol {
            return Err(Error::invalid(format!("not positive semidefinite: eigenvalue {min_eig:e}")));
        }
        Ok(DensityMatrix { mat, tol })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix {
            mat: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            tol: Self::DEFAULT_TOL,
        }
    }

    /// |ψ⟩⟨ψ| for a unit vector ψ.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > Self::DEFAULT_TOL {
            return Err(Error::invalid(format!("state vector has squared norm {norm}")));
        }
        Self::new(ComplexMatrix::outer(psi, psi))
    }

    /// Qubit state ½(I + r·σ); requires |r| ≤ 1.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if len > 1.0 + Self::DEFAULT_TOL {
            return Err(Error::invalid(format!("Bloch vector length {len} exceeds 1")));
        }
        let m = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(0.5 * (1.0 + r[2]), 0.0),
                Complex64::new(0.5 * r[0], -0.5 * r[1]),
                Complex64::new(0.5 * r[0], 0.5 * r[1]),
                Complex64::new(0.5 * (1.0 - r[2]), 0.0),
            ],
        )?;
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.mat
            .hermitian_eigenvalues()
            .expect("validated density matrix is Hermitian")
    }

    /// Bloch vector of a qubit state.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let m = &self.mat;
        Some([2.0 * m[(1, 0)].re, 2.0 * m[(1, 0)].im, (m[(0, 0)] - m[(1, 1)]).re])
    }

    /// ⟨ψ|ρ|ψ⟩.
    pub fn fidelity_with_pure(&self, psi: &[Complex64]) -> f64 {
        let v = self.mat.apply(psi);
        psi.iter().zip(&v).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }
}

/// −Σ λ log₂ λ over eigenvalues above [`ENTROPY_CLIP`].
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > ENTROPY_CLIP)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Entropy functional of any Hermitian matrix (no normalization applied).
pub fn spectral_entropy(m: &ComplexMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&m.hermitian_eigenvalues()?))
}
