use nalgebra::DMatrix;
use faer::complex_native::c64;
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Eigenvalues sorted descending with matching unit eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// V diag(λ) V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }

    /// V diag(f(λ)) V†.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.rows();
        let k = self.values.len();
        let weights: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |r, c| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..k {
                if weights[j] != 0.0 {
                    acc += self.vectors[(r, j)] * self.vectors[(c, j)].conj() * weights[j];
                }
            }
            acc
        })
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Thin SVD factors; `u` has orthonormal columns and `v_adjoint` orthonormal rows.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v_adjoint: ComplexMatrix,
}

impl Svd {
    /// Number of singular values above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.singular_values.iter().filter(|&&s| s > threshold).count()
    }
}

pub(crate) fn to_na(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub(crate) fn from_na(m: &DMatrix<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

fn is_diagonal(m: &ComplexMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|r| (0..n).all(|c| r == c || m[(r, c)] == Complex64::new(0.0, 0.0)))
}

impl ComplexMatrix {
    /// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
    pub fn hermitian_eigensystem(&self) -> Result<EigenSystem> {
        if !self.is_square() {
            return Err(Error::invalid(format!(
                "eigensystem of a non-square {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL * self.max_abs().max(1.0) {
            return Err(Error::invalid(format!("matrix is not Hermitian (defect {defect:e})")));
        }
        let n = self.rows();

        let (values, vectors) = if is_diagonal(self) {
            let vals: Vec<f64> = (0..n).map(|i| self[(i, i)].re).collect();
            (vals, ComplexMatrix::identity(n))
        } else {
            let eig = nalgebra::SymmetricEigen::try_new(to_na(&self.hermitian_part()), f64::EPSILON, 0)
                .ok_or_else(|| Error::invalid("Hermitian eigensolver did not converge"))?;
            (eig.eigenvalues.iter().copied().collect(), from_na(&eig.eigenvectors))
        };

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        let sorted_values = order.iter().map(|&i| values[i]).collect();
        let sorted_vectors = ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
        Ok(EigenSystem {
            values: sorted_values,
            vectors: sorted_vectors,
        })
    }

    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigensystem()?.values)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        self.svd().singular_values
    }

    /// Thin singular value decomposition A = U diag(s) V†, singular values descending.
    pub fn svd(&self) -> Svd {
        // nalgebra's complex SVD returns wrong factors on some structured inputs
        let a = faer::Mat::<c64>::from_fn(self.rows(), self.cols(), |r, c| {
            let z = self[(r, c)];
            c64::new(z.re, z.im)
        });
        let svd = a.thin_svd();
        let (u, s, v) = (svd.u(), svd.s_diagonal(), svd.v());
        let mut order: Vec<usize> = (0..s.nrows()).collect();
        order.sort_by(|&x, &y| s.read(y).re.total_cmp(&s.read(x).re));
        let k = order.len();
        let z = |w: c64| Complex64::new(w.re, w.im);
        Svd {
            u: ComplexMatrix::from_fn(self.rows(), k, |r, c| z(u.read(r, order[c]))),
            singular_values: order.iter().map(|&j| s.read(j).re).collect(),
            v_adjoint: ComplexMatrix::from_fn(k, self.cols(), |r, c| z(v.read(c, order[r])).conj()),
        }
    }

    /// Moore–Penrose pseudo-inverse, dropping singular values at or below `threshold`.
    pub fn pseudo_inverse(&self, threshold: f64) -> ComplexMatrix {
        let svd = self.svd();
        let (rows, cols) = self.shape();
        let kept: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&k| svd.singular_values[k] > threshold)
            .collect();
        ComplexMatrix::from_fn(cols, rows, |r, c| {
            kept.iter()
                .map(|&k| svd.v_adjoint[(k, r)].conj() * svd.u[(c, k)].conj() / svd.singular_values[k])
                .sum()
        })
    }

    /// exp(-i t H) for Hermitian H.
    pub fn unitary_evolution(&self, t: f64) -> Result<ComplexMatrix> {
        let eig = self.hermitian_eigensystem()?;
        let n = self.rows();
        let phases: Vec<Complex64> = eig.values.iter().map(|&l| Complex64::from_polar(1.0, -t * l)).collect();
        Ok(ComplexMatrix::from_fn(n, n, |r, c| {
            (0..n)
                .map(|j| eig.vectors[(r, j)] * phases[j] * eig.vectors[(c, j)].conj())
                .sum()
        }))
    }
}

pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<EigenSystem> {
    m.hermitian_eigensystem()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::random::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_spectrum() {
        let eig = ComplexMatrix::identity(5).hermitian_eigensystem().unwrap();
        assert!(eig.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn pauli_z_spectrum() {
        let z = ComplexMatrix::from_diagonal(&[1.0, -1.0]);
        assert_eq!(z.hermitian_eigenvalues().unwrap(), vec![1.0, -1.0]);
    }

    #[test]
    fn pauli_y_spectrum_and_reconstruction() {
        let i = Complex64::new(0.0, 1.0);
        let y = ComplexMatrix::from_vec(2, 2, vec![0.0.into(), -i, i, 0.0.into()]).unwrap();
        let eig = y.hermitian_eigensystem().unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14 && (eig.values[1] + 1.0).abs() < 1e-14);
        assert!(eig.reconstruct().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(m.hermitian_eigensystem(), Err(Error::Validation(_))));
    }

    #[test]
    fn random_hermitian_reconstructs_with_unitary_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3, 6, 13, 40] {
            let a = crate::qmat::random::ginibre(n, n, &mut rng);
            let h = (&a + &a.adjoint()).scale_real(0.5);
            let eig = h.hermitian_eigensystem().unwrap();
            assert!(eig.reconstruct().max_abs_diff(&h) < 1e-10, "n = {n}");
            let vv = &eig.vectors.adjoint() * &eig.vectors;
            assert!(vv.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
            assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_reconstructs_rectangular_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (r, c) in [(3, 7), (7, 3), (4, 4)] {
            let a = crate::qmat::random::ginibre(r, c, &mut rng);
            let svd = a.svd();
            let k = svd.singular_values.len();
            assert_eq!(k, r.min(c));
            assert!(svd.singular_values.windows(2).all(|w| w[0] >= w[1]));
            let s = ComplexMatrix::from_diagonal(&svd.singular_values);
            let back = &(&svd.u * &s) * &svd.v_adjoint;
            assert!(back.max_abs_diff(&a) < 1e-12);
        }
    }

    #[test]
    fn svd_of_a_structured_real_matrix() {
        let b = 0.895094386766364f64;
        let (x, y) = (b.cos().powi(2), b.sin().powi(2));
        let m = [[x, 0.0, 0.0, y], [0.0, x, y, 0.0], [0.0, y, x, 0.0], [y, 0.0, 0.0, x]];
        let a = ComplexMatrix::from_fn(4, 4, |r, c| m[r][c].into());
        let svd = a.svd();
        let s = ComplexMatrix::from_diagonal(&svd.singular_values);
        assert!((&(&svd.u * &s) * &svd.v_adjoint).max_abs_diff(&a) < 1e-12);
        let expected = [1.0, 1.0, (x - y).abs(), (x - y).abs()];
        for (got, want) in svd.singular_values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn pseudo_inverse_of_rank_deficient_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = crate::qmat::random::ginibre(5, 2, &mut rng);
        let b = crate::qmat::random::ginibre(2, 4, &mut rng);
        let m = &a * &b;
        let p = m.pseudo_inverse(1e-10);
        assert!((&(&m * &p) * &m).max_abs_diff(&m) < 1e-10);
        assert!((&(&p * &m) * &p).max_abs_diff(&p) < 1e-10);
    }

    #[test]
    fn unitary_evolution_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = random_unitary(4, &mut rng);
        let h = (&u + &u.adjoint()).scale_real(0.5);
        let w = h.unitary_evolution(0.7).unwrap();
        assert!((&w.adjoint() * &w).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }
}
