//! Haar-style random objects for sampling tests and optimizer restarts.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;

/// Matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Isometry with orthonormal columns (rows >= cols), Haar distributed.
pub fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rows, cols, rng);
    // modified Gram–Schmidt, twice for stability
    let mut cols_v: Vec<Vec<Complex64>> = (0..cols).map(|c| g.column(c)).collect();
    for _ in 0..2 {
        for c in 0..cols {
            for p in 0..c {
                let (done, rest) = cols_v.split_at_mut(c);
                let proj: Complex64 = done[p].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in rest[0].iter_mut().zip(&done[p]) {
                    *x -= proj * q;
                }
            }
            let norm = cols_v[c].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for x in &mut cols_v[c] {
                *x /= norm;
            }
        }
    }
    ComplexMatrix::from_fn(rows, cols, |r, c| cols_v[c][r])
}

pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    random_isometry(n, n, rng)
}

/// Uniformly random unit vector.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Complex64> {
    random_isometry(d, 1, rng).into_vec()
}

/// Random mixed state of the given rank (induced measure).
pub fn random_density<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(d, rank.max(1), rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).expect("Ginibre construction is a valid state")
}
