//! Quantum capacity of the Unruh channel from its block-diagonal output
//! structure, with a certified truncation of the infinite direct sum.

use std::f64::consts::LN_2;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channels::write_atomic;
use crate::error::{Error, Result};
use crate::qmat::{Block, BlockDiagonal, ComplexMatrix};

/// Largest truncation index the series will use.
pub const MAX_TRUNCATION: usize = 50_000_000;

/// Spin-j matrices (J_x, J_y, J_z) with j = (dim−1)/2 and J_z = diag(j, j−1, …, −j).
pub fn su2_generators(dim: usize) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    if dim < 2 {
        return Err(Error::dim(format!("spin representations need dimension >= 2, got {dim}")));
    }
    let j = (dim as f64 - 1.0) / 2.0;
    let m = |k: usize| j - k as f64;
    // J₊|m⟩ = sqrt(j(j+1) − m(m+1)) |m+1⟩ and |m+1⟩ sits one index earlier
    let raise = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            let mc = m(c);
            Complex64::new((j * (j + 1.0) - mc * (mc + 1.0)).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let lower = raise.adjoint();
    let jx = (&raise + &lower).scale_real(0.5);
    let jy = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
    let jz = ComplexMatrix::from_diagonal(&(0..dim).map(m).collect::<Vec<_>>());
    Ok((jx, jy, jz))
}

/// Validated acceleration parameter with its certified truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnruhSpec {
    z: f64,
    tail_tol: f64,
    k_max: usize,
}

impl UnruhSpec {
    pub fn new(z: f64, tail_tol: f64) -> Result<Self> {
        check_z(z)?;
        if !(tail_tol > 0.0 && tail_tol.is_finite()) {
            return Err(Error::invalid(format!("tail tolerance must be positive, got {tail_tol}")));
        }
        let k_max = truncation_k(z, tail_tol)?;
        Ok(UnruhSpec { z, tail_tol, k_max })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }
}

fn check_z(z: f64) -> Result<()> {
    if z > 0.0 && z < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("acceleration parameter z must lie in (0, 1), got {z}")))
    }
}

/// Weights of block k at the maximally mixed input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockWeights {
    pub k: usize,
    /// (1−z)³ z^k
    pub t_k: f64,
    /// (k+1)/2
    pub s_k: f64,
    /// (k+2)/2
    pub s_tilde_k: f64,
}

pub fn block_weights(z: f64, k: usize) -> BlockWeights {
    BlockWeights {
        k,
        t_k: (1.0 - z).powi(3) * z.powi(k as i32),
        s_k: (k as f64 + 1.0) / 2.0,
        s_tilde_k: (k as f64 + 2.0) / 2.0,
    }
}

/// ϱ_k = (k+1)/2 · I + n̂·J on the (k+2)-dimensional irrep.
pub fn unruh_block(n_hat: [f64; 3], k: usize) -> Result<ComplexMatrix> {
    let norm = n_hat.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::invalid(format!("direction must be a unit vector, |n| = {norm}")));
    }
    let (jx, jy, jz) = su2_generators(k + 2)?;
    let mut out = ComplexMatrix::identity(k + 2).scale_real((k as f64 + 1.0) / 2.0);
    out += &jx.scale_real(n_hat[0]);
    out += &jy.scale_real(n_hat[1]);
    out += &jz.scale_real(n_hat[2]);
    Ok(out)
}

/// Upper bound on the series tail beyond index K, from
/// log₂((k+2)/(k+1)) ≤ 1/((k+1) ln 2):
/// (1−z)³/(2 ln 2) · Σ_{k>K} z^k (k+2).
pub fn tail_bound(z: f64, k: usize) -> f64 {
    let kf = k as f64;
    let zk1 = z.powf(kf + 1.0);
    let s0 = zk1 / (1.0 - z);
    let s1 = zk1 * (kf + 1.0 - kf * z) / (1.0 - z).powi(2);
    (1.0 - z).powi(3) / (2.0 * LN_2) * (s1 + 2.0 * s0)
}

/// Smallest K whose tail bound is at most `tail_tol`.
pub fn truncation_k(z: f64, tail_tol: f64) -> Result<usize> {
    check_z(z)?;
    if !(tail_tol > 0.0) {
        return Err(Error::invalid(format!("tail tolerance must be positive, got {tail_tol}")));
    }
    // the bound decreases in K, so bracket and bisect
    let mut hi = 1usize;
    while tail_bound(z, hi) > tail_tol {
        hi *= 2;
        if hi > MAX_TRUNCATION {
            return Err(Error::ResourceCap(format!(
                "z = {z} needs more than {MAX_TRUNCATION} series terms for tolerance {tail_tol:e}"
            )));
        }
    }
    let mut lo = 0usize;
    if tail_bound(z, 0) <= tail_tol {
        return Ok(0);
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if tail_bound(z, mid) <= tail_tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// (1−z)³/2 Σ_{k=0}^{K} z^k (k+1)(k+2) log₂((k+2)/(k+1)).
pub fn unruh_capacity_truncated(z: f64, k_max: usize) -> Result<f64> {
    check_z(z)?;
    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 0..=k_max {
        let kf = k as f64;
        sum += zk * (kf + 1.0) * (kf + 2.0) * (1.0 / (kf + 1.0)).ln_1p() / LN_2;
        zk *= z;
        if zk == 0.0 {
            break;
        }
    }
    Ok((1.0 - z).powi(3) / 2.0 * sum)
}

/// Capacity with its truncation certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnruhCapacity {
    pub z: f64,
    pub value: f64,
    pub k_max: usize,
    /// Proven bound on the neglected tail.
    pub tail_bound: f64,
}

pub fn unruh_capacity_certified(z: f64, tail_tol: f64) -> Result<UnruhCapacity> {
    let spec = UnruhSpec::new(z, tail_tol)?;
    Ok(UnruhCapacity {
        z,
        value: unruh_capacity_truncated(z, spec.k_max)?,
        k_max: spec.k_max,
        tail_bound: tail_bound(z, spec.k_max),
    })
}

/// Quantum capacity in bits, accurate to `tail_tol`.
pub fn unruh_capacity(z: f64, tail_tol: f64) -> Result<f64> {
    Ok(unruh_capacity_certified(z, tail_tol)?.value)
}

/// Truncated outputs (τ_B, τ_E) at the maximally mixed input:
/// τ_B = ⊕ T_k S_k I_(k+2) and τ_E = ⊕ T_k S̃_k I_(k+1), k = 0..=K.
pub fn unruh_outputs_maxmixed(z: f64, k_max: usize) -> Result<(BlockDiagonal, BlockDiagonal)> {
    check_z(z)?;
    let mut tau_b = BlockDiagonal::default();
    let mut tau_e = BlockDiagonal::default();
    for k in 0..=k_max {
        let w = block_weights(z, k);
        tau_b.push(Block::ScaledIdentity {
            dim: k + 2,
            scale: w.t_k * w.s_k,
        });
        tau_e.push(Block::ScaledIdentity {
            dim: k + 1,
            scale: w.t_k * w.s_tilde_k,
        });
    }
    Ok((tau_b, tau_e))
}

/// H(τ_B) − H(τ_E) from the truncated block outputs.
pub fn unruh_entropy_difference(z: f64, k_max: usize) -> Result<f64> {
    let (b, e) = unruh_outputs_maxmixed(z, k_max)?;
    Ok(b.entropy()? - e.entropy()?)
}

/// Capacity on `steps` evenly spaced points of [z_min, z_max], in order.
pub fn unruh_sweep(z_min: f64, z_max: f64, steps: usize, tail_tol: f64) -> Result<Vec<(f64, f64)>> {
    check_z(z_min)?;
    check_z(z_max)?;
    if z_min >= z_max {
        return Err(Error::invalid(format!("sweep needs z_min < z_max, got {z_min} and {z_max}")));
    }
    if steps < 2 {
        return Err(Error::invalid("a sweep needs at least two points"));
    }
    let h = (z_max - z_min) / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let z = if i + 1 == steps { z_max } else { z_min + i as f64 * h };
            Ok((z, unruh_capacity(z, tail_tol)?))
        })
        .collect()
}

/// CSV text with header `z,Q_bits`.
pub fn sweep_to_csv(rows: &[(f64, f64)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| Error::invalid(format!("csv encoding failed: {e}"));
    w.write_record(["z", "Q_bits"]).map_err(wrap)?;
    for (z, q) in rows {
        w.serialize((z, q)).map_err(wrap)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes the sweep as CSV, atomically.
pub fn write_sweep_csv(path: &Path, rows: &[(f64, f64)]) -> Result<()> {
    write_atomic(path, sweep_to_csv(rows)?.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half_is_pauli_over_two() {
        let (jx, jy, jz) = su2_generators(2).unwrap();
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(jx[(0, 1)], half);
        assert_eq!(jy[(0, 1)], Complex64::new(0.0, -0.5));
        assert_eq!(jz, ComplexMatrix::from_diagonal(&[0.5, -0.5]));
        assert!(su2_generators(1).is_err());
    }

    #[test]
    fn commutation_and_casimir() {
        for dim in 2..8 {
            let (jx, jy, jz) = su2_generators(dim).unwrap();
            let comm = &(&jx * &jy) - &(&jy * &jx);
            assert!(comm.max_abs_diff(&jz.scale(Complex64::new(0.0, 1.0))) < 1e-12);
            let j = (dim as f64 - 1.0) / 2.0;
            let cas = &(&(&jx * &jx) + &(&jy * &jy)) + &(&jz * &jz);
            assert!(cas.max_abs_diff(&ComplexMatrix::identity(dim).scale_real(j * (j + 1.0))) < 1e-12);
        }
        let (_, _, jz) = su2_generators(3).unwrap();
        assert_eq!(jz, ComplexMatrix::from_diagonal(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn blocks_are_psd_with_a_zero_eigenvalue() {
        let e = unruh_block([0.0, 0.0, 1.0], 0).unwrap().hermitian_eigenvalues().unwrap();
        assert!((e[0] - 1.0).abs() < 1e-15 && e[1].abs() < 1e-15);
        let n = [0.48, -0.6, 0.64];
        for k in 0..8 {
            let b = unruh_block(n, k).unwrap();
            let ev = b.hermitian_eigenvalues().unwrap();
            assert!(ev.last().unwrap().abs() < 1e-12);
            assert!((b.trace().re - (k + 1) as f64 * (k + 2) as f64 / 2.0).abs() < 1e-12);
        }
        assert!(unruh_block([1.0, 1.0, 0.0], 1).is_err());
    }

    #[test]
    fn output_trace_sums_to_one() {
        let z = 0.4;
        let k = truncation_k(z, 1e-14).unwrap();
        let (b, e) = unruh_outputs_maxmixed(z, k).unwrap();
        assert!((b.trace() - 1.0).abs() < 1e-12);
        assert!((e.trace() - 1.0).abs() < 1e-12);
        assert_eq!(e.blocks()[3].dim(), 4);
    }

    #[test]
    fn truncation_is_minimal_and_certified() {
        for z in [1e-6, 0.1, 0.5, 0.9, 0.99] {
            let k = truncation_k(z, 1e-12).unwrap();
            assert!(tail_bound(z, k) <= 1e-12);
            if k > 0 {
                assert!(tail_bound(z, k - 1) > 1e-12);
            }
        }
        assert!(truncation_k(1e-15, 1e-12).unwrap() <= 1);
        let k = truncation_k(0.5, 1e-12).unwrap();
        assert!((10..100).contains(&k));
    }

    #[test]
    fn series_and_entropies_agree() {
        let z = 0.5;
        let k = truncation_k(z, 1e-12).unwrap();
        let a = unruh_capacity_truncated(z, k).unwrap();
        let b = unruh_entropy_difference(z, k).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn limits_and_monotonicity() {
        assert!((unruh_capacity(1e-6, 1e-12).unwrap() - 1.0).abs() < 1e-5);
        assert!(unruh_capacity(0.999, 1e-12).unwrap() < 1e-3);
        let q = |z| unruh_capacity(z, 1e-12).unwrap();
        assert!(q(0.1) > q(0.5) && q(0.5) > q(0.9));
        assert!(unruh_capacity(1.5, 1e-12).is_err());
        assert!(unruh_capacity(0.0, 1e-12).is_err());
    }

    #[test]
    fn csv_format() {
        let text = sweep_to_csv(&[(0.25, 0.5), (0.5, 0.1)]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("z,Q_bits"));
        assert_eq!(lines.next(), Some("0.25,0.5"));
        let rows = unruh_sweep(0.1, 0.9, 5, 1e-12).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[4].0, 0.9);
        assert!(unruh_sweep(0.5, 0.4, 5, 1e-12).is_err());
    }
}
