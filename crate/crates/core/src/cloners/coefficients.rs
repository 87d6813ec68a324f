use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ClonerSpec;
use crate::error::{Error, Result};

fn check_index(index: usize, max: usize) -> Result<()> {
    if index > max {
        Err(Error::IndexOutOfRange { index, max })
    } else {
        Ok(())
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// α_j(N,M) = (N+1)/(M+1) · Π_{i<j} (M−N−i)/(M−i), exactly.
pub fn alpha_j_exact(spec: ClonerSpec, j: usize) -> Result<BigRational> {
    let (n, m) = (spec.n_in() as u64, spec.m_out() as u64);
    check_index(j, spec.env_dim() - 1)?;
    let mut a = ratio(n + 1, m + 1);
    for i in 0..j as u64 {
        a *= ratio(m - n - i, m - i);
    }
    Ok(a)
}

/// Environment weight α_j(N,M) for the input with no excitations.
pub fn alpha_j(spec: ClonerSpec, j: usize) -> Result<f64> {
    Ok(alpha_j_exact(spec, j)?.to_f64().expect("finite rational"))
}

/// All α_j for j = 0..=M−N, exactly.
pub fn alpha_vector_exact(spec: ClonerSpec) -> Vec<BigRational> {
    (0..spec.env_dim())
        .map(|j| alpha_j_exact(spec, j).expect("index in range"))
        .collect()
}

/// α_kj = (N+1)/(M+1) · C(N,k) C(M−N,j) / C(M,k+j), exactly.
pub fn alpha_kj_exact(spec: ClonerSpec, k: usize, j: usize) -> Result<BigRational> {
    check_index(k, spec.n_in())?;
    check_index(j, spec.env_dim() - 1)?;
    let (n, m) = (spec.n_in() as u64, spec.m_out() as u64);
    let (k, j) = (k as u64, j as u64);
    let num = BigUint::from(n + 1) * binomial_big(n, k) * binomial_big(m - n, j);
    let den = BigUint::from(m + 1) * binomial_big(m, k + j);
    Ok(BigRational::new(num.into(), den.into()))
}

/// Squared amplitude of |k⟩ ↦ |k+j⟩ ⊗ |P_j⟩ via the factorial formula
/// (M−N)!(N+1)!(k+j)!(M−k−j)! / (k!(N−k)!(M+1)! j!(M−N−j)!), in floating point.
pub fn alpha_kj_factorial(spec: ClonerSpec, k: usize, j: usize) -> Result<f64> {
    check_index(k, spec.n_in())?;
    check_index(j, spec.env_dim() - 1)?;
    let (n, m) = (spec.n_in() as u64, spec.m_out() as u64);
    let (k, j) = (k as u64, j as u64);
    let ln = ln_factorial(m - n) + ln_factorial(n + 1) + ln_factorial(k + j) + ln_factorial(m - k - j)
        - ln_factorial(k)
        - ln_factorial(n - k)
        - ln_factorial(m + 1)
        - ln_factorial(j)
        - ln_factorial(m - n - j);
    Ok(ln.exp())
}

/// α_kj, cross-checked between the binomial and factorial forms.
pub fn alpha_kj(spec: ClonerSpec, k: usize, j: usize) -> Result<f64> {
    let exact = alpha_kj_exact(spec, k, j)?.to_f64().expect("finite rational");
    let fact = alpha_kj_factorial(spec, k, j)?;
    let gap = (exact - fact).abs();
    if gap > 1e-10 * exact.max(1e-300) {
        return Err(Error::invalid(format!(
            "cloner coefficient formulas disagree at k={k}, j={j}: {exact} vs {fact}"
        )));
    }
    Ok(exact)
}

/// Σ_k C(k+j,k) C(M−k−j,N−k), which equals C(M+1,N) for every admissible j.
pub fn binomial_identity_lhs(n: u64, m: u64, j: u64) -> u128 {
    (0..=n)
        .filter(|&k| k + j <= m)
        .map(|k| binomial_u128(k + j, k) * binomial_u128(m - k - j, n - k))
        .sum()
}

pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        0
    } else {
        num_integer::binomial(n as u128, k as u128)
    }
}

/// β_j = α_j(M−j)/M + α_{j+1}(j+1)/M with α_{M−N+1} = 0, exactly.
pub fn beta_coefficients_exact(spec: ClonerSpec) -> Vec<BigRational> {
    let alpha = alpha_vector_exact(spec);
    let m = spec.m_out() as u64;
    (0..alpha.len())
        .map(|j| {
            let mut b = &alpha[j] * ratio(m - j as u64, m);
            if let Some(next) = alpha.get(j + 1) {
                b += next * ratio(j as u64 + 1, m);
            }
            b
        })
        .collect()
}

/// Spectrum of a single-qubit trace of the clones at the input with no excitations.
pub fn beta_coefficients(spec: ClonerSpec) -> Vec<f64> {
    beta_coefficients_exact(spec)
        .iter()
        .map(|b| b.to_f64().expect("finite rational"))
        .collect()
}

/// Whether `beta` majorizes `alpha`: descending prefix sums of β dominate those of α (slack 1e−12).
pub fn majorizes(beta: &[f64], alpha: &[f64]) -> Result<bool> {
    if beta.len() != alpha.len() {
        return Err(Error::dim(format!(
            "majorization needs equal lengths, got {} and {}",
            beta.len(),
            alpha.len()
        )));
    }
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (b, a) = (sorted(beta), sorted(alpha));
    let (mut sb, mut sa) = (0.0, 0.0);
    for (x, y) in b.iter().zip(&a) {
        sb += x;
        sa += y;
        if sb < sa - 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact majorization test on rationals.
pub fn majorizes_exact(beta: &[BigRational], alpha: &[BigRational]) -> Result<bool> {
    if beta.len() != alpha.len() {
        return Err(Error::dim("majorization needs equal lengths"));
    }
    let mut b = beta.to_vec();
    let mut a = alpha.to_vec();
    b.sort_by(|x, y| y.cmp(x));
    a.sort_by(|x, y| y.cmp(x));
    let (mut sb, mut sa) = (BigRational::zero(), BigRational::zero());
    for (x, y) in b.iter().zip(&a) {
        sb += x;
        sa += y;
        if sb < sa {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shrink factors (η, υ) of the clone and environment Bloch vectors for an N → N+1 machine.
pub fn environment_shrink_factors(spec: ClonerSpec) -> Result<(f64, f64)> {
    let n = spec.n_in() as f64;
    if spec.m_out() != spec.n_in() + 1 {
        return Err(Error::invalid(format!(
            "shrink factors are defined for N -> N+1 machines, got {} -> {}",
            spec.n_in(),
            spec.m_out()
        )));
    }
    let eta = n / (n + 1.0) * (n + 3.0) / (n + 2.0);
    let upsilon = n / (n + 2.0);
    Ok((eta, upsilon))
}

/// Single-clone Bloch shrink N(M+2)/(M(N+2)) of an N → M machine.
pub fn clone_shrink_factor(spec: ClonerSpec) -> f64 {
    let (n, m) = (spec.n_in() as f64, spec.m_out() as f64);
    n * (m + 2.0) / (m * (n + 2.0))
}

fn triangle(m: u64) -> u64 {
    m * (m + 1) / 2
}

/// (a_M, b_M) for the 1 → M machine: a_M = 1/△_M, b_M = (M+2)/(M △_M).
pub fn one_to_m_degrading_coefficients(m: usize) -> Result<(f64, f64)> {
    if m < 2 {
        return Err(Error::invalid(format!("1 -> M coefficients need M >= 2, got {m}")));
    }
    let mf = m as f64;
    let tri = triangle(m as u64) as f64;
    Ok((1.0 / tri, (mf + 2.0) / (mf * tri)))
}

/// Eigenvalues (M²+M−1−j(M+2)) / (M △_M), j = 0..M−1, exactly.
pub fn traced_b_eigenvalues_exact(m: usize) -> Result<Vec<BigRational>> {
    if m < 2 {
        return Err(Error::invalid(format!("need M >= 2, got {m}")));
    }
    let mi = m as i64;
    let den = BigInt::from(mi * triangle(m as u64) as i64);
    Ok((0..mi)
        .map(|j| BigRational::new(BigInt::from(mi * mi + mi - 1 - j * (mi + 2)), den.clone()))
        .collect())
}

/// Spectrum of one clone-traced output of the 1 → M machine at input |0⟩.
pub fn traced_b_eigenvalues(m: usize) -> Result<Vec<f64>> {
    Ok(traced_b_eigenvalues_exact(m)?
        .iter()
        .map(|x| x.to_f64().expect("finite rational"))
        .collect())
}

/// log₂((M+1)/(M−N+1)) bits.
pub fn cloner_capacity_closed_form(spec: ClonerSpec) -> f64 {
    ((spec.m_out() + 1) as f64 / spec.env_dim() as f64).log2()
}
