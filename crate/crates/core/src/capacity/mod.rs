//! Coherent information and its maximization over input states.

pub mod nelder_mead;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::channels::StinespringIsometry;
use crate::error::{Error, Result};
use crate::qmat::{spectral_entropy, ComplexMatrix, DensityMatrix};

/// I_c(N, ρ) = H(B) − H(E) for τ = UρU†, in bits.
pub fn coherent_information(ch: &StinespringIsometry, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != ch.din() {
        return Err(Error::dim(format!(
            "channel input dimension is {}, state dimension is {}",
            ch.din(),
            rho.dim()
        )));
    }
    coherent_information_of_operator(ch, rho.matrix())
}

fn coherent_information_of_operator(ch: &StinespringIsometry, rho: &ComplexMatrix) -> Result<f64> {
    let joint = ch.joint_output(rho)?;
    let dims = [ch.dout(), ch.denv()];
    let b = joint.partial_trace(&dims, &[0])?;
    let e = joint.partial_trace(&dims, &[1])?;
    Ok(spectral_entropy(&b)? - spectral_entropy(&e)?)
}

/// Settings for [`maximize_coherent_information`].
#[derive(Clone, Debug)]
pub struct MaximizeOptions {
    /// The caller asserts the channel is covariant, so the maximally mixed input is optimal.
    pub covariant: bool,
    /// Convergence tolerance on the simplex value spread.
    pub tol: f64,
    /// Function evaluations per restart.
    pub max_evals: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            covariant: false,
            tol: 1e-8,
            max_evals: 10_000,
            restarts: 20,
            seed: 0,
        }
    }
}

/// Best coherent information found and where.
#[derive(Clone, Debug)]
pub struct CoherentInfoResult {
    pub value: f64,
    pub argmax_state: DensityMatrix,
    /// Total function evaluations over all restarts.
    pub iterations: usize,
    /// Whether the restart that produced `value` met the tolerance.
    pub converged: bool,
}

/// ρ = LL†/Tr(LL†) for lower-triangular L built from d² reals:
/// d diagonal entries followed by real and imaginary parts below the diagonal.
pub fn state_from_params(params: &[f64], d: usize) -> ComplexMatrix {
    let mut l = ComplexMatrix::zeros(d, d);
    let mut it = params.iter();
    for i in 0..d {
        l[(i, i)] = Complex64::new(*it.next().unwrap_or(&0.0), 0.0);
    }
    for i in 0..d {
        for j in 0..i {
            let re = *it.next().unwrap_or(&0.0);
            let im = *it.next().unwrap_or(&0.0);
            l[(i, j)] = Complex64::new(re, im);
        }
    }
    let m = &l * &l.adjoint();
    let tr = m.trace().re;
    if tr > 0.0 {
        m.scale_real(1.0 / tr)
    } else {
        ComplexMatrix::identity(d).scale_real(1.0 / d as f64)
    }
}

/// Maximizes I_c over input states with Nelder–Mead and random restarts.
///
/// Restart 0 starts at the maximally mixed state; the others start at seeded
/// random points. Restarts run in parallel and the result is independent of
/// scheduling. With `covariant` set, a single evaluation at I/d is returned.
pub fn maximize_coherent_information(ch: &StinespringIsometry, opts: &MaximizeOptions) -> Result<CoherentInfoResult> {
    let d = ch.din();
    let mixed = DensityMatrix::maximally_mixed(d);
    if opts.covariant {
        return Ok(CoherentInfoResult {
            value: coherent_information(ch, &mixed)?,
            argmax_state: mixed,
            iterations: 1,
            converged: true,
        });
    }
    let nparams = d * d;
    let mut base = ChaCha8Rng::seed_from_u64(opts.seed);
    let seeds: Vec<u64> = (0..opts.restarts.max(1)).map(|_| base.random()).collect();

    let objective = |x: &[f64]| -> f64 {
        let rho = state_from_params(x, d);
        match coherent_information_of_operator(ch, &rho) {
            Ok(v) => -v,
            Err(_) => f64::INFINITY,
        }
    };

    let runs: Vec<nelder_mead::Minimum> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &seed)| {
            let x0: Vec<f64> = if i == 0 {
                let mut x = vec![0.0; nparams];
                x[..d].iter_mut().for_each(|v| *v = 1.0);
                x
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..nparams).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
            };
            nelder_mead::minimize(objective, &x0, 0.5, opts.tol, opts.max_evals)
        })
        .collect();

    let iterations = runs.iter().map(|r| r.evaluations).sum();
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.value.total_cmp(&b.value).then(ia.cmp(ib)))
        .map(|(_, r)| r)
        .expect("at least one restart");
    let state = state_from_params(&best.x, d);
    let argmax_state = DensityMatrix::new(state)?;
    Ok(CoherentInfoResult {
        value: coherent_information(ch, &argmax_state)?,
        argmax_state,
        iterations,
        converged: best.converged,
    })
}

/// U₁ ⊗ U₂ as an isometry A₁A₂ → (B₁B₂) ⊗ (E₁E₂).
pub fn tensor_isometry(a: &StinespringIsometry, b: &StinespringIsometry) -> Result<StinespringIsometry> {
    let joint = a.matrix().kron(b.matrix())?;
    let dims = [a.dout(), a.denv(), b.dout(), b.denv()];
    let u = joint.permute_row_subsystems(&dims, &[0, 2, 1, 3])?;
    StinespringIsometry::with_tolerance(
        a.din() * b.din(),
        a.dout() * b.dout(),
        a.denv() * b.denv(),
        u,
        1e-9,
    )
}

/// (I_c(N⊗N, ρ₁₂), I_c(N, ρ₁) + I_c(N, ρ₂)).
pub fn subadditivity_check(ch: &StinespringIsometry, rho12: &DensityMatrix) -> Result<(f64, f64)> {
    let d = ch.din();
    if rho12.dim() != d * d {
        return Err(Error::dim(format!(
            "two-copy input must have dimension {}, got {}",
            d * d,
            rho12.dim()
        )));
    }
    let pair = tensor_isometry(ch, ch)?;
    let lhs = coherent_information(&pair, rho12)?;
    let tol = rho12.tol().max(DensityMatrix::DEFAULT_TOL);
    let rho1 = DensityMatrix::with_tolerance(rho12.matrix().partial_trace(&[d, d], &[0])?, tol)?;
    let rho2 = DensityMatrix::with_tolerance(rho12.matrix().partial_trace(&[d, d], &[1])?, tol)?;
    let rhs = coherent_information(ch, &rho1)? + coherent_information(ch, &rho2)?;
    Ok((lhs, rhs))
}
