use num_complex::Complex64;

use super::coefficients::alpha_kj;
use super::css::CssBasis;
use super::ClonerSpec;
use crate::channels::{Channel, KrausChannel, StinespringIsometry};
use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix, MAX_ENTRIES};

/// Stinespring isometry of the N → M universal cloner on symmetric subspaces:
/// |k⟩ ↦ Σ_j sqrt(α_kj) |k+j⟩_B ⊗ |P_j⟩_E with input Sym(N), output Sym(M) and
/// environment dimension M−N+1.
pub fn build_cloner_isometry(spec: ClonerSpec) -> Result<StinespringIsometry> {
    let (din, dout, denv) = (spec.n_in() + 1, spec.m_out() + 1, spec.env_dim());
    if dout.saturating_mul(denv).saturating_mul(din) > MAX_ENTRIES {
        return Err(Error::ResourceCap(format!(
            "cloner {} -> {} exceeds the matrix size cap",
            spec.n_in(),
            spec.m_out()
        )));
    }
    let mut u = ComplexMatrix::zeros(dout * denv, din);
    for k in 0..din {
        for j in 0..denv {
            u[((k + j) * denv + j, k)] = Complex64::new(alpha_kj(spec, k, j)?.sqrt(), 0.0);
        }
    }
    StinespringIsometry::new(din, dout, denv, u)
}

/// The cloner as a Kraus channel Sym(N) → Sym(M).
pub fn cloner_channel(spec: ClonerSpec) -> Result<KrausChannel> {
    Ok(build_cloner_isometry(spec)?.to_kraus())
}

/// State of a single clone when the cloner is fed ψ^⊗N.
pub fn clone_marginal(spec: ClonerSpec, psi: [Complex64; 2]) -> Result<DensityMatrix> {
    let norm = psi[0].norm_sqr() + psi[1].norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!("qubit state has squared norm {norm}")));
    }
    let input = CssBasis::new(spec.n_in()).product_state(psi);
    let out = build_cloner_isometry(spec)?.apply_operator(&ComplexMatrix::outer(&input, &input))?;
    let single = CssBasis::new(spec.m_out())
        .trace_qubits(spec.m_out() - 1)?
        .apply_operator(&out)?;
    DensityMatrix::new(single)
}
