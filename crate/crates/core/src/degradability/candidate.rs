use crate::channels::{complementary, natural_to_choi, Channel, KrausChannel, MapSpectrum};
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

/// Singular values at or below this (relative to the largest) are treated as zero.
pub const PINV_THRESHOLD: f64 = 1e-10;

/// Relative tolerance for `M · source = target` on the range of the source map.
pub const RANGE_TOL: f64 = 1e-8;

/// Solves M · source = target for the natural matrix M with a pseudo-inverse,
/// then returns the Choi matrix of T ∘ M.
fn conjugate_solution(
    target: &ComplexMatrix,
    source: &ComplexMatrix,
    d_out: usize,
    d_in: usize,
) -> Result<MapSpectrum> {
    let scale = source.svd().singular_values.first().copied().unwrap_or(0.0);
    let m = target * &source.pseudo_inverse(PINV_THRESHOLD * scale.max(1.0));
    let defect = (&(&m * source) - target).max_abs();
    if defect > RANGE_TOL * target.max_abs().max(1.0) {
        return Err(Error::SingularConstruction(format!(
            "composition cannot be inverted on the range of the source map (defect {defect:e})"
        )));
    }
    let choi = natural_to_choi(&m, d_out, d_in)?.partial_transpose(&[d_out, d_in], 0)?;
    MapSpectrum::new(d_in, d_out, choi)
}

/// Candidate D with D ∘ N^c = T ∘ N, from the natural matrices of N and N^c.
///
/// The returned map goes from the environment to the output. It is a genuine
/// conjugate antidegrading map iff its Choi matrix is positive semidefinite.
pub fn candidate_conjugate_antidegrading_map(ch: &KrausChannel) -> Result<MapSpectrum> {
    let comp = complementary(ch);
    conjugate_solution(&ch.choi().natural(), &comp.choi().natural(), ch.dout(), comp.dout())
}

/// Candidate D with D ∘ N = T ∘ N^c, from the output to the environment.
pub fn candidate_conjugate_degrading_map(ch: &KrausChannel) -> Result<MapSpectrum> {
    let comp = complementary(ch);
    conjugate_solution(&comp.choi().natural(), &ch.choi().natural(), comp.dout(), ch.dout())
}
