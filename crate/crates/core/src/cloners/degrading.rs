use num_complex::Complex64;

use super::coefficients::{environment_shrink_factors, one_to_m_degrading_coefficients};
use super::css::CssBasis;
use super::ClonerSpec;
use crate::channels::{choi_of_linear_map, compose, Channel, ChoiMatrix, KrausChannel, MapSpectrum, CP_TOL};
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

fn pauli_y() -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix::from_vec(2, 2, vec![0.0.into(), -i, i, 0.0.into()]).expect("2x2")
}

/// Candidate degrading map of the 1 → 2 cloner, Sym(2) → qubit environment:
/// trace one clone, apply the universal NOT, shrink the Bloch vector by `shrink`,
/// then rotate by σ_y to line up with the environment basis.
///
/// The map is completely positive exactly when `shrink >= 2`; at `shrink = 2` it
/// degrades the cloner to its complement.
pub fn degrading_map_1to2(shrink: f64) -> Result<MapSpectrum> {
    if !(shrink > 0.0 && shrink.is_finite()) {
        return Err(Error::invalid(format!("shrink factor must be positive, got {shrink}")));
    }
    let trace_one = CssBasis::new(2).single_qubit_trace()?;
    let y = pauli_y();
    let choi = choi_of_linear_map(3, 2, |x| {
        let q = trace_one.apply_operator(x)?;
        let tr = q.trace();
        // universal NOT then shrink: ½(1 + 1/s) Tr(X) I − X/s
        let g = &ComplexMatrix::identity(2).scale(tr * 0.5 * (1.0 + 1.0 / shrink)) - &q.scale_real(1.0 / shrink);
        Ok(&(&y * &g) * &y)
    })?;
    MapSpectrum::new(3, 2, choi)
}

/// Conjugate degrading map of the 1 → 2 cloner: trace one clone, then depolarize
/// with Bloch shrink 1/2. Composed with the cloner it equals the transposed complement.
pub fn conjugate_degrading_map_1to2() -> Result<KrausChannel> {
    conjugate_degrading_map_n_to_n_plus_1(1)
}

/// Conjugate degrading map of the N → N+1 cloner: trace N clones, then shrink the
/// remaining Bloch vector by υ_N / η_{N,N+1}.
pub fn conjugate_degrading_map_n_to_n_plus_1(n: usize) -> Result<KrausChannel> {
    let spec = ClonerSpec::new(n, n + 1)?;
    let (eta, upsilon) = environment_shrink_factors(spec)?;
    let trace = CssBasis::new(n + 1).trace_qubits(n)?;
    compose(&KrausChannel::depolarizing(2, upsilon / eta)?, &trace)
}

/// Conjugate degrading map of the 1 → M cloner: trace one clone, then depolarize
/// Sym(M−1) with parameter a_M / b_M.
pub fn conjugate_degrading_map_1_to_m(m: usize) -> Result<KrausChannel> {
    let (a, b) = one_to_m_degrading_coefficients(m)?;
    let trace = CssBasis::new(m).single_qubit_trace()?;
    let dep = KrausChannel::depolarizing(m, a / b)?;
    let composed = compose(&dep, &trace)?;
    if composed.num_kraus() > composed.din() * composed.dout() {
        return ChoiMatrix::with_tolerance(composed.din(), composed.dout(), composed.choi().into_matrix(), CP_TOL)?
            .to_kraus();
    }
    Ok(composed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::complementary;
    use crate::cloners::machine::cloner_channel;

    fn conj_residual(d: &KrausChannel, ch: &KrausChannel) -> f64 {
        let lhs = compose(d, ch).unwrap().choi().into_matrix();
        let rhs = complementary(ch).choi().output_transpose();
        (&lhs - &rhs).frobenius_norm()
    }

    #[test]
    fn degrading_map_spectrum_closed_form() {
        for s in [0.5, 1.0, 1.9, 2.0, 2.5, 3.0, 10.0] {
            let spec = degrading_map_1to2(s).unwrap();
            let low = 0.5 - 1.0 / s;
            let high = 0.5 * (1.0 + 1.0 / s);
            let mut expected = vec![high; 4];
            expected.extend([low, low]);
            expected.sort_by(|a, b| b.total_cmp(a));
            for (x, y) in spec.eigenvalues.iter().zip(&expected) {
                assert!((x - y).abs() < 1e-12, "s = {s}");
            }
        }
        assert!(degrading_map_1to2(0.0).is_err());
    }

    #[test]
    fn degrading_map_at_two_degrades_the_cloner() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let d = degrading_map_1to2(2.0).unwrap().to_choi().unwrap().to_kraus().unwrap();
        let lhs = compose(&d, &ch).unwrap().choi().into_matrix();
        let rhs = complementary(&ch).choi().into_matrix();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-9);
        assert!(matches!(
            degrading_map_1to2(1.9).unwrap().to_choi(),
            Err(Error::NotCompletelyPositive { .. })
        ));
    }

    #[test]
    fn one_to_two_conjugate_degrading() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let d = conjugate_degrading_map_1to2().unwrap();
        assert!(conj_residual(&d, &ch) < 1e-9);
    }

    #[test]
    fn n_to_n_plus_one_conjugate_degrading() {
        for n in 1..=6 {
            let ch = cloner_channel(ClonerSpec::new(n, n + 1).unwrap()).unwrap();
            let d = conjugate_degrading_map_n_to_n_plus_1(n).unwrap();
            assert!(conj_residual(&d, &ch) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn one_to_m_conjugate_degrading() {
        for m in 2..=7 {
            let ch = cloner_channel(ClonerSpec::new(1, m).unwrap()).unwrap();
            let d = conjugate_degrading_map_1_to_m(m).unwrap();
            assert!(conj_residual(&d, &ch) < 1e-9, "m = {m}");
        }
    }

    #[test]
    fn one_to_two_bloch_images() {
        use crate::channels::apply;
        use crate::qmat::DensityMatrix;
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let d = conjugate_degrading_map_1to2().unwrap();
        let n = [0.48, 0.6, 0.64];
        let rho = DensityMatrix::from_bloch(n).unwrap();
        let clone = apply(&ch, &rho).unwrap();
        let image = apply(&d, &clone).unwrap().bloch_vector().unwrap();
        let env = apply(&complementary(&ch), &rho).unwrap().bloch_vector().unwrap();
        // the environment basis here differs from the |ψ̄⟩, |ψ̄⊥⟩ labelling by σ_y
        for i in 0..3 {
            assert!((image[i] - n[i] / 3.0).abs() < 1e-12);
        }
        let flipped = [n[0] / 3.0, -n[1] / 3.0, n[2] / 3.0];
        for i in 0..3 {
            assert!((env[i] - flipped[i]).abs() < 1e-12);
        }
    }
}
