//! Degradability classification: candidate maps from Choi algebra, the
//! entanglement-breaking test and a semidefinite feasibility search.

mod candidate;
mod feasibility;
mod rank2;

use serde::Serialize;

use crate::channels::{choi_rank, complementary, Channel, KrausChannel};
use crate::error::Result;

pub use candidate::{candidate_conjugate_antidegrading_map, candidate_conjugate_degrading_map, PINV_THRESHOLD, RANGE_TOL};
pub use feasibility::{composition_residual, feasibility_search, DegradabilityVerdict, FeasibilityOptions, Mode};
pub use rank2::{
    antidegrading_spectrum_closed_form, degrading_spectrum_closed_form, rank2_qubit_channel, Rank2QubitParams,
    DEGENERACY_TOL,
};

/// Most negative eigenvalue tolerated in the partial-transpose test.
pub const PPT_TOL: f64 = 1e-9;

/// Smallest eigenvalue of the output-transposed Choi matrix.
pub fn ppt_min_eigenvalue<C: Channel + ?Sized>(ch: &C) -> f64 {
    ch.choi()
        .output_transpose()
        .hermitian_eigensystem()
        .expect("transposed Choi matrices are Hermitian")
        .min()
}

/// Positive partial transpose of the Choi matrix, within [`PPT_TOL`].
///
/// This is exactly entanglement breaking when din·dout ≤ 6; in larger
/// dimensions it is a necessary condition only.
pub fn is_entanglement_breaking<C: Channel + ?Sized>(ch: &C) -> bool {
    ppt_min_eigenvalue(ch) >= -PPT_TOL
}

/// Structured summary of every requested degradability test.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub din: usize,
    pub dout: usize,
    pub denv: usize,
    pub choi_rank: usize,
    pub entanglement_breaking: bool,
    pub verdicts: Vec<DegradabilityVerdict>,
}

impl ClassificationReport {
    pub fn verdict(&self, mode: Mode) -> Option<&DegradabilityVerdict> {
        self.verdicts.iter().find(|v| v.mode == mode)
    }

    pub fn holds(&self, mode: Mode) -> bool {
        self.verdict(mode).is_some_and(|v| v.holds)
    }
}

/// Runs the feasibility search for each mode plus the rank and PPT tests.
///
/// The channel is first reduced to its minimal Kraus form so the environment
/// has the Choi-rank dimension.
pub fn classify(ch: &KrausChannel, modes: &[Mode], opts: &FeasibilityOptions) -> Result<ClassificationReport> {
    let minimal = ch.choi().to_kraus()?;
    let verdicts = modes
        .iter()
        .map(|&m| feasibility_search(&minimal, m, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        din: ch.din(),
        dout: ch.dout(),
        denv: complementary(&minimal).dout(),
        choi_rank: choi_rank(ch),
        entanglement_breaking: is_entanglement_breaking(ch),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloners::{cloner_channel, ClonerSpec};

    #[test]
    fn entanglement_breaking_examples() {
        let zero = [1.0.into(), 0.0.into()];
        assert!(is_entanglement_breaking(&KrausChannel::constant(2, &zero).unwrap()));
        assert!(!is_entanglement_breaking(&KrausChannel::identity(2)));
        let b = 0.7;
        let on = Rank2QubitParams::new(std::f64::consts::FRAC_PI_2 - b, b);
        assert!(is_entanglement_breaking(&rank2_qubit_channel(on)));
        let off = Rank2QubitParams::new(std::f64::consts::FRAC_PI_2 - b, b + 0.1);
        assert!(!is_entanglement_breaking(&rank2_qubit_channel(off)));
    }

    #[test]
    fn classify_cloner() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let report = classify(&ch, &Mode::ALL, &FeasibilityOptions::default()).unwrap();
        assert_eq!((report.din, report.dout, report.denv, report.choi_rank), (2, 3, 2, 2));
        assert!(report.holds(Mode::Degradable));
        assert!(report.holds(Mode::ConjugateDegradable));
        assert!(!report.holds(Mode::Antidegradable));
        assert!(!report.holds(Mode::ConjugateAntidegradable));
        assert!(!report.entanglement_breaking);
    }

    #[test]
    fn classify_reduces_redundant_kraus_sets() {
        let id = KrausChannel::identity(2);
        let doubled = id.mixture(0.5, &id).unwrap();
        let report = classify(&doubled, &[Mode::Degradable], &FeasibilityOptions::default()).unwrap();
        assert_eq!(report.denv, 1);
        assert!(report.holds(Mode::Degradable));
    }
}
