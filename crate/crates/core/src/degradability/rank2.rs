use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::qmat::ComplexMatrix;

/// Denominators smaller than this mark a degenerate parameter pair.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Angles of a Choi-rank-two qubit channel in its canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rank2QubitParams {
    pub alpha: f64,
    pub beta: f64,
}

impl Rank2QubitParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Rank2QubitParams { alpha, beta }
    }

    fn sin2(&self) -> (f64, f64) {
        (self.alpha.sin().powi(2), self.beta.sin().powi(2))
    }

    /// 1 − sin²α − sin²β, zero exactly on the entanglement-breaking manifold.
    pub fn eb_discriminant(&self) -> f64 {
        let (sa, sb) = self.sin2();
        1.0 - sa - sb
    }
}

/// A₊ = diag(cos α, cos β), A₋ = [[0, sin β], [sin α, 0]].
pub fn rank2_qubit_channel(p: Rank2QubitParams) -> KrausChannel {
    let (ca, sa) = (p.alpha.cos(), p.alpha.sin());
    let (cb, sb) = (p.beta.cos(), p.beta.sin());
    let plus = ComplexMatrix::from_real(2, 2, &[ca, 0.0, 0.0, cb]).expect("2x2");
    let minus = ComplexMatrix::from_real(2, 2, &[0.0, sb, sa, 0.0]).expect("2x2");
    KrausChannel::new(2, 2, vec![plus, minus]).expect("cos² + sin² = 1")
}

fn with_pair(x: f64) -> [f64; 4] {
    let mut v = [1.0, 1.0, x.abs(), -x.abs()];
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Closed-form Choi spectrum {1, 1, ±(sin²β + sin²α − 1)/(sin²β − sin²α)} of the
/// candidate conjugate antidegrading map, descending; `None` when sin²α = sin²β.
pub fn antidegrading_spectrum_closed_form(p: Rank2QubitParams) -> Option<[f64; 4]> {
    let (sa, sb) = p.sin2();
    let den = sb - sa;
    if den.abs() < DEGENERACY_TOL {
        return None;
    }
    Some(with_pair((sb + sa - 1.0) / den))
}

/// Closed-form Choi spectrum {1, 1, ±(sin²β − sin²α)/(sin²β + sin²α − 1)} of the
/// candidate conjugate degrading map, descending; `None` on the entanglement-breaking manifold.
pub fn degrading_spectrum_closed_form(p: Rank2QubitParams) -> Option<[f64; 4]> {
    let (sa, sb) = p.sin2();
    let den = sb + sa - 1.0;
    if den.abs() < DEGENERACY_TOL {
        return None;
    }
    Some(with_pair((sb - sa) / den))
}
