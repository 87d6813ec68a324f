//! Rank-2 qubit channels: which candidate (anti)degrading map is completely
//! positive, and how that tracks the entanglement-breaking manifold.

use std::f64::consts::FRAC_PI_2;

use qcap::channels::MapSpectrum;
use qcap::degradability::{
    candidate_conjugate_antidegrading_map, candidate_conjugate_degrading_map, is_entanglement_breaking,
    rank2_qubit_channel, Rank2QubitParams,
};

fn main() -> qcap::Result<()> {
    println!("{:>6} {:>6} {:>9} {:>4} {:>12} {:>12}", "alpha", "beta", "disc", "EB", "min eig deg", "min eig anti");
    for (alpha, beta) in [(0.2, 0.3), (0.4, FRAC_PI_2 - 0.4), (0.5, 1.2), (0.7, 0.7), (1.0, 0.2), (0.3, 0.9)] {
        let p = Rank2QubitParams::new(alpha, beta);
        let ch = rank2_qubit_channel(p);
        // at alpha = beta the complement is not invertible and no candidate exists
        let min_eig = |m: qcap::Result<MapSpectrum>| match m {
            Ok(m) => format!("{:+.5}", m.min_eigenvalue()),
            Err(_) => "none".to_string(),
        };
        println!(
            "{alpha:>6.3} {beta:>6.3} {:>+9.4} {:>4} {:>12} {:>12}",
            p.eb_discriminant(),
            if is_entanglement_breaking(&ch) { "yes" } else { "no" },
            min_eig(candidate_conjugate_degrading_map(&ch)),
            min_eig(candidate_conjugate_antidegrading_map(&ch)),
        );
    }
    Ok(())
}
