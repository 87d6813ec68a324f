//! Maximizes the coherent information over input states for channels where the
//! maximally mixed input is not assumed optimal.

use qcap::capacity::{coherent_information, maximize_coherent_information, MaximizeOptions};
use qcap::channels::KrausChannel;
use qcap::cloners::{build_cloner_isometry, ClonerSpec};
use qcap::qmat::{ComplexMatrix, DensityMatrix};

fn amplitude_damping(g: f64) -> qcap::Result<KrausChannel> {
    let k0 = ComplexMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => 1.0.into(),
        (1, 1) => (1.0 - g).sqrt().into(),
        _ => 0.0.into(),
    });
    let k1 = ComplexMatrix::from_fn(2, 2, |r, c| if (r, c) == (0, 1) { g.sqrt().into() } else { 0.0.into() });
    KrausChannel::new(2, 2, vec![k0, k1])
}

fn main() -> qcap::Result<()> {
    let opts = MaximizeOptions {
        restarts: 8,
        seed: 3,
        ..MaximizeOptions::default()
    };
    for g in [0.1, 0.25, 0.4] {
        let iso = amplitude_damping(g)?.to_stinespring();
        let best = maximize_coherent_information(&iso, &opts)?;
        let flat = coherent_information(&iso, &DensityMatrix::maximally_mixed(2))?;
        println!(
            "amplitude damping {g}: max {:.6} (I/2 gives {flat:.6}), {} evaluations, populations {:.4?}",
            best.value,
            best.iterations,
            best.argmax_state.eigenvalues()
        );
    }

    let iso = build_cloner_isometry(ClonerSpec::new(2, 4)?)?;
    let best = maximize_coherent_information(&iso, &opts)?;
    let flat = coherent_information(&iso, &DensityMatrix::maximally_mixed(3))?;
    println!("cloner 2 -> 4: optimizer {:.8}, maximally mixed {flat:.8}", best.value);
    Ok(())
}
