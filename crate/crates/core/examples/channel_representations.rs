//! Kraus, Choi and Stinespring forms of one random channel, converted round trip.

use qcap::channels::{apply, complementary, Channel, KrausChannel};
use qcap::qmat::DensityMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qcap::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ch = KrausChannel::random(2, 3, 4, &mut rng);
    let choi = ch.choi();
    println!("Choi eigenvalues: {:.4?}", choi.eigenvalues());
    println!("trace preservation defect: {:.2e}", choi.trace_preservation_defect());

    let minimal = choi.to_kraus()?;
    println!("Kraus operators: {} given, {} minimal", ch.num_kraus(), minimal.num_kraus());
    println!("choi round trip: {:.2e}", minimal.choi().mat().max_abs_diff(choi.mat()));

    let iso = ch.to_stinespring();
    println!("Stinespring isometry: {}x{}", iso.matrix().rows(), iso.matrix().cols());
    println!("stinespring round trip: {:.2e}", iso.to_kraus().choi().mat().max_abs_diff(choi.mat()));

    let rho = DensityMatrix::from_bloch([0.3, -0.2, 0.5])?;
    let out = apply(&ch, &rho)?;
    let env = apply(&complementary(&ch), &rho)?;
    println!("output spectrum {:.4?}", out.eigenvalues());
    println!("environment spectrum {:.4?}", env.eigenvalues());
    Ok(())
}
