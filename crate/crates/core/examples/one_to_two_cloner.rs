//! The 1 → 2 cloner in detail: its degrading map family, where it turns
//! completely positive, and the conjugate degrading map.

use qcap::channels::{compose, complementary, Channel};
use qcap::cloners::{cloner_channel, conjugate_degrading_map_1to2, degrading_map_1to2, ClonerSpec};

fn main() -> qcap::Result<()> {
    let cloner = cloner_channel(ClonerSpec::new(1, 2)?)?;
    let env = complementary(&cloner);
    println!("cloner: qubit -> Sym(2), {} Kraus operators", cloner.num_kraus());

    println!("\ndegrading map candidates (shrink s):");
    for s in [1.5, 1.9, 1.99, 2.0, 2.5, 3.0] {
        let map = degrading_map_1to2(s)?;
        println!("  s = {s:<5} min Choi eigenvalue {:+.6}", map.min_eigenvalue());
    }

    let d = degrading_map_1to2(2.0)?.to_choi()?.to_kraus()?;
    let gap = compose(&d, &cloner)?.choi().mat().max_abs_diff(env.choi().mat());
    println!("\nD ∘ N vs N^c at s = 2: max deviation {gap:.2e}");

    let dc = conjugate_degrading_map_1to2()?;
    let lhs = compose(&dc, &cloner)?.choi().into_matrix();
    let rhs = env.choi().output_transpose();
    println!("conjugate degrading map: max deviation from T ∘ N^c {:.2e}", lhs.max_abs_diff(&rhs));
    Ok(())
}
