//! Quantum capacity of every N → M universal cloner with M ≤ 12, compared with
//! the coherent information of the maximally mixed input.

use qcap::capacity::coherent_information;
use qcap::cloners::{build_cloner_isometry, cloner_capacity_closed_form, ClonerSpec};
use qcap::qmat::DensityMatrix;

fn main() -> qcap::Result<()> {
    println!("{:>3} {:>3} {:>14} {:>14} {:>10}", "N", "M", "closed form", "I_c(I/d)", "delta");
    for m in 1..=12 {
        for n in 1..=m {
            let spec = ClonerSpec::new(n, m)?;
            let iso = build_cloner_isometry(spec)?;
            let numeric = coherent_information(&iso, &DensityMatrix::maximally_mixed(n + 1))?;
            let closed = cloner_capacity_closed_form(spec);
            println!("{n:>3} {m:>3} {closed:>14.10} {numeric:>14.10} {:>10.2e}", (numeric - closed).abs());
        }
    }
    Ok(())
}
