//! Runs the full classification on a handful of familiar channels.

use qcap::channels::KrausChannel;
use qcap::cloners::{cloner_channel, ClonerSpec};
use qcap::degradability::{classify, rank2_qubit_channel, FeasibilityOptions, Mode, Rank2QubitParams};

fn main() -> qcap::Result<()> {
    let q = std::f64::consts::FRAC_PI_4;
    let channels = vec![
        ("identity", KrausChannel::identity(2)),
        ("depolarizing 0.9", KrausChannel::depolarizing(2, 0.9)?),
        ("depolarizing 0.2", KrausChannel::depolarizing(2, 0.2)?),
        ("cloner 1 -> 2", cloner_channel(ClonerSpec::new(1, 2)?)?),
        ("cloner 2 -> 3", cloner_channel(ClonerSpec::new(2, 3)?)?),
        ("rank-2 on EB manifold", rank2_qubit_channel(Rank2QubitParams::new(q, q))),
    ];
    let opts = FeasibilityOptions::default();
    for (name, ch) in channels {
        let report = classify(&ch, &Mode::ALL, &opts)?;
        println!("{name} ({} -> {}, env {})", report.din, report.dout, report.denv);
        println!("  entanglement breaking: {}", report.entanglement_breaking);
        for v in &report.verdicts {
            println!("  {:<26} {:<5} residual {:.1e}", v.mode.name(), v.holds, v.residual);
        }
    }
    Ok(())
}
