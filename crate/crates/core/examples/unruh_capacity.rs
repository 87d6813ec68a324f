//! Quantum capacity of the qubit Unruh channel across acceleration z, with the
//! truncation point and tail bound behind each value.

use qcap::unruh::{block_weights, unruh_capacity_certified};

fn main() -> qcap::Result<()> {
    println!("{:>6} {:>12} {:>5} {:>10}", "z", "Q (bits)", "K", "tail");
    for i in 1..20 {
        let z = i as f64 * 0.05;
        let r = unruh_capacity_certified(z, 1e-12)?;
        println!("{z:>6.2} {:>12.9} {:>5} {:>10.2e}", r.value, r.k_max, r.tail_bound);
    }

    println!("\nfirst block weights at z = 0.5:");
    for k in 1..=5 {
        let w = block_weights(0.5, k);
        println!("  k = {k}: t_k = {:.6}, s_k = {:.6}, s~_k = {:.6}", w.t_k, w.s_k, w.s_tilde_k);
    }
    Ok(())
}
