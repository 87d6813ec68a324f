//! The cloner output spectrum β majorizes the environment spectrum α; checked
//! in exact rationals and shown for one case.

use qcap::cloners::{alpha_vector_exact, beta_coefficients_exact, majorizes_exact, ClonerSpec};

fn main() -> qcap::Result<()> {
    let spec = ClonerSpec::new(2, 5)?;
    println!("N = 2, M = 5");
    println!("  beta:  {:?}", beta_coefficients_exact(spec).iter().map(|r| r.to_string()).collect::<Vec<_>>());
    println!("  alpha: {:?}", alpha_vector_exact(spec).iter().map(|r| r.to_string()).collect::<Vec<_>>());

    let mut checked = 0;
    for m in 1..=20 {
        for n in 1..=m {
            let spec = ClonerSpec::new(n, m)?;
            assert!(majorizes_exact(&beta_coefficients_exact(spec), &alpha_vector_exact(spec))?);
            checked += 1;
        }
    }
    println!("beta majorizes alpha for all {checked} pairs with M <= 20");
    Ok(())
}
