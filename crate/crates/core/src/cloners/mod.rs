//! N → M universal qubit cloners on symmetric subspaces: their
//! coefficients, marginals, degrading maps and capacities.

mod coefficients;
mod css;
mod degrading;
mod machine;

use crate::error::{Error, Result};

pub use coefficients::{
    alpha_j, alpha_j_exact, alpha_kj, alpha_kj_exact, alpha_kj_factorial, alpha_vector_exact, beta_coefficients,
    beta_coefficients_exact, binomial_identity_lhs, binomial_u128, clone_shrink_factor, cloner_capacity_closed_form,
    environment_shrink_factors, majorizes, majorizes_exact, one_to_m_degrading_coefficients, traced_b_eigenvalues,
    traced_b_eigenvalues_exact,
};
pub use css::CssBasis;
pub use degrading::{
    conjugate_degrading_map_1_to_m, conjugate_degrading_map_1to2, conjugate_degrading_map_n_to_n_plus_1,
    degrading_map_1to2,
};
pub use machine::{build_cloner_isometry, clone_marginal, cloner_channel};

/// An N → M cloner, 1 ≤ N ≤ M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClonerSpec {
    n_in: usize,
    m_out: usize,
}

impl ClonerSpec {
    pub fn new(n_in: usize, m_out: usize) -> Result<Self> {
        if n_in == 0 {
            return Err(Error::invalid("a cloner needs at least one input copy"));
        }
        if m_out < n_in {
            return Err(Error::invalid(format!(
                "cannot produce {m_out} clones from {n_in} copies"
            )));
        }
        Ok(ClonerSpec { n_in, m_out })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn m_out(&self) -> usize {
        self.m_out
    }

    /// Environment dimension M − N + 1.
    pub fn env_dim(&self) -> usize {
        self.m_out - self.n_in + 1
    }
}
