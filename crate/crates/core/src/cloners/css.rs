use num_complex::Complex64;

use super::coefficients::binomial_u128;
use crate::channels::{compose, KrausChannel};
use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, MAX_ENTRIES};

/// Completely symmetric states of `num_qubits` qubits.
///
/// Index `j` labels the normalized uniform superposition of all bit strings
/// with exactly `j` ones. As spin states this is J_z = n/2 − j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CssBasis {
    num_qubits: usize,
}

impl CssBasis {
    pub fn new(num_qubits: usize) -> Self {
        CssBasis { num_qubits }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.num_qubits + 1
    }

    /// Bit-string description of basis state j, e.g. `|D(3,1)⟩`.
    pub fn label(&self, j: usize) -> String {
        format!("|D({},{j})⟩", self.num_qubits)
    }

    /// Isometry from the symmetric subspace into (C²)^⊗n, first qubit most significant.
    pub fn embedding(&self) -> Result<ComplexMatrix> {
        let n = self.num_qubits;
        if n >= usize::BITS as usize - 1 || (1usize << n).saturating_mul(n + 1) > MAX_ENTRIES {
            return Err(Error::ResourceCap(format!("embedding of {n} qubits is too large")));
        }
        let norms: Vec<f64> = (0..=n)
            .map(|j| 1.0 / (binomial_u128(n as u64, j as u64) as f64).sqrt())
            .collect();
        Ok(ComplexMatrix::from_fn(1 << n, n + 1, |bits, j| {
            if bits.count_ones() as usize == j {
                norms[j].into()
            } else {
                0.0.into()
            }
        }))
    }

    /// Coordinates of ψ^⊗n for a single-qubit vector ψ = (a, b):
    /// component j is sqrt(C(n,j)) a^(n−j) b^j.
    pub fn product_state(&self, psi: [Complex64; 2]) -> Vec<Complex64> {
        let n = self.num_qubits;
        (0..=n)
            .map(|j| {
                let c = (binomial_u128(n as u64, j as u64) as f64).sqrt();
                psi[0].powu((n - j) as u32) * psi[1].powu(j as u32) * c
            })
            .collect()
    }

    /// Kraus pair tracing out one qubit: Sym(n) → Sym(n−1), with
    /// K₀|j⟩ = sqrt((n−j)/n)|j⟩ and K₁|j⟩ = sqrt(j/n)|j−1⟩.
    pub fn single_qubit_trace(&self) -> Result<KrausChannel> {
        let n = self.num_qubits;
        if n == 0 {
            return Err(Error::invalid("cannot trace a qubit out of zero qubits"));
        }
        let nf = n as f64;
        let k0 = ComplexMatrix::from_fn(n, n + 1, |r, c| {
            if r == c {
                ((n - c) as f64 / nf).sqrt().into()
            } else {
                0.0.into()
            }
        });
        let k1 = ComplexMatrix::from_fn(n, n + 1, |r, c| {
            if c == r + 1 {
                (c as f64 / nf).sqrt().into()
            } else {
                0.0.into()
            }
        });
        KrausChannel::new(n + 1, n, vec![k0, k1])
    }

    /// Traces out `count` qubits, leaving Sym(n − count).
    pub fn trace_qubits(&self, count: usize) -> Result<KrausChannel> {
        if count > self.num_qubits {
            return Err(Error::invalid(format!(
                "cannot trace {count} of {} qubits",
                self.num_qubits
            )));
        }
        let mut ch = KrausChannel::identity(self.dim());
        for i in 0..count {
            let step = CssBasis::new(self.num_qubits - i).single_qubit_trace()?;
            ch = merge_kraus(&compose(&step, &ch)?)?;
        }
        Ok(ch)
    }
}

/// Re-expresses a channel with its minimal number of Kraus operators.
fn merge_kraus(ch: &KrausChannel) -> Result<KrausChannel> {
    if ch.num_kraus() <= ch.din() * ch.dout() {
        return Ok(ch.clone());
    }
    crate::channels::Channel::choi(ch).to_kraus()
}
