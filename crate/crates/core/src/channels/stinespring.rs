use super::choi::ChoiMatrix;
use super::kraus::{kraus_to_choi, Channel, KrausChannel};
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

/// Isometry U: A → B ⊗ E with row index `b * denv + e`.
#[derive(Clone, Debug)]
pub struct StinespringIsometry {
    din: usize,
    dout: usize,
    denv: usize,
    u: ComplexMatrix,
}

impl StinespringIsometry {
    pub fn new(din: usize, dout: usize, denv: usize, u: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(din, dout, denv, u, 1e-10)
    }

    pub fn with_tolerance(din: usize, dout: usize, denv: usize, u: ComplexMatrix, tol: f64) -> Result<Self> {
        if din == 0 || dout == 0 || denv == 0 {
            return Err(Error::dim("isometry dimensions must be positive"));
        }
        if u.shape() != (dout * denv, din) {
            return Err(Error::dim(format!(
                "isometry for {din} -> {dout}x{denv} must be {}x{din}, got {}x{}",
                dout * denv,
                u.rows(),
                u.cols()
            )));
        }
        let defect = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(din));
        if defect > tol {
            return Err(Error::invalid(format!("U†U differs from I by {defect:e}")));
        }
        Ok(StinespringIsometry { din, dout, denv, u })
    }

    pub(crate) fn new_unchecked(din: usize, dout: usize, denv: usize, u: ComplexMatrix) -> Self {
        StinespringIsometry { din, dout, denv, u }
    }

    pub fn din(&self) -> usize {
        self.din
    }

    pub fn dout(&self) -> usize {
        self.dout
    }

    pub fn denv(&self) -> usize {
        self.denv
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.u
    }

    /// Kraus operators of the channel to B: E_k[b, a] = U[b*denv + k, a].
    pub fn to_kraus(&self) -> KrausChannel {
        let ops = (0..self.denv)
            .map(|k| ComplexMatrix::from_fn(self.dout, self.din, |b, a| self.u[(b * self.denv + k, a)]))
            .collect();
        KrausChannel::with_tolerance(self.din, self.dout, ops, 1e-8).expect("isometry yields a CPTP map")
    }

    /// Kraus operators of the complementary channel to E: F_b[k, a] = U[b*denv + k, a].
    pub fn complementary(&self) -> KrausChannel {
        self.complementary_isometry().to_kraus()
    }

    /// The same isometry with the roles of B and E exchanged.
    pub fn complementary_isometry(&self) -> StinespringIsometry {
        let (dout, denv) = (self.dout, self.denv);
        let u = ComplexMatrix::from_fn(dout * denv, self.din, |row, a| {
            let (k, b) = (row / dout, row % dout);
            self.u[(b * denv + k, a)]
        });
        StinespringIsometry::new_unchecked(self.din, denv, dout, u)
    }

    /// U X U† on B ⊗ E.
    pub fn joint_output(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.din, self.din) {
            return Err(Error::dim(format!("operator must be {0}x{0}", self.din)));
        }
        Ok(&(&self.u * x) * &self.u.adjoint())
    }
}

impl Channel for StinespringIsometry {
    fn input_dim(&self) -> usize {
        self.din
    }

    fn output_dim(&self) -> usize {
        self.dout
    }

    fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.joint_output(x)?.partial_trace(&[self.dout, self.denv], &[0])
    }

    fn choi(&self) -> ChoiMatrix {
        kraus_to_choi(&self.to_kraus())
    }
}

/// Complementary channel of a Kraus channel, built through its Stinespring dilation.
pub fn complementary(ch: &KrausChannel) -> KrausChannel {
    ch.to_stinespring().complementary()
}
