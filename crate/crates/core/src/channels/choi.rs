use super::kraus::{Channel, KrausChannel};
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

/// Eigenvalues below this are treated as violations of complete positivity.
pub const CP_TOL: f64 = 1e-8;

/// Eigenvalues at or below this are dropped when extracting Kraus operators.
pub const KRAUS_CUTOFF: f64 = 1e-10;

/// Choi matrix R = (N ⊗ id)(Φ) with Φ = Σ_ij |ii⟩⟨jj| unnormalized.
///
/// The output factor comes first: `R[(b*din + a), (b'*din + a')] = N(|a⟩⟨a'|)[b, b']`.
/// A valid Choi matrix is positive semidefinite with partial trace over the
/// output equal to the identity, hence trace `din`.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    din: usize,
    dout: usize,
    mat: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn new(din: usize, dout: usize, mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(din, dout, mat, CP_TOL)
    }

    /// Validates positivity and trace preservation to within `tol`.
    pub fn with_tolerance(din: usize, dout: usize, mat: ComplexMatrix, tol: f64) -> Result<Self> {
        let n = din * dout;
        if din == 0 || dout == 0 || mat.shape() != (n, n) {
            return Err(Error::dim(format!(
                "Choi matrix for {din} -> {dout} must be {n}x{n}, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > tol {
            return Err(Error::invalid(format!("Choi matrix is not Hermitian: defect {defect:e}")));
        }
        let mat = mat.hermitian_part();
        let min_eigenvalue = mat.hermitian_eigensystem()?.min();
        if min_eigenvalue < -tol {
            return Err(Error::NotCompletelyPositive { min_eigenvalue });
        }
        let choi = ChoiMatrix { din, dout, mat };
        let tp = choi.trace_preservation_defect();
        if tp > tol {
            return Err(Error::invalid(format!(
                "map is not trace preserving: max |Tr_out R - I| = {tp:e}"
            )));
        }
        Ok(choi)
    }

    pub(crate) fn from_parts(din: usize, dout: usize, mat: ComplexMatrix) -> Self {
        ChoiMatrix { din, dout, mat }
    }

    pub fn din(&self) -> usize {
        self.din
    }

    pub fn dout(&self) -> usize {
        self.dout
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.mat.hermitian_eigenvalues().expect("Choi matrices are Hermitian")
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&l| l > tol).count()
    }

    /// max |Tr_out R - I|.
    pub fn trace_preservation_defect(&self) -> f64 {
        let reduced = self
            .mat
            .partial_trace(&[self.dout, self.din], &[1])
            .expect("dimensions checked at construction");
        reduced.max_abs_diff(&ComplexMatrix::identity(self.din))
    }

    /// Partial transpose on the output factor, the Choi matrix of T ∘ N.
    pub fn output_transpose(&self) -> ComplexMatrix {
        self.mat
            .partial_transpose(&[self.dout, self.din], 0)
            .expect("dimensions checked at construction")
    }

    /// Natural (transfer) matrix acting on row-major vectorizations.
    pub fn natural(&self) -> ComplexMatrix {
        reshuffle(&self.mat, self.dout, self.din).expect("dimensions checked at construction")
    }

    pub fn to_kraus(&self) -> Result<KrausChannel> {
        choi_to_kraus(self)
    }
}

impl Channel for ChoiMatrix {
    fn input_dim(&self) -> usize {
        self.din
    }

    fn output_dim(&self) -> usize {
        self.dout
    }

    /// N(X)[b, b'] = Σ_{a,a'} X[a, a'] R[(b,a), (b',a')].
    fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        apply_choi(&self.mat, self.din, self.dout, x)
    }

    fn choi(&self) -> ChoiMatrix {
        self.clone()
    }
}

/// Applies the linear map whose Choi matrix (output ⊗ input) is `r`; no positivity required.
pub fn apply_choi(r: &ComplexMatrix, din: usize, dout: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if r.shape() != (din * dout, din * dout) {
        return Err(Error::dim("Choi matrix does not match the stated dimensions"));
    }
    if x.shape() != (din, din) {
        return Err(Error::dim(format!(
            "operator is {}x{}, map input is {din}",
            x.rows(),
            x.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(dout, dout, |b, bp| {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for a in 0..din {
            for ap in 0..din {
                acc += x[(a, ap)] * r[(b * din + a, bp * din + ap)];
            }
        }
        acc
    }))
}

/// Choi matrix (output ⊗ input) of an arbitrary linear map given by its action on operators.
pub fn choi_of_linear_map(
    din: usize,
    dout: usize,
    f: impl Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    let n = din * dout;
    let mut r = ComplexMatrix::zeros(n, n);
    for a in 0..din {
        for ap in 0..din {
            let mut unit = ComplexMatrix::zeros(din, din);
            unit[(a, ap)] = 1.0.into();
            let img = f(&unit)?;
            if img.shape() != (dout, dout) {
                return Err(Error::dim(format!(
                    "map produced a {}x{} operator, expected {dout}x{dout}",
                    img.rows(),
                    img.cols()
                )));
            }
            for b in 0..dout {
                for bp in 0..dout {
                    r[(b * din + a, bp * din + ap)] = img[(b, bp)];
                }
            }
        }
    }
    Ok(r)
}

/// Spectral decomposition of R: E_k = sqrt(λ_k) · reshape(v_k) for λ_k above [`KRAUS_CUTOFF`].
pub fn choi_to_kraus(choi: &ChoiMatrix) -> Result<KrausChannel> {
    let eig = choi.mat.hermitian_eigensystem()?;
    if eig.min() < -CP_TOL {
        return Err(Error::NotCompletelyPositive {
            min_eigenvalue: eig.min(),
        });
    }
    let (din, dout) = (choi.din, choi.dout);
    let mut ops = Vec::new();
    for (k, &l) in eig.values.iter().enumerate() {
        if l <= KRAUS_CUTOFF {
            continue;
        }
        let s = l.sqrt();
        ops.push(ComplexMatrix::from_fn(dout, din, |b, a| eig.vectors[(b * din + a, k)] * s));
    }
    if ops.is_empty() {
        return Err(Error::invalid("Choi matrix has no positive eigenvalues"));
    }
    KrausChannel::with_tolerance(din, dout, ops, CP_TOL)
}

/// Γ reshuffle from Choi layout to natural layout:
/// `out[(i*dout + k), (j*din + l)] = m[(i*din + j), (k*din + l)]`.
///
/// The result is dout²×din² and maps row-major vec(X) to vec(N(X)); it is an
/// involution when `dout == din`.
pub fn reshuffle(m: &ComplexMatrix, dout: usize, din: usize) -> Result<ComplexMatrix> {
    let n = dout * din;
    if m.shape() != (n, n) {
        return Err(Error::dim(format!(
            "reshuffle expects a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(dout * dout, din * din, |r, c| {
        let (i, k) = (r / dout, r % dout);
        let (j, l) = (c / din, c % din);
        m[(i * din + j, k * din + l)]
    }))
}

/// Inverse of [`reshuffle`]: natural layout back to Choi layout.
pub fn natural_to_choi(nat: &ComplexMatrix, dout: usize, din: usize) -> Result<ComplexMatrix> {
    if nat.shape() != (dout * dout, din * din) {
        return Err(Error::dim(format!(
            "natural matrix for {din} -> {dout} must be {}x{}, got {}x{}",
            dout * dout,
            din * din,
            nat.rows(),
            nat.cols()
        )));
    }
    let n = dout * din;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / din, r % din);
        let (k, l) = (c / din, c % din);
        nat[(i * dout + k, j * din + l)]
    }))
}

/// The reshuffle Γ on a square bipartite matrix with both factors of dimension `d`.
pub fn gamma_involution(m: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    reshuffle(m, d, d)
}
