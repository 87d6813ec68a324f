use num_complex::Complex64;
use rand::Rng;

use super::choi::ChoiMatrix;
use super::stinespring::StinespringIsometry;
use crate::error::{Error, Result};
use crate::qmat::random::random_isometry;
use crate::qmat::{ComplexMatrix, DensityMatrix};

/// Completeness tolerance for Σ E_k† E_k = I.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// Common surface of the three channel representations.
pub trait Channel {
    fn input_dim(&self) -> usize;
    fn output_dim(&self) -> usize;

    /// Applies the linear extension of the map to an arbitrary din×din operator.
    fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix>;

    fn choi(&self) -> ChoiMatrix;
}

/// Applies a channel to a state and validates the output.
pub fn apply<C: Channel + ?Sized>(ch: &C, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.input_dim() {
        return Err(Error::dim(format!(
            "channel expects a {}-dimensional input, state is {}-dimensional",
            ch.input_dim(),
            rho.dim()
        )));
    }
    let out = ch.apply_operator(rho.matrix())?;
    DensityMatrix::with_tolerance(out, rho.tol().max(DensityMatrix::DEFAULT_TOL))
}

/// Number of Choi eigenvalues above 1e-9.
pub fn choi_rank<C: Channel + ?Sized>(ch: &C) -> usize {
    ch.choi().rank(1e-9)
}

/// CPTP map in Kraus form; every operator is dout×din.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    din: usize,
    dout: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(din: usize, dout: usize, ops: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(din, dout, ops, COMPLETENESS_TOL)
    }

    pub fn with_tolerance(din: usize, dout: usize, ops: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        if din == 0 || dout == 0 {
            return Err(Error::dim("channel dimensions must be positive"));
        }
        if ops.is_empty() {
            return Err(Error::invalid("a channel needs at least one Kraus operator"));
        }
        if let Some((i, op)) = ops.iter().enumerate().find(|(_, op)| op.shape() != (dout, din)) {
            return Err(Error::dim(format!(
                "Kraus operator {i} is {}x{}, expected {dout}x{din}",
                op.rows(),
                op.cols()
            )));
        }
        let ch = KrausChannel { din, dout, ops };
        let defect = ch.completeness_defect();
        if defect > tol {
            return Err(Error::invalid(format!(
                "Kraus operators are not trace preserving: max |Σ E†E - I| = {defect:e}"
            )));
        }
        Ok(ch)
    }

    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.din, self.din);
        for op in &self.ops {
            sum += &(&op.adjoint() * op);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.din))
    }

    pub fn identity(d: usize) -> Self {
        KrausChannel {
            din: d,
            dout: d,
            ops: vec![ComplexMatrix::identity(d)],
        }
    }

    /// ρ ↦ UρU† for an isometry U (dout×din).
    pub fn isometric(u: ComplexMatrix) -> Result<Self> {
        let (dout, din) = u.shape();
        Self::new(din, dout, vec![u])
    }

    /// ρ ↦ Tr(ρ)|φ⟩⟨φ|.
    pub fn constant(din: usize, phi: &[Complex64]) -> Result<Self> {
        let ops = (0..din)
            .map(|a| ComplexMatrix::from_fn(phi.len(), din, |r, c| if c == a { phi[r] } else { 0.0.into() }))
            .collect();
        Self::new(din, phi.len(), ops)
    }

    /// ρ ↦ sρ + (1-s) Tr(ρ) I/d, completely positive for -1/(d²-1) ≤ s ≤ 1.
    pub fn depolarizing(d: usize, shrink: f64) -> Result<Self> {
        let dd = (d * d) as f64;
        if shrink > 1.0 + 1e-12 || shrink < -1.0 / (dd - 1.0) - 1e-12 {
            return Err(Error::invalid(format!(
                "depolarizing parameter {shrink} is outside the completely positive range"
            )));
        }
        let mut ops = Vec::with_capacity(d * d);
        // Weyl–Heisenberg basis: X^a Z^b / sqrt(d)
        let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64);
        let p_id = ((1.0 + (dd - 1.0) * shrink) / dd).max(0.0).sqrt();
        let p_other = ((1.0 - shrink) / dd).max(0.0).sqrt();
        for a in 0..d {
            for b in 0..d {
                let w = if a == 0 && b == 0 { p_id } else { p_other };
                if w == 0.0 {
                    continue;
                }
                ops.push(ComplexMatrix::from_fn(d, d, |r, c| {
                    if r == (c + a) % d {
                        omega(b * c % d) * w
                    } else {
                        0.0.into()
                    }
                }));
            }
        }
        Self::new(d, d, ops)
    }

    /// Haar-random channel with `n_kraus` operators.
    pub fn random<R: Rng + ?Sized>(din: usize, dout: usize, n_kraus: usize, rng: &mut R) -> Self {
        let v = random_isometry(dout * n_kraus, din, rng);
        StinespringIsometry::new_unchecked(din, dout, n_kraus, v).to_kraus()
    }

    pub fn din(&self) -> usize {
        self.din
    }

    pub fn dout(&self) -> usize {
        self.dout
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn num_kraus(&self) -> usize {
        self.ops.len()
    }

    /// Convex combination p·self + (1-p)·other.
    pub fn mixture(&self, p: f64, other: &KrausChannel) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("mixing weight {p} outside [0, 1]")));
        }
        if self.din != other.din || self.dout != other.dout {
            return Err(Error::dim("mixed channels must share input and output dimensions"));
        }
        let ops = self
            .ops
            .iter()
            .map(|e| e.scale_real(p.sqrt()))
            .chain(other.ops.iter().map(|e| e.scale_real((1.0 - p).sqrt())))
            .collect();
        Self::with_tolerance(self.din, self.dout, ops, 1e-9)
    }

    /// self ⊗ other acting on A₁A₂ → B₁B₂.
    pub fn tensor(&self, other: &KrausChannel) -> Result<Self> {
        let mut ops = Vec::with_capacity(self.ops.len() * other.ops.len());
        for a in &self.ops {
            for b in &other.ops {
                ops.push(a.kron(b)?);
            }
        }
        Self::with_tolerance(self.din * other.din, self.dout * other.dout, ops, 1e-9)
    }

    /// Kraus operators conjugated entrywise: the map X ↦ conj(N(conj X)).
    pub fn conjugated(&self) -> Self {
        KrausChannel {
            din: self.din,
            dout: self.dout,
            ops: self.ops.iter().map(ComplexMatrix::conjugate).collect(),
        }
    }

    pub fn to_stinespring(&self) -> StinespringIsometry {
        kraus_to_stinespring(self)
    }
}

impl Channel for KrausChannel {
    fn input_dim(&self) -> usize {
        self.din
    }

    fn output_dim(&self) -> usize {
        self.dout
    }

    fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.din, self.din) {
            return Err(Error::dim(format!(
                "operator is {}x{}, channel input is {}",
                x.rows(),
                x.cols(),
                self.din
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dout, self.dout);
        for e in &self.ops {
            out += &(&(e * x) * &e.adjoint());
        }
        Ok(out)
    }

    fn choi(&self) -> ChoiMatrix {
        kraus_to_choi(self)
    }
}

/// R = Σ_k vec(E_k) vec(E_k)† on output ⊗ input, with |Φ⟩ = Σ_i |ii⟩ unnormalized.
pub fn kraus_to_choi(ch: &KrausChannel) -> ChoiMatrix {
    let n = ch.din * ch.dout;
    let mut mat = ComplexMatrix::zeros(n, n);
    for e in &ch.ops {
        let v = e.as_slice();
        for r in 0..n {
            if v[r] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..n {
                mat[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    ChoiMatrix::from_parts(ch.din, ch.dout, mat)
}

/// U|ψ⟩ = Σ_k E_k|ψ⟩ ⊗ |k⟩, output ordering B ⊗ E.
pub fn kraus_to_stinespring(ch: &KrausChannel) -> StinespringIsometry {
    let denv = ch.ops.len();
    let u = ComplexMatrix::from_fn(ch.dout * denv, ch.din, |row, a| {
        let (b, k) = (row / denv, row % denv);
        ch.ops[k][(b, a)]
    });
    StinespringIsometry::new_unchecked(ch.din, ch.dout, denv, u)
}

/// `second ∘ first`: all pairwise Kraus products.
pub fn compose(second: &KrausChannel, first: &KrausChannel) -> Result<KrausChannel> {
    if first.dout != second.din {
        return Err(Error::dim(format!(
            "cannot compose: first map outputs dimension {}, second expects {}",
            first.dout, second.din
        )));
    }
    let mut ops = Vec::with_capacity(first.ops.len() * second.ops.len());
    for s in &second.ops {
        for f in &first.ops {
            let p = s * f;
            if p.frobenius_norm() > 0.0 {
                ops.push(p);
            }
        }
    }
    if ops.is_empty() {
        ops.push(ComplexMatrix::zeros(second.dout, first.din));
    }
    KrausChannel::with_tolerance(first.din, second.dout, ops, 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::random::random_density;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_incomplete_kraus_sets() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(KrausChannel::new(2, 2, vec![half]), Err(Error::Validation(_))));
        let wrong_shape = ComplexMatrix::identity(3);
        assert!(matches!(KrausChannel::new(2, 2, vec![wrong_shape]), Err(Error::Dimension(_))));
    }

    #[test]
    fn identity_channel_fixes_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density(3, 2, &mut rng);
        let out = apply(&KrausChannel::identity(3), &rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn apply_checks_dimensions() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(apply(&KrausChannel::identity(2), &rho), Err(Error::Dimension(_))));
    }

    #[test]
    fn depolarizing_shrinks_bloch_vectors() {
        for s in [-1.0 / 3.0, 0.0, 0.25, 0.9, 1.0] {
            let ch = KrausChannel::depolarizing(2, s).unwrap();
            let rho = DensityMatrix::from_bloch([0.6, 0.0, 0.8]).unwrap();
            let r = apply(&ch, &rho).unwrap().bloch_vector().unwrap();
            assert!((r[0] - 0.6 * s).abs() < 1e-12 && (r[2] - 0.8 * s).abs() < 1e-12);
        }
        assert!(KrausChannel::depolarizing(2, -0.5).is_err());
    }

    #[test]
    fn composing_depolarizing_maps_multiplies_shrinks() {
        let a = KrausChannel::depolarizing(2, 0.8).unwrap();
        let b = KrausChannel::depolarizing(2, 0.5).unwrap();
        let ab = compose(&b, &a).unwrap();
        let rho = DensityMatrix::from_bloch([0.0, 1.0, 0.0]).unwrap();
        let r = apply(&ab, &rho).unwrap().bloch_vector().unwrap();
        assert!((r[1] - 0.4).abs() < 1e-12);
        assert!(ab.choi().mat().max_abs_diff(KrausChannel::depolarizing(2, 0.4).unwrap().choi().mat()) < 1e-12);
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ch = KrausChannel::random(2, 3, 2, &mut rng);
        let left = compose(&KrausChannel::identity(3), &ch).unwrap();
        let right = compose(&ch, &KrausChannel::identity(2)).unwrap();
        assert!(left.choi().mat().max_abs_diff(ch.choi().mat()) < 1e-10);
        assert!(right.choi().mat().max_abs_diff(ch.choi().mat()) < 1e-10);
        assert!(matches!(compose(&ch, &ch), Err(Error::Dimension(_))));
    }

    #[test]
    fn constant_channel_choi_structure() {
        let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let ch = KrausChannel::constant(3, &zero).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[1.0, 0.0])
            .kron(&ComplexMatrix::identity(3))
            .unwrap();
        assert!(ch.choi().mat().max_abs_diff(&expected) < 1e-15);
        assert_eq!(choi_rank(&ch), 3);
    }

    #[test]
    fn choi_ranks_of_standard_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let u = crate::qmat::random::random_unitary(3, &mut rng);
        assert_eq!(choi_rank(&KrausChannel::isometric(u).unwrap()), 1);
        let full = KrausChannel::depolarizing(2, 0.0).unwrap();
        assert_eq!(choi_rank(&full), 4);
        assert!(full.choi().mat().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.5)) < 1e-12);
    }

    #[test]
    fn identity_channel_choi_is_unnormalized_bell_projector() {
        let choi = KrausChannel::identity(2).choi();
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        assert_eq!(choi.mat(), &expected);
        assert!((choi.mat().trace().re - 2.0).abs() < 1e-15);
        assert_eq!(choi.rank(1e-9), 1);
    }
}
