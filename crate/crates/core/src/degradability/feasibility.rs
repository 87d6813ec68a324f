use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{complementary, Channel, ChoiMatrix, KrausChannel};
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

/// Which composition relation a map must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// D ∘ N = N^c
    Degradable,
    /// D ∘ N^c = N
    Antidegradable,
    /// D ∘ N = T ∘ N^c
    ConjugateDegradable,
    /// D ∘ N^c = T ∘ N
    ConjugateAntidegradable,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Degradable,
        Mode::Antidegradable,
        Mode::ConjugateDegradable,
        Mode::ConjugateAntidegradable,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Degradable => "degradable",
            Mode::Antidegradable => "antidegradable",
            Mode::ConjugateDegradable => "conjugate_degradable",
            Mode::ConjugateAntidegradable => "conjugate_antidegradable",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == s)
    }

    fn from_environment(&self) -> bool {
        matches!(self, Mode::Antidegradable | Mode::ConjugateAntidegradable)
    }

    fn conjugate(&self) -> bool {
        matches!(self, Mode::ConjugateDegradable | Mode::ConjugateAntidegradable)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Solver settings.
#[derive(Clone, Debug)]
pub struct FeasibilityOptions {
    /// Composition and trace-preservation residual (Frobenius) accepted as feasible.
    pub residual_tol: f64,
    /// Most negative Choi eigenvalue accepted.
    pub psd_tol: f64,
    pub max_iters: usize,
    /// Largest Choi dimension of the unknown map.
    pub max_choi_dim: usize,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        FeasibilityOptions {
            residual_tol: 1e-6,
            psd_tol: 1e-8,
            max_iters: 50_000,
            max_choi_dim: 64,
        }
    }
}

/// Result of a search for a (conjugate) (anti)degrading map.
///
/// `holds = false` only means no map was found; it is not a proof that none exists.
#[derive(Clone, Debug, Serialize)]
pub struct DegradabilityVerdict {
    pub mode: Mode,
    pub holds: bool,
    #[serde(skip)]
    pub witness: Option<ChoiMatrix>,
    /// Frobenius norm of the composition and trace-preservation defect.
    pub residual: f64,
    pub min_eigenvalue: f64,
    pub iterations: usize,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Frobenius defect of `D ∘ source` against the required target for `mode`.
pub fn composition_residual(d: &KrausChannel, ch: &KrausChannel, mode: Mode) -> Result<f64> {
    let (source, target) = relation(ch, mode);
    let lhs = crate::channels::compose(d, &source)?.choi().into_matrix();
    Ok((&lhs - &target).frobenius_norm())
}

/// The source channel and target Choi matrix of the relation D ∘ source = target.
fn relation(ch: &KrausChannel, mode: Mode) -> (KrausChannel, ComplexMatrix) {
    let comp = complementary(ch);
    let (source, other) = if mode.from_environment() {
        (comp, ch.clone())
    } else {
        (ch.clone(), comp)
    };
    let target = if mode.conjugate() {
        other.choi().output_transpose()
    } else {
        other.choi().into_matrix()
    };
    (source, target)
}

/// Affine set {X : D ∘ S = target, Tr_out X = I} in block coordinates.
///
/// X (q·p × q·p, output q first) is stored as the p²×q² matrix whose column
/// (y, y') is the row-major p×p block X_{yy'}. The composition acts on every
/// block through L (din² × p²); trace preservation sums the diagonal blocks.
struct AffineSet {
    p: usize,
    q: usize,
    l: ComplexMatrix,
    /// Right singular vectors of L spanning its row space, as columns (p² × r).
    row_basis: ComplexMatrix,
    /// L⁺ applied to every target block (p² × q²).
    particular: ComplexMatrix,
    targets: ComplexMatrix,
}

impl AffineSet {
    fn new(source: &ComplexMatrix, target: &ComplexMatrix, din: usize, p: usize, q: usize) -> Self {
        // L[(a, a'), (i, i')] = R_S[(i, a), (i', a')]
        let l = ComplexMatrix::from_fn(din * din, p * p, |r, c| {
            let (a, ap) = (r / din, r % din);
            let (i, ip) = (c / p, c % p);
            source[(i * din + a, ip * din + ap)]
        });
        let svd = l.svd();
        let smax = svd.singular_values.first().copied().unwrap_or(0.0);
        let rank = svd.rank(1e-10 * smax.max(1.0));
        let row_basis = ComplexMatrix::from_fn(p * p, rank, |r, k| svd.v_adjoint[(k, r)].conj());
        let targets = ComplexMatrix::from_fn(din * din, q * q, |r, c| {
            let (a, ap) = (r / din, r % din);
            let (y, yp) = (c / q, c % q);
            target[(y * din + a, yp * din + ap)]
        });
        // L⁺ t = V_r Σ⁻¹ U_r† t
        let ut = &svd.u.adjoint() * &targets;
        let scaled = ComplexMatrix::from_fn(rank, q * q, |k, c| ut[(k, c)] / svd.singular_values[k]);
        let particular = &row_basis * &scaled;
        AffineSet {
            p,
            q,
            l,
            row_basis,
            particular,
            targets,
        }
    }

    fn to_blocks(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let (p, q) = (self.p, self.q);
        ComplexMatrix::from_fn(p * p, q * q, |r, c| {
            let (i, ip) = (r / p, r % p);
            let (y, yp) = (c / q, c % q);
            x[(y * p + i, yp * p + ip)]
        })
    }

    fn from_blocks(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let (p, q) = (self.p, self.q);
        ComplexMatrix::from_fn(q * p, q * p, |r, c| {
            let (y, i) = (r / p, r % p);
            let (yp, ip) = (c / p, c % p);
            b[(i * p + ip, y * q + yp)]
        })
    }

    /// Σ_y X_yy − I as a p² vector.
    fn trace_defect(&self, b: &ComplexMatrix) -> Vec<Complex64> {
        let (p, q) = (self.p, self.q);
        (0..p * p)
            .map(|r| {
                let s: Complex64 = (0..q).map(|y| b[(r, y * q + y)]).sum();
                if r / p == r % p {
                    s - 1.0
                } else {
                    s
                }
            })
            .collect()
    }

    /// Orthogonal projection onto the affine set.
    fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let b = self.to_blocks(x);
        let coeff = &self.row_basis.adjoint() * &b;
        let mut out = &(&b - &(&self.row_basis * &coeff)) + &self.particular;
        // w = (I − P)(Σ_y v_yy − e)/q, removed from every diagonal block
        let defect = self.trace_defect(&b);
        let dc = self.row_basis.adjoint().apply(&defect);
        let back = self.row_basis.apply(&dc);
        let q = self.q;
        for r in 0..self.p * self.p {
            let w = (defect[r] - back[r]) / q as f64;
            for y in 0..q {
                out[(r, y * q + y)] -= w;
            }
        }
        self.from_blocks(&out).hermitian_part()
    }

    /// Linear part of the constraints: L applied to every block, then Σ_y X_yy.
    fn constraint_image(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        let b = self.to_blocks(x);
        let (p, q) = (self.p, self.q);
        let mut v = (&self.l * &b).into_vec();
        v.extend((0..p * p).map(|r| (0..q).map(|y| b[(r, y * q + y)]).sum::<Complex64>()));
        v
    }

    fn constraint_rhs(&self) -> Vec<Complex64> {
        let p = self.p;
        let mut v = self.targets.as_slice().to_vec();
        v.extend((0..p * p).map(|r| Complex64::new(if r / p == r % p { 1.0 } else { 0.0 }, 0.0)));
        v
    }

    /// Constraint matrix acting on row-major vec(X).
    fn constraint_matrix(&self) -> ComplexMatrix {
        let n = self.p * self.q;
        let cols: Vec<Vec<Complex64>> = (0..n * n)
            .map(|k| {
                let mut e = ComplexMatrix::zeros(n, n);
                e[(k / n, k % n)] = Complex64::new(1.0, 0.0);
                self.constraint_image(&e)
            })
            .collect();
        ComplexMatrix::from_fn(cols[0].len(), n * n, |r, c| cols[c][r])
    }

    /// Barrier path started near `x`. Every iterate is positive definite, so a
    /// small residual is a certificate. Alternating projections crawl when the
    /// affine set only touches the cone on its boundary; the barrier does not.
    fn polish(&self, x: &ComplexMatrix, opts: &FeasibilityOptions) -> Result<Option<(ComplexMatrix, f64)>> {
        let n = self.p * self.q;
        if n > MAX_POLISH_DIM {
            return Ok(None);
        }
        let eig = x.hermitian_eigensystem()?;
        let top = eig.values.first().copied().unwrap_or(0.0).max(1.0 / self.q as f64);
        let start = &eig.reconstruct_with(|l| l.max(0.0)) + &ComplexMatrix::identity(n).scale_real(1e-6 * top);
        let candidate = barrier_path(&self.constraint_matrix(), &self.constraint_rhs(), &start, 0.5 * opts.residual_tol);
        let residual = self.residual(&candidate);
        if residual < opts.residual_tol {
            let min = candidate.hermitian_eigensystem()?.min();
            if min >= -opts.psd_tol {
                return Ok(Some((candidate, residual)));
            }
        }
        Ok(None)
    }

    fn residual(&self, x: &ComplexMatrix) -> f64 {
        let b = self.to_blocks(x);
        let comp = (&(&self.l * &b) - &self.targets).frobenius_norm();
        let tp: f64 = self.trace_defect(&b).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (comp * comp + tp * tp).sqrt()
    }
}

/// Orthonormal basis of n × n Hermitian matrices: E_ii, then for i < j
/// (E_ij + E_ji)/√2 and i(E_ij − E_ji)/√2.
struct HermitianBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl HermitianBasis {
    fn new(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        HermitianBasis { n, pairs }
    }

    fn len(&self) -> usize {
        self.n * self.n
    }

    fn element(&self, k: usize) -> ComplexMatrix {
        let n = self.n;
        let mut b = ComplexMatrix::zeros(n, n);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        if k < n {
            b[(k, k)] = Complex64::new(1.0, 0.0);
        } else {
            let idx = (k - n) / 2;
            let (i, j) = self.pairs[idx];
            if (k - n) % 2 == 0 {
                b[(i, j)] = Complex64::new(h, 0.0);
                b[(j, i)] = Complex64::new(h, 0.0);
            } else {
                b[(i, j)] = Complex64::new(0.0, h);
                b[(j, i)] = Complex64::new(0.0, -h);
            }
        }
        b
    }

    fn coords(&self, m: &ComplexMatrix) -> Vec<f64> {
        let s = std::f64::consts::SQRT_2;
        let mut v: Vec<f64> = (0..self.n).map(|i| m[(i, i)].re).collect();
        for &(i, j) in &self.pairs {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            v.push(s * z.re);
            v.push(s * z.im);
        }
        v
    }

    fn matrix(&self, x: &[f64]) -> ComplexMatrix {
        let n = self.n;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(x[i], 0.0);
        }
        for (idx, &(i, j)) in self.pairs.iter().enumerate() {
            let z = Complex64::new(x[n + 2 * idx], x[n + 2 * idx + 1]) * h;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
        m
    }
}

/// Inverse of a Hermitian matrix, or `None` unless it is positive definite.
fn positive_inverse(x: &ComplexMatrix) -> Option<(ComplexMatrix, f64)> {
    let eig = x.hermitian_eigensystem().ok()?;
    if eig.min() <= 0.0 {
        return None;
    }
    let logdet = eig.values.iter().map(|l| l.ln()).sum();
    Some((eig.reconstruct_with(|l| 1.0 / l), logdet))
}

/// Path-following Newton on ‖A(X) − rhs‖² − t log det X for decreasing t.
/// Iterates stay positive definite; returns the last one.
fn barrier_path(a: &ComplexMatrix, rhs: &[Complex64], start: &ComplexMatrix, target: f64) -> ComplexMatrix {
    let n = start.rows();
    let basis = HermitianBasis::new(n);
    let dim = basis.len();
    let m = rhs.len();
    // real constraint matrix in Hermitian coordinates
    let mut ar = DMatrix::<f64>::zeros(2 * m, dim);
    for k in 0..dim {
        let img = a.apply(basis.element(k).as_slice());
        for (row, z) in img.iter().enumerate() {
            ar[(row, k)] = z.re;
            ar[(m + row, k)] = z.im;
        }
    }
    let br = DVector::from_iterator(2 * m, rhs.iter().map(|z| z.re).chain(rhs.iter().map(|z| z.im)));
    let gram = ar.transpose() * &ar;
    let atb = ar.transpose() * &br;
    let residual = |x: &DVector<f64>| (&ar * x - &br).norm();

    let mut x = DVector::from_vec(basis.coords(start));
    let r0 = residual(&x);
    let mut t = (r0 * r0).max(target * target);
    for _ in 0..BARRIER_STAGES {
        for _ in 0..BARRIER_NEWTON_STEPS {
            let xm = basis.matrix(x.as_slice());
            let Some((inv, logdet)) = positive_inverse(&xm) else {
                return xm;
            };
            let mut hess = &gram * 2.0;
            let inv_coords = DVector::from_vec(basis.coords(&inv));
            let grad = (&gram * &x - &atb) * 2.0 - &inv_coords * t;
            for k in 0..dim {
                let c = &(&inv * &basis.element(k)) * &inv;
                for (l, v) in basis.coords(&c).into_iter().enumerate() {
                    hess[(k, l)] += t * v;
                }
            }
            let Some(chol) = hess.cholesky() else {
                break;
            };
            let step = chol.solve(&(-&grad));
            let decrement = -grad.dot(&step);
            let value = |x: &DVector<f64>, logdet: f64| {
                let r = residual(x);
                r * r - t * logdet
            };
            let f0 = value(&x, logdet);
            let mut alpha = 1.0;
            let mut moved = false;
            while alpha > 1e-10 {
                let trial = &x + &step * alpha;
                if let Some((_, ld)) = positive_inverse(&basis.matrix(trial.as_slice())) {
                    if value(&trial, ld) <= f0 - 0.25 * alpha * decrement {
                        x = trial;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved || decrement < 1e-3 * t {
                break;
            }
        }
        if residual(&x) < target || t < BARRIER_MIN_WEIGHT {
            break;
        }
        t *= BARRIER_SHRINK;
    }
    basis.matrix(x.as_slice())
}

fn psd_projection(x: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let eig = x.hermitian_eigensystem()?;
    let min = eig.min();
    Ok((eig.reconstruct_with(|l| l.max(0.0)), min))
}

const CHECK_EVERY: usize = 10;
const STALL_WINDOW: usize = 2_000;
const FIRST_POLISH: usize = 1_000;
const MAX_POLISH_DIM: usize = 24;
const BARRIER_STAGES: usize = 60;
const BARRIER_NEWTON_STEPS: usize = 40;
const BARRIER_SHRINK: f64 = 0.2;
const BARRIER_MIN_WEIGHT: f64 = 1e-30;

/// Searches for a CPTP map D with the composition relation of `mode` by
/// Dykstra alternating projections between the PSD cone and the affine set of
/// trace-preserving maps satisfying the relation, finished by a log-barrier
/// path when the projections slow down.
pub fn feasibility_search(ch: &KrausChannel, mode: Mode, opts: &FeasibilityOptions) -> Result<DegradabilityVerdict> {
    let (source, target) = relation(ch, mode);
    let din = ch.din();
    let p = source.dout();
    let q = target.rows() / din;
    if p * q > opts.max_choi_dim || din > opts.max_choi_dim {
        return Err(Error::ResourceCap(format!(
            "{mode} search needs a {}-dimensional Choi matrix (limit {})",
            p * q,
            opts.max_choi_dim
        )));
    }
    let set = AffineSet::new(source.choi().mat(), &target, din, p, q);

    let verdict = |holds: bool, x: Option<ComplexMatrix>, residual: f64, min: f64, it: usize, conv: bool, note: Option<&str>| {
        let witness = x.and_then(|m| ChoiMatrix::with_tolerance(p, q, m, opts.residual_tol.max(opts.psd_tol)).ok());
        DegradabilityVerdict {
            mode,
            holds,
            witness,
            residual,
            min_eigenvalue: min,
            iterations: it,
            converged: conv,
            note: note.map(str::to_owned),
        }
    };

    let polished = |x: &ComplexMatrix, it: usize| -> Result<Option<DegradabilityVerdict>> {
        Ok(set
            .polish(x, opts)?
            .map(|(w, r)| {
                let min = w.hermitian_eigensystem().map(|e| e.min()).unwrap_or(f64::NAN);
                verdict(true, Some(w), r, min, it, true, None)
            }))
    };

    // maximally depolarizing start, already trace preserving
    let start = ComplexMatrix::identity(p * q).scale_real(1.0 / q as f64);
    let y0 = set.project(&start);
    let r0 = set.residual(&y0);
    if r0 > opts.residual_tol {
        return Ok(verdict(
            false,
            None,
            r0,
            f64::NAN,
            0,
            true,
            Some("the composition constraints are inconsistent: no linear map satisfies them"),
        ));
    }

    let mut x = start;
    let mut corr = ComplexMatrix::zeros(p * q, p * q);
    let mut best = (f64::INFINITY, 0.0, ComplexMatrix::zeros(0, 0));
    let mut history: Vec<f64> = Vec::new();
    for it in 1..=opts.max_iters {
        let y = set.project(&x);
        if it % CHECK_EVERY == 1 || it == opts.max_iters {
            let eig_min = y.hermitian_eigensystem()?.min();
            if eig_min >= -opts.psd_tol {
                let r = set.residual(&y);
                return Ok(verdict(true, Some(y), r, eig_min, it, true, None));
            }
        }
        let z = &y + &corr;
        let (xn, _) = psd_projection(&z)?;
        corr = &z - &xn;
        x = xn;
        if it >= FIRST_POLISH && (it / FIRST_POLISH).is_power_of_two() && it % FIRST_POLISH == 0 {
            if let Some(found) = polished(&x, it)? {
                return Ok(found);
            }
        }
        if it % CHECK_EVERY == 0 {
            let r = set.residual(&x);
            if r < best.0 {
                let min = x.hermitian_eigensystem()?.min();
                best = (r, min, x.clone());
            }
            if r < opts.residual_tol {
                let min = best.1;
                return Ok(verdict(min >= -opts.psd_tol, Some(x), r, min, it, true, None));
            }
            history.push(best.0);
            let window = STALL_WINDOW / CHECK_EVERY;
            if history.len() > window {
                let old = history[history.len() - 1 - window];
                if best.0 > 100.0 * opts.residual_tol && best.0 > 0.999 * old {
                    if let Some(found) = polished(&best.2, it)? {
                        return Ok(found);
                    }
                    return Ok(verdict(
                        false,
                        None,
                        best.0,
                        best.1,
                        it,
                        false,
                        Some("residual stalled; no map found (not a proof of absence)"),
                    ));
                }
            }
        }
    }
    if best.2.rows() > 0 {
        if let Some(found) = polished(&best.2, opts.max_iters)? {
            return Ok(found);
        }
    }
    Ok(verdict(
        false,
        None,
        best.0,
        best.1,
        opts.max_iters,
        false,
        Some("iteration cap reached; no map found (not a proof of absence)"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloners::{cloner_channel, ClonerSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn search(ch: &KrausChannel, mode: Mode) -> DegradabilityVerdict {
        feasibility_search(ch, mode, &FeasibilityOptions::default()).unwrap()
    }

    #[test]
    fn projection_lands_in_the_affine_set() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        for mode in Mode::ALL {
            let (source, target) = relation(&ch, mode);
            let p = source.dout();
            let q = target.rows() / 2;
            let set = AffineSet::new(source.choi().mat(), &target, 2, p, q);
            let x = ComplexMatrix::identity(p * q);
            let y = set.project(&x);
            let yy = set.project(&y);
            assert!(yy.max_abs_diff(&y) < 1e-12, "{mode}");
            if set.residual(&y) < 1e-10 {
                // projection is orthogonal: x − y is orthogonal to differences within the set
                let y2 = set.project(&ComplexMatrix::identity(p * q).scale_real(0.3));
                let inner = (&x - &y).inner(&(&y2 - &y));
                assert!(inner.norm() < 1e-10, "{mode}");
            }
        }
    }

    #[test]
    fn identity_channel_is_degradable() {
        let v = search(&KrausChannel::identity(2), Mode::Degradable);
        assert!(v.holds);
        assert!(v.witness.is_some());
    }

    #[test]
    fn constant_channel_is_antidegradable() {
        let zero = [1.0.into(), 0.0.into()];
        let ch = KrausChannel::constant(2, &zero).unwrap();
        assert!(search(&ch, Mode::Antidegradable).holds);
        assert!(search(&ch, Mode::ConjugateAntidegradable).holds);
    }

    #[test]
    fn cloner_one_to_two() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let cd = search(&ch, Mode::ConjugateDegradable);
        assert!(cd.holds, "{cd:?}");
        assert!(cd.residual < 1e-6 && cd.min_eigenvalue >= -1e-8);
        let d = cd.witness.unwrap().to_kraus().unwrap();
        assert!(composition_residual(&d, &ch, Mode::ConjugateDegradable).unwrap() < 1e-5);
        let dg = search(&ch, Mode::Degradable);
        assert!(dg.holds, "{dg:?}");
        assert!(!search(&ch, Mode::Antidegradable).holds);
        assert!(!search(&ch, Mode::ConjugateAntidegradable).holds);
    }

    #[test]
    fn complement_of_cloner_is_conjugate_antidegradable() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let comp = complementary(&ch);
        assert!(search(&comp, Mode::ConjugateAntidegradable).holds);
    }

    #[test]
    fn hermitian_basis_round_trip() {
        let basis = HermitianBasis::new(3);
        let h = ComplexMatrix::from_fn(3, 3, |r, c| Complex64::new((r + 2 * c) as f64, r as f64 - c as f64)).hermitian_part();
        assert!(basis.matrix(&basis.coords(&h)).max_abs_diff(&h) < 1e-14);
        for k in 0..basis.len() {
            for l in 0..basis.len() {
                let ip = basis.element(k).inner(&basis.element(l)).re;
                assert!((ip - if k == l { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn measure_and_prepare_channel_needs_the_barrier() {
        // every feasible map is rank deficient, which stalls the projections
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let kets = [[1.0, 0.0], [s, s], [0.6, -0.8]];
        let v = crate::qmat::random::random_isometry(3, 2, &mut ChaCha8Rng::seed_from_u64(3));
        let ops = (0..3)
            .map(|i| {
                let psi: Vec<Complex64> = kets[i].iter().map(|&x| x.into()).collect();
                let bra: Vec<Complex64> = v.row(i).iter().map(|z| z.conj()).collect();
                ComplexMatrix::outer(&psi, &bra)
            })
            .collect();
        let ch = KrausChannel::new(2, 2, ops).unwrap();
        let v = search(&ch, Mode::ConjugateAntidegradable);
        assert!(v.holds, "{v:?}");
        assert!(v.iterations >= FIRST_POLISH);
        assert!(v.residual < 1e-6);
    }

    #[test]
    fn resource_cap() {
        let ch = cloner_channel(ClonerSpec::new(1, 2).unwrap()).unwrap();
        let opts = FeasibilityOptions {
            max_choi_dim: 4,
            ..Default::default()
        };
        assert!(matches!(
            feasibility_search(&ch, Mode::Degradable, &opts),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn mode_names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(Mode::parse(m.name()), Some(m));
        }
        assert_eq!(Mode::parse("nonsense"), None);
    }
}
