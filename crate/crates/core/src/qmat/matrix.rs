use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest number of entries a single matrix may hold.
pub const MAX_ENTRIES: usize = 1 << 24;

/// Dense complex matrix stored row-major.
///
/// Multi-partite indices follow the Kronecker convention: for subsystem
/// dimensions `[d0, d1, .., dk]` the flat index is `((i0 * d1 + i1) * d2 + i2) ...`,
/// so the first subsystem is the most significant digit.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::dim(format!("empty shape {rows}x{cols}")));
    }
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_ENTRIES => Ok(()),
        _ => Err(Error::dim(format!(
            "{rows}x{cols} exceeds the maximum of {MAX_ENTRIES} entries"
        ))),
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting wrong lengths and non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        check_shape(rows, cols)?;
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("matrix has non-finite entries"));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Column vector |v⟩.
    pub fn ket(v: &[Complex64]) -> Self {
        ComplexMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.data[r * self.cols + c]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conjugate(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hilbert–Schmidt inner product Tr(self† other).
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.data[r * n + c] - self.data[c * n + r].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// (M + M†) / 2.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square(), "hermitian_part of a non-square matrix");
        let n = self.rows;
        Self::from_fn(n, n, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or_else(|| Error::dim("row count overflow"))?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or_else(|| Error::dim("column count overflow"))?;
        check_shape(rows, cols)?;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for br in 0..other.rows {
                    let row = ar * other.rows + br;
                    let base = row * cols + ac * other.cols;
                    for bc in 0..other.cols {
                        out.data[base + bc] = a * other.data[br * other.cols + bc];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced matrix on the subsystems listed in `keep`, in their original order.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let layout = Layout::new(dims, self)?;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&bad) = kept.iter().find(|&&s| s >= dims.len()) {
            return Err(Error::dim(format!(
                "subsystem {bad} out of range for {} subsystems",
                dims.len()
            )));
        }
        let traced: Vec<usize> = (0..dims.len()).filter(|s| !kept.contains(s)).collect();
        let kept_dims: Vec<usize> = kept.iter().map(|&s| dims[s]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&s| dims[s]).collect();
        let dk: usize = kept_dims.iter().product();
        let dt: usize = traced_dims.iter().product();

        // full index for every (kept, traced) pair
        let mut full = vec![0usize; dk * dt];
        for k in 0..dk {
            let kd = split_index(k, &kept_dims);
            for t in 0..dt {
                let td = split_index(t, &traced_dims);
                let mut idx = 0;
                for (pos, &s) in kept.iter().enumerate() {
                    idx += kd[pos] * layout.strides[s];
                }
                for (pos, &s) in traced.iter().enumerate() {
                    idx += td[pos] * layout.strides[s];
                }
                full[k * dt + t] = idx;
            }
        }

        let n = layout.total;
        let mut out = Self::zeros(dk, dk);
        for t in 0..dt {
            for r in 0..dk {
                let fr = full[r * dt + t];
                for c in 0..dk {
                    let fc = full[c * dt + t];
                    out.data[r * dk + c] += self.data[fr * n + fc];
                }
            }
        }
        Ok(out)
    }

    /// Transposes the tensor factor `subsystem` only.
    pub fn partial_transpose(&self, dims: &[usize], subsystem: usize) -> Result<Self> {
        let layout = Layout::new(dims, self)?;
        if subsystem >= dims.len() {
            return Err(Error::dim(format!(
                "subsystem {subsystem} out of range for {} subsystems",
                dims.len()
            )));
        }
        let n = layout.total;
        let stride = layout.strides[subsystem];
        let d = dims[subsystem];
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            let dr = (r / stride) % d;
            for c in 0..n {
                let dc = (c / stride) % d;
                let r2 = r - dr * stride + dc * stride;
                let c2 = c - dc * stride + dr * stride;
                out.data[r2 * n + c2] = self.data[r * n + c];
            }
        }
        Ok(out)
    }

    /// Reorders the tensor factors of a square matrix: output factor `i` is input factor `perm[i]`.
    pub fn permute_subsystems(&self, dims: &[usize], perm: &[usize]) -> Result<Self> {
        let layout = Layout::new(dims, self)?;
        let index_map = permutation_index_map(dims, perm)?;
        let n = layout.total;
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.data[index_map[r] * n + index_map[c]] = self.data[r * n + c];
            }
        }
        Ok(out)
    }

    /// Reorders the tensor factors of the row space only (for isometries).
    pub fn permute_row_subsystems(&self, dims: &[usize], perm: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if total != self.rows {
            return Err(Error::dim(format!(
                "row dimension {} does not match subsystem product {total}",
                self.rows
            )));
        }
        let index_map = permutation_index_map(dims, perm)?;
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            let dst = index_map[r];
            out.data[dst * self.cols..(dst + 1) * self.cols].copy_from_slice(self.row(r));
        }
        Ok(out)
    }
}

/// Maps each flat index under `dims` to its flat index after reordering factors by `perm`.
fn permutation_index_map(dims: &[usize], perm: &[usize]) -> Result<Vec<usize>> {
    let k = dims.len();
    let mut seen = vec![false; k];
    if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::dim(format!("{perm:?} is not a permutation of 0..{k}")));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut new_strides = vec![1usize; k];
    for s in (0..k.saturating_sub(1)).rev() {
        new_strides[s] = new_strides[s + 1] * new_dims[s + 1];
    }
    let total: usize = dims.iter().product();
    Ok((0..total)
        .map(|i| {
            let digits = split_index(i, dims);
            perm.iter()
                .enumerate()
                .map(|(pos, &src)| digits[src] * new_strides[pos])
                .sum()
        })
        .collect())
}

pub(crate) fn split_index(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

struct Layout {
    strides: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(dims: &[usize], m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::dim(format!("expected a square matrix, got {}x{}", m.rows, m.cols)));
        }
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::dim(format!("invalid subsystem dimensions {dims:?}")));
        }
        let total: usize = dims.iter().product();
        if total != m.rows {
            return Err(Error::dim(format!(
                "subsystem dimensions {dims:?} multiply to {total}, matrix is {}x{}",
                m.rows, m.cols
            )));
        }
        let mut strides = vec![1usize; dims.len()];
        for s in (0..dims.len() - 1).rev() {
            strides[s] = strides[s + 1] * dims[s + 1];
        }
        Ok(Layout { strides, total })
    }
}

/// Kronecker product with the first argument as the most significant index.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.kron(b)
}

pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    m.partial_trace(dims, keep)
}

pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], subsystem: usize) -> Result<ComplexMatrix> {
    m.partial_transpose(dims, subsystem)
}

pub fn conjugate(m: &ComplexMatrix) -> ComplexMatrix {
    m.conjugate()
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Mul<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let i4 = ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn diagonal_tensor_product() {
        let a = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert_eq!(tensor_product(&a, &b).unwrap(), ComplexMatrix::from_diagonal(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn xx_flips_both_qubits() {
        let xx = sigma_x().kron(&sigma_x()).unwrap();
        let ket00 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let out = xx.apply(&ket00);
        assert_eq!(out, vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn kron_rejects_oversized_products() {
        let big = ComplexMatrix::zeros(4096, 1);
        let err = big.kron(&ComplexMatrix::zeros(8192, 1)).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn from_vec_rejects_nan_and_bad_length() {
        assert!(ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn bell_state_marginals_are_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let rho = ComplexMatrix::outer(&psi, &psi);
        let half_id = ComplexMatrix::identity(2).scale_real(0.5);
        for keep in [0, 1] {
            let red = rho.partial_trace(&[2, 2], &[keep]).unwrap();
            assert!(red.max_abs_diff(&half_id) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_state() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]).unwrap();
        let b = ComplexMatrix::from_diagonal(&[0.2, 0.5, 0.3]);
        let ab = a.kron(&b).unwrap();
        assert!(ab.partial_trace(&[2, 3], &[0]).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(ab.partial_trace(&[2, 3], &[1]).unwrap().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_original_order() {
        let a = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::from_diagonal(&[0.0, 1.0, 0.0]);
        let d = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        let abd = a.kron(&b).unwrap().kron(&d).unwrap();
        let kept = abd.partial_trace(&[2, 3, 2], &[2, 0]).unwrap();
        assert!(kept.max_abs_diff(&a.kron(&d).unwrap()) < 1e-15);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(m.partial_trace(&[2, 3], &[0]), Err(Error::Dimension(_))));
        assert!(matches!(m.partial_trace(&[2, 2], &[5]), Err(Error::Dimension(_))));
        assert!(matches!(m.partial_transpose(&[3], 0), Err(Error::Dimension(_))));
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let m = ComplexMatrix::from_fn(6, 6, |r, c| Complex64::new(r as f64 * 0.3 - c as f64, (r * c) as f64 * 0.1));
        for sub in 0..2 {
            let twice = m
                .partial_transpose(&[2, 3], sub)
                .unwrap()
                .partial_transpose(&[2, 3], sub)
                .unwrap();
            assert_eq!(twice, m);
        }
    }

    #[test]
    fn full_partial_transposes_compose_to_transpose() {
        let m = ComplexMatrix::from_fn(6, 6, |r, c| Complex64::new((r + 2 * c) as f64, r as f64 - c as f64));
        let both = m
            .partial_transpose(&[3, 2], 0)
            .unwrap()
            .partial_transpose(&[3, 2], 1)
            .unwrap();
        assert_eq!(both, m.transpose());
    }

    #[test]
    fn conjugation_is_an_involution_and_fixes_real_matrices() {
        let real = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(real.conjugate(), real);
        let m = ComplexMatrix::from_fn(3, 3, |r, c| Complex64::new(r as f64, c as f64 - 1.0));
        assert_eq!(conjugate(&conjugate(&m)), m);
    }

    #[test]
    fn conjugate_equals_transpose_on_hermitian() {
        let m = ComplexMatrix::from_fn(3, 3, |r, c| Complex64::new((r + c) as f64, r as f64 - c as f64));
        let h = m.hermitian_part();
        assert!(h.conjugate().max_abs_diff(&h.transpose()) < 1e-15);
    }

    #[test]
    fn permute_subsystems_swaps_factors() {
        let a = ComplexMatrix::from_diagonal(&[1.0, 2.0]);
        let b = ComplexMatrix::from_diagonal(&[3.0, 4.0, 5.0]);
        let ab = a.kron(&b).unwrap();
        let ba = ab.permute_subsystems(&[2, 3], &[1, 0]).unwrap();
        assert_eq!(ba, b.kron(&a).unwrap());
    }
}
