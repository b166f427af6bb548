//! Dense complex linear algebra over small dimensions.
//!
//! Everything here is row-major with explicit dimensions. Sizes in this crate
//! never exceed 216, so the routines favour clarity over blocking or SIMD.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tol;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// A pure state (or any complex column vector).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Shape("state vector must be non-empty".into()));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Input("state vector has non-finite amplitude".into()));
        }
        Ok(StateVector { amps })
    }

    pub fn from_reals(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis ket `|index⟩` in a space of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Returns the vector scaled to unit norm; fails on a zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::Numeric("cannot normalise the zero vector".into()));
        }
        Ok(StateVector {
            amps: self.amps.iter().map(|a| a / n).collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector { amps }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        m
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "distance dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for StateVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector {
            amps: (0..self.rows).map(|i| self[(i, j)]).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "distance between matrices of different shape"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let amps = (0..self.rows)
            .map(|i| self.row(i).iter().zip(&v.amps).map(|(a, b)| a * b).sum())
            .collect();
        Ok(StateVector { amps })
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<ComplexMatrix> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `‖U†U − I‖_F`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self
            .adjoint()
            .matmul(self)
            .expect("adjoint product is always conformable");
        prod.distance(&ComplexMatrix::identity(self.cols))
    }

    /// Expectation value `Tr(ρ A)` of an observable.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<C64> {
        if !self.is_square() || (self.rows, self.cols) != (observable.rows, observable.cols) {
            return Err(Error::Shape("expectation requires equal square matrices".into()));
        }
        let n = self.rows;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * observable[(k, i)];
            }
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `I₂`, `σ_x`, `σ_y`, `σ_z`.
pub mod pauli {
    use super::*;

    pub fn id() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, C64::new(0.0, -1.0)], vec![C64::new(0.0, 1.0), ZERO]]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }
}

/// Dimensions of the tensor factors of a composite space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorShape {
    dims: Vec<usize>,
}

impl FactorShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Shape(format!("invalid factor dims {dims:?}")));
        }
        Ok(FactorShape { dims })
    }

    pub fn qubits(n: usize) -> Self {
        FactorShape { dims: vec![2; n] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Mixed-radix digits of `index`, most significant factor first.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    fn check_keep(&self, keep: &[usize]) -> Result<Vec<usize>> {
        let mut k = keep.to_vec();
        k.sort_unstable();
        k.dedup();
        if k.len() != keep.len() {
            return Err(Error::Shape(format!("duplicate factor in keep set {keep:?}")));
        }
        if let Some(&bad) = k.iter().find(|&&f| f >= self.dims.len()) {
            return Err(Error::Shape(format!(
                "factor {bad} out of range for {} factors",
                self.dims.len()
            )));
        }
        Ok(k)
    }

    /// For every full index, its (kept, traced) index pair.
    fn split_indices(&self, keep: &[usize]) -> (usize, usize, Vec<(usize, usize)>) {
        let kept_dims: Vec<usize> = keep.iter().map(|&f| self.dims[f]).collect();
        let traced: Vec<usize> = (0..self.dims.len()).filter(|f| !keep.contains(f)).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&f| self.dims[f]).collect();
        let dk = kept_dims.iter().product();
        let dt = traced_dims.iter().product();
        let pairs = (0..self.total())
            .map(|i| {
                let digits = self.digits(i);
                let k = keep.iter().zip(&kept_dims).fold(0, |a, (&f, &d)| a * d + digits[f]);
                let t = traced.iter().zip(&traced_dims).fold(0, |a, (&f, &d)| a * d + digits[f]);
                (k, t)
            })
            .collect();
        (dk, dt, pairs)
    }
}

/// Reduced density matrix on the factors in `keep`, which appear in the
/// output in their original relative order.
pub fn partial_trace(rho: &ComplexMatrix, shape: &FactorShape, keep: &[usize]) -> Result<ComplexMatrix> {
    if !rho.is_square() || rho.rows() != shape.total() {
        return Err(Error::Shape(format!(
            "{}x{} matrix does not match factor dims {:?}",
            rho.rows(),
            rho.cols(),
            shape.dims()
        )));
    }
    let keep = shape.check_keep(keep)?;
    let (dk, dt, pairs) = shape.split_indices(&keep);
    let mut full_index = vec![0usize; dk * dt];
    for (i, &(k, t)) in pairs.iter().enumerate() {
        full_index[k * dt + t] = i;
    }
    let mut out = ComplexMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in 0..dk {
            out[(a, b)] = (0..dt)
                .map(|t| rho[(full_index[a * dt + t], full_index[b * dt + t])])
                .sum();
        }
    }
    Ok(out)
}

/// Reduced density matrix of a pure state, computed as `M M†` where `M` is
/// the state reshaped into (kept × traced).
pub fn reduced_pure(psi: &StateVector, shape: &FactorShape, keep: &[usize]) -> Result<ComplexMatrix> {
    if psi.dim() != shape.total() {
        return Err(Error::Shape(format!(
            "vector of dim {} does not match factor dims {:?}",
            psi.dim(),
            shape.dims()
        )));
    }
    let keep = shape.check_keep(keep)?;
    let (dk, dt, pairs) = shape.split_indices(&keep);
    let mut m = vec![ZERO; dk * dt];
    for (i, &(k, t)) in pairs.iter().enumerate() {
        m[k * dt + t] = psi[i];
    }
    let mut out = ComplexMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in a..dk {
            let v: C64 = (0..dt).map(|t| m[a * dt + t] * m[b * dt + t].conj()).sum();
            out[(a, b)] = v;
            out[(b, a)] = v.conj();
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix: `h = V diag(values) V†`.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        &scaled * &self.vectors.adjoint()
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of `h[p][q]` and then applies a
/// real Givens rotation, so the composite 2×2 step is unitary.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::Shape("eigendecomposition of a non-square matrix".into()));
    }
    let dev = h.hermitian_deviation();
    if dev > tol::HERMITIAN {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (deviation {dev:.3e})"
        )));
    }
    let n = h.rows();
    let mut a = h.clone();
    // Symmetrise away rounding-level asymmetry so the sweeps see an exactly Hermitian input.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFFDIAG * h.frobenius_norm().max(1.0);

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == tol::JACOBI_MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi eigensolver did not converge in {} sweeps (off-diagonal {:.3e})",
                tol::JACOBI_MAX_SWEEPS,
                off(&a)
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new_col)] = v[(r, old_col)];
        }
    }
    Ok(Eigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase = conj(e^{iφ}) where apq = |apq| e^{iφ}
    let phase = apq.conj() / mag;
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta == 0.0 {
        1.0
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // G = diag(1, phase) · [[c, s], [-s, c]] on the (p, q) plane.
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    // A ← A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A ← G† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V ← V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Outcome of [`is_density_matrix`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityCheck {
    pub valid: bool,
    pub hermitian_deviation: f64,
    pub trace: C64,
    /// Smallest eigenvalue, `None` when the matrix was not Hermitian enough
    /// to diagonalise.
    pub min_eigenvalue: Option<f64>,
}

impl fmt::Display for DensityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermitian deviation {:.3e}, trace {:.12}{:+.3e}i, min eigenvalue {}",
            self.hermitian_deviation,
            self.trace.re,
            self.trace.im,
            self.min_eigenvalue
                .map_or_else(|| "n/a".to_string(), |e| format!("{e:.3e}"))
        )
    }
}

/// Checks Hermiticity, unit trace and positivity (eigenvalues ≥ −tol).
pub fn is_density_matrix(rho: &ComplexMatrix, tol: f64) -> DensityCheck {
    if !rho.is_square() {
        return DensityCheck {
            valid: false,
            hermitian_deviation: f64::INFINITY,
            trace: C64::new(f64::NAN, f64::NAN),
            min_eigenvalue: None,
        };
    }
    let hermitian_deviation = rho.hermitian_deviation();
    let trace = rho.trace();
    let min_eigenvalue = if hermitian_deviation <= tol.max(tol::HERMITIAN) {
        hermitian_eigen(rho).ok().and_then(|e| e.values.last().copied())
    } else {
        None
    };
    let valid = hermitian_deviation <= tol && (trace - ONE).norm() <= tol && min_eigenvalue.is_some_and(|e| e >= -tol);
    DensityCheck {
        valid,
        hermitian_deviation,
        trace,
        min_eigenvalue,
    }
}

pub(crate) fn require_density(rho: &ComplexMatrix, what: &str) -> Result<()> {
    let check = is_density_matrix(rho, tol::PHYS);
    if check.valid {
        Ok(())
    } else {
        Err(Error::Validation(format!("{what} is not a density matrix: {check}")))
    }
}

/// `Tr(ρ²)` of a validated density matrix.
pub fn purity(rho: &ComplexMatrix) -> Result<f64> {
    require_density(rho, "purity input")?;
    Ok(purity_unchecked(rho))
}

/// `Tr(ρ²)` for a Hermitian matrix, without validation.
pub(crate) fn purity_unchecked(rho: &ComplexMatrix) -> f64 {
    // Tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ
    rho.data().iter().map(|z| z.norm_sqr()).sum()
}
