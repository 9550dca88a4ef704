//! Dense complex vectors and matrices, projective comparison and the
//! probability vectors that every other module is built on.
//!
//! Vectors are kept exactly as constructed; nothing here normalizes
//! implicitly. Projective comparisons go through [`fidelity`], which divides
//! out both norms.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Absolute deviation bound used by every verification.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-10);

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::InvalidConfig(format!("tolerance must be >= 0, got {eps}")));
        }
        Ok(Tolerance(eps))
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Table of the powers of `q = exp(2 pi i / n)`.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    powers: Vec<C64>,
}

impl RootsOfUnity {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "roots of unity need n >= 1");
        let step = 2.0 * std::f64::consts::PI / n as f64;
        let powers = (0..n)
            .map(|k| {
                let theta = step * k as f64;
                C64::new(theta.cos(), theta.sin())
            })
            .collect();
        Self { powers }
    }

    pub fn order(&self) -> usize {
        self.powers.len()
    }

    /// `q^k` for any integer exponent, reduced mod the order.
    pub fn pow(&self, k: i64) -> C64 {
        let n = self.powers.len() as i64;
        self.powers[k.rem_euclid(n) as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Self {
        assert!(!entries.is_empty(), "vectors must have positive dimension");
        Self { entries }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = ONE;
        v
    }

    /// A vector with independent standard complex Gaussian entries. After
    /// normalization this is uniform on the unit sphere.
    pub fn random_gaussian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let entries = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C64::new(re, im)
            })
            .collect();
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.entries.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.norm() <= eps
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.entries.iter().map(|z| z * s).collect())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.entries.iter().map(|z| z.conj()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect())
    }

    /// Rescale so that the first entry of non-negligible modulus is real
    /// positive and the vector has unit norm. Used wherever a canonical
    /// representative of the ray is needed for output.
    pub fn phase_fixed(&self) -> Result<Self> {
        let v = self.normalized()?;
        let lead = v
            .entries
            .iter()
            .find(|z| z.norm() > 1e-12)
            .copied()
            .ok_or(Error::ZeroVector)?;
        Ok(v.scale(lead.conj() / lead.norm()))
    }

    /// Symmetric bilinear pairing `sum u_a v_a` (no conjugation). This is the
    /// pairing between points and hyperplane coordinates.
    pub fn bilinear(&self, other: &Self) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum())
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.entries[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.entries[i]
    }
}

impl From<Vec<C64>> for ComplexVector {
    fn from(entries: Vec<C64>) -> Self {
        Self::new(entries)
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Hermitian inner product `<u|v>`, conjugate-linear in `u`.
pub fn inner(u: &ComplexVector, v: &ComplexVector) -> Result<C64> {
    check_dims(u.dim(), v.dim())?;
    Ok(u.entries.iter().zip(&v.entries).map(|(a, b)| a.conj() * b).sum())
}

/// `|<u|v>|^2 / (<u|u><v|v>)`, the squared overlap of the two rays.
pub fn fidelity(u: &ComplexVector, v: &ComplexVector) -> Result<f64> {
    let nu = u.norm_sqr();
    let nv = v.norm_sqr();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(inner(u, v)?.norm_sqr() / (nu * nv))
}

/// True iff `u = lambda v` for some nonzero complex `lambda`, decided by
/// `<u|u><v|v> - |<u|v>|^2 <= eps <u|u><v|v>`.
pub fn projectively_equal(u: &ComplexVector, v: &ComplexVector, tol: Tolerance) -> Result<bool> {
    let nu = u.norm_sqr();
    let nv = v.norm_sqr();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    let prod = nu * nv;
    let overlap = inner(u, v)?.norm_sqr();
    Ok(prod - overlap <= tol.eps() * prod)
}

/// Largest deviation from orthonormality of a list of vectors.
pub fn orthonormality_defect(basis: &[ComplexVector]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (i, e) in basis.iter().enumerate() {
        for (j, f) in basis.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((inner(e, f)? - target).norm());
        }
    }
    Ok(worst)
}

/// Outcome probabilities `p_a = |<e_a|v>|^2` of a normalized vector in an
/// orthonormal basis.
pub fn probabilities(v: &ComplexVector, basis: &[ComplexVector], tol: Tolerance) -> Result<Vec<f64>> {
    if basis.len() != v.dim() {
        return Err(Error::WrongVectorCount { expected: v.dim(), found: basis.len() });
    }
    for e in basis {
        check_dims(v.dim(), e.dim())?;
    }
    let defect = orthonormality_defect(basis)?;
    if defect > tol.eps() {
        return Err(Error::NotOrthonormal(defect));
    }
    basis.iter().map(|e| inner(e, v).map(|z| z.norm_sqr())).collect()
}

/// Indices of the first representative of each projective class, in input
/// order.
pub fn distinct_rays(vectors: &[ComplexVector], tol: Tolerance) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut seen = false;
        for &r in &reps {
            if projectively_equal(&vectors[r], v, tol)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(i);
        }
    }
    Ok(reps)
}

/// For each vector of `a`, the smallest `1 - fidelity` to any vector of `b`;
/// returns the maximum of those. Zero iff every ray of `a` occurs in `b`.
pub fn ray_set_distance(a: &[ComplexVector], b: &[ComplexVector]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for u in a {
        let mut best = f64::INFINITY;
        for v in b {
            best = best.min(1.0 - fidelity(u, v)?);
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

/// Same rays, irrespective of order, multiplicity or scale.
pub fn same_ray_set(a: &[ComplexVector], b: &[ComplexVector], tol: Tolerance) -> Result<bool> {
    Ok(ray_set_distance(a, b)? <= tol.eps() && ray_set_distance(b, a)? <= tol.eps())
}

/// Orthonormalize the columns of a list of vectors (modified Gram-Schmidt).
/// Vectors that become negligible are dropped.
pub fn gram_schmidt(vectors: &[ComplexVector]) -> Vec<ComplexVector> {
    let mut out: Vec<ComplexVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for e in &out {
            let c = inner(e, &w).expect("equal dims");
            w = w.sub(&e.scale(c));
        }
        if w.norm() > 1e-10 * v.norm().max(1.0) {
            out.push(w.normalized().expect("nonzero"));
        }
    }
    out
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

/// Square matrices used as group elements. Unitarity is checked, not
/// enforced by the type.
pub type UnitaryOp = ComplexMatrix;

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != entries.len() {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Format("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ComplexVector]) -> Result<Self> {
        let n = cols.first().map_or(0, ComplexVector::dim);
        let mut m = Self::zeros(n.max(1), cols.len().max(1));
        for (j, v) in cols.iter().enumerate() {
            check_dims(n, v.dim())?;
            for i in 0..n {
                m[(i, j)] = v[i];
            }
        }
        Ok(m)
    }

    /// Permutation matrix sending basis vector `e_b` to `e_{perm[b]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (b, &a) in perm.iter().enumerate() {
            m[(a, b)] = ONE;
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

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> ComplexVector {
        ComplexVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn columns(&self) -> Vec<ComplexVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
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

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_dims(self.cols, other.rows)?;
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m.entries[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        check_dims(self.cols, v.dim())?;
        let out = (0..self.rows)
            .map(|i| {
                self.entries[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(ComplexVector::new(out))
    }

    /// `v^T M`: the action on row (hyperplane) coordinates.
    pub fn apply_row(&self, v: &ComplexVector) -> Result<ComplexVector> {
        self.transpose().apply(v)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// If `self = lambda * other` within `tol` (relative to the largest entry
    /// of `other`), returns `lambda`.
    pub fn proportionality(&self, other: &Self, tol: Tolerance) -> Option<C64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let (idx, pivot) = other
            .entries
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
        if pivot.norm() == 0.0 {
            return None;
        }
        let lambda = self.entries[idx] / pivot;
        let scale = pivot.norm().max(self.entries[idx].norm());
        let dev = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - lambda * b).norm())
            .fold(0.0, f64::max);
        (lambda.norm() > 0.0 && dev <= tol.eps() * scale).then_some(lambda)
    }

    pub fn is_identity_up_to_phase(&self, tol: Tolerance) -> bool {
        self.is_square() && self.proportionality(&Self::identity(self.rows), tol).is_some()
    }

    pub fn is_hermitian(&self, tol: Tolerance) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol.eps()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    /// Panics on shape mismatch; use [`ComplexMatrix::try_mul`] for fallible
    /// products.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix shapes must agree")
    }
}

impl Mul<&ComplexVector> for &ComplexMatrix {
    type Output = ComplexVector;
    fn mul(self, rhs: &ComplexVector) -> ComplexVector {
        self.apply(rhs).expect("matrix and vector shapes must agree")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:.4}", self[(i, j)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// True iff `M^dagger M` equals the identity entrywise within `tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let prod = m.adjoint().try_mul(m)?;
    Ok(prod.max_abs_diff(&ComplexMatrix::identity(m.rows())) <= tol.eps())
}

/// Haar-ish random unitary from Gram-Schmidt on Gaussian columns.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let cols: Vec<ComplexVector> = (0..n).map(|_| ComplexVector::random_gaussian(n, rng)).collect();
        let q = gram_schmidt(&cols);
        if q.len() == n {
            return ComplexMatrix::from_columns(&q).expect("square");
        }
    }
}
