//! The pair of quadrics cutting out the `H(4)`-invariant elliptic curve in
//! projective 3-space, and a sampler for points on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, UnitaryOp, C64, I, ONE, ZERO};

/// The quadrics `Q0, Q1` with modulus `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticQuadrics {
    pub a: C64,
}

fn check4(p: &ComplexVector) -> Result<()> {
    if p.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: p.dim() });
    }
    Ok(())
}

pub fn elliptic_quadrics(a: C64) -> EllipticQuadrics {
    EllipticQuadrics { a }
}

impl EllipticQuadrics {
    /// `Q0 = x0^2 + x2^2 + 2a x1 x3`, `Q1 = x1^2 + x3^2 + 2a x0 x2`.
    pub fn original(&self, x: &ComplexVector) -> Result<(C64, C64)> {
        check4(x)?;
        let a = self.a;
        Ok((x[0] * x[0] + x[2] * x[2] + 2.0 * a * x[1] * x[3], x[1] * x[1] + x[3] * x[3] + 2.0 * a * x[0] * x[2]))
    }

    /// `Q0 = z0^2 + i z1^2 + a(i z2^2 + z3^2)`,
    /// `Q1 = i z2^2 - z3^2 + a(z0^2 - i z1^2)`.
    pub fn rotated(&self, z: &ComplexVector) -> Result<(C64, C64)> {
        check4(z)?;
        let a = self.a;
        let s: Vec<C64> = z.iter().map(|c| c * c).collect();
        Ok((s[0] + I * s[1] + a * (I * s[2] + s[3]), I * s[2] - s[3] + a * (s[0] - I * s[1])))
    }

    /// Symmetric matrices `M0, M1` with `Qk(x) = x^T Mk x` in the original
    /// coordinates.
    pub fn form_matrices(&self) -> (ComplexMatrix, ComplexMatrix) {
        let mut m0 = vec![ZERO; 16];
        let mut m1 = vec![ZERO; 16];
        m0[0] = ONE;
        m0[2 * 4 + 2] = ONE;
        m0[4 + 3] = self.a;
        m0[3 * 4 + 1] = self.a;
        m1[4 + 1] = ONE;
        m1[3 * 4 + 3] = ONE;
        m1[2] = self.a;
        m1[2 * 4] = self.a;
        (
            ComplexMatrix::new(4, 4, m0).expect("4x4"),
            ComplexMatrix::new(4, 4, m1).expect("4x4"),
        )
    }

    /// Coefficients `c` with `Qk(U x) = c[k][0] Q0(x) + c[k][1] Q1(x)`, and
    /// the residual of that fit (zero iff the pencil is carried into itself).
    pub fn transform_coefficients(&self, u: &UnitaryOp) -> Result<([[C64; 2]; 2], f64)> {
        if u.rows() != 4 || u.cols() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: u.rows() });
        }
        let (m0, m1) = self.form_matrices();
        let basis = [&m0, &m1];
        let dot = |p: &ComplexMatrix, q: &ComplexMatrix| -> C64 {
            p.entries().iter().zip(q.entries()).map(|(x, y)| x.conj() * y).sum()
        };
        let g = [[dot(&m0, &m0), dot(&m0, &m1)], [dot(&m1, &m0), dot(&m1, &m1)]];
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if det.norm() < 1e-14 {
            return Err(Error::SingularSystem);
        }
        let mut coeffs = [[ZERO; 2]; 2];
        let mut residual: f64 = 0.0;
        for (k, m) in basis.iter().enumerate() {
            let t = &(&u.transpose() * *m) * u;
            let b = [dot(&m0, &t), dot(&m1, &t)];
            let c0 = (g[1][1] * b[0] - g[0][1] * b[1]) / det;
            let c1 = (g[0][0] * b[1] - g[1][0] * b[0]) / det;
            let fit = m0.scale(c0).entries().iter().zip(m1.scale(c1).entries()).map(|(x, y)| x + y).collect();
            let fit = ComplexMatrix::new(4, 4, fit)?;
            residual = residual.max(t.max_abs_diff(&fit));
            coeffs[k] = [c0, c1];
        }
        Ok((coeffs, residual))
    }
}

/// `z0^4 + z1^4 + z2^4 + z3^4`.
pub fn quartic(z: &ComplexVector) -> Result<C64> {
    check4(z)?;
    Ok(z.iter().map(|c| c.powu(4)).sum())
}

/// A point on the curve in the diagonal coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePointD4 {
    z: ComplexVector,
    a: C64,
}

/// Residual threshold for [`CurvePointD4::new`], relative to `|z|^2`.
pub const CURVE_THRESHOLD: f64 = 1e-9;

impl CurvePointD4 {
    pub fn new(z: ComplexVector, a: C64) -> Result<Self> {
        let (q0, q1) = elliptic_quadrics(a).rotated(&z)?;
        let scale = z.norm_sqr().max(f64::MIN_POSITIVE) * (1.0 + a.norm());
        let r = q0.norm().max(q1.norm()) / scale;
        if r > CURVE_THRESHOLD {
            return Err(Error::NotOnCurve(r));
        }
        Ok(Self { z, a })
    }

    pub fn z(&self) -> &ComplexVector {
        &self.z
    }

    pub fn a(&self) -> C64 {
        self.a
    }
}

/// The point with `z0 = 1`, `z3 = ratio`, principal square roots for `z1`
/// and `z2`.
pub fn sample_curve_point(a: C64, ratio: C64) -> Result<CurvePointD4> {
    sample_curve_point_branch(a, ratio, false, false)
}

/// As [`sample_curve_point`], negating `z1` and/or `z2`.
///
/// With `u = z1^2`, `v = z2^2` the two quadrics are linear:
/// `i u + i a v = -1 - a r^2` and `-i a u + i v = r^2 - a`.
pub fn sample_curve_point_branch(a: C64, ratio: C64, flip1: bool, flip2: bool) -> Result<CurvePointD4> {
    let r2 = ratio * ratio;
    let (b0, b1) = (-ONE - a * r2, r2 - a);
    let det = -ONE - a * a;
    if det.norm() < 1e-12 {
        return Err(Error::SingularSystem);
    }
    let u = (I * b0 - I * a * b1) / det;
    let v = (I * b1 + I * a * b0) / det;
    let sign = |flip: bool| if flip { -1.0 } else { 1.0 };
    let z = ComplexVector::new(vec![ONE, sign(flip1) * u.sqrt(), sign(flip2) * v.sqrt(), ratio]);
    CurvePointD4::new(z, a)
}
