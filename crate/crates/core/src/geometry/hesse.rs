//! The syzygetic Hesse pencil `x^3 + y^3 + z^3 + t xyz`, its common
//! inflection points, the four singular members and their triangles, the
//! Hesse configuration, and the chord-and-tangent group law on a member.

use rand::Rng;

use super::incidence::{IncidenceStructure, Pairing, Signature};
use crate::error::{Error, Result};
use crate::linalg::{projectively_equal, ComplexVector, RootsOfUnity, Tolerance, C64, ONE, ZERO};
use crate::sic::sic_d3;

/// Pencil parameter: a complex number or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HessePencilParam {
    Finite(C64),
    Infinity,
}

impl HessePencilParam {
    pub fn finite(self) -> Result<C64> {
        match self {
            HessePencilParam::Finite(t) => Ok(t),
            HessePencilParam::Infinity => Err(Error::InfiniteParameter),
        }
    }

    /// True for `t = infinity` and `t^3 = -27`.
    pub fn is_singular(self, tol: Tolerance) -> bool {
        match self {
            HessePencilParam::Infinity => true,
            HessePencilParam::Finite(t) => (t.powu(3) + 27.0).norm() <= tol.eps() * 27.0,
        }
    }
}

impl From<C64> for HessePencilParam {
    fn from(t: C64) -> Self {
        HessePencilParam::Finite(t)
    }
}

fn xyz(p: &ComplexVector) -> Result<(C64, C64, C64)> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: p.dim() });
    }
    Ok((p[0], p[1], p[2]))
}

/// `P = x^3 + y^3 + z^3 + t xyz`; at `t = infinity` the member is `xyz`.
pub fn hesse_cubic(t: HessePencilParam, p: &ComplexVector) -> Result<C64> {
    let (x, y, z) = xyz(p)?;
    Ok(match t {
        HessePencilParam::Finite(t) => x * x * x + y * y * y + z * z * z + t * x * y * z,
        HessePencilParam::Infinity => x * y * z,
    })
}

/// Gradient `(P_x, P_y, P_z)`.
pub fn hesse_gradient(t: HessePencilParam, p: &ComplexVector) -> Result<ComplexVector> {
    let (x, y, z) = xyz(p)?;
    let g = match t {
        HessePencilParam::Finite(t) => {
            vec![3.0 * x * x + t * y * z, 3.0 * y * y + t * x * z, 3.0 * z * z + t * x * y]
        }
        HessePencilParam::Infinity => vec![y * z, x * z, x * y],
    };
    Ok(ComplexVector::new(g))
}

/// `H = det(d_i d_j P) = (6^3 + 2 t^3) xyz - 6 t^2 (x^3 + y^3 + z^3)`.
pub fn hessian_cubic(t: HessePencilParam, p: &ComplexVector) -> Result<C64> {
    let t = t.finite()?;
    let (x, y, z) = xyz(p)?;
    Ok((216.0 + 2.0 * t.powu(3)) * x * y * z - 6.0 * t * t * (x * x * x + y * y * y + z * z * z))
}

/// The nine inflection points shared by every member of the pencil. These
/// are the vectors of [`sic_d3`].
pub fn inflection_points() -> Vec<ComplexVector> {
    sic_d3().vectors().to_vec()
}

/// Labels `X0, X1, X2, Y0, ..., Z2` of the inflection points.
pub fn inflection_labels() -> Vec<String> {
    ["X", "Y", "Z"].iter().flat_map(|s| (0..3).map(move |k| format!("{s}{k}"))).collect()
}

/// `{infinity, -3, -3q, -3q^2}`.
pub fn singular_params() -> Vec<HessePencilParam> {
    let roots = RootsOfUnity::new(3);
    let mut out = vec![HessePencilParam::Infinity];
    out.extend((0..3).map(|k| HessePencilParam::Finite(-3.0 * roots.pow(k))));
    out
}

/// Labels of the four triangles, in the order of [`inflection_triangles`].
pub const TRIANGLE_LABELS: [&str; 4] = ["0", "1", "2", "inf"];

/// The vertices of the four inflection triangles, triangle by triangle,
/// unnormalized (entries are powers of `q`). As bases they form the complete
/// MUB set in dimension 3.
pub fn inflection_triangles() -> Vec<Vec<ComplexVector>> {
    let roots = RootsOfUnity::new(3);
    let (q, q2) = (roots.pow(1), roots.pow(2));
    let circulant = |off: C64| -> Vec<ComplexVector> {
        (0..3)
            .map(|m| ComplexVector::new((0..3).map(|a| if a == m { ONE } else { off }).collect()))
            .collect()
    };
    let standard = (0..3).map(|m| ComplexVector::basis(3, m)).collect();
    let fourier = (0..3i64)
        .map(|m| ComplexVector::new((0..3i64).map(|a| roots.pow(a * m)).collect()))
        .collect();
    vec![standard, circulant(q2), circulant(q), fourier]
}

/// Incidences between the nine inflection points (rows `X0..Z2`) and the
/// twelve triangle edges (columns `D_0^(0), D_1^(0), ..., D_2^(inf)`).
pub const HESSE_TABLE: [[bool; 12]; 9] = {
    const O: bool = true;
    const N: bool = false;
    [
        [O, N, N, O, N, N, O, N, N, O, N, N],
        [O, N, N, N, N, O, N, O, N, N, O, N],
        [O, N, N, N, O, N, N, N, O, N, N, O],
        [N, O, N, N, O, N, N, O, N, O, N, N],
        [N, O, N, O, N, N, N, N, O, N, O, N],
        [N, O, N, N, N, O, O, N, N, N, N, O],
        [N, N, O, N, N, O, N, N, O, O, N, N],
        [N, N, O, N, O, N, O, N, N, N, O, N],
        [N, N, O, O, N, N, N, O, N, N, N, O],
    ]
};

pub const HESSE_SIGNATURE: Signature = Signature::new(9, 4, 12, 3);

/// The nine inflection points against the twelve triangle edges, with a point
/// on an edge iff `<edge|point> = 0`.
pub fn hesse_configuration() -> IncidenceStructure {
    let blocks: Vec<ComplexVector> = inflection_triangles().into_iter().flatten().collect();
    let block_labels = TRIANGLE_LABELS
        .iter()
        .flat_map(|k| (0..3).map(move |m| format!("D{m}^({k})")))
        .collect();
    IncidenceStructure::from_hyperplanes(
        "hesse",
        &inflection_points(),
        &blocks,
        Pairing::Hermitian,
        inflection_labels(),
        block_labels,
    )
    .expect("all vectors live in C^3")
}

/// Roots of the monic cubic `z^3 + b z^2 + c z + d`, Cardano followed by two
/// Newton steps per root.
pub fn cubic_roots(b: C64, c: C64, d: C64) -> [C64; 3] {
    // Depress: z = w - b/3.
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u3 = -q / 2.0 + disc;
    if u3.norm() < (-q / 2.0 - disc).norm() {
        u3 = -q / 2.0 - disc;
    }
    let omega = RootsOfUnity::new(3);
    let mut roots = [ZERO; 3];
    if u3.norm() == 0.0 {
        roots = [-shift; 3];
    } else {
        let u = u3.powf(1.0 / 3.0);
        for (k, r) in roots.iter_mut().enumerate() {
            let uk = u * omega.pow(k as i64);
            *r = uk - p / (3.0 * uk) - shift;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let f = ((*r + b) * *r + c) * *r + d;
            let df = (3.0 * *r + 2.0 * b) * *r + c;
            if df.norm() > 1e-300 {
                *r -= f / df;
            }
        }
    }
    roots
}

/// A nonsingular member of the Hesse pencil, with its group law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HesseCubic {
    t: C64,
}

impl HesseCubic {
    /// Fails for `t^3 = -27` (within 1e-9 relative); `t = infinity` cannot be
    /// represented.
    pub fn new(t: C64) -> Result<Self> {
        if HessePencilParam::Finite(t).is_singular(Tolerance::new(1e-9)?) {
            return Err(Error::InvalidConfig(format!("t = {t} gives a singular cubic")));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> C64 {
        self.t
    }

    pub fn eval(&self, p: &ComplexVector) -> Result<C64> {
        hesse_cubic(HessePencilParam::Finite(self.t), p)
    }

    pub fn gradient(&self, p: &ComplexVector) -> Result<ComplexVector> {
        hesse_gradient(HessePencilParam::Finite(self.t), p)
    }

    /// `|P(p)| / |p|^3`, scale invariant.
    pub fn residual(&self, p: &ComplexVector) -> Result<f64> {
        let n = p.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.eval(p)?.norm() / (n * n * n))
    }

    fn require_on_curve(&self, p: &ComplexVector) -> Result<()> {
        let r = self.residual(p)?;
        if r > 1e-8 {
            return Err(Error::NotOnCurve(r));
        }
        Ok(())
    }

    /// The three points of the member with given `x, y` (solving for `z`).
    pub fn points_above(&self, x: C64, y: C64) -> Vec<ComplexVector> {
        cubic_roots(ZERO, self.t * x * y, x * x * x + y * y * y)
            .iter()
            .map(|&z| ComplexVector::new(vec![x, y, z]))
            .collect()
    }

    /// A random point of the member, unit norm.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> ComplexVector {
        let seed = ComplexVector::random_gaussian(2, rng);
        let k = rng.random_range(0..3);
        let p = self.points_above(seed[0], seed[1]).swap_remove(k);
        p.normalized().expect("x, y are nonzero almost surely")
    }

    /// Third intersection of the line through `a` and `b` with the curve;
    /// for `a = b` the line is the tangent at `a`.
    ///
    /// Restricted to `lambda a + mu b` the cubic is
    /// `lambda^2 mu (grad P(a) . b) + lambda mu^2 (grad P(b) . a) + mu^3 P(b)`
    /// (the `lambda^3` term is `P(a) = 0`), so the remaining root is read off
    /// the coefficients.
    pub fn third_point(&self, a: &ComplexVector, b: &ComplexVector) -> Result<ComplexVector> {
        self.require_on_curve(a)?;
        let tol = Tolerance::new(1e-12)?;
        let a = a.normalized()?;
        let b = b.normalized()?;
        let third = if projectively_equal(&a, &b, tol)? {
            let grad = self.gradient(&a)?;
            let other = tangent_companion(&a, &grad)?;
            let ga = self.gradient(&other)?.bilinear(&a)?;
            let pb = self.eval(&other)?;
            a.scale(pb).sub(&other.scale(ga))
        } else {
            self.require_on_curve(&b)?;
            let ab = self.gradient(&a)?.bilinear(&b)?;
            let ba = self.gradient(&b)?.bilinear(&a)?;
            a.scale(ba).sub(&b.scale(ab))
        };
        if third.norm() < 1e-12 {
            return Err(Error::DegenerateLine("the line meets the curve in a degenerate way".into()));
        }
        third.normalized()
    }

    /// `a + b` with identity `origin`: `a + b` is the third point on the
    /// line through `origin` and the third point of the line `ab`.
    pub fn add(&self, a: &ComplexVector, b: &ComplexVector, origin: &ComplexVector) -> Result<ComplexVector> {
        self.require_on_curve(origin)?;
        let p = self.third_point(a, b)?;
        self.third_point(origin, &p)
    }
}

/// A point on the tangent line at `a` other than `a`: the bilinear cross
/// product of the gradient with a coordinate vector, chosen to be as far
/// from `a` as possible.
fn tangent_companion(a: &ComplexVector, grad: &ComplexVector) -> Result<ComplexVector> {
    let cross = |u: &ComplexVector, v: &ComplexVector| {
        ComplexVector::new(vec![
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ])
    };
    let mut best: Option<(f64, ComplexVector)> = None;
    for k in 0..3 {
        let c = cross(grad, &ComplexVector::basis(3, k));
        if c.norm() < 1e-14 {
            continue;
        }
        let off = 1.0 - crate::linalg::fidelity(&c, a)?;
        if best.as_ref().map_or(true, |(o, _)| off > *o) {
            best = Some((off, c));
        }
    }
    match best {
        Some((off, c)) if off > 1e-10 => c.normalized(),
        _ => Err(Error::DegenerateLine("gradient vanishes; the point is singular".into())),
    }
}

/// `a + b` on the member with parameter `t`, with identity `o`.
pub fn cubic_add(t: C64, a: &ComplexVector, b: &ComplexVector, o: &ComplexVector) -> Result<ComplexVector> {
    HesseCubic::new(t)?.add(a, b, o)
}
