//! SICs and related equiangular configurations.
//!
//! Contains the exact SICs in dimensions 3 and 4 (kept unnormalized, as
//! displayed), Heisenberg orbits of fiducials, the equiangularity defect, the
//! Zauner order-3 invariance check, the Clifford orbit of the dimension-4 SIC,
//! the `2n` equiangular vectors in dimension `n`, the 16 Eddington
//! minimum-uncertainty vectors, and the Hadamard-extension procedure that
//! builds groups of `N` equiangular vectors from a single seed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bases::is_prime;
use crate::error::{Error, Result};
use crate::heisenberg::{d4_involution_square_roots, d4_involutions, HeisenbergAction};
use crate::linalg::{
    distinct_rays, fidelity, inner, projectively_equal, ray_set_distance, same_ray_set, ComplexMatrix,
    ComplexVector, RootsOfUnity, Tolerance, UnitaryOp, C64, I, ONE, ZERO,
};
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactD3,
    ExactD4,
    OrbitOfFiducial,
    Numerical,
}

/// `N^2` nonzero vectors in `C^N`, a candidate SIC. Vectors need not be
/// normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SicCandidate {
    dim: usize,
    vectors: Vec<ComplexVector>,
    provenance: Provenance,
}

impl SicCandidate {
    pub fn new(dim: usize, vectors: Vec<ComplexVector>, provenance: Provenance) -> Result<Self> {
        if vectors.len() != dim * dim {
            return Err(Error::WrongVectorCount { expected: dim * dim, found: vectors.len() });
        }
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
            if v.norm() == 0.0 {
                return Err(Error::ZeroVector);
            }
        }
        Ok(Self { dim, vectors, provenance })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.vectors
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Number of projectively distinct vectors.
    pub fn distinct_count(&self, tol: Tolerance) -> usize {
        distinct_rays(&self.vectors, tol).expect("nonzero vectors").len()
    }

    /// `U v` for every vector.
    pub fn transformed(&self, u: &UnitaryOp) -> Result<Self> {
        let vectors = self.vectors.iter().map(|v| u.apply(v)).collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, vectors, self.provenance)
    }

    /// Same set of rays, ignoring order and scale.
    pub fn same_set(&self, other: &Self, tol: Tolerance) -> bool {
        self.dim == other.dim && same_ray_set(&self.vectors, &other.vectors, tol).expect("nonzero vectors")
    }
}

fn cv(entries: &[C64]) -> ComplexVector {
    ComplexVector::new(entries.to_vec())
}

fn columns_of(rows: &[Vec<C64>]) -> Vec<ComplexVector> {
    ComplexMatrix::from_rows(rows).expect("rectangular").columns()
}

/// The nine Heisenberg-covariant SIC vectors in dimension 3, which are also
/// the nine inflection points of the Hesse pencil.
pub fn sic_d3() -> SicCandidate {
    let q = RootsOfUnity::new(3).pow(1);
    let q2 = q * q;
    let rows = vec![
        vec![ZERO, ZERO, ZERO, -ONE, -q, -q2, ONE, ONE, ONE],
        vec![ONE, ONE, ONE, ZERO, ZERO, ZERO, -ONE, -q, -q2],
        vec![-ONE, -q, -q2, ONE, ONE, ONE, ZERO, ZERO, ZERO],
    ];
    SicCandidate::new(3, columns_of(&rows), Provenance::ExactD3).expect("nine vectors")
}

/// `x = sqrt(2 + sqrt(5))`.
pub fn d4_amplitude() -> f64 {
    (2.0 + 5f64.sqrt()).sqrt()
}

/// The sixteen SIC vectors in dimension 4, in the basis where the `H(4)`
/// generators take the form of
/// [`d4_generators_diagonal_basis`](crate::heisenberg::d4_generators_diagonal_basis).
pub fn sic_d4() -> SicCandidate {
    let x = C64::new(d4_amplitude(), 0.0);
    let (o, m) = (ONE, -ONE);
    let rows = vec![
        vec![x, x, x, x, I, I, -I, -I, I, I, -I, -I, I, I, -I, -I],
        vec![o, o, m, m, x, x, x, x, I, -I, I, -I, o, m, o, m],
        vec![o, m, o, m, o, m, o, m, x, x, x, x, -I, I, I, -I],
        vec![o, m, m, o, -I, I, I, -I, m, o, o, m, x, x, x, x],
    ];
    SicCandidate::new(4, columns_of(&rows), Provenance::ExactD4).expect("sixteen vectors")
}

/// `{g f : g in H}` for the group of [`HeisenbergAction::for_dim`].
pub fn heisenberg_orbit(fiducial: &ComplexVector, action: &HeisenbergAction) -> Result<SicCandidate> {
    if fiducial.dim() != action.dim() {
        return Err(Error::DimensionMismatch { expected: action.dim(), found: fiducial.dim() });
    }
    if fiducial.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let vectors = action.elements().iter().map(|g| g.apply(fiducial)).collect::<Result<Vec<_>>>()?;
    SicCandidate::new(action.dim(), vectors, Provenance::OrbitOfFiducial)
}

/// Max over `i != j` of `| |<psi_i|psi_j>|^2 - 1/(N+1) |` on normalized
/// vectors. Zero exactly for a SIC.
pub fn sic_defect(candidate: &SicCandidate) -> f64 {
    pairwise_overlap_defect(&candidate.vectors, 1.0 / (candidate.dim + 1) as f64).expect("validated candidate")
}

/// [`sic_defect`] for an unvalidated list; requires `N^2` nonzero vectors.
pub fn sic_defect_vectors(vectors: &[ComplexVector]) -> Result<f64> {
    let dim = vectors.first().map_or(0, ComplexVector::dim);
    let candidate = SicCandidate::new(dim, vectors.to_vec(), Provenance::Numerical)?;
    Ok(sic_defect(&candidate))
}

/// Max over `i != j` of `|fidelity(v_i, v_j) - target|`.
pub fn pairwise_overlap_defect(vectors: &[ComplexVector], target: f64) -> Result<f64> {
    let normalized = vectors.iter().map(ComplexVector::normalized).collect::<Result<Vec<_>>>()?;
    let worst = (0..normalized.len())
        .into_par_iter()
        .map(|i| {
            let mut w = 0.0_f64;
            for j in i + 1..normalized.len() {
                let f = inner(&normalized[i], &normalized[j]).expect("equal dims").norm_sqr();
                w = w.max((f - target).abs());
            }
            w
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// Checks that an order-3 unitary maps the candidate onto itself as a set of
/// rays. The report's details list the indices of the vectors it fixes.
pub fn zauner_invariance(candidate: &SicCandidate, u: &UnitaryOp, tol: Tolerance) -> Result<VerificationReport> {
    if !u.is_square() || u.rows() != candidate.dim {
        return Err(Error::DimensionMismatch { expected: candidate.dim, found: u.rows() });
    }
    if !u.pow(3)?.is_identity_up_to_phase(Tolerance::new(1e-9)?) || u.is_identity_up_to_phase(Tolerance::new(1e-9)?) {
        return Err(Error::NotOrderThree);
    }
    let image = candidate.transformed(u)?;
    let deviation = ray_set_distance(&image.vectors, &candidate.vectors)?;
    let fixed: Vec<usize> = candidate
        .vectors
        .iter()
        .zip(&image.vectors)
        .enumerate()
        .filter(|(_, (v, w))| projectively_equal(v, w, tol).unwrap_or(false))
        .map(|(k, _)| k)
        .collect();
    Ok(VerificationReport::new("zauner-invariance", 0.0, deviation, tol).with_detail(json!({ "fixed": fixed })))
}

/// Breadth-first closure of the dimension-4 SIC under the square roots of the
/// four parity involutions together with the involutions themselves,
/// collecting projectively distinct SICs. Stops after 200 SICs.
pub fn clifford_orbit_d4() -> Vec<SicCandidate> {
    const CAP: usize = 200;
    let tol = Tolerance::new(1e-8).expect("positive");
    let mut generators = d4_involution_square_roots();
    generators.extend(d4_involutions());

    let mut found = vec![sic_d4()];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() && found.len() < CAP {
        let mut next = Vec::new();
        for idx in frontier {
            for g in &generators {
                let image = found[idx].transformed(g).expect("4x4 acting on C^4");
                if !found.iter().any(|s| s.same_set(&image, tol)) {
                    found.push(image);
                    next.push(found.len() - 1);
                    if found.len() >= CAP {
                        return found;
                    }
                }
            }
        }
        frontier = next;
    }
    found
}

/// Vectors with a common pairwise normalized overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct EquiangularSet {
    dim: usize,
    vectors: Vec<ComplexVector>,
    overlap: f64,
}

impl EquiangularSet {
    /// Measures the common overlap from the first pair and checks every other
    /// pair against it.
    pub fn new(vectors: Vec<ComplexVector>, tol: Tolerance) -> Result<Self> {
        if vectors.len() < 2 {
            return Err(Error::WrongVectorCount { expected: 2, found: vectors.len() });
        }
        let dim = vectors[0].dim();
        let overlap = fidelity(&vectors[0], &vectors[1])?;
        let defect = pairwise_overlap_defect(&vectors, overlap)?;
        if defect > tol.eps() {
            return Err(Error::InvalidConfig(format!("vectors are not equiangular (deviation {defect:e})")));
        }
        Ok(Self { dim, vectors, overlap })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.vectors
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }
}

/// `2n` equiangular vectors in `C^n` when `N = 2n - 1` is an odd prime. The
/// first vector is `(sqrt(N), 0, ..., 0)`; vector `k + 1` for `k` in `0..N`
/// has first entry 1 and entries `sqrt(2) q^{k r^2}` in rows `r = 1..n`.
/// Every vector has squared norm `N` and every normalized overlap is `1/N`.
pub fn equiangular_2n(n: usize) -> Result<EquiangularSet> {
    let big_n = 2 * n.max(1) - 1;
    if n < 2 || !is_prime(big_n) {
        return Err(Error::UnsupportedDimension { dim: n, reason: "2n - 1 must be an odd prime".into() });
    }
    let roots = RootsOfUnity::new(big_n);
    let sqrt2 = C64::new(2f64.sqrt(), 0.0);
    let mut vectors = Vec::with_capacity(2 * n);
    let mut first = ComplexVector::zeros(n);
    first[0] = C64::new((big_n as f64).sqrt(), 0.0);
    vectors.push(first);
    for k in 0..big_n as i64 {
        let mut v = ComplexVector::zeros(n);
        v[0] = ONE;
        for r in 1..n as i64 {
            v[r as usize] = sqrt2 * roots.pow(k * r * r);
        }
        vectors.push(v);
    }
    EquiangularSet::new(vectors, Tolerance::new(1e-9)?)
}

/// The phase `alpha = exp(i a)` with `cos a = (sqrt5 - 1) / (2 sqrt(2 + sqrt5))`.
pub fn eddington_phase() -> C64 {
    let cos_a = (5f64.sqrt() - 1.0) / (2.0 * d4_amplitude());
    C64::from_polar(1.0, cos_a.acos())
}

/// Sign patterns of the 16 Eddington vectors: `x` marks the real amplitude,
/// `+`/`-` mark `+alpha`/`-alpha`.
const EDDINGTON_PATTERNS: [&str; 16] = [
    "x+++", "x+--", "x-+-", "x--+", "+x++", "+x--", "-x+-", "-x-+", "++x+", "+-x-", "-+x-", "--x+", "+++x",
    "+--x", "-+-x", "--+x",
];

/// The 16 minimum-uncertainty vectors forming one `H(2) (x) H(2)` orbit,
/// unnormalized.
pub fn eddington_mus16() -> Vec<ComplexVector> {
    let x = C64::new(d4_amplitude(), 0.0);
    let alpha = eddington_phase();
    EDDINGTON_PATTERNS
        .iter()
        .map(|p| {
            let entries: Vec<C64> = p
                .chars()
                .map(|c| match c {
                    'x' => x,
                    '+' => alpha,
                    _ => -alpha,
                })
                .collect();
            cv(&entries)
        })
        .collect()
}

/// The amplitude `x` for which `(x, e^{i mu_1}, ..., e^{i mu_{N-1}})`,
/// once normalized, satisfies `sum p_a^2 = 2/(N+1)`: `x^2 = 2 + sqrt(N+1)`.
pub fn mus_seed_amplitude(dim: usize) -> f64 {
    (2.0 + ((dim + 1) as f64).sqrt()).sqrt()
}

/// The unnormalized Fourier matrix `F_ab = q^{ab}`.
pub fn fourier_hadamard(dim: usize) -> ComplexMatrix {
    let roots = RootsOfUnity::new(dim);
    let mut h = ComplexMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            h[(a, b)] = roots.pow((a * b) as i64);
        }
    }
    h
}

/// Largest deviation of `H` from having unimodular entries and
/// `H^dagger H = N 1`.
pub fn hadamard_defect(h: &ComplexMatrix) -> Result<f64> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let n = h.rows();
    let modulus = h.entries().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let gram = h.adjoint().try_mul(h)?;
    let ortho = gram.max_abs_diff(&ComplexMatrix::identity(n).scale(C64::new(n as f64, 0.0))) / n as f64;
    Ok(modulus.max(ortho))
}

/// Builds `N` equiangular vectors from a seed `(x, e^{i mu_1}, ...)` and a
/// complex Hadamard matrix: rephase the columns so the first row is all 1,
/// replace that row by `x`, then rephase the rows so that column 0 equals
/// the seed. Column `m` of the result is output vector `m`.
///
/// Every pair of outputs has inner product `x^2 - 1`, so with
/// `x = mus_seed_amplitude(N)` the normalized overlaps are `1/(N+1)`.
pub fn hadamard_extend(seed: &ComplexVector, h: &ComplexMatrix) -> Result<Vec<ComplexVector>> {
    let n = seed.dim();
    if !h.is_square() || h.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.rows() });
    }
    let defect = hadamard_defect(h)?;
    if defect > 1e-10 {
        return Err(Error::NotHadamard(defect));
    }
    let x = seed[0];
    if !(x.re > 0.0 && x.im.abs() <= 1e-12 * x.re) {
        return Err(Error::InvalidSeed(format!("first component must be real positive, got {x}")));
    }
    if let Some(z) = seed.iter().skip(1).find(|z| (z.norm() - 1.0).abs() > 1e-10) {
        return Err(Error::InvalidSeed(format!("components after the first must be unimodular, got {z}")));
    }
    // Column gauge: first row all 1.
    let mut g = h.clone();
    for m in 0..n {
        let phase = g[(0, m)];
        for a in 0..n {
            g[(a, m)] /= phase;
        }
    }
    // Row gauge: column 0 equals the seed below the first row.
    for a in 1..n {
        let phase = seed[a] / g[(a, 0)];
        for m in 0..n {
            g[(a, m)] *= phase;
        }
    }
    for m in 0..n {
        g[(0, m)] = C64::new(x.re, 0.0);
    }
    Ok(g.columns())
}

/// [`hadamard_extend`] for a seed whose real amplitude sits at `position`
/// instead of 0: the two coordinates are swapped before and after.
pub fn hadamard_extend_at(seed: &ComplexVector, h: &ComplexMatrix, position: usize) -> Result<Vec<ComplexVector>> {
    let n = seed.dim();
    if position >= n {
        return Err(Error::DimensionMismatch { expected: n, found: position + 1 });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, position);
    let swap = ComplexMatrix::permutation(&perm);
    let group = hadamard_extend(&swap.apply(seed)?, h)?;
    group.iter().map(|v| swap.apply(v)).collect()
}

/// Worst deviation from `1/(N+1)` over pairs of vectors taken from different
/// groups. This is the last step of the extension procedure.
pub fn cross_group_defect(groups: &[Vec<ComplexVector>]) -> Result<f64> {
    let dim = groups.first().and_then(|g| g.first()).map_or(0, ComplexVector::dim);
    let target = 1.0 / (dim + 1) as f64;
    let mut worst = 0.0_f64;
    for (s, ga) in groups.iter().enumerate() {
        for gb in &groups[s + 1..] {
            for u in ga {
                for v in gb {
                    worst = worst.max((fidelity(u, v)? - target).abs());
                }
            }
        }
    }
    Ok(worst)
}
