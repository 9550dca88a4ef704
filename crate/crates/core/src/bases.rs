//! Complete sets of mutually unbiased bases and the minimum-uncertainty test.
//!
//! In odd prime dimension the bases are the eigenbases of the `N + 1` cyclic
//! subgroups of `H(N)`, written as circulant matrices plus the standard and
//! Fourier bases. In dimension 4 they are the eigenbases of the five maximal
//! commuting sets of two-qubit Pauli operators.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::heisenberg::{two_qubit, Pauli};
use crate::linalg::{inner, orthonormality_defect, probabilities, ComplexMatrix, ComplexVector, RootsOfUnity, Tolerance, C64};
use crate::report::VerificationReport;

/// Identifies a basis inside a [`BasisSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    /// `k` in `0..N` for the prime-dimension construction.
    Index(usize),
    /// The Fourier basis, `k = infinity`.
    Infinity,
    /// Free-form label, e.g. the commuting Pauli triple.
    Named(String),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Index(k) => write!(f, "{k}"),
            BasisLabel::Infinity => write!(f, "inf"),
            BasisLabel::Named(s) => f.write_str(s),
        }
    }
}

pub type Basis = Vec<ComplexVector>;

/// Ordered orthonormal bases of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    dim: usize,
    bases: Vec<Basis>,
    labels: Vec<BasisLabel>,
}

impl BasisSet {
    /// Validates dimensions and orthonormality of every basis.
    pub fn new(dim: usize, bases: Vec<Basis>, labels: Vec<BasisLabel>, tol: Tolerance) -> Result<Self> {
        if labels.len() != bases.len() {
            return Err(Error::WrongVectorCount { expected: bases.len(), found: labels.len() });
        }
        for basis in &bases {
            if basis.len() != dim {
                return Err(Error::WrongVectorCount { expected: dim, found: basis.len() });
            }
            if let Some(v) = basis.iter().find(|v| v.dim() != dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
            let defect = orthonormality_defect(basis)?;
            if defect > tol.eps() {
                return Err(Error::NotOrthonormal(defect));
            }
        }
        Ok(Self { dim, bases, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.bases.len() == self.dim + 1
    }

    /// All vectors, basis by basis.
    pub fn vectors(&self) -> impl Iterator<Item = &ComplexVector> {
        self.bases.iter().flatten()
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Inverse of `a` mod `n`, if it exists.
pub fn mod_inverse(a: usize, n: usize) -> Option<usize> {
    let (mut r0, mut r1) = (n as i64, (a % n) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i64) as usize)
}

/// The `N + 1` mutually unbiased bases of an odd prime dimension.
///
/// Basis `k = 0` is the standard basis; `1 <= k < N` has components
/// `q^{(a-m)^2 / (2k)} / sqrt(N)` with the exponent's division taken mod
/// `N`; `k = infinity` is the Fourier basis `q^{am} / sqrt(N)`. Vector `m` of
/// basis `k` is column `m` of that matrix.
pub fn mub_prime(dim: usize) -> Result<BasisSet> {
    if dim % 2 == 0 || !is_prime(dim) {
        return Err(Error::UnsupportedDimension { dim, reason: "mub_prime needs an odd prime".into() });
    }
    let roots = RootsOfUnity::new(dim);
    let norm = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let n = dim as i64;

    let mut bases = vec![(0..dim).map(|m| ComplexVector::basis(dim, m)).collect::<Basis>()];
    let mut labels = vec![BasisLabel::Index(0)];
    for k in 1..dim {
        let inv = mod_inverse(2 * k, dim).expect("2k is a unit mod an odd prime") as i64;
        let basis = (0..n)
            .map(|m| {
                let entries = (0..n).map(|a| roots.pow((a - m) * (a - m) * inv) * norm).collect();
                ComplexVector::new(entries)
            })
            .collect();
        bases.push(basis);
        labels.push(BasisLabel::Index(k));
    }
    let fourier = (0..n)
        .map(|m| ComplexVector::new((0..n).map(|a| roots.pow(a * m) * norm).collect()))
        .collect();
    bases.push(fourier);
    labels.push(BasisLabel::Infinity);
    BasisSet::new(dim, bases, labels, Tolerance::DEFAULT)
}

/// The five maximal commuting triples of two-qubit Pauli operators whose
/// eigenbases make up the complete MUB set in dimension 4.
pub const PAULI_TRIPLES: [[(Pauli, Pauli); 3]; 5] = {
    use Pauli::*;
    [
        [(Z, I), (I, Z), (Z, Z)],
        [(X, I), (I, X), (X, X)],
        [(Y, I), (I, Y), (Y, Y)],
        [(X, Y), (Y, Z), (Z, X)],
        [(Y, X), (Z, Y), (X, Z)],
    ]
};

fn triple_label(triple: &[(Pauli, Pauli); 3]) -> String {
    triple
        .iter()
        .map(|(a, b)| format!("{}{}", a.symbol(), b.symbol()))
        .collect::<Vec<_>>()
        .join(",")
}

/// Joint eigenbasis of two commuting Hermitian involutions, ordered by
/// eigenvalue pairs `(+,+), (+,-), (-,+), (-,-)`; each vector has its first
/// nonzero component real positive.
fn joint_eigenbasis(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Basis> {
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let mut basis = Vec::with_capacity(n);
    for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let pa = id.sub(&a.scale(C64::new(-sa, 0.0)));
        let pb = id.sub(&b.scale(C64::new(-sb, 0.0)));
        let proj = &pa * &pb;
        let col = proj
            .columns()
            .into_iter()
            .fold(None::<ComplexVector>, |best, c| match best {
                Some(b) if b.norm() >= c.norm() - 1e-12 => Some(b),
                _ => Some(c),
            })
            .ok_or(Error::ZeroVector)?;
        basis.push(col.phase_fixed()?);
    }
    Ok(basis)
}

/// Complete set of five MUB in dimension 4 from [`PAULI_TRIPLES`].
pub fn mub_four() -> BasisSet {
    let mut bases = Vec::with_capacity(5);
    let mut labels = Vec::with_capacity(5);
    for triple in &PAULI_TRIPLES {
        let a = two_qubit(triple[0].0, triple[0].1);
        let b = two_qubit(triple[1].0, triple[1].1);
        bases.push(joint_eigenbasis(&a, &b).expect("Pauli projectors are nonzero"));
        labels.push(BasisLabel::Named(triple_label(triple)));
    }
    BasisSet::new(4, bases, labels, Tolerance::DEFAULT).expect("Pauli eigenbases are orthonormal")
}

/// Worst deviation of `|<e_m|f_n>|^2` from `1/N` over all pairs.
pub fn check_unbiased(b1: &[ComplexVector], b2: &[ComplexVector], tol: Tolerance) -> Result<VerificationReport> {
    let dim = b1.first().map_or(0, ComplexVector::dim);
    for v in b1.iter().chain(b2) {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
    }
    let target = 1.0 / dim as f64;
    let mut worst = 0.0_f64;
    for e in b1 {
        for f in b2 {
            worst = worst.max((inner(e, f)?.norm_sqr() - target).abs());
        }
    }
    Ok(VerificationReport::new("unbiased", target, worst, tol))
}

/// Pairwise unbiasedness of every pair of bases in the set.
pub fn check_mub_set(set: &BasisSet, tol: Tolerance) -> Result<VerificationReport> {
    let target = 1.0 / set.dim() as f64;
    let mut worst = 0.0_f64;
    let mut details = Vec::new();
    for s in 0..set.len() {
        for t in s + 1..set.len() {
            let r = check_unbiased(&set.bases[s], &set.bases[t], tol)?;
            worst = worst.max(r.max_deviation);
            details.push(json!({
                "pair": [set.labels[s].to_string(), set.labels[t].to_string()],
                "max_deviation": r.max_deviation,
            }));
        }
    }
    let mut report = VerificationReport::new("mub", target, worst, tol);
    report.details = details;
    if !set.is_complete() {
        report.details.push(json!({ "warning": format!("{} bases, a complete set has {}", set.len(), set.dim() + 1) }));
    }
    Ok(report)
}

/// Per-basis purities `s_k = sum_a p_a^2` of one vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MusReport {
    pub vector_id: String,
    pub labels: Vec<String>,
    pub purities: Vec<f64>,
    pub target: f64,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// False when the basis set has fewer than `N + 1` bases; the check still
    /// runs on the bases present.
    pub complete: bool,
    pub pass: bool,
}

impl MusReport {
    pub fn to_report(&self) -> VerificationReport {
        let mut r = VerificationReport::new(
            "mus",
            self.target,
            self.max_deviation,
            Tolerance::new(self.tolerance).unwrap_or_default(),
        );
        r.details.push(json!({
            "vector": self.vector_id,
            "bases": self.labels,
            "purities": self.purities,
            "complete": self.complete,
        }));
        r
    }
}

/// Tests `sum_a p_a^2 = 2/(N+1)` in every basis of the set. The vector must
/// already be normalized.
pub fn mus_check(v: &ComplexVector, set: &BasisSet, tol: Tolerance) -> Result<MusReport> {
    mus_check_labelled("", v, set, tol)
}

pub fn mus_check_labelled(id: &str, v: &ComplexVector, set: &BasisSet, tol: Tolerance) -> Result<MusReport> {
    if v.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: v.dim() });
    }
    let norm_dev = (v.norm() - 1.0).abs();
    if norm_dev > 1e-8 {
        return Err(Error::NotNormalized(norm_dev));
    }
    let n = set.dim() as f64;
    let target = 2.0 / (n + 1.0);
    let basis_tol = Tolerance::new(1e-8)?;
    let purities = set
        .bases()
        .iter()
        .map(|b| probabilities(v, b, basis_tol).map(|p| p.iter().map(|x| x * x).sum::<f64>()))
        .collect::<Result<Vec<f64>>>()?;
    let max_deviation = purities.iter().map(|s| (s - target).abs()).fold(0.0, f64::max);
    Ok(MusReport {
        vector_id: id.to_string(),
        labels: set.labels().iter().map(ToString::to_string).collect(),
        purities,
        target,
        max_deviation,
        tolerance: tol.eps(),
        complete: set.is_complete(),
        pass: max_deviation <= tol.eps(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{clock, monomial, shift, GroupParams};
    use crate::linalg::{projectively_equal, ONE};

    const TOL: Tolerance = Tolerance::DEFAULT;

    #[test]
    fn primes_and_inverses() {
        let primes: Vec<usize> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(2, 7), Some(4));
        assert_eq!(mod_inverse(6, 9), None);
        for n in [5usize, 7, 11] {
            for a in 1..n {
                assert_eq!(a * mod_inverse(a, n).unwrap() % n, 1);
            }
        }
    }

    #[test]
    fn mub_prime_rejects_bad_dimensions() {
        for n in [2usize, 4, 9, 15] {
            assert!(matches!(mub_prime(n), Err(Error::UnsupportedDimension { .. })));
        }
    }

    #[test]
    fn mub_prime_counts_and_unbiasedness() {
        for n in [3usize, 5, 7, 11, 13] {
            let set = mub_prime(n).unwrap();
            assert_eq!(set.len(), n + 1);
            assert!(set.is_complete());
            let r = check_mub_set(&set, Tolerance::new(1e-12).unwrap()).unwrap();
            assert!(r.pass, "N={n}: {}", r.max_deviation);
        }
    }

    /// Every mub_prime basis is fixed, vector by vector, by some
    /// non-identity Heisenberg element.
    #[test]
    fn mub_prime_bases_are_cyclic_subgroup_eigenbases() {
        for n in [3usize, 5, 7] {
            let params = GroupParams::new(n).unwrap();
            let set = mub_prime(n).unwrap();
            for (basis, label) in set.bases().iter().zip(set.labels()) {
                let fixer = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).skip(1).find(|&(i, j)| {
                    let g = monomial(&params, i, j);
                    basis.iter().all(|v| projectively_equal(&g.apply(v).unwrap(), v, TOL).unwrap())
                });
                assert!(fixer.is_some(), "N={n} basis {label}");
            }
            let z = clock(n).unwrap();
            let x = shift(n).unwrap();
            for v in &set.bases()[0] {
                assert!(projectively_equal(&z.apply(v).unwrap(), v, TOL).unwrap());
            }
            for v in set.bases().last().unwrap() {
                assert!(projectively_equal(&x.apply(v).unwrap(), v, TOL).unwrap());
            }
        }
    }

    #[test]
    fn unbiased_examples() {
        let set = mub_prime(5).unwrap();
        let r = check_unbiased(&set.bases()[0], &set.bases()[5], TOL).unwrap();
        assert!(r.pass && r.max_deviation < 1e-15);
        let same = check_unbiased(&set.bases()[2], &set.bases()[2], TOL).unwrap();
        assert!(!same.pass);
        assert!((same.max_deviation - 0.8).abs() < 1e-12);

        let three = mub_prime(3).unwrap();
        let r12 = check_unbiased(&three.bases()[1], &three.bases()[2], TOL).unwrap();
        assert!(r12.max_deviation < 1e-15);

        let mismatched = vec![ComplexVector::basis(2, 0)];
        assert!(matches!(
            check_unbiased(&mismatched, &three.bases()[0], TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mub_four_structure() {
        for triple in &PAULI_TRIPLES {
            let ops: Vec<_> = triple.iter().map(|&(a, b)| two_qubit(a, b)).collect();
            for a in &ops {
                for b in &ops {
                    assert!((a * b).max_abs_diff(&(b * a)) < 1e-15);
                }
            }
            assert!((&ops[0] * &ops[1]).proportionality(&ops[2], TOL).is_some());
        }
        let set = mub_four();
        assert_eq!(set.len(), 5);
        let std: Vec<_> = (0..4).map(|a| ComplexVector::basis(4, a)).collect();
        assert_eq!(set.bases()[0], std);
        let r = check_mub_set(&set, TOL).unwrap();
        assert!(r.pass, "{}", r.max_deviation);
        assert_eq!(r.details.len(), 10);
        for v in set.vectors() {
            let lead = v.iter().find(|z| z.norm() > 1e-12).unwrap();
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn mus_check_examples() {
        let three = mub_prime(3).unwrap();
        let v = ComplexVector::from_real(&[0.0, 1.0, -1.0]).normalized().unwrap();
        let r = mus_check(&v, &three, Tolerance::new(1e-12).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.purities.len(), 4);
        for s in &r.purities {
            assert!((s - 0.5).abs() < 1e-12);
        }

        let e0 = ComplexVector::basis(3, 0);
        let r = mus_check(&e0, &three, TOL).unwrap();
        assert!(!r.pass);
        assert!((r.purities[0] - 1.0).abs() < 1e-15);

        let unnormalized = ComplexVector::from_real(&[0.0, 1.0, -1.0]);
        assert!(mus_check(&unnormalized, &three, TOL).is_err());
    }

    #[test]
    fn mus_check_runs_on_incomplete_sets() {
        let full = mub_prime(5).unwrap();
        let partial = BasisSet::new(5, full.bases()[..2].to_vec(), full.labels()[..2].to_vec(), TOL).unwrap();
        let v = ComplexVector::basis(5, 0);
        let r = mus_check(&v, &partial, TOL).unwrap();
        assert!(!r.complete);
        assert_eq!(r.purities.len(), 2);
    }

    #[test]
    fn purity_bounds_and_flat_minimum() {
        let set = mub_prime(5).unwrap();
        // Flat in the standard basis: the Fourier vectors.
        for f in set.bases().last().unwrap() {
            let r = mus_check(f, &set, TOL).unwrap();
            assert!((r.purities[0] - 0.2).abs() < 1e-14);
            for s in &r.purities {
                assert!(*s >= 0.2 - 1e-14 && *s <= 1.0 + 1e-14);
            }
        }
        let skew = ComplexVector::new(vec![ONE, ONE * 0.5, ONE * 0.1, ONE * 0.0, ONE * 0.3]).normalized().unwrap();
        let r = mus_check(&skew, &set, TOL).unwrap();
        assert!(r.purities[0] > 0.2 + 1e-3);
    }
}
