//! The finite Heisenberg group `H(N)` in the clock-and-shift representation,
//! displacement operators for odd `N`, the parity involution and its
//! conjugates, and the handful of Clifford elements used in dimension 4.
//!
//! Group elements are compared projectively throughout: two operators are the
//! same element when one is a nonzero multiple of the other.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RootsOfUnity, Tolerance, UnitaryOp, C64, I, ONE, ZERO};

/// Dimension together with its root of unity and, for odd `N`, the inverse
/// of 2 mod `N`.
#[derive(Debug, Clone)]
pub struct GroupParams {
    dim: usize,
    roots: RootsOfUnity,
    half: Option<usize>,
}

impl GroupParams {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::UnsupportedDimension { dim, reason: "the Heisenberg group needs N >= 2".into() });
        }
        let half = (dim % 2 == 1).then_some(dim.div_ceil(2));
        Ok(Self { dim, roots: RootsOfUnity::new(dim), half })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &RootsOfUnity {
        &self.roots
    }

    /// `q = exp(2 pi i / N)`.
    pub fn q(&self) -> C64 {
        self.roots.pow(1)
    }

    /// `n` with `2n = 1 mod N`; `None` for even `N`.
    pub fn half(&self) -> Option<usize> {
        self.half
    }
}

/// A pair `(i, j)` of integers mod `N` labelling `D(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DisplacementIndex {
    pub i: usize,
    pub j: usize,
}

impl DisplacementIndex {
    /// Reduces both components mod `dim`.
    pub fn new(i: i64, j: i64, dim: usize) -> Self {
        let n = dim as i64;
        Self { i: i.rem_euclid(n) as usize, j: j.rem_euclid(n) as usize }
    }

    pub fn all(dim: usize) -> impl Iterator<Item = DisplacementIndex> {
        (0..dim).flat_map(move |i| (0..dim).map(move |j| DisplacementIndex { i, j }))
    }
}

/// Clock `Z = diag(1, q, ..., q^{N-1})`.
pub fn clock(dim: usize) -> Result<UnitaryOp> {
    let params = GroupParams::new(dim)?;
    let diag: Vec<C64> = (0..dim).map(|a| params.roots.pow(a as i64)).collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

/// Shift `X` with `X e_b = e_{b+1}`, i.e. `(X x)_a = x_{a-1}`.
pub fn shift(dim: usize) -> Result<UnitaryOp> {
    GroupParams::new(dim)?;
    let perm: Vec<usize> = (0..dim).map(|b| (b + 1) % dim).collect();
    Ok(ComplexMatrix::permutation(&perm))
}

/// `X^i Z^j` as an explicit matrix: entry `(a, b)` is `q^{bj}` when
/// `a = b + i`.
pub fn monomial(params: &GroupParams, i: usize, j: usize) -> UnitaryOp {
    let n = params.dim;
    let mut m = ComplexMatrix::zeros(n, n);
    for b in 0..n {
        m[((b + i) % n, b)] = params.roots.pow((b * j) as i64);
    }
    m
}

/// `D(i, j) = q^{nij} X^i Z^j`, defined for odd `N` only.
pub fn displacement(params: &GroupParams, d: DisplacementIndex) -> Result<UnitaryOp> {
    let half = params.half.ok_or_else(|| Error::UnsupportedDimension {
        dim: params.dim,
        reason: "displacement operators need odd N (2 must be invertible mod N)".into(),
    })?;
    let phase = params.roots.pow((half * d.i * d.j) as i64);
    Ok(monomial(params, d.i, d.j).scale(phase))
}

/// Parity `A`, the involution `x_a <-> x_{-a}`.
pub fn parity(dim: usize) -> UnitaryOp {
    let perm: Vec<usize> = (0..dim).map(|b| (dim - b) % dim).collect();
    ComplexMatrix::permutation(&perm)
}

/// `A_ij = D(i, j) A D(i, j)^dagger`.
pub fn conjugated_involution(params: &GroupParams, d: DisplacementIndex) -> Result<UnitaryOp> {
    let dij = displacement(params, d)?;
    Ok(&(&dij * &parity(params.dim)) * &dij.adjoint())
}

/// All involutions `g A g^dagger` for `g` in `H(N)`, up to phase, in order of
/// first appearance over `X^i Z^j`.
pub fn involution_orbit(params: &GroupParams, tol: Tolerance) -> Vec<UnitaryOp> {
    let a = parity(params.dim);
    let mut distinct: Vec<UnitaryOp> = Vec::new();
    for d in DisplacementIndex::all(params.dim) {
        let g = monomial(params, d.i, d.j);
        let conj = &(&g * &a) * &g.adjoint();
        if !distinct.iter().any(|m| conj.proportionality(m, tol).is_some()) {
            distinct.push(conj);
        }
    }
    distinct
}

fn e_pi_4() -> C64 {
    C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

/// The `H(4)` generators in the basis that diagonalizes the two invariant
/// quadrics of the elliptic normal curve.
pub fn d4_generators_diagonal_basis() -> (UnitaryOp, UnitaryOp) {
    let w = e_pi_4();
    let z = ComplexMatrix::from_rows(&[
        vec![ZERO, ONE, ZERO, ZERO],
        vec![-I, ZERO, ZERO, ZERO],
        vec![ZERO, ZERO, ZERO, -I],
        vec![ZERO, ZERO, -ONE, ZERO],
    ])
    .expect("4x4")
    .scale(w);
    let x = ComplexMatrix::from_rows(&[
        vec![ZERO, ZERO, ONE, ZERO],
        vec![ZERO, ZERO, ZERO, ONE],
        vec![-I, ZERO, ZERO, ZERO],
        vec![ZERO, I, ZERO, ZERO],
    ])
    .expect("4x4")
    .scale(w);
    (z, x)
}

/// The order-3 Clifford element cycling coordinates 1 -> 2 -> 3 -> 1 and
/// fixing the first.
pub fn zauner_rotation() -> UnitaryOp {
    ComplexMatrix::permutation(&[0, 2, 3, 1])
}

/// `F` with `F^2 = diag(1, 1, 1, -1)`.
pub fn clifford_sqrt() -> UnitaryOp {
    let mut f = ComplexMatrix::permutation(&[0, 2, 1, 3]);
    f[(3, 3)] = I;
    f
}

/// The four parity involutions of `H(4)` in the diagonal basis,
/// `diag(1, .., -1 at k, .., 1)` for `k = 3, 2, 1, 0`.
pub fn d4_involutions() -> Vec<UnitaryOp> {
    (0..4)
        .rev()
        .map(|k| {
            let diag: Vec<C64> = (0..4).map(|a| if a == k { -ONE } else { ONE }).collect();
            ComplexMatrix::diagonal(&diag)
        })
        .collect()
}

/// Square roots of the four involutions obtained from `F` by relabelling
/// coordinates: swap two of the three coordinates where the involution is
/// `+1` and multiply the remaining `-1` coordinate by `i`. Twelve in all.
pub fn d4_involution_square_roots() -> Vec<UnitaryOp> {
    let mut roots = Vec::with_capacity(12);
    for k in (0..4).rev() {
        let others: Vec<usize> = (0..4).filter(|&a| a != k).collect();
        for (s, t) in [(0, 1), (0, 2), (1, 2)] {
            let (a, b) = (others[s], others[t]);
            let mut perm: Vec<usize> = (0..4).collect();
            perm.swap(a, b);
            let mut m = ComplexMatrix::permutation(&perm);
            m[(k, k)] = I;
            roots.push(m);
        }
    }
    roots
}

/// Single-qubit Pauli labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Hermitian Pauli matrix.
    pub fn matrix(self) -> UnitaryOp {
        let rows = match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        };
        ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2")
    }

    /// Real representative of the same projective element (`Y` becomes `XZ`).
    pub fn real_matrix(self) -> UnitaryOp {
        match self {
            Pauli::Y => &Pauli::X.matrix() * &Pauli::Z.matrix(),
            p => p.matrix(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `a (x) b` with Hermitian factors.
pub fn two_qubit(a: Pauli, b: Pauli) -> UnitaryOp {
    a.matrix().kron(&b.matrix())
}

/// The group `H(2) (x) H(2)` as its 16 projectively distinct real operators,
/// ordered `II, IX, IY, IZ, XI, ...`.
pub fn eddington_group() -> Vec<UnitaryOp> {
    Pauli::ALL
        .iter()
        .flat_map(|&a| Pauli::ALL.iter().map(move |&b| a.real_matrix().kron(&b.real_matrix())))
        .collect()
}

/// The `N^2` elements of a Heisenberg group acting on `C^N`, indexed by
/// `i * N + j`, with the identity at index 0.
///
/// * odd `N`: `D(i, j)`;
/// * `N = 4`: `X^i Z^j` built from [`d4_generators_diagonal_basis`];
/// * other even `N`: clock-and-shift monomials `X^i Z^j`.
#[derive(Debug, Clone)]
pub struct HeisenbergAction {
    dim: usize,
    elements: Vec<UnitaryOp>,
}

impl HeisenbergAction {
    pub fn for_dim(dim: usize) -> Result<Self> {
        let params = GroupParams::new(dim)?;
        let elements = if params.half().is_some() {
            DisplacementIndex::all(dim).map(|d| displacement(&params, d)).collect::<Result<Vec<_>>>()?
        } else if dim == 4 {
            let (z, x) = d4_generators_diagonal_basis();
            let mut out = Vec::with_capacity(16);
            for i in 0..4 {
                for j in 0..4 {
                    out.push(&x.pow(i)? * &z.pow(j)?);
                }
            }
            out
        } else {
            DisplacementIndex::all(dim).map(|d| monomial(&params, d.i, d.j)).collect()
        };
        Ok(Self { dim, elements })
    }

    /// Clock-and-shift monomials `X^i Z^j` for any `N >= 2`.
    pub fn clock_shift(dim: usize) -> Result<Self> {
        let params = GroupParams::new(dim)?;
        let elements = DisplacementIndex::all(dim).map(|d| monomial(&params, d.i, d.j)).collect();
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[UnitaryOp] {
        &self.elements
    }

    pub fn element(&self, d: DisplacementIndex) -> &UnitaryOp {
        &self.elements[d.i * self.dim + d.j]
    }

    /// Whether `u g u^dagger` is proportional to some element for every `g`.
    pub fn is_normalized_by(&self, u: &UnitaryOp, tol: Tolerance) -> bool {
        let ud = u.adjoint();
        self.elements.iter().all(|g| {
            let c = &(u * g) * &ud;
            self.elements.iter().any(|h| c.proportionality(h, tol).is_some())
        })
    }
}
