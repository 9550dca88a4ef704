//! MUB vectors against the positive-parity eigenspaces of the involutions
//! `A_ij` in odd prime dimension.

use nalgebra::DMatrix;
use serde_json::json;

use super::incidence::{IncidenceStructure, Signature};
use crate::bases::mub_prime;
use crate::error::{Error, Result};
use crate::heisenberg::{conjugated_involution, DisplacementIndex, GroupParams};
use crate::linalg::{fidelity, ComplexMatrix, ComplexVector, Tolerance, C64};
use crate::report::VerificationReport;

/// Relative residual `|A v - v| / |v|` below which `v` lies in the `+1`
/// eigenspace.
pub const EIGENSPACE_THRESHOLD: f64 = 1e-8;

/// `(N(N+1)_N, N^2_{N+1})`.
pub fn segre_signature(dim: usize) -> Signature {
    Signature::new(dim * (dim + 1), dim, dim * dim, dim + 1)
}

/// The involutions `A_ij`, in the order `(i, j) = (0, 0), (0, 1), ...`.
pub fn segre_involutions(dim: usize) -> Result<Vec<ComplexMatrix>> {
    let params = GroupParams::new(dim)?;
    DisplacementIndex::all(dim).map(|d| conjugated_involution(&params, d)).collect()
}

fn check_dim(dim: usize) -> Result<()> {
    if dim % 2 == 0 || !crate::bases::is_prime(dim) {
        return Err(Error::UnsupportedDimension { dim, reason: "Segre configuration needs an odd prime".into() });
    }
    Ok(())
}

/// Points are the `N(N+1)` MUB vectors (labelled `k:m`), blocks the `N^2`
/// eigenspaces `A_ij v = v` (labelled `A(i,j)`).
pub fn segre_configuration(dim: usize) -> Result<IncidenceStructure> {
    check_dim(dim)?;
    let set = mub_prime(dim)?;
    let involutions = segre_involutions(dim)?;
    let mut point_labels = Vec::new();
    let mut matrix = Vec::new();
    for (label, basis) in set.labels().iter().zip(set.bases()) {
        for (m, v) in basis.iter().enumerate() {
            point_labels.push(format!("{label}:{m}"));
            let row = involutions
                .iter()
                .map(|a| Ok(a.apply(v)?.sub(v).norm() <= EIGENSPACE_THRESHOLD * v.norm()))
                .collect::<Result<Vec<bool>>>()?;
            matrix.push(row);
        }
    }
    let block_labels = DisplacementIndex::all(dim).map(|d| format!("A({},{})", d.i, d.j)).collect();
    IncidenceStructure::from_matrix(format!("segre-{dim}"), point_labels, block_labels, matrix)
}

fn to_nalgebra(rows: &[&ComplexMatrix]) -> DMatrix<C64> {
    let n = rows[0].cols();
    let total: usize = rows.iter().map(|m| m.rows()).sum();
    let mut out = DMatrix::zeros(total, n);
    let mut offset = 0;
    for m in rows {
        for i in 0..m.rows() {
            for j in 0..n {
                out[(offset + i, j)] = m[(i, j)];
            }
        }
        offset += m.rows();
    }
    out
}

/// Dimension and, when it is one, a spanning vector of the intersection of
/// the `+1` eigenspaces of `a1` and `a2`: the null space of the stacked
/// matrix `[a1 - 1; a2 - 1]`.
pub fn eigenspace_intersection(a1: &ComplexMatrix, a2: &ComplexMatrix) -> (usize, Option<ComplexVector>) {
    let n = a1.cols();
    let id = ComplexMatrix::identity(n);
    let (m1, m2) = (a1.sub(&id), a2.sub(&id));
    let stacked = to_nalgebra(&[&m1, &m2]);
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let scale = svd.singular_values.max().max(1.0);
    let null: Vec<usize> = (0..n).filter(|&k| svd.singular_values[k] <= 1e-8 * scale).collect();
    let vector = (null.len() == 1).then(|| {
        let k = null[0];
        ComplexVector::new((0..n).map(|j| v_t[(k, j)].conj()).collect())
    });
    (null.len(), vector)
}

/// For every pair of blocks, checks that the eigenspaces meet in a single
/// ray and that this ray is one of the configuration points. The deviation
/// is the worst `1 - max_p |<p|v>|^2` over pairs (1 for a pair whose
/// intersection is not one-dimensional).
pub fn segre_intersection_check(dim: usize, tol: Tolerance) -> Result<VerificationReport> {
    check_dim(dim)?;
    let involutions = segre_involutions(dim)?;
    let points: Vec<ComplexVector> = mub_prime(dim)?.vectors().cloned().collect();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for b1 in 0..involutions.len() {
        for b2 in b1 + 1..involutions.len() {
            let (nullity, vector) = eigenspace_intersection(&involutions[b1], &involutions[b2]);
            let dev = match vector {
                Some(v) => {
                    let best = points.iter().map(|p| fidelity(p, &v)).collect::<Result<Vec<f64>>>()?;
                    1.0 - best.into_iter().fold(0.0, f64::max)
                }
                None => 1.0,
            };
            if dev > tol.eps() {
                failures.push(json!({"blocks": [b1, b2], "intersection_dim": nullity, "deviation": dev}));
            }
            worst = worst.max(dev);
        }
    }
    let pairs = involutions.len() * (involutions.len() - 1) / 2;
    Ok(VerificationReport::new(format!("segre-intersections-{dim}"), 0.0, worst, tol)
        .with_detail(json!({"pairs": pairs, "failures": failures})))
}

/// Vectors of one basis share no block; vectors of different bases share
/// exactly one. The deviation counts offending pairs.
pub fn segre_sharing_check(structure: &IncidenceStructure, dim: usize) -> VerificationReport {
    let basis_of = |p: usize| p / dim;
    let mut bad = 0usize;
    for p in 0..structure.num_points() {
        for q in p + 1..structure.num_points() {
            let expected = if basis_of(p) == basis_of(q) { 0 } else { 1 };
            if structure.common_blocks(p, q) != expected {
                bad += 1;
            }
        }
    }
    VerificationReport::new(
        format!("segre-sharing-{dim}"),
        0.0,
        bad as f64,
        Tolerance::new(0.0).expect("zero is valid"),
    )
}

/// In dimension 3 each `A_ij` has a one-dimensional `-1` eigenspace; these
/// nine rays form the dual configuration.
pub fn segre_dual_points() -> Result<Vec<ComplexVector>> {
    let id = ComplexMatrix::identity(3);
    segre_involutions(3)?
        .iter()
        .map(|a| {
            // Columns of (1 - A)/2 span the -1 eigenspace.
            let proj = id.sub(a);
            let best = proj
                .columns()
                .into_iter()
                .max_by(|u, v| u.norm_sqr().total_cmp(&v.norm_sqr()))
                .expect("three columns");
            best.normalized()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::parity;
    use crate::linalg::same_ray_set;
    use crate::sic::sic_d3;

    #[test]
    fn zeroth_columns_have_positive_parity() {
        for dim in [3, 5, 7] {
            let a = parity(dim);
            for basis in mub_prime(dim).unwrap().bases() {
                let v = &basis[0];
                assert!(a.apply(v).unwrap().sub(v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn signatures() {
        for dim in [3, 5, 7] {
            let s = segre_configuration(dim).unwrap();
            assert_eq!(s.signature(), Some(segre_signature(dim)), "N = {dim}");
            assert!(s.check_signature(segre_signature(dim)).pass);
            assert!(segre_sharing_check(&s, dim).pass);
        }
        assert_eq!(segre_configuration(3).unwrap().dual().signature(), Some(Signature::new(9, 4, 12, 3)));
    }

    #[test]
    fn non_prime_rejected() {
        for dim in [2, 4, 9] {
            assert!(matches!(segre_configuration(dim), Err(Error::UnsupportedDimension { .. })));
        }
    }

    #[test]
    fn intersections_are_configuration_points() {
        for dim in [3, 5] {
            let r = segre_intersection_check(dim, Tolerance::new(1e-10).unwrap()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn dual_points_are_the_sic() {
        let dual = segre_dual_points().unwrap();
        assert!(same_ray_set(&dual, sic_d3().vectors(), Tolerance::new(1e-10).unwrap()).unwrap());
    }
}
