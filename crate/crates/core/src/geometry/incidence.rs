use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexVector, Tolerance};
use crate::report::VerificationReport;

/// Relative threshold below which a pairing counts as zero.
pub const INCIDENCE_THRESHOLD: f64 = 1e-8;

/// How a block vector is paired with a point vector to decide incidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// `<block|point>`, the bra-ket duality between points and lines.
    Hermitian,
    /// `sum_a block_a point_a`, hyperplane coordinates as a row vector.
    Bilinear,
}

/// Configuration symbol `(p_a, b_c)`: `points` points each on `point_degree`
/// blocks, `blocks` blocks each containing `block_size` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub points: usize,
    pub point_degree: usize,
    pub blocks: usize,
    pub block_size: usize,
}

impl Signature {
    pub const fn new(points: usize, point_degree: usize, blocks: usize, block_size: usize) -> Self {
        Self { points, point_degree, blocks, block_size }
    }

    pub fn dual(self) -> Self {
        Self::new(self.blocks, self.block_size, self.points, self.point_degree)
    }

    pub fn incidences(self) -> usize {
        self.points * self.point_degree
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}_{}, {}_{})", self.points, self.point_degree, self.blocks, self.block_size)
    }
}

/// Bipartite point/block membership relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub name: String,
    pub point_labels: Vec<String>,
    pub block_labels: Vec<String>,
    /// `matrix[p][b]` is true iff point `p` lies on block `b`.
    pub matrix: Vec<Vec<bool>>,
}

impl IncidenceStructure {
    pub fn from_matrix(
        name: impl Into<String>,
        point_labels: Vec<String>,
        block_labels: Vec<String>,
        matrix: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if matrix.len() != point_labels.len() {
            return Err(Error::WrongVectorCount { expected: point_labels.len(), found: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != block_labels.len()) {
            return Err(Error::WrongVectorCount { expected: block_labels.len(), found: row.len() });
        }
        Ok(Self { name: name.into(), point_labels, block_labels, matrix })
    }

    /// Incidence where the pairing of block and point vanishes relative to
    /// the product of their norms.
    pub fn from_hyperplanes(
        name: impl Into<String>,
        points: &[ComplexVector],
        blocks: &[ComplexVector],
        pairing: Pairing,
        point_labels: Vec<String>,
        block_labels: Vec<String>,
    ) -> Result<Self> {
        let matrix = points
            .iter()
            .map(|p| {
                blocks
                    .iter()
                    .map(|b| {
                        let value = match pairing {
                            Pairing::Hermitian => inner(b, p)?,
                            Pairing::Bilinear => b.bilinear(p)?,
                        };
                        Ok(value.norm() <= INCIDENCE_THRESHOLD * b.norm() * p.norm())
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(name, point_labels, block_labels, matrix)
    }

    pub fn num_points(&self) -> usize {
        self.matrix.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_labels.len()
    }

    pub fn point_degrees(&self) -> Vec<usize> {
        self.matrix.iter().map(|r| r.iter().filter(|&&x| x).count()).collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        (0..self.num_blocks()).map(|b| self.matrix.iter().filter(|r| r[b]).count()).collect()
    }

    pub fn total_incidences(&self) -> usize {
        self.point_degrees().iter().sum()
    }

    /// The configuration symbol, if every point has the same degree and every
    /// block the same size.
    pub fn signature(&self) -> Option<Signature> {
        let degrees = self.point_degrees();
        let sizes = self.block_sizes();
        let a = *degrees.first()?;
        let c = *sizes.first()?;
        (degrees.iter().all(|&d| d == a) && sizes.iter().all(|&s| s == c))
            .then(|| Signature::new(self.num_points(), a, self.num_blocks(), c))
    }

    /// Swap the roles of points and blocks.
    pub fn dual(&self) -> Self {
        let matrix = (0..self.num_blocks()).map(|b| self.matrix.iter().map(|r| r[b]).collect()).collect();
        Self {
            name: format!("{} (dual)", self.name),
            point_labels: self.block_labels.clone(),
            block_labels: self.point_labels.clone(),
            matrix,
        }
    }

    /// Blocks containing both points.
    pub fn common_blocks(&self, p: usize, q: usize) -> usize {
        self.matrix[p].iter().zip(&self.matrix[q]).filter(|(a, b)| **a && **b).count()
    }

    /// Rows as strings of `x` (incident) and `.`.
    pub fn rows_as_strings(&self) -> Vec<String> {
        self.matrix.iter().map(|r| r.iter().map(|&x| if x { 'x' } else { '.' }).collect()).collect()
    }

    /// Counts points and blocks whose degree differs from the expected
    /// symbol, plus any difference in the number of points or blocks. Passes
    /// iff that count is zero.
    pub fn check_signature(&self, expected: Signature) -> VerificationReport {
        let bad_points = self.point_degrees().iter().filter(|&&d| d != expected.point_degree).count();
        let bad_blocks = self.block_sizes().iter().filter(|&&s| s != expected.block_size).count();
        let count_mismatch =
            self.num_points().abs_diff(expected.points) + self.num_blocks().abs_diff(expected.blocks);
        let deviation = (bad_points + bad_blocks + count_mismatch) as f64;
        let tol = Tolerance::new(0.0).expect("zero is valid");
        VerificationReport::new(format!("incidence:{}", self.name), 0.0, deviation, tol).with_detail(json!({
            "expected": [expected.points, expected.point_degree, expected.blocks, expected.block_size],
            "found": self.signature().map(|s| vec![s.points, s.point_degree, s.blocks, s.block_size]),
            "total_incidences": self.total_incidences(),
            "point_labels": self.point_labels,
            "block_labels": self.block_labels,
            "matrix": self.rows_as_strings(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> IncidenceStructure {
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        let matrix = (0..7).map(|p| lines.iter().map(|l| l.contains(&p)).collect()).collect();
        let labels = |n: usize| (0..n).map(|k| k.to_string()).collect::<Vec<_>>();
        IncidenceStructure::from_matrix("fano", labels(7), labels(7), matrix).unwrap()
    }

    #[test]
    fn fano_plane_signature() {
        let f = fano();
        assert_eq!(f.signature(), Some(Signature::new(7, 3, 7, 3)));
        assert_eq!(f.total_incidences(), 21);
        assert!(f.check_signature(Signature::new(7, 3, 7, 3)).pass);
        let wrong = f.check_signature(Signature::new(7, 4, 7, 3));
        assert!(!wrong.pass);
        assert_eq!(wrong.max_deviation, 7.0);
        for p in 0..7 {
            for q in p + 1..7 {
                assert_eq!(f.common_blocks(p, q), 1);
            }
        }
    }

    #[test]
    fn dual_transposes() {
        let f = fano();
        let d = f.dual();
        assert_eq!(d.dual().matrix, f.matrix);
        assert_eq!(Signature::new(9, 4, 12, 3).dual(), Signature::new(12, 3, 9, 4));
    }

    #[test]
    fn ragged_matrix_rejected() {
        let r = IncidenceStructure::from_matrix("x", vec!["a".into()], vec!["b".into()], vec![vec![true, false]]);
        assert!(r.is_err());
    }

    #[test]
    fn irregular_structure_has_no_signature() {
        let s = IncidenceStructure::from_matrix(
            "irregular",
            vec!["p".into(), "q".into()],
            vec!["b".into()],
            vec![vec![true], vec![false]],
        )
        .unwrap();
        assert_eq!(s.signature(), None);
    }
}
