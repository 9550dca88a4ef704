//! JSON interchange for vectors, bases and operators, and a serializer that
//! writes every float with 17 significant digits so values round-trip.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::bases::{Basis, BasisSet};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    /// Each row is one vector.
    Vectors,
    /// Consecutive groups of `dim` rows are the vectors of one basis.
    Bases,
    /// The rows of a square matrix.
    Operator,
}

/// `{"dim", "kind", "data", "formula"?, "labels"?}` with complex entries
/// stored as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub kind: MatrixKind,
    pub data: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn row_of(v: &ComplexVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl MatrixFile {
    pub fn from_vectors(dim: usize, vectors: &[ComplexVector]) -> Self {
        Self { dim, kind: MatrixKind::Vectors, data: vectors.iter().map(row_of).collect(), formula: None, labels: None }
    }

    pub fn from_bases(set: &BasisSet) -> Self {
        Self {
            dim: set.dim(),
            kind: MatrixKind::Bases,
            data: set.vectors().map(row_of).collect(),
            formula: None,
            labels: Some(set.labels().iter().map(ToString::to_string).collect()),
        }
    }

    pub fn from_operator(m: &ComplexMatrix) -> Self {
        let data = (0..m.rows()).map(|i| row_of(&m.row(i))).collect();
        Self { dim: m.rows(), kind: MatrixKind::Operator, data, formula: None, labels: None }
    }

    pub fn with_formula(mut self, formula: impl Into<String>) -> Self {
        self.formula = Some(formula.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// Rows of length `dim`, finite entries, and a row count that fits the
    /// kind.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Format("dim must be positive".into()));
        }
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.dim {
                return Err(Error::Format(format!("row {i} has {} entries, expected {}", row.len(), self.dim)));
            }
            if row.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Format(format!("row {i} has a non-finite entry")));
            }
        }
        match self.kind {
            MatrixKind::Vectors if self.data.is_empty() => Err(Error::Format("no vectors".into())),
            MatrixKind::Bases if self.data.is_empty() || self.data.len() % self.dim != 0 => Err(Error::Format(
                format!("{} rows do not split into bases of {} vectors", self.data.len(), self.dim),
            )),
            MatrixKind::Operator if self.data.len() != self.dim => {
                Err(Error::Format(format!("operator has {} rows, expected {}", self.data.len(), self.dim)))
            }
            _ => Ok(()),
        }
    }

    pub fn vectors(&self) -> Vec<ComplexVector> {
        self.data.iter().map(|r| ComplexVector::new(r.iter().map(|&[re, im]| C64::new(re, im)).collect())).collect()
    }

    pub fn bases(&self) -> Result<Vec<Basis>> {
        if self.kind != MatrixKind::Bases {
            return Err(Error::Format("expected kind \"bases\"".into()));
        }
        self.validate()?;
        Ok(self.vectors().chunks(self.dim).map(<[ComplexVector]>::to_vec).collect())
    }

    pub fn operator(&self) -> Result<ComplexMatrix> {
        if self.kind != MatrixKind::Operator {
            return Err(Error::Format("expected kind \"operator\"".into()));
        }
        self.validate()?;
        let rows: Vec<Vec<C64>> = self.vectors().into_iter().map(ComplexVector::into_entries).collect();
        ComplexMatrix::from_rows(&rows)
    }

    /// Parses and validates. Syntax errors carry serde's line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }
}

/// Pretty printer that writes floats as `{:.16e}`.
struct PreciseFormatter(PrettyFormatter<'static>);

impl Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Pretty JSON with 17 significant digits per float and a trailing newline.
/// Non-finite floats become `null`.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}
