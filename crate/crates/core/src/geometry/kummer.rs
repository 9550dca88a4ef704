//! The 16 Eddington vectors against the 16 planes in the orbit of the row
//! vector `(x, alpha, alpha, alpha)`.

use super::incidence::{IncidenceStructure, Pairing, Signature};
use crate::heisenberg::eddington_group;
use crate::linalg::{ComplexVector, C64};
use crate::sic::{d4_amplitude, eddington_mus16, eddington_phase};

pub const KUMMER_SIGNATURE: Signature = Signature::new(16, 6, 16, 6);

/// The row vector `(x, alpha, alpha, alpha)`.
pub fn kummer_reference_plane() -> ComplexVector {
    let alpha = eddington_phase();
    ComplexVector::new(vec![C64::new(d4_amplitude(), 0.0), alpha, alpha, alpha])
}

/// The planes `r g` for `g` in the Eddington group, in group order.
pub fn kummer_planes() -> Vec<ComplexVector> {
    let r0 = kummer_reference_plane();
    eddington_group().iter().map(|g| g.apply_row(&r0).expect("dimension 4")).collect()
}

/// Points are [`eddington_mus16`], planes [`kummer_planes`], with the
/// bilinear pairing of row against column.
pub fn kummer_configuration() -> IncidenceStructure {
    let points = eddington_mus16();
    let point_labels = (0..points.len()).map(|k| format!("E{k}")).collect();
    let plane_labels = (0..16).map(|k| format!("P{k}")).collect();
    IncidenceStructure::from_hyperplanes(
        "kummer",
        &points,
        &kummer_planes(),
        Pairing::Bilinear,
        point_labels,
        plane_labels,
    )
    .expect("all vectors live in C^4")
}
