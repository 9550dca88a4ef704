//! Projective geometry around the Heisenberg groups: the Hesse pencil in
//! dimension 3, the Segre configurations in odd prime dimension, the Kummer
//! configuration and the invariant elliptic curve in dimension 4.

pub mod hesse;
pub mod incidence;
pub mod kummer;
pub mod quadrics;
pub mod segre;

pub use hesse::{
    cubic_add, hesse_configuration, hesse_cubic, hesse_gradient, hessian_cubic, inflection_points,
    inflection_triangles, singular_params, HesseCubic, HessePencilParam, HESSE_SIGNATURE, HESSE_TABLE,
};
pub use incidence::{IncidenceStructure, Pairing, Signature};
pub use kummer::{kummer_configuration, KUMMER_SIGNATURE};
pub use quadrics::{elliptic_quadrics, quartic, sample_curve_point, CurvePointD4, EllipticQuadrics};
pub use segre::{segre_configuration, segre_intersection_check, segre_sharing_check, segre_signature};
