//! Structural recognizers for the A, D and affine D mutation classes, each
//! returning a certificate of vertex roles and motif arrows, plus a combined
//! classifier with registry fallback.

pub mod affine;
pub mod cert;
pub mod cycles;
mod template;
pub mod type_a;
pub mod type_d;
pub mod verdict;

pub use affine::{is_type_d_affine, type_d_affine_matches, DTildeSubtype};
pub use cert::{Certificate, Role};
pub use cycles::{chordless_cycles, find_central_cycles, CentralCycle};
pub use type_a::{connecting_vertices, is_connecting_vertex, is_mutation_type_a, is_type_a};
pub use type_d::{is_type_d, type_d_matches, DSubtype};
pub use verdict::{check_certificate, classify, Method, Subtype, TypeVerdict};

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    NotTypeA,
    CertificateMismatch,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::NotTypeA => f.write_str("quiver is not of type A"),
            ClassifyError::CertificateMismatch => f.write_str("certificate does not belong to this quiver"),
        }
    }
}

impl std::error::Error for ClassifyError {}
