//! Superconformal algebra presentations: Virasoro, N=1 Neveu-Schwarz and
//! Ramond, the shifted N=2 family and the mirror-twisted N=2 algebra.
//!
//! Elements are finite combinations of generators plus a multiple of the
//! central element, written `Z`. Brackets, spectral flow, the automorphisms
//! σ_ξ, κ and parity, and the change between the homogeneous (G⁺, G⁻) and
//! nonhomogeneous (G1, G2) bases are all exact.

mod checks;
mod maps;
mod presentation;

pub use checks::{
    homomorphism_check, jacobi_check, HomomorphismFailure, HomomorphismReport, JacobiFailure,
    JacobiReport,
};
pub use maps::{apply_map, basis_change, spectral_flow, virasoro_auto, AlgebraMap, Direction, VirasoroAuto};
pub use presentation::{AlgElement, Basis, Family, GenSymbol, Presentation, Tag};

/// Bracket of two elements in a presentation.
pub fn bracket(pres: &Presentation, a: &AlgElement, b: &AlgElement) -> crate::Result<AlgElement> {
    pres.bracket(a, b)
}
