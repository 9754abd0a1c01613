//! Affine isometries `(I + A, v)` and finitely generated groups of them.
//!
//! Elements of fundamental groups of complete flat pseudo-Riemannian
//! homogeneous spaces have a rigid shape: `A² = 0`, `im A` is totally
//! isotropic and equals `(ker A)^⊥`, `A` is skew-adjoint and `Av = 0`. Any
//! two of them satisfy `A₁A₂ = -A₂A₁` and friends, so commutators collapse to
//! `(I + 2A₁A₂, 2A₁v₂)` and triple products vanish. That is why holonomy
//! questions and the spaces `U_Γ`, `U₀` can be settled on generators alone.
//!
//! In a Witt frame adapted to `U₀` every nilpotent part has the block shape
//! handled by [`block_form`].

mod blocks;
mod element;
mod presentation;

pub use blocks::{block_form, check_rules, combined_image, pair_in_w, BlockForm, RuleStatus, RulesReport};
pub use element::{
    commutator, commutator_formula, compose, inverse_of as inverse, pair_relations, validate, AffineIsometry, Check,
    PairRelations, ValidationReport,
};
pub use presentation::{AdmissibilityReport, GroupPresentation, Letter, Word};
