//! Fixed points of group elements, with certificates.
//!
//! A point `p` is fixed by `(I + A, v)` iff `Ap = -v`. For the commutator
//! `γ₃ = [γ₁, γ₂]` of two elements with non-commuting linear parts, `γ₃`
//! has only a `C₃` block and a translation `u₃ ∈ U₀`, so any `u*` with
//! `C₃u* = u₃` gives the fixed point `-u* ∈ U₀*`. The [`Route`]s are
//! sufficient conditions for such a `u*` to exist, each turned into a
//! construction. A route whose hypotheses fail says nothing about freeness.

mod diagnostic;
mod family;
mod routes;

use std::fmt;

use crate::error::Result;
use crate::exactlin::scalar::format_scalar;
use crate::exactlin::{solve, Scalar, Vector};
use crate::isogrp::{AffineIsometry, GroupPresentation};
use crate::quadspace::WittFrame;

pub use diagnostic::{diagnostic_in_frame, dimension_diagnostic, BoundStatus, DiagnosticReport, Inequality, PairDiagnostic};
pub use family::cor37_family;
pub use routes::{PairContext, Route, RouteOutcome};

/// Default word length for [`freeness_scan`]; long enough to contain every
/// generator commutator.
pub const DEFAULT_WORD_LENGTH: usize = 4;

/// Shape of the third columns in the rank-three explicit construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThirdColumns {
    /// One third column lies in the image of the other `B`.
    Collinear,
    Generic,
}

/// Which argument produced a fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Solved `Ap = -v` directly.
    DirectSolve,
    /// Direct solve on an element found by enumerating words.
    WordScan { word: String },
    /// `u₃ ∈ im C₃`.
    IsotropicPreimage,
    /// `rk B₁ᵀG_W B₂ = rk B₁` and `u₂* = 0` put `u₃` in `im B₁ᵀ = im C₃`.
    VanishingDualComponent { swapped: bool },
    /// `u₁* = λu₂*` lets `u₃` be written through `B₁ᵀG_W`.
    CollinearDualComponents {
        dim_u0: usize,
        lambda: Option<Scalar>,
        swapped: bool,
    },
    /// Explicit preimage `(1/α)(-ũⱼ eᵢ + ũᵢ eⱼ)` built from a duality pair.
    RankThreeExplicitPreimage {
        subcase: ThirdColumns,
        alpha: Scalar,
        pair: (usize, usize),
    },
    /// `u₃ ⊥ u₁*, u₂*` and `ker u₁*ᵀ ∩ ker u₂*ᵀ = im B₁ᵀ`.
    IndependentDualComponents,
}

impl Provenance {
    pub fn key(&self) -> &'static str {
        match self {
            Provenance::DirectSolve => "direct_solve",
            Provenance::WordScan { .. } => "word_scan",
            Provenance::IsotropicPreimage => "isotropic_preimage",
            Provenance::VanishingDualComponent { .. } => "vanishing_dual_component",
            Provenance::CollinearDualComponents { .. } => "collinear_dual_components",
            Provenance::RankThreeExplicitPreimage { .. } => "rank_three_explicit_preimage",
            Provenance::IndependentDualComponents => "independent_dual_components",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::DirectSolve => write!(f, "direct solve of Ap = -v"),
            Provenance::WordScan { word } => write!(f, "word scan: {word}"),
            Provenance::IsotropicPreimage => write!(f, "commutator: u₃ ∈ im C₃"),
            Provenance::VanishingDualComponent { swapped } => write!(
                f,
                "commutator: vanishing dual component ({})",
                if *swapped { "u₁* = 0, rank of B₂" } else { "u₂* = 0, rank of B₁" }
            ),
            Provenance::CollinearDualComponents { dim_u0, lambda, .. } => {
                write!(f, "commutator: collinear dual components, dim U₀ = {dim_u0}")?;
                match lambda {
                    Some(l) => write!(f, ", λ = {}", format_scalar(l)),
                    None => Ok(()),
                }
            }
            Provenance::RankThreeExplicitPreimage { subcase, alpha, pair } => write!(
                f,
                "commutator: explicit rank-three preimage, pair ({}, {}), α = {}, {} third columns",
                pair.0 + 1,
                pair.1 + 1,
                format_scalar(alpha),
                match subcase {
                    ThirdColumns::Collinear => "collinear",
                    ThirdColumns::Generic => "generic",
                }
            ),
            Provenance::IndependentDualComponents => write!(f, "commutator: independent dual components, dim U₀ = 4"),
        }
    }
}

/// A group element together with a point it fixes. Only constructible when
/// `element(point) = point` holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointWitness {
    pub element: AffineIsometry,
    pub point: Vector,
    pub provenance: Provenance,
}

impl FixedPointWitness {
    pub fn new(element: AffineIsometry, point: Vector, provenance: Provenance) -> Option<Self> {
        (element.apply(&point) == point).then_some(FixedPointWitness {
            element,
            point,
            provenance,
        })
    }

    pub fn verify(&self) -> bool {
        self.element.apply(&self.point) == self.point
    }
}

/// Some `p` with `γ(p) = p`, if one exists.
pub fn fixed_point(g: &AffineIsometry) -> Option<Vector> {
    let rhs: Vector = g.translation().iter().map(|x| -x).collect();
    solve(g.nilpart(), &rhs).ok()?.map(|s| s.particular)
}

/// Every route's outcome plus the first witness in cascade order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeReport {
    pub outcomes: Vec<(Route, RouteOutcome)>,
}

impl CascadeReport {
    pub fn witness(&self) -> Option<&FixedPointWitness> {
        self.outcomes.iter().find_map(|(_, o)| o.witness())
    }

    pub fn any_applicable(&self) -> bool {
        self.outcomes
            .iter()
            .any(|(_, o)| !matches!(o, RouteOutcome::NotApplicable(_)))
    }
}

/// Runs every route on the pair.
pub fn commutator_routes(g1: &AffineIsometry, g2: &AffineIsometry, frame: &WittFrame) -> Result<CascadeReport> {
    let ctx = PairContext::new(g1, g2, frame)?;
    Ok(CascadeReport {
        outcomes: Route::CASCADE.iter().map(|&r| (r, r.run(&ctx))).collect(),
    })
}

/// First witness of the cascade, or `None` when no criterion applies.
pub fn commutator_fixed_point(
    g1: &AffineIsometry,
    g2: &AffineIsometry,
    frame: &WittFrame,
) -> Result<Option<FixedPointWitness>> {
    let ctx = PairContext::new(g1, g2, frame)?;
    Ok(Route::CASCADE.iter().find_map(|&r| match r.run(&ctx) {
        RouteOutcome::Witness(w) => Some(w),
        _ => None,
    }))
}

/// Direct fixed-point search over all non-identity words of length at most
/// `max_len`, in enumeration order.
pub fn freeness_scan(p: &GroupPresentation, max_len: usize) -> Result<Option<FixedPointWitness>> {
    for word in p.enumerate_labeled_words(max_len)?.into_iter().skip(1) {
        if let Some(point) = fixed_point(&word.element) {
            let provenance = Provenance::WordScan {
                word: p.format_word(&word.letters),
            };
            return Ok(FixedPointWitness::new(word.element, point, provenance));
        }
    }
    Ok(None)
}
