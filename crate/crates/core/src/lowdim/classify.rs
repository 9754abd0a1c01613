use std::fmt;

use num_traits::Zero;

use crate::centralizer::{homogeneity_verdict, Verdict};
use crate::error::{scope, Result};
use crate::exactlin::scalar::is_zero_vector;
use crate::exactlin::{kernel_vectors_of, Matrix, Scalar, Subspace, Vector};
use crate::isogrp::{block_form, commutator, GroupPresentation};

use super::alpha_of_element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    PureTranslations,
    FreeAbelianWithHolonomy,
    HeisenbergTimesTranslations,
    Rank6Lattice,
    OutOfScope,
}

impl Tag {
    pub fn key(self) -> &'static str {
        match self {
            Tag::PureTranslations => "pure-translations",
            Tag::FreeAbelianWithHolonomy => "free-abelian-with-holonomy",
            Tag::HeisenbergTimesTranslations => "heisenberg-times-translations",
            Tag::Rank6Lattice => "rank6-lattice",
            Tag::OutOfScope => "out-of-scope",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// A gate of the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    AllLinearPartsVanish,
    HolonomyNeedsIndexTwo,
    AbelianImagePlane,
    AbelianBlockShape,
    DependencyCondition,
    ProportionalW,
    NonAbelianSignature,
    AbelianHolonomy,
    ImageIsLagrangian,
    AlphaConsistent,
    RankRange,
    CenterSpan,
}

impl Rule {
    pub fn key(self) -> &'static str {
        match self {
            Rule::AllLinearPartsVanish => "all-linear-parts-vanish",
            Rule::HolonomyNeedsIndexTwo => "holonomy-needs-index-two",
            Rule::AbelianImagePlane => "abelian-image-plane",
            Rule::AbelianBlockShape => "abelian-block-shape",
            Rule::DependencyCondition => "dependency-condition",
            Rule::ProportionalW => "proportional-w",
            Rule::NonAbelianSignature => "non-abelian-signature",
            Rule::AbelianHolonomy => "abelian-holonomy",
            Rule::ImageIsLagrangian => "image-is-lagrangian",
            Rule::AlphaConsistent => "alpha-consistent",
            Rule::RankRange => "rank-range",
            Rule::CenterSpan => "center-span",
        }
    }

    /// The statement the gate checks.
    pub fn statement(self) -> &'static str {
        match self {
            Rule::AllLinearPartsVanish => "all linear parts vanish, so the group consists of pure translations",
            Rule::HolonomyNeedsIndexTwo => "an element with A ≠ 0 needs Witt index at least 2",
            Rule::AbelianImagePlane => "an abelian group with holonomy has U_Γ a totally isotropic plane",
            Rule::AbelianBlockShape => "in a Witt frame for U_Γ every generator has B = 0 and no U*-translation",
            Rule::DependencyCondition => "Σ λᵢwᵢ = 0 implies Σ λᵢCᵢ = 0",
            Rule::ProportionalW => "in signature (3, 2), wᵢ = (cᵢ/c₁) w₁",
            Rule::NonAbelianSignature => "a non-abelian group in dimension ≤ 6 needs signature (3, 3)",
            Rule::AbelianHolonomy => "the linear holonomy is abelian in dimension 6",
            Rule::ImageIsLagrangian => "U_Γ is a totally isotropic 3-space",
            Rule::AlphaConsistent => "C = α T(u*) with the same α ≠ 0 on non-commuting generators",
            Rule::RankRange => "the rank lies between 3 and 6",
            Rule::CenterSpan => "at rank 6 the commutator translations span a 3-dimensional center",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    pub rule: Rule,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub tag: Tag,
    pub rank: usize,
    pub dim_u_gamma: usize,
    pub theta_rank: Option<usize>,
    /// The failed gate for [`Tag::OutOfScope`].
    pub violated: Option<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: ClassificationVerdict,
    pub trail: Vec<RuleCheck>,
    pub homogeneity: Verdict,
}

impl Classification {
    /// The structural tag is only backed by the classification when the
    /// centralizer is certified transitive.
    pub fn homogeneity_certified(&self) -> bool {
        self.homogeneity == Verdict::Transitive
    }
}

struct Trail(Vec<RuleCheck>);

impl Trail {
    fn check(&mut self, rule: Rule, holds: bool, detail: impl Into<String>) -> bool {
        self.0.push(RuleCheck { rule, holds, detail: detail.into() });
        holds
    }
}

/// Classifies a presentation on a space of dimension at most 6 or Witt index
/// at most 2.
pub fn classify(p: &GroupPresentation) -> Result<Classification> {
    let n = p.dim();
    let s = p.space().witt_index();
    if n > 6 && s > 2 {
        return Err(scope(format!("dimension {n} with Witt index {s}: only n ≤ 6 or index ≤ 2 is classified")));
    }
    let rank = p.group_rank()?;
    let u_gamma = p.u_gamma();
    let mut verdict = ClassificationVerdict {
        tag: Tag::OutOfScope,
        rank,
        dim_u_gamma: u_gamma.dim(),
        theta_rank: None,
        violated: None,
    };
    let mut trail = Trail(Vec::new());
    let outcome = walk(p, &mut trail, &mut verdict);
    match outcome? {
        Some(tag) => verdict.tag = tag,
        None => verdict.violated = trail.0.last().map(|c| c.rule),
    }
    Ok(Classification {
        verdict,
        trail: trail.0,
        homogeneity: homogeneity_verdict(p).verdict,
    })
}

/// Returns the tag, or `None` after a failed gate (always the last entry of
/// the trail).
fn walk(p: &GroupPresentation, trail: &mut Trail, verdict: &mut ClassificationVerdict) -> Result<Option<Tag>> {
    let gens = p.generators();
    let n = p.dim();
    let s = p.space().witt_index();
    let nonzero = gens.iter().filter(|g| !g.nilpart().is_zero()).count();
    if nonzero == 0 {
        trail.check(Rule::AllLinearPartsVanish, true, format!("{} generators", gens.len()));
        return Ok(Some(Tag::PureTranslations));
    }
    if !trail.check(Rule::HolonomyNeedsIndexTwo, s >= 2, format!("Witt index {s}")) {
        return Ok(None);
    }
    let mut abelian = true;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !commutator(a, b)?.is_identity() {
                abelian = false;
            }
        }
    }
    let u_gamma = p.u_gamma();
    let isotropic = p.space().is_totally_isotropic(&u_gamma);

    if abelian {
        let plane = u_gamma.dim() == 2 && isotropic;
        let detail = format!("dim U_Γ = {}, totally isotropic: {isotropic}", u_gamma.dim());
        if !trail.check(Rule::AbelianImagePlane, plane, detail) {
            return Ok(None);
        }
        let frame = p.space().witt_frame(&u_gamma)?;
        let mut cs: Vec<Scalar> = Vec::new();
        let mut ws: Vec<Vector> = Vec::new();
        let mut shape = true;
        for g in gens {
            let bf = block_form(g, &frame)?;
            let (_, w, ustar) = frame.split(g.translation());
            shape &= bf.b.is_zero() && is_zero_vector(&ustar);
            cs.push(bf.c[(0, 1)].clone());
            ws.push(w);
        }
        let detail = if shape { "B = 0, translations in U ⊕ W" } else { "some B ≠ 0 or U*-translation" };
        if !trail.check(Rule::AbelianBlockShape, shape, detail) {
            return Ok(None);
        }
        let m = frame.dim_w();
        let relations: Vec<Vector> = if m == 0 {
            (0..gens.len()).map(|i| crate::exactlin::scalar::unit_vector(gens.len(), i)).collect()
        } else {
            kernel_vectors_of(&Matrix::from_columns(m, &ws))
        };
        let dependency = relations.iter().all(|l| {
            l.iter().zip(&cs).fold(Scalar::zero(), |acc, (x, c)| acc + x * c).is_zero()
        });
        let detail = format!("{} relations among the wᵢ", relations.len());
        if !trail.check(Rule::DependencyCondition, dependency, detail) {
            return Ok(None);
        }
        if p.space().signature() == (3, 2) {
            let first = cs.iter().position(|c| !c.is_zero()).expect("some C is nonzero");
            let proportional = (0..gens.len()).all(|j| {
                ws[j].iter().zip(&ws[first]).all(|(wj, w1)| wj * &cs[first] == &cs[j] * w1)
            });
            let detail = format!("reference generator {}", p.names()[first]);
            if !trail.check(Rule::ProportionalW, proportional, detail) {
                return Ok(None);
            }
        }
        return Ok(Some(Tag::FreeAbelianWithHolonomy));
    }

    let sig = p.space().signature();
    if !trail.check(Rule::NonAbelianSignature, n == 6 && sig == (3, 3), format!("n = {n}, signature {sig:?}")) {
        return Ok(None);
    }
    let abelian = p.holonomy_abelian();
    let detail = if abelian { "all A_i A_j = A_j A_i" } else { "some A_i A_j ≠ A_j A_i" };
    if !trail.check(Rule::AbelianHolonomy, abelian, detail) {
        return Ok(None);
    }
    let lagrangian = u_gamma.dim() == 3 && isotropic;
    if !trail.check(Rule::ImageIsLagrangian, lagrangian, format!("dim U_Γ = {}", u_gamma.dim())) {
        return Ok(None);
    }
    let frame = p.space().witt_frame(&u_gamma)?;
    let alphas: Vec<Option<Scalar>> = gens
        .iter()
        .map(|g| alpha_of_element(&frame, g))
        .collect::<Result<_>>()?;
    let mut consistent = true;
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            if !commutator(a, b)?.is_identity() {
                consistent &= match (&alphas[i], &alphas[j]) {
                    (Some(x), Some(y)) => x == y && !x.is_zero(),
                    _ => false,
                };
            }
        }
    }
    let shown: Vec<String> = alphas
        .iter()
        .map(|a| a.as_ref().map_or("none".into(), |x| x.to_string()))
        .collect();
    if !trail.check(Rule::AlphaConsistent, consistent, format!("α = [{}]", shown.join(", "))) {
        return Ok(None);
    }
    let rank = verdict.rank;
    if !trail.check(Rule::RankRange, (3..=6).contains(&rank), format!("rank {rank}")) {
        return Ok(None);
    }
    if rank <= 5 {
        verdict.theta_rank = Some(rank - 3);
        return Ok(Some(Tag::HeisenbergTimesTranslations));
    }
    let mut center: Vec<Vector> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            center.push(commutator(a, b)?.translation().clone());
        }
    }
    let dim = Subspace::rank_of(&center);
    if !trail.check(Rule::CenterSpan, dim == 3, format!("commutator translations span dimension {dim}")) {
        return Ok(None);
    }
    Ok(Some(Tag::Rank6Lattice))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::exactlin::scalar::{int, unit_vector};
    use crate::isogrp::AffineIsometry;
    use crate::lowdim::{construct_dim6, construct_sig2, Dim6Kind, Dim6Params, Sig2Generator};
    use crate::quadspace::QuadraticSpace;

    fn e(i: usize) -> Vector {
        unit_vector(3, i)
    }

    fn heisenberg(theta: Vec<Vector>) -> GroupPresentation {
        construct_dim6(&Dim6Params { kind: Dim6Kind::Heisenberg, alpha: int(1), ustar: vec![e(0), e(1)], u: vec![], theta }).unwrap()
    }

    #[test]
    fn translations() {
        let space = Arc::new(QuadraticSpace::from_signature(3, 2).unwrap());
        let gens = (0..4).map(|i| AffineIsometry::pure_translation(space.clone(), unit_vector(5, i)).unwrap()).collect();
        let c = classify(&GroupPresentation::new(space, gens).unwrap()).unwrap();
        assert_eq!(c.verdict.tag, Tag::PureTranslations);
        assert_eq!(c.verdict.rank, 4);
        assert!(c.homogeneity_certified());
    }

    #[test]
    fn sig2_round_trip() {
        let gens = [
            Sig2Generator { c: int(1), u: vec![int(0), int(0)], w: vec![int(1)] },
            Sig2Generator { c: int(2), u: vec![int(1), int(0)], w: vec![int(2)] },
        ];
        let c = classify(&construct_sig2(5, &gens).unwrap()).unwrap();
        assert_eq!(c.verdict.tag, Tag::FreeAbelianWithHolonomy);
        assert_eq!(c.verdict.dim_u_gamma, 2);
        assert!(c.trail.iter().any(|r| r.rule == Rule::ProportionalW && r.holds));
    }

    #[test]
    fn dim6_round_trips() {
        let c = classify(&heisenberg(vec![])).unwrap();
        assert_eq!(c.verdict.tag, Tag::HeisenbergTimesTranslations);
        assert_eq!((c.verdict.rank, c.verdict.theta_rank), (3, Some(0)));
        let c = classify(&heisenberg(vec![e(0)])).unwrap();
        assert_eq!((c.verdict.rank, c.verdict.theta_rank), (4, Some(1)));
        let b = Dim6Params { kind: Dim6Kind::Rank6, alpha: int(1), ustar: vec![e(0), e(1), e(2)], u: vec![], theta: vec![] };
        let c = classify(&construct_dim6(&b).unwrap()).unwrap();
        assert_eq!(c.verdict.tag, Tag::Rank6Lattice);
        assert_eq!(c.verdict.rank, 6);
        assert!(c.homogeneity_certified());
    }

    #[test]
    fn heisenberg_generators_share_alpha() {
        let p = heisenberg(vec![]);
        let frame = p.space().witt_frame(&p.u_gamma()).unwrap();
        for g in p.generators() {
            assert_eq!(alpha_of_element(&frame, g).unwrap(), Some(int(1)));
        }
    }

    #[test]
    fn abelian_lagrangian_image_is_out_of_scope() {
        let space = Arc::new(QuadraticSpace::split(3));
        let gens = (0..2)
            .map(|i| {
                let c = crate::lowdim::cross_matrix(&e(i)).unwrap();
                let a = Matrix::from_blocks(&[vec![Matrix::zeros(3, 3), c], vec![Matrix::zeros(3, 3), Matrix::zeros(3, 3)]]).unwrap();
                AffineIsometry::new(space.clone(), a, unit_vector(6, i)).unwrap()
            })
            .collect();
        let c = classify(&GroupPresentation::new(space, gens).unwrap()).unwrap();
        assert_eq!(c.verdict.tag, Tag::OutOfScope);
        assert_eq!(c.verdict.violated, Some(Rule::AbelianImagePlane));
    }

    #[test]
    fn large_index_is_rejected() {
        let p = crate::catalog::example_14();
        assert!(matches!(classify(&p), Err(Error::Scope(_))));
    }
}
