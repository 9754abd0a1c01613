use std::fmt;

use crate::error::Result;
use crate::exactlin::inertia;
use crate::isogrp::GroupPresentation;
use crate::quadspace::WittFrame;

use super::{commutator_routes, freeness_scan, CascadeReport, FixedPointWitness, DEFAULT_WORD_LENGTH};

/// Data for one generator pair with non-commuting linear parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDiagnostic {
    pub first: usize,
    pub second: usize,
    pub rank_b: [usize; 2],
    pub rank_cross: usize,
    pub dim_images: usize,
    pub cascade: CascadeReport,
}

/// One step of the inequality chain behind the bound `s ≥ 7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    /// Nothing to check: the holonomy is abelian.
    AbelianHolonomy,
    /// `s = 7`, `n = 14`.
    Attained { s: usize, n: usize },
    Satisfied { s: usize, n: usize },
    /// Some element has a fixed point, so the action is not free.
    FixedPoint,
    /// Free-looking, non-abelian and `s < 7`, but an inequality of the chain
    /// fails: the presentation cannot come from a complete homogeneous space.
    Inconsistent,
    /// `s < 7` with no witness and no violated inequality. Never expected.
    Unresolved,
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundStatus::AbelianHolonomy => write!(f, "abelian holonomy: bound not applicable"),
            BoundStatus::Attained { s, n } => write!(f, "bound attained: s = {s}, n = {n}"),
            BoundStatus::Satisfied { s, n } => write!(f, "bound satisfied: s = {s}, n = {n}"),
            BoundStatus::FixedPoint => write!(f, "not free: fixed-point witness attached"),
            BoundStatus::Inconsistent => write!(f, "inconsistent: violated inequality listed"),
            BoundStatus::Unresolved => write!(f, "unresolved: s < 7 without witness or violated inequality"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosticReport {
    pub n: usize,
    pub s: usize,
    pub holonomy_abelian: bool,
    pub dim_u0: usize,
    pub dim_w: usize,
    pub witt_index_w: usize,
    pub pairs: Vec<PairDiagnostic>,
    pub inequalities: Vec<Inequality>,
    /// First witness from the commutator criteria, else from the word scan.
    pub witness: Option<FixedPointWitness>,
    pub status: BoundStatus,
}

impl DiagnosticReport {
    pub fn violated(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter().filter(|i| !i.holds)
    }
}

/// Diagnostic in the Witt frame computed from `U₀`, scanning words up to the
/// default length.
pub fn dimension_diagnostic(p: &GroupPresentation) -> Result<DiagnosticReport> {
    let frame = p.space().witt_frame(&p.u_zero())?;
    diagnostic_in_frame(p, &frame, DEFAULT_WORD_LENGTH)
}

pub fn diagnostic_in_frame(p: &GroupPresentation, frame: &WittFrame, max_word_len: usize) -> Result<DiagnosticReport> {
    let n = p.dim();
    let s = p.space().witt_index();
    let (wp, wq, _) = inertia(frame.gram_w())?;
    let witt_index_w = wp.min(wq);
    let dim_u0 = frame.k();
    let dim_w = frame.dim_w();
    let holonomy_abelian = p.holonomy_abelian();
    let mut report = DiagnosticReport {
        n,
        s,
        holonomy_abelian,
        dim_u0,
        dim_w,
        witt_index_w,
        pairs: Vec::new(),
        inequalities: Vec::new(),
        witness: None,
        status: BoundStatus::AbelianHolonomy,
    };
    if holonomy_abelian {
        return Ok(report);
    }

    let gens = p.generators();
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate().skip(i + 1) {
            if (gi.nilpart() * gj.nilpart()).is_zero() {
                continue;
            }
            let ctx = super::PairContext::new(gi, gj, frame)?;
            let cascade = commutator_routes(gi, gj, frame)?;
            report.pairs.push(PairDiagnostic {
                first: i,
                second: j,
                rank_b: ctx.rank_b,
                rank_cross: ctx.rank_cross,
                dim_images: ctx.dim_images,
                cascade,
            });
        }
    }

    let mut ineq = |statement: String, holds: bool| report.inequalities.push(Inequality { statement, holds });
    ineq(format!("n - s ≥ s: {} ≥ {s}", n - s), n - s >= s);
    ineq(
        format!("s = dim U₀ + wi(W): {s} = {dim_u0} + {witt_index_w}"),
        s == dim_u0 + witt_index_w,
    );
    for pd in &report.pairs {
        for (idx, &r) in pd.rank_b.iter().enumerate() {
            let name = format!("B of {}", p.names()[if idx == 0 { pd.first } else { pd.second }]);
            ineq(format!("wi(W) ≥ rk {name} ≥ 2: {witt_index_w} ≥ {r} ≥ 2"), witt_index_w >= r && r >= 2);
            ineq(format!("dim W ≥ 2 rk {name}: {dim_w} ≥ {}", 2 * r), dim_w >= 2 * r);
        }
    }
    ineq(format!("dim U₀ ≥ 3: {dim_u0}"), dim_u0 >= 3);
    match dim_u0 {
        4 => {
            for pd in &report.pairs {
                if pd.rank_b[0] >= 3 {
                    ineq(format!("wi(W) ≥ 3 when rk B₁ ≥ 3: {witt_index_w}"), witt_index_w >= 3);
                }
            }
        }
        3 => {
            for pd in &report.pairs {
                if pd.dim_images == 6 {
                    ineq(format!("wi(W) ≥ 4 when dim(im B₁ + im B₂) = 6: {witt_index_w}"), witt_index_w >= 4);
                }
            }
        }
        _ => {}
    }
    ineq(format!("s ≥ 7: {s}"), s >= 7);

    report.witness = report
        .pairs
        .iter()
        .find_map(|pd| pd.cascade.witness().cloned());
    if report.witness.is_none() {
        report.witness = freeness_scan(p, max_word_len)?;
    }
    report.status = if report.witness.is_some() {
        BoundStatus::FixedPoint
    } else if s >= 7 {
        if s == 7 && n == 14 {
            BoundStatus::Attained { s, n }
        } else {
            BoundStatus::Satisfied { s, n }
        }
    } else if report.violated().next().is_some() {
        BoundStatus::Inconsistent
    } else {
        BoundStatus::Unresolved
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::exactlin::scalar::unit_vector;
    use crate::isogrp::AffineIsometry;
    use crate::quadspace::QuadraticSpace;

    #[test]
    fn example_attains_bound() {
        let r = dimension_diagnostic(&catalog::example_14()).unwrap();
        assert_eq!(r.status.to_string(), "bound attained: s = 7, n = 14");
        assert!(r.witness.is_none());
        assert_eq!((r.dim_u0, r.witt_index_w), (5, 2));
        assert_eq!(r.pairs[0].rank_b, [2, 2]);
    }

    #[test]
    fn family_gets_witness() {
        let r = dimension_diagnostic(&super::super::cor37_family(0)).unwrap();
        assert_eq!(r.status, BoundStatus::FixedPoint);
        assert!(r.witness.as_ref().unwrap().verify());
        assert!(r.s < 7);
    }

    #[test]
    fn translations_are_trivial() {
        let space = Arc::new(QuadraticSpace::from_signature(2, 1).unwrap());
        let t = AffineIsometry::pure_translation(space.clone(), unit_vector(3, 0)).unwrap();
        let p = GroupPresentation::new(space, vec![t]).unwrap();
        let r = dimension_diagnostic(&p).unwrap();
        assert!(r.holonomy_abelian);
        assert_eq!(r.status, BoundStatus::AbelianHolonomy);
    }
}
