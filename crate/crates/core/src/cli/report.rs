//! Report sections and their text and structured renderings.
//!
//! Every section holds the exact objects it was computed from, so each line
//! of a report can be recomputed from the input file.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::centralizer::{
    completeness_condition, homogeneity_verdict, CentralizerReport, CertificateSource, CompletenessCondition,
};
use crate::error::{structure, Error, Result};
use crate::exactlin::{format_scalar, Matrix, Scalar};
use crate::fixpoint::{
    commutator_routes, freeness_scan, BoundStatus, CascadeReport, DiagnosticReport, FixedPointWitness,
};
use crate::isogrp::{block_form, check_rules, AdmissibilityReport, BlockForm, GroupPresentation, RulesReport};
use crate::lowdim::{classify, Classification};
use crate::quadspace::WittFrame;

use super::{FrameChoice, Options};

/// Version tag of the structured output.
pub const SCHEMA: &str = "flathom.report/1";

pub(crate) fn vec_text(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(format_scalar).collect::<Vec<_>>().join(", "))
}

fn vec_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_scalar(x))).collect())
}

fn mat_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(m.row(i))).collect())
}

fn indent(m: &Matrix, pad: &str) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("{pad}({}x{} empty)\n", m.rows(), m.cols());
    }
    m.to_string().lines().map(|l| format!("{pad}{l}\n")).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn witness_json(w: &FixedPointWitness) -> Value {
    json!({
        "point": vec_json(&w.point),
        "provenance": w.provenance.key(),
        "detail": w.provenance.to_string(),
        "verified": w.verify(),
    })
}

fn witness_text(w: &FixedPointWitness) -> String {
    format!(
        "fixed point {} [{}], verified: {}",
        vec_text(&w.point),
        w.provenance,
        if w.verify() { "yes" } else { "no" }
    )
}

/// Ambient quadratic space.
#[derive(Debug, Clone)]
pub struct SpaceSection {
    pub dim: usize,
    pub signature: (usize, usize),
    pub witt_index: usize,
    pub generator_names: Vec<String>,
}

impl SpaceSection {
    pub fn build(p: &GroupPresentation) -> Self {
        SpaceSection {
            dim: p.dim(),
            signature: p.space().signature(),
            witt_index: p.space().witt_index(),
            generator_names: p.names().to_vec(),
        }
    }

    fn text(&self, out: &mut String) {
        let (pp, q) = self.signature;
        writeln!(out, "== space ==").unwrap();
        writeln!(out, "dimension n = {}, signature ({pp}, {q}), Witt index s = {}", self.dim, self.witt_index).unwrap();
        let names = if self.generator_names.is_empty() { "none".to_string() } else { self.generator_names.join(", ") };
        writeln!(out, "generators: {names}").unwrap();
    }

    fn json(&self) -> Value {
        json!({
            "dimension": self.dim,
            "signature": [self.signature.0, self.signature.1],
            "witt_index": self.witt_index,
            "generators": self.generator_names,
        })
    }
}

/// Per-generator checks and pair relations.
#[derive(Debug, Clone)]
pub struct ValidationSection {
    pub admissibility: AdmissibilityReport,
    pub names: Vec<String>,
}

impl ValidationSection {
    pub fn build(p: &GroupPresentation) -> Result<Self> {
        Ok(ValidationSection {
            admissibility: p.admissibility()?,
            names: p.names().to_vec(),
        })
    }

    pub fn all_pass(&self) -> bool {
        self.admissibility.all_pass()
    }

    fn text(&self, out: &mut String) {
        writeln!(out, "== validation ==").unwrap();
        for (name, r) in &self.admissibility.generators {
            writeln!(out, "{name}:").unwrap();
            for (check, ok) in &r.results {
                writeln!(out, "  {:<5} {}", yes_no(*ok), check.label()).unwrap();
            }
        }
        for (i, j, r) in &self.admissibility.pairs {
            writeln!(out, "pair ({}, {}):", self.names[*i], self.names[*j]).unwrap();
            writeln!(out, "  {:<5} A₁A₂ = -A₂A₁", yes_no(r.anticommute)).unwrap();
            writeln!(out, "  {:<5} A₁A₂v₁ = 0 and A₂A₁v₂ = 0", yes_no(r.products_kill_translations)).unwrap();
            writeln!(out, "  {:<5} A₁v₂ = -A₂v₁", yes_no(r.translation_relation)).unwrap();
            writeln!(out, "  {:<5} commutator = (I + 2A₁A₂, 2A₁v₂)", yes_no(r.formula_agrees)).unwrap();
        }
        writeln!(out, "{:<5} 2-step nilpotent", yes_no(self.admissibility.two_step)).unwrap();
        writeln!(out, "all checks pass: {}", if self.all_pass() { "yes" } else { "no" }).unwrap();
    }

    fn json(&self) -> Value {
        let generators: Vec<Value> = self
            .admissibility
            .generators
            .iter()
            .map(|(name, r)| {
                let checks: serde_json::Map<String, Value> =
                    r.results.iter().map(|(c, ok)| (c.key().to_string(), Value::Bool(*ok))).collect();
                json!({ "name": name, "checks": checks })
            })
            .collect();
        let pairs: Vec<Value> = self
            .admissibility
            .pairs
            .iter()
            .map(|(i, j, r)| {
                json!({
                    "pair": [self.names[*i], self.names[*j]],
                    "anticommute": r.anticommute,
                    "products_kill_translations": r.products_kill_translations,
                    "translation_relation": r.translation_relation,
                    "formula_agrees": r.formula_agrees,
                })
            })
            .collect();
        json!({
            "generators": generators,
            "pairs": pairs,
            "two_step": self.admissibility.two_step,
            "all_pass": self.all_pass(),
        })
    }
}

/// Holonomy and the distinguished subspaces.
#[derive(Debug, Clone)]
pub struct StructureSection {
    pub holonomy_abelian: bool,
    pub dim_u_gamma: usize,
    pub dim_u0: usize,
    pub group_rank: usize,
}

impl StructureSection {
    pub fn build(p: &GroupPresentation) -> Result<Self> {
        Ok(StructureSection {
            holonomy_abelian: p.holonomy_abelian(),
            dim_u_gamma: p.u_gamma().dim(),
            dim_u0: p.u_zero().dim(),
            group_rank: p.group_rank()?,
        })
    }

    fn text(&self, out: &mut String) {
        writeln!(out, "== structure ==").unwrap();
        let h = if self.holonomy_abelian { "abelian" } else { "non-abelian" };
        writeln!(out, "holonomy: {h}").unwrap();
        writeln!(out, "dim U_Γ = {}", self.dim_u_gamma).unwrap();
        writeln!(out, "dim U₀ = {}", self.dim_u0).unwrap();
        writeln!(out, "rank of the unipotent hull = {}", self.group_rank).unwrap();
    }

    fn json(&self) -> Value {
        json!({
            "holonomy_abelian": self.holonomy_abelian,
            "dim_u_gamma": self.dim_u_gamma,
            "dim_u0": self.dim_u0,
            "hull_rank": self.group_rank,
        })
    }
}

/// The Witt frame all block data refers to.
pub fn choose_frame(p: &GroupPresentation, choice: FrameChoice) -> Result<WittFrame> {
    let u0 = p.u_zero();
    match choice {
        FrameChoice::Auto => p.space().witt_frame(&u0),
        FrameChoice::Given => {
            let frame = p.space().standard_frame(u0.dim())?;
            if frame.u_space() != u0 {
                return Err(structure(
                    "the coordinate basis is not adapted to U₀: its first dim U₀ vectors do not span U₀",
                ));
            }
            Ok(frame)
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrameSection {
    pub choice: FrameChoice,
    pub frame: WittFrame,
}

impl FrameSection {
    fn text(&self, out: &mut String) {
        let f = &self.frame;
        let how = match self.choice {
            FrameChoice::Auto => "computed from U₀",
            FrameChoice::Given => "coordinate basis",
        };
        writeln!(out, "== Witt frame ({how}) ==").unwrap();
        writeln!(out, "dim U = {}, dim W = {}", f.k(), f.dim_w()).unwrap();
        for (label, basis) in [("u", &f.u_basis), ("w", &f.w_basis), ("u*", &f.ustar_basis)] {
            for (i, v) in basis.iter().enumerate() {
                writeln!(out, "  {label}{} = {}", i + 1, vec_text(v)).unwrap();
            }
        }
        writeln!(out, "G_W =").unwrap();
        out.push_str(&indent(f.gram_w(), "  "));
    }

    fn json(&self) -> Value {
        let f = &self.frame;
        let basis = |b: &[Vec<Scalar>]| Value::Array(b.iter().map(|v| vec_json(v)).collect());
        json!({
            "choice": match self.choice { FrameChoice::Auto => "auto", FrameChoice::Given => "given" },
            "dim_u": f.k(),
            "dim_w": f.dim_w(),
            "u": basis(&f.u_basis),
            "w": basis(&f.w_basis),
            "ustar": basis(&f.ustar_basis),
            "gram_w": mat_json(f.gram_w()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct BlocksSection {
    pub blocks: Vec<(String, BlockForm)>,
    /// `(i, j, rules)` for generator indices `i < j`.
    pub rules: Vec<(usize, usize, RulesReport)>,
    pub names: Vec<String>,
}

impl BlocksSection {
    pub fn build(p: &GroupPresentation, frame: &WittFrame) -> Result<Self> {
        let gens = p.generators();
        let blocks = gens
            .iter()
            .zip(p.names())
            .map(|(g, name)| Ok((name.clone(), block_form(g, frame)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut rules = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                rules.push((i, j, check_rules(&gens[i], &gens[j], frame)?));
            }
        }
        Ok(BlocksSection {
            blocks,
            rules,
            names: p.names().to_vec(),
        })
    }

    fn text(&self, out: &mut String) {
        writeln!(out, "== block forms ==").unwrap();
        for (name, b) in &self.blocks {
            writeln!(out, "{name}: rank B = {}", b.rank_b()).unwrap();
            writeln!(out, "  B =").unwrap();
            out.push_str(&indent(&b.b, "    "));
            writeln!(out, "  C =").unwrap();
            out.push_str(&indent(&b.c, "    "));
        }
        writeln!(out, "== pair rules ==").unwrap();
        for (i, j, r) in &self.rules {
            writeln!(out, "pair ({}, {}):", self.names[*i], self.names[*j]).unwrap();
            writeln!(out, "  linear parts commute: {}", if r.noncommuting { "no" } else { "yes" }).unwrap();
            writeln!(out, "  {:<5} columns of B₁ isotropic and orthogonal", yes_no(r.isotropy[0])).unwrap();
            writeln!(out, "  {:<5} columns of B₂ isotropic and orthogonal", yes_no(r.isotropy[1])).unwrap();
            writeln!(out, "  {:<5} B₁ᵀG_W B₂ skew", yes_no(r.crossover)).unwrap();
            let witness = match r.duality_witness {
                Some((a, b)) => format!(" (column {} of B₂, column {} of B₁)", a + 1, b + 1),
                None => String::new(),
            };
            writeln!(out, "  duality pairing: {}{witness}", r.duality.as_str()).unwrap();
            writeln!(out, "  {:<5} C₃ = -2 B₁ᵀG_W B₂", yes_no(r.commutator_block)).unwrap();
            writeln!(out, "  commutator translation in U₀: {}", r.commutator_translation_in_u0.as_str()).unwrap();
            writeln!(out, "  u₁*, u₂* in ker B₁ ∩ ker B₂: {}", r.dual_components_in_kernels.as_str()).unwrap();
            if r.noncommuting {
                writeln!(out, "  C₃ =").unwrap();
                out.push_str(&indent(&r.c3, "    "));
                let (u, w, us) = &r.v3;
                writeln!(out, "  commutator translation: u = {}, w = {}, u* = {}", vec_text(u), vec_text(w), vec_text(us)).unwrap();
            }
        }
    }

    fn json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|(name, b)| json!({ "name": name, "b": mat_json(&b.b), "c": mat_json(&b.c), "rank_b": b.rank_b() }))
            .collect();
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|(i, j, r)| {
                json!({
                    "pair": [self.names[*i], self.names[*j]],
                    "noncommuting": r.noncommuting,
                    "isotropy": r.isotropy,
                    "crossover": r.crossover,
                    "cross": mat_json(&r.cross),
                    "duality": r.duality.as_str(),
                    "duality_witness": r.duality_witness.map(|(a, b)| json!([a + 1, b + 1])),
                    "commutator_block": r.commutator_block,
                    "c3": mat_json(&r.c3),
                    "v3": { "u": vec_json(&r.v3.0), "w": vec_json(&r.v3.1), "ustar": vec_json(&r.v3.2) },
                    "commutator_translation_in_u0": r.commutator_translation_in_u0.as_str(),
                    "dual_components_in_kernels": r.dual_components_in_kernels.as_str(),
                    "all_hold": r.all_hold(),
                })
            })
            .collect();
        json!({ "blocks": blocks, "rules": rules })
    }
}

/// Commutator criteria for every non-commuting pair plus the word scan.
#[derive(Debug, Clone)]
pub struct FixedPointSection {
    pub cascades: Vec<(usize, usize, CascadeReport)>,
    pub max_word_len: usize,
    pub scan: Option<FixedPointWitness>,
    pub names: Vec<String>,
}

impl FixedPointSection {
    pub fn build(p: &GroupPresentation, frame: Option<&WittFrame>, max_word_len: usize) -> Result<Self> {
        let gens = p.generators();
        let mut cascades = Vec::new();
        if let Some(frame) = frame {
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    if !(gens[i].nilpart() * gens[j].nilpart()).is_zero() {
                        cascades.push((i, j, commutator_routes(&gens[i], &gens[j], frame)?));
                    }
                }
            }
        }
        Ok(FixedPointSection {
            cascades,
            max_word_len,
            scan: freeness_scan(p, max_word_len)?,
            names: p.names().to_vec(),
        })
    }

    fn text(&self, out: &mut String) {
        writeln!(out, "== fixed points ==").unwrap();
        if self.cascades.is_empty() {
            writeln!(out, "no pair with non-commuting linear parts").unwrap();
        }
        for (i, j, c) in &self.cascades {
            writeln!(out, "commutator of ({}, {}):", self.names[*i], self.names[*j]).unwrap();
            for (route, outcome) in &c.outcomes {
                writeln!(out, "  {:<26} {}: {}", route.key(), outcome.status(), outcome.detail()).unwrap();
            }
            match c.witness() {
                Some(w) => writeln!(out, "  witness: {}", witness_text(w)).unwrap(),
                None => writeln!(out, "  witness: none from the commutator criteria").unwrap(),
            }
        }
        match &self.scan {
            Some(w) => writeln!(out, "freeness scan (L = {}): {}", self.max_word_len, witness_text(w)).unwrap(),
            None => writeln!(out, "freeness scan (L = {}): no fixed point found", self.max_word_len).unwrap(),
        }
    }

    fn json(&self) -> Value {
        let cascades: Vec<Value> = self
            .cascades
            .iter()
            .map(|(i, j, c)| {
                let routes: Vec<Value> = c
                    .outcomes
                    .iter()
                    .map(|(route, o)| {
                        json!({
                            "route": route.key(),
                            "status": o.status(),
                            "detail": o.detail(),
                            "witness": o.witness().map(witness_json),
                        })
                    })
                    .collect();
                json!({
                    "pair": [self.names[*i], self.names[*j]],
                    "routes": routes,
                    "witness": c.witness().map(witness_json),
                })
            })
            .collect();
        json!({
            "commutators": cascades,
            "scan": { "max_word_len": self.max_word_len, "witness": self.scan.as_ref().map(witness_json) },
        })
    }
}

#[derive(Debug, Clone)]
pub struct CentralizerSection {
    pub report: CentralizerReport,
    pub completeness: CompletenessCondition,
    pub assert_malcev: bool,
}

impl CentralizerSection {
    pub fn build(p: &GroupPresentation, assert_malcev: bool) -> Self {
        CentralizerSection {
            report: homogeneity_verdict(p),
            completeness: completeness_condition(p, assert_malcev),
            assert_malcev,
        }
    }

    fn text(&self, out: &mut String) {
        let r = &self.report;
        writeln!(out, "== centralizer ==").unwrap();
        writeln!(out, "dim of centralizer algebra = {}", r.algebra_basis.len()).unwrap();
        writeln!(out, "orbit span = {}", r.orbit_span_dim).unwrap();
        match &r.certificate {
            Some(c) => {
                let src = match c.source {
                    CertificateSource::FlagSubalgebra => "flag subalgebra",
                    CertificateSource::AlgebraBasis => "centralizer basis",
                };
                writeln!(
                    out,
                    "nilpotent subalgebra: {} generators from the {src}, dimension {}, class {}",
                    c.generators.len(),
                    c.generated_dim,
                    c.nilpotency_class
                )
                .unwrap();
            }
            None => writeln!(out, "nilpotent subalgebra: not certified").unwrap(),
        }
        writeln!(out, "verdict: {}", r.verdict).unwrap();
        let qual = if self.assert_malcev { "generators asserted Malcev" } else { "Malcev property not asserted" };
        writeln!(out, "translation independence: {} ({qual})", self.completeness.key()).unwrap();
    }

    fn json(&self) -> Value {
        let r = &self.report;
        let cert = r.certificate.as_ref().map(|c| {
            json!({
                "source": match c.source {
                    CertificateSource::FlagSubalgebra => "flag-subalgebra",
                    CertificateSource::AlgebraBasis => "algebra-basis",
                },
                "generators": c.generators.len(),
                "generated_dim": c.generated_dim,
                "nilpotency_class": c.nilpotency_class,
            })
        });
        json!({
            "algebra_dim": r.algebra_basis.len(),
            "orbit_span_dim": r.orbit_span_dim,
            "nilpotent_certified": r.nilpotent_certified,
            "certificate": cert,
            "verdict": r.verdict.key(),
            "completeness": self.completeness.key(),
            "assert_malcev": self.assert_malcev,
        })
    }
}

#[derive(Debug, Clone)]
pub enum ClassificationSection {
    Classified(Classification),
    OutOfScope(String),
}

impl ClassificationSection {
    pub fn build(p: &GroupPresentation) -> Result<Self> {
        match classify(p) {
            Ok(c) => Ok(ClassificationSection::Classified(c)),
            Err(Error::Scope(m)) => Ok(ClassificationSection::OutOfScope(m)),
            Err(e) => Err(e),
        }
    }

    fn text(&self, out: &mut String) {
        writeln!(out, "== classification ==").unwrap();
        match self {
            ClassificationSection::OutOfScope(m) => writeln!(out, "not applicable: {m}").unwrap(),
            ClassificationSection::Classified(c) => {
                let v = &c.verdict;
                writeln!(out, "class: {} (rank {}, dim U_Γ = {})", v.tag, v.rank, v.dim_u_gamma).unwrap();
                if let Some(t) = v.theta_rank {
                    writeln!(out, "extra translations: {t}").unwrap();
                }
                if let Some(r) = v.violated {
                    writeln!(out, "violated: {}", r.statement()).unwrap();
                }
                writeln!(out, "homogeneity: {}", c.homogeneity).unwrap();
                for step in &c.trail {
                    writeln!(out, "  {:<5} {}: {}", yes_no(step.holds), step.rule.statement(), step.detail).unwrap();
                }
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            ClassificationSection::OutOfScope(m) => json!({ "in_scope": false, "reason": m }),
            ClassificationSection::Classified(c) => {
                let v = &c.verdict;
                let trail: Vec<Value> = c
                    .trail
                    .iter()
                    .map(|s| json!({ "rule": s.rule.key(), "holds": s.holds, "detail": s.detail }))
                    .collect();
                json!({
                    "in_scope": true,
                    "tag": v.tag.key(),
                    "rank": v.rank,
                    "dim_u_gamma": v.dim_u_gamma,
                    "theta_rank": v.theta_rank,
                    "violated": v.violated.map(|r| r.key()),
                    "homogeneity": c.homogeneity.key(),
                    "trail": trail,
                })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct DiagnosticSection(pub DiagnosticReport);

impl DiagnosticSection {
    fn text(&self, out: &mut String) {
        let d = &self.0;
        writeln!(out, "== dimension diagnostic ==").unwrap();
        writeln!(out, "n = {}, s = {}, dim U₀ = {}, dim W = {}, wi(W) = {}", d.n, d.s, d.dim_u0, d.dim_w, d.witt_index_w).unwrap();
        for pair in &d.pairs {
            writeln!(
                out,
                "pair ({}, {}): rank B = {}, {}, rank B₁ᵀG_W B₂ = {}, dim(im B₁ + im B₂) = {}",
                pair.first + 1,
                pair.second + 1,
                pair.rank_b[0],
                pair.rank_b[1],
                pair.rank_cross,
                pair.dim_images
            )
            .unwrap();
        }
        for i in &d.inequalities {
            writeln!(out, "  {:<5} {}", yes_no(i.holds), i.statement).unwrap();
        }
        if let Some(w) = &d.witness {
            writeln!(out, "witness: {}", witness_text(w)).unwrap();
        }
        writeln!(out, "{}", d.status).unwrap();
    }

    fn json(&self) -> Value {
        let d = &self.0;
        let status = match d.status {
            BoundStatus::AbelianHolonomy => "abelian-holonomy",
            BoundStatus::Attained { .. } => "attained",
            BoundStatus::Satisfied { .. } => "satisfied",
            BoundStatus::FixedPoint => "fixed-point",
            BoundStatus::Inconsistent => "inconsistent",
            BoundStatus::Unresolved => "unresolved",
        };
        let pairs: Vec<Value> = d
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "pair": [p.first + 1, p.second + 1],
                    "rank_b": p.rank_b,
                    "rank_cross": p.rank_cross,
                    "dim_images": p.dim_images,
                })
            })
            .collect();
        let inequalities: Vec<Value> =
            d.inequalities.iter().map(|i| json!({ "statement": i.statement, "holds": i.holds })).collect();
        json!({
            "n": d.n,
            "s": d.s,
            "dim_u0": d.dim_u0,
            "dim_w": d.dim_w,
            "witt_index_w": d.witt_index_w,
            "pairs": pairs,
            "inequalities": inequalities,
            "witness": d.witness.as_ref().map(witness_json),
            "status": status,
            "summary": d.status.to_string(),
        })
    }
}

/// Everything `analyze` reports. Frame-dependent sections are absent when
/// the presentation fails validation, since no Witt frame adapted to `U₀`
/// need exist then.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub space: SpaceSection,
    pub validation: ValidationSection,
    pub structure: StructureSection,
    pub frame: Option<FrameSection>,
    pub blocks: Option<BlocksSection>,
    pub fixed_points: FixedPointSection,
    pub centralizer: CentralizerSection,
    pub classification: Option<ClassificationSection>,
    pub diagnostic: Option<DiagnosticSection>,
}

impl AnalysisReport {
    pub fn build(p: &GroupPresentation, opts: &Options) -> Result<Self> {
        let validation = ValidationSection::build(p)?;
        let admissible = validation.all_pass();
        let frame = if admissible { Some(choose_frame(p, opts.frame)?) } else { None };
        let blocks = frame.as_ref().map(|f| BlocksSection::build(p, f)).transpose()?;
        let diagnostic = frame
            .as_ref()
            .map(|f| crate::fixpoint::diagnostic_in_frame(p, f, opts.max_word_len).map(DiagnosticSection))
            .transpose()?;
        let classification = if admissible { Some(ClassificationSection::build(p)?) } else { None };
        Ok(AnalysisReport {
            space: SpaceSection::build(p),
            structure: StructureSection::build(p)?,
            fixed_points: FixedPointSection::build(p, frame.as_ref(), opts.max_word_len)?,
            centralizer: CentralizerSection::build(p, opts.assert_malcev),
            frame: frame.map(|frame| FrameSection { choice: opts.frame, frame }),
            validation,
            blocks,
            classification,
            diagnostic,
        })
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        self.space.text(&mut out);
        self.validation.text(&mut out);
        self.structure.text(&mut out);
        match (&self.frame, &self.blocks) {
            (Some(f), Some(b)) => {
                f.text(&mut out);
                b.text(&mut out);
            }
            _ => writeln!(out, "== Witt frame ==\nskipped: validation failed").unwrap(),
        }
        self.fixed_points.text(&mut out);
        self.centralizer.text(&mut out);
        match &self.classification {
            Some(c) => c.text(&mut out),
            None => writeln!(out, "== classification ==\nskipped: validation failed").unwrap(),
        }
        match &self.diagnostic {
            Some(d) => d.text(&mut out),
            None => writeln!(out, "== dimension diagnostic ==\nskipped: validation failed").unwrap(),
        }
        out
    }

    pub fn json(&self) -> Value {
        json!({
            "space": self.space.json(),
            "validation": self.validation.json(),
            "structure": self.structure.json(),
            "frame": self.frame.as_ref().map(FrameSection::json),
            "blocks": self.blocks.as_ref().map(BlocksSection::json),
            "fixed_points": self.fixed_points.json(),
            "centralizer": self.centralizer.json(),
            "classification": self.classification.as_ref().map(ClassificationSection::json),
            "diagnostic": self.diagnostic.as_ref().map(DiagnosticSection::json),
        })
    }
}

/// Wraps a body in the versioned envelope.
pub fn envelope(command: &str, body: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "report": body })
}

pub(crate) trait Section {
    fn render_text(&self, out: &mut String);
    fn render_json(&self) -> Value;
}

macro_rules! section {
    ($($t:ty),*) => {$(
        impl Section for $t {
            fn render_text(&self, out: &mut String) { self.text(out) }
            fn render_json(&self) -> Value { self.json() }
        }
    )*};
}

section!(SpaceSection, ValidationSection, StructureSection, FixedPointSection, CentralizerSection, ClassificationSection);

impl Section for AnalysisReport {
    fn render_text(&self, out: &mut String) {
        out.push_str(&self.text())
    }

    fn render_json(&self) -> Value {
        self.json()
    }
}

impl Section for (Option<FrameSection>, FixedPointSection) {
    fn render_text(&self, out: &mut String) {
        if let Some(f) = &self.0 {
            f.text(out);
        }
        self.1.text(out);
    }

    fn render_json(&self) -> Value {
        let mut v = self.1.json();
        v["frame"] = self.0.as_ref().map_or(Value::Null, FrameSection::json);
        v
    }
}
