use std::fmt;

use num_traits::Zero;

use crate::error::{input, Result};
use crate::exactlin::scalar::{dot, int, is_zero_vector, neg, scale, unit_vector, zero_vector};
use crate::exactlin::{kernel_vectors_of, rank, solve, Matrix, Scalar, Subspace, Vector};
use crate::isogrp::{block_form, combined_image, commutator, AffineIsometry, BlockForm};
use crate::quadspace::WittFrame;

use super::{FixedPointWitness, Provenance, ThirdColumns};

/// Everything the commutator criteria look at, computed once per ordered pair.
#[derive(Debug, Clone)]
pub struct PairContext {
    pub first: AffineIsometry,
    pub second: AffineIsometry,
    pub frame: WittFrame,
    pub blocks: [BlockForm; 2],
    /// `M = B₁ᵀ G_W B₂`; the commutator's `C` block is `-2M`.
    pub cross: Matrix,
    pub commutator: AffineIsometry,
    pub c3: Matrix,
    pub u3: Vector,
    /// `(u, w, u*)` of both translations.
    pub parts: [(Vector, Vector, Vector); 2],
    pub rank_b: [usize; 2],
    pub rank_cross: usize,
    pub dim_u0: usize,
    /// `dim(im B₁ + im B₂)`
    pub dim_images: usize,
}

impl PairContext {
    pub fn new(g1: &AffineIsometry, g2: &AffineIsometry, frame: &WittFrame) -> Result<Self> {
        if (g1.nilpart() * g2.nilpart()).is_zero() {
            return Err(input("the commutator criteria need non-commuting linear parts (A₁A₂ != 0)"));
        }
        let b1 = block_form(g1, frame)?;
        let b2 = block_form(g2, frame)?;
        let cross = &(&b1.b.transpose() * frame.gram_w()) * &b2.b;
        let g3 = commutator(g1, g2)?;
        let k = frame.k();
        let n = frame.dim();
        let a3 = frame.to_frame(g3.nilpart());
        let c3 = a3.block(0, k, n - k, n);
        let (u3, _, _) = frame.split(g3.translation());
        let parts = [frame.split(g1.translation()), frame.split(g2.translation())];
        Ok(PairContext {
            first: g1.clone(),
            second: g2.clone(),
            frame: frame.clone(),
            rank_b: [b1.rank_b(), b2.rank_b()],
            rank_cross: rank(&cross),
            dim_u0: k,
            dim_images: combined_image(&b1, &b2).dim(),
            blocks: [b1, b2],
            cross,
            commutator: g3,
            c3,
            u3,
            parts,
        })
    }

    pub fn swapped(&self) -> Result<Self> {
        PairContext::new(&self.second, &self.first, &self.frame)
    }

    pub fn dual(&self, i: usize) -> &Vector {
        &self.parts[i].2
    }

    fn w(&self, i: usize) -> &Vector {
        &self.parts[i].1
    }

    /// `im Bᵢᵀ` inside `U₀* ≅ Q^k`.
    fn image_bt(&self, i: usize) -> Subspace {
        crate::exactlin::image_basis(&self.blocks[i].b.transpose())
    }

    /// Solves `C₃ u* = u₃` and turns `u*` into the point `-u*` of `U₀*`.
    fn preimage_witness(&self, provenance: Provenance) -> Option<FixedPointWitness> {
        let sol = solve(&self.c3, &self.u3).ok()??;
        self.witness_from_dual(&sol.particular, provenance)
    }

    fn witness_from_dual(&self, ustar: &[Scalar], provenance: Provenance) -> Option<FixedPointWitness> {
        let k = self.dim_u0;
        let point = self
            .frame
            .join(&zero_vector(k), &zero_vector(self.frame.dim_w()), &neg(ustar));
        FixedPointWitness::new(self.commutator.clone(), point, provenance)
    }
}

/// The commutator criteria, in cascade order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    IsotropicPreimage,
    VanishingDualComponent,
    KernelLine,
    RankThreeExplicit,
    CollinearDuals,
    IndependentDuals,
}

impl Route {
    pub const CASCADE: [Route; 6] = [
        Route::IsotropicPreimage,
        Route::VanishingDualComponent,
        Route::KernelLine,
        Route::RankThreeExplicit,
        Route::CollinearDuals,
        Route::IndependentDuals,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Route::IsotropicPreimage => "isotropic_preimage",
            Route::VanishingDualComponent => "vanishing_dual_component",
            Route::KernelLine => "kernel_line",
            Route::RankThreeExplicit => "rank_three_explicit",
            Route::CollinearDuals => "collinear_duals",
            Route::IndependentDuals => "independent_duals",
        }
    }

    pub fn hypothesis(self) -> &'static str {
        match self {
            Route::IsotropicPreimage => "u₃ ∈ im B₁ᵀG_W B₂",
            Route::VanishingDualComponent => "rk B₁ᵀG_W B₂ = rk B₁ and u₂* = 0 (or the mirror image)",
            Route::KernelLine => "dim U₀ = 3, dim(im B₁ + im B₂) ≤ 5, some rk Bᵢ = 2",
            Route::RankThreeExplicit => "dim U₀ = 3, dim(im B₁ + im B₂) ≤ 5, rk B₁ = rk B₂ = 3",
            Route::CollinearDuals => "dim U₀ = 4, rk B₁ᵀG_W B₂ = rk B₁ = rk B₂, u₁* = λu₂* with λ != 0",
            Route::IndependentDuals => "dim U₀ = 4, rk B₁ᵀG_W B₂ = rk B₁ = rk B₂, u₁*, u₂* independent",
        }
    }

    pub fn run(self, ctx: &PairContext) -> RouteOutcome {
        match self {
            Route::IsotropicPreimage => isotropic_preimage(ctx),
            Route::VanishingDualComponent => vanishing_dual_component(ctx),
            Route::KernelLine => kernel_line(ctx),
            Route::RankThreeExplicit => rank_three_explicit(ctx),
            Route::CollinearDuals => collinear_duals(ctx),
            Route::IndependentDuals => independent_duals(ctx),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteOutcome {
    NotApplicable(String),
    Witness(FixedPointWitness),
    /// The hypotheses held but no verified witness came out. Never expected
    /// for admissible input; it signals a presentation that breaks one of
    /// the structural relations.
    HypothesesHeldButFailed(String),
}

impl RouteOutcome {
    pub fn witness(&self) -> Option<&FixedPointWitness> {
        match self {
            RouteOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            RouteOutcome::NotApplicable(_) => "not applicable",
            RouteOutcome::Witness(_) => "witness",
            RouteOutcome::HypothesesHeldButFailed(_) => "hypotheses held but failed",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            RouteOutcome::NotApplicable(s) | RouteOutcome::HypothesesHeldButFailed(s) => s.clone(),
            RouteOutcome::Witness(w) => w.provenance.to_string(),
        }
    }
}

fn na(msg: impl Into<String>) -> RouteOutcome {
    RouteOutcome::NotApplicable(msg.into())
}

fn failed(msg: impl Into<String>) -> RouteOutcome {
    RouteOutcome::HypothesesHeldButFailed(msg.into())
}

fn finish(ctx: &PairContext, claim_holds: bool, claim: &str, provenance: Provenance) -> RouteOutcome {
    if !claim_holds {
        return failed(format!("derived claim `{claim}` does not hold"));
    }
    match ctx.preimage_witness(provenance) {
        Some(w) => RouteOutcome::Witness(w),
        None => failed("C₃u* = u₃ has no solution that is fixed by the commutator"),
    }
}

fn isotropic_preimage(ctx: &PairContext) -> RouteOutcome {
    match ctx.preimage_witness(Provenance::IsotropicPreimage) {
        Some(w) => RouteOutcome::Witness(w),
        None if solve(&ctx.c3, &ctx.u3).ok().flatten().is_some() => {
            failed("u₃ ∈ im C₃ but -u* is not fixed; the commutator translation leaves U₀")
        }
        None => na("u₃ ∉ im B₁ᵀG_W B₂"),
    }
}

fn vanishing_dual_component(ctx: &PairContext) -> RouteOutcome {
    for (a, b, swapped) in [(0, 1, false), (1, 0, true)] {
        if ctx.rank_cross == ctx.rank_b[a] && is_zero_vector(ctx.dual(b)) {
            let claim = ctx.image_bt(a).contains(&ctx.u3);
            return finish(
                ctx,
                claim,
                "u₃ ∈ im Bᵀ",
                Provenance::VanishingDualComponent { swapped },
            );
        }
    }
    na("no Bᵢ with rk Bᵢ = rk B₁ᵀG_W B₂ has a vanishing partner dual component")
}

fn collinear_factor(x: &[Scalar], y: &[Scalar]) -> Option<Scalar> {
    // x = λ y
    let i = y.iter().position(|c| !c.is_zero())?;
    let lambda = &x[i] / &y[i];
    (scale(&lambda, y) == x).then_some(lambda)
}

fn kernel_line(ctx: &PairContext) -> RouteOutcome {
    if ctx.dim_u0 != 3 {
        return na(format!("dim U₀ = {}, not 3", ctx.dim_u0));
    }
    if ctx.dim_images > 5 {
        return na("dim(im B₁ + im B₂) = 6");
    }
    let Some(a) = (0..2).find(|&i| ctx.rank_b[i] == 2) else {
        return na("neither B has rank 2");
    };
    let b = 1 - a;
    let ker = kernel_vectors_of(&ctx.blocks[a].b);
    if ker.len() != 1 {
        return failed("ker B is not a line");
    }
    let line = Subspace::span(3, &ker);
    if !(line.contains(ctx.dual(0)) && line.contains(ctx.dual(1))) {
        return failed("dual components are not in ker B");
    }
    let lambda = collinear_factor(ctx.dual(a), ctx.dual(b));
    let claim = ctx.rank_cross == ctx.rank_b[a] && ctx.image_bt(a).contains(&ctx.u3);
    finish(
        ctx,
        claim,
        "u₃ ∈ im Bᵀ = im B₁ᵀG_W B₂",
        Provenance::CollinearDualComponents {
            dim_u0: 3,
            lambda,
            swapped: a == 1,
        },
    )
}

fn rank_three_explicit(ctx: &PairContext) -> RouteOutcome {
    if ctx.dim_u0 != 3 {
        return na(format!("dim U₀ = {}, not 3", ctx.dim_u0));
    }
    if ctx.dim_images > 5 {
        return na("dim(im B₁ + im B₂) = 6");
    }
    if ctx.rank_b != [3, 3] {
        return na("B₁, B₂ are not both of rank 3");
    }
    if !(is_zero_vector(ctx.dual(0)) && is_zero_vector(ctx.dual(1))) {
        return failed("full-rank B forces u₁* = u₂* = 0, but a dual component is nonzero");
    }
    let m = &ctx.cross;
    let Some((i, j)) = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .find(|&(i, j)| i < j && !m[(i, j)].is_zero())
    else {
        return failed("no duality pair although A₁A₂ != 0");
    };
    let t = 3 - i - j;
    let alpha = m[(i, j)].clone();
    let b1 = &ctx.blocks[0].b;
    let b2 = &ctx.blocks[1].b;
    let im1 = Subspace::span(b1.rows(), &b1.columns());
    let im2 = Subspace::span(b2.rows(), &b2.columns());
    let subcase = if im1.contains(&b2.column(t)) || im2.contains(&b1.column(t)) {
        ThirdColumns::Collinear
    } else {
        ThirdColumns::Generic
    };
    // C₃ = -2M and u₃ = -2(B₁ᵀG_W w₂) here, so solve M u* = u₃ / -2.
    let target = scale(&Scalar::new((-1).into(), 2.into()), &ctx.u3);
    let ustar = crate::exactlin::scalar::add(
        &scale(&(-&target[j] / &alpha), &unit_vector(3, i)),
        &scale(&(&target[i] / &alpha), &unit_vector(3, j)),
    );
    if m.mul_vec(&ustar) != target {
        return failed("the explicit preimage does not solve M u* = u₃ / -2");
    }
    let provenance = Provenance::RankThreeExplicitPreimage {
        subcase,
        alpha,
        pair: (i, j),
    };
    match ctx.witness_from_dual(&ustar, provenance) {
        Some(w) => RouteOutcome::Witness(w),
        None => failed("explicit preimage is not fixed by the commutator"),
    }
}

fn equal_rank_hypothesis(ctx: &PairContext) -> Option<RouteOutcome> {
    if ctx.dim_u0 != 4 {
        return Some(na(format!("dim U₀ = {}, not 4", ctx.dim_u0)));
    }
    if !(ctx.rank_cross == ctx.rank_b[0] && ctx.rank_cross == ctx.rank_b[1]) {
        return Some(na("rk B₁ᵀG_W B₂, rk B₁, rk B₂ differ"));
    }
    if is_zero_vector(ctx.dual(0)) || is_zero_vector(ctx.dual(1)) {
        return Some(na("a dual component vanishes"));
    }
    None
}

fn collinear_duals(ctx: &PairContext) -> RouteOutcome {
    if let Some(out) = equal_rank_hypothesis(ctx) {
        return out;
    }
    let Some(lambda) = collinear_factor(ctx.dual(0), ctx.dual(1)) else {
        return na("u₁*, u₂* are independent");
    };
    // λu₃/2 = B₁ᵀG_W(w₁ - λw₂)
    let gw = ctx.frame.gram_w();
    let diff = crate::exactlin::scalar::sub(ctx.w(0), &scale(&lambda, ctx.w(1)));
    let rhs = ctx.blocks[0].b.transpose().mul_vec(&gw.mul_vec(&diff));
    let lhs = scale(&(&lambda / int(2)), &ctx.u3);
    let claim = lhs == rhs && ctx.image_bt(0).contains(&ctx.u3);
    finish(
        ctx,
        claim,
        "λu₃/2 = B₁ᵀG_W(w₁ - λw₂)",
        Provenance::CollinearDualComponents {
            dim_u0: 4,
            lambda: Some(lambda),
            swapped: false,
        },
    )
}

fn independent_duals(ctx: &PairContext) -> RouteOutcome {
    if let Some(out) = equal_rank_hypothesis(ctx) {
        return out;
    }
    if collinear_factor(ctx.dual(0), ctx.dual(1)).is_some() {
        return na("u₁*, u₂* are collinear");
    }
    let duals = Matrix::from_rows(&[ctx.dual(0).clone(), ctx.dual(1).clone()]).expect("equal lengths");
    let common = Subspace::span(4, &kernel_vectors_of(&duals));
    let orthogonal = dot(ctx.dual(0), &ctx.u3).is_zero() && dot(ctx.dual(1), &ctx.u3).is_zero();
    let claim = orthogonal && common == ctx.image_bt(0);
    finish(
        ctx,
        claim,
        "u₃ ∈ ker u₁*ᵀ ∩ ker u₂*ᵀ = im B₁ᵀ",
        Provenance::IndependentDualComponents,
    )
}
