//! Property tests for the structural invariants of each module, on random
//! inputs built from seeds.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flathom::catalog::{random_admissible_pair, random_unimodular, PairShape};
use flathom::centralizer::{centralizer_algebra, homogeneity_verdict, Verdict};
use flathom::exactlin::scalar::{int, unit_vector};
use flathom::exactlin::{format_scalar, parse_scalar, Matrix, Scalar, Subspace, Vector};
use flathom::fixpoint::{commutator_fixed_point, cor37_family, dimension_diagnostic, BoundStatus};
use flathom::isogrp::{block_form, check_rules, commutator, commutator_formula, pair_in_w, validate};
use flathom::lowdim::{classify, construct_dim6, Dim6Kind, Dim6Params, Tag};
use flathom::nilrep::{base_lattice, build_cotangent, realize_group, NilLieAlgebra};
use flathom::quadspace::QuadraticSpace;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

fn small_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()
}

/// Random 2-step nilpotent algebra: brackets of the first `n - c` basis
/// vectors land in the span of the last `c`.
fn random_two_step(rng: &mut ChaCha8Rng) -> NilLieAlgebra {
    let n = rng.gen_range(2..=4usize);
    let c = rng.gen_range(1..n);
    let mut entries = Vec::new();
    for i in 0..n - c {
        for j in i + 1..n - c {
            for k in n - c..n {
                let x = rng.gen_range(-2..=2i64);
                if x != 0 {
                    entries.push((i, j, k, int(x)));
                }
            }
        }
    }
    NilLieAlgebra::new(n, &entries).unwrap()
}

fn pair_shape(rng: &mut ChaCha8Rng) -> PairShape {
    PairShape {
        k: rng.gen_range(2..=4),
        r: rng.gen_range(2..=3),
        definite: rng.gen_range(0..=2),
        rank: rng.gen_range(2..=3),
        commuting: rng.gen_bool(0.2),
        basis_change: rng.gen_bool(0.5),
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn scalars_are_canonical(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = parse_scalar(&format!("{p}/{q}")).unwrap();
        prop_assert!(*x.denom() > 0.into());
        prop_assert_eq!(num_integer::Integer::gcd(x.numer(), x.denom()), 1.into());
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn subspace_dimensions_are_modular(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6usize);
        let a: Vec<Vector> = (0..rng.gen_range(0..=n)).map(|_| small_vector(&mut rng, n)).collect();
        let b: Vec<Vector> = (0..rng.gen_range(0..=n)).map(|_| small_vector(&mut rng, n)).collect();
        let (sa, sb) = (Subspace::span(n, &a), Subspace::span(n, &b));
        prop_assert!(sa.dim() <= n);
        prop_assert_eq!(Subspace::rank_of(sa.basis()), sa.dim());
        prop_assert_eq!(sa.sum(&sb).dim() + sa.intersection(&sb).dim(), sa.dim() + sb.dim());
        for v in &a {
            prop_assert!(sa.contains(v));
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn signature_and_witt_index_survive_basis_change(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=7usize);
        let q = rng.gen_range(0..=n / 2);
        let base = QuadraticSpace::from_signature(n - q, q).unwrap();
        let p = random_unimodular(&mut rng, n);
        let s = QuadraticSpace::new(&(&p.transpose() * base.gram()) * &p).unwrap();
        prop_assert_eq!(s.signature(), (n - q, q));
        prop_assert_eq!(s.witt_index(), q);
        let w = s.isotropic_witness().unwrap();
        prop_assert_eq!(w.dim(), q);
        prop_assert!(s.is_totally_isotropic(&w));
    }

    #[test]
    fn witt_frames_have_block_gram(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=7usize);
        let q = rng.gen_range(1..=n / 2);
        let k = rng.gen_range(1..=q);
        let p = random_unimodular(&mut rng, n);
        let pinv = flathom::exactlin::inverse(&p).unwrap();
        let base = QuadraticSpace::from_signature(n - q, q).unwrap();
        let s = QuadraticSpace::new(&(&p.transpose() * base.gram()) * &p).unwrap();
        // e_i + e_{n-q+i} is isotropic for the diagonal form
        let u: Vec<Vector> = (0..k)
            .map(|i| {
                let mut v = unit_vector(n, i);
                v[n - q + i] = int(1);
                pinv.mul_vec(&v)
            })
            .collect();
        let f = s.witt_frame(&Subspace::span(n, &u)).unwrap();
        let g = f.frame_gram(&s);
        let m = f.dim_w();
        prop_assert!(g.block(0, k, 0, k).is_zero());
        prop_assert!(g.block(k + m, n, k + m, n).is_zero());
        prop_assert_eq!(g.block(0, k, k + m, n), Matrix::identity(k));
        prop_assert!(g.block(0, k, k, k + m).is_zero());
        prop_assert!(g.block(k + m, n, k, k + m).is_zero());
        prop_assert_eq!(&g.block(k, k + m, k, k + m), f.gram_w());
        prop_assert_eq!(f.u_space(), Subspace::span(n, &u));
    }

    #[test]
    fn admissible_pairs_obey_the_block_rules(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = pair_shape(&mut rng);
        let p = random_admissible_pair(&mut rng, shape).unwrap();
        prop_assert!(p.admissibility().unwrap().all_pass());
        let g = p.generators();
        for x in g {
            prop_assert!(validate(x).all_pass());
        }
        let direct = commutator(&g[0], &g[1]).unwrap();
        let (a3, v3) = commutator_formula(&g[0], &g[1]);
        prop_assert_eq!(direct.nilpart(), &a3);
        prop_assert_eq!(direct.translation(), &v3);

        let frame = p.space().witt_frame(&p.u_zero()).unwrap();
        for x in g {
            let bf = block_form(x, &frame).unwrap();
            prop_assert!(bf.c.is_skew());
            for i in 0..bf.b.cols() {
                for j in 0..bf.b.cols() {
                    prop_assert_eq!(pair_in_w(frame.gram_w(), &bf.b_column(i), &bf.b_column(j)), int(0));
                }
            }
            prop_assert_eq!(frame.from_frame(&bf.assemble()), x.nilpart().clone());
        }
        let rules = check_rules(&g[0], &g[1], &frame).unwrap();
        prop_assert!(rules.all_hold());
        prop_assert_eq!(rules.c3.clone(), rules.cross.scale(&int(-2)));
    }

    #[test]
    fn fixed_point_witnesses_verify(seed in 0u64..1_000) {
        let p = cor37_family(seed);
        let frame = p.space().witt_frame(&p.u_zero()).unwrap();
        let g = p.generators();
        let w = commutator_fixed_point(&g[0], &g[1], &frame).unwrap().unwrap();
        prop_assert_eq!(w.element.apply(&w.point), w.point.clone());
        let d = dimension_diagnostic(&p).unwrap();
        prop_assert_eq!(d.status, BoundStatus::FixedPoint);
        prop_assert!(d.witness.unwrap().verify());
    }

    #[test]
    fn nilpotent_realizations_are_homogeneous(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_two_step(&mut rng);
        let h = build_cotangent(&g);
        prop_assert_eq!(h.space().signature(), (g.dim(), g.dim()));
        let p = realize_group(&g, &base_lattice(&g)).unwrap();
        prop_assert!(p.admissibility().unwrap().all_pass());
        prop_assert!(p.holonomy_abelian());

        let r = homogeneity_verdict(&p);
        for x in &r.algebra_basis {
            prop_assert!(x.is_skew_adjoint(p.space()));
            for gen in p.generators() {
                prop_assert!(x.bracket_with(gen).is_zero());
            }
        }
        prop_assert_eq!(r.verdict, Verdict::Transitive);
        prop_assert_eq!(r.orbit_span_dim, p.dim());
        prop_assert!(r.nilpotent_certified);
    }

    #[test]
    fn six_dimensional_ranks(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = if rng.gen_bool(0.5) { Dim6Kind::Heisenberg } else { Dim6Kind::Rank6 };
        let count = if kind == Dim6Kind::Heisenberg { 2 } else { 3 };
        let ustar = loop {
            let v: Vec<Vector> = (0..count).map(|_| small_vector(&mut rng, 3)).collect();
            if Subspace::rank_of(&v) == count {
                break v;
            }
        };
        let theta: Vec<Vector> = if kind == Dim6Kind::Heisenberg {
            (0..rng.gen_range(0..=2)).map(|i| unit_vector(3, i)).collect()
        } else {
            Vec::new()
        };
        let alpha = Scalar::new(rng.gen_range(1..=4i64).into(), rng.gen_range(1..=3i64).into());
        let params = Dim6Params { kind, alpha, ustar, u: Vec::new(), theta: theta.clone() };
        // extra translations may fall in the span of the commutators
        let p = match construct_dim6(&params) {
            Ok(p) => p,
            Err(e) => {
                prop_assert!(!theta.is_empty(), "{}", e);
                return Ok(());
            }
        };
        let c = classify(&p).unwrap();
        match kind {
            Dim6Kind::Heisenberg => {
                prop_assert_eq!(c.verdict.tag, Tag::HeisenbergTimesTranslations);
                prop_assert_eq!(c.verdict.rank, 3 + Subspace::rank_of(&theta));
                prop_assert!((3..=5).contains(&c.verdict.rank));
            }
            Dim6Kind::Rank6 => {
                prop_assert_eq!(c.verdict.tag, Tag::Rank6Lattice);
                prop_assert_eq!(c.verdict.rank, 6);
            }
        }
    }
}

#[test]
fn centralizer_of_one_translation() {
    // pure translations commute with all translations and with L when Lv = 0
    let space = Arc::new(QuadraticSpace::from_signature(2, 1).unwrap());
    let t = flathom::isogrp::AffineIsometry::pure_translation(space.clone(), ints(&[1, 0, 0])).unwrap();
    let p = flathom::isogrp::GroupPresentation::new(space, vec![t]).unwrap();
    let basis = centralizer_algebra(&p);
    // 3 translations plus the one-dimensional stabilizer of e1 in so(2, 1)
    assert_eq!(basis.len(), 4);
    assert_eq!(homogeneity_verdict(&p).verdict, Verdict::Transitive);
}
