use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xq_core::crossed::{
    xc3_homotopic, xc3_verify_homotopy, ActionTable, CrossedComplex3, GroupAction,
    PreCrossedModule, Xc3Morphism,
};
use xq_core::group::{Element, Group, GroupHom, Nil2Element, TensorElement};
use xq_core::linalg::Int;
use xq_core::Sampling;

fn ints(xs: &[i64]) -> Element {
    Element::from_i64s(xs)
}

fn hom(src: &Group, tgt: &Group, images: Vec<Element>) -> GroupHom {
    GroupHom::new(src.clone(), tgt.clone(), images).unwrap()
}

fn nil2(base: &[i64], comm: &[i64]) -> Element {
    Element::Nil2(
        Nil2Element::from_parts(
            base.iter().map(|&x| Int::from(x)).collect(),
            comm.iter().map(|&x| Int::from(x)).collect(),
        )
        .unwrap(),
    )
}

#[test]
fn conjugation_module_is_crossed() {
    let f = Group::Free { rank: 2 };
    let m = PreCrossedModule::new(GroupHom::identity(f), GroupAction::Conjugation).unwrap();
    let report = m.check_crossed(Sampling::default());
    assert!(report.passed(), "{report}");
    assert_eq!(report.entry("peiffer").unwrap().cases, 4 + 200);
}

#[test]
fn zero_boundary_on_nil2_is_only_precrossed() {
    let q = Group::FreeNil2 { rank: 2 };
    let m = PreCrossedModule::new(GroupHom::zero(q.clone(), Group::trivial()), GroupAction::Trivial)
        .unwrap();
    assert!(m.check_precrossed(Sampling::default()).passed());
    let report = m.check_crossed(Sampling::default());
    let peiffer = report.entry("peiffer").unwrap();
    assert!(!peiffer.passed);
    assert!(peiffer.witness.as_ref().unwrap().contains("⟨g1, g2⟩"));
    // derived by hand: −e − e′ + e + e′ has commutator coordinate 1
    let g = q.generators();
    assert_eq!(m.peiffer_commutator(&g[0], &g[1]).unwrap(), nil2(&[0, 0], &[1]));
    assert_eq!(
        m.peiffer_map_w(&TensorElement::basis(2, 0, 1)).unwrap(),
        nil2(&[0, 0], &[1])
    );
}

#[test]
fn peiffer_commutator_vanishes_whenever_crossed() {
    let m = commutator_module();
    let report = m.check_crossed(Sampling::default());
    assert!(report.passed(), "{report}");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let x = m.m2().random_element(&mut rng, 8);
        let y = m.m2().random_element(&mut rng, 8);
        assert!(m.m2().is_identity(&m.peiffer_commutator(&x, &y).unwrap()).unwrap());
    }
}

#[test]
fn equivariance_on_random_pairs() {
    let m = commutator_module();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let x = m.m2().random_element(&mut rng, 8);
        let a = m.m1().random_element(&mut rng, 8);
        let lhs = m.d().apply(&m.act(&x, &a).unwrap()).unwrap();
        let rhs = m.m1().conjugate(&m.d().apply(&x).unwrap(), &a).unwrap();
        assert!(m.m1().eq(&lhs, &rhs).unwrap());
    }
}

#[test]
fn w_is_additive_over_a_crossed_target() {
    // the Peiffer map of a crossed module is identically zero, hence additive
    let m = commutator_module();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let t = random_tensor(&mut rng, 2);
        let u = random_tensor(&mut rng, 2);
        let lhs = m.peiffer_map_w(&t.add(&u).unwrap()).unwrap();
        let rhs = m
            .m2()
            .op(&m.peiffer_map_w(&t).unwrap(), &m.peiffer_map_w(&u).unwrap())
            .unwrap();
        assert!(m.m2().eq(&lhs, &rhs).unwrap());
    }
}

fn random_tensor(rng: &mut ChaCha8Rng, n: usize) -> TensorElement {
    TensorElement::from_matrix(
        (0..n)
            .map(|_| (0..n).map(|_| Int::from(rng.gen_range(-3..=3))).collect())
            .collect(),
    )
    .unwrap()
}

/// `Nil(x, y) → Z²`, abelianization, with `Z²` acting through conjugation
/// by lifts: `yᵃ = y − (x, y)`, `xᵇ = x + (x, y)`.
fn commutator_module() -> PreCrossedModule {
    let q = Group::FreeNil2 { rank: 2 };
    let z2 = Group::free_abelian(2);
    let d = hom(&q, &z2, vec![ints(&[1, 0]), ints(&[0, 1])]);
    let table = ActionTable::new(
        &q,
        &z2,
        vec![
            vec![nil2(&[1, 0], &[0]), nil2(&[1, 0], &[1])],
            vec![nil2(&[0, 1], &[-1]), nil2(&[0, 1], &[0])],
        ],
    )
    .unwrap();
    PreCrossedModule::new(d, GroupAction::Table(table)).unwrap()
}

/// `Z → Nil(x, y) → Z²` with `∂₃(h) = (x, y)`.
fn commutator_complex() -> CrossedComplex3 {
    let m = commutator_module();
    let z = Group::free_abelian(1);
    let d3 = hom(&z, m.m2(), vec![nil2(&[0, 0], &[1])]);
    CrossedComplex3::new(m, d3, GroupAction::Trivial).unwrap()
}

fn identity_morphism(x: &CrossedComplex3) -> Xc3Morphism {
    Xc3Morphism {
        f1: GroupHom::identity(x.m1().clone()),
        f2: GroupHom::identity(x.m2().clone()),
        f3: GroupHom::identity(x.m3().clone()),
    }
}

#[test]
fn commutator_complex_passes_all_conditions() {
    let x = commutator_complex();
    let report = x.check(Sampling::default());
    assert!(report.passed(), "{report}");
}

#[test]
fn zero_boundary_complex_passes() {
    let m = commutator_module();
    let z = Group::free_abelian(2);
    let x = CrossedComplex3::new(m.clone(), GroupHom::zero(z, m.m2().clone()), GroupAction::Trivial)
        .unwrap();
    assert!(x.check(Sampling::default()).passed());
}

#[test]
fn boundary_not_in_kernel_fails_with_generator() {
    let m = commutator_module();
    let z = Group::free_abelian(1);
    let d3 = hom(&z, m.m2(), vec![nil2(&[1, 0], &[0])]);
    let x = CrossedComplex3::new(m, d3, GroupAction::Trivial).unwrap();
    let report = x.check(Sampling::default());
    let entry = report.entry("d2d3").unwrap();
    assert!(!entry.passed);
    assert!(entry.witness.as_ref().unwrap().contains("g1"));
}

#[test]
fn non_abelian_top_group_fails() {
    let m = commutator_module();
    let top = Group::FreeNil2 { rank: 2 };
    let x = CrossedComplex3::new(m.clone(), GroupHom::zero(top, m.m2().clone()), GroupAction::Trivial)
        .unwrap();
    let report = x.check(Sampling::with_samples(10));
    assert!(!report.entry("m3.abelian").unwrap().passed);
}

/// `g₂(y) = y + r·(x, y)`, otherwise the identity.
fn sheared(x: &CrossedComplex3, r: i64) -> Xc3Morphism {
    let mut g = identity_morphism(x);
    g.f2 = hom(x.m2(), x.m2(), vec![nil2(&[1, 0], &[0]), nil2(&[0, 1], &[r])]);
    g
}

#[test]
fn shear_homotopies_through_a_commutator_boundary() {
    let x = commutator_complex();
    let under = vec![nil2(&[1, 0], &[0])];
    let f = identity_morphism(&x);
    for r in -4..=4 {
        let g = sheared(&x, r);
        assert!(g.check(&x, &x).passed());
        let h = xc3_homotopic(&f, &g, &x, &x, &under, 10).unwrap();
        assert_eq!(h.alpha, Some(vec![ints(&[0]), ints(&[r])]), "r = {r}");
    }
    let refl = xc3_homotopic(&f, &f, &x, &x, &under, 10).unwrap();
    assert_eq!(refl.alpha, Some(vec![ints(&[0]), ints(&[0])]));
}

#[test]
fn symmetry_and_transitivity_on_the_shear_family() {
    let x = commutator_complex();
    let under = vec![nil2(&[1, 0], &[0])];
    for r in -3..=3 {
        for s in -3..=3 {
            let (f, g) = (sheared(&x, r), sheared(&x, s));
            let fg = xc3_homotopic(&f, &g, &x, &x, &under, 10).unwrap().alpha.unwrap();
            let gf = xc3_homotopic(&g, &f, &x, &x, &under, 10).unwrap().alpha.unwrap();
            let negated: Vec<Element> = fg.iter().map(|a| x.m3().inv(a).unwrap()).collect();
            assert!(xc3_verify_homotopy(&g, &f, &x, &x, &under, &negated, Sampling::default()).passed());
            assert_eq!(gf, negated);
            for t in -2..=2 {
                let k = sheared(&x, t);
                let gk = xc3_homotopic(&g, &k, &x, &x, &under, 10).unwrap().alpha.unwrap();
                let sum: Vec<Element> =
                    fg.iter().zip(&gk).map(|(a, b)| x.m3().op(a, b).unwrap()).collect();
                assert!(xc3_verify_homotopy(&f, &k, &x, &x, &under, &sum, Sampling::with_samples(20))
                    .passed());
            }
        }
    }
}

#[test]
fn zero_boundary_forces_equal_degree_two_maps() {
    // M₁ = 0, M₂ = Z, M₃ = Z, ∂₃ = 0; g₂ = 2·id cannot be reached
    let z = Group::free_abelian(1);
    let m = PreCrossedModule::new(GroupHom::zero(z.clone(), Group::trivial()), GroupAction::Trivial)
        .unwrap();
    let x = CrossedComplex3::new(m, GroupHom::zero(z.clone(), z.clone()), GroupAction::Trivial).unwrap();
    assert!(x.check(Sampling::default()).passed());
    let f = identity_morphism(&x);
    let mut g = f.clone();
    g.f2 = hom(&z, &z, vec![ints(&[2])]);
    assert!(g.check(&x, &x).passed());
    let h = xc3_homotopic(&f, &g, &x, &x, &[], 10).unwrap();
    assert!(h.alpha.is_none());
    assert!(h.certificate.unwrap().contains("forces f₂ = g₂"));
}

/// `0 → Z² → 0` over `M₃ = Z`, `∂₃ = d`, into the same shape with `M₃′ = Z²`
/// and `∂₃′ = D`; morphisms `g = 0 + (D·A, A·d)` for a chosen `A`.
#[test]
fn synthetic_homotopies_are_recovered_and_agree_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let z1 = Group::free_abelian(1);
    let z2 = Group::free_abelian(2);
    let lower = PreCrossedModule::new(GroupHom::zero(z2.clone(), Group::trivial()), GroupAction::Trivial)
        .unwrap();
    for round in 0..60 {
        let d: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
        let dd: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let x = CrossedComplex3::new(lower.clone(), hom(&z1, &z2, vec![ints(&d)]), GroupAction::Trivial).unwrap();
        let y = CrossedComplex3::new(
            lower.clone(),
            hom(&z2, &z2, vec![ints(&[dd[0][0], dd[1][0]]), ints(&[dd[0][1], dd[1][1]])]),
            GroupAction::Trivial,
        )
        .unwrap();
        // columns of A are α(x₁), α(x₂); half the rounds perturb g₃ off the homotopy class
        let a: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let col = |j: usize| [a[0][j], a[1][j]];
        let da = |j: usize| ints(&[dd[0][0] * col(j)[0] + dd[0][1] * col(j)[1], dd[1][0] * col(j)[0] + dd[1][1] * col(j)[1]]);
        let mut ad = [a[0][0] * d[0] + a[0][1] * d[1], a[1][0] * d[0] + a[1][1] * d[1]];
        if round % 2 == 1 {
            // shift g₃ by a kernel vector of D so that g stays a morphism
            let e = [rng.gen_range(-1..=1), rng.gen_range(-1..=1)];
            if dd[0][0] * e[0] + dd[0][1] * e[1] != 0 || dd[1][0] * e[0] + dd[1][1] * e[1] != 0 {
                continue;
            }
            ad = [ad[0] + e[0], ad[1] + e[1]];
        }
        let f = Xc3Morphism {
            f1: GroupHom::identity(Group::trivial()),
            f2: GroupHom::zero(z2.clone(), z2.clone()),
            f3: GroupHom::zero(z1.clone(), z2.clone()),
        };
        let g = Xc3Morphism {
            f1: f.f1.clone(),
            f2: hom(&z2, &z2, vec![da(0), da(1)]),
            f3: hom(&z1, &z2, vec![ints(&ad)]),
        };
        assert!(g.check(&x, &y).passed());
        let solved = xc3_homotopic(&f, &g, &x, &y, &[], 10).unwrap();
        if round % 2 == 0 {
            assert!(solved.alpha.is_some(), "round {round}");
        }
        // brute force over a small box, checked with the verifier
        let mut brute = false;
        'search: for a0 in -3..=3 {
            for a1 in -3..=3 {
                for b0 in -3..=3 {
                    for b1 in -3..=3 {
                        let alpha = vec![ints(&[a0, a1]), ints(&[b0, b1])];
                        if xc3_verify_homotopy(&f, &g, &x, &y, &[], &alpha, Sampling::with_samples(0)).passed() {
                            brute = true;
                            break 'search;
                        }
                    }
                }
            }
        }
        if brute {
            assert!(solved.alpha.is_some(), "round {round}: enumeration found a homotopy");
        }
        if let Some(alpha) = solved.alpha {
            assert!(xc3_verify_homotopy(&f, &g, &x, &y, &[], &alpha, Sampling::default()).passed());
        }
    }
}

#[test]
fn free_target_falls_back_to_enumeration() {
    // M₂′ free of rank 1 with ∂₃′(h) = g₁; g₂ = f₂ + 3·∂₃′(h)
    let f1 = Group::Free { rank: 1 };
    let z = Group::free_abelian(1);
    let lower = PreCrossedModule::new(GroupHom::zero(f1.clone(), Group::trivial()), GroupAction::Trivial)
        .unwrap();
    let gen = f1.generator(0).unwrap();
    let x = CrossedComplex3::new(lower, hom(&z, &f1, vec![gen.clone()]), GroupAction::Trivial).unwrap();
    let f = identity_morphism(&x);
    let mut g = f.clone();
    g.f2 = hom(&f1, &f1, vec![f1.pow(&gen, &Int::from(4)).unwrap()]);
    g.f3 = hom(&z, &z, vec![ints(&[4])]);
    let h = xc3_homotopic(&f, &g, &x, &x, &[], 5).unwrap();
    assert_eq!(h.alpha, Some(vec![ints(&[3])]));
    let h = xc3_homotopic(&f, &g, &x, &x, &[], 2).unwrap();
    assert!(h.alpha.is_none());
    assert!(h.certificate.unwrap().contains("[-2, 2]"));
}
