use std::collections::BTreeSet;

use xq_core::group::Element;
use xq_core::linalg::Int;
use xq_core::quadratic::{qcm_check, rq_homotopic, verify_homotopy, Obstruction, QCMorphism, SolveOptions, Verdict};
use xq_core::sphere::*;
use xq_core::Sampling;

fn omega_ee(r: i64) -> Vec<Int> {
    vec![Int::from(r)]
}

#[test]
fn sphere_and_cylinder_pass_their_checks() {
    let d = build_sphere_d();
    let report = d.complex.check(Sampling::with_samples(300));
    assert!(report.passed(), "{report}");
    let q = build_cylinder_q();
    let report = q.under.check(&d.complex, Sampling::with_samples(300));
    assert!(report.passed(), "{report}");
}

#[test]
fn cylinder_boundaries() {
    let q = build_cylinder_q();
    let e3 = q.rqm().boundary(&xq_core::linalg::unit_vec(10, E3)).unwrap();
    let expected: Vec<Int> = [-1, 1, 1].iter().map(|&a| Int::from(a)).collect();
    assert_eq!(e3.abelianize(), expected);
    let k = q.complex().d4().images()[0].clone();
    assert!(q.rqm().boundary(k.as_vector().unwrap()).unwrap().is_identity());
}

#[test]
fn homology_constraints_have_four_solutions() {
    for range in [1, 3, 5, 8] {
        let sols: Vec<(i64, i64, i64)> =
            solve_homology_constraints(range).solutions.iter().map(|s| (s.a, s.b, s.k)).collect();
        assert_eq!(sols, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
    }
}

#[test]
fn homology_constraints_match_the_polynomial_system() {
    let expected: BTreeSet<(i64, i64, i64)> = (-5i64..=5)
        .flat_map(|a| (-5i64..=5).map(move |b| (a, b)))
        .filter(|&(a, b)| 2 * a * (1 - a) == 0 && 2 * b * (1 - b) == 0)
        .map(|(a, b)| (a, b, a + b - 2 * a * b))
        .collect();
    let got: BTreeSet<_> = solve_homology_constraints(5).solutions.iter().map(|s| (s.a, s.b, s.k)).collect();
    assert_eq!(got, expected);
}

#[test]
fn enumeration_keeps_two_families() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let small = enumerate_retractions(&q, &d, 2, 1).unwrap();
    let keys: Vec<(i64, i64, i64)> = small.iter().map(|g| (g.a, g.b, g.r)).collect();
    assert_eq!(keys, vec![(0, 1, -1), (0, 1, 0), (0, 1, 1), (1, 0, -1), (1, 0, 0), (1, 0, 1)]);
    let ab = |gs: &[Retraction]| gs.iter().map(|g| (g.a, g.b)).collect::<BTreeSet<_>>();
    let wide = enumerate_retractions(&q, &d, 5, 1).unwrap();
    assert_eq!(ab(&small), ab(&wide));
    let homology: BTreeSet<_> = solve_homology_constraints(5)
        .solutions
        .iter()
        .filter(|s| s.k == 1)
        .map(|s| (s.a, s.b))
        .collect();
    assert_eq!(ab(&small), homology);
}

#[test]
fn rejected_candidates_fail_the_expected_squares() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let target = d.under_itself();
    let g = retraction_candidate(&q, &d, 1, 1, 0).unwrap();
    let report = qcm_check(&g, &q.under, &target);
    assert!(!report.entry("d3.square").unwrap().passed);
    let g = retraction_candidate(&q, &d, 0, 0, 0).unwrap();
    assert!(!qcm_check(&g, &q.under, &target).entry("d3.square").unwrap().passed);
    let g = retraction_candidate(&q, &d, 1, 0, 0).unwrap();
    assert!(qcm_check(&g, &q.under, &target).passed());
}

#[test]
fn paper_witness_for_both_families() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let target = d.under_itself();
    for r in -10..=10 {
        let f = retraction_candidate(&q, &d, 1, 0, 0).unwrap();
        let g = retraction_candidate(&q, &d, 1, 0, r).unwrap();
        let h = rq_homotopic(&f, &g, &q.under, &target, &SolveOptions::default()).unwrap();
        let w = h.witness().expect("homotopic");
        assert_eq!(w.alpha2, vec![omega_ee(0), omega_ee(r), omega_ee(0)]);
        assert!(w.alpha3.iter().all(|v| v.is_empty()));

        let f = retraction_candidate(&q, &d, 0, 1, 0).unwrap();
        let g = retraction_candidate(&q, &d, 0, 1, r).unwrap();
        let opts = SolveOptions {
            generator_order: Some(vec![0, 2, 1]),
            ..SolveOptions::default()
        };
        let w = rq_homotopic(&f, &g, &q.under, &target, &opts).unwrap();
        assert_eq!(w.witness().unwrap().alpha2, vec![omega_ee(0), omega_ee(0), omega_ee(r)]);
    }
}

#[test]
fn families_are_separated_by_the_zero_boundary() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let f = retraction_candidate(&q, &d, 1, 0, 0).unwrap();
    let g = retraction_candidate(&q, &d, 0, 1, 3).unwrap();
    let h = rq_homotopic(&f, &g, &q.under, &d.under_itself(), &SolveOptions::default()).unwrap();
    assert_eq!(
        h.verdict,
        Verdict::NotHomotopic(Obstruction::BoundaryZeroForcesEqual { generator: 1 })
    );
}

#[test]
fn classification_has_two_classes() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let gs = enumerate_retractions(&q, &d, 3, 4).unwrap();
    let c = classify_retractions(&gs, &q, &d, 4).unwrap();
    assert_eq!(c.classes.len(), 2);
    let reps: Vec<_> = c.classes.iter().map(|k| (k.representative.a, k.representative.b, k.representative.r)).collect();
    assert_eq!(reps, vec![(0, 1, 0), (1, 0, 0)]);
    for class in &c.classes {
        assert_eq!(class.members.len(), 9);
        for m in &class.members {
            let r = m.key.r;
            let expected = if class.representative.a == 1 {
                vec![omega_ee(0), omega_ee(r), omega_ee(0)]
            } else {
                vec![omega_ee(0), omega_ee(0), omega_ee(r)]
            };
            assert_eq!(m.witness.alpha2, expected);
        }
    }
    assert_eq!(c.separations.len(), 1);
    let single = classify_retractions(&gs[..1], &q, &d, 4).unwrap();
    assert_eq!(single.classes.len(), 1);
}

#[test]
fn homotopy_is_an_equivalence_on_the_family() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let target = d.under_itself();
    let gs = enumerate_retractions(&q, &d, 2, 2).unwrap();
    let opts = SolveOptions::default();
    let sampling = Sampling::with_samples(20);
    let solve = |f: &Retraction, g: &Retraction| rq_homotopic(&f.morphism, &g.morphism, &q.under, &target, &opts).unwrap();
    for f in &gs {
        let refl = solve(f, f);
        assert!(refl.witness().unwrap().alpha2.iter().flatten().all(|x| x == &Int::from(0)));
        for g in &gs {
            let fg = solve(f, g);
            let gf = solve(g, f);
            assert_eq!(fg.is_homotopic(), gf.is_homotopic());
            assert_eq!(fg.is_homotopic(), (f.a, f.b) == (g.a, g.b));
            if let Some(h) = fg.witness() {
                let back = h.reversed();
                assert!(verify_homotopy(&g.morphism, &f.morphism, &q.under, &target, &back, sampling).passed());
                for k in &gs {
                    if let Some(h2) = solve(g, k).witness() {
                        let composite = h.then(h2);
                        let report = verify_homotopy(&f.morphism, &k.morphism, &q.under, &target, &composite, sampling);
                        assert!(report.passed(), "{report}");
                    }
                }
            }
        }
    }
}

#[test]
fn a_wrong_witness_is_rejected() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let target = d.under_itself();
    let f = retraction_candidate(&q, &d, 1, 0, 0).unwrap();
    let g = retraction_candidate(&q, &d, 1, 0, 2).unwrap();
    let mut h = rq_homotopic(&f, &g, &q.under, &target, &SolveOptions::default())
        .unwrap()
        .witness()
        .unwrap()
        .clone();
    h.alpha2[1] = omega_ee(1);
    let report = verify_homotopy(&f, &g, &q.under, &target, &h, Sampling::default());
    assert!(!report.entry("homotopy2").unwrap().passed);
    h.alpha2[0] = omega_ee(1);
    let report = verify_homotopy(&f, &g, &q.under, &target, &h, Sampling::default());
    assert!(!report.entry("alpha2.vanishing").unwrap().passed);
}

#[test]
fn mismatched_under_maps_are_errors() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let f = retraction_candidate(&q, &d, 1, 0, 0).unwrap();
    // sends e to 2e, so it is not a retraction
    let mut images: Vec<Element> = f.f2.images().to_vec();
    images[0] = Element::Nil2(xq_core::group::Nil2Element::generator(1, 0).scale(&Int::from(2)));
    let g = QCMorphism::from_images(q.complex(), &d.complex, images, f.f3.images().to_vec(), None).unwrap();
    assert!(rq_homotopic(&f, &g, &q.under, &d.under_itself(), &SolveOptions::default()).is_err());
}

#[test]
fn monoid_table_matches_the_display() {
    use M::*;
    let expected = [[I, T, P1, P2], [T, I, P1, P2], [P1, P2, P1, P2], [P2, P1, P1, P2]];
    assert_eq!(monoid_m_table(), expected);
    assert_eq!(T.mul(T), I);
    assert_eq!(P1.mul(P2), P2);
    assert_eq!(P2.mul(T), P1);
    assert_eq!(P1.mul(P1), P1);
    assert_eq!(P2.mul(P2), P2);
}

#[test]
fn extension_monoid_structure() {
    let report = mbar_check_structure();
    assert!(report.passed(), "{report}");
    let units = mbar_units();
    assert_eq!(units.len(), 8);
    assert!(units.iter().all(|u| matches!(u.m, M::I | M::T)));
    for v in V::ALL {
        let u = ExtMonoidElement::new(M::I, v);
        assert_eq!(mbar_compose(u, u), ExtMonoidElement::IDENTITY);
    }
    let x = ExtMonoidElement::new(M::P1, V([1, 0]));
    let y = ExtMonoidElement::new(M::I, V([1, 1]));
    assert_eq!(mbar_compose(x, y), ExtMonoidElement::new(M::P1, V([0, 1])));
}

#[test]
fn count_is_sixteen_and_matches_mbar() {
    let (q, d) = (build_cylinder_q(), build_sphere_d());
    let gs = enumerate_retractions(&q, &d, 2, 1).unwrap();
    let n = classify_retractions(&gs, &q, &d, 1).unwrap().classes.len() as u64;
    let derivation = assemble_selfmap_count(n);
    assert_eq!(derivation.count, 16);
    assert_eq!(derivation.count, mbar_elements().len() as u64);
    assert!(derivation.consistent);
    assert!(!derivation.axioms.is_empty());
}
