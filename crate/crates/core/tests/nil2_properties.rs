mod support {
    pub mod rewrite_oracle;
}

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::rewrite_oracle::oracle_normal_form;
use xq_core::group::{Element, FgAbelianGroup, Group, Letter, Nil2Element, Word};
use xq_core::linalg::Int;

fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

#[test]
fn normal_form_matches_rewriting_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let rank = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=8);
        let letters: Vec<(usize, i64)> = (0..len)
            .map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let word = Word::from_letters(
            letters.iter().map(|&(g, s)| Letter::new(g, s < 0)).collect(),
        );
        let nf = Nil2Element::from_word(&word, rank).unwrap();
        let (base, comm) = oracle_normal_form(&letters, rank);
        if to_i64(nf.base()) != base || to_i64(nf.comm()) != comm {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn oracle_reproduces_documented_examples() {
    assert_eq!(oracle_normal_form(&[(1, 1), (0, 1)], 2), (vec![1, 1], vec![-1]));
    assert_eq!(
        oracle_normal_form(&[(0, -1), (1, -1), (0, 1), (1, 1)], 2),
        (vec![0, 0], vec![1])
    );
}

fn nil2_element(rank: usize) -> impl Strategy<Value = Nil2Element> {
    proptest::collection::vec((0..rank, any::<bool>()), 0..10).prop_map(move |ls| {
        let w = Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect());
        Nil2Element::from_word(&w, rank).unwrap()
    })
}

proptest! {
    #[test]
    fn associativity(x in nil2_element(3), y in nil2_element(3), z in nil2_element(3)) {
        prop_assert_eq!(x.op(&y).unwrap().op(&z).unwrap(), x.op(&y.op(&z).unwrap()).unwrap());
    }

    #[test]
    fn identity_and_inverse(x in nil2_element(3)) {
        let e = Nil2Element::identity(3);
        prop_assert_eq!(x.op(&e).unwrap(), x.clone());
        prop_assert_eq!(e.op(&x).unwrap(), x.clone());
        prop_assert!(x.op(&x.inv()).unwrap().is_identity());
        prop_assert!(x.inv().op(&x).unwrap().is_identity());
    }

    #[test]
    fn commutators_are_central(x in nil2_element(3), y in nil2_element(3)) {
        let c = x.commutator(&y).unwrap();
        prop_assert!(linalg_zero(c.base()));
        for i in 0..3 {
            let g = Nil2Element::generator(3, i);
            prop_assert!(c.commutator(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn commutator_is_bilinear(x in nil2_element(3), x2 in nil2_element(3), y in nil2_element(3)) {
        let lhs = x.op(&x2).unwrap().commutator(&y).unwrap();
        let rhs = x.commutator(&y).unwrap().op(&x2.commutator(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_matches_defining_word(x in nil2_element(2), y in nil2_element(2)) {
        let w = x.inv().to_word()
            .concat(&y.inv().to_word())
            .concat(&x.to_word())
            .concat(&y.to_word());
        prop_assert_eq!(Nil2Element::from_word(&w, 2).unwrap(), x.commutator(&y).unwrap());
    }

    #[test]
    fn abelianization_is_a_homomorphism(x in nil2_element(3), y in nil2_element(3)) {
        let sum = x.op(&y).unwrap().abelianize();
        let parts: Vec<Int> = x.abelianize().iter().zip(y.abelianize()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn doubled_log_is_additive_on_commuting_pairs(x in nil2_element(3), k in -4i64..5) {
        let y = x.scale(&Int::from(k));
        let lhs = x.op(&y).unwrap().doubled_log();
        let rhs: Vec<Int> = x.doubled_log().iter().zip(y.doubled_log()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn abelian_equality_is_a_congruence(
        a in proptest::collection::vec(-6i64..7, 2),
        b in proptest::collection::vec(-6i64..7, 2),
        c in proptest::collection::vec(-6i64..7, 2),
    ) {
        let g = FgAbelianGroup::new(2, vec![ints(&[2, -2]), ints(&[0, 3])]).unwrap();
        let (a, b, c) = (ints(&a), ints(&b), ints(&c));
        prop_assert!(g.equal(&a, &a).unwrap());
        prop_assert_eq!(g.equal(&a, &b).unwrap(), g.equal(&b, &a).unwrap());
        if g.equal(&a, &b).unwrap() && g.equal(&b, &c).unwrap() {
            prop_assert!(g.equal(&a, &c).unwrap());
        }
        if g.equal(&a, &b).unwrap() {
            let ac: Vec<Int> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<Int> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert!(g.equal(&ac, &bc).unwrap());
        }
    }
}

fn linalg_zero(v: &[Int]) -> bool {
    v.iter().all(|x| x == &Int::from(0))
}

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn lattice_membership_agrees_with_box_enumeration() {
    // relation (2, −2) in Z²; brute force k·(2, −2) over a box
    let g = FgAbelianGroup::new(2, vec![ints(&[2, -2])]).unwrap();
    for x0 in -3..=3 {
        for x1 in -3..=3 {
            let brute = (-10i64..=10).any(|k| 2 * k == x0 && -2 * k == x1);
            assert_eq!(g.is_zero(&ints(&[x0, x1])), brute, "({x0}, {x1})");
        }
    }
    assert!(!g.equal(&ints(&[1, 0]), &ints(&[0, 1])).unwrap());
}

#[test]
fn group_wrapper_agrees_with_nil2_arithmetic() {
    let q = Group::FreeNil2 { rank: 3 };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let x = q.random_element(&mut rng, 6);
        let y = q.random_element(&mut rng, 6);
        let (Element::Nil2(a), Element::Nil2(b)) = (&x, &y) else { unreachable!() };
        assert_eq!(q.op(&x, &y).unwrap(), Element::Nil2(a.op(b).unwrap()));
        assert_eq!(q.commutator(&x, &y).unwrap(), Element::Nil2(a.commutator(b).unwrap()));
    }
}
