use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sl2core::heckechar::{compare_subexpressions, Expression, Subexpression};
use sl2core::nilhecke::{nh_char, sigma, NHElement, Side};
use sl2core::polyring::{Sl2Op, ZPoly};
use sl2core::weyl::Permutation;

fn poly(n: usize, seed: u64) -> ZPoly {
    ZPoly::random(&mut ChaCha8Rng::seed_from_u64(seed), n, 6, 5, 7)
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_and_z_are_derivations(n in 1usize..4, s1: u64, s2: u64) {
        let (f, g) = (poly(n, s1), poly(n, s2));
        let fg = &f * &g;
        prop_assert_eq!(fg.d(), &(&f.d() * &g) + &(&f * &g.d()));
        prop_assert_eq!(fg.z(), &(&f.z() * &g) + &(&f * &g.z()));
    }

    #[test]
    fn weight_relations(n in 1usize..4, s: u64) {
        let f = poly(n, s);
        // [h, d] = 2d and [h, z] = -2z.
        prop_assert_eq!(&f.d().h() - &f.h().d(), f.d().scale(&2.into()));
        prop_assert_eq!(&f.z().h() - &f.h().z(), f.z().scale(&(-2).into()));
    }

    #[test]
    fn demazure_braid_and_square(s: u64) {
        let f = poly(3, s);
        let a = f.demazure_word(&[1, 2, 1]).unwrap();
        let b = f.demazure_word(&[2, 1, 2]).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(f.demazure_word(&[1, 1]).unwrap().is_zero());
    }

    #[test]
    fn permutation_inverse_and_length(w in perm(5)) {
        let id = Permutation::identity(5);
        prop_assert_eq!(w.compose(&w.inverse()).unwrap(), id.clone());
        prop_assert_eq!(w.length(), w.inverse().length());
        prop_assert_eq!(Permutation::from_word(5, &w.reduced_word()).unwrap(), w.clone());
        prop_assert!(id.bruhat_le(&w).unwrap());
    }

    #[test]
    fn nh_multiplication_is_associative(n in 1usize..4, s: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = NHElement::random(&mut rng, n, 2, 2);
        let b = NHElement::random(&mut rng, n, 2, 2);
        let c = NHElement::random(&mut rng, n, 2, 2);
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn nh_d_is_a_derivation(n in 1usize..4, s: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = NHElement::random(&mut rng, n, 2, 2);
        let b = NHElement::random(&mut rng, n, 2, 2);
        let lhs = a.mul(&b).unwrap().d_gen().unwrap();
        let rhs = a.d_gen().unwrap().mul(&b).unwrap().add(&a.mul(&b.d_gen().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nh_action_matches_operator(n in 1usize..4, s: u64, t: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = NHElement::random(&mut rng, n, 2, 2);
        let b = NHElement::random(&mut rng, n, 2, 2);
        let f = poly(n, t);
        prop_assert_eq!(a.mul(&b).unwrap().act(&f).unwrap(), a.act(&b.act(&f).unwrap()).unwrap());
    }

    #[test]
    fn nh_characters_are_dual(w in perm(5)) {
        let left = nh_char(&w, Side::Left);
        prop_assert_eq!(left.permute(&w.inverse()).unwrap(), nh_char(&w, Side::Right));
        prop_assert_eq!(sigma(&left), (-2 * w.length() as i64).into());
    }

    #[test]
    fn divided_powers_agree(n in 1usize..4, s: u64, l in 1u32..5) {
        let f = poly(n, s);
        for op in [Sl2Op::D, Sl2Op::Z] {
            prop_assert_eq!(f.divided(op, l).unwrap(), f.divided_closed(op, l).unwrap());
        }
    }

    #[test]
    fn json_roundtrip(n in 1usize..5, s: u64) {
        let f = poly(n, s);
        prop_assert_eq!(ZPoly::from_json(&f.to_json()).unwrap(), f);
        let a = NHElement::random(&mut ChaCha8Rng::seed_from_u64(s), n, 2, 3);
        prop_assert_eq!(NHElement::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn lexico_antisymmetric(letters in prop::collection::vec(1usize..4, 0..7), m1: u32, m2: u32) {
        let d = letters.len();
        let x = Expression::new(4, letters).unwrap();
        let bits = |m: u32| (0..d).map(|k| m >> k & 1 == 1).collect::<Vec<_>>();
        let e = Subexpression::new(x.clone(), bits(m1)).unwrap();
        let f = Subexpression::new(x, bits(m2)).unwrap();
        let ef = compare_subexpressions(&e, &f).unwrap();
        let fe = compare_subexpressions(&f, &e).unwrap();
        prop_assert_eq!(ef.map(|o| o.reverse()), fe);
        prop_assert_eq!(ef == Some(std::cmp::Ordering::Equal), m1 & ((1 << d) - 1) == m2 & ((1 << d) - 1));
        if e.terminus() == f.terminus() {
            prop_assert!(ef.is_some());
        }
    }
}
