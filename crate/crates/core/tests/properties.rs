use std::collections::BTreeMap;

use bridgecover::linalg::{smith_normal_form, IntMatrix};
use bridgecover::loelim::{eliminate, PatternVerdict};
use bridgecover::presentations::genus_one_presentation;
use bridgecover::qacert::{generate_a_cert, generate_l_cert, verify};
use bridgecover::twobridge::{alexander, cf_value, h1_cyclic_cover_order, mirror, same_knot, EvenExpansion, Fraction};
use bridgecover::words::{
    cyclic_reduce, equal_up_to_cyclic, exponent_sums, instantiate, peel_at, reduce, AffineExp, Item, ParamEnv,
    ParamWord, Side, Sign, SignLattice, Word,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn affine() -> impl Strategy<Value = AffineExp> {
    (-2i64..=2, -2i64..=2).prop_map(|(c, k)| AffineExp::term("q", k).add_const(c))
}

fn syllable() -> impl Strategy<Value = Item> {
    (prop::sample::select(vec!["x", "y"]), affine()).prop_map(|(g, e)| Item::syl(g, e))
}

fn param_word() -> impl Strategy<Value = ParamWord> {
    let leaf = prop::collection::vec(syllable(), 0..5).prop_map(ParamWord::from_items);
    leaf.prop_recursive(2, 16, 4, |inner| {
        prop::collection::vec(
            prop_oneof![
                3 => syllable(),
                1 => (inner, 1i64..=2).prop_map(|(b, m)| Item::block(b, AffineExp::term("q", m))),
            ],
            0..5,
        )
        .prop_map(ParamWord::from_items)
    })
}

fn env() -> ParamEnv {
    ParamEnv::new().with("q", 1)
}

fn at(q: i64) -> BTreeMap<String, i64> {
    [("q".to_string(), q)].into()
}

fn even_pairs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    let e = prop_oneof![-3i64..=-1, 1i64..=3];
    prop::collection::vec((e.clone(), e), 1..=3)
}

proptest! {
    #[test]
    fn reduce_is_idempotent(w in param_word()) {
        let r = reduce(&w, &env());
        prop_assert_eq!(reduce(&r, &env()), r);
    }

    #[test]
    fn reduce_preserves_exponent_sums(w in param_word()) {
        prop_assert_eq!(exponent_sums(&reduce(&w, &env())), exponent_sums(&w));
    }

    #[test]
    fn instantiate_commutes_with_reduce(w in param_word(), q in 1i64..=3) {
        let r = reduce(&w, &env());
        prop_assert_eq!(instantiate(&r, &at(q)).unwrap(), instantiate(&w, &at(q)).unwrap());
    }

    #[test]
    fn cyclic_reduce_is_a_conjugate(w in param_word(), q in 1i64..=3) {
        let c = instantiate(&cyclic_reduce(&w, &env()), &at(q)).unwrap();
        let full = instantiate(&w, &at(q)).unwrap().cyclic_reduce();
        prop_assert!(equal_up_to_cyclic(&c.cyclic_reduce(), &full).is_match());
    }

    #[test]
    fn peel_keeps_the_word(w in param_word(), q in 1i64..=3, left in any::<bool>()) {
        let side = if left { Side::Left } else { Side::Right };
        for i in 0..w.items().len() {
            if let Ok(p) = peel_at(&w, i, side, &env()) {
                prop_assert_eq!(instantiate(&p, &at(q)).unwrap(), instantiate(&w, &at(q)).unwrap());
            }
        }
    }

    #[test]
    fn strict_signs_are_sound(e in affine(), q in 1i64..=6) {
        let v = e.eval(&at(q)).unwrap();
        match e.sign(&env()) {
            SignLattice::StrictPos => prop_assert!(v > 0),
            SignLattice::NonNeg => prop_assert!(v >= 0),
            SignLattice::Zero => prop_assert_eq!(v, 0),
            SignLattice::NonPos => prop_assert!(v <= 0),
            SignLattice::StrictNeg => prop_assert!(v < 0),
            SignLattice::Unknown => {}
        }
    }

    #[test]
    fn snf_is_unimodular_invariant(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 3),
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2, any::<bool>()), 0..8),
    ) {
        let m = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
        let mut u = IntMatrix::identity(3);
        let mut v = IntMatrix::identity(3);
        for (i, j, k, on_left) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(3);
            e.set(i, j, BigInt::from(k));
            if on_left { u = e.mul(&u) } else { v = v.mul(&e) }
        }
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&u.mul(&m).mul(&v));
        prop_assert!(a.divisibility_chain_holds());
        prop_assert_eq!(a.diagonal, b.diagonal);
    }

    #[test]
    fn same_knot_is_reflexive_and_symmetric(h in 1i64..30, q1 in 1i64..60, q2 in 1i64..60) {
        let p = 2 * h + 1;
        prop_assume!(p.gcd(&q1) == 1 && p.gcd(&q2) == 1);
        let f = Fraction::new(p, q1).unwrap();
        let g = Fraction::new(p, q2).unwrap();
        prop_assert!(same_knot(&f, &f).unwrap());
        prop_assert_eq!(same_knot(&f, &g).unwrap(), same_knot(&g, &f).unwrap());
    }

    #[test]
    fn alexander_is_symmetric(pairs in even_pairs()) {
        let e = EvenExpansion::new(pairs).unwrap();
        let c = alexander(&e).coeffs().to_vec();
        let mut rev = c.clone();
        rev.reverse();
        let flipped: Vec<BigInt> = rev.iter().map(|x| -x).collect();
        prop_assert!(c == rev || c == flipped);
        let at_one: BigInt = c.iter().sum();
        prop_assert!(at_one.abs().is_one());
    }

    #[test]
    fn mirror_keeps_cover_homology(pairs in even_pairs(), n in 2usize..=4) {
        let e = EvenExpansion::new(pairs.clone()).unwrap();
        let m = EvenExpansion::new(pairs.iter().map(|&(a, b)| (-a, -b)).collect()).unwrap();
        let cf = e.to_continued_fraction();
        prop_assert_eq!(mirror(&cf).terms().to_vec(), m.to_continued_fraction().terms().to_vec());
        let (f, g) = (cf_value(&cf).unwrap(), cf_value(&m.to_continued_fraction()).unwrap());
        prop_assert_eq!(f.p.abs(), g.p.abs());
        prop_assert_eq!(h1_cyclic_cover_order(&e, n).unwrap(), h1_cyclic_cover_order(&m, n).unwrap());
    }

    #[test]
    fn certificate_depth_is_linear(q in 1i64..=8, s in 1i64..=8, t in 1i64..=8, l in 1i64..=8) {
        let c = generate_l_cert(q, s, t, l).unwrap();
        prop_assert!(verify(&c).is_accept());
        prop_assert!(c.root.depth() as i64 <= 5 * (q + s + t + l) + 5, "depth {}", c.root.depth());
        let a = generate_a_cert(q, s, t).unwrap();
        prop_assert!(a.root.depth() as i64 <= 5 * (q + s + t) + 5, "depth {}", a.root.depth());
    }

    #[test]
    fn elimination_witnesses_instantiate(k in 2i64..=4, l in 1i64..=3) {
        let p = genus_one_presentation(5).unwrap();
        let rep = eliminate(&p, &p.env);
        let vals: BTreeMap<String, i64> = [("k".to_string(), k), ("l".to_string(), l)].into();
        for row in &rep.rows {
            let PatternVerdict::Eliminated { relator, witness, form } = &row.verdict else { continue };
            let signs: BTreeMap<&str, Sign> =
                p.generators.iter().map(String::as_str).zip(row.pattern.signs.iter().copied()).collect();
            let w = instantiate(form, &vals).unwrap();
            prop_assert!(!w.is_empty());
            let want = if *witness == SignLattice::StrictPos { Sign::Pos } else { Sign::Neg };
            for (g, e) in w.syllables() {
                let s = if *e > 0 { signs[g.as_str()] } else { signs[g.as_str()].flip() };
                prop_assert_eq!(s, want, "pattern {} letter {}^{}", row.index, g, e);
            }
            let r = instantiate(p.relator(relator).unwrap(), &vals).unwrap().cyclic_reduce();
            prop_assert!(equal_up_to_cyclic(&w.cyclic_reduce(), &r).is_match());
        }
    }
}

#[test]
fn snf_of_zero_matrix() {
    let z = smith_normal_form(&IntMatrix::zeros(2, 3));
    assert_eq!(z.rank, 0);
    assert!(z.diagonal.iter().all(Zero::is_zero));
    assert_eq!(Word::empty().cyclic_reduce(), Word::empty());
}
