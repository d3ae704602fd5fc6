use pipepuzzle::demazure::grothendieck;
use pipepuzzle::perm::Permutation;
use pipepuzzle::ring::{parse_elem, Family, Int, LocElem, MPoly, Monomial, Var};
use proptest::prelude::*;

fn var_strategy() -> impl Strategy<Value = Var> {
    prop_oneof![
        Just(Var::BETA),
        (1usize..=4).prop_map(Var::x),
        (1usize..=4).prop_map(Var::t),
        (1usize..=4).prop_map(Var::y),
    ]
}

fn poly_strategy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(var_strategy(), 0..4), -5i64..=5), 0..5).prop_map(|terms| {
        MPoly::from_terms(
            terms
                .into_iter()
                .map(|(vars, c)| {
                    let mut m = Monomial::ONE;
                    for v in vars {
                        m.set_exp(v, m.exp(v) + 1);
                    }
                    (m, Int::from(c))
                })
                .collect(),
        )
    })
}

fn elem_strategy() -> impl Strategy<Value = LocElem> {
    (poly_strategy(), 0u32..2, 0u32..2).prop_map(|(num, a, b)| {
        LocElem::from_parts(num, &[(Var::y(1), a), (Var::t(2), b)])
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|w| Permutation::from_word(w).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn text_round_trip(a in elem_strategy()) {
        let back = parse_elem(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn json_round_trip(a in elem_strategy()) {
        let s = a.to_json();
        let back = LocElem::from_json(&s).unwrap();
        prop_assert_eq!(back.to_json(), s);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in elem_strategy(), i in 1usize..4) {
        let d = &MPoly::var(Var::x(i)) - &MPoly::var(Var::t(i));
        let prod = &a * &LocElem::from_poly(d.clone());
        prop_assert_eq!(prod.exact_div(&d).unwrap(), a);
    }

    #[test]
    fn permutation_basics(w in perm_strategy(6), v in perm_strategy(6)) {
        prop_assert!(w.compose(&w.inverse()).unwrap().is_identity());
        prop_assert_eq!(w.reduced_word().len(), w.length());
        prop_assert_eq!(w.inverse().length(), w.length());
        let wv = w.compose(&v).unwrap();
        prop_assert!(wv.length() <= w.length() + v.length());
        prop_assert!(Permutation::identity(6).bruhat_le(&w));
        prop_assert!(w.bruhat_le(&Permutation::longest(6)));
        let back: Permutation = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w.clone());
        prop_assert_eq!(w.embed(8).trimmed(), w.trimmed());
    }

    #[test]
    fn grothendieck_is_homogeneous(w in perm_strategy(5)) {
        let g = grothendieck(&w, Family::X, Family::T).unwrap();
        prop_assert_eq!(g.beta_graded_degree(), Some(w.length() as i64));
        prop_assert_eq!(g.beta_zero().beta_graded_degree(), Some(w.length() as i64));
    }
}
