use proptest::prelude::*;

use thompson_core::characters::{classify_sigma_f, Character};
use thompson_core::presentation::{
    eval_word, eval_word_pl, normal_form, shift, shift_pl, Letter, Word,
};
use thompson_core::products::{embed_product, gr_membership, ProductCharacter, Subdivision};
use thompson_core::{Dyadic, End, Interval, PlMap, Subgroup, TreePair};

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0u32..2, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word(v.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect()))
}

fn wide_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0u32..6, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word(v.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect()))
}

fn character() -> impl Strategy<Value = Character> {
    ((-8i64..=8), (1i64..=5), (-8i64..=8), (1i64..=5))
        .prop_filter("nonzero", |(a, _, b, _)| *a != 0 || *b != 0)
        .prop_map(|(a, da, b, db)| {
            Character::new(
                num_rational::BigRational::new(a.into(), da.into()),
                num_rational::BigRational::new(b.into(), db.into()),
            )
        })
}

fn pl(w: &Word) -> PlMap {
    eval_word_pl(w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pl_group_axioms(a in word(10), b in word(10), c in word(10)) {
        let (f, g, h) = (pl(&a), pl(&b), pl(&c));
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(f.compose(&PlMap::identity()), f.clone());
        prop_assert_eq!(PlMap::identity().compose(&f), f.clone());
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(&f).is_identity());
    }

    #[test]
    fn composition_stays_valid(a in wide_word(12), b in wide_word(12)) {
        let f = pl(&a).compose(&pl(&b));
        // re-validating the breakpoints checks dyadic points and power-of-2 slopes
        prop_assert_eq!(PlMap::new(f.breakpoints().to_vec()).unwrap(), f.clone());
        let inv = f.inverse();
        prop_assert_eq!(PlMap::new(inv.breakpoints().to_vec()).unwrap(), inv);
    }

    #[test]
    fn endpoint_slopes_are_homomorphisms(a in word(12), b in word(12)) {
        let (f, g) = (pl(&a), pl(&b));
        for end in [End::Zero, End::One] {
            prop_assert_eq!(
                f.compose(&g).endpoint_log_slope(end),
                f.endpoint_log_slope(end) + g.endpoint_log_slope(end)
            );
        }
    }

    #[test]
    fn nu_is_an_involutive_automorphism(a in word(12), b in word(12)) {
        let (f, g) = (pl(&a), pl(&b));
        prop_assert_eq!(f.nu().nu(), f.clone());
        prop_assert_eq!(f.compose(&g).nu(), f.nu().compose(&g.nu()));
        prop_assert_eq!(f.nu().endpoint_log_slope(End::Zero), f.endpoint_log_slope(End::One));
        prop_assert_eq!(f.nu().endpoint_log_slope(End::One), f.endpoint_log_slope(End::Zero));
    }

    #[test]
    fn rescale_is_an_injective_homomorphism(a in word(10), b in word(10), k in 1u64..4) {
        let (f, g) = (pl(&a), pl(&b));
        let left = Interval::new(Dyadic::zero(), Dyadic::new(1, k)).unwrap();
        let right = Interval::new(Dyadic::new(1, 1), Dyadic::one()).unwrap();
        let r = |m: &PlMap, j: &Interval| m.rescale_into(j).unwrap();
        prop_assert_eq!(r(&f.compose(&g), &left), r(&f, &left).compose(&r(&g, &left)));
        prop_assert_eq!(r(&f, &left) == r(&g, &left), f == g);
        // disjoint targets commute
        prop_assert_eq!(
            r(&f, &left).compose(&r(&g, &right)),
            r(&g, &right).compose(&r(&f, &left))
        );
    }

    #[test]
    fn support_of_product_within_hull(a in word(10), b in word(10)) {
        let (f, g) = (pl(&a), pl(&b));
        if let Some(s) = f.compose(&g).support() {
            let hull = match (f.support(), g.support()) {
                (Some(x), Some(y)) => x.hull(&y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => panic!("product of identities moved a point"),
            };
            prop_assert!(hull.contains(&s));
        }
    }

    #[test]
    fn tree_pairs_match_pl_maps(w in wide_word(16)) {
        let t = eval_word(&w);
        let f = eval_word_pl(&w);
        prop_assert!(t.is_reduced());
        prop_assert_eq!(t.to_pl(), f.clone());
        prop_assert_eq!(TreePair::from_pl(&f), t);
    }

    #[test]
    fn reduction_order_does_not_matter(w in word(12), splits in prop::collection::vec(0usize..64, 0..6), picks in prop::collection::vec(0usize..64, 0..64)) {
        let reduced = eval_word(&w);
        let mut p = reduced.clone();
        for s in splits {
            p = p.split_leaf(s % p.domain().leaf_count());
        }
        // cancel one caret at a time in an arbitrary order
        let mut q = p.clone();
        let mut picks = picks.into_iter();
        loop {
            let options = q.cancellable_carets();
            if options.is_empty() {
                break;
            }
            let i = options[picks.next().unwrap_or(0) % options.len()];
            q = q.cancel_caret(i).unwrap();
        }
        prop_assert_eq!(&q, &reduced);
        prop_assert_eq!(p.reduce(), reduced);
    }

    #[test]
    fn normal_forms_round_trip(w in wide_word(14)) {
        let g = eval_word(&w);
        let nf = normal_form(&g);
        prop_assert!(nf.is_reduced(), "{} is not reduced", nf);
        prop_assert_eq!(eval_word(&nf.to_word()), g);
    }

    #[test]
    fn normal_form_ignores_spelling(w in word(10), at in 0usize..11, i in 0u32..3, n in 1u32..4) {
        // insert a relation instance x_i^-1 x_n x_i x_{n+1}^-1 and a free cancellation
        prop_assume!(i < n);
        let mut letters = w.0.clone();
        let at = at.min(letters.len());
        let relator = [Letter::inv(i), Letter::gen(n), Letter::gen(i), Letter::inv(n + 1), Letter::gen(1), Letter::inv(1)];
        letters.splice(at..at, relator);
        let other = Word(letters);
        prop_assert_eq!(
            eval_word(&w).canonical_key().unwrap(),
            eval_word(&other).canonical_key().unwrap()
        );
        prop_assert_eq!(normal_form(&eval_word(&w)), normal_form(&eval_word(&other)));
    }

    #[test]
    fn shift_properties(a in word(10), b in word(10)) {
        let (g, h) = (eval_word(&a), eval_word(&b));
        prop_assert_eq!(shift(&g.multiply(&h)), shift(&g).multiply(&shift(&h)));
        prop_assert_eq!(shift(&g).to_pl(), shift_pl(&g.to_pl()));
        prop_assert!(shift(&g).to_pl().is_member(Subgroup::Shifted(1)));
        let x0 = eval_word(&"x0".parse().unwrap());
        prop_assert_eq!(x0.inverse().multiply(&shift(&g)).multiply(&x0), shift(&shift(&g)));
    }

    #[test]
    fn characters_are_homomorphisms(chi in character(), a in word(12), b in word(12)) {
        let (f, g) = (pl(&a), pl(&b));
        prop_assert_eq!(chi.eval(&f.compose(&g)), chi.eval(&f) + chi.eval(&g));
        prop_assert_eq!(chi.nu_action().eval(&f), chi.eval(&f.nu()));
        let comm = f.compose(&g).compose(&f.inverse()).compose(&g.inverse());
        prop_assert!(comm.is_member(Subgroup::Commutator));
        prop_assert_eq!(chi.eval(&comm), num_rational::BigRational::from_integer(0.into()));
    }

    #[test]
    fn classifier_symmetries(chi in character(), num in 1i64..20, den in 1i64..20) {
        let v = classify_sigma_f(&chi).unwrap();
        let lambda = num_rational::BigRational::new(num.into(), den.into());
        prop_assert_eq!(classify_sigma_f(&chi.scale(&lambda)).unwrap(), v);
        prop_assert_eq!(classify_sigma_f(&chi.nu_action()).unwrap(), v);
        if v == thompson_core::SigmaVerdict::Sigma1NotSigma2 {
            prop_assert_eq!(classify_sigma_f(&chi.neg()).unwrap(), thompson_core::SigmaVerdict::SigmaInfinity);
        }
    }

    #[test]
    fn embedding_is_a_homomorphism(a in word(8), b in word(8), c in word(8), d in word(8)) {
        let sub = Subdivision::uniform(2).unwrap();
        let gs = [pl(&a), pl(&b)];
        let hs = [pl(&c), pl(&d)];
        let prod = [gs[0].compose(&hs[0]), gs[1].compose(&hs[1])];
        let e = |v: &[PlMap]| embed_product(v, &sub).unwrap();
        prop_assert_eq!(e(&prod), e(&gs).compose(&e(&hs)));
        prop_assert_eq!(e(&gs) == e(&hs), gs == hs);
        let bary = ProductCharacter::barycenter(2);
        let w = gr_membership(&e(&gs), &sub).unwrap();
        prop_assert_eq!(num_rational::BigRational::from_integer(w.log2_product.into()), bary.eval(&gs).unwrap());
    }

    #[test]
    fn key_round_trip(w in wide_word(12)) {
        let g = eval_word(&w);
        let key = g.canonical_key().unwrap();
        prop_assert_eq!(TreePair::from_key(&key).unwrap(), g);
    }
}
