use hv_twist_core::algebra::bracket_generators;
use hv_twist_core::scalar::{binomial, int, is_canonical, rat, sign};
use hv_twist_core::{Algebra, AlgebraMode, Element, Generator, Monomial, Scalar, Tensor2};
use num_traits::Zero;
use proptest::prelude::*;

fn index() -> impl Strategy<Value = Scalar> {
    prop::sample::select(vec![
        int(-3),
        int(-2),
        int(-1),
        rat(-1, 2),
        int(0),
        rat(1, 2),
        int(1),
        int(2),
        int(3),
    ])
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

fn generator(mode: AlgebraMode) -> impl Strategy<Value = Generator> {
    let base = prop_oneof![
        index().prop_map(Generator::L),
        index().prop_map(Generator::I),
        Just(Generator::CL),
        Just(Generator::CI),
        Just(Generator::CLI),
    ];
    base.prop_filter("legal in mode", move |g| g.is_legal(mode))
}

/// Random element: up to three terms, each a straightened word of length ≤ 3.
fn element(mode: AlgebraMode) -> impl Strategy<Value = Element> {
    prop::collection::vec((prop::collection::vec(generator(mode), 0..=3), coeff()), 1..=3).prop_map(
        move |terms| {
            let alg = Algebra::new(mode);
            let mut x = Element::zero();
            for (word, c) in terms {
                x.add_scaled(&alg.normal_form(&word).unwrap(), &c);
            }
            x
        },
    )
}

fn mode() -> impl Strategy<Value = AlgebraMode> {
    prop_oneof![Just(AlgebraMode::Full), Just(AlgebraMode::Centerless)]
}

fn mode_and_elements(n: usize) -> impl Strategy<Value = (AlgebraMode, Vec<Element>)> {
    mode().prop_flat_map(move |m| (Just(m), prop::collection::vec(element(m), n)))
}

fn all_canonical(x: &Element) -> bool {
    x.iter().all(|(_, c)| is_canonical(c) && !c.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn multiplication_is_associative_and_unital((m, xs) in mode_and_elements(3)) {
        let alg = Algebra::new(m);
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(alg.mul(&alg.mul(x, y), z), alg.mul(x, &alg.mul(y, z)));
        prop_assert_eq!(&alg.mul(&Element::one(), x), x);
        prop_assert_eq!(&alg.mul(x, &Element::one()), x);
    }

    #[test]
    fn normal_form_is_idempotent((m, xs) in mode_and_elements(1)) {
        let alg = Algebra::new(m);
        let x = &xs[0];
        let mut again = Element::zero();
        for (mono, c) in x.iter() {
            again.add_scaled(&alg.normal_form(&mono.word()).unwrap(), c);
        }
        prop_assert_eq!(&again, x);
    }

    #[test]
    fn coproduct0_is_coassociative((m, xs) in mode_and_elements(1)) {
        let alg = Algebra::new(m);
        let d = alg.coproduct0(&xs[0]);
        let left = alg.apply_leg(|y| alg.coproduct0(y), &d, 0);
        let right = alg.apply_leg(|y| alg.coproduct0(y), &d, 1);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coproduct0_is_multiplicative((m, xs) in mode_and_elements(2)) {
        let alg = Algebra::new(m);
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(
            alg.coproduct0(&alg.mul(x, y)),
            alg.tmul(&alg.coproduct0(x), &alg.coproduct0(y))
        );
    }

    #[test]
    fn antipode0_is_an_involutive_anti_automorphism((m, xs) in mode_and_elements(2)) {
        let alg = Algebra::new(m);
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(
            alg.antipode0(&alg.mul(x, y)),
            alg.mul(&alg.antipode0(y), &alg.antipode0(x))
        );
        prop_assert_eq!(&alg.antipode0(&alg.antipode0(x)), x);
    }

    #[test]
    fn counit_is_multiplicative((m, xs) in mode_and_elements(2)) {
        let alg = Algebra::new(m);
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(alg.counit(&alg.mul(x, y)), alg.counit(x) * alg.counit(y));
    }

    #[test]
    fn antipode0_is_a_convolution_inverse((m, xs) in mode_and_elements(1)) {
        let alg = Algebra::new(m);
        let x = &xs[0];
        let d: Tensor2 = alg.coproduct0(x);
        let eps = Element::scalar(alg.counit(x));
        prop_assert_eq!(&alg.multiply_legs(&alg.map_leg(|y| alg.antipode0(y), &d, 0)), &eps);
        prop_assert_eq!(&alg.multiply_legs(&alg.map_leg(|y| alg.antipode0(y), &d, 1)), &eps);
    }

    #[test]
    fn ad_expansion_identity(
        beta in index(),
        gamma in index().prop_filter("nonzero", |g| !g.is_zero()),
        alpha in prop::sample::select(vec![int(1), int(2), rat(-1, 2)]),
        use_i in any::<bool>(),
        use_h in any::<bool>(),
        m in 0u32..=5,
    ) {
        let alg = Algebra::new(AlgebraMode::Centerless);
        let x = if use_i {
            Element::generator(Generator::I(gamma))
        } else {
            Element::generator(Generator::L(beta))
        };
        let y = if use_h {
            Element::generator(Generator::l(0)).scale(&(int(1) / &alpha))
        } else {
            Element::generator(Generator::I(alpha))
        };
        let mut rhs = Element::zero();
        for k in 0..=m {
            let term = alg.mul(&alg.pow(&y, m - k), &alg.ad_power(&y, k, &x));
            rhs.add_scaled(&term, &(sign(k) * binomial(m, k)));
        }
        prop_assert_eq!(alg.mul(&x, &alg.pow(&y, m)), rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(m in mode(), g in generator(AlgebraMode::Full), h in generator(AlgebraMode::Full)) {
        prop_assume!(g.is_legal(m) && h.is_legal(m));
        let alg = Algebra::new(m);
        prop_assert_eq!(alg.bracket(&g, &h).unwrap(), -alg.bracket(&h, &g).unwrap());
    }

    #[test]
    fn centerless_bracket_drops_center(g in generator(AlgebraMode::Centerless), h in generator(AlgebraMode::Centerless)) {
        let full = bracket_generators(&g, &h, AlgebraMode::Full).unwrap();
        let quotient: Vec<_> = full
            .into_iter()
            .filter(|(k, _)| k.is_legal(AlgebraMode::Centerless))
            .collect();
        prop_assert_eq!(bracket_generators(&g, &h, AlgebraMode::Centerless).unwrap(), quotient);
    }

    #[test]
    fn jacobiator_vanishes((m, gs) in mode().prop_flat_map(|m| (Just(m), prop::collection::vec(generator(m), 3)))) {
        let alg = Algebra::new(m);
        let e = |g: &Generator| Element::generator(g.clone());
        let j = alg.jacobiator(&e(&gs[0]), &e(&gs[1]), &e(&gs[2])).unwrap();
        prop_assert!(j.is_zero(), "{}", j);
    }

    #[test]
    fn arithmetic_stays_canonical((m, xs) in mode_and_elements(2)) {
        let alg = Algebra::new(m);
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert!(all_canonical(&alg.mul(x, y)));
        prop_assert!(all_canonical(&(x.clone() - y.clone())));
        prop_assert!(all_canonical(&alg.antipode0(x)));
        prop_assert!(alg.coproduct0(x).iter().all(|(_, c)| is_canonical(c)));
    }

    #[test]
    fn monomial_keys_are_pbw_sorted((m, xs) in mode_and_elements(2)) {
        let alg = Algebra::new(m);
        for (mono, _) in alg.mul(&xs[0], &xs[1]).iter() {
            prop_assert!(Monomial::from_sorted(mono.factors().to_vec()).is_some());
        }
    }
}
