use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use csalg_core::builtins::{make_n2, make_n4};
use csalg_core::coefficients::{CycloField, CycloScalar, Exponent, LaurentElt};
use csalg_core::conformal::axioms::{random_element, random_laurent};
use csalg_core::conformal::{from_hat_basis, lambda_bracket, to_hat_basis, AlgebraDef, Parity};
use csalg_core::loops::{alg_bracket_elts, eigenspaces, loop_membership, AlgElt, LoopAlgebra};
use csalg_core::morphisms::{compose, extend_apply, n2_omega, n2_theta, n4_auto, GenMorphism, Sl2OverS};

fn f() -> &'static CycloField {
    CycloField::get(24)
}

fn scalar() -> impl Strategy<Value = CycloScalar> {
    prop::collection::vec((-6i64..=6, 1i64..=4, 0i64..24), 1..4).prop_map(|terms| {
        let mut c = f().zero();
        for (n, d, k) in terms {
            c += &(&f().frac(n, d) * &f().zeta_pow(k));
        }
        c
    })
}

fn laurent() -> impl Strategy<Value = LaurentElt> {
    prop::collection::vec((-6i64..=6, -8i64..=8), 1..4).prop_map(|terms| {
        let mut s = LaurentElt::zero(f());
        for (c, q) in terms {
            s.add_term(Exponent::new(q, 4), f().int(c));
        }
        s
    })
}

fn omega_loop() -> LoopAlgebra {
    let a = make_n2();
    let w = n2_omega(&a).unwrap();
    eigenspaces(&a, &w, 2).unwrap()
}

fn n4_order_four_loop() -> LoopAlgebra {
    let a = make_n4();
    let i = f().root_of_unity(4).unwrap();
    let x = [[i.clone(), f().zero()], [f().zero(), -&i]];
    let s = n4_auto(&a, &Sl2OverS::identity(f()), &x).unwrap();
    eigenspaces(&a, &s, 4).unwrap()
}

/// A random mode `a_mu` of the eigenbasis with `|mu| <= 3`.
fn random_mode(l: &LoopAlgebra, rng: &mut impl rand::Rng) -> AlgElt {
    let i = rng.gen_range(0..l.basis().len());
    let m = l.order() as i64;
    let r = l.basis()[i].residue as i64;
    let mu = Exponent::new(r + m * rng.gen_range(-3..=3), m);
    AlgElt::mode(l.field(), i, mu)
}

fn mode_parity(l: &LoopAlgebra, x: &AlgElt) -> Parity {
    let (&(i, _), _) = x.terms().iter().next().expect("nonzero mode");
    l.basis()[i].parity
}

fn koszul(a: Parity, b: Parity) -> i64 {
    if a == Parity::Odd && b == Parity::Odd {
        -1
    } else {
        1
    }
}

fn algebras() -> [AlgebraDef; 2] {
    [make_n2(), make_n4()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn derivation_is_leibniz(a in laurent(), b in laurent()) {
        let lhs = (&a * &b).delta_t();
        let rhs = &(&a.delta_t() * &b) + &(&a * &b.delta_t());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_commutes_with_derivation(a in laurent(), g in -7i64..=7) {
        let lhs = a.delta_t().galois_act(g, 4).unwrap();
        let rhs = a.galois_act(g, 4).unwrap().delta_t();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hat_basis_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for a in algebras() {
            let x = random_element(&a, &mut rng);
            prop_assert_eq!(from_hat_basis(a.field(), &to_hat_basis(&x)), x);
        }
    }

    #[test]
    fn sesquilinearity_and_right_linearity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = make_n2();
        let x = random_element(&a, &mut rng);
        let y = random_element(&a, &mut rng);
        let r = random_laurent(&a, &mut rng);
        let xy = lambda_bracket(&a, &x, &y).unwrap();
        let dx_y = lambda_bracket(&a, &x.apply_partial(), &y).unwrap();
        prop_assert_eq!(dx_y, xy.times_lambda_divided(1).scale(&f().int(-1)));
        let x_ry = lambda_bracket(&a, &x, &y.mul_laurent(&r)).unwrap();
        prop_assert_eq!(x_ry, xy.map(|c| c.mul_laurent(&r)));
    }

    #[test]
    fn extension_is_functorial(seed in any::<u64>(), p in -3i64..=3, c in 1i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = make_n2();
        let s = LaurentElt::monomial(f().int(c), Exponent::new(p, 2));
        let th = n2_theta(&a, &s).unwrap();
        let w = n2_omega(&a).unwrap();
        let both = compose(&th, &w).unwrap();
        let x = random_element(&a, &mut rng);
        let lhs = extend_apply(&both, &x).unwrap();
        let rhs = extend_apply(&th, &extend_apply(&w, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn loop_is_closed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        for l in [omega_loop(), n4_order_four_loop()] {
            let m = l.order() as i64;
            let pick = |rng: &mut ChaCha8Rng| {
                let i = rng.gen_range(0..l.basis().len());
                let r = l.basis()[i].residue as i64;
                let q = Exponent::new(r + m * rng.gen_range(-2..=2), m);
                l.element(i).shift(q).partial_hat_divided(rng.gen_range(0..=1))
            };
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            prop_assert!(loop_membership(&l, &x));
            let p = lambda_bracket(l.base(), &x, &y).unwrap();
            for c in p.coeffs().values() {
                prop_assert!(loop_membership(&l, c));
            }
        }
    }

    #[test]
    fn alg_is_skew_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for l in [omega_loop(), n4_order_four_loop()] {
            let x = random_mode(&l, &mut rng);
            let y = random_mode(&l, &mut rng);
            let xy = alg_bracket_elts(&l, &x, &y).unwrap();
            let yx = alg_bracket_elts(&l, &y, &x).unwrap();
            let sign = -koszul(mode_parity(&l, &x), mode_parity(&l, &y));
            prop_assert_eq!(xy, yx.scale(&f().int(sign)));
        }
    }

    #[test]
    fn alg_satisfies_jacobi(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for l in [omega_loop(), n4_order_four_loop()] {
            let x = random_mode(&l, &mut rng);
            let y = random_mode(&l, &mut rng);
            let z = random_mode(&l, &mut rng);
            let br = |a: &AlgElt, b: &AlgElt| alg_bracket_elts(&l, a, b).unwrap();
            let lhs = br(&x, &br(&y, &z));
            let mut rhs = br(&br(&x, &y), &z);
            let sign = koszul(mode_parity(&l, &x), mode_parity(&l, &y));
            rhs.add_scaled(&br(&y, &br(&x, &z)), &f().int(sign));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn witt_relation_on_the_untwisted_loop() {
    let a = make_n2();
    let l = eigenspaces(&a, &GenMorphism::identity(&a, 1), 1).unwrap();
    for mu in -5..=5 {
        for nu in -5..=5 {
            let x = l.generator_mode(0, Exponent::int(mu)).unwrap();
            let y = l.generator_mode(0, Exponent::int(nu)).unwrap();
            let got = alg_bracket_elts(&l, &x, &y).unwrap();
            let want = AlgElt::mode(f(), 0, Exponent::int(mu + nu - 1)).scale(&f().int(mu - nu));
            assert_eq!(got, want, "L[{mu}], L[{nu}]");
        }
    }
}
