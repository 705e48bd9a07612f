use bqt_field::{parse, Character, FieldError, Monomial, Poly, RatFunc, NVARS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rf(s: &str) -> RatFunc {
    parse(s).unwrap()
}

/// Evaluates a polynomial at a rational point (v, t, a1, ...).
fn eval_poly(p: &Poly, pt: &[BigRational; NVARS]) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        let mut term = BigRational::from_integer(c.clone());
        for i in 0..NVARS {
            for _ in 0..e[i] {
                term *= &pt[i];
            }
        }
        acc += term;
    }
    acc
}

fn eval(x: &RatFunc, pt: &[BigRational; NVARS]) -> Option<BigRational> {
    let (n, d) = x.fraction();
    let dv = eval_poly(&d, pt);
    if dv.is_zero() {
        return None;
    }
    Some(eval_poly(&n, pt) / dv)
}

fn point(seed: u64) -> [BigRational; NVARS] {
    let mut s = seed;
    std::array::from_fn(|_| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let n = ((s >> 33) % 23) as i64 + 2;
        let d = ((s >> 20) % 7) as i64 + 1;
        BigRational::new(BigInt::from(n), BigInt::from(d))
    })
}

/// Random small rational functions in v, t, a1 built from binomials.
fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    let factor = (-3i32..=3, -2i32..=2, -1i32..=1, -2i64..=2, -2i32..=2).prop_map(|(qe, te, ae, c, ve)| {
        let m = Monomial::qt(qe, te) * Monomial::a(1, ae) * Monomial::var(0, ve);
        RatFunc::from_int(c) - RatFunc::monomial(m)
    });
    (prop::collection::vec(factor.clone(), 0..3), prop::collection::vec(factor, 0..3), -3i64..=3)
        .prop_map(|(ns, ds, c)| {
            let mut x = RatFunc::from_int(c);
            for n in ns {
                x = x * n;
            }
            for d in ds {
                if !d.is_zero() {
                    x = x / d;
                }
            }
            x
        })
}

#[test]
fn gcd_cancellation() {
    let x = rf("(q^2 - q*t)/q") / RatFunc::one();
    assert_eq!(x, rf("q - t"));
}

#[test]
fn additive_inverse() {
    let x = rf("(1-t)/(1-q)");
    assert!((&x + &(-&x)).is_zero());
    assert_eq!(x.clone() - x, RatFunc::zero());
}

#[test]
fn multiplicative_inverse() {
    assert!((rf("(1-q)/(1-t)") * rf("(1-t)/(1-q)")).is_one());
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(RatFunc::one().checked_div(&RatFunc::zero()), Err(FieldError::DivisionByZero));
}

#[test]
fn theta_examples() {
    assert_eq!(rf("q + t").theta(), rf("(q+t)/(q*t)"));
    assert_eq!(rf("q*t").theta(), rf("1/(q*t)"));
    let f = rf("(a1 - t*a2)/(a2 - q*a1)");
    assert_eq!(f.theta().theta(), f);
}

#[test]
fn lambda_examples() {
    let c = Character::monomial(Monomial::q(1));
    assert_eq!(c.lambda().unwrap(), rf("1 - q"));
    let c = Character::from_terms([(Monomial::q(1), 1), (Monomial::t(1), -1)]);
    assert_eq!(c.lambda().unwrap(), rf("(1-q)/(1-t)"));
    assert!(Character::new().lambda().unwrap().is_one());
    let bad = Character::from_terms([(Monomial::ONE, 2)]);
    assert_eq!(bad.lambda(), Err(FieldError::NonzeroConstantTerm(2)));
}

#[test]
fn half_powers_print_and_parse() {
    let x = RatFunc::v().pow(3) + RatFunc::t();
    assert_eq!(x.to_string(), "q^(3/2) + t");
    assert_eq!(rf("q^(3/2) + t"), x);
    assert_eq!(rf("q^(1/2)") * rf("q^(1/2)"), rf("q"));
    assert_eq!(rf("q^(-1/2)").to_string(), "1/q^(1/2)");
}

#[test]
fn canonical_strings() {
    assert_eq!(rf("(1-q)/(1-t)").to_string(), "(q - 1)/(t - 1)");
    assert_eq!(rf("-q*(1-t)/(q-t)").to_string(), "(q*t - q)/(q - t)");
    assert_eq!(rf("1/(q*t)").to_string(), "1/(q*t)");
    assert_eq!(rf("2 a1 t^2").to_string(), "2*t^2*a1");
}

#[test]
fn parse_errors() {
    assert!(parse("q^(1/3)").is_err());
    assert!(parse("t^(1/2)").is_err());
    assert!(parse("(q").is_err());
    assert!(parse("a0").is_err());
    assert!(parse("1/(q-q)").is_err());
}

#[test]
fn gcd_routes_agree() {
    let a = rf("(q - t)*(1 - q*t*a1)*(a1 - q)").fraction().0;
    let b = rf("(q - t)*(a1 - q)*(1 + t^3)").fraction().0;
    let g1 = bqt_field::gcd::gcd(&a, &b);
    let g2 = bqt_field::gcd::gcd_prs(&a, &b);
    assert_eq!(g1, g2);
    assert_eq!(g1, rf("(q - t)*(a1 - q)").fraction().0.normalize_sign());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in arb_ratfunc(), y in arb_ratfunc(), z in arb_ratfunc()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x / &x).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in arb_ratfunc(), y in arb_ratfunc(), seed in 0u64..1000) {
        let pt = point(seed);
        if let (Some(ex), Some(ey)) = (eval(&x, &pt), eval(&y, &pt)) {
            if let Some(s) = eval(&(&x + &y), &pt) { prop_assert_eq!(s, &ex + &ey); }
            if let Some(p) = eval(&(&x * &y), &pt) { prop_assert_eq!(p, &ex * &ey); }
            if !y.is_zero() && !ey.is_zero() {
                if let Some(d) = eval(&(&x / &y), &pt) { prop_assert_eq!(d, ex / ey); }
            }
        }
    }

    #[test]
    fn normal_form_is_route_independent(x in arb_ratfunc(), y in arb_ratfunc()) {
        // (x + y)^2 two ways.
        let a = (&x + &y) * (&x + &y);
        let b = &(&(&x * &x) + &(RatFunc::from_int(2) * &x * &y)) + &(&y * &y);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn theta_is_an_involutive_automorphism(x in arb_ratfunc(), y in arb_ratfunc()) {
        prop_assert_eq!((&x * &y).theta(), x.theta() * y.theta());
        prop_assert_eq!((&x + &y).theta(), x.theta() + y.theta());
        prop_assert_eq!(x.theta().theta(), x);
    }

    #[test]
    fn theta_matches_inverse_evaluation(x in arb_ratfunc(), seed in 0u64..1000) {
        let pt = point(seed);
        let inv: [BigRational; NVARS] = std::array::from_fn(|i| BigRational::one() / &pt[i]);
        if let (Some(a), Some(b)) = (eval(&x.theta(), &pt), eval(&x, &inv)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn print_parse_round_trip(x in arb_ratfunc()) {
        prop_assert_eq!(parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn lambda_is_multiplicative(
        e1 in prop::collection::vec((-2i32..=2, -2i32..=2, -2i64..=2), 0..4),
        e2 in prop::collection::vec((-2i32..=2, -2i32..=2, -2i64..=2), 0..4),
    ) {
        let mk = |es: &Vec<(i32, i32, i64)>| Character::from_terms(
            es.iter().filter(|(a, b, _)| (*a, *b) != (0, 0)).map(|&(a, b, n)| (Monomial::qt(a, b), n)));
        let (c1, c2) = (mk(&e1), mk(&e2));
        prop_assert_eq!(c1.add(&c2).lambda().unwrap(), c1.lambda().unwrap() * c2.lambda().unwrap());
    }
}
