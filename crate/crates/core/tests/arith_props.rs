use proptest::prelude::*;
use proptest::strategy::ValueTree;
use twistq::arith::{qbinom, Fe, TruncatedSeries, Var};

fn term() -> impl Strategy<Value = (i64, i64, i64)> {
    (-3i64..=3, -2i64..=2, 0i64..=2)
}

fn laurent() -> impl Strategy<Value = Fe> {
    prop::collection::vec(term(), 1..4).prop_map(|ts| {
        let a = Fe::named("a");
        let mut acc = Fe::zero();
        for (c, eq, ea) in ts {
            acc += &(&Fe::from_int(c) * &(&Fe::q_pow(eq) * &a.pow(ea)));
        }
        acc
    })
}

fn element() -> impl Strategy<Value = Fe> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { &n / &d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn addition_is_associative_and_commutative(x in element(), y in element(), z in element()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn multiplication_is_associative(x in element(), y in element(), z in element()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn distributive(x in element(), y in element(), z in element()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn inverses(x in element()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv()).is_one());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x - &x, Fe::zero());
    }

    #[test]
    fn canonical_text_round_trips(x in element()) {
        let back: Fe = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn self_difference_is_canonical_zero() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..100 {
        let x = element().new_tree(&mut runner).unwrap().current();
        let d = &x - &x;
        assert!(d.is_zero());
        assert_eq!(d.to_string(), "0");
    }
}

#[test]
fn omega_cubic_relations() {
    let w = Fe::omega();
    assert!(w.pow(3).is_one());
    assert!((&(&Fe::one() + &w) + &w.pow(2)).is_zero());
    assert_eq!(w.inv(), w.pow(2));
}

#[test]
fn q_binomials_have_nonnegative_integer_coefficients() {
    let q = Fe::q();
    for n in 0..=8 {
        for r in 0..=n {
            let b = qbinom(n, r, &q).unwrap();
            assert!(b.is_laurent(), "[{n} {r}] not a Laurent polynomial");
            for (_, c) in b.numer().terms() {
                assert!(c.is_integer() && *c.numer() > 0.into(), "[{n} {r}] = {b}");
            }
        }
    }
}

fn random_series(seed: u64, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Fe::zero()];
    let a = Fe::named("a");
    let mut state = seed;
    for _ in 1..=order {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let c = ((state >> 33) % 7) as i64 - 3;
        let e = ((state >> 40) % 3) as i64 - 1;
        coeffs.push(&Fe::from_int(c) * &(&Fe::q_pow(e) * &a.pow(((state >> 50) % 2) as i64)));
    }
    TruncatedSeries::new(Var::U, order, coeffs)
}

#[test]
fn exp_of_negation_is_inverse() {
    for seed in 1..6 {
        let s = random_series(seed, 8);
        let prod = s.exp().unwrap().mul(&s.neg().exp().unwrap());
        assert_eq!(prod, TruncatedSeries::one(Var::U, 8));
    }
}

/// `log(1 + x)` for `x` without constant term, as `sum (-1)^(n+1) x^n / n`.
fn log1p(x: &TruncatedSeries) -> TruncatedSeries {
    let order = x.order();
    let mut acc = TruncatedSeries::zero(x.var, order);
    let mut p = x.clone();
    for n in 1..=order as i64 {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&p.scale(&Fe::ratio(sign, n)));
        p = p.mul(x);
    }
    acc
}

#[test]
fn exp_inverts_log() {
    let c = Fe::named("c");
    let x = TruncatedSeries::new(Var::U, 6, vec![Fe::zero(), c.clone()]);
    let e = log1p(&x).exp().unwrap();
    assert_eq!(e, TruncatedSeries::new(Var::U, 6, vec![Fe::one(), c]));
}
