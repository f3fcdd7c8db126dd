//! Generators shared by the property suites and the acceptance run.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::strategy::{BoxedStrategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use numerositas::euclid_field::{Exponent, Puiseux, Value};
use numerositas::measure::PlurInterval;
use numerositas::ordinal::Ordinal;
use numerositas::setlang::{Interval, OrdExpr, SetExpr};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Deterministic runner for drawing samples outside `proptest!`.
pub fn seeded_runner(seed: u8) -> TestRunner {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    TestRunner::new_with_rng(Config::default(), rng)
}

pub fn sample<S: Strategy>(strategy: &S, runner: &mut TestRunner) -> S::Value {
    strategy.new_tree(runner).expect("strategy draws").current()
}

pub fn rational(max: i64, dens: &'static [i64]) -> impl Strategy<Value = BigRational> + Clone {
    (-max..=max, prop::sample::select(dens)).prop_map(|(n, d)| q(n, d))
}

// ---------------------------------------------------------------------------
// values

fn puiseux(max_beta: u32) -> impl Strategy<Value = Puiseux> {
    prop::collection::vec(
        (
            0i64..=6,
            prop::sample::select(&[1i64, 2, 3][..]),
            0..=max_beta,
            rational(20, &[1, 2, 3, 5]),
        ),
        0..4,
    )
    .prop_map(|terms| {
        Puiseux::from_terms(
            terms
                .into_iter()
                .map(|(p, d, b, c)| (Exponent::new(q(p, d), b), c)),
        )
    })
}

/// Polynomials in `a` with rational exponents of denominator 1, 2 or 3.
pub fn pure_alpha_value() -> impl Strategy<Value = Value> {
    puiseux(0).prop_map(Value::from)
}

/// Polynomials in `a` and `b`.
pub fn puiseux_value() -> impl Strategy<Value = Value> {
    puiseux(2).prop_map(Value::from)
}

/// Polynomials plus at most one exponential term with base 2 or 3.
pub fn exp_value() -> impl Strategy<Value = Value> {
    (
        puiseux_value(),
        prop::option::of((rational(5, &[1, 2]), prop::sample::select(&[2i64, 3][..]), 1i64..=3)),
    )
        .prop_map(|(v, e)| match e {
            None => v,
            Some((c, base, k)) => {
                let exponent = Puiseux::alpha().scale(&q(k, 1));
                v + Value::exp_term(c, &Puiseux::from(base), &exponent).expect("valid exp term")
            }
        })
}

// ---------------------------------------------------------------------------
// ordinals

fn coeff() -> impl Strategy<Value = BigUint> {
    (1u32..5).prop_map(BigUint::from)
}

/// Hereditary normal forms of nesting depth at most three.
pub fn ordinal() -> BoxedStrategy<Ordinal> {
    (0u32..4)
        .prop_map(Ordinal::nat)
        .prop_recursive(3, 24, 4, |inner| {
            prop::collection::vec((inner, coeff()), 0..4).prop_map(Ordinal::from_terms)
        })
        .boxed()
}

/// Ordinals below `w^w`.
pub fn ordinal_below_omega_omega() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((0u32..6, coeff()), 0..4)
        .prop_map(|ts| Ordinal::from_terms(ts.into_iter().map(|(e, c)| (Ordinal::nat(e), c))))
}

/// Ordinals below `theta(j+1) = w^(w^(j+1))`.
pub fn ordinal_below_theta_next(j: u32) -> impl Strategy<Value = Ordinal> {
    let exponent = prop::collection::vec((0..=j, 0u32..4), 0..3).prop_map(|ts| {
        Ordinal::from_terms(
            ts.into_iter()
                .map(|(i, c)| (Ordinal::nat(i), BigUint::from(c))),
        )
    });
    prop::collection::vec((exponent, coeff()), 0..5).prop_map(Ordinal::from_terms)
}

pub fn ord_expr() -> BoxedStrategy<OrdExpr> {
    prop_oneof![
        Just(OrdExpr::Omega),
        (0u32..20).prop_map(|k| OrdExpr::Nat(k.into())),
        (0u32..3).prop_map(OrdExpr::Theta),
    ]
    .prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), inner, 0..6).prop_map(|(a, b, op)| {
            let (a, b) = (Box::new(a), Box::new(b));
            match op {
                0 => OrdExpr::OrdAdd(a, b),
                1 => OrdExpr::OrdMul(a, b),
                2 => OrdExpr::OrdPow(a, b),
                3 => OrdExpr::NatAdd(a, b),
                4 => OrdExpr::NatMul(a, b),
                _ => OrdExpr::OrdAdd(b, a),
            }
        })
    })
    .boxed()
}

// ---------------------------------------------------------------------------
// intervals

/// A well-formed interval with endpoints in quarters, magnitude at most `max`.
pub fn interval(max: i64) -> impl Strategy<Value = Interval> {
    (-4 * max..=4 * max, 0i64..=16, any::<bool>(), any::<bool>()).prop_map(move |(lo, len, lc, rc)| {
        let hi = (lo + len).min(4 * max);
        if hi == lo {
            Interval::point(q(lo, 4))
        } else {
            Interval::new(q(lo, 4), q(hi, 4), lc, rc)
        }
    })
}

pub fn plurinterval() -> impl Strategy<Value = PlurInterval> {
    prop::collection::vec(interval(10), 0..5).prop_map(PlurInterval::new)
}

/// Splits `p` at the given cut points into consecutive pieces.
pub fn partition(p: &PlurInterval, cuts: &[BigRational]) -> Vec<PlurInterval> {
    let mut cuts = cuts.to_vec();
    cuts.sort();
    cuts.dedup();
    let mut pieces = Vec::new();
    let mut rest = p.clone();
    for c in cuts {
        let below = PlurInterval::interval(Interval::new(q(-1000, 1), c, true, false));
        pieces.push(rest.intersect(&below));
        rest = rest.difference(&below);
    }
    pieces.push(rest);
    pieces
}

// ---------------------------------------------------------------------------
// sets

/// Steps dividing `n_3 = 6^6`, so that divisibility thresholds stay at or
/// below level 3.
const STEPS: &[i64] = &[1, 2, 3, 4, 6, 8, 9, 12, 18, 27];

/// Rationals on the level-2 grid: quarters of magnitude at most 4.
fn grid2_rational() -> impl Strategy<Value = BigRational> + Clone {
    (-16i64..=16).prop_map(|k| q(k, 4))
}

fn small_finite() -> impl Strategy<Value = SetExpr> {
    prop::collection::vec(grid2_rational(), 0..5).prop_map(SetExpr::finite)
}

fn qint_small() -> impl Strategy<Value = SetExpr> {
    (-16i64..=12, 1i64..=16, any::<bool>(), any::<bool>()).prop_map(|(lo, len, lc, rc)| {
        let hi = (lo + len).min(16);
        SetExpr::QInterval(Interval::new(q(lo, 4), q(hi, 4), lc, rc))
    })
}

/// Integer-world base sets; every threshold is at most 3.
pub fn integer_base_set() -> BoxedStrategy<SetExpr> {
    prop_oneof![
        Just(SetExpr::Naturals),
        Just(SetExpr::Naturals0),
        Just(SetExpr::Integers),
        prop::sample::select(STEPS).prop_map(SetExpr::multiples),
        (0i64..40, prop::sample::select(STEPS)).prop_map(|(s, d)| SetExpr::nat_prog(s, d)),
        (-30i64..30, prop::sample::select(STEPS)).prop_map(|(r, d)| SetExpr::int_prog(r, d)),
        (1u32..=3).prop_map(SetExpr::Powers),
        prop::collection::vec(-40i64..=40, 0..6)
            .prop_map(|xs| SetExpr::finite(xs.into_iter().map(BigInt::from).map(BigRational::from_integer))),
    ]
    .boxed()
}

/// Base sets mixing in rationals; every threshold is at most 2, the last
/// level at which the rational grid can be enumerated.
pub fn rational_base_set() -> BoxedStrategy<SetExpr> {
    let steps = &[1i64, 2, 4][..];
    prop_oneof![
        Just(SetExpr::Naturals),
        Just(SetExpr::Naturals0),
        Just(SetExpr::Integers),
        Just(SetExpr::Rationals),
        prop::sample::select(steps).prop_map(SetExpr::multiples),
        (0i64..=4, prop::sample::select(steps)).prop_map(|(s, d)| SetExpr::nat_prog(s, d)),
        (-9i64..9, prop::sample::select(steps)).prop_map(|(r, d)| SetExpr::int_prog(r, d)),
        (1u32..=2).prop_map(SetExpr::Powers),
        small_finite(),
        qint_small(),
    ]
    .boxed()
}

pub fn base_set() -> BoxedStrategy<SetExpr> {
    prop_oneof![integer_base_set(), rational_base_set()].boxed()
}

fn combine(base: BoxedStrategy<SetExpr>) -> BoxedStrategy<SetExpr> {
    base.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner, 0..3).prop_map(|(a, b, op)| match op {
            0 => SetExpr::union(a, b),
            1 => SetExpr::inter(a, b),
            _ => SetExpr::diff(a, b),
        })
    })
    .boxed()
}

/// Boolean combinations within one world, so that some level at most 3
/// is always past the threshold and feasible.
pub fn boolean_set() -> BoxedStrategy<SetExpr> {
    prop_oneof![combine(integer_base_set()), combine(rational_base_set())].boxed()
}

/// Small sets for the finite-part and function constructors.
fn tiny_set() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        small_finite(),
        (0i64..=4).prop_map(|k| SetExpr::inter(
            SetExpr::Naturals,
            SetExpr::QInterval(Interval::new(q(0, 1), q(k, 1), true, true))
        )),
    ]
}

/// Boolean combinations, products, finite parts and finite functions.
pub fn composite_set() -> BoxedStrategy<SetExpr> {
    prop_oneof![
        6 => boolean_set(),
        1 => (combine(rational_base_set()), combine(rational_base_set())).prop_map(|(a, b)| SetExpr::prod(a, b)),
        1 => (combine(integer_base_set()), small_finite(), any::<bool>()).prop_map(|(a, b, swap)| {
            if swap { SetExpr::prod(b, a) } else { SetExpr::prod(a, b) }
        }),
        1 => prop_oneof![tiny_set(), Just(SetExpr::Naturals), Just(SetExpr::Naturals0)].prop_map(SetExpr::pfin),
        1 => (tiny_set(), tiny_set()).prop_map(|(a, b)| SetExpr::ffin(a, b)),
    ]
    .boxed()
}

/// Any syntactically valid set, for round-trip checks.
pub fn any_set() -> BoxedStrategy<SetExpr> {
    let leaf = prop_oneof![
        base_set(),
        interval(50).prop_map(SetExpr::RInterval),
        (0i64..100, 1i64..100).prop_map(|(s, d)| SetExpr::nat_prog(s, d)),
        (1u32..10).prop_map(SetExpr::Powers),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), inner, 0..6).prop_map(|(a, b, op)| match op {
            0 => SetExpr::union(a, b),
            1 => SetExpr::inter(a, b),
            2 => SetExpr::diff(a, b),
            3 => SetExpr::prod(a, b),
            4 => SetExpr::pfin(a),
            _ => SetExpr::ffin(a, SetExpr::union(b, SetExpr::finite([q(1, 1)]))),
        })
    })
    .boxed()
}
