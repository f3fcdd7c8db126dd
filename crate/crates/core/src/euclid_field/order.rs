use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::puiseux::Puiseux;
use super::standard::{st_puiseux_ratio, StandardPart};
use super::value::{ExpTerm, Value};
use crate::label_net::{level_value, MAX_LEVEL};

/// Eventual sign along the label net.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    Unknown,
}

impl Sign {
    pub fn of(c: &BigRational) -> Sign {
        match c.cmp(&BigRational::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
            s => s,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (Sign::Unknown, _) | (_, Sign::Unknown) => Sign::Unknown,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Unknown,
}

impl From<Sign> for Comparison {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Negative => Comparison::Less,
            Sign::Zero => Comparison::Equal,
            Sign::Positive => Comparison::Greater,
            Sign::Unknown => Comparison::Unknown,
        }
    }
}

/// The lower bound `(2a^2 + 1)^2` that `b` is known to exceed.
pub fn beta_floor() -> Puiseux {
    let two_a2 = Puiseux::monomial(BigRational::from_integer(2.into()), BigRational::from_integer(2.into()), 0);
    (two_a2 + Puiseux::one()).pow(2)
}

/// Sign of a polynomial in `a` alone: the leading coefficient decides.
fn sign_alpha(p: &Puiseux) -> Sign {
    match p.leading() {
        None => Sign::Zero,
        Some((_, c)) => Sign::of(c),
    }
}

/// Eventual sign of a polynomial. With `b` present, writes `b = L + t` with
/// `L = (2a^2+1)^2` and `t > 0`, and decides when every coefficient of the
/// resulting polynomial in `t` has the same sign.
pub fn sign_puiseux(p: &Puiseux) -> Sign {
    if !p.has_beta() {
        return sign_alpha(p);
    }
    let shifted = p.substitute_beta(&(beta_floor() + Puiseux::beta()));
    let mut seen = Sign::Zero;
    for (_, group) in shifted.beta_groups() {
        match (seen, sign_alpha(&group)) {
            (_, Sign::Zero) => {}
            (Sign::Zero, s) => seen = s,
            (a, b) if a == b => {}
            _ => return Sign::Unknown,
        }
    }
    seen
}

/// `t` eventually outgrows `u` by an unbounded factor.
pub fn dominates(t: &ExpTerm, u: &ExpTerm) -> bool {
    let base_diff = &t.base - &u.base;
    let exp_diff = &t.exponent - &u.exponent;
    let base_ge = matches!(sign_puiseux(&base_diff), Sign::Positive | Sign::Zero);
    if base_ge && sign_puiseux(&exp_diff) == Sign::Positive && (!exp_diff.is_constant() || !u.base.is_constant()) {
        return true;
    }
    let exp_ge = matches!(sign_puiseux(&exp_diff), Sign::Positive | Sign::Zero);
    if !exp_ge {
        return false;
    }
    match st_puiseux_ratio(&t.base, &u.base) {
        StandardPart::Rational(r) => r > BigRational::one(),
        StandardPart::PosInfinity => true,
        _ => false,
    }
}

/// The exponential term that outgrows every other term, if there is one.
pub fn dominant_term(v: &Value) -> Option<ExpTerm> {
    if v.poly().has_beta() {
        return None;
    }
    let terms: Vec<ExpTerm> = v.exp_terms().collect();
    terms
        .iter()
        .enumerate()
        .find(|(i, t)| terms.iter().enumerate().all(|(j, u)| *i == j || dominates(t, u)))
        .map(|(_, t)| t.clone())
}

pub fn sign_value(v: &Value) -> Sign {
    if !v.has_exp() {
        return sign_puiseux(v.poly());
    }
    let mut coeff_sign = Sign::Zero;
    for t in v.exp_terms() {
        let s = Sign::of(&t.coeff);
        if coeff_sign == Sign::Zero {
            coeff_sign = s;
        } else if coeff_sign != s {
            coeff_sign = Sign::Unknown;
        }
    }
    if coeff_sign != Sign::Unknown {
        let poly = sign_puiseux(v.poly());
        if poly == Sign::Zero || poly == coeff_sign {
            return coeff_sign;
        }
    }
    match dominant_term(v) {
        Some(t) => Sign::of(&t.coeff),
        None => Sign::Unknown,
    }
}

/// Eventual comparison of `v` and `w`.
pub fn compare(v: &Value, w: &Value) -> Comparison {
    sign_value(&(v - w)).into()
}

/// Least level from which `v - w` keeps the sign of its leading monomial
/// at every larger level. Both values must be polynomials in `a` alone.
/// `None` when the values involve `b` or exponential terms, or when no level
/// up to the largest supported one is certified.
pub fn certified_level(v: &Value, w: &Value) -> Option<u32> {
    let d = v - w;
    let d = d.as_puiseux()?;
    if d.has_beta() {
        return None;
    }
    let mut terms = d.terms();
    let Some((lead_e, lead_c)) = terms.next() else {
        return Some(1);
    };
    let rest: Vec<_> = terms.collect();
    let Some((second_e, _)) = rest.first() else {
        return Some(1);
    };
    let sum: BigRational = rest.iter().map(|(_, c)| c.abs()).sum();
    let gap = &lead_e.alpha - &second_e.alpha;
    let p: u32 = gap.numer().try_into().ok()?;
    let q: u32 = gap.denom().try_into().ok()?;
    // n^p * |c|^q > S^q, cleared of denominators
    let c = num_traits::pow(lead_c.abs(), q as usize);
    let s = num_traits::pow(sum, q as usize);
    let lhs_scale = c.numer() * s.denom();
    let rhs = s.numer() * c.denom();
    (1..=MAX_LEVEL).find(|&m| exceeds(level_value(m), p, &lhs_scale, &rhs))
}

/// `n^p * k > r` for positive `k`, `r`.
fn exceeds(n: &BigUint, p: u32, k: &BigInt, r: &BigInt) -> bool {
    let lower_bits = (n.bits().saturating_sub(1)) * u64::from(p) + k.bits().saturating_sub(1);
    if lower_bits >= r.bits() {
        return true;
    }
    let np = BigInt::from(n.pow(p));
    np * k > *r
}
