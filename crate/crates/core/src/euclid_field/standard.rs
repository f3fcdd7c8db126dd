use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::order::{dominant_term, dominates, sign_puiseux, sign_value, Sign};
use super::puiseux::Puiseux;
use super::value::Value;
use crate::error::{Error, Result};

/// A formal ratio of two values with a nonzero denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quotient {
    numerator: Value,
    denominator: Value,
}

impl Quotient {
    /// Builds `n / d`, cancelling exactly when possible.
    pub fn new(numerator: Value, denominator: Value) -> Result<Quotient> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = denominator.as_constant() {
            return Ok(Quotient::from(numerator.scale(&c.recip())));
        }
        if let (Some(n), Some(d)) = (numerator.as_puiseux(), denominator.as_puiseux()) {
            if let Some(q) = n.exact_div(d) {
                return Ok(Quotient::from(Value::from(q)));
            }
        }
        Ok(Quotient {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &Value {
        &self.numerator
    }

    pub fn denominator(&self) -> &Value {
        &self.denominator
    }

    /// The quotient as a plain value, when the denominator is 1.
    pub fn as_value(&self) -> Option<&Value> {
        (self.denominator == Value::one()).then_some(&self.numerator)
    }

    pub fn add(&self, other: &Quotient) -> Result<Quotient> {
        if self.denominator == other.denominator {
            return Quotient::new(&self.numerator + &other.numerator, self.denominator.clone());
        }
        let n = self.numerator.checked_mul(&other.denominator)? + other.numerator.checked_mul(&self.denominator)?;
        Quotient::new(n, self.denominator.checked_mul(&other.denominator)?)
    }

    pub fn neg(&self) -> Quotient {
        Quotient {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, other: &Quotient) -> Result<Quotient> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Quotient) -> Result<Quotient> {
        Quotient::new(
            self.numerator.checked_mul(&other.numerator)?,
            self.denominator.checked_mul(&other.denominator)?,
        )
    }

    pub fn div(&self, other: &Quotient) -> Result<Quotient> {
        if other.numerator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Quotient::new(
            self.numerator.checked_mul(&other.denominator)?,
            self.denominator.checked_mul(&other.numerator)?,
        )
    }

    pub fn sign(&self) -> Sign {
        sign_value(&self.numerator).times(sign_value(&self.denominator))
    }
}

impl From<Value> for Quotient {
    fn from(v: Value) -> Self {
        Quotient {
            numerator: v,
            denominator: Value::one(),
        }
    }
}

/// Result of dividing two values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Exact(Value),
    Quotient(Quotient),
}

pub fn divide(v: &Value, w: &Value) -> Result<Division> {
    let q = Quotient::new(v.clone(), w.clone())?;
    Ok(match q.as_value() {
        Some(v) => Division::Exact(v.clone()),
        None => Division::Quotient(q),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StandardPart {
    Rational(BigRational),
    PosInfinity,
    NegInfinity,
    Unknown,
}

impl StandardPart {
    fn infinite(positive: bool) -> StandardPart {
        if positive {
            StandardPart::PosInfinity
        } else {
            StandardPart::NegInfinity
        }
    }

    fn infinite_with(sign: Sign) -> StandardPart {
        match sign {
            Sign::Positive => StandardPart::PosInfinity,
            Sign::Negative => StandardPart::NegInfinity,
            _ => StandardPart::Unknown,
        }
    }
}

/// Growth summary `c * a^e * b^k` of a nonzero polynomial, when the top
/// `b`-group provably outgrows the others.
fn growth(p: &Puiseux) -> Option<(u32, BigRational, BigRational)> {
    let groups = p.beta_groups();
    let (k, top) = groups.first()?;
    let (lead_e, lead_c) = top.leading()?;
    let four = BigRational::from_integer(4.into());
    for (j, group) in &groups[1..] {
        let deg = group.alpha_degree()?;
        if deg - &lead_e.alpha - &four * BigRational::from_integer((k - j).into()) >= BigRational::zero() {
            return None;
        }
    }
    Some((*k, lead_e.alpha.clone(), lead_c.clone()))
}

/// `st(p / q)` for polynomials.
pub fn st_puiseux_ratio(p: &Puiseux, q: &Puiseux) -> StandardPart {
    if q.is_zero() {
        return StandardPart::Unknown;
    }
    if p.is_zero() {
        return StandardPart::Rational(BigRational::zero());
    }
    let (Some((kp, ep, cp)), Some((kq, eq, cq))) = (growth(p), growth(q)) else {
        return StandardPart::Unknown;
    };
    let c = cp / cq;
    let e = ep - eq;
    let four = BigRational::from_integer(4.into());
    match kp.cmp(&kq) {
        std::cmp::Ordering::Equal => {
            if e.is_negative() {
                StandardPart::Rational(BigRational::zero())
            } else if e.is_zero() {
                StandardPart::Rational(c)
            } else {
                StandardPart::infinite(c.is_positive())
            }
        }
        std::cmp::Ordering::Greater => {
            let d = BigRational::from_integer((kp - kq).into());
            if (four * d + e).is_positive() {
                StandardPart::infinite(c.is_positive())
            } else {
                StandardPart::Unknown
            }
        }
        std::cmp::Ordering::Less => {
            let d = BigRational::from_integer((kq - kp).into());
            if (e - four * d).is_negative() {
                StandardPart::Rational(BigRational::zero())
            } else {
                StandardPart::Unknown
            }
        }
    }
}

/// Standard part of a quotient.
pub fn st_quotient(q: &Quotient) -> StandardPart {
    let (n, d) = (q.numerator(), q.denominator());
    if n.is_zero() {
        return StandardPart::Rational(BigRational::zero());
    }
    match (n.has_exp(), d.has_exp()) {
        (false, false) => st_puiseux_ratio(n.poly(), d.poly()),
        (true, false) => {
            if d.has_beta() {
                return StandardPart::Unknown;
            }
            match dominant_term(n) {
                Some(t) => StandardPart::infinite_with(Sign::of(&t.coeff).times(sign_puiseux(d.poly()))),
                None => StandardPart::Unknown,
            }
        }
        (false, true) => {
            if n.has_beta() || dominant_term(d).is_none() {
                StandardPart::Unknown
            } else {
                StandardPart::Rational(BigRational::zero())
            }
        }
        (true, true) => {
            let (Some(tn), Some(td)) = (dominant_term(n), dominant_term(d)) else {
                return StandardPart::Unknown;
            };
            if tn.base == td.base && tn.exponent == td.exponent {
                StandardPart::Rational(&tn.coeff / &td.coeff)
            } else if dominates(&tn, &td) {
                StandardPart::infinite_with(Sign::of(&tn.coeff).times(Sign::of(&td.coeff)))
            } else if dominates(&td, &tn) {
                StandardPart::Rational(BigRational::zero())
            } else {
                StandardPart::Unknown
            }
        }
    }
}

/// Standard part of a value: its constant when finite, otherwise an infinity.
pub fn st(v: &Value) -> StandardPart {
    st_quotient(&Quotient::from(v.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Infinitesimal,
    Finite,
    Infinite,
    Unknown,
}

/// Zero counts as infinitesimal.
pub fn classify(q: &Quotient) -> Class {
    match st_quotient(q) {
        StandardPart::Rational(r) if r.is_zero() => Class::Infinitesimal,
        StandardPart::Rational(_) => Class::Finite,
        StandardPart::PosInfinity | StandardPart::NegInfinity => Class::Infinite,
        StandardPart::Unknown => Class::Unknown,
    }
}

pub fn classify_value(v: &Value) -> Class {
    classify(&Quotient::from(v.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn a() -> Value {
        Value::alpha()
    }

    fn lin(c1: i64, c0: i64) -> Value {
        a().scale(&r(c1, 1)) + Value::integer(c0)
    }

    #[test]
    fn division_examples() {
        let p = Value::from(Puiseux::monomial(r(2, 1), r(2, 1), 0)) + a();
        assert_eq!(divide(&p, &a()).unwrap(), Division::Exact(lin(2, 1)));
        assert_eq!(divide(&a(), &Value::integer(2)).unwrap(), Division::Exact(a().scale(&r(1, 2))));
        assert!(matches!(divide(&lin(1, 1), &a()).unwrap(), Division::Quotient(_)));
        assert_eq!(divide(&a(), &Value::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn standard_part_examples() {
        let inv = Quotient::new(Value::one(), a()).unwrap();
        assert_eq!(st_quotient(&inv), StandardPart::Rational(r(0, 1)));
        let q = Quotient::new(lin(2, 1), lin(1, 2)).unwrap();
        assert_eq!(st_quotient(&q), StandardPart::Rational(r(2, 1)));
        assert_eq!(st(&a()), StandardPart::PosInfinity);
        assert_eq!(st(&-a()), StandardPart::NegInfinity);
        assert_eq!(st(&Value::rational(r(7, 2))), StandardPart::Rational(r(7, 2)));
        let b = Value::beta();
        let ratio = Quotient::new(&b - &Value::one(), b.clone()).unwrap();
        assert_eq!(st_quotient(&ratio), StandardPart::Rational(r(1, 1)));
        let mixed = Quotient::new(b.clone(), Value::from(Puiseux::monomial(r(1, 1), r(3, 1), 0))).unwrap();
        assert_eq!(st_quotient(&mixed), StandardPart::PosInfinity);
        let bounded = Quotient::new(b.clone(), Value::from(Puiseux::monomial(r(1, 1), r(4, 1), 0))).unwrap();
        assert_eq!(st_quotient(&bounded), StandardPart::Unknown);
        let small = Quotient::new(Value::from(Puiseux::monomial(r(1, 1), r(3, 1), 0)), b.clone()).unwrap();
        assert_eq!(st_quotient(&small), StandardPart::Rational(r(0, 1)));
        let unclear = Quotient::new(b.clone(), Value::from(Puiseux::monomial(r(1, 1), r(5, 1), 0))).unwrap();
        assert_eq!(st_quotient(&unclear), StandardPart::Unknown);
    }

    #[test]
    fn classification() {
        let inv = Quotient::new(Value::one(), a()).unwrap();
        assert_eq!(classify(&inv), Class::Infinitesimal);
        assert_eq!(classify_value(&Value::rational(r(7, 2))), Class::Finite);
        let e = Value::power(&Value::integer(2), &a()).unwrap();
        assert_eq!(classify_value(&e), Class::Infinite);
        assert_eq!(classify_value(&Value::zero()), Class::Infinitesimal);
    }

    #[test]
    fn exp_ratios() {
        let e = Value::power(&Value::integer(2), &a()).unwrap();
        let q = Quotient::new(e.scale(&r(3, 1)) + a(), e.clone()).unwrap();
        assert_eq!(st_quotient(&q), StandardPart::Rational(r(3, 1)));
        let q = Quotient::new(a(), e.clone()).unwrap();
        assert_eq!(st_quotient(&q), StandardPart::Rational(r(0, 1)));
    }
}
