use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::order::{sign_puiseux, Sign};
use super::puiseux::{rational_root_pow, Puiseux};
use crate::error::{Error, Result};

/// Largest natural exponent expanded by repeated multiplication.
const MAX_EXPANDED_POWER: u32 = 4096;

/// `coeff * base^exponent` with an infinite positive exponent and a base
/// that is eventually at least 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpTerm {
    pub coeff: BigRational,
    pub base: Puiseux,
    pub exponent: Puiseux,
}

/// An element of the computable value field: a formal sum of exponential
/// terms plus a Puiseux polynomial in the units `a` and `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value {
    exp: BTreeMap<(Puiseux, Puiseux), BigRational>,
    poly: Puiseux,
}

impl Value {
    pub fn zero() -> Self {
        Value::default()
    }

    pub fn one() -> Self {
        Value::from(Puiseux::one())
    }

    pub fn integer(c: i64) -> Self {
        Value::from(Puiseux::integer(c))
    }

    pub fn rational(c: BigRational) -> Self {
        Value::from(Puiseux::constant(c))
    }

    pub fn alpha() -> Self {
        Value::from(Puiseux::alpha())
    }

    pub fn beta() -> Self {
        Value::from(Puiseux::beta())
    }

    /// Polynomial part.
    pub fn poly(&self) -> &Puiseux {
        &self.poly
    }

    /// Exponential terms, in canonical order from the largest key down.
    pub fn exp_terms(&self) -> impl Iterator<Item = ExpTerm> + '_ {
        self.exp.iter().rev().map(|((base, exponent), coeff)| ExpTerm {
            coeff: coeff.clone(),
            base: base.clone(),
            exponent: exponent.clone(),
        })
    }

    pub fn has_exp(&self) -> bool {
        !self.exp.is_empty()
    }

    pub fn as_puiseux(&self) -> Option<&Puiseux> {
        (!self.has_exp()).then_some(&self.poly)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        self.as_puiseux()?.as_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.exp.is_empty() && self.poly.is_zero()
    }

    pub fn has_beta(&self) -> bool {
        self.poly.has_beta()
            || self
                .exp
                .keys()
                .any(|(b, e)| b.has_beta() || e.has_beta())
    }

    /// No `a`, `b` or exponential term appears.
    pub fn is_finite_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn add_exp(&mut self, base: Puiseux, exponent: Puiseux, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (base, exponent);
        let slot = self.exp.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.exp.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Value {
        if c.is_zero() {
            return Value::zero();
        }
        Value {
            exp: self.exp.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
            poly: self.poly.scale(c),
        }
    }

    /// `coeff * base^exponent` in canonical form. Collapses to a polynomial
    /// when the exponent is a constant.
    pub fn exp_term(coeff: BigRational, base: &Puiseux, exponent: &Puiseux) -> Result<Value> {
        if coeff.is_zero() {
            return Ok(Value::zero());
        }
        if let Some(k) = exponent.as_constant() {
            return Ok(Value::from(puiseux_pow(base, &k)?).scale(&coeff));
        }
        match sign_puiseux(exponent) {
            Sign::Positive => {}
            _ => {
                return Err(Error::NotRepresentable(format!(
                    "exponent {exponent:?} is not eventually positive"
                )))
            }
        }
        if let Some(b) = base.as_constant() {
            if b.is_zero() {
                return Ok(Value::zero());
            }
            if b.is_one() {
                return Ok(Value::rational(coeff));
            }
            if b < BigRational::from_integer(2.into()) {
                return Err(Error::NotRepresentable(format!("exponential base {b} is below 2")));
            }
            // pull the integral part of the exponent's constant term into the coefficient
            let c = exponent.constant_term();
            let shift = c.floor();
            let shift_i = shift
                .to_integer()
                .to_i32()
                .ok_or_else(|| Error::NotRepresentable("exponent offset too large".into()))?;
            let coeff = coeff * pow_i32(&b, shift_i);
            let exponent = exponent - &Puiseux::constant(shift);
            let mut v = Value::zero();
            v.add_exp(base.clone(), exponent, coeff);
            return Ok(v);
        }
        if sign_puiseux(base) != Sign::Positive {
            return Err(Error::NotRepresentable(
                "exponential base is not eventually positive".into(),
            ));
        }
        let mut v = Value::zero();
        v.add_exp(base.clone(), exponent.clone(), coeff);
        Ok(v)
    }

    /// Product, when the result stays in the representable family.
    pub fn checked_mul(&self, rhs: &Value) -> Result<Value> {
        let mut out = Value::from(&self.poly * &rhs.poly);
        for ((b, e), c) in &self.exp {
            out = out + mul_exp_poly(b, e, c, &rhs.poly)?;
        }
        for ((b, e), c) in &rhs.exp {
            out = out + mul_exp_poly(b, e, c, &self.poly)?;
        }
        for ((b1, e1), c1) in &self.exp {
            for ((b2, e2), c2) in &rhs.exp {
                let c = c1 * c2;
                let term = if b1 == b2 {
                    Value::exp_term(c, b1, &(e1 + e2))?
                } else if e1 == e2 {
                    Value::exp_term(c, &(b1 * b2), e1)?
                } else {
                    return Err(Error::NotRepresentable(
                        "product of exponentials with different bases and exponents".into(),
                    ));
                };
                out = out + term;
            }
        }
        Ok(out)
    }

    /// `base^exponent`.
    pub fn power(base: &Value, exponent: &Value) -> Result<Value> {
        if let Some(k) = exponent.as_constant() {
            if let Some(p) = base.as_puiseux() {
                return Ok(Value::from(puiseux_pow(p, &k)?));
            }
            let k = natural_exponent(&k)?;
            let mut acc = Value::one();
            for _ in 0..k {
                acc = acc.checked_mul(base)?;
            }
            return Ok(acc);
        }
        let (Some(b), Some(e)) = (base.as_puiseux(), exponent.as_puiseux()) else {
            return Err(Error::NotRepresentable("nested exponentials".into()));
        };
        Value::exp_term(BigRational::one(), b, e)
    }
}

fn natural_exponent(k: &BigRational) -> Result<u32> {
    if !k.is_integer() || k.is_negative() {
        return Err(Error::NotRepresentable(format!("exponent {k} is not a natural number")));
    }
    match k.to_integer().to_u32() {
        Some(k) if k <= MAX_EXPANDED_POWER => Ok(k),
        _ => Err(Error::NotRepresentable(format!("exponent {k} is too large to expand"))),
    }
}

fn pow_i32(b: &BigRational, k: i32) -> BigRational {
    if k >= 0 {
        num_traits::pow(b.clone(), k as usize)
    } else {
        num_traits::pow(b.recip(), k.unsigned_abs() as usize)
    }
}

/// Power of a polynomial with a rational exponent.
fn puiseux_pow(p: &Puiseux, k: &BigRational) -> Result<Puiseux> {
    if let Some(c) = p.as_constant() {
        if k.is_integer() {
            if c.is_zero() && k.is_negative() {
                return Err(Error::DivisionByZero);
            }
            let k = k
                .to_integer()
                .to_i32()
                .ok_or_else(|| Error::NotRepresentable(format!("exponent {k} too large")))?;
            return Ok(Puiseux::constant(pow_i32(&c, k)));
        }
        return rational_root_pow(&c, k)
            .map(Puiseux::constant)
            .ok_or_else(|| Error::NotRepresentable(format!("{c}^({k}) is irrational")));
    }
    if k.is_integer() && !k.is_negative() {
        return Ok(p.pow(natural_exponent(k)?));
    }
    p.monomial_pow(k)
        .ok_or_else(|| Error::NotRepresentable(format!("power ({k}) of a polynomial")))
}

fn mul_exp_poly(base: &Puiseux, exponent: &Puiseux, coeff: &BigRational, p: &Puiseux) -> Result<Value> {
    match p.as_constant() {
        Some(c) => {
            let mut v = Value::zero();
            v.add_exp(base.clone(), exponent.clone(), coeff * c);
            Ok(v)
        }
        None => Err(Error::NotRepresentable(
            "exponential term times a non-constant polynomial".into(),
        )),
    }
}

impl From<Puiseux> for Value {
    fn from(poly: Puiseux) -> Self {
        Value {
            exp: BTreeMap::new(),
            poly,
        }
    }
}

impl From<i64> for Value {
    fn from(c: i64) -> Self {
        Value::integer(c)
    }
}

impl Add<&Value> for &Value {
    type Output = Value;

    fn add(self, rhs: &Value) -> Value {
        let mut out = self.clone();
        out.poly = &out.poly + &rhs.poly;
        for ((b, e), c) in &rhs.exp {
            out.add_exp(b.clone(), e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Value> for &Value {
    type Output = Value;

    fn sub(self, rhs: &Value) -> Value {
        self + &(-rhs)
    }
}

impl Neg for &Value {
    type Output = Value;

    fn neg(self) -> Value {
        self.scale(&-BigRational::one())
    }
}

impl Add for Value {
    type Output = Value;

    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl Sub for Value {
    type Output = Value;

    fn sub(self, rhs: Value) -> Value {
        &self - &rhs
    }
}

impl Neg for Value {
    type Output = Value;

    fn neg(self) -> Value {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_terms_absorb_integer_offsets() {
        let two = Puiseux::integer(2);
        let a = Puiseux::alpha();
        let shifted = Value::exp_term(r(1, 1), &two, &(&a + &Puiseux::one())).unwrap();
        let plain = Value::exp_term(r(2, 1), &two, &a).unwrap();
        assert_eq!(shifted, plain);
        let sum = &plain + &Value::exp_term(r(1, 1), &two, &a).unwrap();
        assert_eq!(sum, Value::exp_term(r(3, 1), &two, &a).unwrap());
    }

    #[test]
    fn constant_exponents_collapse() {
        let a = Puiseux::alpha();
        let v = Value::power(&Value::from(a.clone() + Puiseux::one()), &Value::integer(2)).unwrap();
        assert_eq!(v, Value::from((&a + &Puiseux::one()).pow(2)));
        let root = Value::power(&Value::alpha(), &Value::rational(r(1, 2))).unwrap();
        assert_eq!(root, Value::from(Puiseux::monomial(r(1, 1), r(1, 2), 0)));
        assert!(Value::power(&Value::integer(2), &Value::rational(r(1, 2))).is_err());
    }

    #[test]
    fn exp_products() {
        let two = Value::integer(2);
        let e1 = Value::power(&two, &Value::alpha()).unwrap();
        let sq = e1.checked_mul(&e1).unwrap();
        let expected = Value::power(&two, &Value::alpha().scale(&r(2, 1))).unwrap();
        assert_eq!(sq, expected);
        assert!(e1.checked_mul(&Value::alpha()).is_err());
        assert_eq!(e1.checked_mul(&Value::integer(3)).unwrap(), e1.scale(&r(3, 1)));
        let other = Value::power(&Value::integer(3), &Value::alpha()).unwrap();
        let six = Value::power(&Value::integer(6), &Value::alpha()).unwrap();
        assert_eq!(e1.checked_mul(&other).unwrap(), six);
    }

    #[test]
    fn bad_bases_are_rejected() {
        let half = Value::rational(r(3, 2));
        assert!(Value::power(&half, &Value::alpha()).is_err());
        assert_eq!(Value::power(&Value::one(), &Value::alpha()).unwrap(), Value::one());
        let neg = -Value::alpha();
        assert!(Value::power(&Value::integer(2), &neg).is_err());
    }
}
