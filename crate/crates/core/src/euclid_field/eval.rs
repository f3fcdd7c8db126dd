use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::puiseux::Puiseux;
use super::value::Value;
use crate::error::{Error, Result};
use crate::label_net::{factorial, LabelIndex};

/// Largest result size, in bits, that evaluation will materialize.
pub const MAX_EVAL_BITS: u64 = 1 << 26;

/// `n_m^r` for `r = p/q >= 0`, where `n_m = f^f` and `f = m!`.
fn level_power(m: u32, r: &BigRational) -> Result<BigUint> {
    let f = factorial(m);
    let q = r.denom();
    let not_integral = || Error::ExponentNotIntegralAtLevel {
        exponent: r.to_string(),
        level: m,
    };
    let q = q.to_u128().ok_or_else(not_integral)?;
    if !f.is_multiple_of(q) {
        return Err(not_integral());
    }
    let p = r.numer().to_u128().ok_or_else(|| too_big(r.to_string()))?;
    let e = (f / q).checked_mul(p).ok_or_else(|| too_big(r.to_string()))?;
    let bits = BigUint::from(f).bits();
    if bits.saturating_mul(e.min(u64::MAX as u128) as u64) > MAX_EVAL_BITS {
        return Err(too_big(format!("level {m} power {r}")));
    }
    Ok(BigUint::from(f).pow(e as u32))
}

fn too_big(what: String) -> Error {
    Error::ComplexityExceeded {
        needed: what,
        bound: MAX_EVAL_BITS,
    }
}

fn eval_puiseux(p: &Puiseux, m: u32) -> Result<BigRational> {
    if p.has_beta() {
        return Err(Error::BetaNotEvaluable);
    }
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        let x = level_power(m, &e.alpha)?;
        acc += c * BigRational::from_integer(BigInt::from(x));
    }
    Ok(acc)
}

/// Value of `v` with `a` read as `n_m`.
pub fn evaluate_at_level(v: &Value, m: u32) -> Result<BigRational> {
    LabelIndex::new(m)?;
    if v.has_beta() {
        return Err(Error::BetaNotEvaluable);
    }
    let mut acc = eval_puiseux(v.poly(), m)?;
    for t in v.exp_terms() {
        let base = eval_puiseux(&t.base, m)?;
        let exponent = eval_puiseux(&t.exponent, m)?;
        if !exponent.is_integer() || exponent.is_negative() {
            return Err(Error::ExponentNotIntegralAtLevel {
                exponent: exponent.to_string(),
                level: m,
            });
        }
        let bits = base.numer().bits().max(base.denom().bits());
        let k = exponent.to_integer();
        let needed = BigInt::from(bits) * &k;
        let k = match k.to_u32() {
            Some(k) if needed <= BigInt::from(MAX_EVAL_BITS) => k,
            _ => return Err(too_big(format!("{needed} bits"))),
        };
        acc += t.coeff * num_traits::pow(base, k as usize);
    }
    Ok(acc)
}

/// `evaluate_at_level` for values expected to be integers.
pub fn evaluate_integer(v: &Value, m: u32) -> Result<BigInt> {
    let r = evaluate_at_level(v, m)?;
    if r.denom().is_one() {
        Ok(r.to_integer())
    } else {
        Err(Error::NotRepresentable(format!("{r} is not an integer at level {m}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mono(c: BigRational, a: BigRational) -> Value {
        Value::from(Puiseux::monomial(c, a, 0))
    }

    #[test]
    fn examples() {
        assert_eq!(evaluate_at_level(&mono(r(1, 2), r(1, 1)), 2).unwrap(), r(2, 1));
        assert_eq!(evaluate_at_level(&mono(r(1, 1), r(1, 2)), 3).unwrap(), r(216, 1));
        assert!(matches!(
            evaluate_at_level(&mono(r(1, 1), r(1, 3)), 2),
            Err(Error::ExponentNotIntegralAtLevel { level: 2, .. })
        ));
        assert_eq!(evaluate_at_level(&Value::beta(), 2), Err(Error::BetaNotEvaluable));
    }

    #[test]
    fn exponentials() {
        let e = Value::power(&Value::integer(2), &Value::alpha()).unwrap();
        assert_eq!(evaluate_at_level(&e, 2).unwrap(), r(16, 1));
        let big = evaluate_integer(&e, 3).unwrap();
        assert_eq!(big, BigInt::from(1) << 46656);
        assert!(matches!(evaluate_at_level(&e, 4), Err(Error::ComplexityExceeded { .. })));
    }

    #[test]
    fn level_values_agree() {
        for m in 1..=4 {
            let n = crate::label_net::level_value(m);
            let v = evaluate_integer(&Value::alpha(), m).unwrap();
            assert_eq!(v, BigInt::from(n.clone()));
        }
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(matches!(evaluate_at_level(&Value::one(), 0), Err(Error::LevelOutOfRange(0))));
    }
}
