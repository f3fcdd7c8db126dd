//! Ordinals below epsilon-zero in hereditary Cantor normal form, with the
//! standard and the natural (Hessenberg) operations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::euclid_field::Value;
use crate::setlang::OrdExpr;

/// Largest finite exponent expanded by repeated multiplication.
const MAX_FINITE_EXPONENT: u64 = 4096;
/// Largest natural number, in bits, produced by exponentiation.
const MAX_NATURAL_BITS: u64 = 1 << 20;

/// `sum ω^e_i * c_i` with strictly decreasing exponents and positive
/// coefficients. The derived order is the ordinal order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<(Ordinal, BigUint)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn one() -> Self {
        Ordinal::nat(1u32)
    }

    pub fn nat(k: impl Into<BigUint>) -> Self {
        let k = k.into();
        if k.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), k)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, BigUint::one())],
        }
    }

    /// Builds from `(exponent, coefficient)` pairs in any order.
    pub fn from_terms(terms: impl IntoIterator<Item = (Ordinal, BigUint)>) -> Self {
        let mut merged: BTreeMap<Ordinal, BigUint> = BTreeMap::new();
        for (e, c) in terms {
            if !c.is_zero() {
                *merged.entry(e).or_default() += c;
            }
        }
        Ordinal {
            terms: merged.into_iter().rev().collect(),
        }
    }

    pub fn terms(&self) -> &[(Ordinal, BigUint)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_natural().is_some()
    }

    fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Splits into the part with infinite exponents and the finite tail.
    fn split_finite(&self) -> (Ordinal, BigUint) {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => (
                Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                },
                c.clone(),
            ),
            _ => (self.clone(), BigUint::zero()),
        }
    }

    /// `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.leading_exponent() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, BigUint)> = self.terms.iter().take_while(|(e, _)| e > lead).cloned().collect();
        let mut rest = other.terms.clone();
        if let Some((_, c)) = self.terms.iter().find(|(e, _)| e == lead) {
            rest[0].1 += c;
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// `self * other`.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = self.leading_exponent() else {
            return Ordinal::zero();
        };
        let mut out = Ordinal::zero();
        for (e, c) in &other.terms {
            let piece = if e.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 *= c;
                Ordinal { terms }
            } else {
                Ordinal {
                    terms: vec![(lead.add(e), c.clone())],
                }
            };
            out = out.add(&piece);
        }
        out
    }

    /// `self ^ other`.
    pub fn pow(&self, other: &Ordinal) -> Result<Ordinal> {
        if other.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() {
            return Ok(Ordinal::zero());
        }
        let (infinite, r) = other.split_finite();
        let r = r
            .to_u64()
            .filter(|r| *r <= MAX_FINITE_EXPONENT)
            .ok_or_else(|| Error::OrdinalTooLarge(format!("finite exponent {r}")))?;
        if let Some(k) = self.as_natural() {
            if k.is_one() {
                return Ok(Ordinal::one());
            }
            if k.bits() * r > MAX_NATURAL_BITS {
                return Err(Error::OrdinalTooLarge(format!("{k}^{r}")));
            }
            let tail = Ordinal::nat(k.pow(r as u32));
            if infinite.is_zero() {
                return Ok(tail);
            }
            // k^(ω·β) = ω^β, where ω^(1+e) = ω·ω^e
            let beta = Ordinal {
                terms: infinite
                    .terms
                    .iter()
                    .map(|(e, c)| (e.predecessor_or_self(), c.clone()))
                    .collect(),
            };
            return Ok(Ordinal::omega_pow(beta).mul(&tail));
        }
        let lead = self.leading_exponent().expect("nonzero");
        let mut out = if infinite.is_zero() {
            Ordinal::one()
        } else {
            Ordinal::omega_pow(lead.mul(&infinite))
        };
        for _ in 0..r {
            out = out.mul(self);
        }
        Ok(out)
    }

    /// `e - 1` for finite `e >= 1`, and `e` itself when `e` is infinite.
    fn predecessor_or_self(&self) -> Ordinal {
        match self.as_natural() {
            Some(k) => Ordinal::nat(k - 1u32),
            None => self.clone(),
        }
    }

    /// Natural sum: coefficients add exponent by exponent.
    pub fn nat_add(&self, other: &Ordinal) -> Ordinal {
        Ordinal::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    /// Natural product: the natural sum of `ω^(e ⊕ f) * c * d` over all
    /// pairs of terms.
    pub fn nat_mul(&self, other: &Ordinal) -> Ordinal {
        Ordinal::from_terms(
            self.terms
                .iter()
                .flat_map(|(e, c)| other.terms.iter().map(move |(f, d)| (e.nat_add(f), c * d))),
        )
    }

    /// The `j`-th irreducible ordinal `ω^(ω^j)`.
    pub fn theta(j: u32) -> Ordinal {
        Ordinal::omega_pow(Ordinal::omega_pow(Ordinal::nat(j)))
    }

    /// `θ` is closed under `σ·τ + γ`, which holds exactly for 1 and `ω^(ω^δ)`.
    pub fn is_irreducible(&self) -> bool {
        if *self == Ordinal::one() {
            return true;
        }
        match self.terms.as_slice() {
            [(e, c)] if c.is_one() => matches!(e.terms.as_slice(), [(_, k)] if k.is_one()),
            _ => false,
        }
    }

    /// Digits of `self` in base `θ_j`.
    pub fn to_theta_base(&self, j: u32) -> Result<ThetaForm> {
        let mut digits: Vec<(BigUint, Ordinal)> = Vec::new();
        for (e, c) in &self.terms {
            let mut k = BigUint::zero();
            let mut r = Vec::new();
            for (f, d) in &e.terms {
                match f.as_natural().and_then(|f| f.to_u32()) {
                    Some(f) if f == j => k = d.clone(),
                    Some(f) if f < j => r.push((Ordinal::nat(f), d.clone())),
                    _ => {
                        return Err(Error::ArgumentNotBelowThetaJPlus1 {
                            ordinal: self.to_string(),
                            next: j + 1,
                        })
                    }
                }
            }
            let term = Ordinal {
                terms: vec![(Ordinal { terms: r }, c.clone())],
            };
            match digits.last_mut() {
                Some((last_k, digit)) if *last_k == k => *digit = digit.add(&term),
                _ => digits.push((k, term)),
            }
        }
        Ok(ThetaForm { j, digits })
    }

    /// `ω := a + 1`, for ordinals below `ω^ω`.
    pub fn embed(&self) -> Result<Value> {
        let omega = Value::alpha() + Value::one();
        let mut out = Value::zero();
        for (e, c) in &self.terms {
            let k = e
                .as_natural()
                .ok_or_else(|| Error::ExponentNotFinite(e.to_string()))?;
            let k = k
                .to_u32()
                .ok_or_else(|| Error::OrdinalTooLarge(format!("exponent {k}")))?;
            let power = Value::power(&omega, &Value::integer(k.into()))?;
            let coeff = num_rational::BigRational::from_integer(c.clone().into());
            out = out + power.scale(&coeff);
        }
        Ok(out)
    }

    pub fn sup(items: &[Ordinal]) -> Ordinal {
        items.iter().max().cloned().unwrap_or_default()
    }

    /// `None` for an empty family.
    pub fn min(items: &[Ordinal]) -> Option<Ordinal> {
        items.iter().min().cloned()
    }

    fn fmt_compact(&self, f: &mut fmt::Formatter<'_>, sep: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if *e != Ordinal::one() {
                f.write_str("^")?;
                match e.as_natural() {
                    Some(k) => write!(f, "{k}")?,
                    None if *e == Ordinal::omega() => f.write_str("w")?,
                    None => {
                        f.write_str("(")?;
                        e.fmt_compact(f, "+")?;
                        f.write_str(")")?;
                    }
                }
            }
            if !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_compact(f, " + ")
    }
}

/// `sum θ_j^k * b_k` with digits `b_k < θ_j` and decreasing `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaForm {
    pub j: u32,
    pub digits: Vec<(BigUint, Ordinal)>,
}

impl ThetaForm {
    pub fn to_ordinal(&self) -> Ordinal {
        let base = Ordinal::omega_pow(Ordinal::nat(self.j));
        let mut out = Ordinal::zero();
        for (k, digit) in &self.digits {
            let shift = base.mul(&Ordinal::nat(k.clone()));
            let terms = digit
                .terms
                .iter()
                .map(|(e, c)| (shift.add(e), c.clone()))
                .collect();
            out = out.add(&Ordinal { terms });
        }
        out
    }
}

impl fmt::Display for ThetaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, digit)) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "T{}^{}*(", self.j, k)?;
            digit.fmt_compact(f, "+")?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Evaluates an ordinal expression.
pub fn eval(e: &OrdExpr) -> Result<Ordinal> {
    use OrdExpr::*;
    Ok(match e {
        Omega => Ordinal::omega(),
        Nat(k) => Ordinal::nat(k.clone()),
        Theta(j) => Ordinal::theta(*j),
        OrdAdd(a, b) => eval(a)?.add(&eval(b)?),
        OrdMul(a, b) => eval(a)?.mul(&eval(b)?),
        OrdPow(a, b) => eval(a)?.pow(&eval(b)?)?,
        NatAdd(a, b) => eval(a)?.nat_add(&eval(b)?),
        NatMul(a, b) => eval(a)?.nat_mul(&eval(b)?),
    })
}
