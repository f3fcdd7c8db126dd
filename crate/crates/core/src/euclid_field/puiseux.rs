use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair of a monomial `a^alpha * b^beta`. Ordered by `beta` first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    pub beta: u32,
    pub alpha: BigRational,
}

impl Exponent {
    pub fn new(alpha: BigRational, beta: u32) -> Self {
        Exponent { beta, alpha }
    }

    pub fn constant() -> Self {
        Exponent::new(BigRational::zero(), 0)
    }

    pub fn is_constant(&self) -> bool {
        self.beta == 0 && self.alpha.is_zero()
    }
}

/// A finite sum of monomials `c * a^p * b^k` with rational `p >= 0` and
/// natural `k`. Zero coefficients never appear.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Puiseux {
    terms: BTreeMap<Exponent, BigRational>,
}

impl Puiseux {
    pub fn zero() -> Self {
        Puiseux::default()
    }

    pub fn one() -> Self {
        Puiseux::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Puiseux::monomial(c, BigRational::zero(), 0)
    }

    pub fn integer(c: i64) -> Self {
        Puiseux::constant(BigRational::from_integer(c.into()))
    }

    /// The unit `a`.
    pub fn alpha() -> Self {
        Puiseux::monomial(BigRational::one(), BigRational::one(), 0)
    }

    /// The unit `b`.
    pub fn beta() -> Self {
        Puiseux::monomial(BigRational::one(), BigRational::zero(), 1)
    }

    /// Panics on a negative `a`-exponent.
    pub fn monomial(coeff: BigRational, alpha: BigRational, beta: u32) -> Self {
        assert!(!alpha.is_negative(), "negative exponent {alpha}");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Exponent::new(alpha, beta), coeff);
        }
        Puiseux { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Self {
        let mut p = Puiseux::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        assert!(!e.alpha.is_negative(), "negative exponent {}", e.alpha);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Monomials from the largest exponent pair down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Exponent::constant())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn has_beta(&self) -> bool {
        self.terms.keys().any(|e| e.beta > 0)
    }

    pub fn beta_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.beta).max().unwrap_or(0)
    }

    /// Largest `a`-exponent, `None` for zero.
    pub fn alpha_degree(&self) -> Option<BigRational> {
        self.terms.keys().map(|e| e.alpha.clone()).max()
    }

    /// Leading monomial in the `(b, a)` order.
    pub fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Splits into `sum_k b^k * P_k(a)`, highest `k` first.
    pub fn beta_groups(&self) -> Vec<(u32, Puiseux)> {
        let mut groups: BTreeMap<u32, Puiseux> = BTreeMap::new();
        for (e, c) in &self.terms {
            groups
                .entry(e.beta)
                .or_default()
                .add_term(Exponent::new(e.alpha.clone(), 0), c.clone());
        }
        groups.into_iter().rev().collect()
    }

    pub fn scale(&self, c: &BigRational) -> Puiseux {
        if c.is_zero() {
            return Puiseux::zero();
        }
        Puiseux {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Puiseux {
        let mut acc = Puiseux::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// For a single monomial with coefficient `c`, the power with rational
    /// exponent `r >= 0`, when `c^r` is rational.
    pub fn monomial_pow(&self, r: &BigRational) -> Option<Puiseux> {
        if self.terms.len() != 1 || r.is_negative() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let coeff = rational_root_pow(c, r)?;
        let r_int = r.is_integer().then(|| r.to_integer());
        let beta = match r_int {
            Some(k) => {
                let k: u32 = k.try_into().ok()?;
                e.beta.checked_mul(k)?
            }
            None if e.beta == 0 => 0,
            None => return None,
        };
        Some(Puiseux::monomial(coeff, &e.alpha * r, beta))
    }

    /// `self` with every `b` replaced by `replacement`.
    pub fn substitute_beta(&self, replacement: &Puiseux) -> Puiseux {
        let mut out = Puiseux::zero();
        for (e, c) in &self.terms {
            let mono = Puiseux::monomial(c.clone(), e.alpha.clone(), 0);
            out = &out + &(&mono * &replacement.pow(e.beta));
        }
        out
    }

    /// Exact division, `None` when `divisor` does not divide `self` with
    /// nonnegative exponents.
    pub fn exact_div(&self, divisor: &Puiseux) -> Option<Puiseux> {
        let (lead_e, lead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Puiseux::zero();
        while let Some((e, c)) = rem.leading() {
            if e.beta < lead_e.beta || e.alpha < lead_e.alpha {
                return None;
            }
            let q = Puiseux::monomial(c / lead_c, &e.alpha - &lead_e.alpha, e.beta - lead_e.beta);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }
}

/// `c^r` for rational `r >= 0`, when the result is rational.
pub(crate) fn rational_root_pow(c: &BigRational, r: &BigRational) -> Option<BigRational> {
    let p: u32 = r.numer().try_into().ok()?;
    let q: u32 = r.denom().try_into().ok()?;
    let root = |x: &BigInt| -> Option<BigInt> {
        if x.is_negative() && q.is_multiple_of(2) {
            return None;
        }
        let s = x.nth_root(q);
        (s.pow(q) == *x).then_some(s)
    };
    let num = root(c.numer())?;
    let den = root(c.denom())?;
    Some(BigRational::new(num.pow(p), den.pow(p)))
}

impl Add<&Puiseux> for &Puiseux {
    type Output = Puiseux;

    fn add(self, rhs: &Puiseux) -> Puiseux {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Puiseux> for &Puiseux {
    type Output = Puiseux;

    fn sub(self, rhs: &Puiseux) -> Puiseux {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Puiseux> for &Puiseux {
    type Output = Puiseux;

    fn mul(self, rhs: &Puiseux) -> Puiseux {
        let mut out = Puiseux::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(
                    Exponent::new(&e1.alpha + &e2.alpha, e1.beta + e2.beta),
                    c1 * c2,
                );
            }
        }
        out
    }
}

impl Neg for &Puiseux {
    type Output = Puiseux;

    fn neg(self) -> Puiseux {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Puiseux> for Puiseux {
            type Output = Puiseux;
            fn $m(self, rhs: Puiseux) -> Puiseux { (&self).$m(&rhs) }
        }
        impl $tr<&Puiseux> for Puiseux {
            type Output = Puiseux;
            fn $m(self, rhs: &Puiseux) -> Puiseux { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Puiseux {
    type Output = Puiseux;

    fn neg(self) -> Puiseux {
        -&self
    }
}

impl From<i64> for Puiseux {
    fn from(c: i64) -> Self {
        Puiseux::integer(c)
    }
}

impl From<BigRational> for Puiseux {
    fn from(c: BigRational) -> Self {
        Puiseux::constant(c)
    }
}
