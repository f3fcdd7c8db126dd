//! The chain of finite universes used to count sets level by level.
//!
//! Level `m` has size parameter `n_m = m!^(m!)`. At that level the natural
//! numbers are cut to `{0, ..., n_m}`, the integers to `{-n_m, ..., n_m}` and
//! the rationals to the grid `H_n = { a/n : |a| <= n^2 }`. The three cuts are
//! consistent: `H_n` meets the integers exactly in `{-n, ..., n}`. Composite
//! sets are restricted structurally: pairs of restricted sets, finite subsets
//! of a restricted set, partial functions between restricted sets.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::setlang::SetExpr;

/// Largest level whose size parameter is materialized.
pub const MAX_LEVEL: u32 = 8;

/// Levels beyond this are never searched when looking for a threshold.
pub const MAX_THRESHOLD_SEARCH: u32 = 256;

/// Default bound on brute-force membership tests.
pub const DEFAULT_MAX_OPS: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_MAX_OPS`].
pub const MAX_OPS_ENV: &str = "NUMEROSITAS_MAX_OPS";

static LEVELS: [OnceLock<BigUint>; MAX_LEVEL as usize] = [const { OnceLock::new() }; MAX_LEVEL as usize];

/// `m!` saturating at `u128::MAX`.
pub fn factorial(m: u32) -> u128 {
    (1..=m as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// `n_m = m!^(m!)`, exactly.
///
/// Panics unless `1 <= m <= MAX_LEVEL`; level 8 already has about 617k bits.
pub fn level_value(m: u32) -> &'static BigUint {
    assert!(
        (1..=MAX_LEVEL).contains(&m),
        "level {m} outside 1..={MAX_LEVEL}"
    );
    LEVELS[(m - 1) as usize].get_or_init(|| {
        let f = factorial(m);
        BigUint::from(f).pow(f as u32)
    })
}

/// A level of the label chain together with its size parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelIndex {
    m: u32,
    n: &'static BigUint,
}

impl LabelIndex {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_LEVEL {
            return Err(Error::LevelOutOfRange(m));
        }
        Ok(LabelIndex {
            m,
            n: level_value(m),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> &BigUint {
        self.n
    }

    /// `n_m^(1/k)`, defined when `k` divides `m!`.
    pub fn root(&self, k: u32) -> Option<BigUint> {
        let f = factorial(self.m);
        if k == 0 || !f.is_multiple_of(k as u128) {
            return None;
        }
        Some(BigUint::from(f).pow((f / k as u128) as u32))
    }
}

fn primes_up_to(m: u32) -> impl Iterator<Item = u32> {
    (2..=m).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
}

/// Exponent of the prime `p` in `m!`.
fn legendre(m: u32, p: u32) -> u128 {
    let mut total = 0u128;
    let mut q = p as u128;
    while q <= m as u128 {
        total += m as u128 / q;
        q *= p as u128;
    }
    total
}

/// Whether `d` divides `n_m`, decided from the factorization of `m!`
/// without building `n_m`.
pub fn divides_level(d: &BigUint, m: u32) -> bool {
    if d.is_zero() {
        return false;
    }
    let mut rest = d.clone();
    let exponent = factorial(m);
    for p in primes_up_to(m) {
        let big_p = BigUint::from(p);
        let mut e = 0u128;
        while (&rest % &big_p).is_zero() {
            rest /= &big_p;
            e += 1;
        }
        if e > legendre(m, p).saturating_mul(exponent) {
            return false;
        }
    }
    rest.is_one()
}

/// Whether `n_m >= x`.
pub fn level_at_least(m: u32, x: &BigUint) -> bool {
    if m == 0 {
        return x.is_zero();
    }
    if m <= MAX_LEVEL {
        return level_value(m) >= x;
    }
    // n_m has at least m! * floor(log2 m!) bits.
    let f = factorial(m);
    let log = 127 - f.leading_zeros() as u128;
    (x.bits() as u128) <= f.saturating_mul(log)
}

fn least_level(pred: impl Fn(u32) -> bool) -> Option<u32> {
    (1..=MAX_THRESHOLD_SEARCH).find(|&m| pred(m))
}

/// Least level whose size parameter is a multiple of `d`.
pub fn least_level_dividing(d: &BigUint) -> Option<u32> {
    least_level(|m| divides_level(d, m))
}

/// Least level with `n_m >= x`.
pub fn least_level_at_least(x: &BigUint) -> u32 {
    least_level(|m| level_at_least(m, x)).unwrap_or(MAX_THRESHOLD_SEARCH)
}

/// Least `m` with `k | m!`, the first level at which `n_m^(1/k)` is an integer.
pub fn least_level_for_root(k: &BigUint) -> Option<u32> {
    let k = k.to_u128()?;
    if k == 0 {
        return None;
    }
    least_level(|m| factorial(m).is_multiple_of(k))
}

/// Whether the rational `q` lies on the level-`m` grid `H_{n_m}`.
pub fn grid_contains(m: u32, q: &BigRational) -> bool {
    let den = q.denom().magnitude();
    let mag = q.abs().ceil().to_integer();
    divides_level(den, m) && level_at_least(m, mag.magnitude())
}

/// Least level whose grid contains `q`; grids grow with `m`, so `q` stays in
/// every later grid.
pub fn least_grid_level(q: &BigRational) -> Option<u32> {
    least_level(|m| grid_contains(m, q))
}

/// Brute-force settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteConfig {
    pub max_ops: u64,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig {
            max_ops: DEFAULT_MAX_OPS,
        }
    }
}

impl BruteConfig {
    /// Default settings, with the bound taken from `NUMEROSITAS_MAX_OPS` when set.
    pub fn from_env() -> Self {
        let max_ops = std::env::var(MAX_OPS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_OPS);
        BruteConfig { max_ops }
    }
}

/// An element of a level restriction. Numbers are stored as grid
/// coordinates: `Num(a)` stands for `a / n_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Num(BigInt),
    Pair(Box<Element>, Box<Element>),
    Set(Vec<Element>),
    Func(Vec<(Element, Element)>),
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn charge(&mut self, ops: &BigUint) -> Result<()> {
        let total = ops + BigUint::from(self.used);
        match total.to_u64() {
            Some(t) if t <= self.max => {
                self.used = t;
                Ok(())
            }
            _ => Err(Error::ComplexityExceeded {
                needed: total.to_string(),
                bound: self.max,
            }),
        }
    }
}

enum World {
    Nat,
    Int,
}

/// `|E ∩ λ_m|` by explicit enumeration of the level-`m` restriction of `E`.
pub fn count_brute(expr: &SetExpr, m: u32, config: &BruteConfig) -> Result<BigUint> {
    Ok(BigUint::from(restrict(expr, m, config)?.len()))
}

/// The level-`m` restriction of `E`, materialized.
pub fn restrict(expr: &SetExpr, m: u32, config: &BruteConfig) -> Result<BTreeSet<Element>> {
    let level = LabelIndex::new(m)?;
    let mut budget = Budget {
        used: 0,
        max: config.max_ops,
    };
    Restrictor {
        level: &level,
        budget: &mut budget,
    }
    .run(expr)
}

struct Restrictor<'a> {
    level: &'a LabelIndex,
    budget: &'a mut Budget,
}

impl Restrictor<'_> {
    fn run(&mut self, expr: &SetExpr) -> Result<BTreeSet<Element>> {
        use SetExpr::*;
        Ok(match expr {
            Finite(xs) => {
                self.budget.charge(&BigUint::from(xs.len()))?;
                xs.iter().filter_map(|x| self.coordinate(x)).map(Element::Num).collect()
            }
            Naturals => self.scan(World::Nat, |k| *k >= 1)?,
            Naturals0 => self.scan(World::Nat, |_| true)?,
            Integers => self.scan(World::Int, |_| true)?,
            Rationals => self.scan_grid(|_, _| true)?,
            NatProg { start, step } => {
                let (a, d) = (small(start)?, small(step)?);
                self.scan(World::Nat, |k| *k >= a && (k - a) % d == 0)?
            }
            IntProg { residue, step } => {
                let (a, d) = (small(residue)?, small(step)?);
                self.scan(World::Int, |k| (k - a).rem_euclid(d) == 0)?
            }
            Powers(e) => {
                let e = *e;
                self.scan(World::Nat, |k| {
                    let root = (*k as u64).nth_root(e);
                    *k >= 1 && root.checked_pow(e) == Some(*k as u64)
                })?
            }
            QInterval(iv) => {
                let iv = iv.clone();
                self.scan_grid(move |a, n| {
                    let x = BigRational::new(a.clone(), n.clone());
                    iv.contains(&x)
                })?
            }
            RInterval(_) => {
                return Err(Error::unsupported(
                    "real intervals have no finite-level restriction",
                ))
            }
            Union(a, b) => {
                let mut left = self.run(a)?;
                left.extend(self.run(b)?);
                left
            }
            Intersect(a, b) => {
                let left = self.run(a)?;
                let right = self.run(b)?;
                left.intersection(&right).cloned().collect()
            }
            Diff(a, b) => {
                let left = self.run(a)?;
                let right = self.run(b)?;
                left.difference(&right).cloned().collect()
            }
            Product(a, b) => {
                let left = self.run(a)?;
                let right = self.run(b)?;
                self.budget
                    .charge(&(BigUint::from(left.len()) * BigUint::from(right.len())))?;
                let mut out = BTreeSet::new();
                for x in &left {
                    for y in &right {
                        out.insert(Element::Pair(Box::new(x.clone()), Box::new(y.clone())));
                    }
                }
                out
            }
            PFin(a) => {
                let base: Vec<Element> = self.run(a)?.into_iter().collect();
                self.budget.charge(&(BigUint::one() << base.len()))?;
                (0u64..1u64 << base.len())
                    .map(|mask| {
                        Element::Set(
                            base.iter()
                                .enumerate()
                                .filter(|(i, _)| mask >> i & 1 == 1)
                                .map(|(_, x)| x.clone())
                                .collect(),
                        )
                    })
                    .collect()
            }
            FFin(domain, target) => {
                let domain: Vec<Element> = self.run(domain)?.into_iter().collect();
                let target: Vec<Element> = self.run(target)?.into_iter().collect();
                self.partial_functions(&domain, &target)?
            }
        })
    }

    /// Partial functions from `domain` into `target` minus its least element.
    fn partial_functions(
        &mut self,
        domain: &[Element],
        target: &[Element],
    ) -> Result<BTreeSet<Element>> {
        let choices = target.len().max(1);
        self.budget
            .charge(&BigUint::from(choices).pow(domain.len() as u32))?;
        // choice 0 leaves the point undefined, choice i picks target[i]
        let mut digits = vec![0usize; domain.len()];
        let mut out = BTreeSet::new();
        loop {
            out.insert(Element::Func(
                domain
                    .iter()
                    .zip(&digits)
                    .filter(|(_, &c)| c > 0)
                    .map(|(x, &c)| (x.clone(), target[c].clone()))
                    .collect(),
            ));
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < choices {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    fn coordinate(&self, x: &BigRational) -> Option<BigInt> {
        if !grid_contains(self.level.m(), x) {
            return None;
        }
        let n = BigInt::from_biguint(Sign::Plus, self.level.n().clone());
        Some(x.numer() * (n / x.denom()))
    }

    fn scan(&mut self, world: World, pred: impl Fn(&i64) -> bool) -> Result<BTreeSet<Element>> {
        let n_big = self.level.n();
        let universe = match world {
            World::Nat => n_big + 1u32,
            World::Int => n_big * 2u32 + 1u32,
        };
        self.budget.charge(&universe)?;
        let n = n_big.to_i64().expect("charged universe fits in i64");
        let lo = match world {
            World::Nat => 0,
            _ => -n,
        };
        Ok((lo..=n)
            .filter(|k| pred(k))
            .map(|k| Element::Num(BigInt::from(k) * n))
            .collect())
    }

    fn scan_grid(&mut self, pred: impl Fn(&BigInt, &BigInt) -> bool) -> Result<BTreeSet<Element>> {
        let n_big = self.level.n();
        let sq = n_big * n_big;
        self.budget.charge(&(&sq * 2u32 + 1u32))?;
        let sq = sq.to_i64().expect("charged universe fits in i64");
        let n = BigInt::from_biguint(Sign::Plus, n_big.clone());
        Ok((-sq..=sq)
            .map(BigInt::from)
            .filter(|a| pred(a, &n))
            .map(Element::Num)
            .collect())
    }
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::unsupported(format!("parameter {x} too large to enumerate")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::parse_set;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn brute(text: &str, m: u32) -> BigUint {
        count_brute(&parse_set(text).unwrap(), m, &BruteConfig::default()).unwrap()
    }

    #[test]
    fn level_values() {
        assert_eq!(*level_value(1), BigUint::from(1u32));
        assert_eq!(*level_value(2), BigUint::from(4u32));
        assert_eq!(*level_value(3), BigUint::from(46656u32));
        assert_eq!(*level_value(4), BigUint::from(24u32).pow(24));
        for m in 1..MAX_LEVEL {
            assert!(level_value(m) < level_value(m + 1));
        }
    }

    #[test]
    fn small_divisors_divide_every_level() {
        for m in 1..=6 {
            let n = level_value(m);
            for k in 1..=m {
                assert!((n % k).is_zero());
                assert!(divides_level(&BigUint::from(k), m));
            }
            let root = LabelIndex::new(m).unwrap().root(m).unwrap();
            assert_eq!(root.pow(m), *n);
        }
    }

    #[test]
    fn divisibility_agrees_with_direct_division() {
        for m in 1..=4 {
            let n = level_value(m);
            for d in 1u32..200 {
                assert_eq!(divides_level(&BigUint::from(d), m), (n % d).is_zero(), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn grid_membership() {
        assert!(grid_contains(2, &q(3, 4)));
        assert!(!grid_contains(2, &q(1, 3)));
        assert!(!grid_contains(2, &q(5, 1)));
        assert!(grid_contains(2, &q(-4, 1)));
        for m in 1..=8 {
            assert!(grid_contains(m, &q(0, 1)));
        }
        assert_eq!(least_grid_level(&q(1, 3)), Some(3));
        assert_eq!(least_grid_level(&q(1, 8)), Some(3));
        assert_eq!(least_grid_level(&q(1, 7)), Some(7));
        assert_eq!(least_grid_level(&q(5, 1)), Some(3));
    }

    #[test]
    fn grid_consistency_by_enumeration() {
        for m in 1..=2u32 {
            let n = level_value(m).to_i64().unwrap();
            let grid: BTreeSet<BigRational> =
                (-n * n..=n * n).map(|a| q(a, n)).collect();
            assert_eq!(grid.len() as i64, 2 * n * n + 1);
            let ints: Vec<i64> = grid
                .iter()
                .filter(|x| x.is_integer())
                .map(|x| x.to_integer().to_i64().unwrap())
                .collect();
            assert_eq!(ints, (-n..=n).collect::<Vec<_>>());
            for x in &grid {
                assert!(grid.contains(&-x.clone()));
                assert!(grid_contains(m, x));
                assert!(grid_contains(m + 1, x));
            }
        }
    }

    #[test]
    fn brute_counts() {
        assert_eq!(brute("N", 2), BigUint::from(4u32));
        assert_eq!(brute("Z", 2), BigUint::from(9u32));
        assert_eq!(brute("pfin(N)", 2), BigUint::from(16u32));
        assert_eq!(brute("Q", 1), BigUint::from(3u32));
        assert_eq!(brute("Q", 2), BigUint::from(33u32));
        assert_eq!(brute("mult(3)", 3), BigUint::from(15552u32));
        assert_eq!(brute("prod(N0,N)", 2), BigUint::from(20u32));
        assert_eq!(brute("powers(2)", 3), BigUint::from(216u32));
        assert_eq!(brute("{1/3, 1/2, 7}", 2), BigUint::from(1u32));
        assert_eq!(brute("ffin({1,2}, {1,2,3})", 2), BigUint::from(9u32));
    }

    #[test]
    fn brute_rejects_real_intervals_and_large_levels() {
        let cfg = BruteConfig::default();
        let e = parse_set("rint[0,1)").unwrap();
        assert!(matches!(count_brute(&e, 1, &cfg), Err(Error::Unsupported(_))));
        let e = parse_set("Q").unwrap();
        assert!(matches!(
            count_brute(&e, 3, &cfg),
            Err(Error::ComplexityExceeded { .. })
        ));
        let e = parse_set("N").unwrap();
        assert!(matches!(
            count_brute(&e, 4, &cfg),
            Err(Error::ComplexityExceeded { .. })
        ));
        // finite sets stay feasible at every level
        let e = parse_set("{1, 1/5}").unwrap();
        assert_eq!(count_brute(&e, 5, &cfg).unwrap(), BigUint::from(2u32));
    }
}
