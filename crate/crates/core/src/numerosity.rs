//! Numerosities of definable sets as eventual closed forms along the levels,
//! and a verifier that checks them against brute-force counts.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euclid_field::{evaluate_at_level, evaluate_integer, format_value, Symbols, Value};
use crate::label_net::{
    count_brute, least_grid_level, least_level_at_least, least_level_dividing, least_level_for_root, level_value,
    BruteConfig, MAX_LEVEL,
};
use crate::setlang::{Interval, SetExpr};

/// Largest explicit finite set produced when intersecting a bounded interval
/// with a progression or a set of powers.
const MAX_EXPLICIT: u64 = 100_000;

/// An eventual closed form: `|E ∩ λ_m|` equals `form` at `n = n_m` for every
/// `m >= threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountForm {
    pub threshold: u32,
    pub form: Value,
}

impl CountForm {
    fn new(threshold: u32, form: Value) -> Self {
        CountForm { threshold, form }
    }
}

impl fmt::Display for CountForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (from level {})", format_value(&self.form, Symbols::Count), self.threshold)
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn representable<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::NotRepresentable(msg) => Error::Unsupported(msg),
        e => e,
    })
}

fn beyond_search(what: &str) -> Error {
    Error::unsupported(format!("no level up to the search bound satisfies {what}"))
}

// ---------------------------------------------------------------------------
// numeric shapes

/// `{x ≡ residue (mod step)}`, bounded below by `first` when present.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Prog {
    first: Option<BigInt>,
    residue: BigInt,
    step: BigInt,
}

impl Prog {
    fn new(lower: Option<BigInt>, residue: &BigInt, step: BigInt) -> Prog {
        let residue = residue.mod_floor(&step);
        let first = lower.map(|lo| {
            let shift = (&residue - &lo).mod_floor(&step);
            lo + shift
        });
        Prog { first, residue, step }
    }

    fn contains(&self, x: &BigRational) -> bool {
        x.is_integer()
            && (x.to_integer() - &self.residue).mod_floor(&self.step).is_zero()
            && self.first.as_ref().is_none_or(|f| x.to_integer() >= *f)
    }

    fn is_subset(&self, other: &Prog) -> bool {
        (&self.step % &other.step).is_zero()
            && (&self.residue - &other.residue).mod_floor(&other.step).is_zero()
            && match (&self.first, &other.first) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => a >= b,
            }
    }

    fn intersect(&self, other: &Prog) -> Option<Prog> {
        let g = self.step.gcd(&other.step);
        let diff = &other.residue - &self.residue;
        if !(&diff % &g).is_zero() {
            return None;
        }
        let m1 = &self.step / &g;
        let m2 = &other.step / &g;
        let inv = m1.extended_gcd(&m2).x.mod_floor(&m2);
        let k = ((&diff / &g) * inv).mod_floor(&m2);
        let residue = &self.residue + &self.step * k;
        let step = &self.step * &m2;
        let lower = match (&self.first, &other.first) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(a.max(b).clone()),
        };
        Some(Prog::new(lower, &residue, step))
    }

    fn to_expr(&self) -> SetExpr {
        match &self.first {
            Some(f) if self.step.is_one() && f.is_one() => SetExpr::Naturals,
            Some(f) if self.step.is_one() && f.is_zero() => SetExpr::Naturals0,
            Some(f) => SetExpr::nat_prog(f.clone(), self.step.clone()),
            None if self.step.is_one() => SetExpr::Integers,
            None => SetExpr::int_prog(self.residue.clone(), self.step.clone()),
        }
    }

    fn count_form(&self) -> Result<CountForm> {
        let d = self.step.to_biguint().expect("positive step");
        let inv_d = BigRational::new(BigInt::one(), self.step.clone());
        let divides = least_level_dividing(&d).ok_or_else(|| beyond_search("the step divides n"))?;
        match &self.first {
            Some(f) => {
                let reach = least_level_at_least(&f.to_biguint().expect("nonnegative start"));
                let ceil = f.div_ceil(&self.step);
                let form = Value::alpha().scale(&inv_d) + Value::rational(rat(&(BigInt::one() - ceil)));
                Ok(CountForm::new(divides.max(reach), form))
            }
            None => {
                let two = BigRational::from_integer(2.into());
                let extra = i64::from(self.residue.is_zero());
                let form = Value::alpha().scale(&(two * inv_d)) + Value::integer(extra);
                Ok(CountForm::new(divides, form))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Prog(Prog),
    Rationals,
    Interval(Interval),
    Powers(u32),
}

fn shape(e: &SetExpr) -> Option<Shape> {
    use SetExpr::*;
    let zero = BigInt::zero;
    Some(match e {
        Naturals | Powers(1) => Shape::Prog(Prog::new(Some(BigInt::one()), &zero(), BigInt::one())),
        Naturals0 => Shape::Prog(Prog::new(Some(zero()), &zero(), BigInt::one())),
        Integers => Shape::Prog(Prog::new(None, &zero(), BigInt::one())),
        NatProg { start, step } => Shape::Prog(Prog::new(Some(start.clone()), start, step.clone())),
        IntProg { residue, step } => Shape::Prog(Prog::new(None, residue, step.clone())),
        Powers(k) => Shape::Powers(*k),
        Rationals => Shape::Rationals,
        QInterval(iv) => Shape::Interval(iv.clone()),
        _ => return None,
    })
}

fn is_power(x: &BigRational, k: u32) -> bool {
    if !x.is_integer() || !x.is_positive() {
        return false;
    }
    let x = x.to_integer();
    let root = x.nth_root(k);
    root.pow(k) == x
}

fn shape_contains(s: &Shape, x: &BigRational) -> bool {
    match s {
        Shape::Prog(p) => p.contains(x),
        Shape::Rationals => true,
        Shape::Interval(iv) => iv.contains(x),
        Shape::Powers(k) => is_power(x, *k),
    }
}

/// Integers of `iv`, in increasing order, or `None` if there are too many.
fn integers_in(iv: &Interval) -> Option<(BigInt, BigInt)> {
    let mut lo = iv.lo.ceil().to_integer();
    if !iv.lo_closed && rat(&lo) == iv.lo {
        lo += 1;
    }
    let mut hi = iv.hi.floor().to_integer();
    if !iv.hi_closed && rat(&hi) == iv.hi {
        hi -= 1;
    }
    Some((lo, hi))
}

fn explicit(items: impl Iterator<Item = BigRational>) -> Result<SetExpr> {
    let mut out = Vec::new();
    for x in items {
        if out.len() as u64 >= MAX_EXPLICIT {
            return Err(Error::unsupported("intersection has too many explicit elements"));
        }
        out.push(x);
    }
    Ok(SetExpr::finite(out))
}

fn interval_with_prog(iv: &Interval, p: &Prog) -> Result<SetExpr> {
    let (lo, hi) = integers_in(iv).expect("bounded interval");
    let lo = match &p.first {
        Some(f) => lo.max(f.clone()),
        None => lo,
    };
    let start = &lo + (&p.residue - &lo).mod_floor(&p.step);
    if start > hi {
        return Ok(SetExpr::empty());
    }
    let count: BigInt = (&hi - &start) / &p.step + 1;
    if count > BigInt::from(MAX_EXPLICIT) {
        return Err(Error::unsupported("intersection has too many explicit elements"));
    }
    let step = p.step.clone();
    let n = count.to_u64().expect("bounded count");
    explicit((0..n).map(|i| rat(&(&start + &step * i))))
}

fn interval_with_powers(iv: &Interval, k: u32) -> Result<SetExpr> {
    let (lo, hi) = integers_in(iv).expect("bounded interval");
    if hi < BigInt::one() {
        return Ok(SetExpr::empty());
    }
    let lo = lo.max(BigInt::one());
    let mut m = lo.nth_root(k);
    if m.pow(k) < lo {
        m += 1;
    }
    let last = hi.nth_root(k);
    if last - &m >= BigInt::from(MAX_EXPLICIT) {
        return Err(Error::unsupported("intersection has too many explicit elements"));
    }
    let mut items = Vec::new();
    while m.pow(k) <= hi {
        items.push(rat(&m.pow(k)));
        m += 1;
    }
    Ok(SetExpr::finite(items))
}

fn powers_miss_residue(k: u32, p: &Prog) -> bool {
    let Some(d) = p.step.to_u64().filter(|d| *d <= MAX_EXPLICIT) else {
        return false;
    };
    let r = p.residue.to_u64().expect("residue below step");
    let d_big = BigUint::from(d);
    !(0..d).any(|m| (BigUint::from(m).modpow(&BigUint::from(k), &d_big)) == BigUint::from(r))
}

fn shape_subset(a: &Shape, b: &Shape) -> bool {
    match (a, b) {
        (_, Shape::Rationals) => true,
        (Shape::Prog(p), Shape::Prog(q)) => p.is_subset(q),
        (Shape::Interval(i), Shape::Interval(j)) => i.is_subset(j),
        (Shape::Interval(i), s) if i.is_point() => shape_contains(s, &i.lo),
        (Shape::Powers(k), Shape::Powers(j)) => k % j == 0,
        (Shape::Powers(_), Shape::Prog(q)) => {
            q.step.is_one() && q.first.as_ref().is_none_or(|f| *f <= BigInt::one())
        }
        _ => false,
    }
}

fn shape_disjoint(a: &Shape, b: &Shape) -> bool {
    match (a, b) {
        (Shape::Rationals, _) | (_, Shape::Rationals) => false,
        (Shape::Prog(p), Shape::Prog(q)) => p.intersect(q).is_none(),
        (Shape::Interval(i), Shape::Interval(j)) => i.intersect(j).is_none(),
        (Shape::Interval(i), Shape::Prog(p)) | (Shape::Prog(p), Shape::Interval(i)) => {
            matches!(interval_with_prog(i, p), Ok(SetExpr::Finite(xs)) if xs.is_empty())
        }
        (Shape::Interval(i), Shape::Powers(k)) | (Shape::Powers(k), Shape::Interval(i)) => {
            matches!(interval_with_powers(i, *k), Ok(SetExpr::Finite(xs)) if xs.is_empty())
        }
        (Shape::Powers(k), Shape::Prog(p)) | (Shape::Prog(p), Shape::Powers(k)) => powers_miss_residue(*k, p),
        (Shape::Powers(_), Shape::Powers(_)) => false,
    }
}

fn shape_intersect(a: &Shape, b: &Shape) -> Result<SetExpr> {
    match (a, b) {
        (Shape::Prog(p), Shape::Prog(q)) => Ok(p.intersect(q).map_or_else(SetExpr::empty, |r| r.to_expr())),
        (Shape::Interval(i), Shape::Interval(j)) => {
            Ok(i.intersect(j).map_or_else(SetExpr::empty, SetExpr::QInterval))
        }
        (Shape::Interval(i), Shape::Prog(p)) | (Shape::Prog(p), Shape::Interval(i)) => interval_with_prog(i, p),
        (Shape::Interval(i), Shape::Powers(k)) | (Shape::Powers(k), Shape::Interval(i)) => {
            interval_with_powers(i, *k)
        }
        _ => Err(Error::unsupported("intersection outside the closed family")),
    }
}

fn shape_form(s: &Shape) -> Result<CountForm> {
    match s {
        Shape::Prog(p) => p.count_form(),
        Shape::Rationals => {
            let two_a2 = Value::alpha().checked_mul(&Value::alpha())?.scale(&BigRational::from_integer(2.into()));
            Ok(CountForm::new(1, two_a2 + Value::one()))
        }
        Shape::Interval(iv) => {
            let lo = least_grid_level(&iv.lo).ok_or_else(|| beyond_search("grid membership"))?;
            let hi = least_grid_level(&iv.hi).ok_or_else(|| beyond_search("grid membership"))?;
            let form = Value::alpha().scale(&iv.length())
                + Value::integer(i64::from(iv.hi_closed) - i64::from(!iv.lo_closed));
            Ok(CountForm::new(lo.max(hi), form))
        }
        Shape::Powers(k) => {
            let m0 = least_level_for_root(&BigUint::from(*k)).ok_or_else(|| beyond_search("integral roots"))?;
            let root = Value::power(&Value::alpha(), &Value::rational(BigRational::new(1.into(), (*k).into())))?;
            Ok(CountForm::new(m0, root))
        }
    }
}

// ---------------------------------------------------------------------------
// membership, kinds, certification

/// Whether the rational `x` belongs to `e`.
pub fn contains(e: &SetExpr, x: &BigRational) -> bool {
    use SetExpr::*;
    if let Some(s) = shape(e) {
        return shape_contains(&s, x);
    }
    match e {
        Finite(xs) => xs.binary_search(x).is_ok(),
        RInterval(iv) => iv.contains(x),
        Union(a, b) => contains(a, x) || contains(b, x),
        Intersect(a, b) => contains(a, x) && contains(b, x),
        Diff(a, b) => contains(a, x) && !contains(b, x),
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Empty,
    Number,
    Pair,
    FiniteSet,
    Function,
    Mixed,
}

fn join(a: Kind, b: Kind) -> Kind {
    match (a, b) {
        (Kind::Empty, k) | (k, Kind::Empty) => k,
        (a, b) if a == b => a,
        _ => Kind::Mixed,
    }
}

fn kind(e: &SetExpr) -> Kind {
    use SetExpr::*;
    match e {
        Finite(xs) if xs.is_empty() => Kind::Empty,
        Union(a, b) => join(kind(a), kind(b)),
        Intersect(a, b) => match (kind(a), kind(b)) {
            (Kind::Empty, _) | (_, Kind::Empty) => Kind::Empty,
            (Kind::Mixed, k) | (k, Kind::Mixed) => k,
            (x, y) if x == y => x,
            _ => Kind::Empty,
        },
        Diff(a, _) => kind(a),
        Product(..) => Kind::Pair,
        PFin(_) => Kind::FiniteSet,
        FFin(..) => Kind::Function,
        _ => Kind::Number,
    }
}

/// Certified emptiness.
pub fn is_empty(e: &SetExpr) -> bool {
    use SetExpr::*;
    match e {
        Finite(xs) => xs.is_empty(),
        Union(a, b) => is_empty(a) && is_empty(b),
        Intersect(a, b) => is_disjoint(a, b),
        Diff(a, b) => is_subset(a, b),
        Product(a, b) => is_empty(a) || is_empty(b),
        _ => false,
    }
}

/// Certified inclusion `a ⊆ b`. `false` means "not certified".
pub fn is_subset(a: &SetExpr, b: &SetExpr) -> bool {
    use SetExpr::*;
    if a == b || is_empty(a) {
        return true;
    }
    if let Finite(xs) = a {
        return xs.iter().all(|x| contains(b, x));
    }
    match (a, b) {
        (Union(x, y), _) => return is_subset(x, b) && is_subset(y, b),
        (Intersect(x, y), _) if is_subset(x, b) || is_subset(y, b) => return true,
        (Diff(x, _), _) if is_subset(x, b) => return true,
        _ => {}
    }
    match b {
        Union(x, y) if is_subset(a, x) || is_subset(a, y) => return true,
        Intersect(x, y) => return is_subset(a, x) && is_subset(a, y),
        Diff(x, y) => return is_subset(a, x) && is_disjoint(a, y),
        _ => {}
    }
    match (a, b) {
        (Product(x1, y1), Product(x2, y2)) => is_subset(x1, x2) && is_subset(y1, y2),
        (PFin(x), PFin(y)) => is_subset(x, y),
        _ => match (shape(a), shape(b)) {
            (Some(s), Some(t)) => shape_subset(&s, &t),
            _ => false,
        },
    }
}

/// Certified disjointness. `false` means "not certified".
pub fn is_disjoint(a: &SetExpr, b: &SetExpr) -> bool {
    use SetExpr::*;
    if is_empty(a) || is_empty(b) {
        return true;
    }
    let (ka, kb) = (kind(a), kind(b));
    if ka != Kind::Mixed && kb != Kind::Mixed && ka != kb {
        return true;
    }
    if let Finite(xs) = a {
        return xs.iter().all(|x| !contains(b, x));
    }
    if let Finite(xs) = b {
        return xs.iter().all(|x| !contains(a, x));
    }
    match (a, b) {
        (Union(x, y), _) => is_disjoint(x, b) && is_disjoint(y, b),
        (_, Union(x, y)) => is_disjoint(a, x) && is_disjoint(a, y),
        (Intersect(x, y), _) => is_disjoint(x, b) || is_disjoint(y, b),
        (_, Intersect(x, y)) => is_disjoint(a, x) || is_disjoint(a, y),
        (Diff(x, y), _) => is_disjoint(x, b) || is_subset(b, y),
        (_, Diff(x, y)) => is_disjoint(a, x) || is_subset(a, y),
        (Product(x1, y1), Product(x2, y2)) => is_disjoint(x1, x2) || is_disjoint(y1, y2),
        _ => match (shape(a), shape(b)) {
            (Some(s), Some(t)) => shape_disjoint(&s, &t),
            _ => false,
        },
    }
}

/// An expression for `a ∩ b` without intersection nodes at the top, built
/// from certified relations, progressions, intervals and membership.
pub fn intersect(a: &SetExpr, b: &SetExpr) -> Result<SetExpr> {
    use SetExpr::*;
    if is_disjoint(a, b) {
        return Ok(SetExpr::empty());
    }
    if is_subset(a, b) {
        return simplify(a);
    }
    if is_subset(b, a) {
        return simplify(b);
    }
    match (a, b) {
        (Finite(xs), other) | (other, Finite(xs)) => {
            Ok(SetExpr::finite(xs.iter().filter(|x| contains(other, x)).cloned()))
        }
        (Intersect(x, y), other) | (other, Intersect(x, y)) => intersect(&intersect(x, y)?, other),
        (Union(x, y), other) | (other, Union(x, y)) => {
            Ok(SetExpr::union(intersect(x, other)?, intersect(y, other)?))
        }
        (Diff(x, y), other) | (other, Diff(x, y)) => Ok(SetExpr::diff(intersect(x, other)?, (**y).clone())),
        (Product(x1, y1), Product(x2, y2)) => Ok(SetExpr::prod(intersect(x1, x2)?, intersect(y1, y2)?)),
        (PFin(x), PFin(y)) => Ok(SetExpr::pfin(intersect(x, y)?)),
        _ => match (shape(a), shape(b)) {
            (Some(s), Some(t)) => shape_intersect(&s, &t),
            _ => Err(Error::unsupported(format!("cannot intersect {a} with {b}"))),
        },
    }
}

fn simplify(e: &SetExpr) -> Result<SetExpr> {
    match e {
        SetExpr::Intersect(x, y) => intersect(x, y),
        other => Ok(other.clone()),
    }
}

// ---------------------------------------------------------------------------
// closed forms

/// The eventual closed form of `|E ∩ λ_m|`.
pub fn count_form(e: &SetExpr) -> Result<CountForm> {
    use SetExpr::*;
    if let Some(s) = shape(e) {
        return shape_form(&s);
    }
    match e {
        Finite(xs) => {
            let mut m0 = 1;
            for x in xs {
                m0 = m0.max(least_grid_level(x).ok_or_else(|| beyond_search("grid membership"))?);
            }
            Ok(CountForm::new(m0, Value::integer(xs.len() as i64)))
        }
        RInterval(_) => Err(Error::unsupported(
            "real intervals have no level restriction; use the measure calculus",
        )),
        Union(a, b) => {
            let (fa, fb) = (count_form(a)?, count_form(b)?);
            let common = count_form(&intersect(a, b)?)?;
            Ok(CountForm::new(
                fa.threshold.max(fb.threshold).max(common.threshold),
                fa.form + fb.form - common.form,
            ))
        }
        Intersect(a, b) => count_form(&intersect(a, b)?),
        Diff(a, b) => {
            let fa = count_form(a)?;
            let common = count_form(&intersect(a, b)?)?;
            Ok(CountForm::new(fa.threshold.max(common.threshold), fa.form - common.form))
        }
        Product(a, b) => {
            let (fa, fb) = (count_form(a)?, count_form(b)?);
            let form = representable(fa.form.checked_mul(&fb.form))?;
            Ok(CountForm::new(fa.threshold.max(fb.threshold), form))
        }
        PFin(a) => {
            let fa = count_form(a)?;
            if fa.form.has_exp() {
                return Err(Error::unsupported("iterated finite powersets"));
            }
            let form = representable(Value::power(&Value::integer(2), &fa.form))?;
            Ok(CountForm::new(fa.threshold, form))
        }
        FFin(x, t) => {
            let fx = count_form(x)?;
            let ft = count_form(t)?;
            if ft.form.is_zero() {
                return Err(Error::EmptyTarget);
            }
            if ft.form.has_exp() || fx.form.has_exp() {
                return Err(Error::unsupported("finite functions between exponential-size sets"));
            }
            let form = representable(Value::power(&ft.form, &fx.form))?;
            let mut m0 = fx.threshold.max(ft.threshold);
            // below this level the target restriction may be empty
            while m0 <= MAX_LEVEL && evaluate_at_level(&ft.form, m0).map_or(true, |v| v < BigRational::one()) {
                m0 += 1;
            }
            Ok(CountForm::new(m0, form))
        }
        _ => unreachable!("atoms are handled by shape"),
    }
}

/// `num(E)`. Expressions with real intervals go through the measure
/// calculus.
pub fn num(e: &SetExpr) -> Result<Value> {
    if e.mentions_reals() {
        return crate::measure::num_real(e);
    }
    Ok(count_form(e)?.form)
}

// ---------------------------------------------------------------------------
// verification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Match,
    Mismatch,
    Skipped,
}

/// One level of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub m: u32,
    pub n: String,
    pub brute: Option<String>,
    pub closed: Option<String>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub value: String,
    pub count_form: String,
    pub threshold: u32,
    pub report: Vec<LevelCheck>,
    pub pass: bool,
}

impl Report {
    /// Tab-separated rows `m n_m brute closed match`, then PASS or FAIL.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.report {
            let status = match row.status {
                CheckStatus::Match => "yes",
                CheckStatus::Mismatch => "NO",
                CheckStatus::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                row.m,
                row.n,
                row.brute.as_deref().unwrap_or("-"),
                row.closed.as_deref().unwrap_or("-"),
                status
            ));
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }

    pub fn checked_levels(&self) -> usize {
        self.report.iter().filter(|r| r.status != CheckStatus::Skipped).count()
    }
}

/// `n_m` in decimal when short, as `m!^m!` otherwise.
pub fn level_label(m: u32) -> String {
    let digits = level_value(m).to_string();
    if digits.len() <= 64 {
        digits
    } else {
        let f = crate::label_net::factorial(m);
        format!("{f}^{f}")
    }
}

/// Compares the closed form with brute-force counts at every level from the
/// threshold up to `m_max`. Infeasible levels are skipped, never failed.
pub fn verify(e: &SetExpr, m_max: u32, config: &BruteConfig) -> Result<Report> {
    let cf = count_form(e)?;
    let mut rows = Vec::new();
    for m in cf.threshold..=m_max.min(MAX_LEVEL) {
        let closed = evaluate_integer(&cf.form, m);
        let brute = count_brute(e, m, config);
        let (status, note) = match (&brute, &closed) {
            (Ok(b), Ok(c)) if BigInt::from(b.clone()) == *c => (CheckStatus::Match, None),
            (Ok(_), Ok(_)) => (CheckStatus::Mismatch, None),
            (Err(err), _) | (_, Err(err)) => match err {
                Error::ComplexityExceeded { .. } => (CheckStatus::Skipped, Some(err.to_string())),
                _ => return Err(err.clone()),
            },
        };
        rows.push(LevelCheck {
            m,
            n: level_label(m),
            brute: brute.ok().map(|b| b.to_string()),
            closed: closed.ok().map(|c| c.to_string()),
            status,
            note,
        });
    }
    let pass = rows.iter().all(|r| r.status != CheckStatus::Mismatch);
    Ok(Report {
        value: cf.form.to_string(),
        count_form: format_value(&cf.form, Symbols::Count),
        threshold: cf.threshold,
        report: rows,
        pass,
    })
}
