//! Numerosities of real plurintervals and the measures derived from counting.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result, SyntaxError};
use crate::euclid_field::{classify_value, sign_value, st_quotient, Class, Quotient, Sign, StandardPart, Value};
use crate::numerosity::{count_form, num};
use crate::setlang::{tokenize, Cursor, Interval, SetExpr, TokenKind};

/// A finite union of intervals with rational endpoints, kept sorted, with
/// overlapping or touching pieces merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlurInterval {
    pieces: Vec<Interval>,
}

impl PlurInterval {
    pub fn empty() -> Self {
        PlurInterval::default()
    }

    /// Normalizes an arbitrary list of pieces. Ill-formed pieces are empty
    /// and dropped.
    pub fn new(pieces: impl IntoIterator<Item = Interval>) -> Self {
        let mut pieces: Vec<Interval> = pieces.into_iter().filter(Interval::is_well_formed).collect();
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::new();
        for p in pieces {
            match out.last_mut() {
                Some(last) if touches(last, &p) => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    } else if p.hi == last.hi {
                        last.hi_closed |= p.hi_closed;
                    }
                }
                _ => out.push(p),
            }
        }
        PlurInterval { pieces: out }
    }

    pub fn interval(iv: Interval) -> Self {
        PlurInterval::new([iv])
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn union(&self, other: &PlurInterval) -> PlurInterval {
        PlurInterval::new(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn intersect(&self, other: &PlurInterval) -> PlurInterval {
        PlurInterval::new(
            self.pieces
                .iter()
                .flat_map(|a| other.pieces.iter().filter_map(move |b| a.intersect(b))),
        )
    }

    pub fn difference(&self, other: &PlurInterval) -> PlurInterval {
        let mut current = self.pieces.clone();
        for cut in &other.pieces {
            current = current.iter().flat_map(|p| subtract(p, cut)).collect();
        }
        PlurInterval::new(current)
    }

    pub fn translate(&self, r: &BigRational) -> PlurInterval {
        PlurInterval {
            pieces: self.pieces.iter().map(|p| p.translate(r)).collect(),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn total_length(&self) -> BigRational {
        self.pieces.iter().map(Interval::length).sum()
    }

    /// Parses `[0,1) u [2,5/2]`; `{}` is the empty plurinterval.
    pub fn parse(text: &str) -> Result<PlurInterval, SyntaxError> {
        let mut cur = Cursor::new(tokenize(text, true)?);
        if cur.eat_sym("{") {
            cur.expect_sym("}")?;
            cur.expect_end()?;
            return Ok(PlurInterval::empty());
        }
        let mut pieces = vec![piece(&mut cur)?];
        while matches!(&cur.peek().kind, TokenKind::Ident(u) if u == "u") {
            cur.next();
            pieces.push(piece(&mut cur)?);
        }
        cur.expect_end()?;
        Ok(PlurInterval::new(pieces))
    }
}

fn rational(cur: &mut Cursor) -> Result<BigRational, SyntaxError> {
    let (num, _) = cur.expect_int()?;
    if cur.eat_sym("/") {
        let (den, pos) = cur.expect_int()?;
        if !den.is_positive() {
            return Err(SyntaxError::new(pos, &["positive denominator"], den.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    Ok(BigRational::from_integer(num))
}

fn piece(cur: &mut Cursor) -> Result<Interval, SyntaxError> {
    let start = cur.peek().pos;
    let lo_closed = if cur.eat_sym("[") {
        true
    } else if cur.eat_sym("(") {
        false
    } else {
        return Err(cur.error(&["'['", "'('"]));
    };
    let lo = rational(cur)?;
    cur.expect_sym(",")?;
    let hi = rational(cur)?;
    let hi_closed = if cur.eat_sym("]") {
        true
    } else if cur.eat_sym(")") {
        false
    } else {
        return Err(cur.error(&["']'", "')'"]));
    };
    let iv = Interval::new(lo, hi, lo_closed, hi_closed);
    if !iv.is_well_formed() {
        return Err(SyntaxError::new(start, &["nonempty interval"], iv.to_string()));
    }
    Ok(iv)
}

/// `a` and `b` overlap or share an endpoint that one of them contains.
fn touches(a: &Interval, b: &Interval) -> bool {
    b.lo < a.hi || (b.lo == a.hi && (a.hi_closed || b.lo_closed))
}

fn subtract(p: &Interval, cut: &Interval) -> Vec<Interval> {
    if p.intersect(cut).is_none() {
        return vec![p.clone()];
    }
    let mut out = Vec::new();
    let left = Interval::new(p.lo.clone(), cut.lo.clone(), p.lo_closed, !cut.lo_closed);
    if left.is_well_formed() {
        out.push(left);
    }
    let right = Interval::new(cut.hi.clone(), p.hi.clone(), !cut.hi_closed, p.hi_closed);
    if right.is_well_formed() {
        out.push(right);
    }
    out
}

impl fmt::Display for PlurInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `num(P)` in the unit `b`: each piece `[p,q)` contributes `(q-p)*b`, a
/// closed right end adds 1 and an open left end removes 1.
pub fn num_plurinterval(p: &PlurInterval) -> Value {
    let mut out = Value::zero();
    for piece in &p.pieces {
        let correction = i64::from(piece.hi_closed) - i64::from(!piece.lo_closed);
        out = out + Value::beta().scale(&piece.length()) + Value::integer(correction);
    }
    out
}

/// The plurinterval described by a set expression over real intervals and
/// finite sets.
pub fn to_plurinterval(e: &SetExpr) -> Result<PlurInterval> {
    use SetExpr::*;
    Ok(match e {
        RInterval(iv) => PlurInterval::interval(iv.clone()),
        Finite(xs) => PlurInterval::new(xs.iter().cloned().map(Interval::point)),
        Union(a, b) => to_plurinterval(a)?.union(&to_plurinterval(b)?),
        Intersect(a, b) => to_plurinterval(a)?.intersect(&to_plurinterval(b)?),
        Diff(a, b) => to_plurinterval(a)?.difference(&to_plurinterval(b)?),
        other => {
            return Err(Error::unsupported(format!(
                "{other} cannot be combined with real intervals"
            )))
        }
    })
}

/// `num(E)` for a set built from real intervals and finite sets.
pub fn num_real(e: &SetExpr) -> Result<Value> {
    Ok(num_plurinterval(&to_plurinterval(e)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MeasureValue {
    Rational(BigRational),
    PosInfinity,
    Unknown,
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValue::Rational(r) => write!(f, "{r}"),
            MeasureValue::PosInfinity => f.write_str("+inf"),
            MeasureValue::Unknown => f.write_str("unknown"),
        }
    }
}

/// `st(v / unit)` for a positive infinite unit.
pub fn mu_value(v: &Value, unit: &Value) -> Result<MeasureValue> {
    if sign_value(unit) != Sign::Positive || classify_value(unit) != Class::Infinite {
        return Err(Error::InvalidUnit(format!("{unit} is not a positive infinite value")));
    }
    Ok(match st_quotient(&Quotient::new(v.clone(), unit.clone())?) {
        StandardPart::Rational(r) => MeasureValue::Rational(r),
        StandardPart::PosInfinity => MeasureValue::PosInfinity,
        StandardPart::NegInfinity | StandardPart::Unknown => MeasureValue::Unknown,
    })
}

/// The numerosity measure `mu_unit(E) = st(num(E) / unit)`.
pub fn mu(e: &SetExpr, unit: &Value) -> Result<MeasureValue> {
    mu_value(&num(e)?, unit)
}

pub fn mu_plurinterval(p: &PlurInterval, unit: &Value) -> Result<MeasureValue> {
    mu_value(&num_plurinterval(p), unit)
}

/// Peano-Jordan measure from counting the rational grid points of `P`.
pub fn pj_measure(p: &PlurInterval) -> Result<MeasureValue> {
    let mut count = Value::zero();
    for piece in &p.pieces {
        count = count + count_form(&SetExpr::QInterval(piece.clone()))?.form;
    }
    mu_value(&count, &Value::alpha())
}

/// Lebesgue measure as `mu_b`.
pub fn lebesgue_measure(p: &PlurInterval) -> MeasureValue {
    mu_plurinterval(p, &Value::beta()).expect("b is a valid unit")
}

impl MeasureValue {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            MeasureValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn zero() -> Self {
        MeasureValue::Rational(BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::parse_set;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(text: &str) -> PlurInterval {
        PlurInterval::parse(text).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(p("[2,3) u [0,1) u [1,3/2]").to_string(), "[0,3/2] u [2,3)");
        assert_eq!(p("[0,1) u (1,2]").to_string(), "[0,1) u (1,2]");
        assert_eq!(p("[0,1] u (1,2]").to_string(), "[0,2]");
        assert_eq!(p("[0,5] u [1,2)").to_string(), "[0,5]");
        assert_eq!(p("{}").to_string(), "{}");
        let q = p("[0,3) u [5,6]");
        assert_eq!(PlurInterval::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn set_operations() {
        let a = p("[0,2)");
        let b = p("[1,3]");
        assert_eq!(a.intersect(&b).to_string(), "[1,2)");
        assert_eq!(a.difference(&b).to_string(), "[0,1)");
        assert_eq!(b.difference(&a).to_string(), "[2,3]");
        assert_eq!(p("[0,3]").difference(&p("[1,1]")).to_string(), "[0,1) u (1,3]");
        assert_eq!(a.union(&b).to_string(), "[0,3]");
    }

    #[test]
    fn numerosities() {
        assert_eq!(num_plurinterval(&p("[0,1)")), Value::beta());
        assert_eq!(num_plurinterval(&p("[0,1]")), Value::beta() + Value::one());
        assert_eq!(num_plurinterval(&p("[2,5) u [7,9)")), Value::beta().scale(&r(5, 1)));
        let e = parse_set("union(rint[0,1),{5})").unwrap();
        assert_eq!(num(&e).unwrap(), Value::beta() + Value::one());
    }

    #[test]
    fn measures() {
        let b = Value::beta();
        assert_eq!(mu(&parse_set("rint[0,3/4)").unwrap(), &b).unwrap(), MeasureValue::Rational(r(3, 4)));
        let mult2 = parse_set("mult(2)").unwrap();
        assert_eq!(mu(&mult2, &Value::alpha()).unwrap(), MeasureValue::Rational(r(1, 2)));
        assert_eq!(mu(&parse_set("{1,2}").unwrap(), &b).unwrap(), MeasureValue::zero());
        assert_eq!(pj_measure(&p("[0,1/2)")).unwrap(), MeasureValue::Rational(r(1, 2)));
        assert_eq!(pj_measure(&p("[0,1) u [2,3)")).unwrap(), MeasureValue::Rational(r(2, 1)));
        assert_eq!(pj_measure(&p("[3,3]")).unwrap(), MeasureValue::zero());
        assert_eq!(lebesgue_measure(&p("(0,1)")), MeasureValue::Rational(r(1, 1)));
        assert_eq!(lebesgue_measure(&p("[2,5) u [7,9)")), MeasureValue::Rational(r(5, 1)));
        assert!(matches!(mu(&mult2, &Value::integer(3)), Err(Error::InvalidUnit(_))));
        assert_eq!(mu(&parse_set("Q").unwrap(), &Value::alpha()).unwrap(), MeasureValue::PosInfinity);
    }
}
