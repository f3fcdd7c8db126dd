//! Expression languages for definable sets and ordinals.
//!
//! Set grammar:
//!
//! ```text
//! set     := "N" | "N0" | "Z" | "Q" | finite
//!          | "mult(" int ")" | "natprog(" int "," int ")" | "intprog(" int "," int ")"
//!          | "powers(" int ")" | qint | rint
//!          | "union(" set "," set ")" | "inter(" set "," set ")" | "diff(" set "," set ")"
//!          | "prod(" set "," set ")" | "pfin(" set ")" | "ffin(" set "," set ")"
//! finite  := "{" [ rat { "," rat } ] "}"
//! qint    := "qint" bracket rat "," rat bracket
//! rint    := "rint" bracket rat "," rat bracket
//! rat     := int | int "/" posint
//! ```
//!
//! Ordinal grammar: atoms `w`, naturals and `theta(j)`, combined with the
//! standard operations `+ * ^` and the natural operations `<+> <*>`.
//! `^` binds tightest and associates to the right; `*` and `<*>` share a
//! level above `+` and `<+>`, both left-associative.

mod lexer;
mod parser;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use lexer::{tokenize, Cursor, Token, TokenKind};
pub use parser::{parse_ordinal, parse_rational, parse_set};

/// An interval with rational endpoints and closure flags.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational, lo_closed: bool, hi_closed: bool) -> Self {
        Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    /// `[lo, hi)`
    pub fn half_open(lo: BigRational, hi: BigRational) -> Self {
        Interval::new(lo, hi, true, false)
    }

    pub fn point(x: BigRational) -> Self {
        Interval::new(x.clone(), x, true, true)
    }

    /// Endpoints are ordered, and equal endpoints describe a closed point.
    pub fn is_well_formed(&self) -> bool {
        self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    /// Intersection, `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        let iv = Interval::new(lo, hi, lo_closed, hi_closed);
        iv.is_well_formed().then_some(iv)
    }

    pub fn translate(&self, r: &BigRational) -> Interval {
        Interval::new(&self.lo + r, &self.hi + r, self.lo_closed, self.hi_closed)
    }

    /// Whether `self` is a subset of `other`.
    pub fn is_subset(&self, other: &Interval) -> bool {
        other.contains_bound(&self.lo, self.lo_closed, true)
            && other.contains_bound(&self.hi, self.hi_closed, false)
    }

    fn contains_bound(&self, x: &BigRational, closed: bool, is_lo: bool) -> bool {
        if closed || self.is_point() {
            return self.contains(x);
        }
        // an open end at x only needs points arbitrarily close to x
        if is_lo {
            x >= &self.lo && x < &self.hi
        } else {
            x > &self.lo && x <= &self.hi
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A definable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetExpr {
    /// A finite set of rationals, sorted and deduplicated.
    Finite(Vec<BigRational>),
    /// `{1, 2, 3, ...}`
    Naturals,
    /// `{0, 1, 2, ...}`
    Naturals0,
    Integers,
    Rationals,
    /// `{start + k*step : k >= 0}`
    NatProg { start: BigInt, step: BigInt },
    /// `{residue + k*step : k in Z}`
    IntProg { residue: BigInt, step: BigInt },
    /// `{m^k : m in N}`
    Powers(u32),
    QInterval(Interval),
    RInterval(Interval),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    Product(Box<SetExpr>, Box<SetExpr>),
    /// Finite subsets.
    PFin(Box<SetExpr>),
    /// Finite partial functions from the first set into the second.
    FFin(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    pub fn finite(items: impl IntoIterator<Item = BigRational>) -> SetExpr {
        let mut items: Vec<BigRational> = items.into_iter().collect();
        items.sort();
        items.dedup();
        SetExpr::Finite(items)
    }

    pub fn empty() -> SetExpr {
        SetExpr::Finite(Vec::new())
    }

    /// Positive multiples of `d`.
    pub fn multiples(d: impl Into<BigInt>) -> SetExpr {
        let d = d.into();
        SetExpr::NatProg {
            start: d.clone(),
            step: d,
        }
    }

    pub fn nat_prog(start: impl Into<BigInt>, step: impl Into<BigInt>) -> SetExpr {
        SetExpr::NatProg {
            start: start.into(),
            step: step.into(),
        }
    }

    pub fn int_prog(residue: impl Into<BigInt>, step: impl Into<BigInt>) -> SetExpr {
        SetExpr::IntProg {
            residue: residue.into(),
            step: step.into(),
        }
    }

    pub fn union(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn inter(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Intersect(Box::new(a), Box::new(b))
    }

    pub fn diff(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Diff(Box::new(a), Box::new(b))
    }

    pub fn prod(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn pfin(a: SetExpr) -> SetExpr {
        SetExpr::PFin(Box::new(a))
    }

    pub fn ffin(domain: SetExpr, target: SetExpr) -> SetExpr {
        SetExpr::FFin(Box::new(domain), Box::new(target))
    }

    /// Whether a real-interval atom occurs anywhere in the expression.
    pub fn mentions_reals(&self) -> bool {
        use SetExpr::*;
        match self {
            RInterval(_) => true,
            Union(a, b) | Intersect(a, b) | Diff(a, b) | Product(a, b) | FFin(a, b) => {
                a.mentions_reals() || b.mentions_reals()
            }
            PFin(a) => a.mentions_reals(),
            _ => false,
        }
    }

    /// Structural well-formedness; the parser only produces expressions
    /// that pass it.
    pub fn validate(&self) -> Result<(), String> {
        use SetExpr::*;
        match self {
            Finite(xs) => {
                if xs.windows(2).all(|w| w[0] < w[1]) {
                    Ok(())
                } else {
                    Err("finite set elements must be sorted and distinct".into())
                }
            }
            NatProg { start, step } => {
                if start.is_negative() {
                    Err(format!("natprog start {start} is negative"))
                } else if !step.is_positive() {
                    Err(format!("natprog step {step} is not positive"))
                } else {
                    Ok(())
                }
            }
            IntProg { step, .. } => {
                if step.is_positive() {
                    Ok(())
                } else {
                    Err(format!("intprog step {step} is not positive"))
                }
            }
            Powers(k) => {
                if *k >= 1 {
                    Ok(())
                } else {
                    Err("powers exponent must be at least 1".into())
                }
            }
            QInterval(iv) | RInterval(iv) => {
                if iv.is_well_formed() {
                    Ok(())
                } else {
                    Err(format!("interval {iv} is empty or reversed"))
                }
            }
            Union(a, b) | Intersect(a, b) | Diff(a, b) | Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            PFin(a) => a.validate(),
            FFin(a, b) => {
                if matches!(**b, Finite(ref xs) if xs.is_empty()) {
                    return Err("ffin target set is empty".into());
                }
                a.validate()?;
                b.validate()
            }
            Naturals | Naturals0 | Integers | Rationals => Ok(()),
        }
    }
}

fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SetExpr::*;
        match self {
            Finite(xs) => {
                let items: Vec<String> = xs.iter().map(fmt_rational).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            Naturals => write!(f, "N"),
            Naturals0 => write!(f, "N0"),
            Integers => write!(f, "Z"),
            Rationals => write!(f, "Q"),
            NatProg { start, step } if start == step && !step.is_zero() => write!(f, "mult({step})"),
            NatProg { start, step } => write!(f, "natprog({start},{step})"),
            IntProg { residue, step } => write!(f, "intprog({residue},{step})"),
            Powers(k) => write!(f, "powers({k})"),
            QInterval(iv) => write!(f, "qint{iv}"),
            RInterval(iv) => write!(f, "rint{iv}"),
            Union(a, b) => write!(f, "union({a},{b})"),
            Intersect(a, b) => write!(f, "inter({a},{b})"),
            Diff(a, b) => write!(f, "diff({a},{b})"),
            Product(a, b) => write!(f, "prod({a},{b})"),
            PFin(a) => write!(f, "pfin({a})"),
            FFin(a, b) => write!(f, "ffin({a},{b})"),
        }
    }
}

/// An ordinal expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrdExpr {
    Omega,
    Nat(BigUint),
    /// The `j`-th irreducible ordinal.
    Theta(u32),
    OrdAdd(Box<OrdExpr>, Box<OrdExpr>),
    OrdMul(Box<OrdExpr>, Box<OrdExpr>),
    OrdPow(Box<OrdExpr>, Box<OrdExpr>),
    NatAdd(Box<OrdExpr>, Box<OrdExpr>),
    NatMul(Box<OrdExpr>, Box<OrdExpr>),
}

impl OrdExpr {
    fn precedence(&self) -> u8 {
        match self {
            OrdExpr::OrdAdd(..) | OrdExpr::NatAdd(..) => 1,
            OrdExpr::OrdMul(..) | OrdExpr::NatMul(..) => 2,
            OrdExpr::OrdPow(..) => 3,
            _ => 4,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for OrdExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OrdExpr::*;
        let (a, b, op, prec) = match self {
            Omega => return write!(f, "w"),
            Nat(k) => return write!(f, "{k}"),
            Theta(j) => return write!(f, "theta({j})"),
            OrdAdd(a, b) => (a, b, "+", 1),
            NatAdd(a, b) => (a, b, " <+> ", 1),
            OrdMul(a, b) => (a, b, "*", 2),
            NatMul(a, b) => (a, b, " <*> ", 2),
            OrdPow(a, b) => {
                a.fmt_child(f, 4)?;
                write!(f, "^")?;
                return b.fmt_child(f, 3);
            }
        };
        a.fmt_child(f, prec)?;
        write!(f, "{op}")?;
        b.fmt_child(f, prec + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn render_examples() {
        assert_eq!(SetExpr::Naturals.to_string(), "N");
        assert_eq!(
            SetExpr::QInterval(Interval::new(q(0, 1), q(1, 2), true, false)).to_string(),
            "qint[0,1/2)"
        );
        let e = OrdExpr::NatAdd(Box::new(OrdExpr::Omega), Box::new(OrdExpr::Nat(1u32.into())));
        assert_eq!(e.to_string(), "w <+> 1");
        assert_eq!(SetExpr::multiples(3).to_string(), "mult(3)");
    }

    #[test]
    fn interval_relations() {
        let a = Interval::half_open(q(0, 1), q(1, 1));
        let b = Interval::new(q(0, 1), q(1, 1), false, false);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.intersect(&Interval::half_open(q(1, 1), q(2, 1))).is_none());
        let c = Interval::new(q(1, 1), q(2, 1), true, true);
        let closed = Interval::new(q(0, 1), q(1, 1), true, true);
        assert_eq!(closed.intersect(&c), Some(Interval::point(q(1, 1))));
    }

    #[test]
    fn validation_rejects_malformed() {
        assert!(SetExpr::nat_prog(-1, 2).validate().is_err());
        assert!(SetExpr::int_prog(0, 0).validate().is_err());
        assert!(SetExpr::ffin(SetExpr::Naturals, SetExpr::empty()).validate().is_err());
        assert!(SetExpr::QInterval(Interval::new(q(1, 1), q(1, 1), true, false))
            .validate()
            .is_err());
        assert!(SetExpr::QInterval(Interval::point(q(1, 1))).validate().is_ok());
    }
}
