use std::fmt::{self, Display, Write};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::puiseux::{Exponent, Puiseux};
use super::standard::{Quotient, StandardPart};
use super::value::Value;
use crate::error::{Error, Result};
use crate::setlang::{tokenize, Cursor, TokenKind};

/// Letters used for the two units when printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbols {
    /// `a` and `b`.
    Units,
    /// `n` for the level size; used by counting forms.
    Count,
}

impl Symbols {
    fn alpha(self) -> &'static str {
        match self {
            Symbols::Units => "a",
            Symbols::Count => "n",
        }
    }
}

fn power_suffix(e: &BigRational) -> String {
    if e.is_one() {
        String::new()
    } else if e.is_integer() {
        format!("^{e}")
    } else {
        format!("^({e})")
    }
}

fn monomial_body(e: &Exponent, sym: Symbols) -> String {
    let mut parts = Vec::new();
    if !e.alpha.is_zero() {
        parts.push(format!("{}{}", sym.alpha(), power_suffix(&e.alpha)));
    }
    if e.beta > 0 {
        parts.push(format!("b{}", power_suffix(&BigRational::from_integer(e.beta.into()))));
    }
    parts.join("*")
}

/// `|c| * body`, without sign.
fn scaled(c: &BigRational, body: &str) -> String {
    let c = c.abs();
    if body.is_empty() {
        c.to_string()
    } else if c.is_one() {
        body.to_string()
    } else if c.is_integer() {
        format!("{c}*{body}")
    } else {
        format!("({c})*{body}")
    }
}

fn join_signed(out: &mut String, terms: Vec<(bool, String)>) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (i, (negative, body)) in terms.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
}

fn puiseux_terms(p: &Puiseux, sym: Symbols) -> Vec<(bool, String)> {
    p.terms()
        .map(|(e, c)| (c.is_negative(), scaled(c, &monomial_body(e, sym))))
        .collect()
}

pub fn format_puiseux(p: &Puiseux, sym: Symbols) -> String {
    let mut out = String::new();
    join_signed(&mut out, puiseux_terms(p, sym));
    out
}

fn format_base(p: &Puiseux, sym: Symbols) -> String {
    match p.as_constant() {
        Some(c) if c.is_integer() => c.to_string(),
        _ => {
            let inner = format_puiseux(p, sym);
            let atomic = p.len() == 1 && p.leading().is_some_and(|(e, c)| c.is_one() && e.alpha.is_integer() && e.beta == 0);
            if atomic {
                inner
            } else {
                format!("({inner})")
            }
        }
    }
}

pub fn format_value(v: &Value, sym: Symbols) -> String {
    let mut terms = Vec::new();
    for t in v.exp_terms() {
        let body = format!("{}^({})", format_base(&t.base, sym), format_puiseux(&t.exponent, sym));
        terms.push((t.coeff.is_negative(), scaled(&t.coeff, &body)));
    }
    terms.extend(puiseux_terms(v.poly(), sym));
    let mut out = String::new();
    join_signed(&mut out, terms);
    out
}

impl Display for Puiseux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_puiseux(self, Symbols::Units))
    }
}

impl Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_value(self, Symbols::Units))
    }
}

impl Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "({})/({})", self.numerator(), self.denominator()),
        }
    }
}

impl Display for StandardPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardPart::Rational(r) => write!(f, "{r}"),
            StandardPart::PosInfinity => f.write_str("+inf"),
            StandardPart::NegInfinity => f.write_str("-inf"),
            StandardPart::Unknown => f.write_str("unknown"),
        }
    }
}

/// Parses an arithmetic expression over integers, `a`/`alpha` and
/// `b`/`beta` with `+ - * / ^` and parentheses.
pub fn parse_value(text: &str) -> Result<Quotient> {
    let mut cur = Cursor::new(tokenize(text, false)?);
    let q = expr(&mut cur)?;
    cur.expect_end()?;
    Ok(q)
}

fn expr(cur: &mut Cursor) -> Result<Quotient> {
    let mut acc = term(cur)?;
    loop {
        if cur.eat_sym("+") {
            acc = acc.add(&term(cur)?)?;
        } else if cur.eat_sym("-") {
            acc = acc.sub(&term(cur)?)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor) -> Result<Quotient> {
    let mut acc = unary(cur)?;
    loop {
        if cur.eat_sym("*") {
            acc = acc.mul(&unary(cur)?)?;
        } else if cur.eat_sym("/") {
            acc = acc.div(&unary(cur)?)?;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(cur: &mut Cursor) -> Result<Quotient> {
    cur.descend()?;
    let out = if cur.eat_sym("-") {
        unary(cur).map(|q| q.neg())
    } else {
        power(cur)
    };
    cur.ascend();
    out
}

fn power(cur: &mut Cursor) -> Result<Quotient> {
    let base = atom(cur)?;
    if !cur.eat_sym("^") {
        return Ok(base);
    }
    let exponent = unary(cur)?;
    raise(&base, &exponent)
}

fn atom(cur: &mut Cursor) -> Result<Quotient> {
    let tok = cur.peek().clone();
    match &tok.kind {
        TokenKind::Int(i) => {
            cur.next();
            Ok(Quotient::from(Value::rational(BigRational::from_integer(i.clone()))))
        }
        TokenKind::Ident(name) if name == "a" || name == "alpha" => {
            cur.next();
            Ok(Quotient::from(Value::alpha()))
        }
        TokenKind::Ident(name) if name == "b" || name == "beta" => {
            cur.next();
            Ok(Quotient::from(Value::beta()))
        }
        TokenKind::Sym("(") => {
            cur.next();
            let inner = expr(cur)?;
            cur.expect_sym(")")?;
            Ok(inner)
        }
        _ => Err(cur.error(&["integer", "'a'", "'b'", "'('", "'-'"]).into()),
    }
}

fn raise(base: &Quotient, exponent: &Quotient) -> Result<Quotient> {
    let Some(e) = exponent.as_value() else {
        return Err(Error::NotRepresentable("exponent is a proper quotient".into()));
    };
    match e.as_constant() {
        Some(k) => {
            let up = Value::rational(k.abs());
            let num = Value::power(base.numerator(), &up)?;
            let den = Value::power(base.denominator(), &up)?;
            if k.is_negative() {
                Quotient::new(den, num)
            } else {
                Quotient::new(num, den)
            }
        }
        None => match base.as_value() {
            Some(b) => Ok(Quotient::from(Value::power(b, e)?)),
            None => Err(Error::NotRepresentable("exponential of a proper quotient".into())),
        },
    }
}

/// Writes `v` with the chosen symbols.
pub fn write_value(out: &mut impl Write, v: &Value, sym: Symbols) -> fmt::Result {
    out.write_str(&format_value(v, sym))
}
