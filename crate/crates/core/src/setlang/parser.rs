use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::lexer::{tokenize, Cursor, TokenKind};
use super::{Interval, OrdExpr, SetExpr};
use crate::error::SyntaxError;

const SET_STARTS: [&str; 18] = [
    "'N'", "'N0'", "'Z'", "'Q'", "'{'", "'mult'", "'natprog'", "'intprog'", "'powers'", "'qint'",
    "'rint'", "'union'", "'inter'", "'diff'", "'prod'", "'pfin'", "'ffin'", "set",
];

/// Parses a set expression.
pub fn parse_set(text: &str) -> Result<SetExpr, SyntaxError> {
    let mut cur = Cursor::new(tokenize(text, true)?);
    let expr = set(&mut cur)?;
    cur.expect_end()?;
    Ok(expr)
}

/// Parses an ordinal expression.
pub fn parse_ordinal(text: &str) -> Result<OrdExpr, SyntaxError> {
    let mut cur = Cursor::new(tokenize(text, false)?);
    let expr = ord_sum(&mut cur)?;
    cur.expect_end()?;
    Ok(expr)
}

/// Parses `int` or `int/posint`.
pub fn parse_rational(text: &str) -> Result<BigRational, SyntaxError> {
    let mut cur = Cursor::new(tokenize(text, true)?);
    let r = rational(&mut cur)?;
    cur.expect_end()?;
    Ok(r)
}

fn semantic(pos: usize, expected: &str, found: impl Into<String>) -> SyntaxError {
    SyntaxError::new(pos, &[expected], found)
}

fn set(cur: &mut Cursor) -> Result<SetExpr, SyntaxError> {
    cur.descend()?;
    let expr = set_inner(cur);
    cur.ascend();
    expr
}

fn set_inner(cur: &mut Cursor) -> Result<SetExpr, SyntaxError> {
    let tok = cur.peek().clone();
    if cur.is_sym("{") {
        return finite(cur);
    }
    let name = match &tok.kind {
        TokenKind::Ident(name) => name.clone(),
        _ => return Err(cur.error(&SET_STARTS)),
    };
    cur.next();
    let expr = match name.as_str() {
        "N" => SetExpr::Naturals,
        "N0" => SetExpr::Naturals0,
        "Z" => SetExpr::Integers,
        "Q" => SetExpr::Rationals,
        "qint" => SetExpr::QInterval(interval(cur)?),
        "rint" => SetExpr::RInterval(interval(cur)?),
        "mult" | "powers" => {
            cur.expect_sym("(")?;
            let (k, pos) = cur.expect_int()?;
            cur.expect_sym(")")?;
            if !k.is_positive() {
                return Err(semantic(pos, "positive integer", k.to_string()));
            }
            if name == "mult" {
                SetExpr::multiples(k)
            } else {
                let k = k
                    .to_u32()
                    .ok_or_else(|| semantic(pos, "exponent below 2^32", k.to_string()))?;
                SetExpr::Powers(k)
            }
        }
        "natprog" | "intprog" => {
            cur.expect_sym("(")?;
            let (a, apos) = cur.expect_int()?;
            cur.expect_sym(",")?;
            let (d, dpos) = cur.expect_int()?;
            cur.expect_sym(")")?;
            if !d.is_positive() {
                return Err(semantic(dpos, "positive step", d.to_string()));
            }
            if name == "natprog" {
                if a.is_negative() {
                    return Err(semantic(apos, "nonnegative start", a.to_string()));
                }
                SetExpr::NatProg { start: a, step: d }
            } else {
                SetExpr::IntProg { residue: a, step: d }
            }
        }
        "union" | "inter" | "diff" | "prod" | "ffin" => {
            cur.expect_sym("(")?;
            let a = set(cur)?;
            cur.expect_sym(",")?;
            let target_pos = cur.peek().pos;
            let b = set(cur)?;
            cur.expect_sym(")")?;
            match name.as_str() {
                "union" => SetExpr::union(a, b),
                "inter" => SetExpr::inter(a, b),
                "diff" => SetExpr::diff(a, b),
                "prod" => SetExpr::prod(a, b),
                _ => {
                    if matches!(b, SetExpr::Finite(ref xs) if xs.is_empty()) {
                        return Err(semantic(target_pos, "nonempty target set", "{}"));
                    }
                    SetExpr::ffin(a, b)
                }
            }
        }
        "pfin" => {
            cur.expect_sym("(")?;
            let a = set(cur)?;
            cur.expect_sym(")")?;
            SetExpr::pfin(a)
        }
        _ => {
            return Err(SyntaxError::new(tok.pos, &SET_STARTS, tok.describe()));
        }
    };
    Ok(expr)
}

fn finite(cur: &mut Cursor) -> Result<SetExpr, SyntaxError> {
    cur.expect_sym("{")?;
    let mut items = Vec::new();
    if !cur.eat_sym("}") {
        loop {
            items.push(rational(cur)?);
            if cur.eat_sym("}") {
                break;
            }
            if !cur.eat_sym(",") {
                return Err(cur.error(&["','", "'}'"]));
            }
        }
    }
    Ok(SetExpr::finite(items))
}

fn rational(cur: &mut Cursor) -> Result<BigRational, SyntaxError> {
    let (num, _) = cur.expect_int()?;
    if cur.eat_sym("/") {
        let (den, pos) = cur.expect_int()?;
        if !den.is_positive() {
            return Err(semantic(pos, "positive denominator", den.to_string()));
        }
        Ok(BigRational::new(num, den))
    } else {
        Ok(BigRational::from_integer(num))
    }
}

fn interval(cur: &mut Cursor) -> Result<Interval, SyntaxError> {
    let start = cur.peek().pos;
    let lo_closed = if cur.eat_sym("[") {
        true
    } else if cur.eat_sym("(") || cur.eat_sym("]") {
        false
    } else {
        return Err(cur.error(&["'['", "'('"]));
    };
    let lo = rational(cur)?;
    cur.expect_sym(",")?;
    let hi = rational(cur)?;
    let hi_closed = if cur.eat_sym("]") {
        true
    } else if cur.eat_sym(")") || cur.eat_sym("[") {
        false
    } else {
        return Err(cur.error(&["']'", "')'"]));
    };
    let iv = Interval::new(lo, hi, lo_closed, hi_closed);
    if !iv.is_well_formed() {
        return Err(semantic(start, "nonempty interval", iv.to_string()));
    }
    Ok(iv)
}

fn ord_sum(cur: &mut Cursor) -> Result<OrdExpr, SyntaxError> {
    let mut left = ord_product(cur)?;
    loop {
        if cur.eat_sym("+") {
            left = OrdExpr::OrdAdd(Box::new(left), Box::new(ord_product(cur)?));
        } else if cur.eat_sym("<+>") {
            left = OrdExpr::NatAdd(Box::new(left), Box::new(ord_product(cur)?));
        } else {
            return Ok(left);
        }
    }
}

fn ord_product(cur: &mut Cursor) -> Result<OrdExpr, SyntaxError> {
    let mut left = ord_power(cur)?;
    loop {
        if cur.eat_sym("*") {
            left = OrdExpr::OrdMul(Box::new(left), Box::new(ord_power(cur)?));
        } else if cur.eat_sym("<*>") {
            left = OrdExpr::NatMul(Box::new(left), Box::new(ord_power(cur)?));
        } else {
            return Ok(left);
        }
    }
}

fn ord_power(cur: &mut Cursor) -> Result<OrdExpr, SyntaxError> {
    cur.descend()?;
    let base = ord_atom(cur);
    let out = match base {
        Ok(base) if cur.eat_sym("^") => ord_power(cur).map(|e| OrdExpr::OrdPow(Box::new(base), Box::new(e))),
        other => other,
    };
    cur.ascend();
    out
}

fn ord_atom(cur: &mut Cursor) -> Result<OrdExpr, SyntaxError> {
    let tok = cur.peek().clone();
    match &tok.kind {
        TokenKind::Ident(w) if w == "w" => {
            cur.next();
            Ok(OrdExpr::Omega)
        }
        TokenKind::Ident(t) if t == "theta" => {
            cur.next();
            cur.expect_sym("(")?;
            let (j, pos) = cur.expect_int()?;
            cur.expect_sym(")")?;
            let j = j
                .to_u32()
                .ok_or_else(|| semantic(pos, "natural index", j.to_string()))?;
            Ok(OrdExpr::Theta(j))
        }
        TokenKind::Int(k) => {
            cur.next();
            let k = k
                .to_biguint()
                .ok_or_else(|| semantic(tok.pos, "natural", k.to_string()))?;
            Ok(OrdExpr::Nat(k))
        }
        TokenKind::Sym("(") => {
            cur.next();
            let inner = ord_sum(cur)?;
            cur.expect_sym(")")?;
            Ok(inner)
        }
        _ => Err(cur.error(&["'w'", "natural", "'theta'", "'('"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn set_examples() {
        assert_eq!(parse_set("N").unwrap(), SetExpr::Naturals);
        assert_eq!(parse_set("mult(3)").unwrap(), SetExpr::nat_prog(3, 3));
        assert_eq!(
            parse_set("qint[0,1/2)").unwrap(),
            SetExpr::QInterval(Interval::new(q(0, 1), q(1, 2), true, false))
        );
        assert_eq!(
            parse_set(" union( {3, -1/2, 3}, intprog(-2, 5) ) ").unwrap(),
            SetExpr::union(
                SetExpr::finite([q(-1, 2), q(3, 1)]),
                SetExpr::int_prog(-2, 5)
            )
        );
        assert_eq!(
            parse_set("rint]0,1[").unwrap(),
            SetExpr::RInterval(Interval::new(q(0, 1), q(1, 1), false, false))
        );
    }

    #[test]
    fn ordinal_examples() {
        assert_eq!(parse_ordinal("w").unwrap(), OrdExpr::Omega);
        assert_eq!(
            parse_ordinal("w^w").unwrap(),
            OrdExpr::OrdPow(Box::new(OrdExpr::Omega), Box::new(OrdExpr::Omega))
        );
        let wp1 = OrdExpr::OrdAdd(Box::new(OrdExpr::Omega), Box::new(OrdExpr::Nat(1u32.into())));
        assert_eq!(
            parse_ordinal("(w+1) <*> (w+1)").unwrap(),
            OrdExpr::NatMul(Box::new(wp1.clone()), Box::new(wp1))
        );
        assert_eq!(parse_ordinal("theta(2)").unwrap(), OrdExpr::Theta(2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_set("union(N,").unwrap_err();
        assert_eq!(err.position, 9);
        assert!(err.expected.iter().any(|e| e == "'N'"));
        let err = parse_set("natprog(1,0)").unwrap_err();
        assert_eq!(err.position, 11);
        let err = parse_set("qint[2,1)").unwrap_err();
        assert_eq!(err.position, 5);
        let err = parse_set("N N").unwrap_err();
        assert_eq!(err.position, 3);
        let err = parse_ordinal("w + ").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(parse_set("ffin(N,{})").is_err());
        assert!(parse_set("{1/0}").is_err());
        assert!(parse_set("N#").is_err());
    }

    proptest! {
        #[test]
        fn parsers_never_panic(s in "\\PC{0,40}") {
            let _ = parse_set(&s);
            let _ = parse_ordinal(&s);
        }

        #[test]
        fn deep_nesting_is_an_error(k in 300usize..2000) {
            let text = format!("{}w{}", "(".repeat(k), ")".repeat(k));
            prop_assert!(parse_ordinal(&text).is_err());
            let text = format!("{}N{}", "pfin(".repeat(k), ")".repeat(k));
            prop_assert!(parse_set(&text).is_err());
        }

        #[test]
        fn parsers_never_panic_on_grammar_soup(s in "[NZQ0-9w(){}\\[\\],/^*+<>u -]{0,30}") {
            let _ = parse_set(&s);
            let _ = parse_ordinal(&s);
        }
    }
}
