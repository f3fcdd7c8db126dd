use num_bigint::BigInt;

use crate::error::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// 1-based character offset of the first character.
    pub pos: usize,
}

impl Token {
    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Ident(s) => format!("'{s}'"),
            TokenKind::Int(i) => format!("'{i}'"),
            TokenKind::Sym(s) => format!("'{s}'"),
            TokenKind::End => "end of input".to_string(),
        }
    }
}

const SYMBOLS: [&str; 14] = [
    "<+>", "<*>", "(", ")", "[", "]", "{", "}", ",", "/", "^", "*", "+", "-",
];

/// Splits `text` into tokens. With `signed_ints`, a `-` directly followed by a
/// digit is folded into a negative integer literal.
pub fn tokenize(text: &str, signed_ints: bool) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let negative = signed_ints && c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || negative {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits.parse::<BigInt>().expect("digit run parses");
            tokens.push(Token {
                kind: TokenKind::Int(value),
                pos,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident(chars[start..i].iter().collect()),
                pos,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                tokens.push(Token {
                    kind: TokenKind::Sym(s),
                    pos,
                });
                i += s.chars().count();
            }
            None => {
                return Err(SyntaxError::new(pos, &[], format!("unexpected character '{c}'")));
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::End,
        pos: chars.len() + 1,
    });
    Ok(tokens)
}

/// Cursor over a token list shared by the set, ordinal and value parsers.
pub struct Cursor {
    tokens: Vec<Token>,
    at: usize,
    depth: usize,
}

/// Nesting limit for recursive productions.
pub const MAX_DEPTH: usize = 200;

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Self {
        Cursor {
            tokens,
            at: 0,
            depth: 0,
        }
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    pub fn next(&mut self) -> Token {
        let tok = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        tok
    }

    pub fn is_sym(&self, sym: &str) -> bool {
        matches!(self.peek().kind, TokenKind::Sym(s) if s == sym)
    }

    pub fn eat_sym(&mut self, sym: &str) -> bool {
        if self.is_sym(sym) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, sym: &'static str) -> Result<Token, SyntaxError> {
        if self.is_sym(sym) {
            Ok(self.next())
        } else {
            Err(self.error(&[&format!("'{sym}'")]))
        }
    }

    pub fn expect_int(&mut self) -> Result<(BigInt, usize), SyntaxError> {
        match self.peek().kind.clone() {
            TokenKind::Int(i) => {
                let pos = self.next().pos;
                Ok((i, pos))
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    pub fn expect_end(&mut self) -> Result<(), SyntaxError> {
        match self.peek().kind {
            TokenKind::End => Ok(()),
            _ => Err(self.error(&["end of input"])),
        }
    }

    pub fn descend(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let pos = self.peek().pos;
            return Err(SyntaxError::new(pos, &[], "expression nested too deeply"));
        }
        Ok(())
    }

    pub fn ascend(&mut self) {
        self.depth -= 1;
    }

    pub fn error(&self, expected: &[&str]) -> SyntaxError {
        let tok = self.peek();
        SyntaxError::new(tok.pos, expected, tok.describe())
    }
}
