//! Infix expression parser shared by polynomial and path-algebra syntax.

use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

/// Source position of a fragment inside a larger document (1-based).
#[derive(Clone, Copy, Debug)]
pub struct Origin {
    pub line: usize,
    pub col: usize,
}

impl Default for Origin {
    fn default() -> Self {
        Origin { line: 1, col: 1 }
    }
}

/// Semantic actions for the parser.
pub trait ExprBuilder {
    type Value;
    fn number(&mut self, n: BigInt) -> Result<Self::Value, String>;
    fn ident(&mut self, name: &str) -> Result<Self::Value, String>;
    fn add(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn sub(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn mul(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn div(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn neg(&mut self, a: Self::Value) -> Result<Self::Value, String>;
    fn pow(&mut self, a: Self::Value, n: u32) -> Result<Self::Value, String>;
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str, origin: Origin) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (origin.line, origin.col);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Num(s.parse().expect("digits")), line: l0, col: c0 });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), line: l0, col: c0 });
            i += 1;
            col += 1;
        } else {
            return Err(ParseError { line, col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a, B: ExprBuilder> {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    b: &'a mut B,
}

impl<B: ExprBuilder> Parser<'_, B> {
    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn err(&self, at: (usize, usize), message: impl Into<String>) -> ParseError {
        ParseError { line: at.0, col: at.1, message: message.into() }
    }

    fn lift<T>(&self, at: (usize, usize), r: Result<T, String>) -> Result<T, ParseError> {
        r.map_err(|m| self.err(at, m))
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<B::Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.term()?;
            let r = if op == '+' { self.b.add(acc, rhs) } else { self.b.sub(acc, rhs) };
            acc = self.lift(at, r)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<B::Value, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            let r = if op == '*' { self.b.mul(acc, rhs) } else { self.b.div(acc, rhs) };
            acc = self.lift(at, r)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<B::Value, ParseError> {
        match self.peek_op() {
            Some('-') => {
                let at = self.here();
                self.pos += 1;
                let v = self.unary()?;
                let r = self.b.neg(v);
                self.lift(at, r)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<B::Value, ParseError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            let at = self.here();
            self.pos += 1;
            let n = match self.toks.get(self.pos) {
                Some(Token { tok: Tok::Num(n), .. }) => n.clone(),
                _ => return Err(self.err(self.here(), "expected a nonnegative integer exponent")),
            };
            self.pos += 1;
            let n: u32 = n.try_into().map_err(|_| self.err(at, "exponent too large"))?;
            let r = self.b.pow(base, n);
            return self.lift(at, r);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<B::Value, ParseError> {
        let at = self.here();
        let tok = match self.toks.get(self.pos) {
            Some(t) => t.tok.clone(),
            None => return Err(self.err(at, "unexpected end of expression")),
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let r = self.b.number(n);
                self.lift(at, r)
            }
            Tok::Ident(s) => {
                let r = self.b.ident(&s);
                self.lift(at, r)
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(self.err(at, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses one complete expression.
pub fn parse_expr<B: ExprBuilder>(text: &str, origin: Origin, builder: &mut B) -> Result<B::Value, ParseError> {
    let toks = tokenize(text, origin)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        let last = lines.last().map(|l| l.chars().count()).unwrap_or(0);
        if lines.len() == 1 {
            (origin.line, origin.col + last)
        } else {
            (origin.line + lines.len() - 1, last + 1)
        }
    };
    if toks.is_empty() {
        return Err(ParseError { line: origin.line, col: origin.col, message: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end, b: builder };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err(p.here(), "unexpected trailing input"));
    }
    Ok(v)
}
