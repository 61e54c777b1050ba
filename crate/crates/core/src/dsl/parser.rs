use num_bigint::BigInt;

use crate::coeffring::QtRat;

use super::ast::{Atom, Chain, Expr, LitName, Loc, OpName, SfLit, Sign};
use super::error::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Dot,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("integer {s}"),
            Tok::Eof => "end of input".into(),
            t => format!("'{}'", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Dot => ".",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            _ => "",
        }
    }
}

fn syntax(loc: Loc, message: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Syntax,
        line: loc.line,
        column: loc.column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, Loc)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let loc = Loc { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
            }
            column += s.len();
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            column += s.len();
            Tok::Int(s)
        } else {
            let t = match c {
                '.' => Tok::Dot,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                _ => return Err(syntax(loc, format!("unexpected character {c:?}"), &[])),
            };
            chars.next();
            column += 1;
            t
        };
        out.push((tok, loc));
    }
    out.push((Tok::Eof, Loc { line, column }));
    Ok(out)
}

const ATOM_START: &[&str] = &[
    "operator name",
    "literal name",
    "integer",
    "`q`",
    "`t`",
    "'{'",
    "'('",
];

struct Parser {
    toks: Vec<(Tok, Loc)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn loc(&self) -> Loc {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Loc) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        syntax(self.loc(), format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, t: Tok) -> Result<Loc, ParseError> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&[&format!("'{}'", t.symbol())]))
        }
    }

    fn expr(&mut self, closing: Option<Tok>) -> Result<Expr, ParseError> {
        let loc = self.loc();
        let first = self.chain()?;
        let mut rest = Vec::new();
        loop {
            let sign = match self.peek() {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                t if Some(t) == closing.as_ref() => break,
                Tok::Eof if closing.is_none() => break,
                _ => {
                    let end = match &closing {
                        Some(t) => format!("'{}'", t.symbol()),
                        None => "end of input".into(),
                    };
                    return Err(self.unexpected(&["'.'", "'+'", "'-'", &end]));
                }
            };
            self.bump();
            rest.push((sign, self.chain()?));
        }
        Ok(Expr { first, rest, loc })
    }

    fn chain(&mut self) -> Result<Chain, ParseError> {
        let loc = self.loc();
        let mut atoms = vec![self.atom()?];
        while *self.peek() == Tok::Dot {
            self.bump();
            atoms.push(self.atom()?);
        }
        Ok(Chain { atoms, loc })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::Ident(name) if name == "q" || name == "t" => self.scaled(loc),
            Tok::Int(_) | Tok::LBrace => self.scaled(loc),
            Tok::Ident(name) => {
                if let Some(op) = OpName::from_name(&name) {
                    self.bump();
                    let arg = if op.takes_arg() {
                        self.expect(Tok::LParen)?;
                        let e = self.expr(Some(Tok::RParen))?;
                        self.bump();
                        Some(Box::new(e))
                    } else {
                        None
                    };
                    Ok(Atom::Op { name: op, arg, loc })
                } else if let Some(lit) = LitName::from_name(&name) {
                    self.bump();
                    Ok(Atom::Lit(SfLit { name: lit, args: self.int_list()?, loc }))
                } else {
                    Err(syntax(loc, format!("unknown name `{name}`"), ATOM_START))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr(Some(Tok::RParen))?;
                self.bump();
                Ok(Atom::Paren { expr: Box::new(e), loc })
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn scaled(&mut self, loc: Loc) -> Result<Atom, ParseError> {
        let scalar = match self.bump().0 {
            Tok::LBrace => {
                let v = self.scalar_sum()?;
                self.expect(Tok::RBrace)?;
                v
            }
            t => self.scalar_token(&t, loc)?,
        };
        self.expect(Tok::Star)?;
        let atom = self.atom()?;
        Ok(Atom::Scaled { scalar, atom: Box::new(atom), loc })
    }

    fn scalar_token(&self, t: &Tok, loc: Loc) -> Result<QtRat, ParseError> {
        match t {
            Tok::Int(s) => Ok(QtRat::from_bigint(s.parse::<BigInt>().expect("digits"))),
            Tok::Ident(s) if s == "q" => Ok(QtRat::q()),
            Tok::Ident(s) if s == "t" => Ok(QtRat::t()),
            _ => Err(syntax(loc, format!("unexpected {}", t.describe()), &["integer", "`q`", "`t`", "'('"])),
        }
    }

    fn int_list(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if *self.peek() == Tok::RBracket {
            self.bump();
            return Ok(out);
        }
        loop {
            let loc = self.loc();
            match self.bump().0 {
                Tok::Int(s) => out.push(s.parse().map_err(|_| syntax(loc, format!("index {s} is too large"), &[]))?),
                t => return Err(syntax(loc, format!("unexpected {}", t.describe()), &["integer"])),
            }
            match self.bump() {
                (Tok::Comma, _) => {}
                (Tok::RBracket, _) => return Ok(out),
                (t, loc) => return Err(syntax(loc, format!("unexpected {}", t.describe()), &["','", "']'"])),
            }
        }
    }

    // Rational expressions in q, t inside braces.

    fn scalar_sum(&mut self) -> Result<QtRat, ParseError> {
        let mut acc = self.scalar_product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.scalar_product()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.scalar_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_product(&mut self) -> Result<QtRat, ParseError> {
        let mut acc = self.scalar_unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.scalar_unary()?;
                }
                Tok::Slash => {
                    let loc = self.bump().1;
                    let d = self.scalar_unary()?;
                    acc = acc.checked_div(&d).map_err(|_| syntax(loc, "division by zero", &[]))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_unary(&mut self) -> Result<QtRat, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.scalar_unary()?);
        }
        let base = self.scalar_primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let loc = self.bump().1;
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let eloc = self.loc();
        let e: i64 = match self.bump().0 {
            Tok::Int(s) => s.parse().map_err(|_| syntax(eloc, format!("exponent {s} is too large"), &[]))?,
            t => return Err(syntax(eloc, format!("unexpected {}", t.describe()), &["integer"])),
        };
        base.pow(if neg { -e } else { e }).map_err(|_| syntax(loc, "division by zero", &[]))
    }

    fn scalar_primary(&mut self) -> Result<QtRat, ParseError> {
        let loc = self.loc();
        if *self.peek() == Tok::LParen {
            self.bump();
            let v = self.scalar_sum()?;
            self.expect(Tok::RParen)?;
            return Ok(v);
        }
        let t = self.bump().0;
        self.scalar_token(&t, loc)
    }
}

/// Parses an expression without type checking.
pub fn parse_untyped(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    p.expr(None)
}
