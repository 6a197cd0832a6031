//! The problem text format: a small statement language for describing a
//! normalization problem in a file.
//!
//! ```text
//! # a saddle with one removable term
//! vars x, y;
//! field x + x^2, -y;
//! order 6;
//! resbound 16;
//! mode normalize;
//! ```
//!
//! Statements end with `;` and `#` starts a comment. `vars` must come
//! first and fixes the dimension and coordinate names; `field` declares
//! one vector field per statement with one component expression per
//! variable; `integral` declares a candidate first integral. Expressions
//! use `+ - * / ^` with parentheses, integer literals, the imaginary unit
//! `i`, and the declared variables; division is only defined by nonzero
//! constants, which is how rational coefficients like `3/4` are written.
//! A problem prints back to canonical text via `Display`, and parsing that
//! text reproduces the problem exactly.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::vector_field::VectorField;
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// What the engine is asked to do with the problem.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Full normalization.
    Normalize,
    /// Normalization of a divergence-free field with volume certificates.
    Isochore,
    /// Only the spectrum, resonance relations, and torus data.
    ResonanceOnly,
    /// The four integrability checks on the declared family.
    Integrability,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Normalize => "normalize",
            Mode::Isochore => "isochore",
            Mode::ResonanceOnly => "resonance-only",
            Mode::Integrability => "integrability",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "normalize" => Ok(Mode::Normalize),
            "isochore" => Ok(Mode::Isochore),
            "resonance-only" => Ok(Mode::ResonanceOnly),
            "integrability" => Ok(Mode::Integrability),
            other => Err(format!(
                "unknown mode '{other}' (expected normalize, isochore, resonance-only, or integrability)"
            )),
        }
    }
}

pub const DEFAULT_ORDER: u32 = 6;
pub const DEFAULT_RES_BOUND: u32 = 16;

/// A fully parsed problem.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProblemSpec {
    pub variables: Vec<String>,
    pub fields: Vec<VectorField>,
    pub integrals: Vec<Poly>,
    pub order: u32,
    pub res_bound: u32,
    pub mode: Mode,
}

impl ProblemSpec {
    pub fn dim(&self) -> usize {
        self.variables.len()
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {};", self.variables.join(", "))?;
        for field in &self.fields {
            let comps: Vec<String> = field
                .components()
                .iter()
                .map(|c| c.to_text(&self.variables))
                .collect();
            writeln!(f, "field {};", comps.join(", "))?;
        }
        for g in &self.integrals {
            writeln!(f, "integral {};", g.to_text(&self.variables))?;
        }
        writeln!(f, "order {};", self.order)?;
        writeln!(f, "resbound {};", self.res_bound)?;
        writeln!(f, "mode {};", self.mode)
    }
}

const KEYWORDS: [&str; 7] = ["vars", "field", "integral", "order", "resbound", "mode", "i"];

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn lexeme(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Int(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::Semi => ";".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.pos];
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut s = Scanner { chars: text.chars().collect(), pos: 0, line: 1, col: 1 };
    while let Some(c) = s.peek() {
        let (tline, tcol) = (s.line, s.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                s.bump();
            }
            '#' => {
                while s.peek().is_some() && s.bump() != '\n' {}
            }
            '0'..='9' => {
                let mut digits = String::new();
                while s.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(s.bump());
                }
                tokens.push(Token { tok: Tok::Int(digits), line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while s.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    word.push(s.bump());
                }
                tokens.push(Token { tok: Tok::Ident(word), line: tline, col: tcol });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    other => {
                        return Err(Error::Parse {
                            line: tline,
                            column: tcol,
                            message: format!("unexpected character '{other}'"),
                        })
                    }
                };
                s.bump();
                tokens.push(Token { tok, line: tline, col: tcol });
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, line: s.line, col: s.col });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    variables: Vec<String>,
    fields: Vec<VectorField>,
    integrals: Vec<Poly>,
    order: Option<u32>,
    res_bound: Option<u32>,
    mode: Option<Mode>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, message: impl Into<String>) -> Error {
        Error::Parse { line: token.line, column: token.col, message: message.into() }
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let token = self.peek().clone();
        self.error_at(&token, message)
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.error_here(format!(
                "expected '{}', found '{}'",
                tok.lexeme(),
                self.peek().tok.lexeme()
            )))
        }
    }

    fn dim(&self) -> usize {
        self.variables.len()
    }

    fn parse(mut self) -> Result<ProblemSpec> {
        self.vars_statement()?;
        while self.peek().tok != Tok::Eof {
            self.statement()?;
        }
        if self.fields.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(ProblemSpec {
            variables: self.variables,
            fields: self.fields,
            integrals: self.integrals,
            order: self.order.unwrap_or(DEFAULT_ORDER),
            res_bound: self.res_bound.unwrap_or(DEFAULT_RES_BOUND),
            mode: self.mode.unwrap_or(Mode::Normalize),
        })
    }

    fn vars_statement(&mut self) -> Result<()> {
        let head = self.next();
        match &head.tok {
            Tok::Ident(w) if w == "vars" => {}
            _ => return Err(self.error_at(&head, "the first statement must declare variables: vars x, y, ...;")),
        }
        loop {
            let t = self.next();
            let Tok::Ident(name) = &t.tok else {
                return Err(self.error_at(&t, "expected a variable name"));
            };
            if KEYWORDS.contains(&name.as_str()) {
                return Err(self.error_at(&t, format!("'{name}' is reserved and cannot name a variable")));
            }
            if self.variables.contains(name) {
                return Err(self.error_at(&t, format!("variable '{name}' declared twice")));
            }
            self.variables.push(name.clone());
            match self.peek().tok {
                Tok::Comma => {
                    self.next();
                }
                _ => break,
            }
        }
        self.expect(Tok::Semi)?;
        Ok(())
    }

    fn statement(&mut self) -> Result<()> {
        let head = self.next();
        let Tok::Ident(word) = &head.tok else {
            return Err(self.error_at(&head, "expected a statement"));
        };
        match word.as_str() {
            "vars" => Err(self.error_at(&head, "variables were already declared")),
            "field" => {
                let mut comps = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    comps.push(self.expr()?);
                }
                self.expect(Tok::Semi)?;
                if comps.len() != self.dim() {
                    return Err(self.error_at(
                        &head,
                        format!("field has {} components, expected {}", comps.len(), self.dim()),
                    ));
                }
                self.fields.push(VectorField::from_components(comps)?);
                Ok(())
            }
            "integral" => {
                let g = self.expr()?;
                self.expect(Tok::Semi)?;
                self.integrals.push(g);
                Ok(())
            }
            "order" => {
                if self.order.is_some() {
                    return Err(self.error_at(&head, "duplicate 'order' statement"));
                }
                let value = self.small_int()?;
                self.expect(Tok::Semi)?;
                if value < 2 {
                    return Err(Error::InvalidOrder { required: 2, got: value });
                }
                self.order = Some(value);
                Ok(())
            }
            "resbound" => {
                if self.res_bound.is_some() {
                    return Err(self.error_at(&head, "duplicate 'resbound' statement"));
                }
                let value = self.small_int()?;
                self.expect(Tok::Semi)?;
                self.res_bound = Some(value);
                Ok(())
            }
            "mode" => {
                if self.mode.is_some() {
                    return Err(self.error_at(&head, "duplicate 'mode' statement"));
                }
                let mut joined = String::new();
                while self.peek().tok != Tok::Semi && self.peek().tok != Tok::Eof {
                    joined.push_str(&self.next().tok.lexeme());
                }
                self.expect(Tok::Semi)?;
                match Mode::from_str(&joined) {
                    Ok(mode) => {
                        self.mode = Some(mode);
                        Ok(())
                    }
                    Err(message) => Err(self.error_at(&head, message)),
                }
            }
            other => Err(self.error_at(&head, format!("unknown statement '{other}'"))),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let t = self.next();
        let Tok::Int(digits) = &t.tok else {
            return Err(self.error_at(&t, "expected a number"));
        };
        digits
            .parse::<u32>()
            .map_err(|_| self.error_at(&t, format!("number '{digits}' is out of range")))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let slash = self.next();
                    let divisor = self.factor()?;
                    if divisor.is_zero() {
                        return Err(self.error_at(&slash, "division by zero"));
                    }
                    if divisor.total_degree() != Some(0) {
                        return Err(self.error_at(
                            &slash,
                            "division is only defined by nonzero constants",
                        ));
                    }
                    let inv = divisor.constant_term().inv().expect("divisor is nonzero");
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let exponent = self.small_int()?;
            let mut acc = Poly::constant(self.dim(), Scalar::one());
            for _ in 0..exponent {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.next();
        match &t.tok {
            Tok::Int(digits) => {
                let value: BigInt = digits.parse().expect("digits form an integer");
                Ok(Poly::constant(self.dim(), Scalar::from_bigint(value)))
            }
            Tok::Ident(name) if name == "i" => {
                Ok(Poly::constant(self.dim(), Scalar::i()))
            }
            Tok::Ident(name) => match self.variables.iter().position(|v| v == name) {
                Some(j) => Ok(Poly::var(self.dim(), j)),
                None => Err(self.error_at(&t, format!("unknown variable '{name}'"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(self.error_at(&t, format!("expected an expression, found '{}'", other.lexeme()))),
        }
    }
}

/// Parses problem text into a [`ProblemSpec`].
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let tokens = lex(text)?;
    let parser = Parser {
        tokens,
        pos: 0,
        variables: Vec::new(),
        fields: Vec::new(),
        integrals: Vec::new(),
        order: None,
        res_bound: None,
        mode: None,
    };
    parser.parse()
}
