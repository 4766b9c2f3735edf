//! Parser for the vector-field input language.
//!
//! ```text
//! vars x,y;
//! dx = 3/2*x^2 + y;
//! dy = -x*y + (1/2 + 3/4 i)*y^2;
//! ```
//!
//! Header `vars <id>(,<id>)*;` then one `d<id> = <poly-expr>` per declared
//! variable. Expressions use `+ - * ^` over declared variables and rational
//! literals `p/q` or integers; `^` takes non-negative integer exponents;
//! complex literals are written `(a/b + c/d i)`.

use crate::poly::Poly;
use crate::scalar::GaussRat;
use crate::vfield::VectorField;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UndeclaredVariable,
    NonRationalLiteral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, kind: ParseErrorKind, msg: impl Into<String>) -> Self {
        ParseError { line, col, kind, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
    Equals,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>, line: &mut usize, col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            // comment to end of line
            while let Some(&c2) = chars.peek() {
                bump(&mut chars, &mut line, &mut col);
                if c2 == '\n' {
                    break;
                }
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            if chars.peek() == Some(&'.') {
                return Err(ParseError::new(
                    tl,
                    tc,
                    ParseErrorKind::NonRationalLiteral,
                    format!("non-rational literal `{s}.…`: use exact p/q form"),
                ));
            }
            let n: BigInt = s.parse().expect("digits parse as BigInt");
            out.push(Spanned { tok: Tok::Int(n), line: tl, col: tc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_alphanumeric() || c2 == '_' {
                    s.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Equals,
            other => {
                return Err(ParseError::new(
                    tl,
                    tc,
                    ParseErrorKind::Syntax,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        bump(&mut chars, &mut line, &mut col);
        out.push(Spanned { tok, line: tl, col: tc });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(t.line, t.col, kind, msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Spanned, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.err(ParseErrorKind::Syntax, format!("expected {what}")))
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
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

    // term := '-' term | factor ('*' factor)*
    fn term(&mut self) -> Result<Poly, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            let t = self.term()?;
            return Ok(-&t);
        }
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    // factor := atom ('^' uint)?
    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let e = match &self.peek().tok {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| {
                        self.err(ParseErrorKind::Syntax, "exponent out of range")
                    })?;
                    self.next();
                    e
                }
                Tok::Minus => {
                    return Err(self.err(
                        ParseErrorKind::Syntax,
                        "`^` takes non-negative integer exponents only",
                    ))
                }
                _ => return Err(self.err(ParseErrorKind::Syntax, "expected integer exponent")),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    // atom := rational ('i')? | 'i' | ident | '(' expr ')'
    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(_) => {
                let r = self.rational()?;
                // `3/4 i` inside complex literals: a rational directly
                // followed by the imaginary unit multiplies it.
                if let Tok::Ident(name) = &self.peek().tok {
                    if name == "i" {
                        self.next();
                        return Ok(Poly::constant(
                            self.nvars(),
                            GaussRat::new(BigRational::zero(), r),
                        ));
                    }
                }
                Ok(Poly::constant(self.nvars(), GaussRat::from_rational(r)))
            }
            Tok::Ident(name) => {
                if name == "i" {
                    self.next();
                    return Ok(Poly::constant(self.nvars(), GaussRat::i()));
                }
                match self.var_index(&name) {
                    Some(idx) => {
                        self.next();
                        Ok(Poly::var(self.nvars(), idx))
                    }
                    None => Err(self.err(
                        ParseErrorKind::UndeclaredVariable,
                        format!("undeclared variable `{name}`"),
                    )),
                }
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err(ParseErrorKind::Syntax, "expected a term")),
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let p = match self.next().tok {
            Tok::Int(n) => n,
            _ => return Err(self.err(ParseErrorKind::Syntax, "expected integer")),
        };
        if self.peek().tok == Tok::Slash {
            self.next();
            let q = match &self.peek().tok {
                Tok::Int(n) => n.clone(),
                _ => return Err(self.err(ParseErrorKind::Syntax, "expected denominator")),
            };
            if q.is_zero() {
                return Err(self.err(ParseErrorKind::Syntax, "zero denominator"));
            }
            self.next();
            return Ok(BigRational::new(p, q));
        }
        Ok(BigRational::from_integer(p))
    }
}

/// Parse the vector-field text format.
pub fn parse_vector_field(text: &str) -> Result<VectorField, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars: Vec::new() };
    match p.next().tok {
        Tok::Ident(kw) if kw == "vars" => {}
        _ => {
            return Err(ParseError::new(1, 1, ParseErrorKind::Syntax, "expected `vars` header"))
        }
    }
    loop {
        match p.next().tok {
            Tok::Ident(name) => {
                if name == "i" {
                    return Err(p.err(
                        ParseErrorKind::Syntax,
                        "`i` is reserved for the imaginary unit",
                    ));
                }
                if p.vars.contains(&name) {
                    return Err(p.err(ParseErrorKind::Syntax, format!("duplicate variable `{name}`")));
                }
                p.vars.push(name);
            }
            _ => return Err(p.err(ParseErrorKind::Syntax, "expected variable name")),
        }
        match p.next().tok {
            Tok::Comma => continue,
            Tok::Semi => break,
            _ => return Err(p.err(ParseErrorKind::Syntax, "expected `,` or `;` in header")),
        }
    }
    let n = p.nvars();
    let mut components: Vec<Option<Poly>> = vec![None; n];
    loop {
        if p.peek().tok == Tok::Eof {
            break;
        }
        let lead = match p.next().tok {
            Tok::Ident(s) => s,
            _ => return Err(p.err(ParseErrorKind::Syntax, "expected `d<var> = ...` line")),
        };
        let var = lead.strip_prefix('d').and_then(|v| p.var_index(v)).ok_or_else(|| {
            p.err(
                ParseErrorKind::Syntax,
                format!("expected `d<var>` with a declared variable, got `{lead}`"),
            )
        })?;
        p.expect(Tok::Equals, "`=`")?;
        let poly = p.expr()?;
        if components[var].is_some() {
            return Err(p.err(
                ParseErrorKind::Syntax,
                format!("duplicate component for `{}`", p.vars[var]),
            ));
        }
        components[var] = Some(poly);
        match p.peek().tok {
            Tok::Semi => {
                p.next();
            }
            Tok::Eof => break,
            _ => return Err(p.err(ParseErrorKind::Syntax, "expected `;` between components")),
        }
    }
    let mut comps = Vec::with_capacity(n);
    for (i, c) in components.into_iter().enumerate() {
        match c {
            Some(poly) => comps.push(poly),
            None => {
                return Err(ParseError::new(
                    1,
                    1,
                    ParseErrorKind::Syntax,
                    format!("missing component for variable `{}`", p.vars[i]),
                ))
            }
        }
    }
    Ok(VectorField::new(p.vars, comps))
}

/// Parse a comma-separated list of exact rational coordinates, e.g. `6,-12`.
pub fn parse_rational_point(text: &str) -> Result<Vec<GaussRat>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<GaussRat>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("bad coordinate: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f = parse_vector_field("vars x,y; dx = x; dy = -y").unwrap();
        assert_eq!(f.component(0), &Poly::from_int_terms(2, &[(1, &[1, 0])]));
        assert_eq!(f.component(1), &Poly::from_int_terms(2, &[(-1, &[0, 1])]));

        let f = parse_vector_field("vars x,y; dx = y; dy = x^2").unwrap();
        assert_eq!(f.component(0), &Poly::from_int_terms(2, &[(1, &[0, 1])]));
        assert_eq!(f.component(1), &Poly::from_int_terms(2, &[(1, &[2, 0])]));

        let f = parse_vector_field("vars x; dx = 3/2*x^2 + x").unwrap();
        let expect = Poly::from_terms(
            1,
            vec![
                (vec![2], GaussRat::from_ratio(3, 2)),
                (vec![1], GaussRat::from_int(1)),
            ],
        );
        assert_eq!(f.component(0), &expect);
    }

    #[test]
    fn complex_literal() {
        let f = parse_vector_field("vars x; dx = (1/2 + 3/4 i)*x").unwrap();
        let c = GaussRat::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(3.into(), 4.into()),
        );
        assert_eq!(f.component(0), &Poly::monomial(1, vec![1], c));
        let g = parse_vector_field("vars x; dx = -i*x^2 + (0 - 1 i)").unwrap();
        assert_eq!(
            g.component(0),
            &Poly::from_terms(1, vec![
                (vec![2], -GaussRat::i()),
                (vec![0], -GaussRat::i()),
            ])
        );
    }

    #[test]
    fn error_positions() {
        let e = parse_vector_field("vars x,y; dx = x @ y; dy = x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert_eq!((e.line, e.col), (1, 18));

        let e = parse_vector_field("vars x; dx = x + z").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredVariable);

        let e = parse_vector_field("vars x; dx = 1.5*x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonRationalLiteral);

        let e = parse_vector_field("vars x; dx = x^-2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert!(e.msg.contains("non-negative"));
    }

    #[test]
    fn print_parse_roundtrip() {
        let src = "vars x,y;\ndx = 3/2*x^2 + x - y;\ndy = (1/2 + 3/4 i)*x*y^2 - 2;\n";
        let f = parse_vector_field(src).unwrap();
        let printed = f.to_string();
        let g = parse_vector_field(&printed).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn missing_component_rejected() {
        assert!(parse_vector_field("vars x,y; dx = x").is_err());
        assert!(parse_vector_field("vars x,y; dx = x; dx = y; dy = x").is_err());
    }
}
