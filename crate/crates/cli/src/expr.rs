//! Expression language for superfunctions and vector fields.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'i' | x<k> | th<k> | p<k> | '(' expr ')' | 'D' '[' coordinate ']'
//! ```
//!
//! `x<k>` are the even coordinates, `th<k>` the odd ones and `p<k>` odd
//! parameters; all are 1-based. A vector field is a sum of `coefficient *
//! D[coordinate]` with the coefficient on the left. Division is by nonzero
//! constants only.

use std::fmt;

use superprolong::gsalg::GQ;
use superprolong::supercalc::{GrassmannPoly, SuperVectorField};

/// Number of each kind of generator. Parameters come first among the odd
/// generators, then `th1..thm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub n_even: usize,
    pub n_odd: usize,
    pub n_params: usize,
}

impl Context {
    pub fn new(n_even: usize, n_odd: usize) -> Self {
        Self { n_even, n_odd, n_params: 0 }
    }

    pub fn with_params(n_even: usize, n_odd: usize, n_params: usize) -> Self {
        Self { n_even, n_odd, n_params }
    }

    fn total_odd(&self) -> usize {
        self.n_params + self.n_odd
    }

    /// Name of odd generator `j`.
    pub fn odd_name(&self, j: usize) -> String {
        if j < self.n_params {
            format!("p{}", j + 1)
        } else {
            format!("th{}", j - self.n_params + 1)
        }
    }

    pub fn print_poly(&self, f: &GrassmannPoly) -> String {
        f.format_with(&|j| self.odd_name(j))
    }

    pub fn print_field(&self, x: &SuperVectorField) -> String {
        x.format_with(&|j| self.odd_name(j))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Function(GrassmannPoly),
    VectorField(SuperVectorField),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            out.push((pos, Tok::Int(chars[start..k].iter().map(|x| x.1).collect())));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|x| x.1).collect())));
        } else if "+-*/^()[]".contains(c) {
            out.push((pos, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ParseError { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

/// Intermediate value: a function, or vector-field coefficients (parity not
/// yet checked).
#[derive(Debug, Clone)]
enum Val {
    F(GrassmannPoly),
    V(Vec<GrassmannPoly>),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos(), format!("expected '{c}'"))
        }
    }

    fn zero(&self) -> GrassmannPoly {
        GrassmannPoly::zero(self.ctx.n_even, self.ctx.total_odd())
    }

    fn constant(&self, c: GQ) -> GrassmannPoly {
        GrassmannPoly::constant(self.ctx.n_even, self.ctx.total_odd(), c)
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            let rhs = scale(rhs, &GQ::from_int(sign));
            acc = match (acc, rhs) {
                (Val::F(a), Val::F(b)) => Val::F(&a + &b),
                (Val::V(a), Val::V(b)) => Val::V(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
                _ => return self.err(pos, "cannot add a function and a vector field"),
            };
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = match (acc, rhs) {
                    (Val::F(a), Val::F(b)) => Val::F(&a * &b),
                    (Val::F(a), Val::V(b)) => Val::V(b.iter().map(|c| &a * c).collect()),
                    (Val::V(_), _) => return self.err(pos, "coefficients must stand left of D[...]"),
                };
            } else if self.eat('/') {
                let dpos = self.pos();
                let Val::F(d) = self.unary()? else {
                    return self.err(dpos, "cannot divide by a vector field");
                };
                let c = constant_value(&d).and_then(|c| c.inv());
                let Some(inv) = c else {
                    return self.err(dpos, "division only by nonzero constants");
                };
                acc = scale(acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Val, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(scale(v, &GQ::from_int(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let epos = self.pos();
        let Some(Tok::Int(e)) = self.peek().cloned() else {
            return self.err(epos, "exponent must be a nonnegative integer");
        };
        self.at += 1;
        let e: u32 = e.parse().or_else(|_| self.err(epos, "exponent too large"))?;
        match base {
            Val::F(f) => Ok(Val::F(f.pow(e))),
            Val::V(_) => self.err(pos, "cannot raise a vector field to a power"),
        }
    }

    fn coordinate(&self, name: &str, pos: usize) -> Result<usize, ParseError> {
        let (kind, idx) = split_ident(name).ok_or_else(|| ParseError { pos, msg: format!("unknown identifier '{name}'") })?;
        let bound = match kind {
            "x" => self.ctx.n_even,
            "th" => self.ctx.n_odd,
            "p" => self.ctx.n_params,
            _ => return self.err(pos, format!("unknown identifier '{name}'")),
        };
        if idx == 0 || idx > bound {
            return self.err(pos, format!("'{name}' out of range: {bound} {kind}-generators available"));
        }
        Ok(match kind {
            "x" => idx - 1,
            "p" => self.ctx.n_even + idx - 1,
            _ => self.ctx.n_even + self.ctx.n_params + idx - 1,
        })
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return self.err(pos, "unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => Ok(Val::F(self.constant(n.parse().expect("digits")))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) if name == "i" => Ok(Val::F(self.constant(GQ::i()))),
            Tok::Ident(name) if name == "D" => {
                self.expect('[')?;
                let cpos = self.pos();
                let Some(Tok::Ident(c)) = self.peek().cloned() else {
                    return self.err(cpos, "expected a coordinate inside D[...]");
                };
                self.at += 1;
                let k = self.coordinate(&c, cpos)?;
                self.expect(']')?;
                let dim = self.ctx.n_even + self.ctx.total_odd();
                let mut coeffs = vec![self.zero(); dim];
                coeffs[k] = self.constant(GQ::one());
                Ok(Val::V(coeffs))
            }
            Tok::Ident(name) => {
                let k = self.coordinate(&name, pos)?;
                let (n, m) = (self.ctx.n_even, self.ctx.total_odd());
                Ok(Val::F(GrassmannPoly::coordinate(n, m, k)))
            }
            Tok::Sym(c) => self.err(pos, format!("unexpected '{c}'")),
        }
    }
}

fn split_ident(name: &str) -> Option<(&str, usize)> {
    let cut = name.find(|c: char| c.is_ascii_digit())?;
    let idx = name[cut..].parse().ok()?;
    Some((&name[..cut], idx))
}

fn scale(v: Val, c: &GQ) -> Val {
    match v {
        Val::F(f) => Val::F(f.scale(c)),
        Val::V(cs) => Val::V(cs.iter().map(|f| f.scale(c)).collect()),
    }
}

fn constant_value(f: &GrassmannPoly) -> Option<GQ> {
    match f.num_terms() {
        0 => Some(GQ::zero()),
        1 => {
            let (m, c) = f.terms().next()?;
            (m.odd == 0 && m.x_degree() == 0).then(|| c.clone())
        }
        _ => None,
    }
}

/// Parses a function or a homogeneous vector field.
pub fn parse_expression(src: &str, ctx: &Context) -> Result<Parsed, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), ctx };
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return p.err(p.pos(), "unexpected trailing input");
    }
    match v {
        Val::F(f) => Ok(Parsed::Function(f)),
        Val::V(c) => SuperVectorField::homogeneous(ctx.n_even, ctx.total_odd(), c)
            .map(Parsed::VectorField)
            .map_err(|e| ParseError { pos: 0, msg: e.to_string() }),
    }
}

pub fn parse_function(src: &str, ctx: &Context) -> Result<GrassmannPoly, ParseError> {
    match parse_expression(src, ctx)? {
        Parsed::Function(f) => Ok(f),
        Parsed::VectorField(_) => Err(ParseError { pos: 0, msg: "expected a function, found a vector field".into() }),
    }
}

/// A vector field; the zero function is accepted as the zero field.
pub fn parse_field(src: &str, ctx: &Context) -> Result<SuperVectorField, ParseError> {
    match parse_expression(src, ctx)? {
        Parsed::VectorField(x) => Ok(x),
        Parsed::Function(f) if f.is_zero() => {
            Ok(SuperVectorField::zero(ctx.n_even, ctx.total_odd(), superprolong::gsalg::Parity::Even))
        }
        Parsed::Function(_) => Err(ParseError { pos: 0, msg: "expected a vector field, found a function".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use superprolong::gsalg::Parity;

    fn ctx() -> Context {
        Context::new(1, 2)
    }

    #[test]
    fn function_examples() {
        let f = parse_function("x1 + i*th1*th2", &ctx()).unwrap();
        assert_eq!(f.parity(), Some(Parity::Even));
        assert!(f.is_real_function());
        assert_eq!(f.body(), GrassmannPoly::x(1, 2, 0));
        assert!(parse_function("th1*th1", &ctx()).unwrap().is_zero());
        assert_eq!(parse_function("x1^2/2 - -1", &ctx()).unwrap().to_string(), "1 + 1/2*x1^2");
    }

    #[test]
    fn field_example() {
        let x = parse_field("(x1^2)*D[x1] + th1*D[th1]", &ctx()).unwrap();
        assert_eq!(x.parity(), Parity::Even);
        assert_eq!(x.coeff(0), &GrassmannPoly::x(1, 2, 0).pow(2));
        assert_eq!(x.coeff(1), &GrassmannPoly::eta(1, 2, 0));
        assert_eq!(parse_field(&x.to_string(), &ctx()).unwrap(), x);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_function("x1 + $", &ctx()).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_function("x1 + x3", &ctx()).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(e.msg.contains("out of range"));
        let e = parse_function("(x1 + 1", &ctx()).unwrap_err();
        assert_eq!(e.pos, 7);
        let e = parse_field("D[x1]*x1", &ctx()).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(parse_function("x1/x1", &ctx()).is_err());
        assert!(parse_field("th1*D[x1] + D[x1]", &ctx()).unwrap_err().msg.contains("parity"));
    }

    #[test]
    fn parameters() {
        let c = Context::with_params(1, 1, 2);
        let f = parse_function("p1*p2*x1 + p2*th1", &c).unwrap();
        assert_eq!(c.print_poly(&f), "x1*p1*p2 + p2*th1");
        assert_eq!(parse_function(&c.print_poly(&f), &c).unwrap(), f);
    }
}
