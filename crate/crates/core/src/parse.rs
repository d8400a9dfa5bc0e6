//! Text front-end for polynomials, rational functions, curves and points.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := int | 't' | 'x' | '(' expr ')'
//! ```
//!
//! `/` is accepted only where a rational function is expected and `x` only on
//! the right-hand side of a curve equation. Error offsets are byte offsets.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::BigInt;
use crate::curve::IntegralModel;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::polyring::IntPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return err(i, format!("unexpected character '{ch}'"));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

/// Values an expression can be evaluated into.
trait Value: Sized + Clone {
    fn int(n: BigInt) -> Self;
    fn var(name: &str) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when division is not allowed; `Some(Err)` for division by zero.
    fn div(&self, o: &Self) -> Option<Result<Self>>;
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::int(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Polynomial in `x` with Z[t] coefficients, lowest x-power first.
#[derive(Clone, Debug, PartialEq)]
struct Bivariate {
    by_x: Vec<IntPoly>,
}

impl Bivariate {
    fn trimmed(mut by_x: Vec<IntPoly>) -> Self {
        while by_x.last().is_some_and(IntPoly::is_zero) {
            by_x.pop();
        }
        Bivariate { by_x }
    }

    fn get(&self, k: usize) -> IntPoly {
        self.by_x.get(k).cloned().unwrap_or_else(IntPoly::zero)
    }
}

impl Value for Bivariate {
    fn int(n: BigInt) -> Self {
        Self::trimmed(vec![IntPoly::constant(n)])
    }

    fn var(name: &str) -> Option<Self> {
        match name {
            "t" => Some(Self::trimmed(vec![IntPoly::t()])),
            "x" => Some(Self::trimmed(vec![IntPoly::zero(), IntPoly::one()])),
            _ => None,
        }
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.by_x.len().max(o.by_x.len());
        Self::trimmed((0..n).map(|k| &self.get(k) + &o.get(k)).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.by_x.is_empty() || o.by_x.is_empty() {
            return Self::trimmed(Vec::new());
        }
        let mut out = vec![IntPoly::zero(); self.by_x.len() + o.by_x.len() - 1];
        for (i, a) in self.by_x.iter().enumerate() {
            for (j, b) in o.by_x.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::trimmed(out)
    }

    fn neg(&self) -> Self {
        Self::trimmed(self.by_x.iter().map(|p| -p).collect())
    }

    fn div(&self, _: &Self) -> Option<Result<Self>> {
        None
    }
}

impl Value for RatFunc {
    fn int(n: BigInt) -> Self {
        RatFunc::from_poly(IntPoly::constant(n))
    }

    fn var(name: &str) -> Option<Self> {
        (name == "t").then(RatFunc::t)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div(&self, o: &Self) -> Option<Result<Self>> {
        Some(self.checked_div(o))
    }

    fn pow(&self, e: u32) -> Self {
        RatFunc::pow(self, e)
    }
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    allow_x: bool,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [(Tok, usize)], end: usize) -> Self {
        Parser {
            toks,
            pos: 0,
            end,
            allow_x: false,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            err(self.offset(), format!("expected {what}"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            err(self.offset(), "unexpected trailing input")
        }
    }

    fn expr<V: Value>(&mut self) -> Result<V> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc: V = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: Value>(&mut self) -> Result<V> {
        let mut acc: V = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(&Tok::Slash) {
                let at = self.offset();
                self.pos += 1;
                let rhs: V = self.factor()?;
                acc = match acc.div(&rhs) {
                    None => return err(at, "division is not allowed here"),
                    Some(Err(_)) => return err(at, "division by zero"),
                    Some(Ok(v)) => v,
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<V: Value>(&mut self) -> Result<V> {
        let base: V = self.base()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let e = n
                    .to_u32()
                    .filter(|&e| e <= 1000)
                    .ok_or_else(|| Error::Parse {
                        offset: at,
                        message: "exponent too large".into(),
                    })?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => err(at, "expected a nonnegative integer exponent"),
        }
    }

    fn base<V: Value>(&mut self) -> Result<V> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(V::int(n))
            }
            Some(Tok::Ident(name)) => {
                if name == "x" && !self.allow_x {
                    return err(at, "variable 'x' is only allowed in a curve equation");
                }
                self.pos += 1;
                V::var(&name).ok_or_else(|| Error::Parse {
                    offset: at,
                    message: format!("unknown variable '{name}'"),
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(v)
            }
            Some(_) => err(at, "expected an integer, a variable or '('"),
            None => err(at, "unexpected end of input"),
        }
    }

    fn poly(&mut self) -> Result<IntPoly> {
        let v: Bivariate = self.expr()?;
        Ok(v.get(0))
    }
}

/// Parse an element of Z[t].
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, text.len());
    let v = p.poly()?;
    p.finish()?;
    Ok(v)
}

/// Parse an element of Q(t), e.g. `(t^2 + 1)/(2*t)`.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, text.len());
    let v: RatFunc = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Parse a curve given as `e=(e1, e2, e3)`, `abc=(A, B, C)`, `(A, B, C)` or
/// `y^2 = x^3 + A*x^2 + B*x + C` with coefficients in Z[t].
pub fn parse_curve(text: &str) -> Result<IntegralModel> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, text.len());
    let model = match p.peek() {
        Some(Tok::Ident(name)) if name == "e" || name == "abc" => {
            let split = name == "e";
            p.pos += 1;
            p.expect(&Tok::Eq, "'='")?;
            let [u, v, w] = triple(&mut p)?;
            if split {
                IntegralModel::from_roots(u, v, w)
            } else {
                IntegralModel::new(u, v, w)
            }
        }
        Some(Tok::Ident(name)) if name == "y" => {
            p.pos += 1;
            p.expect(&Tok::Caret, "'^'")?;
            let at = p.offset();
            if !p.eat(&Tok::Int(BigInt::from(2))) {
                return err(at, "expected 'y^2'");
            }
            p.expect(&Tok::Eq, "'='")?;
            let at = p.offset();
            p.allow_x = true;
            let rhs: Bivariate = p.expr()?;
            if rhs.by_x.len() != 4 || !rhs.by_x[3].is_one() {
                return err(at, "right-hand side must be a monic cubic in x");
            }
            IntegralModel::new(rhs.get(2), rhs.get(1), rhs.get(0))
        }
        Some(Tok::LParen) => {
            let [u, v, w] = triple(&mut p)?;
            IntegralModel::new(u, v, w)
        }
        _ => return err(p.offset(), "expected 'e=(..)', '(A, B, C)' or 'y^2 = ...'"),
    };
    p.finish()?;
    Ok(model)
}

fn triple(p: &mut Parser<'_>) -> Result<[IntPoly; 3]> {
    p.expect(&Tok::LParen, "'('")?;
    let u = p.poly()?;
    p.expect(&Tok::Comma, "','")?;
    let v = p.poly()?;
    p.expect(&Tok::Comma, "','")?;
    let w = p.poly()?;
    p.expect(&Tok::RParen, "')'")?;
    Ok([u, v, w])
}

/// Parse `O` or `(x, y)` with coordinates in Q(t).
pub fn parse_point(text: &str) -> Result<Option<(RatFunc, RatFunc)>> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, text.len());
    if let Some(Tok::Ident(name)) = p.peek() {
        if name == "O" {
            p.pos += 1;
            p.finish()?;
            return Ok(None);
        }
    }
    p.expect(&Tok::LParen, "'(' or 'O'")?;
    let x: RatFunc = p.expr()?;
    p.expect(&Tok::Comma, "','")?;
    let y: RatFunc = p.expr()?;
    p.expect(&Tok::RParen, "')'")?;
    p.finish()?;
    Ok(Some((x, y)))
}

/// Print a point in the syntax accepted by [`parse_point`].
pub fn format_point(pt: Option<(&RatFunc, &RatFunc)>) -> String {
    match pt {
        None => "O".to_string(),
        Some((x, y)) => format!("({x}, {y})"),
    }
}

/// Printer for `y^2 = x^3 + ...` whose output parses back to the same model.
pub(crate) fn format_equation(a: &IntPoly, b: &IntPoly, c: &IntPoly) -> String {
    let mut s = String::from("y^2 = x^3");
    for (coef, mono) in [(a, "*x^2"), (b, "*x"), (c, "")] {
        if coef.is_zero() {
            continue;
        }
        let single = coef.coeffs().iter().filter(|k| !k.is_zero()).count() == 1;
        if single {
            let lc = coef.lc();
            let (sign, mag) = if lc.is_negative() {
                (" - ", -coef)
            } else {
                (" + ", coef.clone())
            };
            s.push_str(sign);
            if mag.is_one() && !mono.is_empty() {
                s.push_str(&mono[1..]);
            } else {
                s.push_str(&mag.to_string());
                s.push_str(mono);
            }
        } else {
            s.push_str(&format!(" + ({coef}){mono}"));
        }
    }
    s
}
