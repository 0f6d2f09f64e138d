//! Closed-form expressions in `t`, named parameters and structure constants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(GaussianRational),
    T,
    Param(String),
    /// `c_{ij}^k`, 1-based.
    StructConst(usize, usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Power with exponent `p/q`, `q > 0`, in lowest terms.
    Pow(Box<Expr>, i64, i64),
    Sqrt(Box<Expr>),
}

/// Leaves that an evaluator may be asked to resolve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol<'a> {
    T,
    Param(&'a str),
    StructConst(usize, usize, usize),
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let tokens = lex(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Ok(e)
    }

    pub fn constant(c: GaussianRational) -> Expr {
        Expr::Const(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(GaussianRational::from_int(n))
    }

    fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::Neg(a) | Expr::Pow(a, _, _) | Expr::Sqrt(a) => a.walk(f),
            _ => {}
        }
    }

    pub fn contains(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        let mut found = false;
        self.walk(&mut |e| found |= pred(e));
        found
    }

    pub fn mentions_param(&self, name: &str) -> bool {
        self.contains(&|e| matches!(e, Expr::Param(p) if p == name))
    }

    pub fn params(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Param(p) = e {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
        });
        out
    }

    /// Denominators of rational exponents, with 2 for each square root.
    pub fn exponent_denominators(&self) -> Vec<i64> {
        let mut out = Vec::new();
        self.walk(&mut |e| match e {
            Expr::Pow(_, _, q) if *q > 1 => out.push(*q),
            Expr::Sqrt(_) => out.push(2),
            _ => {}
        });
        out
    }

    /// Arguments of every square root, as display strings.
    pub fn sqrt_arguments(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Sqrt(a) = e {
                out.push(a.to_string());
            }
        });
        out
    }

    /// Replace leaves for which `f` returns a value.
    pub fn substitute(&self, f: &dyn Fn(Symbol<'_>) -> Option<Expr>) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(f));
        match self {
            Expr::Const(_) => self.clone(),
            Expr::T => f(Symbol::T).unwrap_or(Expr::T),
            Expr::Param(p) => f(Symbol::Param(p)).unwrap_or_else(|| self.clone()),
            Expr::StructConst(i, j, k) => f(Symbol::StructConst(*i, *j, *k)).unwrap_or_else(|| self.clone()),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::Neg(a) => Expr::Neg(sub(a)),
            Expr::Pow(a, p, q) => Expr::Pow(sub(a), *p, *q),
            Expr::Sqrt(a) => Expr::Sqrt(sub(a)),
        }
    }

    pub fn substitute_param(&self, name: &str, value: &Expr) -> Expr {
        self.substitute(&|s| match s {
            Symbol::Param(p) if p == name => Some(value.clone()),
            _ => None,
        })
    }

    /// Partial derivative with respect to a named parameter.
    pub fn derivative(&self, name: &str) -> Expr {
        let d = |e: &Expr| Box::new(e.derivative(name));
        let b = |e: &Expr| Box::new(e.clone());
        match self {
            Expr::Param(p) if p == name => Expr::int(1),
            Expr::Const(_) | Expr::T | Expr::Param(_) | Expr::StructConst(..) => Expr::int(0),
            Expr::Add(x, y) => Expr::Add(d(x), d(y)),
            Expr::Sub(x, y) => Expr::Sub(d(x), d(y)),
            Expr::Mul(x, y) => Expr::Add(Box::new(Expr::Mul(d(x), b(y))), Box::new(Expr::Mul(b(x), d(y)))),
            Expr::Div(x, y) => Expr::Div(
                Box::new(Expr::Sub(
                    Box::new(Expr::Mul(d(x), b(y))),
                    Box::new(Expr::Mul(b(x), d(y))),
                )),
                Box::new(Expr::Pow(b(y), 2, 1)),
            ),
            Expr::Neg(x) => Expr::Neg(d(x)),
            Expr::Pow(x, p, q) => Expr::Mul(
                Box::new(Expr::Mul(
                    Box::new(Expr::constant(GaussianRational::from_ratio(*p, *q))),
                    Box::new(Expr::Pow(b(x), p - q, *q)),
                )),
                d(x),
            ),
            Expr::Sqrt(x) => Expr::Div(
                d(x),
                Box::new(Expr::Mul(Box::new(Expr::int(2)), Box::new(self.clone()))),
            ),
        }
    }

    /// Exact value in ℚ(i); roots must be exact and principal.
    pub fn eval_exact(&self, env: &dyn Fn(Symbol<'_>) -> Option<GaussianRational>) -> Result<GaussianRational> {
        let rec = |e: &Expr| e.eval_exact(env);
        let unresolved = |what: String| Error::NotExact(format!("unresolved {what}"));
        Ok(match self {
            Expr::Const(c) => c.clone(),
            Expr::T => env(Symbol::T).ok_or_else(|| unresolved("t".into()))?,
            Expr::Param(p) => env(Symbol::Param(p)).ok_or_else(|| unresolved(format!("parameter `{p}`")))?,
            Expr::StructConst(i, j, k) => {
                env(Symbol::StructConst(*i, *j, *k)).ok_or_else(|| unresolved(format!("c_{{{i}{j}}}^{{{k}}}")))?
            }
            Expr::Add(a, b) => rec(a)? + rec(b)?,
            Expr::Sub(a, b) => rec(a)? - rec(b)?,
            Expr::Mul(a, b) => rec(a)? * rec(b)?,
            Expr::Div(a, b) => {
                let d = rec(b)?;
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::NotExact(format!("division by zero in `{self}`")))?;
                rec(a)? * inv
            }
            Expr::Neg(a) => -rec(a)?,
            Expr::Pow(a, p, q) => {
                let base = rec(a)?;
                let root = base
                    .root(*q as u32)
                    .ok_or_else(|| Error::NotExact(format!("no exact root in `{self}`")))?;
                root.pow(*p)
                    .ok_or_else(|| Error::NotExact(format!("zero to a negative power in `{self}`")))?
            }
            Expr::Sqrt(a) => rec(a)?
                .sqrt()
                .ok_or_else(|| Error::NotExact(format!("no exact square root in `{self}`")))?,
        })
    }

    /// Value when the expression has no free symbols.
    pub fn eval_constant(&self) -> Result<GaussianRational> {
        self.eval_exact(&|_| None)
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}

/// Fully parenthesised, reparseable text.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.is_real() && c.re.is_integer() && !c.re.is_negative() => write!(f, "{c}"),
            Expr::Const(c) => write!(f, "({c})"),
            Expr::T => write!(f, "t"),
            Expr::Param(p) => write!(f, "{p}"),
            Expr::StructConst(i, j, k) => write!(f, "c_{{{i}{j}}}^{{{k}}}"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, p, 1) => write!(f, "({a}^({p}))"),
            Expr::Pow(a, p, q) => write!(f, "({a}^({p}/{q}))"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    StructConst(usize, usize, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(parse_decimal(&text)?));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                if c == 'c' && chars.get(i + 1) == Some(&'_') {
                    if let Some((tok, next)) = lex_struct_const(&chars, i + 2) {
                        out.push(tok);
                        i = next;
                        continue;
                    }
                }
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

/// Reads `12^4` or `{12}^{4}` after `c_`.
fn lex_struct_const(chars: &[char], mut i: usize) -> Option<(Token, usize)> {
    let group = |i: &mut usize| -> Option<Vec<usize>> {
        let braced = chars.get(*i) == Some(&'{');
        if braced {
            *i += 1;
        }
        let mut digits = Vec::new();
        while let Some(d) = chars.get(*i).and_then(|c| c.to_digit(10)) {
            digits.push(d as usize);
            *i += 1;
            if !braced && digits.len() == 2 {
                break;
            }
        }
        if braced {
            if chars.get(*i) != Some(&'}') {
                return None;
            }
            *i += 1;
        }
        Some(digits)
    };
    let lower = group(&mut i)?;
    if lower.len() != 2 || chars.get(i) != Some(&'^') {
        return None;
    }
    i += 1;
    let braced = chars.get(i) == Some(&'{');
    let upper = if braced {
        group(&mut i)?
    } else {
        let d = chars.get(i)?.to_digit(10)? as usize;
        i += 1;
        vec![d]
    };
    if upper.len() != 1 {
        return None;
    }
    Some((Token::StructConst(lower[0], lower[1], upper[0]), i))
}

fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number `{text}`"));
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(numer, denom))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Token) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Token::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Token::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(
                self.peek(),
                Some(Token::Num(_) | Token::Ident(_) | Token::StructConst(..) | Token::LParen)
            ) {
                // juxtaposition, as in `2t` or `t(t+1)`
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Token::Minus) {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat(&Token::Plus) {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let (p, q) = self.exponent()?;
        Ok(if q == 1 && p == 1 {
            base
        } else {
            Expr::Pow(Box::new(base), p, q)
        })
    }

    fn exponent(&mut self) -> Result<(i64, i64)> {
        let parenthesised = self.eat(&Token::LParen);
        let neg = self.eat(&Token::Minus);
        let num = self.integer()?;
        let den = if parenthesised && self.eat(&Token::Slash) {
            self.integer()?
        } else {
            1
        };
        if parenthesised {
            self.expect(&Token::RParen)?;
        }
        if den == 0 {
            return Err(Error::Parse("zero exponent denominator".into()));
        }
        let r = BigRational::new(BigInt::from(if neg { -num } else { num }), BigInt::from(den));
        let p = r
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Parse("exponent too large".into()))?;
        let q = r
            .denom()
            .to_i64()
            .ok_or_else(|| Error::Parse("exponent too large".into()))?;
        Ok((p, q))
    }

    fn integer(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Token::Num(r)) if r.is_integer() => {
                self.pos += 1;
                r.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Parse("exponent too large".into()))
            }
            other => Err(Error::Parse(format!("expected an integer exponent, found {other:?}"))),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(r) => Ok(Expr::Const(GaussianRational::real(r))),
            Token::StructConst(i, j, k) => Ok(Expr::StructConst(i, j, k)),
            Token::LParen => {
                let e = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(e)
            }
            Token::Ident(name) => match name.as_str() {
                "t" => Ok(Expr::T),
                "i" => Ok(Expr::Const(GaussianRational::i())),
                "sqrt" => {
                    self.expect(&Token::LParen)?;
                    let e = self.expr()?;
                    self.expect(&Token::RParen)?;
                    Ok(Expr::Sqrt(Box::new(e)))
                }
                _ => Ok(Expr::Param(name)),
            },
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Coefficients of `e1..en` in a linear combination such as `t*e1 - 2/t e3`.
pub fn linear_combination(text: &str, n: usize) -> Result<Vec<Expr>> {
    linear_in_symbols(text, n, &|p: &str| {
        let k: usize = p.strip_prefix('e')?.parse().ok()?;
        (1..=n).contains(&k).then_some(k - 1)
    })
}

/// Coefficients of a linear form in `n` named symbols; `index` maps a
/// symbol name to its slot.
pub fn linear_in_symbols(text: &str, n: usize, index: &dyn Fn(&str) -> Option<usize>) -> Result<Vec<Expr>> {
    let e = Expr::parse(text)?;
    let basis_index = |p: &str| index(p);
    let is_basis = |e: &Expr| matches!(e, Expr::Param(p) if basis_index(p).is_some());
    let has_basis = |e: &Expr| e.contains(&is_basis);

    // Returns per-vector coefficients; `None` entries are absent.
    fn split(
        e: &Expr,
        n: usize,
        has_basis: &dyn Fn(&Expr) -> bool,
        index: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<Vec<Option<Expr>>> {
        let mut out = vec![None; n];
        let combine = |a: Vec<Option<Expr>>, b: Vec<Option<Expr>>, sub: bool| -> Vec<Option<Expr>> {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| match (x, y) {
                    (x, None) => x,
                    (None, Some(y)) => Some(if sub { Expr::Neg(Box::new(y)) } else { y }),
                    (Some(x), Some(y)) => Some(if sub {
                        Expr::Sub(Box::new(x), Box::new(y))
                    } else {
                        Expr::Add(Box::new(x), Box::new(y))
                    }),
                })
                .collect()
        };
        let scale = |v: Vec<Option<Expr>>, f: &dyn Fn(Expr) -> Expr| -> Vec<Option<Expr>> {
            v.into_iter().map(|x| x.map(f)).collect()
        };
        match e {
            Expr::Param(p) if index(p).is_some() => {
                out[index(p).unwrap()] = Some(Expr::int(1));
                Ok(out)
            }
            Expr::Add(a, b) => Ok(combine(
                split(a, n, has_basis, index)?,
                split(b, n, has_basis, index)?,
                false,
            )),
            Expr::Sub(a, b) => Ok(combine(
                split(a, n, has_basis, index)?,
                split(b, n, has_basis, index)?,
                true,
            )),
            Expr::Neg(a) => Ok(scale(split(a, n, has_basis, index)?, &|x| Expr::Neg(Box::new(x)))),
            Expr::Mul(a, b) if !has_basis(a) && has_basis(b) => {
                let c = (**a).clone();
                Ok(scale(split(b, n, has_basis, index)?, &|x| {
                    Expr::Mul(Box::new(c.clone()), Box::new(x))
                }))
            }
            Expr::Mul(a, b) if has_basis(a) && !has_basis(b) => {
                let c = (**b).clone();
                Ok(scale(split(a, n, has_basis, index)?, &|x| {
                    Expr::Mul(Box::new(x), Box::new(c.clone()))
                }))
            }
            Expr::Div(a, b) if has_basis(a) && !has_basis(b) => {
                let c = (**b).clone();
                Ok(scale(split(a, n, has_basis, index)?, &|x| {
                    Expr::Div(Box::new(x), Box::new(c.clone()))
                }))
            }
            _ => Err(Error::Parse(format!(
                "`{e}` is not a linear combination of basis vectors"
            ))),
        }
    }

    let coeffs = split(&e, n, &has_basis, &basis_index)?;
    Ok(coeffs.into_iter().map(|c| c.unwrap_or_else(|| Expr::int(0))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{gq, gq_ratio};

    fn at(e: &str, t: GaussianRational) -> GaussianRational {
        Expr::parse(e)
            .unwrap()
            .eval_exact(&|s| (s == Symbol::T).then(|| t.clone()))
            .unwrap()
    }

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(at("1+2*3", gq(0)), gq(7));
        assert_eq!(at("-t^2", gq(3)), gq(-9));
        assert_eq!(at("2t+1", gq(3)), gq(7));
        assert_eq!(at("(t+1)(t-1)", gq(3)), gq(8));
        assert_eq!(at("1/2t", gq(3)), gq_ratio(3, 2));
        assert_eq!(at("t^(-2)", gq(2)), gq_ratio(1, 4));
        assert_eq!(at("t^(3/2)", gq(4)), gq(8));
        assert_eq!(at("0.25", gq(0)), gq_ratio(1, 4));
        assert_eq!(at("sqrt(-4)", gq(0)), &gq(2) * &GaussianRational::i());
        assert_eq!(at("2i", gq(0)), &gq(2) * &GaussianRational::i());
    }

    #[test]
    fn structure_constant_tokens() {
        let e = Expr::parse("c_12^4 + c_{21}^{4}").unwrap();
        let v = e
            .eval_exact(&|s| match s {
                Symbol::StructConst(1, 2, 4) => Some(gq(3)),
                Symbol::StructConst(2, 1, 4) => Some(gq(-1)),
                _ => None,
            })
            .unwrap();
        assert_eq!(v, gq(2));
    }

    #[test]
    fn display_reparses() {
        for s in [
            "sqrt(4t^2-5)/(2(t^2-1))",
            "-1/2*i+t^(2)",
            "alpha*(t-1)^(-3)",
            "c_11^3-c_{12}^{3}",
        ] {
            let e = Expr::parse(s).unwrap();
            let again = Expr::parse(&e.to_string()).unwrap();
            let env = |s: Symbol<'_>| match s {
                Symbol::T => Some(gq_ratio(3, 2)),
                Symbol::Param(_) => Some(gq(5)),
                Symbol::StructConst(i, j, k) => Some(gq((i * 100 + j * 10 + k) as i64)),
            };
            assert_eq!(e.eval_exact(&env).unwrap(), again.eval_exact(&env).unwrap(), "{s}");
        }
    }

    #[test]
    fn parameter_derivatives() {
        let d = |s: &str, a: GaussianRational| {
            let e = Expr::parse(s).unwrap().derivative("alpha");
            e.eval_exact(&|sym| match sym {
                Symbol::Param("alpha") => Some(a.clone()),
                Symbol::T => Some(gq(5)),
                _ => None,
            })
            .unwrap()
        };
        assert_eq!(d("alpha^3 - 2alpha + t", gq(2)), gq(10));
        assert_eq!(d("t/alpha", gq(2)), gq_ratio(-5, 4));
        assert_eq!(d("sqrt(alpha)", gq(4)), gq_ratio(1, 4));
        assert_eq!(d("alpha^(1/2) * alpha", gq(4)), gq(3));
        assert_eq!(d("c_11^2 + t", gq(1)), gq(0));
    }

    #[test]
    fn parse_errors() {
        for s in ["", "1+", "(t", "t^x", "2 $ 3"] {
            assert!(Expr::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn linear_combinations() {
        let v = linear_combination("t*e1 - 2/t e3 + e5", 5).unwrap();
        let val = |e: &Expr| e.eval_exact(&|s| (s == Symbol::T).then(|| gq(2))).unwrap();
        let got: Vec<_> = v.iter().map(val).collect();
        assert_eq!(got, vec![gq(2), gq(0), gq(-1), gq(0), gq(1)]);
        let v = linear_combination("(t+1)/t e2 - e4", 4).unwrap();
        assert_eq!(val(&v[1]), gq_ratio(3, 2));
        assert!(linear_combination("e1*e2", 2).is_err());
        assert!(linear_combination("e1+1", 2).is_err());
    }
}
