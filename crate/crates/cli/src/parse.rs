//! Expressions over `Q(ξ)` (optionally extended by one algebraic constant) in
//! one variable, with a single radical `S^(1/k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use superint::field::Field;
use superint::integrate::ratfun::{self, RatFun};
use superint::poly::{self, Poly};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn describe(tok: Option<&(usize, Token)>) -> String {
    match tok {
        None => "end of input".into(),
        Some((_, Token::Num(n))) => format!("number {n}"),
        Some((_, Token::Ident(s))) => format!("identifier `{s}`"),
        Some((_, Token::Op(c))) => format!("`{c}`"),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Token::Num(decimal(&lit).ok_or_else(|| parse_err(pos, "a number", &format!("`{lit}`")))?)));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Token::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Token::Op(ch)));
            i += 1;
        } else if ch == '−' {
            out.push((pos, Token::Op('-')));
            i += 1;
        } else {
            return Err(parse_err(pos, "a number, identifier or operator", &format!("`{ch}`")));
        }
    }
    Ok(out)
}

fn decimal(lit: &str) -> Option<BigRational> {
    let (int, frac) = lit.split_once('.').unwrap_or((lit, ""));
    if int.is_empty() || frac.contains('.') {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    Some(BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32)))
}

fn parse_err(pos: usize, expected: &str, found: &str) -> CliError {
    CliError::Parse { pos, expected: expected.into(), found: found.into() }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Root(Box<Expr>, usize),
}

struct Parser {
    toks: Vec<(usize, Token)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn fail(&self, expected: &str) -> CliError {
        parse_err(self.pos(), expected, &describe(self.toks.get(self.at)))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), CliError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.fail(&format!("`{op}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.exponent(base)
    }

    fn integer(&mut self) -> Result<u32, CliError> {
        match self.peek() {
            Some(Token::Num(n)) if n.is_integer() => {
                let v = u32::try_from(n.to_integer()).map_err(|_| self.fail("a small exponent"))?;
                self.at += 1;
                Ok(v)
            }
            _ => Err(self.fail("a nonnegative integer")),
        }
    }

    /// `^n`, `^(n)` or `^(1/k)`.
    fn exponent(&mut self, base: Expr) -> Result<Expr, CliError> {
        if !self.eat('(') {
            return Ok(Expr::Pow(Box::new(base), self.integer()?));
        }
        let num = self.integer()?;
        if self.eat(')') {
            return Ok(Expr::Pow(Box::new(base), num));
        }
        if num != 1 {
            return Err(self.fail("`)` (only radicals `^(1/k)` are supported)"));
        }
        self.expect('/')?;
        let k = self.integer()?;
        self.expect(')')?;
        if k < 2 {
            return Err(CliError::Shape(format!("radical index {k} must be at least 2")));
        }
        Ok(Expr::Root(Box::new(base), k as usize))
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Ident(s))
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.fail("a number, identifier or `(`")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, CliError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, len: text.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(p.fail("an operator or end of input"));
    }
    Ok(e)
}

impl Expr {
    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Num(_) | Expr::Ident(_) => vec![],
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Root(a, _) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
        }
    }

    /// Indices of all radicals, in order of appearance.
    pub fn root_indices(&self) -> Vec<usize> {
        let mut out = match self {
            Expr::Root(_, k) => vec![*k],
            _ => vec![],
        };
        out.extend(self.children().into_iter().flat_map(Expr::root_indices));
        out
    }

    pub fn identifiers(&self) -> Vec<String> {
        let mut out = match self {
            Expr::Ident(s) => vec![s.clone()],
            _ => vec![],
        };
        for c in self.children() {
            for s in c.identifiers() {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Names bound to field elements, plus the polynomial variable.
pub struct Scope<'a, F: Field> {
    pub field: &'a F,
    pub var: &'a str,
    pub consts: Vec<(String, F::Elem)>,
}

/// `rat · S^(sign/k)`.
#[derive(Clone, Debug)]
pub struct Value<E: superint::field::FieldElem> {
    pub rat: RatFun<E>,
    pub root: Option<(Poly<E>, usize, i8)>,
}

impl<F: Field> Scope<'_, F> {
    fn plain(&self, rat: RatFun<F::Elem>) -> Value<F::Elem> {
        Value { rat, root: None }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value<F::Elem>, CliError> {
        let f = self.field;
        Ok(match e {
            Expr::Num(n) => {
                let c = f.from_rational(n).ok_or_else(|| CliError::Shape(format!("{n} is not in the field")))?;
                self.plain(ratfun::from_poly(f, Poly::constant(c)))
            }
            Expr::Ident(s) if s == self.var => self.plain(ratfun::from_poly(f, poly::x(f))),
            Expr::Ident(s) => {
                let c = self
                    .consts
                    .iter()
                    .find(|(n, _)| n == s)
                    .map(|(_, c)| c.clone())
                    .ok_or_else(|| CliError::Shape(format!("unknown identifier `{s}`")))?;
                self.plain(ratfun::from_poly(f, Poly::constant(c)))
            }
            Expr::Neg(a) => {
                let v = self.eval(a)?;
                Value { rat: ratfun::neg(f, &v.rat), root: v.root }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (u, v) = (self.eval(a)?, self.eval(b)?);
                let v = if matches!(e, Expr::Sub(..)) { Value { rat: ratfun::neg(f, &v.rat), root: v.root } } else { v };
                match (u.root.is_some() && !u.rat.is_zero(), v.root.is_some() && !v.rat.is_zero()) {
                    (false, false) => self.plain(ratfun::add(f, &u.rat, &v.rat)),
                    _ if u.root == v.root => Value { rat: ratfun::add(f, &u.rat, &v.rat), root: u.root },
                    (true, false) if v.rat.is_zero() => u,
                    (false, true) if u.rat.is_zero() => v,
                    _ => return Err(CliError::Shape("sums must share a single radical".into())),
                }
            }
            Expr::Mul(a, b) => self.product(self.eval(a)?, self.eval(b)?)?,
            Expr::Div(a, b) => {
                let v = self.eval(b)?;
                if v.rat.is_zero() {
                    return Err(CliError::Shape("division by zero".into()));
                }
                let inv = ratfun::new(f, v.rat.den().clone(), v.rat.num().clone());
                self.product(self.eval(a)?, Value { rat: inv, root: v.root.map(|(s, k, e)| (s, k, -e)) })?
            }
            Expr::Pow(a, n) => {
                let v = self.eval(a)?;
                if v.root.is_some() && *n != 1 {
                    return Err(CliError::Shape("powers of a radical are not supported".into()));
                }
                let rat = (0..*n).fold(ratfun::from_poly(f, poly::one(f)), |acc, _| ratfun::mul(f, &acc, &v.rat));
                Value { rat, root: v.root }
            }
            Expr::Root(a, k) => {
                let v = self.eval(a)?;
                if v.root.is_some() {
                    return Err(CliError::Shape("nested radicals are not supported".into()));
                }
                // (N/D)^(1/k) = (N D^(k-1))^(1/k) / D
                let (num, den) = (v.rat.num(), v.rat.den());
                let s = poly::mul(f, num, &poly::pow(f, den, k - 1));
                Value { rat: ratfun::new(f, poly::one(f), den.clone()), root: Some((s, *k, 1)) }
            }
        })
    }

    fn product(&self, u: Value<F::Elem>, v: Value<F::Elem>) -> Result<Value<F::Elem>, CliError> {
        let rat = ratfun::mul(self.field, &u.rat, &v.rat);
        let root = match (u.root, v.root) {
            (None, r) | (r, None) => r,
            (Some((s, k, e)), Some((t, l, g))) if s == t && k == l && e == -g => None,
            _ => return Err(CliError::Shape("products may contain only one radical".into())),
        };
        Ok(Value { rat, root })
    }

    /// A polynomial without radicals.
    pub fn poly(&self, e: &Expr) -> Result<Poly<F::Elem>, CliError> {
        let v = self.eval(e)?;
        if v.root.is_some() || !v.rat.is_polynomial() {
            return Err(CliError::Shape("expected a polynomial".into()));
        }
        let den = v.rat.den().coeffs()[0].clone();
        Ok(poly::scale(self.field, v.rat.num(), &self.field.inv(&den).unwrap()))
    }
}

/// Rational number literal such as `-3/7` or `0.25`.
pub fn rational(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Input(format!("`{text}` is not a rational number"));
    let (sign, body) = match text.trim().strip_prefix('-') {
        Some(rest) => (-BigRational::one(), rest),
        None => (BigRational::one(), text.trim()),
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (decimal(n.trim()).ok_or_else(bad)?, decimal(d.trim()).ok_or_else(bad)?);
            if d.is_zero() {
                return Err(bad());
            }
            n / d
        }
        None => decimal(body).ok_or_else(bad)?,
    };
    Ok(sign * q)
}
