//! A small expression language for user-defined smooth maps.
//!
//! Supported: rational literals (`3`, `3/4`, `0.25`), declared identifiers,
//! `+ - * /`, unary minus, integer powers `x^2`, and the functions `sin`,
//! `cos`, `exp`, `sqrt`, and `bump` (a smooth plateau function equal to 1 on
//! `(-1,1)` and 0 outside `(-2,2)`).
//!
//! Precedence, tightest first: `^`, unary `-`, `* /`, `+ -`; binary
//! operators associate to the left. `print` and `parse` are mutually
//! inverse on tree structure.

use crate::rat::{parse_rat, rat, rat_to_f64, Rat};
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("evaluation left the domain: {0}")]
    EvaluationDomain(String),
}

/// Function nodes. `BumpDeriv(k)` is the `k`-th derivative of `bump`,
/// introduced by differentiation; `BumpDeriv(0)` is `bump` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    BumpDeriv(u32),
}

impl Func {
    fn name(&self) -> String {
        match self {
            Func::Sin => "sin".into(),
            Func::Cos => "cos".into(),
            Func::Exp => "exp".into(),
            Func::Sqrt => "sqrt".into(),
            Func::BumpDeriv(0) => "bump".into(),
            Func::BumpDeriv(k) => format!("bump_d{k}"),
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            "sqrt" => Some(Func::Sqrt),
            "bump" => Some(Func::BumpDeriv(0)),
            _ => name
                .strip_prefix("bump_d")
                .and_then(|k| k.parse::<u32>().ok())
                .map(Func::BumpDeriv),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rat(Rat),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn constant(r: Rat) -> Expr {
        Expr::Rat(r)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Sym(name.to_string())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Expr::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// All identifiers appearing in the tree.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Sym(s) = e {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Rat(_) | Expr::Sym(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

const MAX_DEPTH: usize = 200;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    declared: &'a [&'a str],
}

/// Parses `text` against a list of declared identifiers.
pub fn parse(text: &str, declared: &[&str]) -> Result<Expr, ExprError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, declared };
    p.skip_ws();
    let e = p.expr(0)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ExprError::Syntax {
            offset: p.pos,
            message: "trailing input".into(),
        });
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax { offset: self.pos, message: message.into() }
    }

    fn expr(&mut self, depth: usize) -> Result<Expr, ExprError> {
        if depth > MAX_DEPTH {
            return Err(self.syntax("expression too deeply nested"));
        }
        let mut lhs = self.term(depth + 1)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.term(depth + 1)?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.term(depth + 1)?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Expr, ExprError> {
        if depth > MAX_DEPTH {
            return Err(self.syntax("expression too deeply nested"));
        }
        let mut lhs = self.factor(depth + 1)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.factor(depth + 1)?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.factor(depth + 1)?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Expr, ExprError> {
        if depth > MAX_DEPTH {
            return Err(self.syntax("expression too deeply nested"));
        }
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            let inner = self.factor(depth + 1)?;
            // A negated literal is a literal.
            return Ok(match inner {
                Expr::Rat(r) => Expr::Rat(-r),
                other => Expr::Neg(Box::new(other)),
            });
        }
        self.power(depth + 1)
    }

    fn power(&mut self, depth: usize) -> Result<Expr, ExprError> {
        let base = self.atom(depth + 1)?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.integer_exponent()?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i32, ExprError> {
        let start = self.pos;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.syntax("expected an integer exponent after `^`"));
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let value: i32 = text.parse().map_err(|_| ExprError::Syntax {
            offset: start,
            message: "integer exponent out of range".into(),
        })?;
        Ok(if neg { -value } else { value })
    }

    fn atom(&mut self, depth: usize) -> Result<Expr, ExprError> {
        if depth > MAX_DEPTH {
            return Err(self.syntax("expression too deeply nested"));
        }
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr(depth + 1)?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(depth),
            Some(_) => Err(self.syntax("expected a literal, identifier, or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == frac_start {
                return Err(self.syntax("expected digits after `.`"));
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match parse_rat(text) {
            Some(r) => Ok(Expr::Rat(r)),
            None => Err(ExprError::Syntax {
                offset: start,
                message: format!("bad numeric literal `{text}`"),
            }),
        }
    }

    fn identifier(&mut self, depth: usize) -> Result<Expr, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap().to_string();
        self.skip_ws();
        if self.peek() == Some(b'(') {
            let func = Func::from_name(&name).ok_or_else(|| ExprError::UnknownIdentifier {
                offset: start,
                name: name.clone(),
            })?;
            self.pos += 1;
            let arg = self.expr(depth + 1)?;
            self.skip_ws();
            if self.peek() != Some(b')') {
                return Err(self.syntax("expected `)` after function argument"));
            }
            self.pos += 1;
            Ok(Expr::Call(func, Box::new(arg)))
        } else {
            if !self.declared.contains(&name.as_str()) {
                return Err(ExprError::UnknownIdentifier { offset: start, name });
            }
            Ok(Expr::Sym(name))
        }
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Expr {
    // Precedence levels: 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Rat(r) if r.is_negative() => 3,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.prec();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Rat(r) => write!(f, "{r}")?,
            Expr::Sym(s) => write!(f, "{s}")?,
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Pow(a, n) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{n}")?;
            }
            Expr::Call(func, a) => {
                write!(f, "{}({})", func.name(), a)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Name/value bindings for evaluation. Lookups are a linear scan; binding
/// lists in this crate stay tiny.
#[derive(Clone, Debug, Default)]
pub struct Bindings<'a> {
    pairs: Vec<(&'a str, f64)>,
}

impl<'a> Bindings<'a> {
    pub fn new(pairs: &[(&'a str, f64)]) -> Self {
        Bindings { pairs: pairs.to_vec() }
    }

    pub fn set(&mut self, name: &'a str, value: f64) {
        for (n, v) in &mut self.pairs {
            if *n == name {
                *v = value;
                return;
            }
        }
        self.pairs.push((name, value));
    }

    fn get(&self, name: &str) -> Option<f64> {
        self.pairs.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

pub fn evaluate(e: &Expr, bindings: &Bindings) -> Result<f64, ExprError> {
    let v = eval_inner(e, bindings)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::EvaluationDomain(format!("`{e}` is not finite")))
    }
}

fn eval_inner(e: &Expr, b: &Bindings) -> Result<f64, ExprError> {
    let v = match e {
        Expr::Rat(r) => rat_to_f64(r),
        Expr::Sym(s) => b
            .get(s)
            .ok_or_else(|| ExprError::EvaluationDomain(format!("unbound symbol `{s}`")))?,
        Expr::Neg(a) => -eval_inner(a, b)?,
        Expr::Add(x, y) => eval_inner(x, b)? + eval_inner(y, b)?,
        Expr::Sub(x, y) => eval_inner(x, b)? - eval_inner(y, b)?,
        Expr::Mul(x, y) => eval_inner(x, b)? * eval_inner(y, b)?,
        Expr::Div(x, y) => {
            let den = eval_inner(y, b)?;
            if den == 0.0 {
                return Err(ExprError::EvaluationDomain("division by zero".into()));
            }
            eval_inner(x, b)? / den
        }
        Expr::Pow(x, n) => {
            let base = eval_inner(x, b)?;
            if base == 0.0 && *n < 0 {
                return Err(ExprError::EvaluationDomain("zero raised to a negative power".into()));
            }
            base.powi(*n)
        }
        Expr::Call(func, x) => {
            let arg = eval_inner(x, b)?;
            match func {
                Func::Sin => arg.sin(),
                Func::Cos => arg.cos(),
                Func::Exp => arg.exp(),
                Func::Sqrt => {
                    if arg < 0.0 {
                        return Err(ExprError::EvaluationDomain(
                            "square root of a negative number".into(),
                        ));
                    }
                    arg.sqrt()
                }
                Func::BumpDeriv(k) => bump_value(*k, arg),
            }
        }
    };
    if v.is_nan() {
        return Err(ExprError::EvaluationDomain(format!("`{e}` evaluated to NaN")));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Differentiation with light simplification
// ---------------------------------------------------------------------------

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Rat(r) if r.is_zero())
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Rat(r) if r == &rat(1))
}

/// Splits off the constant coefficient of a (possibly nested) product.
fn split_const(e: &Expr) -> (Rat, Option<Expr>) {
    match e {
        Expr::Rat(r) => (r.clone(), None),
        Expr::Neg(a) => {
            let (c, rest) = split_const(a);
            (-c, rest)
        }
        Expr::Mul(a, b) => {
            let (ca, ra) = split_const(a);
            let (cb, rb) = split_const(b);
            let c = ca * cb;
            let rest = match (ra, rb) {
                (None, None) => None,
                (Some(x), None) | (None, Some(x)) => Some(x),
                (Some(x), Some(y)) => Some(Expr::Mul(Box::new(x), Box::new(y))),
            };
            (c, rest)
        }
        Expr::Div(a, b) => {
            let (cb, rb) = split_const(b);
            if rb.is_none() && !cb.is_zero() {
                let (ca, ra) = split_const(a);
                (ca / cb, ra)
            } else {
                (rat(1), Some(e.clone()))
            }
        }
        other => (rat(1), Some(other.clone())),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        return b;
    }
    if is_zero(&b) {
        return a;
    }
    if let (Expr::Rat(x), Expr::Rat(y)) = (&a, &b) {
        return Expr::Rat(x + y);
    }
    Expr::Add(Box::new(a), Box::new(b))
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        return a;
    }
    if let (Expr::Rat(x), Expr::Rat(y)) = (&a, &b) {
        return Expr::Rat(x - y);
    }
    if is_zero(&a) {
        return neg(b);
    }
    Expr::Sub(Box::new(a), Box::new(b))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Rat(r) => Expr::Rat(-r),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        return Expr::Rat(rat(0));
    }
    if is_one(&a) {
        return b;
    }
    if is_one(&b) {
        return a;
    }
    let (c, rest) = split_const(&Expr::Mul(Box::new(a), Box::new(b)));
    match rest {
        None => Expr::Rat(c),
        Some(r) if c == rat(1) => r,
        Some(r) if c == rat(-1) => neg(r),
        Some(r) => Expr::Mul(Box::new(Expr::Rat(c)), Box::new(r)),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) && !is_zero(&b) {
        return Expr::Rat(rat(0));
    }
    if is_one(&b) {
        return a;
    }
    if let (Expr::Rat(x), Expr::Rat(y)) = (&a, &b) {
        if !y.is_zero() {
            return Expr::Rat(x / y);
        }
    }
    Expr::Div(Box::new(a), Box::new(b))
}

pub fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => Expr::Rat(rat(1)),
        1 => a,
        _ => {
            if let Expr::Rat(r) = &a {
                if n > 0 || !r.is_zero() {
                    if let Some(small) = n.checked_abs() {
                        let p = num::pow::pow(r.clone(), small as usize);
                        return Expr::Rat(if n > 0 { p } else { p.recip() });
                    }
                }
            }
            Expr::Pow(Box::new(a), n)
        }
    }
}

pub fn call(func: Func, a: Expr) -> Expr {
    Expr::Call(func, Box::new(a))
}

/// Exact derivative of `e` with respect to `var`; all other symbols are
/// treated as constants.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    match e {
        Expr::Rat(_) => Expr::Rat(rat(0)),
        Expr::Sym(s) => {
            if s == var {
                Expr::Rat(rat(1))
            } else {
                Expr::Rat(rat(0))
            }
        }
        Expr::Neg(a) => neg(differentiate(a, var)),
        Expr::Add(a, b) => add(differentiate(a, var), differentiate(b, var)),
        Expr::Sub(a, b) => sub(differentiate(a, var), differentiate(b, var)),
        Expr::Mul(a, b) => add(
            mul(differentiate(a, var), (**b).clone()),
            mul((**a).clone(), differentiate(b, var)),
        ),
        Expr::Div(a, b) => {
            let num = sub(
                mul(differentiate(a, var), (**b).clone()),
                mul((**a).clone(), differentiate(b, var)),
            );
            div(num, pow((**b).clone(), 2))
        }
        Expr::Pow(a, n) => {
            let da = differentiate(a, var);
            mul(
                mul(Expr::Rat(rat(*n as i64)), pow((**a).clone(), n - 1)),
                da,
            )
        }
        Expr::Call(func, a) => {
            let da = differentiate(a, var);
            let outer = match func {
                Func::Sin => call(Func::Cos, (**a).clone()),
                Func::Cos => neg(call(Func::Sin, (**a).clone())),
                Func::Exp => call(Func::Exp, (**a).clone()),
                Func::Sqrt => div(
                    Expr::Rat(rat(1)),
                    mul(Expr::Rat(rat(2)), call(Func::Sqrt, (**a).clone())),
                ),
                Func::BumpDeriv(k) => call(Func::BumpDeriv(k + 1), (**a).clone()),
            };
            mul(outer, da)
        }
    }
}

// ---------------------------------------------------------------------------
// The bump function
// ---------------------------------------------------------------------------

// On the shoulder 1 < s < 2 the bump equals N(s) = 1/(1 + exp(1/(2-s) - 1/(s-1))),
// which glues to the constant plateaus with infinite-order contact. Derivatives
// of any order are obtained by differentiating the shoulder expression with the
// engine itself; trees are cached per order.
static SHOULDER_DERIVS: Lazy<Mutex<Vec<Expr>>> = Lazy::new(|| {
    let s = "s";
    let text = "1/(1 + exp(1/(2 - s) - 1/(s - 1)))";
    let tree = parse(text, &[s]).expect("shoulder expression parses");
    Mutex::new(vec![tree])
});

/// Value of the `k`-th derivative of the bump at `x`. The bump is 1 on
/// `[-1, 1]`, 0 outside `(-2, 2)`, strictly monotone on the shoulders.
pub fn bump_value(k: u32, x: f64) -> f64 {
    let s = x.abs();
    if s <= 1.0 || s >= 2.0 {
        return if k == 0 && s <= 1.0 { 1.0 } else { 0.0 };
    }
    let tree = {
        let mut cache = SHOULDER_DERIVS.lock().unwrap();
        while cache.len() <= k as usize {
            let next = differentiate(cache.last().unwrap(), "s");
            cache.push(next);
        }
        cache[k as usize].clone()
    };
    let value = evaluate(&tree, &Bindings::new(&[("s", s)])).unwrap_or(0.0);
    // Chain rule through |x| flips odd derivatives on the negative side.
    if x < 0.0 && k % 2 == 1 {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn p(text: &str) -> Expr {
        parse(text, &["x1", "x2", "x3", "r", "s", "t", "x"]).unwrap()
    }

    #[test]
    fn parses_products_and_powers() {
        let e = p("x1*x3^2");
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::sym("x1")),
                Box::new(Expr::Pow(Box::new(Expr::sym("x3")), 2))
            )
        );
    }

    #[test]
    fn variable_atom() {
        assert_eq!(p("x1"), Expr::sym("x1"));
    }

    #[test]
    fn syntax_error_offset() {
        match parse("sin(", &["x"]) {
            Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier() {
        assert!(matches!(
            parse("y + 1", &["x"]),
            Err(ExprError::UnknownIdentifier { offset: 0, .. })
        ));
    }

    #[test]
    fn derivative_of_projection_pair() {
        // d/dx3 (x1*x3^2) = 2*x1*x3 and the second derivative is 2*x1.
        let e = p("x1*x3^2");
        let d1 = differentiate(&e, "x3");
        let d2 = differentiate(&d1, "x3");
        let b = Bindings::new(&[("x1", 3.0), ("x3", 5.0)]);
        assert_eq!(evaluate(&d1, &b).unwrap(), 30.0);
        assert_eq!(evaluate(&d2, &b).unwrap(), 6.0);
        // At x1 = 0 the second derivative vanishes.
        let b0 = Bindings::new(&[("x1", 0.0), ("x3", 0.7)]);
        assert_eq!(evaluate(&d2, &b0).unwrap(), 0.0);
    }

    #[test]
    fn derivative_of_constant() {
        assert_eq!(differentiate(&p("3/4"), "x"), Expr::Rat(rat(0)));
    }

    #[test]
    fn quadratic_form_derivatives() {
        // h = r/2 x1^2 + s x1 x2 - r/2 x2^2 has h_11 = r, h_12 = s, h_22 = -r.
        let h = p("1/2*r*x1^2 + s*x1*x2 - 1/2*r*x2^2");
        let h1 = differentiate(&h, "x1");
        assert_eq!(h1, p("r*x1 + s*x2"));
        let h11 = differentiate(&h1, "x1");
        let h12 = differentiate(&h1, "x2");
        let h22 = differentiate(&differentiate(&h, "x2"), "x2");
        let b = Bindings::new(&[("r", 2.5), ("s", -1.25), ("x1", 0.3), ("x2", 0.7)]);
        assert_eq!(evaluate(&h11, &b).unwrap(), 2.5);
        assert_eq!(evaluate(&h12, &b).unwrap(), -1.25);
        assert_eq!(evaluate(&h22, &b).unwrap(), -2.5);
    }

    #[test]
    fn evaluation_domain_errors() {
        let b = Bindings::new(&[("x1", 0.0), ("x2", 3.0)]);
        assert_eq!(evaluate(&p("x2^2"), &b).unwrap(), 9.0);
        assert!(matches!(
            evaluate(&p("1/x1"), &b),
            Err(ExprError::EvaluationDomain(_))
        ));
        assert!(matches!(
            evaluate(&p("sqrt(0 - x2)"), &b),
            Err(ExprError::EvaluationDomain(_))
        ));
    }

    #[test]
    fn bump_plateau_and_support() {
        assert_eq!(bump_value(0, 0.5), 1.0);
        assert_eq!(bump_value(0, -0.5), 1.0);
        assert_eq!(bump_value(0, 2.5), 0.0);
        let mid = bump_value(0, 1.5);
        assert!(mid > 0.0 && mid < 1.0);
        // Monotone decreasing on the right shoulder.
        assert!(bump_value(0, 1.2) > bump_value(0, 1.8));
        // First derivative: zero on plateaus, negative on the right shoulder,
        // positive (mirror) on the left shoulder.
        assert_eq!(bump_value(1, 0.5), 0.0);
        assert!(bump_value(1, 1.5) < 0.0);
        assert!(bump_value(1, -1.5) > 0.0);
    }

    #[test]
    fn bump_derivative_matches_finite_difference() {
        let h = 1e-5;
        for &x in &[1.3, 1.5, 1.8, -1.4, -1.7] {
            let fd = (bump_value(0, x + h) - bump_value(0, x - h)) / (2.0 * h);
            let sym = bump_value(1, x);
            assert!((fd - sym).abs() < 1e-5, "x={x}: fd={fd} sym={sym}");
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "x1*x3^2",
            "1/2*r*x1^2 + s*x1*x2 - 1/2*r*x2^2",
            "-x1^2",
            "sin(x1) + cos(x2)*exp(x3)",
            "bump(x1/2)",
            "(x1 + x2)^3/(x1 - 1)",
            "x1^-2",
            "-3/4*x1",
        ] {
            let e = p(text);
            let printed = e.to_string();
            let reparsed = p(&printed);
            assert_eq!(e, reparsed, "round trip failed for `{text}` -> `{printed}`");
        }
    }
}
