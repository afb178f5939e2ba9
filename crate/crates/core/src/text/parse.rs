//! Recursive-descent parser for the plain-text forms.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | power)*      juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' exponent)?                 exponent is a signed integer
//! primary := integer | 'i' | 'x' | 'z' | 'D' | 'Dz'
//!          | 'exp(' sum ')' | 'S[' sum ']' | '(' sum ')'
//! ```
//!
//! `D` is `d/dx`, `Dz` is `d/dz`, `S[λ]` sends `z` to `z + λ`, and `exp(·)`
//! accepts `λ*x` or `x*z`. In operator algebras `*` is composition and `A / f`
//! means `A ∘ f⁻¹` for a function `f`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;


use crate::error::{Error, Result};
use crate::exactfield::{Denom, Gq, Poly, PolyExp, RatExp};
use crate::opalgebra_x::DiffOpX;
use crate::opalgebra_z::{RatFunZ, TransDiffOpZ, ZDen};
use crate::waveform::WaveForm;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(&'static str),
    Sym(char),
}

const IDENTS: [&str; 7] = ["exp", "Dz", "D", "S", "x", "z", "i"];

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut rest = s;
    while let Some(ch) = rest.chars().next() {
        if ch.is_whitespace() {
            rest = &rest[ch.len_utf8()..];
        } else if ch.is_ascii_digit() {
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            out.push(Tok::Num(rest[..end].to_string()));
            rest = &rest[end..];
        } else if "+-*/^()[]".contains(ch) {
            out.push(Tok::Sym(ch));
            rest = &rest[1..];
        } else if let Some(id) = IDENTS.iter().find(|id| rest.starts_with(**id)) {
            out.push(Tok::Ident(id));
            rest = &rest[id.len()..];
        } else {
            return Err(Error::Parse(format!("unexpected character '{ch}' in \"{s}\"")));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Atom {
    X,
    Z,
    I,
    D,
    Dz,
}

#[derive(Clone, Debug)]
enum Node {
    Num(Gq),
    Atom(Atom),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
    Exp(Box<Node>),
    Shift(Box<Node>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}' at token {}", self.pos)))
        }
    }

    fn sum(&mut self) -> Result<Node> {
        let mut n = self.term()?;
        loop {
            if self.eat('+') {
                n = Node::Add(Box::new(n), Box::new(self.term()?));
            } else if self.eat('-') {
                n = Node::Sub(Box::new(n), Box::new(self.term()?));
            } else {
                return Ok(n);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<Node> {
        let mut n = self.unary()?;
        loop {
            if self.eat('*') {
                n = Node::Mul(Box::new(n), Box::new(self.unary()?));
            } else if self.eat('/') {
                n = Node::Div(Box::new(n), Box::new(self.unary()?));
            } else if self.starts_primary() {
                n = Node::Mul(Box::new(n), Box::new(self.power()?));
            } else {
                return Ok(n);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let e = match self.peek() {
            Some(Tok::Num(s)) => {
                i64::from_str(s).map_err(|_| Error::Parse(format!("exponent {s} out of range")))?
            }
            _ => return Err(Error::Parse("exponent must be an integer".into())),
        };
        self.pos += 1;
        if paren {
            self.expect(')')?;
        }
        Ok(Node::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn primary(&mut self) -> Result<Node> {
        let t = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match t {
            Tok::Num(s) => Ok(Node::Num(Gq::from_str(&s)?)),
            Tok::Ident("x") => Ok(Node::Atom(Atom::X)),
            Tok::Ident("z") => Ok(Node::Atom(Atom::Z)),
            Tok::Ident("i") => Ok(Node::Atom(Atom::I)),
            Tok::Ident("D") => Ok(Node::Atom(Atom::D)),
            Tok::Ident("Dz") => Ok(Node::Atom(Atom::Dz)),
            Tok::Ident("exp") => {
                self.expect('(')?;
                let a = self.sum()?;
                self.expect(')')?;
                Ok(Node::Exp(Box::new(a)))
            }
            Tok::Ident("S") => {
                self.expect('[')?;
                let a = self.sum()?;
                self.expect(']')?;
                Ok(Node::Shift(Box::new(a)))
            }
            Tok::Sym('(') => {
                let a = self.sum()?;
                self.expect(')')?;
                Ok(a)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

fn parse_tree(s: &str) -> Result<Node> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let n = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {} of \"{s}\"", p.pos)));
    }
    Ok(n)
}

fn not_allowed<T>(what: &str) -> Result<T> {
    Err(Error::Parse(format!("{what} is not allowed in this context")))
}

/// Target algebra of an evaluation.
trait Alg: Sized {
    fn scalar(c: Gq) -> Self;
    fn atom(a: Atom) -> Result<Self>;
    fn exp_x(_l: Gq) -> Result<Self> {
        not_allowed("exp(λ*x)")
    }
    fn exp_xz() -> Result<Self> {
        not_allowed("exp(x*z)")
    }
    fn shift(_l: Gq) -> Result<Self> {
        not_allowed("S[λ]")
    }
    fn add(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn div(&self, _o: &Self) -> Result<Self> {
        not_allowed("division by a non-constant")
    }
    fn scale(&self, c: &Gq) -> Self;
    fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Self::scalar(Gq::one()).div(&self.pow(-e)?);
        }
        let mut acc = Self::scalar(Gq::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

fn scalar_atom<T: Alg>(a: Atom, f: impl FnOnce(Atom) -> Result<T>) -> Result<T> {
    match a {
        Atom::I => Ok(T::scalar(Gq::i())),
        _ => f(a),
    }
}

fn eval<T: Alg>(n: &Node) -> Result<T> {
    match n {
        Node::Num(c) => Ok(T::scalar(c.clone())),
        Node::Atom(a) => scalar_atom(*a, T::atom),
        Node::Neg(a) => Ok(eval::<T>(a)?.neg()),
        Node::Add(a, b) => eval::<T>(a)?.add(&eval(b)?),
        Node::Sub(a, b) => eval::<T>(a)?.add(&eval::<T>(b)?.neg()),
        Node::Mul(a, b) => eval::<T>(a)?.mul(&eval(b)?),
        Node::Div(a, b) => {
            let num = eval::<T>(a)?;
            match eval::<Gq>(b) {
                Ok(c) => Ok(num.scale(&c.inv()?)),
                Err(_) => num.div(&eval(b)?),
            }
        }
        Node::Pow(a, e) => eval::<T>(a)?.pow(*e),
        Node::Exp(a) => {
            if is_xz(a) {
                return T::exp_xz();
            }
            let p = eval::<PolyExp>(a)?.as_poly().filter(|p| p.degree().unwrap_or(0) <= 1 && p.coeff(0).is_zero());
            match p {
                Some(p) => T::exp_x(p.coeff(1)),
                None => Err(Error::Parse("exp(·) accepts λ*x or x*z".into())),
            }
        }
        Node::Shift(a) => T::shift(eval::<Gq>(a)?),
    }
}

fn is_xz(n: &Node) -> bool {
    matches!(n, Node::Mul(a, b) if matches!((&**a, &**b),
        (Node::Atom(Atom::X), Node::Atom(Atom::Z)) | (Node::Atom(Atom::Z), Node::Atom(Atom::X))))
}

impl Alg for Gq {
    fn scalar(c: Gq) -> Self {
        c
    }
    fn atom(_: Atom) -> Result<Self> {
        not_allowed("a variable")
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }
    fn scale(&self, c: &Gq) -> Self {
        self * c
    }
}

impl Alg for PolyExp {
    fn scalar(c: Gq) -> Self {
        PolyExp::constant(c)
    }
    fn atom(a: Atom) -> Result<Self> {
        match a {
            Atom::X => Ok(PolyExp::x()),
            _ => not_allowed("this symbol"),
        }
    }
    fn exp_x(l: Gq) -> Result<Self> {
        Ok(PolyExp::exp(l))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.exact_div(o)
    }
    fn scale(&self, c: &Gq) -> Self {
        PolyExp::scale(self, c)
    }
}

struct Zp(Poly);

impl Alg for Zp {
    fn scalar(c: Gq) -> Self {
        Zp(Poly::constant(c))
    }
    fn atom(a: Atom) -> Result<Self> {
        match a {
            Atom::Z => Ok(Zp(Poly::var())),
            _ => not_allowed("this symbol"),
        }
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(Zp(&self.0 + &o.0))
    }
    fn neg(&self) -> Self {
        Zp(-&self.0)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(Zp(&self.0 * &o.0))
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.0.exact_div(&o.0).map(Zp)
    }
    fn scale(&self, c: &Gq) -> Self {
        Zp(self.0.scale(c))
    }
}

impl Alg for RatExp {
    fn scalar(c: Gq) -> Self {
        RatExp::from(PolyExp::constant(c))
    }
    fn atom(a: Atom) -> Result<Self> {
        PolyExp::atom(a).map(RatExp::from)
    }
    fn exp_x(l: Gq) -> Result<Self> {
        Ok(RatExp::from(PolyExp::exp(l)))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RatExp::div(self, o)
    }
    fn scale(&self, c: &Gq) -> Self {
        RatExp::scale(self, c)
    }
}

impl Alg for RatFunZ {
    fn scalar(c: Gq) -> Self {
        RatFunZ::constant(c)
    }
    fn atom(a: Atom) -> Result<Self> {
        match a {
            Atom::Z => Ok(RatFunZ::z()),
            _ => not_allowed("this symbol"),
        }
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RatFunZ::div(self, o)
    }
    fn scale(&self, c: &Gq) -> Self {
        RatFunZ::scale(self, c)
    }
}

impl Alg for DiffOpX {
    fn scalar(c: Gq) -> Self {
        DiffOpX::function(RatExp::scalar(c))
    }
    fn atom(a: Atom) -> Result<Self> {
        match a {
            Atom::D => Ok(DiffOpX::d()),
            _ => RatExp::atom(a).map(DiffOpX::function),
        }
    }
    fn exp_x(l: Gq) -> Result<Self> {
        Ok(DiffOpX::function(RatExp::from(PolyExp::exp(l))))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok((self * o).cancel())
    }
    fn div(&self, o: &Self) -> Result<Self> {
        match o.order() {
            Some(0) => Ok((self * &DiffOpX::function(o.coeff(0).inv()?)).cancel()),
            None => Err(Error::DivisionByZero),
            _ => not_allowed("division by a differential operator"),
        }
    }
    fn scale(&self, c: &Gq) -> Self {
        DiffOpX::scale(self, c)
    }
}

/// The coefficient `r` when `t = r(z)`.
fn tdiff_function(t: &TransDiffOpZ) -> Option<RatFunZ> {
    if t.is_zero() {
        return Some(RatFunZ::zero());
    }
    let mut it = t.terms();
    let (l, cs) = it.next()?;
    (it.next().is_none() && l.is_zero() && cs.len() == 1).then(|| cs[0].clone())
}

impl Alg for TransDiffOpZ {
    fn scalar(c: Gq) -> Self {
        TransDiffOpZ::function(RatFunZ::constant(c))
    }
    fn atom(a: Atom) -> Result<Self> {
        match a {
            Atom::Dz => Ok(TransDiffOpZ::dz()),
            _ => RatFunZ::atom(a).map(TransDiffOpZ::function),
        }
    }
    fn shift(l: Gq) -> Result<Self> {
        Ok(TransDiffOpZ::shift(l))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        match tdiff_function(o) {
            Some(r) => Ok(self * &TransDiffOpZ::function(r.inv()?)),
            None => not_allowed("division by an operator"),
        }
    }
    fn scale(&self, c: &Gq) -> Self {
        TransDiffOpZ::scale(self, c)
    }
}

/// `w · e^{k·xz}` with `w` a rational prefactor.
struct Mixed {
    k: i64,
    w: WaveForm,
}

impl Mixed {
    fn plain(num: Vec<PolyExp>) -> Mixed {
        Mixed { k: 0, w: WaveForm::from_parts(num, Denom::one(), ZDen::one()) }
    }
}

impl Alg for Mixed {
    fn scalar(c: Gq) -> Self {
        Mixed::plain(vec![PolyExp::constant(c)])
    }
    fn atom(a: Atom) -> Result<Self> {
        match a {
            Atom::X => Ok(Mixed::plain(vec![PolyExp::x()])),
            Atom::Z => Ok(Mixed::plain(vec![PolyExp::zero(), PolyExp::one()])),
            _ => not_allowed("an operator symbol"),
        }
    }
    fn exp_x(l: Gq) -> Result<Self> {
        Ok(Mixed::plain(vec![PolyExp::exp(l)]))
    }
    fn exp_xz() -> Result<Self> {
        Ok(Mixed { k: 1, w: WaveForm::exz() })
    }
    fn add(&self, o: &Self) -> Result<Self> {
        if self.w.is_zero() {
            return Ok(Mixed { k: o.k, w: o.w.clone() });
        }
        if o.w.is_zero() {
            return Ok(Mixed { k: self.k, w: self.w.clone() });
        }
        if self.k != o.k {
            return Err(Error::Parse("sum of terms with different powers of exp(x*z)".into()));
        }
        Ok(Mixed { k: self.k, w: (&self.w + &o.w).reduce() })
    }
    fn neg(&self) -> Self {
        Mixed { k: self.k, w: &WaveForm::zero() - &self.w }
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(Mixed { k: self.k + o.k, w: self.w.mul_prefactor(&o.w) })
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(Mixed { k: self.k - o.k, w: self.w.div_prefactor(&o.w)? })
    }
    fn scale(&self, c: &Gq) -> Self {
        Mixed { k: self.k, w: self.w.scale(&RatExp::scalar(c.clone()), &RatFunZ::one()) }
    }
}

fn parse_as<T: Alg>(s: &str) -> Result<T> {
    eval(&parse_tree(s)?)
}

pub fn parse_scalar(s: &str) -> Result<Gq> {
    parse_as(s)
}

pub fn parse_polyexp(s: &str) -> Result<PolyExp> {
    parse_as(s)
}

/// A polynomial in `z`.
pub fn parse_zpoly(s: &str) -> Result<Poly> {
    parse_as::<Zp>(s).map(|p| p.0)
}

pub fn parse_ratexp(s: &str) -> Result<RatExp> {
    parse_as::<RatExp>(s).map(RatExp::cancel)
}

pub fn parse_ratfunz(s: &str) -> Result<RatFunZ> {
    parse_as(s)
}

pub fn parse_diffop(s: &str) -> Result<DiffOpX> {
    parse_as(s)
}

pub fn parse_tdiff(s: &str) -> Result<TransDiffOpZ> {
    parse_as(s)
}

/// A form `r(x, z)·exp(x*z)` with `r` rational in `z` and in `x, e^{λx}`.
pub fn parse_waveform(s: &str) -> Result<WaveForm> {
    let m = parse_as::<Mixed>(s)?;
    if m.w.is_zero() || m.k == 1 {
        Ok(m.w)
    } else {
        Err(Error::Parse("expected exactly one factor exp(x*z)".into()))
    }
}
