use crate::exact_algebra::{qi, Monomial, MultiPoly, Ring, Q};
use num_traits::Signed;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The parameters a ledger coefficient may depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    K,
    L,
    M,
    S,
    T,
    N,
}

impl Param {
    pub const ALL: [Param; 6] = [Param::K, Param::L, Param::M, Param::S, Param::T, Param::N];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["k", "l", "m", "s", "t", "N"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// A polynomial in the parameters. Coefficients are rational so that
/// integer-valued polynomials such as s(s+1)/2 are representable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicInt(MultiPoly);

impl SymbolicInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn int(n: i64) -> Self {
        Self::q(qi(n))
    }

    pub fn q(c: Q) -> Self {
        SymbolicInt(MultiPoly::constant(c))
    }

    pub fn var(p: Param) -> Self {
        SymbolicInt(MultiPoly::var(p.index()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::int(1), |acc, _| &acc * self)
    }

    /// `x(x-1)/2`, the binomial coefficient of `x` over 2.
    pub fn choose2(&self) -> Self {
        let c = SymbolicInt::q(crate::exact_algebra::qr(1, 2));
        &(&c * self) * &(self - &Self::int(1))
    }

    pub fn depends_on(&self, p: Param) -> bool {
        self.0.variables().contains(&p.index())
    }

    /// Replaces `p` by `value` everywhere.
    pub fn subst(&self, p: Param, value: &SymbolicInt) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in self.0.terms() {
            let mut t = MultiPoly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let base = if i == p.index() { value.0.clone() } else { MultiPoly::var(i) };
                for _ in 0..e {
                    t = t.mul(&base);
                }
            }
            out = out.add(&t);
        }
        SymbolicInt(out)
    }

    pub fn eval(&self, values: &[(Param, i64)]) -> Self {
        values.iter().fold(self.clone(), |acc, (p, v)| acc.subst(*p, &Self::int(*v)))
    }

    /// The value, if no parameter occurs.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        let mut it = self.0.terms();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if m.exps().is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    /// Splits off the part that does not involve `p`.
    pub fn split_free_of(&self, p: Param) -> (SymbolicInt, SymbolicInt) {
        let mut free = MultiPoly::zero();
        let mut rest = MultiPoly::zero();
        for (m, c) in self.0.terms() {
            let target = if m.exps().get(p.index()).copied().unwrap_or(0) == 0 {
                &mut free
            } else {
                &mut rest
            };
            target.add_term(m.clone(), c.clone());
        }
        (SymbolicInt(free), SymbolicInt(rest))
    }
}

impl Add for &SymbolicInt {
    type Output = SymbolicInt;
    fn add(self, o: &SymbolicInt) -> SymbolicInt {
        SymbolicInt(self.0.add(&o.0))
    }
}

impl Sub for &SymbolicInt {
    type Output = SymbolicInt;
    fn sub(self, o: &SymbolicInt) -> SymbolicInt {
        SymbolicInt(self.0.sub(&o.0))
    }
}

impl Mul for &SymbolicInt {
    type Output = SymbolicInt;
    fn mul(self, o: &SymbolicInt) -> SymbolicInt {
        SymbolicInt(self.0.mul(&o.0))
    }
}

impl Neg for &SymbolicInt {
    type Output = SymbolicInt;
    fn neg(self) -> SymbolicInt {
        SymbolicInt(self.0.neg())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for SymbolicInt {
            type Output = SymbolicInt;
            fn $f(self, o: SymbolicInt) -> SymbolicInt {
                (&self).$f(&o)
            }
        }
        impl $tr<i64> for SymbolicInt {
            type Output = SymbolicInt;
            fn $f(self, o: i64) -> SymbolicInt {
                (&self).$f(&SymbolicInt::int(o))
            }
        }
        impl $tr<SymbolicInt> for i64 {
            type Output = SymbolicInt;
            fn $f(self, o: SymbolicInt) -> SymbolicInt {
                (&SymbolicInt::int(self)).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for SymbolicInt {
    type Output = SymbolicInt;
    fn neg(self) -> SymbolicInt {
        -&self
    }
}

impl From<Param> for SymbolicInt {
    fn from(p: Param) -> Self {
        SymbolicInt::var(p)
    }
}

impl From<i64> for SymbolicInt {
    fn from(n: i64) -> Self {
        SymbolicInt::int(n)
    }
}

fn monomial_text(m: &Monomial) -> String {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            let n = Param::ALL[i].name();
            if *e == 1 {
                n.to_string()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SymbolicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.0.terms().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial_text(m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == qi(1) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses sums of products of integers and parameter names, with `^`,
/// parentheses and unary minus.
impl std::str::FromStr for SymbolicInt {
    type Err = String;

    fn from_str(src: &str) -> Result<Self, String> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, at: 0 };
        let e = p.sum()?;
        if p.at != p.toks.len() {
            return Err(format!("unexpected {:?} in {src:?}", p.toks[p.at]));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Name(Param),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len()).find(|&j| !cs[j].is_ascii_digit()).unwrap_or(cs.len());
            let n: String = cs[i..j].iter().collect();
            out.push(Tok::Num(n.parse().map_err(|e| format!("{n}: {e}"))?));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let name = c.to_string();
            out.push(Tok::Name(Param::from_name(&name).ok_or_else(|| format!("unknown parameter {name:?}"))?));
            i += 1;
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<SymbolicInt, String> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = acc + self.product()?;
            } else if self.eat('-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<SymbolicInt, String> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if matches!(self.peek(), Some(Tok::Name(_)) | Some(Tok::Op('('))) {
                // juxtaposition, as in 2k
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<SymbolicInt, String> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.at) {
                Some(Tok::Num(e)) if *e >= 0 => {
                    let e = *e as u32;
                    self.at += 1;
                    Ok(base.pow(e))
                }
                _ => Err("exponent must be a nonnegative integer".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SymbolicInt, String> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        if self.eat('(') {
            let e = self.sum()?;
            if !self.eat(')') {
                return Err("missing )".into());
            }
            return Ok(e);
        }
        match self.toks.get(self.at).cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(SymbolicInt::int(n))
            }
            Some(Tok::Name(p)) => {
                self.at += 1;
                Ok(SymbolicInt::var(p))
            }
            other => Err(format!("expected a term, found {other:?}")),
        }
    }
}
