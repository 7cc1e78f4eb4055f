use super::ring::{fmt_coeff, parse_coeff, qi, split_terms, Ring, Q};
use super::AlgebraError;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Laurent polynomial in `q` with rational coefficients. Zero terms are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(qi(1), 0)
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(qi(c), 0)
    }

    pub fn monomial(c: Q, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(qi(1), e)
    }

    /// `(-q)^e`, any sign of `e`.
    pub fn neg_q_pow(e: i64) -> Self {
        let c = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(qi(c), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Q)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor: `[(coeff, exp), ...]`.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(c, e)| (e, qi(c))))
    }

    pub fn add_term(&mut self, e: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(Q, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    /// The involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, q: &Q) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            acc += c * pow_q(q, *e);
        }
        acc
    }

    pub fn at_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`; `None` when `d` does not divide.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = d.as_monomial() {
            let inv = Q::one() / c;
            return Some(self.scale(&inv).shift(-e));
        }
        let dmax = d.max_exp().unwrap();
        let dmin = d.min_exp().unwrap();
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; terminates once the remainder's span
        // drops below the divisor's span.
        while !rem.is_zero() {
            let rmax = rem.max_exp().unwrap();
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let c = rem.coeff(rmax) / &lead;
            let e = rmax - dmax;
            quot.add_term(e, c.clone());
            rem = &rem - &d.scale(&c).shift(e);
        }
        Some(quot)
    }
}

fn pow_q(q: &Q, e: i64) -> Q {
    let mut acc = Q::one();
    let base = if e < 0 { Q::one() / q } else { q.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                $tr::$f(&self, &o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn from_q(c: &Q) -> Self {
        LaurentPoly::constant(c.clone())
    }
}

/// Canonical text form: `c1*q^e1 + c2*q^e2 + ...`, exponents ascending.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = *c < Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *e == 0 {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else {
                write!(f, "{}*q^{}", fmt_coeff(&mag), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Accepts the canonical form plus the usual shorthands (`q`, `-q^-2`,
    /// `3`, `1/2*q^3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        let mut p = LaurentPoly::zero();
        if s.trim() == "0" {
            return Ok(p);
        }
        let parts = split_terms(s);
        if parts.is_empty() {
            return Err(bad());
        }
        for (neg, t) in parts {
            let (coef, exp) = match t.split_once('q') {
                None => (parse_coeff(&t).ok_or_else(bad)?, 0),
                Some((c, rest)) => {
                    let c = c.trim_end_matches('*');
                    let coef = if c.is_empty() {
                        Q::one()
                    } else {
                        parse_coeff(c).ok_or_else(bad)?
                    };
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        let r = rest.strip_prefix('^').ok_or_else(bad)?;
                        let r = r.trim_start_matches('{').trim_end_matches('}');
                        r.parse::<i64>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            p.add_term(exp, if neg { -coef } else { coef });
        }
        Ok(p)
    }
}

/// Balanced quantum integer `[a] = (q^a - q^-a)/(q - q^-1)`.
pub fn qint(a: i64) -> LaurentPoly {
    let n = a.abs();
    let mut p = LaurentPoly::zero();
    for j in 0..n {
        p.add_term(n - 1 - 2 * j, qi(1));
    }
    if a < 0 {
        -&p
    } else {
        p
    }
}

pub fn qfactorial(a: u32) -> LaurentPoly {
    (1..=a as i64).fold(LaurentPoly::one(), |acc, j| &acc * &qint(j))
}

/// Balanced Gaussian binomial `[m choose k]`.
pub fn qbinom(m: i64, k: i64) -> Result<LaurentPoly, AlgebraError> {
    if m < 0 || k < 0 || k > m {
        return Err(AlgebraError::Domain(format!(
            "qbinom requires 0 <= k <= m, got m={m}, k={k}"
        )));
    }
    // Pascal recurrence [m,k] = q^{-k}[m-1,k] + q^{m-k}[m-1,k-1].
    let k = k.min(m - k) as usize;
    let mut row = vec![LaurentPoly::one()];
    for n in 1..=m {
        let mut next = vec![LaurentPoly::zero(); (n as usize + 1).min(k + 1)];
        for (j, slot) in next.iter_mut().enumerate() {
            let jj = j as i64;
            let mut v = LaurentPoly::zero();
            if j < row.len() && jj <= n - 1 {
                v = &v + &row[j].shift(-jj);
            }
            if j >= 1 && j - 1 < row.len() {
                v = &v + &row[j - 1].shift(n - jj);
            }
            *slot = v;
        }
        row = next;
    }
    Ok(row[k].clone())
}

pub fn binomial(m: u64, k: u64) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u64, |acc, j| acc * (m - j) / (j + 1))
}
