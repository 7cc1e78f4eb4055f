use super::ring::{fmt_coeff, parse_coeff, qi, split_terms, Ring, Q};
use super::AlgebraError;
use std::fmt;
use std::str::FromStr;

/// Polynomial in the single line variable `x` over the rationals.
/// Dense, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(qi(1))
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(qi(1), 1)
    }

    pub fn monomial(c: Q, e: usize) -> Self {
        let mut v = vec![Q::zero(); e + 1];
        v[e] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, e: usize) -> Q {
        self.c.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_unit(&self) -> bool {
        self.c.len() == 1
    }

    /// `Some((c, e))` when the polynomial is `c*x^e`.
    pub fn as_monomial(&self) -> Option<(Q, usize)> {
        let nz: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).collect();
        if nz.len() == 1 {
            Some((self.c[nz[0]].clone(), nz[0]))
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_coeffs(self.c.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    /// Euclidean division `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] / &lc;
            for j in 0..=dd {
                let t = &f * &d.c[j];
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; `gcd(0,0) = 0`.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Ring for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(v)
    }
    fn neg(&self) -> Self {
        UPoly::from_coeffs(self.c.iter().map(|a| -a.clone()).collect())
    }
    fn from_q(c: &Q) -> Self {
        UPoly::constant(c.clone())
    }
}

/// Canonical text form in the variable `x`, exponents ascending.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else {
                write!(f, "{}*x^{}", fmt_coeff(&mag), e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({})", self)
    }
}

impl FromStr for UPoly {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        if s.trim() == "0" {
            return Ok(UPoly::zero());
        }
        let mut acc = UPoly::zero();
        let parts = split_terms(s);
        if parts.is_empty() {
            return Err(bad());
        }
        for (neg, t) in parts {
            let (c, e) = match t.split_once('x') {
                None => (parse_coeff(&t).ok_or_else(bad)?, 0usize),
                Some((c, rest)) => {
                    let c = c.trim_end_matches('*');
                    let c = if c.is_empty() { Q::one() } else { parse_coeff(c).ok_or_else(bad)? };
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            acc = acc.add(&UPoly::monomial(if neg { -c } else { c }, e));
        }
        Ok(acc)
    }
}
