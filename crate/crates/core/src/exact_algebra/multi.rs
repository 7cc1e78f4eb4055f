use super::ring::{fmt_coeff, parse_coeff, qi, split_terms, Ring, Q};
use super::upoly::UPoly;
use super::AlgebraError;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exponent vector with trailing zeros trimmed, so equal monomials compare
/// equal regardless of how many variables were in scope.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        Monomial::new(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + o.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

/// Graded-lex order: total degree first, then exponents left to right.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = o.0.get(i).copied().unwrap_or(0);
                if a != b {
                    return b.cmp(&a);
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial in the colour variables `w1, w2, ...` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::default(), c);
        p
    }

    /// The variable `w_{i+1}` (zero-based index `i`).
    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(i), qi(1));
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Indices of variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                let v = point.get(i).cloned().unwrap_or_else(Q::zero);
                for _ in 0..*e {
                    t *= &v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `w_i = v_i * x`.
    pub fn restrict_to_line(&self, direction: &[Q]) -> UPoly {
        let mut acc = UPoly::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                let v = direction.get(i).cloned().unwrap_or_else(Q::zero);
                for _ in 0..*e {
                    t *= &v;
                }
            }
            acc = acc.add(&UPoly::monomial(t, m.degree() as usize));
        }
        acc
    }

    /// View as a polynomial in a single variable, if at most one occurs.
    pub fn as_univariate(&self) -> Option<UPoly> {
        let vars = self.variables();
        if vars.len() > 1 {
            return None;
        }
        let mut acc = UPoly::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&UPoly::monomial(c.clone(), m.degree() as usize));
        }
        Some(acc)
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(qi(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
    fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
    fn from_q(c: &Q) -> Self {
        MultiPoly::constant(c.clone())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{}", fmt_coeff(&mag))?;
            for (v, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*w{}^{}", v + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl FromStr for MultiPoly {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        if s.trim() == "0" {
            return Ok(MultiPoly::zero());
        }
        let parts = split_terms(s);
        if parts.is_empty() {
            return Err(bad());
        }
        let mut acc = MultiPoly::zero();
        for (neg, t) in parts {
            let mut coef = Q::one();
            let mut exps: Vec<u32> = Vec::new();
            for factor in t.split('*') {
                if let Some(rest) = factor.strip_prefix('w') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad())?;
                    if idx == 0 {
                        return Err(bad());
                    }
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] += e;
                } else {
                    coef *= parse_coeff(factor).ok_or_else(bad)?;
                }
            }
            acc.add_term(Monomial::new(exps), if neg { -coef } else { coef });
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops_and_text() {
        let w1 = MultiPoly::var(0);
        let w2 = MultiPoly::var(1);
        let d = w1.sub(&w2);
        let sq = d.mul(&d);
        assert_eq!(sq.to_string(), "1*w1^2 - 2*w1^1*w2^1 + 1*w2^2");
        assert_eq!(sq.to_string().parse::<MultiPoly>().unwrap(), sq);
        assert!(sq.is_homogeneous());
        let line = d.restrict_to_line(&[qi(0), qi(1)]);
        assert_eq!(line, UPoly::from_ints(&[0, -1]));
        assert!(sq.as_univariate().is_none());
    }
}
