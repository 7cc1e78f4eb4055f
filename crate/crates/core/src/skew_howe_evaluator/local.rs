//! Operators on the one or two tensor factors a generator touches.
//!
//! A basis vector of `Λ^{k_1}V ⊗ … ⊗ Λ^{k_n}V` is a tuple of subsets of
//! `{1..m}`, stored as bitmasks (colour `j` is bit `j-1`).

use crate::exact_algebra::{qfactorial, qi, LaurentPoly};
use num_traits::ToPrimitive;
use smallvec::{smallvec, SmallVec};
use std::collections::{BTreeMap, HashMap};

pub(crate) type Tuple = Vec<u16>;
pub(crate) type SparseVec = BTreeMap<Tuple, LaurentPoly>;
/// Tuple key of the inner loops.
pub(crate) type Key = SmallVec<[u16; 8]>;
pub(crate) type ZVec = BTreeMap<Key, ZL>;

/// Integer Laurent polynomial `Σ c[i] q^{lo+i}` for the inner loops; the
/// generator matrices have integer entries, so no rationals are needed there.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ZL {
    lo: i64,
    c: SmallVec<[i128; 4]>,
}

fn ck(x: Option<i128>) -> i128 {
    x.expect("coefficient overflow in the evaluator")
}

impl ZL {
    pub(crate) fn one() -> Self {
        ZL { lo: 0, c: smallvec![1] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| **x == 0).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub(crate) fn add_assign(&mut self, o: &ZL) {
        if o.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = o.clone();
            return;
        }
        let lo = self.lo.min(o.lo);
        let hi = (self.lo + self.c.len() as i64).max(o.lo + o.c.len() as i64);
        let mut c: SmallVec<[i128; 4]> = smallvec![0i128; (hi - lo) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] = *x;
        }
        for (i, x) in o.c.iter().enumerate() {
            let t = &mut c[(o.lo - lo) as usize + i];
            *t = ck(t.checked_add(*x));
        }
        *self = ZL { lo, c }.trim();
    }

    pub(crate) fn mul(&self, o: &ZL) -> ZL {
        if self.is_zero() || o.is_zero() {
            return ZL::default();
        }
        let mut c: SmallVec<[i128; 4]> = smallvec![0i128; self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = ck(c[i + j].checked_add(ck(x.checked_mul(*y))));
            }
        }
        ZL { lo: self.lo + o.lo, c }.trim()
    }

    pub(crate) fn from_laurent(p: &LaurentPoly) -> ZL {
        let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
            return ZL::default();
        };
        let mut c: SmallVec<[i128; 4]> = smallvec![0i128; (hi - lo + 1) as usize];
        for (e, x) in p.terms() {
            assert!(x.is_integer(), "generator entries are integral");
            c[(e - lo) as usize] = x.to_integer().to_i128().expect("coefficient fits in i128");
        }
        ZL { lo, c }
    }

    pub(crate) fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.c.iter().enumerate().map(|(i, x)| {
            let v = num_bigint::BigInt::from(*x);
            (self.lo + i as i64, qi(1) * crate::exact_algebra::Q::from_integer(v))
        }))
    }
}

/// Subsets of `{1..m}` of size `k`, ordered lexicographically by their sorted
/// element lists.
pub(crate) fn subsets(m: u8, k: u8) -> Vec<u16> {
    fn rec(m: u8, k: u8, start: u8, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for j in start..m {
            if m - j < k {
                break;
            }
            rec(m, k - 1, j + 1, acc | (1 << j), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(m, k, 0, 0, &mut out);
    }
    out
}

fn bit(s: u16, j: u8) -> i64 {
    ((s >> j) & 1) as i64
}

/// `E` moves one colour from the right factor to the left one.
fn e_step(m: u8, a: u16, b: u16) -> Vec<((u16, u16), i64)> {
    let mut out = Vec::new();
    for j in 0..m {
        if bit(b, j) == 1 && bit(a, j) == 0 {
            let e: i64 = (j + 1..m).map(|t| bit(a, t) - bit(b, t)).sum();
            out.push(((a | 1 << j, b & !(1 << j)), e));
        }
    }
    out
}

/// `F` moves one colour from the left factor to the right one.
fn f_step(m: u8, a: u16, b: u16) -> Vec<((u16, u16), i64)> {
    let mut out = Vec::new();
    for j in 0..m {
        if bit(a, j) == 1 && bit(b, j) == 0 {
            let e: i64 = -(0..j).map(|t| bit(a, t) - bit(b, t)).sum::<i64>();
            out.push(((a & !(1 << j), b | 1 << j), e));
        }
    }
    out
}

/// `E^{(s)}` (`upper = true`) or `F^{(s)}` applied to `v_a ⊗ v_b`.
pub(crate) fn divided_pair(m: u8, upper: bool, s: u32, a: u16, b: u16) -> Vec<((u16, u16), LaurentPoly)> {
    let mut cur: BTreeMap<(u16, u16), LaurentPoly> = BTreeMap::new();
    cur.insert((a, b), LaurentPoly::one());
    for _ in 0..s {
        let mut next: BTreeMap<(u16, u16), LaurentPoly> = BTreeMap::new();
        for ((x, y), c) in &cur {
            let steps = if upper { e_step(m, *x, *y) } else { f_step(m, *x, *y) };
            for (t, e) in steps {
                let v = next.entry(t).or_insert_with(LaurentPoly::zero);
                *v = &*v + &c.shift(e);
            }
        }
        next.retain(|_, v| !v.is_zero());
        cur = next;
    }
    let f = qfactorial(s);
    cur.into_iter()
        .map(|(t, c)| (t, c.exact_div(&f).expect("divided power is integral")))
        .collect()
}

/// A linear map between local tensor factors, stored column by column.
#[derive(Clone, Debug, Default)]
pub struct LocalOp {
    pub(crate) cols: HashMap<Key, Vec<(Key, ZL)>>,
}

impl LocalOp {
    pub(crate) fn column(&self, t: &[u16]) -> &[(Key, ZL)] {
        self.cols.get(t).map_or(&[], |v| v.as_slice())
    }

    pub(crate) fn column_laurent(&self, t: &[u16]) -> Vec<(Tuple, LaurentPoly)> {
        self.column(t).iter().map(|(k, v)| (k.to_vec(), v.to_laurent())).collect()
    }

    pub(crate) fn scale(&mut self, c: &LaurentPoly) {
        let c = ZL::from_laurent(c);
        for col in self.cols.values_mut() {
            for (_, v) in col.iter_mut() {
                *v = v.mul(&c);
            }
        }
    }

    pub(crate) fn from_columns(cols: HashMap<Tuple, SparseVec>) -> Self {
        LocalOp {
            cols: cols
                .into_iter()
                .map(|(k, v)| {
                    (
                        Key::from_slice(&k),
                        v.into_iter()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(t, c)| (Key::from_slice(&t), ZL::from_laurent(&c)))
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

/// Applies `op` to the factors `pos..pos+width` of every tuple in `v`.
pub(crate) fn apply_local(op: &LocalOp, pos: usize, width: usize, v: &ZVec) -> ZVec {
    let mut out = ZVec::new();
    for (t, c) in v {
        for (img, d) in op.column(&t[pos..pos + width]) {
            let mut nt = Key::with_capacity(t.len() + img.len() - width);
            nt.extend_from_slice(&t[..pos]);
            nt.extend_from_slice(img);
            nt.extend_from_slice(&t[pos + width..]);
            out.entry(nt).or_default().add_assign(&c.mul(d));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub(crate) fn to_sparse(v: ZVec) -> SparseVec {
    v.into_iter().map(|(t, c)| (t.to_vec(), c.to_laurent())).collect()
}

/// Exact inverse of a square matrix over the Laurent ring whose determinant
/// is a unit, by fraction-free elimination.
pub(crate) fn invert_unimodular(a: &[Vec<LaurentPoly>]) -> Option<Vec<Vec<LaurentPoly>>> {
    let n = a.len();
    let mut m: Vec<Vec<LaurentPoly>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }));
            r
        })
        .collect();
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
        }
        for i in 0..n {
            if i != k {
                m[i][k] = LaurentPoly::zero();
            }
        }
        prev = m[k][k].clone();
    }
    // every pivot now equals det(a)
    let det = prev;
    det.as_monomial()?;
    let mut out = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = m[i][n + j].exact_div(&det)?;
        }
    }
    Some(out)
}
