//! The sampled route: every coefficient is evaluated at integers first and
//! each component is handled with its actual quotient ranks.

use super::catalogue::{Context, Identity};
use super::expr::{Divisor, LineBundleExpr, Space};
use super::symbolic::Param;
use super::LedgerError;
use crate::exact_algebra::{qi, Ring, Q};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq)]
struct Concrete {
    det: BTreeMap<(Space, Space), Q>,
    z: BTreeMap<i64, Q>,
    dplus: Q,
    dminus: Q,
    grading: Q,
}

fn constant(c: &super::SymbolicInt, vals: &[(Param, i64)]) -> Result<Q, LedgerError> {
    c.eval(vals)
        .as_constant()
        .ok_or_else(|| LedgerError::UnexpectedSymbol(format!("coefficient {c} is not determined by the sample")))
}

fn instantiate(e: &LineBundleExpr, vals: &[(Param, i64)], top: i64, t: Option<i64>) -> Result<Concrete, LedgerError> {
    let mut out = Concrete::default();
    for (q, c) in &e.det {
        *out.det.entry(*q).or_insert_with(Q::zero) += constant(c, vals)?;
    }
    out.grading = constant(&e.grading, vals)?;
    for (d, c) in &e.divisors {
        match d {
            Divisor::Zs => {
                for s in 0..=top {
                    let mut v = vals.to_vec();
                    v.push((Param::S, s));
                    *out.z.entry(s).or_insert_with(Q::zero) += constant(c, &v)?;
                }
            }
            Divisor::Zt(d) => {
                let t = t.ok_or_else(|| LedgerError::UnexpectedSymbol("[Z_t] outside a component".into()))?;
                let s = t + *d as i64;
                if (0..=top).contains(&s) {
                    *out.z.entry(s).or_insert_with(Q::zero) += constant(c, vals)?;
                }
            }
            Divisor::DPlus => out.dplus += constant(c, vals)?,
            Divisor::DMinus => out.dminus += constant(c, vals)?,
            Divisor::Fibre => out.grading += constant(c, vals)? * qi(2),
        }
    }
    Ok(out)
}

/// Dimension of each space over L0 on the component Z_t.
fn dims(k: i64, l: i64, t: i64) -> impl Fn(Space) -> i64 {
    move |x| match x {
        Space::L0 => 0,
        Space::W1 | Space::V => k - t,
        Space::L1 => k,
        Space::L1p => l,
        Space::W2 => l + t,
        Space::L2 => k + l,
    }
}

/// Representatives after identifying spaces whose quotient has rank zero.
fn identify(dim: &dyn Fn(Space) -> i64) -> BTreeMap<Space, Space> {
    let mut rep: BTreeMap<Space, Space> = Space::ALL.iter().map(|x| (*x, *x)).collect();
    // smaller spaces first, so every class is named by its smallest member
    for a in Space::ALL {
        for b in Space::ALL {
            if a != b && b.within(a) && dim(a) == dim(b) {
                let rb = rep[&b];
                let ra = rep[&a];
                for v in rep.values_mut() {
                    if *v == ra {
                        *v = rb;
                    }
                }
            }
        }
    }
    rep
}

fn absolute(det: &BTreeMap<(Space, Space), Q>, rep: &BTreeMap<Space, Space>) -> BTreeMap<Space, Q> {
    let mut out: BTreeMap<Space, Q> = BTreeMap::new();
    for ((a, b), c) in det {
        for (x, sign) in [(rep[a], qi(1)), (rep[b], qi(-1))] {
            if rep[&Space::L0] != x {
                *out.entry(x).or_insert_with(Q::zero) += c * sign;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

type Flat = (BTreeMap<Space, Q>, Q);

fn on_component(c: &Concrete, k: i64, l: i64, m: i64, t: i64, top: i64) -> Flat {
    let mut det = c.det.clone();
    let mut grading = c.grading.clone();
    let mut dplus = if t < top { c.dplus.clone() } else { Q::zero() };
    let mut dminus = if t > 0 { c.dminus.clone() } else { Q::zero() };
    for (&s, x) in &c.z {
        if s == t {
            // [Z_t] = {2} minus the other components that meet Z_t
            grading += x * qi(2);
            if t > 0 {
                dminus -= x;
            }
            if t < top {
                dplus -= x;
            }
        } else if s == t + 1 {
            dplus += x;
        } else if s + 1 == t {
            dminus += x;
        }
    }
    let mut put = |a: Space, b: Space, x: &Q| *det.entry((a, b)).or_insert_with(Q::zero) += x;
    put(Space::L2, Space::W2, &-dplus.clone());
    put(Space::W1, Space::L0, &dplus);
    put(Space::L1, Space::W1, &-dminus.clone());
    put(Space::W2, Space::L1p, &dminus);
    grading += &dplus * qi(2 * (k - t));
    let dim = dims(k, l, t);
    let rep = identify(&dim);
    let mut abs = absolute(&det, &rep);
    if t == top && k + l > m {
        // z: L2/W2 → W1/L0 {2} is an isomorphism on the last component
        let c2 = abs.remove(&rep[&Space::L2]).unwrap_or_else(Q::zero);
        for (x, sign) in [(rep[&Space::W2], 1), (rep[&Space::W1], 1)] {
            if x != rep[&Space::L0] {
                *abs.entry(x).or_insert_with(Q::zero) += &c2 * qi(sign);
            }
        }
        grading += &c2 * qi(2 * (k - t));
        abs.retain(|_, c| !c.is_zero());
    }
    (abs, grading)
}

fn flat(c: &Concrete, resolution: bool) -> Flat {
    let mut rep: BTreeMap<Space, Space> = Space::ALL.iter().map(|x| (*x, *x)).collect();
    if resolution {
        rep.insert(Space::V, Space::W1);
    }
    (absolute(&c.det, &rep), c.grading.clone())
}

/// Checks one identity at integer k ≤ l < m; returns the first disagreeing
/// case.
pub fn check_sampled(id: &Identity, k: i64, l: i64, m: i64) -> Result<Option<String>, LedgerError> {
    if !(1 <= k && k <= l && l < m) {
        return Err(LedgerError::BadParams(format!("need 1 <= k <= l < m, got k={k} l={l} m={m}")));
    }
    let n = (k + l).min(m);
    let top = n - l;
    let base = [(Param::K, k), (Param::L, l), (Param::M, m), (Param::N, n)];
    let per_component = id.context == Context::PerComponent || id.lhs.has_divisors() || id.rhs.has_divisors();
    if per_component {
        for t in 0..=top {
            let mut vals = base.to_vec();
            vals.push((Param::T, t));
            let a = on_component(&instantiate(&id.lhs, &vals, top, Some(t))?, k, l, m, t, top);
            let b = on_component(&instantiate(&id.rhs, &vals, top, Some(t))?, k, l, m, t, top);
            if a != b {
                return Ok(Some(format!("t={t}: {a:?} vs {b:?}")));
            }
        }
    } else {
        for s in 0..=top {
            let mut vals = base.to_vec();
            vals.push((Param::S, s));
            let res = id.context == Context::Resolution;
            let a = flat(&instantiate(&id.lhs, &vals, top, None)?, res);
            let b = flat(&instantiate(&id.rhs, &vals, top, None)?, res);
            if a != b {
                return Ok(Some(format!("s={s}: {a:?} vs {b:?}")));
            }
        }
    }
    Ok(None)
}
