//! Exhaustive enumeration of z-stable flags over a prime field.

use super::{gaussian_binomial, GeometryError};
use crate::exact_algebra::qi;

pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Chains 0 = L0 ⊂ L1 ⊂ … in V = z^-n L0 / L0 ≅ (F_p[z]/z^n)^m with
/// dim L_i/L_{i-1} = labels[i] and z L_i ⊂ L_{i-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeConfig {
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub labels: Vec<usize>,
    pub budget: u128,
}

impl LatticeConfig {
    pub fn new(p: u32, m: usize, labels: &[usize]) -> Self {
        LatticeConfig {
            p,
            m,
            n: labels.len().max(1),
            labels: labels.to_vec(),
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Row-reduced basis of a subspace of F_p^dim.
#[derive(Clone, Debug)]
struct Subspace {
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

struct Field {
    p: u32,
    inv: Vec<u32>,
}

impl Field {
    fn new(p: u32) -> Self {
        let inv = (0..p).map(|a| (1..p).find(|b| a * b % p == 1).unwrap_or(0)).collect();
        Field { p, inv }
    }

    /// Reduces `v` against the subspace; zero iff `v` lies in it.
    fn reduce(&self, s: &Subspace, mut v: Vec<u32>) -> Vec<u32> {
        for (row, &c) in s.rows.iter().zip(&s.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (self.p - f) * r) % self.p;
                }
            }
        }
        v
    }

    fn contains(&self, s: &Subspace, v: Vec<u32>) -> bool {
        self.reduce(s, v).iter().all(|x| *x == 0)
    }

    /// `s` enlarged by vectors independent of it and of each other.
    fn extend(&self, s: &Subspace, new: &[Vec<u32>]) -> Subspace {
        let mut out = s.clone();
        for v in new {
            let mut r = self.reduce(&out, v.clone());
            let c = r.iter().position(|x| *x != 0).expect("independent vector");
            let inv = self.inv[r[c] as usize];
            for x in r.iter_mut() {
                *x = *x * inv % self.p;
            }
            for row in out.rows.iter_mut() {
                let f = row[c];
                if f != 0 {
                    for (x, y) in row.iter_mut().zip(&r) {
                        *x = (*x + (self.p - f) * y) % self.p;
                    }
                }
            }
            out.rows.push(r);
            out.pivots.push(c);
        }
        out
    }
}

/// Calls `f` on a basis of every `d`-dimensional subspace of F_p^q, each
/// given once by its reduced echelon form.
fn for_each_subspace(p: u32, q: usize, d: usize, f: &mut dyn FnMut(&[Vec<u32>])) {
    fn pivots(q: usize, d: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == d {
            f(cur);
            return;
        }
        for c in start..q {
            cur.push(c);
            pivots(q, d, c + 1, cur, f);
            cur.pop();
        }
    }
    pivots(q, d, 0, &mut Vec::new(), &mut |piv| {
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| (c + 1..q).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![0u32; q]; d];
            for (i, &c) in piv.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (&(i, j), &x) in free.iter().zip(&vals) {
                rows[i][j] = x;
            }
            f(&rows);
            // odometer
            let mut pos = 0;
            loop {
                if pos == vals.len() {
                    return;
                }
                vals[pos] += 1;
                if vals[pos] < p {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
        }
    });
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The number of flags, by testing every candidate subspace at each step.
pub fn count_points(c: &LatticeConfig) -> Result<u128, GeometryError> {
    if !is_prime(c.p) {
        return Err(GeometryError::Config(format!("{} is not prime", c.p)));
    }
    if c.labels.iter().any(|&k| k == 0 || k >= c.m) {
        return Err(GeometryError::BadLabels(c.labels.clone(), c.m));
    }
    if c.n < c.labels.len() {
        return Err(GeometryError::Config(format!(
            "depth {} is below the chain length {}",
            c.n,
            c.labels.len()
        )));
    }
    let field = Field::new(c.p);
    let dim = c.n * c.m;
    // coordinate i*n + j is z^-(j+1) e_i; z shifts j down by one
    let z = |v: &[u32]| -> Vec<u32> {
        let mut out = vec![0; dim];
        for i in 0..c.m {
            for j in 0..c.n - 1 {
                out[i * c.n + j] = v[i * c.n + j + 1];
            }
        }
        out
    };
    let mut chains = vec![Subspace {
        rows: Vec::new(),
        pivots: Vec::new(),
    }];
    let mut spent: u128 = 0;
    let mut used = 0;
    for (level, &k) in c.labels.iter().enumerate() {
        let q = dim - used;
        let per = gaussian_binomial(q, k).eval(&qi(c.p as i64));
        let per: u128 = per.to_integer().try_into().unwrap_or(u128::MAX);
        let cost = per.saturating_mul(chains.len() as u128);
        if spent.saturating_add(cost) > c.budget {
            return Err(GeometryError::Budget {
                estimate: spent.saturating_add(cost),
                budget: c.budget,
            });
        }
        spent += cost;
        let last = level + 1 == c.labels.len();
        let mut next = Vec::new();
        let mut count: u128 = 0;
        for prev in &chains {
            let comp: Vec<usize> = (0..dim).filter(|x| !prev.pivots.contains(x)).collect();
            for_each_subspace(c.p, q, k, &mut |w| {
                let lifted: Vec<Vec<u32>> = w
                    .iter()
                    .map(|row| {
                        let mut v = vec![0; dim];
                        for (x, &at) in row.iter().zip(&comp) {
                            v[at] = *x;
                        }
                        v
                    })
                    .collect();
                if lifted.iter().all(|v| field.contains(prev, z(v))) {
                    count += 1;
                    if !last {
                        next.push(field.extend(prev, &lifted));
                    }
                }
            });
        }
        if last {
            return Ok(count);
        }
        chains = next;
        used += k;
    }
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_in_the_plane() {
        assert_eq!(count_points(&LatticeConfig::new(2, 2, &[1])).unwrap(), 3);
        assert_eq!(count_points(&LatticeConfig::new(2, 2, &[1, 1])).unwrap(), 9);
        assert_eq!(count_points(&LatticeConfig::new(3, 2, &[1, 1])).unwrap(), 16);
    }

    #[test]
    fn subspace_enumeration_counts() {
        let mut n = 0;
        for_each_subspace(3, 4, 2, &mut |_| n += 1);
        assert_eq!(n, 130);
    }

    #[test]
    fn budget_is_enforced() {
        let mut c = LatticeConfig::new(5, 3, &[1, 2]);
        c.budget = 10;
        assert!(matches!(count_points(&c), Err(GeometryError::Budget { .. })));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(count_points(&LatticeConfig::new(4, 2, &[1])).is_err());
        assert!(count_points(&LatticeConfig::new(2, 2, &[2])).is_err());
    }
}
