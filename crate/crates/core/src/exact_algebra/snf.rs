//! Smith normal form over `Q[x]`.
//!
//! Pivoting always picks an entry of least degree, reduces its row and column
//! by Euclidean division and repeats until the pivot divides the remaining
//! block. Rows are rescaled so pivots are monic, which clears denominators that
//! would otherwise accumulate in the transforms.

use super::matrix::SparseMatrix;
use super::multi::MultiPoly;
use super::ring::{Ring, Q};
use super::upoly::UPoly;
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Monic invariant factors `d_1 | d_2 | ...`, nonzero ones only.
    pub factors: Vec<UPoly>,
    /// `u * m * v == d`.
    pub u: SparseMatrix<UPoly>,
    pub v: SparseMatrix<UPoly>,
    pub d: SparseMatrix<UPoly>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Work {
    a: Vec<Vec<UPoly>>,
    u: Vec<Vec<UPoly>>,
    v: Vec<Vec<UPoly>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for r in self.v.iter_mut() {
            r.swap(i, j);
        }
    }
    /// row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: &UPoly) {
        for k in 0..self.a[0].len() {
            let t = self.a[j][k].mul(f);
            self.a[i][k] = self.a[i][k].add(&t);
        }
        for k in 0..self.u[0].len() {
            let t = self.u[j][k].mul(f);
            self.u[i][k] = self.u[i][k].add(&t);
        }
    }
    /// col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: &UPoly) {
        for r in 0..self.a.len() {
            let t = self.a[r][j].mul(f);
            self.a[r][i] = self.a[r][i].add(&t);
        }
        for r in 0..self.v.len() {
            let t = self.v[r][j].mul(f);
            self.v[r][i] = self.v[r][i].add(&t);
        }
    }
    fn scale_row(&mut self, i: usize, c: &UPoly) {
        for x in self.a[i].iter_mut() {
            *x = x.mul(c);
        }
        for x in self.u[i].iter_mut() {
            *x = x.mul(c);
        }
    }
}

fn dense_identity(n: usize) -> Vec<Vec<UPoly>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { UPoly::one() } else { UPoly::zero() }).collect())
        .collect()
}

pub fn smith_normal_form(m: &SparseMatrix<UPoly>) -> SmithForm {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut w = Work {
        a: m.to_dense(),
        u: dense_identity(nr),
        v: dense_identity(nc),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // least-degree pivot in the trailing block
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if let Some(d) = w.a[i][j].degree() {
                    if best.is_none_or(|b| d < b.2) {
                        best = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = w.a[i][t].div_rem(&w.a[t][t]);
                w.add_row(i, t, &q.neg());
                if !r.is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.a[t][j].div_rem(&w.a[t][t]);
                w.add_col(j, t, &q.neg());
                if !r.is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut bad_row = None;
            'scan: for i in t + 1..nr {
                for j in t + 1..nc {
                    if !w.a[t][t].divides(&w.a[i][j]) {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => w.add_row(t, i, &UPoly::one()),
                None => break,
            }
        }
        let lc = w.a[t][t].lead();
        w.scale_row(t, &UPoly::constant(Q::one() / lc));
        factors.push(w.a[t][t].clone());
        t += 1;
    }
    let to_sparse = |d: Vec<Vec<UPoly>>| SparseMatrix::from_dense(d);
    let (nr0, nc0) = (nr, nc);
    let d = if nr0 == 0 || nc0 == 0 {
        SparseMatrix::zeros(nr0, nc0)
    } else {
        to_sparse(w.a)
    };
    let u = if nr0 == 0 { SparseMatrix::zeros(0, 0) } else { to_sparse(w.u) };
    let v = if nc0 == 0 { SparseMatrix::zeros(0, 0) } else { to_sparse(w.v) };
    SmithForm { factors, u, v, d }
}

/// Entry point for colour-polynomial matrices: only the one-variable case is
/// a principal ideal domain.
pub fn smith_normal_form_multi(m: &SparseMatrix<MultiPoly>) -> Result<SmithForm, AlgebraError> {
    let mut vars: Vec<usize> = m.entries().flat_map(|(_, _, p)| p.variables()).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() > 1 {
        return Err(AlgebraError::UnsupportedRing(format!(
            "Smith normal form needs one variable, found {}",
            vars.len()
        )));
    }
    let mut u = SparseMatrix::zeros(m.nrows(), m.ncols());
    for (i, j, p) in m.entries() {
        u.set(i, j, p.as_univariate().expect("single variable"));
    }
    Ok(smith_normal_form(&u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: usize) -> UPoly {
        UPoly::monomial(super::super::ring::qi(1), e)
    }

    fn check(m: &SparseMatrix<UPoly>, expect: &[UPoly]) {
        let s = smith_normal_form(m);
        assert_eq!(s.factors, expect);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
    }

    #[test]
    fn trivial_examples() {
        check(&SparseMatrix::identity(2), &[UPoly::one(), UPoly::one()]);
        let d = SparseMatrix::from_dense(vec![vec![x(2), UPoly::zero()], vec![UPoly::zero(), x(1)]]);
        check(&d, &[x(1), x(2)]);
        let j = SparseMatrix::from_dense(vec![vec![x(1), UPoly::one()], vec![UPoly::zero(), x(1)]]);
        check(&j, &[UPoly::one(), x(2)]);
    }

    #[test]
    fn multivariate_rejected() {
        let mut m = SparseMatrix::zeros(1, 2);
        m.set(0, 0, MultiPoly::var(0));
        m.set(0, 1, MultiPoly::var(1));
        assert!(matches!(smith_normal_form_multi(&m), Err(AlgebraError::UnsupportedRing(_))));
    }
}
