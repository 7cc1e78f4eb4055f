use super::ring::Ring;
use std::collections::BTreeMap;

/// Row-major sparse matrix; stored entries are always nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<R: Ring> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, R>>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, R::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &R) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.rows[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, R)>>(nrows: usize, ncols: usize, it: I) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in it {
            m.add_at(r, c, &v);
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<R>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> R {
        self.rows[r].get(&c).cloned().unwrap_or_else(R::zero)
    }

    pub fn get_ref(&self, r: usize, c: usize) -> Option<&R> {
        self.rows[r].get(&c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &R) {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        if v.is_zero() {
            return;
        }
        let cur = self.rows[r].remove(&c);
        let nv = match cur {
            Some(x) => x.add(v),
            None => v.clone(),
        };
        if !nv.is_zero() {
            self.rows[r].insert(c, nv);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, R> {
        &self.rows[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "dimension mismatch in product");
        let mut out = Self::zeros(self.nrows, o.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, R> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &o.rows[*k] {
                    let t = a.mul(b);
                    match acc.get_mut(j) {
                        Some(x) => *x = x.add(&t),
                        None => {
                            acc.insert(*j, t);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "dimension mismatch in sum");
        let mut out = self.clone();
        for (i, j, v) in o.entries() {
            out.add_at(i, j, v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul(c))
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> SparseMatrix<S> {
        let mut out = SparseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.entries() {
            out.set(i, j, f(v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for (i, j, v) in self.entries() {
            out.rows[j].insert(i, v.clone());
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| row.iter().fold(R::zero(), |acc, (j, a)| acc.add(&a.mul(&v[*j]))))
            .collect()
    }

    /// Sparse vector form of `M * v`.
    pub fn apply_sparse(&self, v: &BTreeMap<usize, R>) -> BTreeMap<usize, R> {
        let t = self.transpose_view_apply(v);
        t.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    fn transpose_view_apply(&self, v: &BTreeMap<usize, R>) -> BTreeMap<usize, R> {
        let mut out = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = R::zero();
            let mut hit = false;
            for (j, a) in row {
                if let Some(x) = v.get(j) {
                    acc = acc.add(&a.mul(x));
                    hit = true;
                }
            }
            if hit && !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    /// Rows and columns permuted: `out[p[i]][q[j]] = self[i][j]`.
    pub fn permute(&self, p: &[usize], q: &[usize]) -> Self {
        let mut out = Self::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.entries() {
            out.rows[p[i]].insert(q[j], v.clone());
        }
        out
    }

    /// Kronecker product `self (x) o`, row index `i*o.nrows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.nrows * o.nrows, self.ncols * o.ncols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                out.rows[i * o.nrows + k].insert(j * o.ncols + l, a.mul(b));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::{qi, Q};
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = SparseMatrix::<Q>::from_dense(vec![vec![qi(1), qi(2)], vec![qi(0), qi(3)]]);
        let i = SparseMatrix::<Q>::identity(2);
        assert_eq!(a.mul(&i), a);
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 1), qi(8));
        assert_eq!(a.sub(&a).nnz(), 0);
        assert_eq!(a.transpose().get(1, 0), qi(2));
        assert_eq!(a.kron(&i).nrows(), 4);
    }
}
