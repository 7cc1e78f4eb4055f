use super::matrix::SparseMatrix;
use super::ring::{Ring, Q};
use super::snf::smith_normal_form;
use super::upoly::UPoly;
use super::AlgebraError;
use std::collections::BTreeMap;

/// Cochain complex `C_s -> C_{s+1} -> ...`; `maps[i]` goes from `C_{start+i}`
/// to `C_{start+i+1}` and has shape `dims[i+1] x dims[i]`.
#[derive(Clone, Debug)]
pub struct ChainComplex<R: Ring> {
    pub start: i64,
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMatrix<R>>,
}

impl<R: Ring> ChainComplex<R> {
    pub fn new(start: i64, dims: Vec<usize>, maps: Vec<SparseMatrix<R>>) -> Result<Self, AlgebraError> {
        if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
            return Err(AlgebraError::Shape("need one map between consecutive groups".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.ncols() != dims[i] || m.nrows() != dims[i + 1] {
                return Err(AlgebraError::Shape(format!("map {i} has the wrong shape")));
            }
        }
        Ok(Self { start, dims, maps })
    }

    /// `Err(NotAComplex)` at the first degree where `d o d != 0`.
    pub fn check_square_zero(&self) -> Result<(), AlgebraError> {
        for i in 1..self.maps.len() {
            if !self.maps[i].mul(&self.maps[i - 1]).is_zero() {
                return Err(AlgebraError::NotAComplex(self.start + i as i64));
            }
        }
        Ok(())
    }
}

/// Rank over the rationals by sparse row reduction.
pub fn rank_q(m: &SparseMatrix<Q>) -> usize {
    // pivot column -> reduced row with that leading column
    let mut pivots: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by_key(|&r| m.row(r).len());
    for r in order {
        let mut row: Vec<(usize, Q)> = m.row(r).iter().map(|(c, v)| (*c, v.clone())).collect();
        while let Some((lead, a)) = row.first().cloned() {
            let Some(p) = pivots.get(&lead) else { break };
            let f = &a / &p[0].1;
            row = axpy(&row, p, &f);
        }
        if let Some((lead, _)) = row.first() {
            pivots.insert(*lead, row);
        }
    }
    pivots.len()
}

/// `row - f * p` for sorted sparse rows.
fn axpy(row: &[(usize, Q)], p: &[(usize, Q)], f: &Q) -> Vec<(usize, Q)> {
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < p.len() {
        let ci = row.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &p[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &p[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Homology dimensions `dim ker d_i - rank d_{i-1}` for each degree.
pub fn homology_over_field(c: &ChainComplex<Q>) -> Result<Vec<usize>, AlgebraError> {
    c.check_square_zero()?;
    let ranks: Vec<usize> = c.maps.iter().map(rank_q).collect();
    Ok((0..c.dims.len())
        .map(|i| {
            let out = if i < ranks.len() { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            c.dims[i] - out - inc
        })
        .collect())
}

/// Free and torsion summands of a finitely generated graded `Q[x]`-module
/// presented as homology, in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedModuleDecomp {
    /// `(homological degree, internal degree)` per free summand.
    pub betti: Vec<(i64, i64)>,
    /// `(homological degree, internal degree, d)` per summand `Q[x]/(x^d)`.
    pub torsion: Vec<(i64, i64, u32)>,
}

impl GradedModuleDecomp {
    pub fn free_rank(&self) -> usize {
        self.betti.len()
    }

    fn canonicalize(&mut self) {
        self.betti.sort_unstable();
        self.torsion.sort_unstable();
    }
}

/// Complex of graded free `Q[x]`-modules, `deg x = x_degree`, differential of
/// internal degree zero.
#[derive(Clone, Debug)]
pub struct LineComplex {
    pub start: i64,
    /// Internal degree of each basis element, per homological degree.
    pub gen_degrees: Vec<Vec<i64>>,
    pub maps: Vec<SparseMatrix<UPoly>>,
    pub x_degree: i64,
}

/// Outcome of eliminating one homogeneous matrix: pivot positions with their
/// invariant-factor exponents, in nondecreasing exponent order.
struct Pivots {
    rows: Vec<(usize, u32)>,
    cols: Vec<usize>,
}

fn monomial_entry(p: &UPoly) -> Option<(Q, u32)> {
    p.as_monomial().map(|(c, e)| (c, e as u32))
}

/// Graded elimination: the pivot is always an entry of least `x`-exponent,
/// which over a homogeneous matrix divides its whole row and column.
fn graded_eliminate(m: &SparseMatrix<UPoly>) -> Pivots {
    let mut rows: Vec<BTreeMap<usize, (Q, u32)>> = (0..m.nrows())
        .map(|r| m.row(r).iter().map(|(c, p)| (*c, monomial_entry(p).expect("homogeneous"))).collect())
        .collect();
    let mut col_rows: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); m.ncols()];
    for (r, row) in rows.iter().enumerate() {
        for c in row.keys() {
            col_rows[*c].insert(r, ());
        }
    }
    let mut alive_row = vec![true; m.nrows()];
    let mut out = Pivots { rows: Vec::new(), cols: Vec::new() };
    loop {
        // least exponent, then sparsest row as tie-break
        let mut best: Option<(u32, usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !alive_row[r] {
                continue;
            }
            for (c, (_, e)) in row {
                let key = (*e, row.len() * col_rows[*c].len(), r, *c);
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let Some((e, _, pr, pc)) = best else { break };
        alive_row[pr] = false;
        let prow = rows[pr].clone();
        let (a, _) = prow[&pc].clone();
        let others: Vec<usize> = col_rows[pc].keys().copied().filter(|r| *r != pr).collect();
        for r in others {
            let (b, eb) = rows[r][&pc].clone();
            let f = &b / &a;
            let shift = eb - e;
            for (c, (v, ev)) in &prow {
                let t = (&f * v, ev + shift);
                let slot = rows[r].remove(c);
                let nv = match slot {
                    None => Some((-t.0, t.1)),
                    Some((x, ex)) => {
                        debug_assert_eq!(ex, t.1, "inhomogeneous update");
                        let s = x - t.0;
                        if s.is_zero() {
                            None
                        } else {
                            Some((s, ex))
                        }
                    }
                };
                match nv {
                    Some(v) => {
                        rows[r].insert(*c, v);
                        col_rows[*c].insert(r, ());
                    }
                    None => {
                        col_rows[*c].remove(&r);
                    }
                }
            }
        }
        for c in prow.keys() {
            col_rows[*c].remove(&pr);
        }
        // the pivot column is now zero outside the pivot row; dropping the
        // row amounts to clearing it with column operations
        rows[pr].clear();
        out.rows.push((pr, e));
        out.cols.push(pc);
    }
    out
}

fn multiset_remove(v: &mut Vec<i64>, x: i64) {
    let pos = v.iter().position(|y| *y == x).expect("degree bookkeeping out of sync");
    v.swap_remove(pos);
}

/// Homology of a complex of free `Q[x]`-modules in invariant-factor form.
///
/// With `enforce_grading`, every entry must be a monomial `c x^e` matching the
/// basis degrees; summands then carry internal degrees. Without it, a general
/// Smith normal form is used and internal degrees are reported as zero.
pub fn graded_homology_over_line(c: &LineComplex, enforce_grading: bool) -> Result<GradedModuleDecomp, AlgebraError> {
    let n = c.gen_degrees.len();
    if c.maps.len() + 1 != n && !(n == 0 && c.maps.is_empty()) {
        return Err(AlgebraError::Shape("need one map between consecutive groups".into()));
    }
    for i in 1..c.maps.len() {
        if !c.maps[i].mul(&c.maps[i - 1]).is_zero() {
            return Err(AlgebraError::NotAComplex(c.start + i as i64));
        }
    }
    let mut out = GradedModuleDecomp::default();
    if enforce_grading {
        for (i, m) in c.maps.iter().enumerate() {
            for (r, col, p) in m.entries() {
                let ok = match p.as_monomial() {
                    Some((_, e)) => c.gen_degrees[i + 1][r] - c.gen_degrees[i][col] == e as i64 * c.x_degree,
                    None => false,
                };
                if !ok {
                    return Err(AlgebraError::Grading(format!(
                        "entry ({r},{col}) of map {} is not homogeneous of degree 0",
                        c.start + i as i64
                    )));
                }
            }
        }
        let piv: Vec<Pivots> = c.maps.iter().map(graded_eliminate).collect();
        for h in 0..n {
            let mut free = c.gen_degrees[h].clone();
            if h < piv.len() {
                for col in &piv[h].cols {
                    multiset_remove(&mut free, c.gen_degrees[h][*col]);
                }
            }
            if h > 0 {
                for (row, e) in &piv[h - 1].rows {
                    let d = c.gen_degrees[h][*row];
                    multiset_remove(&mut free, d);
                    if *e > 0 {
                        out.torsion.push((c.start + h as i64, d, *e));
                    }
                }
            }
            out.betti.extend(free.into_iter().map(|d| (c.start + h as i64, d)));
        }
    } else {
        let snfs: Vec<_> = c.maps.iter().map(smith_normal_form).collect();
        for h in 0..n {
            let out_rank = if h < snfs.len() { snfs[h].rank() } else { 0 };
            let in_rank = if h > 0 { snfs[h - 1].rank() } else { 0 };
            let free = c.gen_degrees[h].len() - out_rank - in_rank;
            out.betti.extend(std::iter::repeat_n((c.start + h as i64, 0), free));
            if h > 0 {
                for f in &snfs[h - 1].factors {
                    if !f.is_unit() {
                        let e = match f.as_monomial() {
                            Some((k, e)) if k.is_one() => e as u32,
                            _ => {
                                return Err(AlgebraError::Grading(format!(
                                    "invariant factor {f} is not a power of x"
                                )))
                            }
                        };
                        out.torsion.push((c.start + h as i64, 0, e));
                    }
                }
            }
        }
    }
    out.canonicalize();
    Ok(out)
}

/// Specialize `x` to a rational value.
pub fn specialize_line(c: &LineComplex, x: &Q) -> ChainComplex<Q> {
    ChainComplex {
        start: c.start,
        dims: c.gen_degrees.iter().map(|g| g.len()).collect(),
        maps: c.maps.iter().map(|m| m.map(|p| p.eval(x))).collect(),
    }
}
