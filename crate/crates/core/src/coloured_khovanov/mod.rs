//! Colour-deformed Khovanov homology for `m = 2`.
//!
//! The complex is the cube of resolutions of the PD code of a diagram with
//! `Q[X]/(X^2)` on every circle. The deformed differential is
//!
//! `D = d + Σ_c χ(c) (w_{over(c)} - w_{under(c)}) ψ_c`
//!
//! where `ψ_c` is the saddle at `c` run backwards with the forward cube sign
//! of the same edge, and `χ(c) = ±1` is the chessboard colour of the region
//! between ports 0 and 1 of `c`. With `deg w = -2` the differential
//! preserves `q`; `h` only survives mod 2.

mod cube;

pub use cube::{CubeComplex, CubeCrossing, Vertex};

use crate::exact_algebra::{
    graded_homology_over_line, qi, rank_q, AlgebraError, LaurentPoly, LineComplex, MultiPoly, Ring, SparseMatrix,
    UPoly, Q,
};
use crate::tangle_core::{word_to_pd, ColourId, LinkDiagram, PdCode, PdCrossing, TangleError};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KhError {
    #[error("the cube complex needs m = 2 with every strand labeled 1")]
    NotFundamental,
    #[error("diagram with {0} crossings is too large")]
    TooLarge(usize),
    #[error("PD code does not describe a planar diagram")]
    NotPlanar,
    #[error("no value for colour {0}")]
    MissingColour(ColourId),
    #[error("direction repeats the value of colours {0} and {1}")]
    DegenerateDirection(ColourId, ColourId),
    #[error("D o D != 0 for the deformed differential")]
    SquareNonZero,
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The PD code of a closed `m = 2` diagram with all labels 1.
pub fn diagram_pd(d: &LinkDiagram) -> Result<PdCode, KhError> {
    if d.m() != 2 || d.word.slices.iter().any(|s| s.labels.iter().any(|&k| k != 1)) {
        return Err(KhError::NotFundamental);
    }
    Ok(word_to_pd(&d.word)?)
}

pub fn build_cube(d: &LinkDiagram) -> Result<CubeComplex, KhError> {
    CubeComplex::from_pd(&diagram_pd(d)?)
}

/// One matrix entry `coeff` at `(row, col)` of the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub coeff: i64,
}

/// `D = d + Σ_c weight(c)·ψ_c`, with the weights kept symbolic.
#[derive(Clone, Debug)]
pub struct DeformedDifferential {
    pub size: usize,
    pub forward: Vec<Entry>,
    /// Backward entries with the crossing they belong to.
    pub backward: Vec<(Entry, usize)>,
    /// `(χ, over colour, under colour)` per crossing.
    pub weights: Vec<(i64, ColourId, ColourId)>,
    /// Colour ids that occur, in increasing order.
    pub colours: Vec<ColourId>,
}

pub fn deformed_differential(cube: &CubeComplex) -> DeformedDifferential {
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for v in 0..cube.vertices.len() {
        for c in 0..cube.n() {
            if v >> c & 1 == 1 {
                continue;
            }
            let s = CubeComplex::edge_sign(v, c);
            let (to, f) = cube.saddle(v, c);
            for (col, row) in f {
                forward.push(Entry {
                    row: cube.index(to, row),
                    col: cube.index(v, col),
                    coeff: s,
                });
            }
            let x = &cube.crossings[c];
            if x.over == x.under {
                continue;
            }
            let (back_to, b) = cube.saddle(to, c);
            debug_assert_eq!(back_to, v);
            for (col, row) in b {
                backward.push((
                    Entry {
                        row: cube.index(v, row),
                        col: cube.index(to, col),
                        coeff: s,
                    },
                    c,
                ));
            }
        }
    }
    let colours: BTreeSet<ColourId> = cube.edge_colour.iter().chain(&cube.free_loops).copied().collect();
    DeformedDifferential {
        size: cube.rank(),
        forward,
        backward,
        weights: cube.crossings.iter().map(|x| (x.chess as i64, x.over, x.under)).collect(),
        colours: colours.into_iter().collect(),
    }
}

impl DeformedDifferential {
    /// The whole differential with `weight(c)` multiplying `ψ_c`.
    pub fn matrix<R: Ring>(&self, weight: impl Fn(usize) -> R) -> SparseMatrix<R> {
        let mut m = SparseMatrix::zeros(self.size, self.size);
        for e in &self.forward {
            m.add_at(e.row, e.col, &R::from_q(&qi(e.coeff)));
        }
        let ws: Vec<R> = (0..self.weights.len()).map(weight).collect();
        for (e, c) in &self.backward {
            m.add_at(e.row, e.col, &ws[*c].mul(&R::from_q(&qi(e.coeff))));
        }
        m
    }

    /// Over `Q[w_1, w_2, …]` with colour id `i` carried by `w_{i+1}`.
    pub fn symbolic(&self) -> SparseMatrix<MultiPoly> {
        self.matrix(|c| {
            let (chi, o, u) = self.weights[c];
            let w = MultiPoly::var(o as usize).sub(&MultiPoly::var(u as usize));
            w.mul(&MultiPoly::constant(qi(chi)))
        })
    }

    fn value(colours: &[Q], id: ColourId) -> Result<Q, KhError> {
        colours.get(id as usize).cloned().ok_or(KhError::MissingColour(id))
    }

    pub fn at_point(&self, colours: &[Q]) -> Result<SparseMatrix<Q>, KhError> {
        for &id in &self.colours {
            Self::value(colours, id)?;
        }
        Ok(self.matrix(|c| {
            let (chi, o, u) = self.weights[c];
            qi(chi) * (&colours[o as usize] - &colours[u as usize])
        }))
    }

    /// `w_i = v_i x`.
    pub fn on_line(&self, direction: &[Q]) -> Result<SparseMatrix<UPoly>, KhError> {
        for &id in &self.colours {
            Self::value(direction, id)?;
        }
        Ok(self.matrix(|c| {
            let (chi, o, u) = self.weights[c];
            UPoly::monomial(qi(chi) * (&direction[o as usize] - &direction[u as usize]), 1)
        }))
    }

    /// Checks `D o D = 0` over the polynomial ring.
    pub fn check_square_zero(&self) -> Result<(), KhError> {
        let d = self.symbolic();
        if d.mul(&d).is_zero() {
            Ok(())
        } else {
            Err(KhError::SquareNonZero)
        }
    }
}

/// Undeformed Khovanov homology: `(h, q) -> dim`, zero entries omitted.
pub fn khovanov_homology(cube: &CubeComplex, dd: &DeformedDifferential) -> BTreeMap<(i64, i64), usize> {
    let deg = cube.bidegrees();
    let mut local = vec![0usize; deg.len()];
    let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (g, d) in deg.iter().enumerate() {
        let n = dims.entry(*d).or_default();
        local[g] = *n;
        *n += 1;
    }
    // block (h, q) -> (h + 1, q)
    let mut blocks: BTreeMap<(i64, i64), Vec<(usize, usize, i64)>> = BTreeMap::new();
    for e in &dd.forward {
        debug_assert_eq!(deg[e.row], (deg[e.col].0 + 1, deg[e.col].1));
        blocks.entry(deg[e.col]).or_default().push((local[e.row], local[e.col], e.coeff));
    }
    let mut ranks: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (k, entries) in blocks {
        let rows = dims[&(k.0 + 1, k.1)];
        let mut m = SparseMatrix::<Q>::zeros(rows, dims[&k]);
        for (r, c, x) in entries {
            m.add_at(r, c, &qi(x));
        }
        ranks.insert(k, rank_q(&m));
    }
    dims.iter()
        .map(|(&(h, q), &n)| {
            let out = ranks.get(&(h, q)).copied().unwrap_or(0);
            let inc = ranks.get(&(h - 1, q)).copied().unwrap_or(0);
            ((h, q), n - out - inc)
        })
        .filter(|(_, n)| *n > 0)
        .collect()
}

pub fn total_dimension(h: &BTreeMap<(i64, i64), usize>) -> usize {
    h.values().sum()
}

/// `Σ (-1)^h q^j dim Kh^{h,j}`.
pub fn euler_characteristic(h: &BTreeMap<(i64, i64), usize>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (&(hh, q), &n) in h {
        let s = if hh.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) };
        p = &p + &LaurentPoly::from_ints(&[(s, q)]);
    }
    p
}

/// Homology of `(C, D)` at numeric colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointHomology {
    pub total: usize,
    /// Dimension in even and odd `h`; `D` has odd degree.
    pub by_parity: [usize; 2],
}

fn parity_blocks<R: Ring>(cube: &CubeComplex, m: &SparseMatrix<R>) -> ([Vec<usize>; 2], [SparseMatrix<R>; 2]) {
    let mut local = vec![0usize; cube.rank()];
    let mut part: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for v in 0..cube.vertices.len() {
        let p = cube.h_degree(v).rem_euclid(2) as usize;
        for x in 0..1usize << cube.vertices[v].circles {
            let g = cube.index(v, x);
            local[g] = part[p].len();
            part[p].push(g);
        }
    }
    // block[p] maps parity p to parity 1 - p
    let mut blocks = [
        SparseMatrix::zeros(part[1].len(), part[0].len()),
        SparseMatrix::zeros(part[0].len(), part[1].len()),
    ];
    for (r, c, x) in m.entries() {
        let (v, _) = cube.generator(c);
        let p = cube.h_degree(v).rem_euclid(2) as usize;
        blocks[p].add_at(local[r], local[c], x);
    }
    (part, blocks)
}

pub fn homology_at_point(cube: &CubeComplex, dd: &DeformedDifferential, colours: &[Q]) -> Result<PointHomology, KhError> {
    let m = dd.at_point(colours)?;
    let (part, blocks) = parity_blocks(cube, &m);
    let r = [rank_q(&blocks[0]), rank_q(&blocks[1])];
    let even = part[0].len() - r[0] - r[1];
    let odd = part[1].len() - r[0] - r[1];
    Ok(PointHomology {
        total: even + odd,
        by_parity: [even, odd],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequenceReport {
    /// Undeformed homology by `(h, q)`.
    pub e1: BTreeMap<(i64, i64), usize>,
    pub e1_total: usize,
    /// Rank of the generic fibre, with `(h mod 2, q)` per free summand.
    pub betti: usize,
    pub free: Vec<(i64, i64)>,
    /// `(h mod 2, q, e)` per summand `Q[x]/(x^e)`.
    pub torsion: Vec<(i64, i64, u32)>,
    /// First page equal to the limit.
    pub collapse_page: u32,
}

pub fn family_line_analysis(
    cube: &CubeComplex,
    dd: &DeformedDifferential,
    direction: &[Q],
) -> Result<SpectralSequenceReport, KhError> {
    for (i, &a) in dd.colours.iter().enumerate() {
        for &b in &dd.colours[i + 1..] {
            if DeformedDifferential::value(direction, a)? == DeformedDifferential::value(direction, b)? {
                return Err(KhError::DegenerateDirection(a, b));
            }
        }
    }
    let m = dd.on_line(direction)?;
    let (part, blocks) = parity_blocks(cube, &m);
    let deg = cube.bidegrees();
    // ψ lowers q by 2, so the line variable has q-degree -2; the graded
    // elimination sees -q
    let qdeg = |p: usize| -> Vec<i64> { part[p].iter().map(|&g| -deg[g].1).collect() };
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for mid in 0..2usize {
        let other = 1 - mid;
        // C_other -> C_mid -> C_other; its middle homology is H in parity `mid`
        let lc = LineComplex {
            start: 0,
            gen_degrees: vec![qdeg(other), qdeg(mid), qdeg(other)],
            maps: vec![blocks[other].clone(), blocks[mid].clone()],
            x_degree: 2,
        };
        let h = graded_homology_over_line(&lc, true)?;
        free.extend(h.betti.iter().filter(|(d, _)| *d == 1).map(|(_, q)| (mid as i64, -q)));
        torsion.extend(h.torsion.iter().filter(|(d, _, _)| *d == 1).map(|(_, q, e)| (mid as i64, -q, *e)));
    }
    free.sort_unstable();
    torsion.sort_unstable();
    let e1 = khovanov_homology(cube, dd);
    let e1_total = total_dimension(&e1);
    let collapse_page = 1 + torsion.iter().map(|t| t.2).max().unwrap_or(0);
    Ok(SpectralSequenceReport {
        e1,
        e1_total,
        betti: free.len(),
        free,
        torsion,
        collapse_page,
    })
}

/// Sub-diagram of every component, with the other components erased.
/// Components follow [`PdCode::components`].
pub fn component_pds(pd: &PdCode) -> Vec<PdCode> {
    let (comp, count) = pd.components();
    let with_crossings = count - pd.free_loops.len();
    let mut out = Vec::with_capacity(count);
    for j in 0..with_crossings {
        let edges: Vec<usize> = comp.iter().filter(|(_, c)| **c == j).map(|(e, _)| *e).collect();
        let pos: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut kept = Vec::new();
        for c in &pd.crossings {
            let mine: Vec<bool> = c.ports.iter().map(|e| comp[e] == j).collect();
            match (mine[0], mine[1]) {
                (true, true) => kept.push(*c),
                (true, false) | (false, true) => {
                    let (a, b) = if mine[0] { (0, 2) } else { (1, 3) };
                    let (x, y) = (find(&mut parent, pos[&c.ports[a]]), find(&mut parent, pos[&c.ports[b]]));
                    parent[x.max(y)] = x.min(y);
                }
                _ => {}
            }
        }
        let colour = pd.edge_colour.get(&edges[0]).copied().unwrap_or(0);
        let sub = if kept.is_empty() {
            PdCode {
                m: pd.m,
                label: pd.label,
                crossings: vec![],
                free_loops: vec![colour],
                edge_colour: BTreeMap::new(),
            }
        } else {
            let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
            let crossings: Vec<PdCrossing> = kept
                .iter()
                .map(|c| PdCrossing {
                    ports: c.ports.map(|e| {
                        let r = find(&mut parent, pos[&e]);
                        let next = ids.len() + 1;
                        *ids.entry(r).or_insert(next)
                    }),
                    sign: c.sign,
                })
                .collect();
            PdCode {
                m: pd.m,
                label: pd.label,
                crossings,
                free_loops: vec![],
                edge_colour: ids.values().map(|i| (*i, colour)).collect(),
            }
        };
        out.push(sub);
    }
    for &c in &pd.free_loops {
        out.push(PdCode {
            m: pd.m,
            label: pd.label,
            crossings: vec![],
            free_loops: vec![c],
            edge_colour: BTreeMap::new(),
        });
    }
    out
}

/// Total Khovanov dimension of each component on its own.
pub fn component_dimensions(pd: &PdCode) -> Result<Vec<usize>, KhError> {
    component_pds(pd)
        .iter()
        .map(|p| {
            let cube = CubeComplex::from_pd(p)?;
            let dd = deformed_differential(&cube);
            Ok(total_dimension(&khovanov_homology(&cube, &dd)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle_core::{parse_pd, PdOptions};

    const HOPF: &str = "X[4,1,3,2]\nX[2,3,1,4]";

    fn setup(text: &str, distinct: bool) -> (PdCode, CubeComplex, DeformedDifferential) {
        let pd = parse_pd(text, &PdOptions { distinct_colours: distinct }).unwrap();
        let cube = CubeComplex::from_pd(&pd).unwrap();
        let dd = deformed_differential(&cube);
        (pd, cube, dd)
    }

    #[test]
    fn knots_have_no_deformation() {
        let (_, _, dd) = setup("X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]", true);
        assert!(dd.backward.is_empty());
    }

    #[test]
    fn hopf_square_zero_and_split() {
        let (_, cube, dd) = setup(HOPF, true);
        dd.check_square_zero().unwrap();
        let p = homology_at_point(&cube, &dd, &[qi(0), qi(1)]).unwrap();
        assert_eq!(p.total, 4);
        let same = homology_at_point(&cube, &dd, &[qi(3), qi(3)]).unwrap();
        assert_eq!(same.total, total_dimension(&khovanov_homology(&cube, &dd)));
    }

    #[test]
    fn unknot_dimension_two() {
        let (_, cube, dd) = setup("O", false);
        assert_eq!(homology_at_point(&cube, &dd, &[qi(5)]).unwrap().total, 2);
    }

    #[test]
    fn trefoil_khovanov() {
        let (_, cube, dd) = setup("X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]", false);
        let kh = khovanov_homology(&cube, &dd);
        assert_eq!(total_dimension(&kh), 4);
        assert_eq!(
            euler_characteristic(&kh),
            LaurentPoly::from_ints(&[(1, -1), (1, -3), (1, -5), (-1, -9)])
        );
    }

    #[test]
    fn degenerate_direction() {
        let (_, cube, dd) = setup(HOPF, true);
        assert_eq!(
            family_line_analysis(&cube, &dd, &[qi(2), qi(2)]).unwrap_err(),
            KhError::DegenerateDirection(0, 1)
        );
    }

    #[test]
    fn component_split_of_hopf() {
        let (pd, _, _) = setup(HOPF, true);
        let parts = component_pds(&pd);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.crossings.is_empty() && p.free_loops.len() == 1));
        assert_eq!(component_dimensions(&pd).unwrap(), vec![2, 2]);
    }
}
