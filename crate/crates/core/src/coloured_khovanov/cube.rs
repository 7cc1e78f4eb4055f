//! The cube of resolutions of a PD code and its edge maps.

use super::KhError;
use crate::tangle_core::{ColourId, PdCode};
use std::collections::BTreeMap;

/// One crossing of the cube with the data the deformation needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeCrossing {
    /// Edge indices counterclockwise from the incoming understrand.
    pub ports: [usize; 4],
    pub sign: i32,
    pub over: ColourId,
    pub under: ColourId,
    /// `±1` by the chessboard colour of the region between ports 0 and 1.
    pub chess: i8,
}

/// A resolution: which circle every edge lies on.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub circles: usize,
    pub circle_of_edge: Vec<u16>,
    /// Least edge of every circle.
    rep: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    pub crossings: Vec<CubeCrossing>,
    pub n_plus: usize,
    pub n_minus: usize,
    pub edge_colour: Vec<ColourId>,
    pub free_loops: Vec<ColourId>,
    pub vertices: Vec<Vertex>,
    offsets: Vec<usize>,
}

/// The four arcs at a crossing: the 0-smoothing joins ports `0-1` and `2-3`,
/// the 1-smoothing joins `0-3` and `1-2`.
fn arcs(bit: bool) -> [(usize, usize); 2] {
    if bit {
        [(0, 3), (1, 2)]
    } else {
        [(0, 1), (2, 3)]
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Faces of the planar diagram coloured in two colours; `None` when the
/// corners do not admit a proper colouring.
fn chessboard(ports: &[[usize; 4]], n_edges: usize) -> Option<Vec<i8>> {
    let n = ports.len();
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_edges];
    for (x, p) in ports.iter().enumerate() {
        for (i, e) in p.iter().enumerate() {
            ends[*e].push((x, i));
        }
    }
    // corner (x, i) sits between ports i and i+1; walking out along port i+1
    // keeps the face on the right, so the face continues at the far corner
    let mut face = vec![usize::MAX; 4 * n];
    let mut nfaces = 0;
    for start in 0..4 * n {
        if face[start] != usize::MAX {
            continue;
        }
        let mut cur = start;
        while face[cur] == usize::MAX {
            face[cur] = nfaces;
            let (x, i) = (cur / 4, cur % 4);
            let p = (x, (i + 1) % 4);
            let e = ports[x][p.1];
            let far = if ends[e][0] == p { ends[e][1] } else { ends[e][0] };
            cur = far.0 * 4 + far.1;
        }
        nfaces += 1;
    }
    // faces on either side of the edge at port i+1 of x are corner i and i+1
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nfaces];
    for x in 0..n {
        for i in 0..4 {
            let (f, g) = (face[4 * x + i], face[4 * x + (i + 1) % 4]);
            adj[f].push(g);
            adj[g].push(f);
        }
    }
    let mut colour = vec![0i8; nfaces];
    for s in 0..nfaces {
        if colour[s] != 0 {
            continue;
        }
        colour[s] = 1;
        let mut stack = vec![s];
        while let Some(f) = stack.pop() {
            for &g in &adj[f] {
                if colour[g] == 0 {
                    colour[g] = -colour[f];
                    stack.push(g);
                } else if colour[g] == colour[f] {
                    return None;
                }
            }
        }
    }
    Some((0..n).map(|x| colour[face[4 * x]]).collect())
}

impl CubeComplex {
    pub fn from_pd(pd: &PdCode) -> Result<CubeComplex, KhError> {
        let mut labels: Vec<usize> = pd.crossings.iter().flat_map(|c| c.ports).collect();
        labels.sort_unstable();
        labels.dedup();
        let idx: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let ports: Vec<[usize; 4]> = pd.crossings.iter().map(|c| c.ports.map(|e| idx[&e])).collect();
        if ports.len() > 20 {
            return Err(KhError::TooLarge(ports.len()));
        }
        let chess = chessboard(&ports, labels.len()).ok_or(KhError::NotPlanar)?;
        let edge_colour: Vec<ColourId> = labels.iter().map(|e| pd.edge_colour.get(e).copied().unwrap_or(0)).collect();
        let crossings: Vec<CubeCrossing> = pd
            .crossings
            .iter()
            .zip(&ports)
            .zip(&chess)
            .map(|((c, p), s)| CubeCrossing {
                ports: *p,
                sign: c.sign,
                under: edge_colour[p[0]],
                over: edge_colour[p[1]],
                chess: *s,
            })
            .collect();
        let n = crossings.len();
        let free = pd.free_loops.len();
        let mut vertices = Vec::with_capacity(1 << n);
        let mut offsets = Vec::with_capacity((1 << n) + 1);
        offsets.push(0);
        for v in 0..1usize << n {
            let mut parent: Vec<usize> = (0..labels.len()).collect();
            for (x, p) in ports.iter().enumerate() {
                for (i, j) in arcs(v >> x & 1 == 1) {
                    let (a, b) = (find(&mut parent, p[i]), find(&mut parent, p[j]));
                    parent[a.max(b)] = a.min(b);
                }
            }
            let mut circle_of_edge = vec![0u16; labels.len()];
            let mut rep = Vec::new();
            let mut root_circle: BTreeMap<usize, u16> = BTreeMap::new();
            for e in 0..labels.len() {
                let r = find(&mut parent, e);
                let c = *root_circle.entry(r).or_insert_with(|| {
                    rep.push(e);
                    (rep.len() - 1) as u16
                });
                circle_of_edge[e] = c;
            }
            let circles = rep.len() + free;
            if circles > 24 {
                return Err(KhError::TooLarge(n));
            }
            offsets.push(offsets[v] + (1usize << circles));
            vertices.push(Vertex {
                circles,
                circle_of_edge,
                rep,
            });
        }
        let n_plus = crossings.iter().filter(|c| c.sign > 0).count();
        Ok(CubeComplex {
            n_plus,
            n_minus: n - n_plus,
            crossings,
            edge_colour,
            free_loops: pd.free_loops.clone(),
            vertices,
            offsets,
        })
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    /// Total rank of the chain groups.
    pub fn rank(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn index(&self, v: usize, xmask: usize) -> usize {
        self.offsets[v] + xmask
    }

    /// `(vertex, X-mask)` of a generator; bit `i` set means circle `i` carries `X`.
    pub fn generator(&self, g: usize) -> (usize, usize) {
        let v = self.offsets.partition_point(|&o| o <= g) - 1;
        (v, g - self.offsets[v])
    }

    pub fn h_degree(&self, v: usize) -> i64 {
        v.count_ones() as i64 - self.n_minus as i64
    }

    pub fn q_degree(&self, v: usize, xmask: usize) -> i64 {
        let c = self.vertices[v].circles as i64;
        let x = xmask.count_ones() as i64;
        c - 2 * x + v.count_ones() as i64 + self.n_plus as i64 - 2 * self.n_minus as i64
    }

    /// `(h, q)` of every generator.
    pub fn bidegrees(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.rank());
        for v in 0..self.vertices.len() {
            for x in 0..1usize << self.vertices[v].circles {
                out.push((self.h_degree(v), self.q_degree(v, x)));
            }
        }
        out
    }

    /// Circle count of every vertex, in vertex order.
    pub fn circle_counts(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.circles).collect()
    }

    /// Chain group ranks indexed by `h + n_minus`.
    pub fn chain_ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.n() + 1];
        for (v, vert) in self.vertices.iter().enumerate() {
            out[v.count_ones() as usize] += 1 << vert.circles;
        }
        out
    }

    /// Circles of `from` and `to` on the two arcs at crossing `c`, and the
    /// image in `to` of every other circle of `from`.
    fn edge_circles(&self, from: usize, to: usize, c: usize) -> ([u16; 2], [u16; 2], Vec<u16>) {
        let p = self.crossings[c].ports;
        let (fv, tv) = (&self.vertices[from], &self.vertices[to]);
        let fa = arcs(from >> c & 1 == 1);
        let ta = arcs(to >> c & 1 == 1);
        let f = [fv.circle_of_edge[p[fa[0].0]], fv.circle_of_edge[p[fa[1].0]]];
        let t = [tv.circle_of_edge[p[ta[0].0]], tv.circle_of_edge[p[ta[1].0]]];
        let crossing_circles = fv.rep.len();
        let mut image: Vec<u16> = fv.rep.iter().map(|e| tv.circle_of_edge[*e]).collect();
        let t_crossing = tv.rep.len();
        for j in 0..fv.circles - crossing_circles {
            image.push((t_crossing + j) as u16);
        }
        (f, t, image)
    }

    /// Saddle map at `c` from vertex `from` to the vertex with bit `c`
    /// flipped, as `(column mask, row mask)` pairs with coefficient one.
    /// The Frobenius algebra is `Q[X]/(X^2)`.
    pub(crate) fn saddle(&self, from: usize, c: usize) -> (usize, Vec<(usize, usize)>) {
        let to = from ^ (1 << c);
        let (f, t, image) = self.edge_circles(from, to, c);
        let nf = self.vertices[from].circles;
        let mut out = Vec::new();
        for mask in 0..1usize << nf {
            let mut rest = 0usize;
            for (i, &j) in image.iter().enumerate() {
                if i as u16 != f[0] && i as u16 != f[1] && mask >> i & 1 == 1 {
                    rest |= 1 << j;
                }
            }
            let bit = |i: u16| mask >> i & 1 == 1;
            if f[0] != f[1] {
                // merge
                debug_assert_eq!(t[0], t[1]);
                let (x1, x2) = (bit(f[0]), bit(f[1]));
                if !(x1 && x2) {
                    let m = rest | if x1 || x2 { 1 << t[0] } else { 0 };
                    out.push((mask, m));
                }
            } else {
                debug_assert_ne!(t[0], t[1]);
                if bit(f[0]) {
                    out.push((mask, rest | 1 << t[0] | 1 << t[1]));
                } else {
                    out.push((mask, rest | 1 << t[0]));
                    out.push((mask, rest | 1 << t[1]));
                }
            }
        }
        (to, out)
    }

    /// Cube sign of the edge flipping bit `c` of `v` (either direction).
    pub fn edge_sign(v: usize, c: usize) -> i64 {
        if (v & ((1 << c) - 1)).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}
