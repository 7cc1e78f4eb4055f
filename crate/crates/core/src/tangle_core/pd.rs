//! Planar diagram codes and their conversion to and from slice words.
//!
//! A crossing `X[a,b,c,d]` lists its four edges counterclockwise starting at
//! the incoming lower edge, so the understrand runs `a -> c`. The direction of
//! the overstrand is recovered by propagating edge directions around each
//! component.

use super::{
    CheckedWord, ColourId, CupData, Generator, Kind, Orient, SliceObject, TangleError, TangleWord,
};
use std::collections::{BTreeMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PdCrossing {
    /// Edge labels counterclockwise from the incoming lower edge.
    pub ports: [usize; 4],
    /// Right-handed sign: `+1` when the overstrand runs `d -> b`.
    pub sign: i32,
}

impl PdCrossing {
    /// Ports at which the strands enter and leave: `(in_under, out_under,
    /// in_over, out_over)` as port indices.
    pub fn port_roles(&self) -> (usize, usize, usize, usize) {
        if self.sign > 0 {
            (0, 2, 3, 1)
        } else {
            (0, 2, 1, 3)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub m: u8,
    pub label: u8,
    pub crossings: Vec<PdCrossing>,
    /// Crossingless unknotted components, one colour id each.
    pub free_loops: Vec<ColourId>,
    /// Colour id per edge label.
    pub edge_colour: BTreeMap<usize, ColourId>,
}

#[derive(Clone, Debug, Default)]
pub struct PdOptions {
    /// Give component `j` colour id `j` instead of a common colour 0.
    pub distinct_colours: bool,
}

/// Port occurrence: (crossing, port index).
type End = (usize, usize);

impl PdCode {
    fn ends(&self) -> BTreeMap<usize, Vec<End>> {
        let mut ends: BTreeMap<usize, Vec<End>> = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            for (p, e) in c.ports.iter().enumerate() {
                ends.entry(*e).or_default().push((x, p));
            }
        }
        ends
    }

    /// `(head, tail)` of every edge: the port it enters and the one it leaves.
    fn heads_tails(&self) -> BTreeMap<usize, (End, End)> {
        let mut head: BTreeMap<usize, End> = BTreeMap::new();
        let mut tail: BTreeMap<usize, End> = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            let (iu, ou, io, oo) = c.port_roles();
            head.insert(c.ports[iu], (x, iu));
            head.insert(c.ports[io], (x, io));
            tail.insert(c.ports[ou], (x, ou));
            tail.insert(c.ports[oo], (x, oo));
        }
        head.into_iter().map(|(e, h)| (e, (h, tail[&e]))).collect()
    }

    /// Component index per edge, components ordered by their least edge;
    /// free loops come after.
    pub fn components(&self) -> (BTreeMap<usize, usize>, usize) {
        let ht = self.heads_tails();
        let mut comp: BTreeMap<usize, usize> = BTreeMap::new();
        let mut count = 0;
        for &e0 in ht.keys() {
            if comp.contains_key(&e0) {
                continue;
            }
            let mut e = e0;
            loop {
                comp.insert(e, count);
                let (x, p) = ht[&e].0;
                e = self.crossings[x].ports[(p + 2) % 4];
                if e == e0 {
                    break;
                }
            }
            count += 1;
        }
        (comp, count + self.free_loops.len())
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign).sum()
    }

    /// Greedy Morse presentation: crossings are attached above the running
    /// slice at the leftmost place they fit, with cups opening edges that
    /// have not been reached yet and caps closing finished ones.
    pub fn to_word(&self) -> Result<TangleWord, TangleError> {
        let m = self.m;
        let ends = self.ends();
        let ht = self.heads_tails();
        let other_end = |e: usize, here: End| -> End {
            let v = &ends[&e];
            if v[0] == here {
                v[1]
            } else {
                v[0]
            }
        };
        #[derive(Clone, Copy)]
        struct Slot {
            edge: usize,
            target: End,
        }
        let slot_orient = |s: &Slot| if ht[&s.edge].0 == s.target { Orient::Up } else { Orient::Down };
        let endpoint_label = |o: Orient| if o == Orient::Up { self.label } else { m - self.label };
        let colour = |e: usize| self.edge_colour.get(&e).copied().unwrap_or(0);
        let cup_of = |left: &Slot| {
            let o = slot_orient(left);
            CupData {
                label: endpoint_label(o),
                colour: colour(left.edge),
                left: o,
            }
        };

        let nx = self.crossings.len();
        let mut done = vec![false; nx];
        let mut opened: BTreeMap<usize, bool> = ends.keys().map(|e| (*e, false)).collect();
        let mut front: Vec<Slot> = Vec::new();
        let mut gens: Vec<Generator> = Vec::new();
        let port = |x: usize, p: usize| self.crossings[x].ports[p % 4];

        let mut remaining = nx;
        while remaining > 0 {
            // two adjacent slots meeting consecutive ports
            let mut attach: Option<(usize, usize, usize)> = None;
            'pair: for i in 0..front.len().saturating_sub(1) {
                let (a, b) = (front[i].target, front[i + 1].target);
                if a.0 == b.0 && !done[a.0] && b.1 == (a.1 + 1) % 4 {
                    attach = Some((i, a.0, a.1));
                    break 'pair;
                }
            }
            if attach.is_none() {
                // one slot and an unopened neighbouring edge: open it with a cup
                for i in 0..front.len() {
                    let (x, p) = front[i].target;
                    if done[x] {
                        continue;
                    }
                    let e_next = port(x, p + 1);
                    if !opened[&e_next] {
                        let far = other_end(e_next, (x, (p + 1) % 4));
                        let near = Slot { edge: e_next, target: (x, (p + 1) % 4) };
                        gens.push(Generator::cup(i + 2, cup_of(&near)));
                        front.splice(i + 1..i + 1, [near, Slot { edge: e_next, target: far }]);
                        opened.insert(e_next, true);
                        attach = Some((i, x, p));
                        break;
                    }
                    let e_prev = port(x, p + 3);
                    if !opened[&e_prev] {
                        let far = other_end(e_prev, (x, (p + 3) % 4));
                        let farslot = Slot { edge: e_prev, target: far };
                        gens.push(Generator::cup(i + 1, cup_of(&farslot)));
                        front.splice(i..i, [farslot, Slot { edge: e_prev, target: (x, (p + 3) % 4) }]);
                        opened.insert(e_prev, true);
                        attach = Some((i + 1, x, (p + 3) % 4));
                        break;
                    }
                }
            }
            if attach.is_none() {
                if !front.is_empty() {
                    return Err(TangleError::Parse("PD code is not planar".into()));
                }
                // start a new connected piece at the first unused crossing
                let x = (0..nx).find(|&x| !done[x]).unwrap();
                let e = port(x, 0);
                let near = Slot { edge: e, target: (x, 0) };
                let far = Slot {
                    edge: e,
                    target: other_end(e, (x, 0)),
                };
                gens.push(Generator::cup(1, cup_of(&near)));
                front = vec![near, far];
                opened.insert(e, true);
                continue;
            }
            let (i, x, p) = attach.unwrap();
            let (ol, or) = (slot_orient(&front[i]), slot_orient(&front[i + 1]));
            // the strand through ports p and p+2 runs bottom-left to top-right;
            // ports 1 and 3 are the overstrand
            let inverse = p % 2 == 0;
            gens.push(Generator::new(Kind::for_orient((ol, or), inverse), i + 1));
            let r_edge = port(x, p + 3);
            let s_edge = port(x, p + 2);
            let r = Slot {
                edge: r_edge,
                target: other_end(r_edge, (x, (p + 3) % 4)),
            };
            let s = Slot {
                edge: s_edge,
                target: other_end(s_edge, (x, (p + 2) % 4)),
            };
            opened.insert(r_edge, true);
            opened.insert(s_edge, true);
            front[i] = r;
            front[i + 1] = s;
            done[x] = true;
            remaining -= 1;
            close_caps(&mut front, &done, &mut gens);
        }
        close_caps(&mut front, &done, &mut gens);
        if !front.is_empty() {
            return Err(TangleError::Parse("PD code is not planar".into()));
        }
        for &c in &self.free_loops {
            let n = 0;
            gens.push(Generator::cup(
                n + 1,
                CupData {
                    label: self.label,
                    colour: c,
                    left: Orient::Up,
                },
            ));
            gens.push(Generator::new(Kind::Cap, n + 1));
        }

        fn close_caps(front: &mut Vec<Slot>, done: &[bool], gens: &mut Vec<Generator>) {
            loop {
                let hit = (0..front.len().saturating_sub(1)).find(|&i| {
                    front[i].edge == front[i + 1].edge && done[front[i].target.0] && done[front[i + 1].target.0]
                });
                match hit {
                    Some(i) => {
                        gens.push(Generator::new(Kind::Cap, i + 1));
                        front.drain(i..i + 2);
                    }
                    None => break,
                }
            }
        }

        Ok(TangleWord::new(SliceObject::empty(m), gens))
    }
}

fn parse_entry(st: &str) -> Option<[usize; 4]> {
    let body = st
        .strip_prefix("X[")
        .and_then(|s| s.strip_suffix(']'))
        .or_else(|| st.strip_prefix("X(").and_then(|s| s.strip_suffix(')')))
        .unwrap_or(st);
    let v: Vec<usize> = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect::<Option<Vec<_>>>()?;
    v.try_into().ok()
}

/// Reads PD entries one per line (`X[1,4,2,5]`, `X(1,4,2,5)` or `1 4 2 5`).
/// `O` adds a crossingless component; `m=`, `label=` and `colours=` (one id
/// per component) may appear on their own lines.
pub fn parse_pd(text: &str, opts: &PdOptions) -> Result<PdCode, TangleError> {
    let mut m = 2u8;
    let mut label = 1u8;
    let mut colours: Option<Vec<ColourId>> = None;
    let mut raw: Vec<[usize; 4]> = Vec::new();
    let mut loops = 0usize;
    for line in text.lines() {
        let line = line.split('#').next().unwrap();
        for st in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if st == "O" {
                loops += 1;
            } else if let Some(v) = st.strip_prefix("m=") {
                m = v.trim().parse().map_err(|_| TangleError::Parse(format!("bad m `{v}`")))?;
            } else if let Some(v) = st.strip_prefix("label=") {
                let k: i64 = v.trim().parse().map_err(|_| TangleError::Parse(format!("bad label `{v}`")))?;
                if k < 1 || k >= m as i64 {
                    return Err(TangleError::LabelOutOfRange { label: k, m });
                }
                label = k as u8;
            } else if let Some(v) = st.strip_prefix("colours=") {
                colours = Some(
                    v.split(',')
                        .map(|t| t.trim().parse().map_err(|_| TangleError::Parse(format!("bad colour `{t}`"))))
                        .collect::<Result<_, _>>()?,
                );
            } else {
                raw.push(parse_entry(st).ok_or_else(|| TangleError::Parse(format!("malformed PD entry `{st}`")))?);
            }
        }
    }
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &raw {
        for e in c {
            *count.entry(*e).or_default() += 1;
        }
    }
    if let Some((e, _)) = count.iter().find(|(_, n)| **n != 2) {
        return Err(TangleError::Parse(format!("edge {e} must occur exactly twice")));
    }
    // propagate directions: dir[(x,p)] = true when the edge enters x at p
    let mut ends: BTreeMap<usize, Vec<End>> = BTreeMap::new();
    for (x, c) in raw.iter().enumerate() {
        for (p, e) in c.iter().enumerate() {
            ends.entry(*e).or_default().push((x, p));
        }
    }
    let mut incoming: BTreeMap<End, bool> = BTreeMap::new();
    let mut queue: VecDeque<End> = VecDeque::new();
    let set = |incoming: &mut BTreeMap<End, bool>, queue: &mut VecDeque<End>, at: End, val: bool| -> Result<(), TangleError> {
        match incoming.get(&at) {
            Some(v) if *v != val => Err(TangleError::Parse("inconsistent edge directions in PD code".into())),
            Some(_) => Ok(()),
            None => {
                incoming.insert(at, val);
                queue.push_back(at);
                Ok(())
            }
        }
    };
    for x in 0..raw.len() {
        set(&mut incoming, &mut queue, (x, 0), true)?;
        set(&mut incoming, &mut queue, (x, 2), false)?;
    }
    let mut next_free = 0;
    loop {
        while let Some((x, p)) = queue.pop_front() {
            let v = incoming[&(x, p)];
            let e = raw[x][p];
            let other = if ends[&e][0] == (x, p) { ends[&e][1] } else { ends[&e][0] };
            set(&mut incoming, &mut queue, other, !v)?;
            set(&mut incoming, &mut queue, (x, (p + 2) % 4), !v)?;
        }
        while next_free < raw.len() && incoming.contains_key(&(next_free, 1)) {
            next_free += 1;
        }
        if next_free == raw.len() {
            break;
        }
        set(&mut incoming, &mut queue, (next_free, 3), true)?;
    }
    let crossings: Vec<PdCrossing> = raw
        .iter()
        .enumerate()
        .map(|(x, ports)| PdCrossing {
            ports: *ports,
            sign: if incoming[&(x, 3)] { 1 } else { -1 },
        })
        .collect();
    let mut code = PdCode {
        m,
        label,
        crossings,
        free_loops: Vec::new(),
        edge_colour: BTreeMap::new(),
    };
    let (comp, ncomp) = code.components();
    let colour_of = |j: usize| -> ColourId {
        match &colours {
            Some(v) => v.get(j).copied().unwrap_or(0),
            None if opts.distinct_colours => j as ColourId,
            None => 0,
        }
    };
    code.edge_colour = comp.iter().map(|(e, j)| (*e, colour_of(*j))).collect();
    // free loops are numbered after the components with crossings
    code.free_loops = (0..loops).map(|j| colour_of(ncomp + j)).collect();
    Ok(code)
}

/// PD code of a closed word. Edges are numbered in order of first appearance
/// along the word.
pub fn word_to_pd(c: &CheckedWord) -> Result<PdCode, TangleError> {
    if !c.word.domain.is_empty() || !c.codomain().is_empty() {
        return Err(TangleError::NotClosed);
    }
    let m = c.word.domain.m;
    // pieces joined by caps are one edge
    let mut parent: Vec<usize> = Vec::new();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    let mut piece_colour: Vec<ColourId> = Vec::new();
    let mut touched: Vec<bool> = Vec::new();
    fn new_piece(parent: &mut Vec<usize>, colour: &mut Vec<ColourId>, touched: &mut Vec<bool>, col: ColourId, t: bool) -> usize {
        parent.push(parent.len());
        colour.push(col);
        touched.push(t);
        parent.len() - 1
    }
    let mut front: Vec<usize> = Vec::new();
    let mut raw: Vec<([usize; 4], i32)> = Vec::new();
    for (j, g) in c.word.gens.iter().enumerate() {
        let s = &c.slices[j];
        let p = g.pos - 1;
        match g.kind {
            Kind::Cup => {
                let d = g.cup.unwrap();
                let x = new_piece(&mut parent, &mut piece_colour, &mut touched, d.colour, false);
                front.splice(p..p, [x, x]);
            }
            Kind::Cap => {
                let (a, b) = (find(&mut parent, front[p]), find(&mut parent, front[p + 1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                    let t = touched[a] || touched[b];
                    touched[a.min(b)] = t;
                }
                front.drain(p..p + 2);
            }
            k => {
                let (bl, br) = (front[p], front[p + 1]);
                let (cl, cr) = (piece_colour[bl], piece_colour[br]);
                let tr = new_piece(&mut parent, &mut piece_colour, &mut touched, cl, true);
                let tl = new_piece(&mut parent, &mut piece_colour, &mut touched, cr, true);
                touched[find(&mut parent, bl)] = true;
                touched[find(&mut parent, br)] = true;
                let (ol, or) = (s.orient[p], s.orient[p + 1]);
                let ccw = [br, tr, tl, bl];
                // understrand is br-tl for T_l, bl-tr for inverses
                let (under_in, over_in) = if !k.is_inverse() {
                    (if or == Orient::Up { 0 } else { 2 }, if ol == Orient::Up { 3 } else { 1 })
                } else {
                    (if ol == Orient::Up { 3 } else { 1 }, if or == Orient::Up { 0 } else { 2 })
                };
                let ports = [0, 1, 2, 3].map(|t| ccw[(under_in + t) % 4]);
                let sign = if (over_in + 4 - under_in) % 4 == 3 { 1 } else { -1 };
                raw.push((ports, sign));
                front[p] = tl;
                front[p + 1] = tr;
            }
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut crossings = Vec::with_capacity(raw.len());
    let mut edge_colour = BTreeMap::new();
    for (ports, sign) in &raw {
        let mut out = [0; 4];
        for t in 0..4 {
            let r = find(&mut parent, ports[t]);
            let next = ids.len() + 1;
            let id = *ids.entry(r).or_insert(next);
            edge_colour.insert(id, piece_colour[r]);
            out[t] = id;
        }
        crossings.push(PdCrossing { ports: out, sign: *sign });
    }
    let mut free_loops = Vec::new();
    for x in 0..parent.len() {
        if find(&mut parent, x) == x && !touched[x] {
            free_loops.push(piece_colour[x]);
        }
    }
    let strand_label = c
        .word
        .gens
        .iter()
        .find_map(|g| g.cup.map(|d| if d.left == Orient::Up { d.label } else { m - d.label }))
        .unwrap_or(1);
    Ok(PdCode {
        m,
        label: strand_label,
        crossings,
        free_loops,
        edge_colour,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{trace_word, validate_word, writhe_by_label};
    use super::*;

    fn validate_pd_word(code: &PdCode) -> Result<CheckedWord, TangleError> {
        validate_word(&code.to_word()?)
    }

    const HOPF: &str = "X[1,3,2,4]\nX[3,1,4,2]";
    const TREFOIL: &str = "X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]";

    #[test]
    fn hopf_from_pd() {
        let code = parse_pd(HOPF, &PdOptions::default()).unwrap();
        let (_, n) = code.components();
        assert_eq!(n, 2);
        let c = validate_pd_word(&code).unwrap();
        assert_eq!(c.word.crossings(), 2);
        assert_eq!(trace_word(&c).count, 2);
    }

    #[test]
    fn trefoil_round_trip() {
        let code = parse_pd(TREFOIL, &PdOptions::default()).unwrap();
        assert_eq!(code.writhe().abs(), 3);
        let c = validate_pd_word(&code).unwrap();
        assert_eq!(trace_word(&c).count, 1);
        let writhe: i64 = writhe_by_label(&c).values().sum();
        // word crossings use the mirror of the right-handed sign
        assert_eq!(writhe, -(code.writhe() as i64));
        let back = word_to_pd(&c).unwrap();
        assert_eq!(back.crossings.len(), 3);
        assert_eq!(back.writhe(), code.writhe());
        assert_eq!(back.components().1, 1);
    }

    #[test]
    fn malformed_entries() {
        assert!(parse_pd("X[1,2,3]", &PdOptions::default()).is_err());
        assert!(parse_pd("X[1,2,3,4]", &PdOptions::default()).is_err());
    }
}
