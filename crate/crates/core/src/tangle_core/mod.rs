//! Coloured, labeled, oriented tangles as words in crossings, caps and cups.
//!
//! Positions are 1-based, as in the slice-word text format. Labels stored on a
//! slice object are endpoint labels: an upward strand labeled `k` has endpoint
//! label `k`, a downward one `m - k`.

mod moves;
mod pd;
mod text;

pub use moves::{apply_move, applicable_moves, random_rewrite, Move, MoveKind, RewriteOptions};
pub use pd::{parse_pd, word_to_pd, PdCode, PdCrossing, PdOptions};
pub use text::{parse_diagram, parse_slice_word, serialize_word};

use crate::exact_algebra::Q;
use std::collections::BTreeMap;
use std::fmt;

pub type ColourId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    pub fn flip(self) -> Orient {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Kind {
    T1,
    T2,
    T3,
    T4,
    T1inv,
    T2inv,
    T3inv,
    T4inv,
    Cap,
    Cup,
}

impl Kind {
    pub const CROSSINGS: [Kind; 8] = [
        Kind::T1,
        Kind::T2,
        Kind::T3,
        Kind::T4,
        Kind::T1inv,
        Kind::T2inv,
        Kind::T3inv,
        Kind::T4inv,
    ];

    pub fn is_crossing(self) -> bool {
        !matches!(self, Kind::Cap | Kind::Cup)
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Kind::T1inv | Kind::T2inv | Kind::T3inv | Kind::T4inv)
    }

    /// 1..4 for crossings.
    pub fn index(self) -> Option<u8> {
        match self {
            Kind::T1 | Kind::T1inv => Some(1),
            Kind::T2 | Kind::T2inv => Some(2),
            Kind::T3 | Kind::T3inv => Some(3),
            Kind::T4 | Kind::T4inv => Some(4),
            _ => None,
        }
    }

    pub fn crossing(index: u8, inverse: bool) -> Kind {
        match (index, inverse) {
            (1, false) => Kind::T1,
            (2, false) => Kind::T2,
            (3, false) => Kind::T3,
            (4, false) => Kind::T4,
            (1, true) => Kind::T1inv,
            (2, true) => Kind::T2inv,
            (3, true) => Kind::T3inv,
            (4, true) => Kind::T4inv,
            _ => panic!("crossing index {index} out of range"),
        }
    }

    /// Formal inverse; caps and cups swap.
    pub fn inverse(self) -> Kind {
        match self {
            Kind::Cap => Kind::Cup,
            Kind::Cup => Kind::Cap,
            k => Kind::crossing(k.index().unwrap(), !k.is_inverse()),
        }
    }

    /// Orientations of the two bottom endpoints a crossing accepts.
    ///
    /// For `T_l` the strand from bottom-left to top-right is the overstrand;
    /// `T_l^{-1}` is the inverse morphism, so its bottom is the swapped bottom
    /// of `T_l`.
    pub fn domain_orient(self) -> Option<(Orient, Orient)> {
        use Orient::*;
        let base = match self.index()? {
            1 => (Up, Up),
            2 => (Up, Down),
            3 => (Down, Up),
            _ => (Down, Down),
        };
        Some(if self.is_inverse() { (base.1, base.0) } else { base })
    }

    /// The crossing whose bottom orientations are `o` and whose left bottom
    /// strand is over (`inverse = false`) or under (`inverse = true`).
    pub fn for_orient(o: (Orient, Orient), inverse: bool) -> Kind {
        use Orient::*;
        let base = if inverse { (o.1, o.0) } else { o };
        let idx = match base {
            (Up, Up) => 1,
            (Up, Down) => 2,
            (Down, Up) => 3,
            (Down, Down) => 4,
        };
        Kind::crossing(idx, inverse)
    }

    /// Crossing sign: `t_2`, `t_3` positive, `t_1`, `t_4` negative, inverses
    /// opposite.
    pub fn sign(self) -> i32 {
        let s = match self.index() {
            Some(2) | Some(3) => 1,
            Some(_) => -1,
            None => 0,
        };
        if self.is_inverse() {
            -s
        } else {
            s
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::T1 => "x1",
            Kind::T2 => "x2",
            Kind::T3 => "x3",
            Kind::T4 => "x4",
            Kind::T1inv => "x1inv",
            Kind::T2inv => "x2inv",
            Kind::T3inv => "x3inv",
            Kind::T4inv => "x4inv",
            Kind::Cap => "cap",
            Kind::Cup => "cup",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Some(match s {
            "x1" => Kind::T1,
            "x2" => Kind::T2,
            "x3" => Kind::T3,
            "x4" => Kind::T4,
            "x1inv" => Kind::T1inv,
            "x2inv" => Kind::T2inv,
            "x3inv" => Kind::T3inv,
            "x4inv" => Kind::T4inv,
            "cap" => Kind::Cap,
            "cup" => Kind::Cup,
            _ => return None,
        })
    }

    /// Strands consumed and produced.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Kind::Cap => (2, 0),
            Kind::Cup => (0, 2),
            _ => (2, 2),
        }
    }
}

/// Data a cup needs beyond its position: the endpoint label and orientation
/// of its left leg and the colour of the new arc.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CupData {
    pub label: u8,
    pub colour: ColourId,
    pub left: Orient,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub kind: Kind,
    pub pos: usize,
    pub cup: Option<CupData>,
}

impl Generator {
    pub fn new(kind: Kind, pos: usize) -> Self {
        Self { kind, pos, cup: None }
    }

    pub fn cup(pos: usize, data: CupData) -> Self {
        Self {
            kind: Kind::Cup,
            pos,
            cup: Some(data),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SliceObject {
    pub m: u8,
    pub labels: Vec<u8>,
    pub colours: Vec<ColourId>,
    pub orient: Vec<Orient>,
}

impl SliceObject {
    pub fn empty(m: u8) -> Self {
        Self {
            m,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of the strand itself, undoing the downward convention.
    pub fn strand_label(&self, i: usize) -> u8 {
        match self.orient[i] {
            Orient::Up => self.labels[i],
            Orient::Down => self.m - self.labels[i],
        }
    }

    fn check(&self) -> Result<(), TangleError> {
        if self.m < 2 {
            return Err(TangleError::Parse(format!("m must be at least 2, got {}", self.m)));
        }
        if self.colours.len() != self.labels.len() || self.orient.len() != self.labels.len() {
            return Err(TangleError::Parse(
                "labels, colours and orientations differ in length".into(),
            ));
        }
        for &k in &self.labels {
            if k == 0 || k >= self.m {
                return Err(TangleError::LabelOutOfRange { label: k as i64, m: self.m });
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TangleWord {
    pub domain: SliceObject,
    pub gens: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("position {pos} out of range for {len} strands")]
    OutOfRange { pos: usize, len: usize },
    #[error("cap needs endpoint labels summing to m, found {0} + {1}")]
    LabelMismatch(u8, u8),
    #[error("cap joins colours {0} and {1}")]
    ColourMismatch(ColourId, ColourId),
    #[error("orientation pattern does not fit this generator")]
    OrientationMismatch,
    #[error("cup without label/colour/orientation data")]
    MissingCupData,
    #[error("cup label {0} outside 1..m-1")]
    CupLabel(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("generator {index} ({name}@{pos}): {reason}")]
    InvalidGenerator {
        index: usize,
        name: &'static str,
        pos: usize,
        reason: GenError,
    },
    #[error("label {label} outside 1..{m}-1")]
    LabelOutOfRange { label: i64, m: u8 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("colour passing needs distinct colours, both strands have colour {0}")]
    EqualColours(ColourId),
    #[error("diagram is not closed")]
    NotClosed,
}

impl SliceObject {
    /// The object after applying `g`, or the reason `g` does not apply.
    pub fn apply(&self, g: &Generator) -> Result<SliceObject, GenError> {
        let n = self.len();
        let i = g.pos;
        let mut out = self.clone();
        match g.kind {
            Kind::Cup => {
                if i == 0 || i > n + 1 {
                    return Err(GenError::OutOfRange { pos: i, len: n });
                }
                let d = g.cup.ok_or(GenError::MissingCupData)?;
                if d.label == 0 || d.label >= self.m {
                    return Err(GenError::CupLabel(d.label));
                }
                let j = i - 1;
                out.labels.splice(j..j, [d.label, self.m - d.label]);
                out.colours.splice(j..j, [d.colour, d.colour]);
                out.orient.splice(j..j, [d.left, d.left.flip()]);
            }
            k => {
                if i == 0 || i + 1 > n {
                    return Err(GenError::OutOfRange { pos: i, len: n });
                }
                let j = i - 1;
                if k == Kind::Cap {
                    if self.labels[j] + self.labels[j + 1] != self.m {
                        return Err(GenError::LabelMismatch(self.labels[j], self.labels[j + 1]));
                    }
                    if self.colours[j] != self.colours[j + 1] {
                        return Err(GenError::ColourMismatch(self.colours[j], self.colours[j + 1]));
                    }
                    if self.orient[j] == self.orient[j + 1] {
                        return Err(GenError::OrientationMismatch);
                    }
                    out.labels.drain(j..j + 2);
                    out.colours.drain(j..j + 2);
                    out.orient.drain(j..j + 2);
                } else {
                    if k.domain_orient() != Some((self.orient[j], self.orient[j + 1])) {
                        return Err(GenError::OrientationMismatch);
                    }
                    out.labels.swap(j, j + 1);
                    out.colours.swap(j, j + 1);
                    out.orient.swap(j, j + 1);
                }
            }
        }
        Ok(out)
    }
}

/// A word together with every intermediate slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedWord {
    pub word: TangleWord,
    /// `slices[j]` is the object before generator `j`; the last is the codomain.
    pub slices: Vec<SliceObject>,
}

impl CheckedWord {
    pub fn codomain(&self) -> &SliceObject {
        self.slices.last().unwrap()
    }
}

pub fn validate_word(word: &TangleWord) -> Result<CheckedWord, TangleError> {
    word.domain.check()?;
    let mut slices = vec![word.domain.clone()];
    for (index, g) in word.gens.iter().enumerate() {
        let next = slices.last().unwrap().apply(g).map_err(|reason| TangleError::InvalidGenerator {
            index,
            name: g.kind.name(),
            pos: g.pos,
            reason,
        })?;
        slices.push(next);
    }
    Ok(CheckedWord {
        word: word.clone(),
        slices,
    })
}

impl TangleWord {
    pub fn new(domain: SliceObject, gens: Vec<Generator>) -> Self {
        Self { domain, gens }
    }

    /// Reverse word with each generator inverted; caps become cups carrying
    /// the data of the strands they closed.
    pub fn inverse(&self) -> Result<TangleWord, TangleError> {
        let c = validate_word(self)?;
        let mut gens = Vec::with_capacity(self.gens.len());
        for (j, g) in self.gens.iter().enumerate().rev() {
            let before = &c.slices[j];
            let ng = match g.kind {
                Kind::Cap => {
                    let p = g.pos - 1;
                    Generator::cup(
                        g.pos,
                        CupData {
                            label: before.labels[p],
                            colour: before.colours[p],
                            left: before.orient[p],
                        },
                    )
                }
                Kind::Cup => Generator::new(Kind::Cap, g.pos),
                k => Generator::new(k.inverse(), g.pos),
            };
            gens.push(ng);
        }
        Ok(TangleWord {
            domain: c.codomain().clone(),
            gens,
        })
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &TangleWord) -> TangleWord {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        TangleWord {
            domain: self.domain.clone(),
            gens,
        }
    }

    pub fn crossings(&self) -> usize {
        self.gens.iter().filter(|g| g.kind.is_crossing()).count()
    }
}

/// Strand segments and the components they form.
///
/// A segment is a maximal piece of strand between generators; segment ids are
/// assigned in order of creation (domain strands first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTrace {
    /// Component of every segment.
    pub segment_component: Vec<usize>,
    /// For every crossing generator (by word index): components of the
    /// strands entering at bottom-left and bottom-right.
    pub crossing_components: BTreeMap<usize, (usize, usize)>,
    /// Colour id of every component.
    pub component_colour: Vec<ColourId>,
    pub count: usize,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nx = self.0[y];
            self.0[y] = r;
            y = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    fn push(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
}

/// Components of a validated word. Open strands of a tangle count as
/// components too.
pub fn trace_word(c: &CheckedWord) -> ComponentTrace {
    let mut dsu = Dsu(Vec::new());
    let mut colour_of_seg = Vec::new();
    let mut front: Vec<usize> = Vec::new();
    for &col in &c.word.domain.colours {
        front.push(dsu.push());
        colour_of_seg.push(col);
    }
    let mut crossing_segs = BTreeMap::new();
    for (j, g) in c.word.gens.iter().enumerate() {
        let p = g.pos - 1;
        match g.kind {
            Kind::Cup => {
                let s = dsu.push();
                colour_of_seg.push(g.cup.unwrap().colour);
                front.splice(p..p, [s, s]);
            }
            Kind::Cap => {
                dsu.union(front[p], front[p + 1]);
                front.drain(p..p + 2);
            }
            _ => {
                let (a, b) = (front[p], front[p + 1]);
                crossing_segs.insert(j, (a, b));
                let (na, nb) = (dsu.push(), dsu.push());
                colour_of_seg.push(colour_of_seg[b]);
                colour_of_seg.push(colour_of_seg[a]);
                dsu.union(a, nb);
                dsu.union(b, na);
                front[p] = na;
                front[p + 1] = nb;
            }
        }
    }
    let nseg = dsu.0.len();
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut segment_component = Vec::with_capacity(nseg);
    let mut component_colour = Vec::new();
    for s in 0..nseg {
        let r = dsu.find(s);
        let next = ids.len();
        let id = *ids.entry(r).or_insert(next);
        if id == component_colour.len() {
            component_colour.push(colour_of_seg[s]);
        }
        segment_component.push(id);
    }
    let crossing_components = crossing_segs
        .into_iter()
        .map(|(j, (a, b))| (j, (segment_component[a], segment_component[b])))
        .collect();
    ComponentTrace {
        count: ids.len(),
        segment_component,
        crossing_components,
        component_colour,
    }
}

/// Colour attached to a component at evaluation time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColourValue {
    Rational(Q),
    /// The formal variable `w_{i+1}`.
    Formal(usize),
}

/// A closed tangle word with its components traced.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    pub word: CheckedWord,
    pub components: ComponentTrace,
    /// Colour value per colour id; missing ids resolve to formal variables.
    pub colour_assignment: BTreeMap<ColourId, ColourValue>,
}

impl LinkDiagram {
    pub fn from_word(word: &TangleWord) -> Result<LinkDiagram, TangleError> {
        let c = validate_word(word)?;
        if !c.word.domain.is_empty() || !c.codomain().is_empty() {
            return Err(TangleError::NotClosed);
        }
        let components = trace_word(&c);
        Ok(LinkDiagram {
            word: c,
            components,
            colour_assignment: BTreeMap::new(),
        })
    }

    pub fn m(&self) -> u8 {
        self.word.word.domain.m
    }

    pub fn gens(&self) -> &[Generator] {
        &self.word.word.gens
    }

    /// Colour value of each component.
    pub fn component_colours(&self) -> Vec<ColourValue> {
        self.components
            .component_colour
            .iter()
            .map(|id| {
                self.colour_assignment
                    .get(id)
                    .cloned()
                    .unwrap_or(ColourValue::Formal(*id as usize))
            })
            .collect()
    }
}

/// Number of components and the segment partition.
pub fn trace_components(d: &LinkDiagram) -> &ComponentTrace {
    &d.components
}

/// Signed crossing count `d_k` per strand label, over crossings whose two
/// strands carry the same label.
pub fn writhe_by_label(c: &CheckedWord) -> BTreeMap<u8, i64> {
    let m = c.word.domain.m;
    let mut out: BTreeMap<u8, i64> = (1..m).map(|k| (k, 0)).collect();
    for (j, g) in c.word.gens.iter().enumerate() {
        if !g.kind.is_crossing() {
            continue;
        }
        let s = &c.slices[j];
        let p = g.pos - 1;
        let (a, b) = (s.strand_label(p), s.strand_label(p + 1));
        if a == b {
            *out.get_mut(&a).unwrap() += g.kind.sign() as i64;
        }
    }
    out
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_word(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(m: u8, labels: &[u8], orient: &[Orient]) -> SliceObject {
        SliceObject {
            m,
            labels: labels.to_vec(),
            colours: vec![0; labels.len()],
            orient: orient.to_vec(),
        }
    }

    #[test]
    fn crossing_swaps_labels() {
        use Orient::Up;
        let w = TangleWord::new(obj(3, &[1, 2], &[Up, Up]), vec![Generator::new(Kind::T1, 1)]);
        let c = validate_word(&w).unwrap();
        assert_eq!(c.codomain().labels, vec![2, 1]);
    }

    #[test]
    fn cap_label_rule() {
        use Orient::*;
        let w = TangleWord::new(obj(2, &[1, 1], &[Up, Down]), vec![Generator::new(Kind::Cap, 1)]);
        assert!(validate_word(&w).unwrap().codomain().is_empty());
        let bad = TangleWord::new(obj(3, &[1, 1], &[Up, Down]), vec![Generator::new(Kind::Cap, 1)]);
        assert!(matches!(
            validate_word(&bad),
            Err(TangleError::InvalidGenerator {
                reason: GenError::LabelMismatch(1, 1),
                ..
            })
        ));
    }

    #[test]
    fn kinds_round_trip_orientation() {
        for k in Kind::CROSSINGS {
            let o = k.domain_orient().unwrap();
            assert_eq!(Kind::for_orient(o, k.is_inverse()), k);
            assert_eq!(k.inverse().domain_orient().unwrap(), (o.1, o.0));
            assert_eq!(k.sign(), -k.inverse().sign());
        }
    }
}
