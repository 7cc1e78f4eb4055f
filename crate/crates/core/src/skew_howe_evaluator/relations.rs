//! The tangle relations as exact matrix identities.

use super::{word_columns, word_map, writhe_normalization, EvalError, IntLaurent, WeightSpaceMap};
use crate::tangle_core::{
    apply_move, validate_word, writhe_by_label, CupData, Generator, Kind, Move, MoveKind, Orient, SliceObject,
    TangleWord,
};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationId {
    R0,
    R1,
    R2,
    R3,
    Pitchfork,
    HeightExchange,
}

impl RelationId {
    pub const ALL: [RelationId; 6] = [
        RelationId::R0,
        RelationId::R1,
        RelationId::R2,
        RelationId::R3,
        RelationId::Pitchfork,
        RelationId::HeightExchange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::R0 => "r0",
            RelationId::R1 => "r1",
            RelationId::R2 => "r2",
            RelationId::R3 => "r3",
            RelationId::Pitchfork => "pitchfork",
            RelationId::HeightExchange => "height",
        }
    }

    pub fn from_name(s: &str) -> Option<RelationId> {
        RelationId::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Two words with equal domain and codomain that the relation identifies.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub id: RelationId,
    pub lhs: TangleWord,
    pub rhs: TangleWord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub pass: bool,
    /// A domain basis vector on which the two sides differ.
    pub witness: Option<Vec<u16>>,
}

/// Word matrix times the writhe normalization of the word.
pub fn normalized_map(word: &TangleWord) -> Result<WeightSpaceMap, EvalError> {
    let c = validate_word(word)?;
    let mut w = word_map(word)?;
    let n = writhe_normalization(word.domain.m, &writhe_by_label(&c));
    w.matrix = w.matrix.scale(&n);
    Ok(w)
}

pub fn verify_relation(inst: &RelationInstance) -> Result<RelationCheck, EvalError> {
    let side = |w: &TangleWord| -> Result<_, EvalError> {
        let c = validate_word(w)?;
        let n = IntLaurent::from_laurent(&writhe_normalization(w.domain.m, &writhe_by_label(&c)));
        let (dom, mut cols) = word_columns(w)?;
        for col in &mut cols {
            for v in col.values_mut() {
                *v = v.mul(&n);
            }
        }
        Ok((dom, cols))
    };
    let (cl, cr) = (validate_word(&inst.lhs)?, validate_word(&inst.rhs)?);
    if cl.codomain().labels != cr.codomain().labels || inst.lhs.domain.labels != inst.rhs.domain.labels {
        return Err(EvalError::Tangle(crate::tangle_core::TangleError::PatternMismatch(
            "the two sides have different boundaries".into(),
        )));
    }
    let (dom, a) = side(&inst.lhs)?;
    let (_, b) = side(&inst.rhs)?;
    let witness = a.iter().zip(&b).position(|(x, y)| x != y).map(|j| dom.basis[j].clone());
    Ok(RelationCheck {
        pass: witness.is_none(),
        witness,
    })
}

/// All slice objects with `n` strands of one colour.
pub fn domains(m: u8, n: usize) -> Vec<SliceObject> {
    let mut out = vec![SliceObject::empty(m)];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in &out {
            for k in 1..m {
                for o in [Orient::Up, Orient::Down] {
                    let mut t = s.clone();
                    t.labels.push(k);
                    t.colours.push(0);
                    t.orient.push(o);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

fn crossings_at(s: &SliceObject, pos: usize) -> Vec<Generator> {
    [false, true]
        .into_iter()
        .map(|inv| Generator::new(Kind::for_orient((s.orient[pos - 1], s.orient[pos]), inv), pos))
        .collect()
}

/// Every generator applicable to `s` whose output has at most `max` strands.
fn generators(s: &SliceObject, max: usize) -> Vec<Generator> {
    let n = s.len();
    let mut out = Vec::new();
    for pos in 1..n {
        out.extend(crossings_at(s, pos));
        let g = Generator::new(Kind::Cap, pos);
        if s.apply(&g).is_ok() {
            out.push(g);
        }
    }
    if n + 2 <= max {
        for pos in 1..=n + 1 {
            for label in 1..s.m {
                for left in [Orient::Up, Orient::Down] {
                    out.push(Generator::cup(
                        pos,
                        CupData {
                            label,
                            colour: 0,
                            left,
                        },
                    ));
                }
            }
        }
    }
    out
}

fn push(out: &mut Vec<RelationInstance>, id: RelationId, lhs: TangleWord, kind: MoveKind, at: usize) {
    if let Ok(rhs) = apply_move(&lhs, Move { kind, at }) {
        out.push(RelationInstance { id, lhs, rhs });
    }
}

/// Strands that pass through the whole word untouched.
fn idle_strands(w: &TangleWord) -> usize {
    let mut untouched = vec![true; w.domain.len()];
    for g in &w.gens {
        let (i, o) = g.kind.arity();
        let p = g.pos - 1;
        untouched.splice(p..p + i, std::iter::repeat(false).take(o));
    }
    untouched.iter().filter(|x| **x).count()
}

/// `w` with an extra up-strand of label 1 on the left or right.
fn with_context(w: &TangleWord, left: bool) -> TangleWord {
    let mut d = w.domain.clone();
    let mut gens = w.gens.clone();
    if left {
        d.labels.insert(0, 1);
        d.colours.insert(0, 0);
        d.orient.insert(0, Orient::Up);
        for g in &mut gens {
            g.pos += 1;
        }
    } else {
        d.labels.push(1);
        d.colours.push(0);
        d.orient.push(Orient::Up);
    }
    TangleWord::new(d, gens)
}

fn max_width(w: &TangleWord) -> usize {
    validate_word(w).map_or(usize::MAX, |c| c.slices.iter().map(|s| s.len()).max().unwrap_or(0))
}

/// Every instance of `id` whose slices have at most `max` strands and in
/// which every strand is touched, together with each of these padded by one
/// extra strand on either side when that still fits.
pub fn relation_instances(m: u8, max: usize, id: RelationId) -> Vec<RelationInstance> {
    let base: Vec<RelationInstance> = all_instances(m, max, id)
        .into_iter()
        .filter(|i| idle_strands(&i.lhs) == 0)
        .collect();
    let mut out = base.clone();
    for inst in &base {
        for left in [true, false] {
            let lhs = with_context(&inst.lhs, left);
            if max_width(&lhs) <= max {
                out.push(RelationInstance {
                    id,
                    lhs,
                    rhs: with_context(&inst.rhs, left),
                });
            }
        }
    }
    out
}

fn all_instances(m: u8, max: usize, id: RelationId) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for n in 0..=max {
        for d in domains(m, n) {
            let empty = TangleWord::new(d.clone(), vec![]);
            match id {
                RelationId::R0 if n + 2 <= max => {
                    for strand in 1..=n {
                        for right in [true, false] {
                            if let Ok(lhs) = apply_move(
                                &empty,
                                Move {
                                    kind: MoveKind::R0Insert { strand, right },
                                    at: 0,
                                },
                            ) {
                                out.push(RelationInstance {
                                    id,
                                    lhs,
                                    rhs: empty.clone(),
                                });
                            }
                        }
                    }
                }
                RelationId::R1 => {
                    for pos in 1..n {
                        let cap = TangleWord::new(d.clone(), vec![Generator::new(Kind::Cap, pos)]);
                        if validate_word(&cap).is_err() {
                            continue;
                        }
                        for inverse in [false, true] {
                            if let Ok(lhs) = apply_move(
                                &cap,
                                Move {
                                    kind: MoveKind::R1Insert { inverse },
                                    at: 0,
                                },
                            ) {
                                out.push(RelationInstance {
                                    id,
                                    lhs,
                                    rhs: cap.clone(),
                                });
                            }
                        }
                    }
                    // curls sitting on a cup
                    if n + 2 <= max {
                        for g in generators(&d, max).into_iter().filter(|g| g.kind == Kind::Cup) {
                            // the twisted cup is the cup with its legs exchanged
                            let cd = g.cup.unwrap();
                            let swapped = Generator::cup(
                                g.pos,
                                CupData {
                                    label: d.m - cd.label,
                                    colour: cd.colour,
                                    left: cd.left.flip(),
                                },
                            );
                            let cup = TangleWord::new(d.clone(), vec![swapped]);
                            let mid = d.apply(&g).unwrap();
                            for x in crossings_at(&mid, g.pos) {
                                let lhs = TangleWord::new(d.clone(), vec![g, x]);
                                if validate_word(&lhs).is_ok() {
                                    out.push(RelationInstance {
                                        id,
                                        lhs,
                                        rhs: cup.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
                RelationId::R2 => {
                    for pos in 1..n {
                        for inverse_first in [false, true] {
                            if let Ok(lhs) = apply_move(
                                &empty,
                                Move {
                                    kind: MoveKind::R2Insert { pos, inverse_first },
                                    at: 0,
                                },
                            ) {
                                out.push(RelationInstance {
                                    id,
                                    lhs,
                                    rhs: empty.clone(),
                                });
                            }
                        }
                    }
                }
                RelationId::R3 => {
                    for i in 1..n.saturating_sub(1) {
                        for shape in [[i, i + 1, i], [i + 1, i, i + 1]] {
                            for flags in 0..8u8 {
                                let mut s = d.clone();
                                let mut gens = Vec::new();
                                for (t, &p) in shape.iter().enumerate() {
                                    let g = Generator::new(
                                        Kind::for_orient((s.orient[p - 1], s.orient[p]), flags >> t & 1 == 1),
                                        p,
                                    );
                                    s = s.apply(&g).unwrap();
                                    gens.push(g);
                                }
                                push(&mut out, id, TangleWord::new(d.clone(), gens), MoveKind::R3, 0);
                            }
                        }
                    }
                }
                RelationId::Pitchfork | RelationId::HeightExchange => {
                    let kind = if id == RelationId::Pitchfork {
                        MoveKind::Pitchfork
                    } else {
                        MoveKind::HeightExchange
                    };
                    for g in generators(&d, max) {
                        let mid = d.apply(&g).unwrap();
                        for h in generators(&mid, max) {
                            let lhs = TangleWord::new(d.clone(), vec![g, h]);
                            push(&mut out, id, lhs, kind, 0);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}
