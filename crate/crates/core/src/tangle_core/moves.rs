//! Local rewrites of tangle words, one per relation of the tangle calculus.

use super::{validate_word, CheckedWord, CupData, Generator, Kind, SliceObject, TangleError, TangleWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Remove a zigzag `cup@a, cap@a+-1`.
    R0Remove,
    /// Insert a zigzag on strand `strand`, bending right or left.
    R0Insert { strand: usize, right: bool },
    /// Remove a curl `X@a, cap@a`.
    R1Remove,
    /// Insert a curl before the cap at the move location.
    R1Insert { inverse: bool },
    /// Remove a crossing followed by its inverse.
    R2Remove,
    /// Insert a crossing and its inverse at `pos`.
    R2Insert { pos: usize, inverse_first: bool },
    /// Slide a strand across a crossing.
    R3,
    /// Swap two generators with disjoint support.
    HeightExchange,
    /// Slide a cap or cup through a crossing.
    Pitchfork,
    /// Remove a full twist between strands of different colours.
    ColourPassRemove,
    /// Insert a full twist between strands of different colours.
    ColourPassInsert { pos: usize, inverse: bool },
}

/// A rewrite at word index `at` (for insertions: the slice before `gens[at]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub at: usize,
}

fn mismatch(s: &str) -> TangleError {
    TangleError::PatternMismatch(s.to_string())
}

fn crossing_for(o: &SliceObject, pos: usize, inverse: bool) -> Generator {
    Generator::new(Kind::for_orient((o.orient[pos - 1], o.orient[pos]), inverse), pos)
}

/// Input and output positions occupied by a generator.
fn support(g: &Generator) -> (usize, usize, usize) {
    let (a, b) = g.kind.arity();
    (g.pos, a, b)
}

fn rewrite(c: &CheckedWord, mv: Move) -> Result<Vec<Generator>, TangleError> {
    let gens = &c.word.gens;
    let j = mv.at;
    let get = |k: usize| gens.get(k).copied().ok_or_else(|| mismatch("location past end of word"));
    let mut out = gens.clone();
    match mv.kind {
        MoveKind::R0Remove => {
            let (g, h) = (get(j)?, get(j + 1)?);
            if g.kind != Kind::Cup || h.kind != Kind::Cap || !(h.pos + 1 == g.pos || h.pos == g.pos + 1) {
                return Err(mismatch("R0 needs cup@a followed by cap@a-1 or cap@a+1"));
            }
            out.drain(j..j + 2);
        }
        MoveKind::R0Insert { strand, right } => {
            let s = c.slices.get(j).ok_or_else(|| mismatch("location past end of word"))?;
            if strand == 0 || strand > s.len() {
                return Err(mismatch("no such strand"));
            }
            let p = strand - 1;
            let m = s.m;
            let ins = if right {
                [
                    Generator::cup(
                        strand + 1,
                        CupData {
                            label: m - s.labels[p],
                            colour: s.colours[p],
                            left: s.orient[p].flip(),
                        },
                    ),
                    Generator::new(Kind::Cap, strand),
                ]
            } else {
                [
                    Generator::cup(
                        strand,
                        CupData {
                            label: s.labels[p],
                            colour: s.colours[p],
                            left: s.orient[p],
                        },
                    ),
                    Generator::new(Kind::Cap, strand + 1),
                ]
            };
            out.splice(j..j, ins);
        }
        MoveKind::R1Remove => {
            let (g, h) = (get(j)?, get(j + 1)?);
            if !g.kind.is_crossing() || h.kind != Kind::Cap || g.pos != h.pos {
                return Err(mismatch("R1 needs a crossing followed by a cap at the same position"));
            }
            out.remove(j);
        }
        MoveKind::R1Insert { inverse } => {
            let h = get(j)?;
            if h.kind != Kind::Cap {
                return Err(mismatch("R1 insertion needs a cap"));
            }
            out.insert(j, crossing_for(&c.slices[j], h.pos, inverse));
        }
        MoveKind::R2Remove => {
            let (g, h) = (get(j)?, get(j + 1)?);
            if !g.kind.is_crossing() || h.kind != g.kind.inverse() || g.pos != h.pos {
                return Err(mismatch("R2 needs a crossing followed by its inverse"));
            }
            out.drain(j..j + 2);
        }
        MoveKind::R2Insert { pos, inverse_first } => {
            let s = c.slices.get(j).ok_or_else(|| mismatch("location past end of word"))?;
            if pos == 0 || pos + 1 > s.len() {
                return Err(mismatch("no such strand pair"));
            }
            let g = crossing_for(s, pos, inverse_first);
            out.splice(j..j, [g, Generator::new(g.kind.inverse(), pos)]);
        }
        MoveKind::R3 => {
            let (a, b, cc) = (get(j)?, get(j + 1)?, get(j + 2)?);
            if !(a.kind.is_crossing() && b.kind.is_crossing() && cc.kind.is_crossing()) {
                return Err(mismatch("R3 needs three crossings"));
            }
            let up = a.pos == cc.pos && b.pos == a.pos + 1;
            let down = a.pos == cc.pos && a.pos == b.pos + 1;
            if !(up || down) {
                return Err(mismatch("R3 needs positions i, i+1, i or i+1, i, i+1"));
            }
            // a cyclic over/under pattern is not a Reidemeister III configuration
            if a.kind.is_inverse() == cc.kind.is_inverse() && b.kind.is_inverse() != a.kind.is_inverse() {
                return Err(mismatch("cyclic over/under pattern"));
            }
            out[j] = Generator::new(cc.kind, b.pos);
            out[j + 1] = Generator::new(b.kind, a.pos);
            out[j + 2] = Generator::new(a.kind, b.pos);
        }
        MoveKind::HeightExchange => {
            let (g, h) = (get(j)?, get(j + 1)?);
            let (i1, in1, out1) = support(&g);
            let (i2, in2, out2) = support(&h);
            let (ng, nh) = if i2 + in2 <= i1 {
                let mut h2 = h;
                h2.pos = i2;
                let mut g2 = g;
                g2.pos = i1 + out2 - in2;
                (h2, g2)
            } else if i2 >= i1 + out1 {
                let mut h2 = h;
                h2.pos = i2 + in1 - out1;
                (h2, g)
            } else {
                return Err(mismatch("generators overlap"));
            };
            if ng.pos == 0 || nh.pos == 0 {
                return Err(mismatch("generators overlap"));
            }
            out[j] = ng;
            out[j + 1] = nh;
        }
        MoveKind::Pitchfork => {
            let (g, h) = (get(j)?, get(j + 1)?);
            let s = &c.slices[j];
            if g.kind.is_crossing() && h.kind == Kind::Cap && h.pos == g.pos + 1 {
                // X@i, cap@i+1 -> Y@i+1, cap@i
                let y = crossing_for(s, g.pos + 1, !g.kind.is_inverse());
                out[j] = y;
                out[j + 1] = Generator::new(Kind::Cap, g.pos);
            } else if g.kind.is_crossing() && h.kind == Kind::Cap && h.pos + 1 == g.pos {
                let x = crossing_for(s, h.pos, !g.kind.is_inverse());
                out[j] = x;
                out[j + 1] = Generator::new(Kind::Cap, h.pos + 1);
            } else if g.kind == Kind::Cup && h.kind.is_crossing() && h.pos == g.pos + 1 {
                // cup@i, X@i+1 -> cup@i+1, Y@i
                let mut cup = g;
                cup.pos = g.pos + 1;
                let mid = s.apply(&cup).map_err(|_| mismatch("cup does not apply"))?;
                out[j] = cup;
                out[j + 1] = crossing_for(&mid, g.pos, !h.kind.is_inverse());
            } else if g.kind == Kind::Cup && h.kind.is_crossing() && h.pos + 1 == g.pos {
                let mut cup = g;
                cup.pos = h.pos;
                let mid = s.apply(&cup).map_err(|_| mismatch("cup does not apply"))?;
                out[j] = cup;
                out[j + 1] = crossing_for(&mid, h.pos + 1, !h.kind.is_inverse());
            } else {
                return Err(mismatch("pitchfork needs a crossing next to a cap or cup"));
            }
        }
        MoveKind::ColourPassRemove => {
            let (g, h) = (get(j)?, get(j + 1)?);
            if !g.kind.is_crossing() || !h.kind.is_crossing() || g.pos != h.pos || g.kind.is_inverse() != h.kind.is_inverse()
            {
                return Err(mismatch("colour passing needs two like crossings at one position"));
            }
            let s = &c.slices[j];
            let p = g.pos - 1;
            if s.colours[p] == s.colours[p + 1] {
                return Err(TangleError::EqualColours(s.colours[p]));
            }
            out.drain(j..j + 2);
        }
        MoveKind::ColourPassInsert { pos, inverse } => {
            let s = c.slices.get(j).ok_or_else(|| mismatch("location past end of word"))?;
            if pos == 0 || pos + 1 > s.len() {
                return Err(mismatch("no such strand pair"));
            }
            let p = pos - 1;
            if s.colours[p] == s.colours[p + 1] {
                return Err(TangleError::EqualColours(s.colours[p]));
            }
            let g = crossing_for(s, pos, inverse);
            let mid = s.apply(&g).map_err(|_| mismatch("crossing does not apply"))?;
            out.splice(j..j, [g, crossing_for(&mid, pos, inverse)]);
        }
    }
    Ok(out)
}

/// Rewrites `word` by one relation. The result is validated; it has the same
/// domain and codomain.
pub fn apply_move(word: &TangleWord, mv: Move) -> Result<TangleWord, TangleError> {
    let c = validate_word(word)?;
    let gens = rewrite(&c, mv)?;
    let out = TangleWord::new(word.domain.clone(), gens);
    let oc = validate_word(&out)?;
    if oc.codomain() != c.codomain() {
        return Err(mismatch("rewrite changed the codomain"));
    }
    Ok(out)
}

/// Every move that applies somewhere in the word.
pub fn applicable_moves(word: &TangleWord) -> Vec<Move> {
    let Ok(c) = validate_word(word) else {
        return Vec::new();
    };
    let n = word.gens.len();
    let mut cands = Vec::new();
    for at in 0..=n {
        if at < n {
            for kind in [
                MoveKind::R0Remove,
                MoveKind::R1Remove,
                MoveKind::R2Remove,
                MoveKind::R3,
                MoveKind::HeightExchange,
                MoveKind::Pitchfork,
                MoveKind::ColourPassRemove,
                MoveKind::R1Insert { inverse: false },
                MoveKind::R1Insert { inverse: true },
            ] {
                cands.push(Move { kind, at });
            }
        }
        let len = c.slices[at].len();
        for strand in 1..=len {
            for right in [true, false] {
                cands.push(Move {
                    kind: MoveKind::R0Insert { strand, right },
                    at,
                });
            }
        }
        for pos in 1..len {
            for flag in [false, true] {
                cands.push(Move {
                    kind: MoveKind::R2Insert { pos, inverse_first: flag },
                    at,
                });
                cands.push(Move {
                    kind: MoveKind::ColourPassInsert { pos, inverse: flag },
                    at,
                });
            }
        }
    }
    cands
        .into_iter()
        .filter(|mv| rewrite(&c, *mv).is_ok_and(|g| validate_word(&TangleWord::new(word.domain.clone(), g)).is_ok()))
        .collect()
}

/// Options for [`random_rewrite`].
#[derive(Clone, Copy, Debug)]
pub struct RewriteOptions {
    pub steps: usize,
    pub max_crossings: usize,
    pub colour_passing: bool,
}

/// Applies `steps` moves, each drawn with `pick(n)` from the `n` applicable
/// ones, skipping moves that exceed the crossing budget.
pub fn random_rewrite<F: FnMut(usize) -> usize>(word: &TangleWord, opts: RewriteOptions, mut pick: F) -> TangleWord {
    let mut w = word.clone();
    for _ in 0..opts.steps {
        let moves: Vec<Move> = applicable_moves(&w)
            .into_iter()
            .filter(|mv| {
                opts.colour_passing
                    || !matches!(mv.kind, MoveKind::ColourPassInsert { .. } | MoveKind::ColourPassRemove)
            })
            .filter(|mv| {
                let grows = matches!(
                    mv.kind,
                    MoveKind::R1Insert { .. } | MoveKind::R2Insert { .. } | MoveKind::ColourPassInsert { .. }
                );
                !grows || w.crossings() + 2 <= opts.max_crossings
            })
            .collect();
        if moves.is_empty() {
            break;
        }
        let mv = moves[pick(moves.len()) % moves.len()];
        w = apply_move(&w, mv).expect("applicable move");
    }
    w
}

#[cfg(test)]
mod tests {
    use super::super::{trace_word, writhe_by_label, Orient};
    use super::*;

    fn unknot() -> TangleWord {
        super::super::parse_slice_word("m=2; cup@1; cap@1").unwrap()
    }

    #[test]
    fn r0_removes_zigzag() {
        let w = apply_move(
            &unknot(),
            Move {
                kind: MoveKind::R0Insert { strand: 1, right: true },
                at: 1,
            },
        )
        .unwrap();
        assert_eq!(w.gens.len(), 4);
        let back = apply_move(&w, Move { kind: MoveKind::R0Remove, at: 1 }).unwrap();
        assert_eq!(back, unknot());
    }

    #[test]
    fn height_exchange_of_caps() {
        // cap@3 then cap@1 on four strands -> cap@1 then cap@1
        let w = super::super::parse_slice_word("m=2; labels=1,1,1,1; orient=u,d,u,d\ncap@3\ncap@1").unwrap();
        let out = apply_move(&w, Move { kind: MoveKind::HeightExchange, at: 0 }).unwrap();
        assert_eq!(out.gens[0].pos, 1);
        assert_eq!(out.gens[1].pos, 1);
    }

    #[test]
    fn colour_passing_needs_distinct_colours() {
        let w = super::super::parse_slice_word("m=2; labels=1,1; colours=0,0").unwrap();
        let r = apply_move(
            &w,
            Move {
                kind: MoveKind::ColourPassInsert { pos: 1, inverse: false },
                at: 0,
            },
        );
        assert!(matches!(r, Err(TangleError::EqualColours(0))));
    }

    #[test]
    fn curl_changes_writhe_by_one() {
        let w = unknot();
        let out = apply_move(
            &w,
            Move {
                kind: MoveKind::R1Insert { inverse: false },
                at: 1,
            },
        )
        .unwrap();
        let c = validate_word(&out).unwrap();
        assert_eq!(writhe_by_label(&c)[&1], 1);
        assert_eq!(trace_word(&c).count, 1);
        assert_eq!(c.slices[1].orient, vec![Orient::Up, Orient::Down]);
    }
}
