mod common;

use colink::exact_algebra::{qi, LaurentPoly};
use colink::skew_howe_evaluator::{evaluate_link, EvalError};
use colink::tangle_core::parse_diagram;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

fn ints(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms().map(|(e, c)| (e, c.to_integer().to_i64().unwrap())).collect()
}

/// The bracket variable is specialised by `A^2 = -q^{-1}`.
const MIRROR: i64 = -1;

#[test]
fn matches_kauffman_bracket_on_corpus() {
    for (name, text) in common::corpus() {
        let d = parse_diagram(&text).unwrap();
        let v = ints(&evaluate_link(&d).unwrap());
        assert_eq!(v, common::kauffman::unnormalized_jones(&text, MIRROR), "{name}");
    }
}

#[test]
fn frozen_values() {
    let trefoil = std::fs::read_to_string(common::corpus_dir().join("trefoil.pd")).unwrap();
    let v = evaluate_link(&parse_diagram(&trefoil).unwrap()).unwrap();
    assert_eq!(v, LaurentPoly::from_ints(&[(1, -1), (1, -3), (1, -5), (-1, -9)]));
    let hopf = std::fs::read_to_string(common::corpus_dir().join("hopf.pd")).unwrap();
    let v = evaluate_link(&parse_diagram(&hopf).unwrap()).unwrap();
    assert_eq!(v, LaurentPoly::from_ints(&[(1, 0), (1, -2), (1, -4), (1, -6)]));
}

#[test]
fn classical_dimension_at_q_one() {
    for (name, text) in common::corpus() {
        let d = parse_diagram(&text).unwrap();
        let at_one = evaluate_link(&d).unwrap().at_one();
        let expect = qi(1 << d.components.count);
        assert!(at_one == expect || at_one == -expect.clone(), "{name}: {at_one}");
    }
}

#[test]
fn unchanged_under_random_moves() {
    let mut changed = 0;
    for (i, (name, text)) in common::corpus().into_iter().enumerate() {
        let d = parse_diagram(&text).unwrap();
        if d.word.word.crossings() > 5 {
            continue;
        }
        let v = evaluate_link(&d).unwrap();
        for r in common::rewrites(&d, 5, i as u64, false, 3) {
            changed += usize::from(r.word.word != d.word.word);
            assert_eq!(evaluate_link(&r).unwrap(), v, "{name}");
        }
    }
    assert!(changed > 20, "only {changed} rewrites moved");
}

#[test]
fn higher_rank_values_survive_moves() {
    for name in ["hopf", "trefoil"] {
        let text = std::fs::read_to_string(common::corpus_dir().join(format!("{name}.pd"))).unwrap();
        let d = parse_diagram(&format!("m=3\n{text}")).unwrap();
        let v = evaluate_link(&d).unwrap();
        for r in common::rewrites(&d, 3, 7, false, 3) {
            assert_eq!(evaluate_link(&r).unwrap(), v, "{name}");
        }
    }
}

#[test]
fn mixed_colours_are_refused() {
    let d = parse_diagram("m=2; cup@1 c=0; cup@3 c=1; cap@1; cap@1").unwrap();
    assert_eq!(evaluate_link(&d).unwrap_err(), EvalError::MixedColours);
}
