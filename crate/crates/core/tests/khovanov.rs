mod common;

use colink::coloured_khovanov::*;
use colink::exact_algebra::{qi, LaurentPoly, Q};
use colink::skew_howe_evaluator::evaluate_link;
use colink::tangle_core::{parse_diagram, parse_pd, LinkDiagram, PdCode, PdOptions};
use std::collections::BTreeMap;

struct Case {
    name: String,
    pd: PdCode,
    cube: CubeComplex,
    dd: DeformedDifferential,
}

fn corpus() -> Vec<Case> {
    common::corpus()
        .into_iter()
        .map(|(name, text)| {
            let pd = parse_pd(&text, &PdOptions { distinct_colours: true }).unwrap();
            let cube = CubeComplex::from_pd(&pd).unwrap();
            let dd = deformed_differential(&cube);
            Case { name, pd, cube, dd }
        })
        .collect()
}

fn spread(n: usize) -> Vec<Q> {
    (0..n as i64).map(|i| qi(3 * i - 1)).collect()
}

#[test]
fn square_zero_over_colour_polynomials() {
    for c in corpus() {
        assert_eq!(c.dd.check_square_zero(), Ok(()), "{}", c.name);
    }
}

#[test]
fn euler_characteristic_is_the_evaluator() {
    for (name, text) in common::corpus() {
        let d = parse_diagram(&text).unwrap();
        let cube = build_cube(&d).unwrap();
        let dd = deformed_differential(&cube);
        assert_eq!(
            euler_characteristic(&khovanov_homology(&cube, &dd)),
            evaluate_link(&d).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn trefoil_bigraded() {
    let c = corpus().into_iter().find(|c| c.name == "trefoil").unwrap();
    let kh = khovanov_homology(&c.cube, &c.dd);
    let expect: BTreeMap<(i64, i64), usize> = [((-3, -9), 1), ((-2, -5), 1), ((0, -3), 1), ((0, -1), 1)].into();
    assert_eq!(kh, expect);
}

#[test]
fn split_property_and_equal_colours() {
    for c in corpus() {
        let r = c.dd.colours.len();
        let kh = total_dimension(&khovanov_homology(&c.cube, &c.dd));
        let prod: usize = component_dimensions(&c.pd).unwrap().iter().product();
        let p = homology_at_point(&c.cube, &c.dd, &spread(r)).unwrap();
        assert_eq!(p.total, prod, "{}", c.name);
        assert!(prod <= kh, "{}", c.name);
        let equal = homology_at_point(&c.cube, &c.dd, &vec![qi(7); r]).unwrap();
        assert_eq!(equal.total, kh, "{}", c.name);
        // reversing every weight is a global sign
        let neg: Vec<Q> = spread(r).iter().map(|x| -x.clone()).collect();
        assert_eq!(homology_at_point(&c.cube, &c.dd, &neg).unwrap(), p, "{}", c.name);
    }
}

#[test]
fn line_analysis_invariants() {
    for c in corpus() {
        let r = c.dd.colours.len();
        let rep = family_line_analysis(&c.cube, &c.dd, &spread(r)).unwrap();
        let prod: usize = component_dimensions(&c.pd).unwrap().iter().product();
        assert_eq!(rep.betti + 2 * rep.torsion.len(), rep.e1_total, "{}", c.name);
        assert_eq!(rep.betti, prod, "{}", c.name);
        assert_eq!(rep.collapse_page == 1, rep.torsion.is_empty());
    }
}

#[test]
fn frozen_line_reports() {
    let cases = corpus();
    let get = |n: &str| cases.iter().find(|c| c.name == n).unwrap();
    let hopf = get("hopf");
    let rep = family_line_analysis(&hopf.cube, &hopf.dd, &[qi(0), qi(1)]).unwrap();
    assert_eq!((rep.e1_total, rep.betti, rep.torsion.len()), (4, 4, 0));
    let unlink = get("unlink2");
    let rep = family_line_analysis(&unlink.cube, &unlink.dd, &[qi(0), qi(1)]).unwrap();
    assert_eq!((rep.betti, rep.collapse_page), (4, 1));
    let wh = get("whitehead");
    let rep = family_line_analysis(&wh.cube, &wh.dd, &[qi(0), qi(1)]).unwrap();
    assert_eq!(rep.betti, 4);
    assert_eq!(rep.e1_total, 10);
    assert_eq!(rep.torsion, vec![(0, -4, 1), (0, -2, 1), (1, -8, 1)]);
    assert_eq!(rep.collapse_page, 2);
    let p = homology_at_point(&hopf.cube, &hopf.dd, &[qi(0), qi(1)]).unwrap();
    assert_eq!(p.total, 4);
}

#[test]
fn hopf_with_equal_colours_is_undeformed() {
    let hopf = corpus().into_iter().find(|c| c.name == "hopf").unwrap();
    let d = hopf.dd.at_point(&[qi(2), qi(2)]).unwrap();
    let und = hopf.dd.matrix(|_| qi(0));
    assert_eq!(d, und);
}

fn point_of(d: &LinkDiagram) -> (PointHomology, LaurentPoly) {
    let cube = build_cube(d).unwrap();
    let dd = deformed_differential(&cube);
    assert_eq!(dd.check_square_zero(), Ok(()));
    let r = dd.colours.iter().max().map_or(0, |m| *m as usize + 1);
    (homology_at_point(&cube, &dd, &spread(r)).unwrap(), euler_characteristic(&khovanov_homology(&cube, &dd)))
}

#[test]
fn invariant_under_moves() {
    for (i, (name, text)) in common::corpus().into_iter().enumerate() {
        let d = common::distinct_coloured(&text);
        if d.word.word.crossings() > 5 {
            continue;
        }
        let base = point_of(&d);
        for r in common::rewrites(&d, 4, 100 + i as u64, false, 2) {
            assert_eq!(point_of(&r), base, "{name}");
        }
    }
}

// a full twist between colours changes the link but not the deformed homology
#[test]
fn point_homology_survives_colour_passing() {
    let mut changed = 0;
    for (i, (name, text)) in common::corpus().into_iter().enumerate() {
        let d = common::distinct_coloured(&text);
        if d.word.word.crossings() > 5 {
            continue;
        }
        let base = point_of(&d).0;
        for r in common::rewrites(&d, 4, 200 + i as u64, true, 2) {
            let p = point_of(&r);
            assert_eq!(p.0, base, "{name}");
            changed += (p.1 != point_of(&d).1) as usize;
        }
    }
    assert!(changed > 0, "no rewrite changed the link type");
}
