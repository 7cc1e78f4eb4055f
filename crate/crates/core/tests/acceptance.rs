//! One line per acceptance criterion: `criterion<TAB>n<TAB>PASS|FAIL<TAB>elapsed<TAB>limit<TAB>detail`.
//! Exits nonzero when any criterion fails.

mod common;

use colink::coloured_khovanov::{
    build_cube, component_dimensions, deformed_differential, diagram_pd, euler_characteristic, family_line_analysis,
    homology_at_point, khovanov_homology, total_dimension, PointHomology,
};
use colink::exact_algebra::{qbinom, qi, LaurentPoly, Q};
use colink::grassmann_geometry::{bundled_towers, count_points, poincare_y, tower_dimension, LatticeConfig};
use colink::picard_ledger::{catalogue, check, check_sampled, sample_grid, SymbolicInt};
use colink::skew_howe_evaluator::{evaluate_link, relation_instances, verify_relation, RelationId};
use colink::tangle_core::{parse_diagram, parse_slice_word, LinkDiagram};
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spread(r: usize) -> Vec<Q> {
    (0..r).map(|i| qi(3 * i as i64 - 1)).collect()
}

fn colour_count(d: &LinkDiagram) -> usize {
    d.components.component_colour.iter().max().map_or(0, |c| *c as usize + 1)
}

/// Same diagram with every component on colour 0.
fn monochrome(d: &LinkDiagram) -> LinkDiagram {
    let mut w = d.word.word.clone();
    w.domain.colours.iter_mut().for_each(|c| *c = 0);
    for g in &mut w.gens {
        if let Some(cup) = &mut g.cup {
            cup.colour = 0;
        }
    }
    LinkDiagram::from_word(&w).unwrap()
}

fn point(d: &LinkDiagram) -> PointHomology {
    let cube = build_cube(d).unwrap();
    homology_at_point(&cube, &deformed_differential(&cube), &spread(colour_count(d))).unwrap()
}

fn relation_suite() -> Outcome {
    let mut total = 0;
    for m in 2..=4u8 {
        for id in RelationId::ALL {
            let inst = relation_instances(m, 4, id);
            ensure!(!inst.is_empty(), "no {id} instances at m={m}");
            for i in &inst {
                let c = verify_relation(i).map_err(|e| format!("{id} m={m}: {e}"))?;
                ensure!(c.pass, "{id} m={m} differs on {:?}", c.witness);
            }
            total += inst.len();
        }
    }
    Ok(format!("{total} instances over m=2,3,4"))
}

fn circle_values() -> Outcome {
    let mut n = 0;
    for m in 2..=6i64 {
        for k in 1..m {
            let d = LinkDiagram::from_word(&parse_slice_word(&format!("m={m}; cup@1 k={k}; cap@1")).unwrap()).unwrap();
            let v = evaluate_link(&d).map_err(|e| e.to_string())?;
            ensure!(v == qbinom(m, k).unwrap(), "m={m} k={k} gave {v}");
            if (m, k) == (4, 2) {
                ensure!(v == LaurentPoly::from_ints(&[(1, 4), (1, 2), (2, 0), (1, -2), (1, -4)]), "m=4 k=2 gave {v}");
            }
            n += 1;
        }
    }
    Ok(format!("{n} circles"))
}

fn kauffman_oracle() -> Outcome {
    let corpus = common::corpus();
    for (name, text) in &corpus {
        let d = parse_diagram(text).unwrap();
        let v: BTreeMap<i64, i64> = evaluate_link(&d)
            .map_err(|e| format!("{name}: {e}"))?
            .terms()
            .map(|(e, c)| (e, c.to_integer().to_i64().unwrap()))
            .collect();
        // A^2 = -q^-1
        ensure!(v == common::kauffman::unnormalized_jones(text, -1), "{name}");
    }
    Ok(format!("{} links", corpus.len()))
}

fn euler() -> Outcome {
    let corpus = common::corpus();
    for (name, text) in &corpus {
        let d = parse_diagram(text).unwrap();
        let cube = build_cube(&d).unwrap();
        let chi = euler_characteristic(&khovanov_homology(&cube, &deformed_differential(&cube)));
        ensure!(chi == evaluate_link(&d).unwrap(), "{name}: {chi}");
    }
    Ok(format!("{} links", corpus.len()))
}

fn square_zero() -> Outcome {
    let corpus = common::corpus();
    for (name, text) in &corpus {
        let cube = build_cube(&common::distinct_coloured(text)).unwrap();
        ensure!(deformed_differential(&cube).check_square_zero().is_ok(), "{name}");
    }
    Ok(format!("{} diagrams", corpus.len()))
}

fn split() -> Outcome {
    let mut hopf = None;
    for (name, text) in common::corpus() {
        let d = common::distinct_coloured(&text);
        let cube = build_cube(&d).unwrap();
        let dd = deformed_differential(&cube);
        let prod: usize = component_dimensions(&diagram_pd(&d).unwrap()).unwrap().iter().product();
        let r = colour_count(&d);
        for colours in [spread(r), (0..r).map(|i| Q::new((i * i).into(), 2.into())).collect()] {
            let total = homology_at_point(&cube, &dd, &colours).unwrap().total;
            ensure!(total == prod, "{name}: {total} != {prod}");
        }
        if name == "hopf" {
            hopf = Some(homology_at_point(&cube, &dd, &[qi(0), qi(1)]).unwrap().total);
        }
    }
    ensure!(hopf == Some(4), "hopf at (0,1) gave {hopf:?}");
    Ok("hopf (0,1) -> 4".into())
}

fn spectral_sequence() -> Outcome {
    let mut pages = BTreeMap::new();
    for (name, text) in common::corpus() {
        let d = common::distinct_coloured(&text);
        let cube = build_cube(&d).unwrap();
        let dd = deformed_differential(&cube);
        let dirs: Vec<Q> = (0..colour_count(&d)).map(|i| qi(i as i64)).collect();
        let rep = family_line_analysis(&cube, &dd, &dirs).map_err(|e| format!("{name}: {e}"))?;
        let prod: usize = component_dimensions(&diagram_pd(&d).unwrap()).unwrap().iter().product();
        let kh = total_dimension(&khovanov_homology(&cube, &dd));
        ensure!(rep.betti + 2 * rep.torsion.len() == rep.e1_total, "{name}: rank count");
        ensure!(rep.e1_total == kh, "{name}: E1 is not Kh");
        ensure!(rep.betti == prod, "{name}: betti {} != {prod}", rep.betti);
        ensure!(prod <= kh, "{name}: {prod} > {kh}");
        *pages.entry(rep.collapse_page).or_insert(0) += 1;
    }
    Ok(format!("collapse pages {pages:?}"))
}

const REWRITES: usize = 20;

fn invariance() -> Outcome {
    let mut pairs = 0;
    for (i, (name, text)) in common::corpus().into_iter().enumerate() {
        let d = common::distinct_coloured(&text);
        let base = point(&d);
        let poly = evaluate_link(&monochrome(&d)).unwrap();
        for r in common::rewrites(&d, REWRITES, 1000 + i as u64, false, 2) {
            ensure!(point(&r) == base, "{name}: homology changed under isotopy");
            ensure!(evaluate_link(&monochrome(&r)).unwrap() == poly, "{name}: polynomial changed");
            pairs += 1;
        }
        // full twists between distinct colours change the link, so only the
        // deformed homology is compared
        for r in common::rewrites(&d, REWRITES, 2000 + i as u64, true, 2) {
            ensure!(point(&r) == base, "{name}: homology changed under colour passing");
            pairs += 1;
        }
    }
    Ok(format!("{pairs} rewrite pairs"))
}

fn ledger() -> Outcome {
    let ids = catalogue();
    let grid = sample_grid(6);
    for id in &ids {
        let c = check(id).map_err(|e| e.to_string())?;
        ensure!(c.pass, "{} symbolic: {:?}", id.name, c.differences);
        for &(k, l, m) in &grid {
            let bad = check_sampled(id, k, l, m).map_err(|e| e.to_string())?;
            ensure!(bad.is_none(), "{} at k={k} l={l} m={m}: {bad:?}", id.name);
        }
    }
    Ok(format!("{} identities, {} samples", ids.len(), grid.len()))
}

fn geometry() -> Outcome {
    let towers = bundled_towers();
    let dim = |n: &str| tower_dimension(towers.iter().find(|t| t.name == n).unwrap());
    let y: SymbolicInt = "k*(m-k) + l*(m-l)".parse().unwrap();
    ensure!(dim("y_two_step") == y, "Y tower gives {}", dim("y_two_step"));
    ensure!(dim("z_resolution") == y, "resolution tower gives {}", dim("z_resolution"));
    for (n, c) in [("complement_first", 4), ("complement_second", 3), ("complement_third", 4), ("complement_second_z", 4)] {
        let got = dim("z_resolution") - dim(n);
        ensure!(got == SymbolicInt::int(c), "{n} has codimension {got}");
    }
    let mut configs = vec![(2, vec![1]), (2, vec![1, 1]), (2, vec![1, 1, 1])];
    for a in 1..3 {
        configs.push((3, vec![a]));
        for b in 1..3 {
            configs.push((3, vec![a, b]));
        }
    }
    for (m, labels) in &configs {
        let poly = poincare_y(*m, labels).unwrap();
        for p in [2u32, 3, 5] {
            let n = count_points(&LatticeConfig::new(p, *m, labels)).map_err(|e| e.to_string())?;
            ensure!(qi(n as i64) == poly.eval(&qi(p as i64)), "m={m} {labels:?} p={p}: {n}");
        }
    }
    Ok(format!("{} towers, {} point counts", towers.len(), 3 * configs.len()))
}

fn main() {
    let criteria: [(u32, Option<u64>, fn() -> Outcome); 10] = [
        (1, Some(300), relation_suite),
        (2, None, circle_values),
        (3, None, kauffman_oracle),
        (4, None, euler),
        (5, Some(120), square_zero),
        (6, None, split),
        (7, None, spectral_sequence),
        (8, None, invariance),
        (9, Some(60), ledger),
        (10, Some(600), geometry),
    ];
    let mut failed = 0;
    for (n, limit, f) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let out = match (out, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("over the {s}s limit")),
            (o, _) => o,
        };
        let limit = limit.map_or("-".to_string(), |s| format!("{s}s"));
        let (status, detail) = match out {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion\t{n}\t{status}\t{:.2}s\tlimit {limit}\t{detail}", elapsed.as_secs_f64());
    }
    println!("acceptance\t{}/10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
