use colink::exact_algebra::{qi, Q};
use colink::grassmann_geometry::*;
use colink::picard_ledger::{Param, SymbolicInt};
use std::time::Instant;

fn tower(name: &str) -> TowerSpec {
    bundled_towers().into_iter().find(|t| t.name == name).unwrap()
}

#[test]
fn towers_meet_their_expected_dimensions() {
    let towers = bundled_towers();
    assert_eq!(towers.len(), 7);
    for t in &towers {
        assert_eq!(Some(tower_dimension(t)), t.expect, "{}", t.name);
    }
}

#[test]
fn complement_codimensions() {
    let full = tower_dimension(&tower("z_resolution"));
    let codim = |n: &str| full.clone() - tower_dimension(&tower(n));
    assert_eq!(codim("complement_first"), SymbolicInt::int(4));
    assert_eq!(codim("complement_second"), SymbolicInt::int(3));
    assert_eq!(codim("complement_third"), SymbolicInt::int(4));
    assert_eq!(codim("complement_second_z"), SymbolicInt::int(4));
}

#[test]
fn resolution_steps_are_grassmannians() {
    let t = tower("z_resolution");
    for m in 2..=6i64 {
        for l in 1..m {
            for k in 1..=l {
                for s in 0..=(k + l).min(m) - l {
                    let vals = [(Param::K, k), (Param::L, l), (Param::M, m), (Param::S, s)];
                    assert!(t.admissible_at(&vals), "k={k} l={l} m={m} s={s}");
                }
            }
        }
    }
}

fn configs() -> Vec<(usize, Vec<usize>)> {
    let mut out = vec![(2, vec![1]), (2, vec![1, 1]), (2, vec![1, 1, 1])];
    for a in 1..3 {
        out.push((3, vec![a]));
        for b in 1..3 {
            out.push((3, vec![a, b]));
        }
    }
    out
}

#[test]
fn point_counts_match_poincare_polynomials() {
    let start = Instant::now();
    for (m, labels) in configs() {
        let poly = poincare_y(m, &labels).unwrap();
        let mut pts: Vec<(i64, Q)> = Vec::new();
        for p in [2u32, 3, 5] {
            let n = count_points(&LatticeConfig::new(p, m, &labels)).unwrap();
            assert_eq!(qi(n as i64), poly.eval(&qi(p as i64)), "m={m} {labels:?} p={p}");
            pts.push((p as i64, qi(n as i64)));
        }
        if dimension_y(m, &labels) <= 2 {
            assert_eq!(interpolate(&pts), poly, "m={m} {labels:?}");
        }
    }
    assert!(start.elapsed().as_secs() < 600);
}

#[test]
fn cubic_counts_need_a_fourth_prime() {
    let labels = [1, 1, 1];
    let pts: Vec<(i64, Q)> = [2u32, 3, 5, 7]
        .iter()
        .map(|&p| (p as i64, qi(count_points(&LatticeConfig::new(p, 2, &labels)).unwrap() as i64)))
        .collect();
    let fit = interpolate(&pts);
    assert_eq!(fit, poincare_y(2, &labels).unwrap());
    assert_eq!(fit.degree(), Some(3));
}
