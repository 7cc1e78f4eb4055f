//! Point counts and dimension bookkeeping for the varieties Y(k) and the
//! Grassmannian towers resolving the components of Z(k,l).

mod fields;
mod tower;

pub use fields::{count_points, LatticeConfig, DEFAULT_BUDGET};
pub use tower::{bundled_towers, parse_tower, tower_dimension, Step, TowerSpec};

use crate::exact_algebra::{qi, Ring, UPoly, Q};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("labels must lie in 1..m-1, got {0:?} for m={1}")]
    BadLabels(Vec<usize>, usize),
    #[error("enumeration needs about {estimate} subspace tests, budget is {budget}")]
    Budget { estimate: u128, budget: u128 },
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("tower file line {line}: {msg}")]
    Tower { line: usize, msg: String },
}

/// The counting Gaussian binomial, whose value at a prime power p is the
/// number of k-dimensional subspaces of F_p^n.
pub fn gaussian_binomial(n: usize, k: usize) -> UPoly {
    if k > n {
        return UPoly::zero();
    }
    // row[j] = [i choose j]_q
    let mut row = vec![UPoly::one()];
    for i in 1..=n {
        let mut next = vec![UPoly::one(); i + 1];
        for j in 1..i {
            next[j] = row[j - 1].add(&UPoly::monomial(qi(1), j).mul(&row[j]));
        }
        row = next;
    }
    row[k].clone()
}

/// Π_i [m choose k_i]_q.
pub fn poincare_y(m: usize, labels: &[usize]) -> Result<UPoly, GeometryError> {
    if labels.iter().any(|&k| k == 0 || k >= m) {
        return Err(GeometryError::BadLabels(labels.to_vec(), m));
    }
    Ok(labels.iter().fold(UPoly::one(), |acc, &k| acc.mul(&gaussian_binomial(m, k))))
}

pub fn dimension_y(m: usize, labels: &[usize]) -> usize {
    labels.iter().map(|k| k * (m - k)).sum()
}

/// The polynomial of least degree through the points.
pub fn interpolate(points: &[(i64, Q)]) -> UPoly {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let lin = UPoly::from_coeffs(vec![qi(-xj), qi(1)]);
                basis = basis.mul(&lin).scale(&(qi(1) / qi(xi - xj)));
            }
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Renders a polynomial in q, highest term first.
pub fn fmt_q(p: &UPoly) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = match e {
            0 => format!("{c}"),
            1 if *c == qi(1) => "q".into(),
            1 => format!("{c}*q"),
            _ if *c == qi(1) => format!("q^{e}"),
            _ => format!("{c}*q^{e}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_poincare_polynomials() {
        assert_eq!(poincare_y(2, &[1]).unwrap(), UPoly::from_ints(&[1, 1]));
        assert_eq!(poincare_y(2, &[1, 1]).unwrap(), UPoly::from_ints(&[1, 2, 1]));
        assert_eq!(poincare_y(3, &[1, 2]).unwrap(), UPoly::from_ints(&[1, 2, 3, 2, 1]));
        assert_eq!(fmt_q(&poincare_y(2, &[1]).unwrap()), "q + 1");
        assert!(poincare_y(3, &[3]).is_err());
    }

    #[test]
    fn degree_is_dimension() {
        for m in 2..6 {
            for k in 1..m {
                for l in 1..m {
                    let p = poincare_y(m, &[k, l]).unwrap();
                    assert_eq!(p.degree(), Some(dimension_y(m, &[k, l])));
                    assert_eq!(p.lead(), qi(1));
                }
            }
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let p = UPoly::from_ints(&[1, 2, 1]);
        let pts: Vec<_> = [2, 3, 5].iter().map(|&x| (x, p.eval(&qi(x)))).collect();
        assert_eq!(interpolate(&pts), p);
    }
}
