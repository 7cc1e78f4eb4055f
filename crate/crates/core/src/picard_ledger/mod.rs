//! Bookkeeping for line bundles on the two-strand correspondence Z(k,l).
//!
//! Expressions are additive: det(A/B), divisor classes and the equivariant
//! shift {p} are basis symbols with polynomial coefficients in k, l, m, s, t
//! and N = min(k+l, m). An identity is checked symbolically (for all
//! parameter values) and, as an independent cross-check, at integer samples
//! where each component uses its actual quotient ranks.

mod catalogue;
mod concrete;
mod expr;
mod symbolic;

pub use catalogue::{axioms, big_l, catalogue, kernel_bundle, rho, Axiom, Context, Identity};
pub use expr::{normalize, restrict_divisors, restrict_to_component, Boundary, Divisor, LineBundleExpr, Space};
pub use symbolic::{Param, SymbolicInt};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LedgerError {
    #[error("no identity named {0}")]
    UnknownIdentity(String),
    #[error("unexpected symbol: {0}")]
    UnexpectedSymbol(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Nonzero normalized lhs − rhs, per failing case.
    pub differences: Vec<(String, LineBundleExpr)>,
}

pub fn find(name: &str) -> Result<Identity, LedgerError> {
    catalogue()
        .into_iter()
        .find(|i| i.name == name)
        .ok_or_else(|| LedgerError::UnknownIdentity(name.to_string()))
}

/// The normalized difference in each case the identity quantifies over.
pub fn differences(id: &Identity) -> Result<Vec<(String, LineBundleExpr)>, LedgerError> {
    let diff = id.lhs.clone() - id.rhs.clone();
    Ok(match id.context {
        Context::PerComponent => Boundary::ALL
            .into_iter()
            .map(|b| Ok((b.name().to_string(), restrict_to_component(&diff, b)?)))
            .collect::<Result<_, LedgerError>>()?,
        Context::Global => vec![("global".into(), normalize(&diff))],
        Context::Resolution => {
            let d = normalize(&diff);
            let v = d.abs_coefficient(Space::V);
            let mut w = d.clone();
            w.det.remove(&(Space::V, Space::L0));
            vec![("resolution".into(), normalize(&(w + v * LineBundleExpr::abs(Space::W1))))]
        }
    })
}

pub fn check(id: &Identity) -> Result<IdentityCheck, LedgerError> {
    let differences: Vec<_> = differences(id)?.into_iter().filter(|(_, d)| !d.is_zero()).collect();
    Ok(IdentityCheck {
        name: id.name,
        pass: differences.is_empty(),
        differences,
    })
}

pub fn check_identity(name: &str) -> Result<IdentityCheck, LedgerError> {
    check(&find(name)?)
}

pub fn check_all() -> Vec<IdentityCheck> {
    catalogue().iter().map(|i| check(i).expect("catalogue identities are well formed")).collect()
}

pub use concrete::check_sampled;

/// Every (k, l, m) with 1 ≤ k ≤ l ≤ m − 1 and m ≤ `max_m`.
pub fn sample_grid(max_m: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        for l in 1..m {
            for k in 1..=l {
                out.push((k, l, m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_names_are_unique() {
        let mut names: Vec<_> = catalogue().iter().map(|i| i.name).collect();
        names.sort();
        let n = names.len();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(check_identity("nope"), Err(LedgerError::UnknownIdentity(_))));
    }
}
