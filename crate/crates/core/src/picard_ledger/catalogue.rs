use super::expr::{d_minus_bundle, d_plus_bundle, Divisor, LineBundleExpr as E, Space::*};
use super::symbolic::{Param::*, SymbolicInt};

/// Where an identity lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    /// On the whole correspondence, coefficientwise after normalization.
    Global,
    /// On the resolution Z'_s, where the intermediate space V is W1.
    Resolution,
    /// On every component Z_t, checked after restriction.
    PerComponent,
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub context: Context,
    pub lhs: E,
    pub rhs: E,
    pub axioms: &'static [&'static str],
}

/// An input that is used, not verified.
#[derive(Clone, Debug)]
pub struct Axiom {
    pub name: &'static str,
    pub statement: &'static str,
    pub expr: E,
}

fn v(p: super::symbolic::Param) -> SymbolicInt {
    SymbolicInt::var(p)
}

fn c(n: i64) -> SymbolicInt {
    SymbolicInt::int(n)
}

/// det(L2/L1)^∨ ⊗ det(L1'/L0).
pub fn big_l() -> E {
    -E::det(L2, L1) + E::det(L1p, L0)
}

/// ρ = det(L2/L1)^k ⊗ det(L2/L1')^{-l}.
pub fn rho() -> E {
    v(K) * E::det(L2, L1) - v(L) * E::det(L2, L1p)
}

/// ρ with the primed top space, which is L2 again for two strands.
pub fn rho_alt() -> E {
    v(K) * E::det(L2, L1) - v(L) * E::det(L2, L1p)
}

/// ρ' = det(L1/L0)^l ⊗ det(L1'/L0)^{-k}.
pub fn rho_prime() -> E {
    v(L) * E::abs(L1) - v(K) * E::abs(L1p)
}

/// The canonical bundle of Y(k,l).
pub fn omega_y() -> E {
    v(M) * E::abs(L2) + E::shift(c(-2) * v(M) * (v(K) + v(L)) - c(2) * v(K) * v(L))
}

/// The canonical bundle of the base of the fibration forgetting L1, L1'.
pub fn base_canonical(s: SymbolicInt) -> E {
    let r = v(L) - v(K) + c(2) * s.clone();
    v(M) * E::abs(L2) - r.clone() * E::det(L2, W2) + r * E::det(W1, L0)
        + E::shift(c(-2) * v(M) * (v(K) + v(L)) - c(2) * (v(K) - s).pow(2))
}

/// Relative canonical bundle of G(s, W2/W1) × G(l−k+s, W2/W1).
pub fn grassmannian_relative(s: SymbolicInt) -> E {
    let r = v(L) - v(K) + s.clone();
    r.clone() * E::det(L1, W1) - s.clone() * E::det(W2, L1) + s * E::det(L1p, W1) - r * E::det(W2, L1p)
}

/// ω of the component Z^o_s.
pub fn omega_component(s: SymbolicInt) -> E {
    (v(L) - v(K) + c(2) * s.clone()) * big_l()
        + v(M) * E::abs(L2)
        + E::shift(c(-2) * v(M) * (v(K) + v(L)) - c(2) * (v(K) - s).pow(2))
}

/// ω of the deformed correspondence.
pub fn omega_deformed() -> E {
    E::family(v(S).pow(2))
        + (v(L) - v(K)) * big_l()
        + v(M) * E::abs(L2)
        + E::shift(c(-2) * v(K).pow(2) - c(2) * v(M) * (v(K) + v(L)) - c(2))
}

/// The deformed crossing kernel bundle.
pub fn kernel_bundle() -> E {
    E::family((v(S) + c(1)).choose2()) + rho() + E::shift(v(K) * (v(L) - v(K) - c(1)))
}

/// The bundle of the left adjoint.
pub fn adjoint_bundle() -> E {
    E::family(v(S).choose2()) + rho_prime() + E::shift(v(K) * (v(L) - v(K) + c(1)))
}

/// The twist relating the kernel to its adjoint.
fn adjoint_twist() -> E {
    (v(K) + v(L) - c(1)) * E::abs(L1) - (v(K) + v(L) + c(1)) * E::abs(L1p) + (v(L) - v(K) + c(1)) * E::abs(L2)
}

fn swap_twist() -> E {
    (v(K) + v(L)) * E::abs(L1) - (v(K) + v(L)) * E::abs(L1p) + (v(L) - v(K)) * E::abs(L2)
}

pub fn axioms() -> Vec<Axiom> {
    let s = v(S);
    vec![
        Axiom {
            name: "omega_Y",
            statement: "ω_Y(k,l) ≅ det(L2/L0)^m {-2m(k+l)-2kl}",
            expr: omega_y(),
        },
        Axiom {
            name: "base_canonical",
            statement: "canonical bundle of the base {L0 ⊂ W1 ⊂ W2 ⊂ L2}",
            expr: base_canonical(s.clone()),
        },
        Axiom {
            name: "grassmannian_relative",
            statement: "relative canonical bundle of the two Grassmannian fibres",
            expr: grassmannian_relative(s.clone()),
        },
        Axiom {
            name: "fibre",
            statement: "O([fibre]) ≅ O{2}",
            expr: E::divisor(Divisor::Fibre),
        },
        Axiom {
            name: "d_plus",
            statement: "O([D_s+]) ≅ det(L2/W2)^∨ ⊗ det(W1/L0) {2(k-s)}",
            expr: d_plus_bundle(&s),
        },
        Axiom {
            name: "d_minus",
            statement: "O([D_s-]) ≅ det(L1/W1)^∨ ⊗ det(W2/L1')",
            expr: d_minus_bundle(),
        },
        Axiom {
            name: "rho",
            statement: "ρ = det(L2/L1)^k ⊗ det(L2/L1')^-l",
            expr: rho(),
        },
        Axiom {
            name: "rho_alt",
            statement: "ρ with det(L2'/L1') in place of det(L2/L1'), L2' = L2",
            expr: rho_alt(),
        },
    ]
}

pub fn catalogue() -> Vec<Identity> {
    use Context::*;
    let (k, l, m, s, t) = (v(K), v(L), v(M), v(S), v(T));
    vec![
        Identity {
            name: "divisor_chain",
            statement: "det(L2/W2)^∨ det(W1/L0) det(L1/W1) det(W2/L1')^∨ = det(L2/L1)^∨ det(L1'/L0)",
            context: Global,
            lhs: -E::det(L2, W2) + E::det(W1, L0) + E::det(L1, W1) - E::det(W2, L1p),
            rhs: big_l(),
            axioms: &[],
        },
        Identity {
            name: "divisor_difference",
            statement: "O([D_t+] - [D_t-]) = det(L2/L1)^∨ det(L1'/L0) {2(k-t)}",
            context: PerComponent,
            lhs: E::divisor(Divisor::DPlus) - E::divisor(Divisor::DMinus),
            rhs: big_l() + E::shift(c(2) * (k.clone() - t.clone())),
            axioms: &["d_plus", "d_minus"],
        },
        Identity {
            name: "sigma_family",
            statement: "det(L2/L1)^∨ det(L1'/L0) = O(Σ s[Z_s]) {-2k}",
            context: PerComponent,
            lhs: big_l(),
            rhs: E::family(s.clone()) + E::shift(c(-2) * k.clone()),
            axioms: &["fibre", "d_plus", "d_minus"],
        },
        Identity {
            name: "kernel_shift",
            statement: "s(k-s) + k(l-k+s) + s = kl - (k-s)^2 + s",
            context: Global,
            lhs: E::shift(s.clone() * (k.clone() - s.clone()) + k.clone() * (l.clone() - k.clone() + s.clone()) + s.clone()),
            rhs: E::shift(k.clone() * l.clone() - (k.clone() - s.clone()).pow(2) + s.clone()),
            axioms: &[],
        },
        Identity {
            name: "kernel_bundle",
            statement: "E^(s) and F^(l-k+s) twists compose to det(L2/L1)^-s det(L1'/L0)^s ρ",
            context: Resolution,
            lhs: s.clone() * E::det(V, L0) + (s.clone() - k.clone()) * E::det(L1, V)
                + (k.clone() - l.clone() - s.clone()) * E::det(L2, L1p)
                + k.clone() * E::det(L1p, V),
            rhs: -(s.clone() * E::det(L2, L1)) + s.clone() * E::det(L1p, L0) + rho(),
            axioms: &["rho"],
        },
        Identity {
            name: "equivalence_shift",
            statement: "kl - (k-s)^2 + s - k = kl - (k-s)(k-s+1)",
            context: Global,
            lhs: E::shift(k.clone() * l.clone() - (k.clone() - s.clone()).pow(2) + s.clone() - k.clone()),
            rhs: E::shift(k.clone() * l.clone() - (k.clone() - s.clone()) * (k.clone() - s.clone() + 1)),
            axioms: &[],
        },
        Identity {
            name: "kernel_restriction",
            statement: "the binom(s+1,2) kernel bundle restricts to O([D_t+]) det(L2/L1)^-t det(L1'/L0)^t ρ {kl-(k-t)(k-t+1)}",
            context: PerComponent,
            lhs: kernel_bundle(),
            rhs: E::divisor(Divisor::DPlus) - t.clone() * E::det(L2, L1) + t.clone() * E::det(L1p, L0)
                + rho()
                + E::shift(k.clone() * l.clone() - (k.clone() - t.clone()) * (k.clone() - t.clone() + 1)),
            axioms: &["fibre", "d_plus", "d_minus", "rho"],
        },
        Identity {
            name: "dualizing_relative",
            statement: "ω_p = (det(L2/L1)^∨ det(L1'))^(l-k+2s) (det(L2/W2)^∨ det(W1))^(-l+k-2s)",
            context: Global,
            lhs: grassmannian_relative(s.clone()),
            rhs: (l.clone() - k.clone() + c(2) * s.clone()) * (big_l() + E::det(L2, W2) - E::det(W1, L0)),
            axioms: &["grassmannian_relative"],
        },
        Identity {
            name: "dualizing_assembly",
            statement: "ω_p ⊗ ω_base = (det(L2/L1)^∨ det(L1'))^(l-k+2s) det(L2/L0)^m {-2m(k+l)-2(k-s)^2}",
            context: Global,
            lhs: grassmannian_relative(s.clone()) + base_canonical(s.clone()),
            rhs: omega_component(s.clone()),
            axioms: &["grassmannian_relative", "base_canonical"],
        },
        Identity {
            name: "dualizing_restriction",
            statement: "ω_deformed ⊗ O([fibre]) restricts to ω_{Z_t}([D_t-] + [D_t+])",
            context: PerComponent,
            lhs: omega_deformed() + E::divisor(Divisor::Fibre),
            rhs: omega_component(t.clone()) + E::divisor(Divisor::DMinus) + E::divisor(Divisor::DPlus),
            axioms: &["fibre", "d_plus", "d_minus", "grassmannian_relative", "base_canonical"],
        },
        Identity {
            name: "dualizing_exponents",
            statement: "a + b = -2m(k+l) - k(k+l-1) - 2 for a = -2k^2-2m(k+l)-2, b = -k(l-k-1)",
            context: Global,
            lhs: E::shift(c(-2) * k.clone().pow(2) - c(2) * m.clone() * (k.clone() + l.clone()) - c(2))
                + E::shift(-(k.clone() * (l.clone() - k.clone() - c(1)))),
            rhs: E::shift(c(-2) * m.clone() * (k.clone() + l.clone()) - k.clone() * (k.clone() + l.clone() - c(1)) - c(2)),
            axioms: &[],
        },
        Identity {
            name: "deformed_canonical",
            statement: "ω_{Y_C}|_Y = ω_Y(-[Y]) = det(L2/L0)^m {-2m(k+l)-2kl-2}",
            context: Global,
            lhs: omega_y() - E::divisor(Divisor::Fibre),
            rhs: m.clone() * E::abs(L2)
                + E::shift(c(-2) * m.clone() * (k.clone() + l.clone()) - c(2) * k.clone() * l.clone() - c(2)),
            axioms: &["omega_Y", "fibre"],
        },
        Identity {
            name: "inverse_chain",
            statement: "ω_deformed ⊗ (kernel bundle)^∨ ⊗ ω_{Y_C}^∨ = O(Σ binom(s,2)[Z_s]) det(L1/L0)^l det(L1'/L0)^-k {k(l-k+1)}",
            context: Global,
            lhs: omega_deformed() - kernel_bundle() - (omega_y() - E::divisor(Divisor::Fibre)),
            rhs: adjoint_bundle(),
            axioms: &["omega_Y", "fibre", "rho"],
        },
        Identity {
            name: "kernel_via_sigma",
            statement: "kernel bundle = O(Σ binom(s,2)[Z_s]) det(L2/L1)^∨ det(L1'/L0) ρ {k(l-k-1)+2k}",
            context: PerComponent,
            lhs: kernel_bundle(),
            rhs: E::family(s.clone().choose2())
                + big_l()
                + rho()
                + E::shift(k.clone() * (l.clone() - k.clone() - c(1)) + c(2) * k.clone()),
            axioms: &["fibre", "d_plus", "d_minus", "rho"],
        },
        Identity {
            name: "adjoint_bundle",
            statement: "adjoint bundle = kernel bundle ⊗ det(L1/L0)^(k+l-1) det(L1'/L0)^(-l-k-1) det(L2/L0)^(l-k+1)",
            context: PerComponent,
            lhs: adjoint_bundle(),
            rhs: kernel_bundle() + adjoint_twist(),
            axioms: &["fibre", "d_plus", "d_minus", "rho"],
        },
        Identity {
            name: "swap_kernel",
            statement: "E^(l-k+s) and F^(s) twists compose to det(L2/L1)^-s det(L1'/L0)^s ρ' {kl-(k-s)^2+s}",
            context: Resolution,
            lhs: (l.clone() - k.clone() + s.clone()) * E::det(V, L0)
                + (s.clone() - k.clone()) * E::det(L1p, V)
                - s.clone() * E::det(L2, L1)
                + l.clone() * E::det(L1, V)
                + E::shift((k.clone() - s.clone()) * (l.clone() - k.clone() + s.clone()) + s.clone() * l.clone() + s.clone()),
            rhs: -(s.clone() * E::det(L2, L1)) + s.clone() * E::det(L1p, L0) + rho_prime()
                + E::shift(k.clone() * l.clone() - (k.clone() - s.clone()).pow(2) + s.clone()),
            axioms: &[],
        },
        Identity {
            name: "swap_line_bundle",
            statement: "ρ^-1 ρ' = det(L1/L0)^(k+l) det(L1'/L0)^(-k-l) det(L2/L0)^(l-k)",
            context: Global,
            lhs: rho_prime() - rho(),
            rhs: swap_twist(),
            axioms: &["rho"],
        },
        Identity {
            name: "swap_assembly",
            statement: "the swap twist over the adjoint twist is det(L1/L0) det(L1'/L0) det(L2/L0)^-1",
            context: Global,
            lhs: swap_twist() - adjoint_twist(),
            rhs: E::abs(L1) + E::abs(L1p) - E::abs(L2),
            axioms: &[],
        },
        Identity {
            name: "rho_spellings",
            statement: "the two spellings of ρ agree for two strands",
            context: Global,
            lhs: rho(),
            rhs: rho_alt(),
            axioms: &["rho", "rho_alt"],
        },
    ]
}
