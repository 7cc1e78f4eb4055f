use super::symbolic::{Param, SymbolicInt};
use super::LedgerError;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The spaces of the two-strand correspondence, together with the formal
/// intermediate space `V` of the convolution varieties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    L0,
    W1,
    V,
    L1,
    L1p,
    W2,
    L2,
}

impl Space {
    pub const ALL: [Space; 7] = [Space::L0, Space::W1, Space::V, Space::L1, Space::L1p, Space::W2, Space::L2];

    pub fn name(self) -> &'static str {
        match self {
            Space::L0 => "L0",
            Space::W1 => "W1",
            Space::V => "V",
            Space::L1 => "L1",
            Space::L1p => "L1'",
            Space::W2 => "W2",
            Space::L2 => "L2",
        }
    }

    pub fn from_name(s: &str) -> Option<Space> {
        Space::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Whether `self` is contained in `o`.
    pub fn within(self, o: Space) -> bool {
        use Space::*;
        self == o
            || match self {
                L0 => true,
                W1 | V => matches!(o, L1 | L1p | W2 | L2),
                L1 | L1p => matches!(o, W2 | L2),
                W2 => o == L2,
                L2 => false,
            }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Divisor {
    /// The family Σ_s c(s)·[Z_s]; its coefficient is a polynomial in s.
    Zs,
    /// The single component [Z_{t+δ}].
    Zt(i8),
    DPlus,
    DMinus,
    /// The central fibre, [Y(k,l)] or [Z^o(k,l)].
    Fibre,
}

impl Divisor {
    pub fn name(self) -> String {
        match self {
            Divisor::Zs => "[Z_s]".into(),
            Divisor::Zt(0) => "[Z_t]".into(),
            Divisor::Zt(d) => format!("[Z_{{t{d:+}}}]"),
            Divisor::DPlus => "[D_t+]".into(),
            Divisor::DMinus => "[D_t-]".into(),
            Divisor::Fibre => "[fibre]".into(),
        }
    }
}

/// A formal sum of determinant symbols det(A/B), divisors and a grading
/// shift {p}, written additively.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LineBundleExpr {
    pub det: BTreeMap<(Space, Space), SymbolicInt>,
    pub divisors: BTreeMap<Divisor, SymbolicInt>,
    pub grading: SymbolicInt,
}

fn bump<K: Ord + Copy>(map: &mut BTreeMap<K, SymbolicInt>, key: K, c: &SymbolicInt) {
    let slot = map.entry(key).or_default();
    *slot = &*slot + c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl LineBundleExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// det(a/b). Panics unless `b` is contained in `a`.
    pub fn det(a: Space, b: Space) -> Self {
        assert!(b.within(a), "det({}/{}) is not a quotient", a.name(), b.name());
        let mut e = Self::zero();
        if a != b {
            e.det.insert((a, b), SymbolicInt::int(1));
        }
        e
    }

    /// det(a/L0).
    pub fn abs(a: Space) -> Self {
        Self::det(a, Space::L0)
    }

    pub fn divisor(d: Divisor) -> Self {
        let mut e = Self::zero();
        e.divisors.insert(d, SymbolicInt::int(1));
        e
    }

    /// Σ_s f(s)·[Z_s].
    pub fn family(f: SymbolicInt) -> Self {
        let mut e = Self::zero();
        bump(&mut e.divisors, Divisor::Zs, &f);
        e
    }

    pub fn shift(p: impl Into<SymbolicInt>) -> Self {
        Self {
            grading: p.into(),
            ..Self::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.det.is_empty() && self.divisors.is_empty() && self.grading.is_zero()
    }

    pub fn has_divisors(&self) -> bool {
        !self.divisors.is_empty()
    }

    pub fn coefficient(&self, d: Divisor) -> SymbolicInt {
        self.divisors.get(&d).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &SymbolicInt) -> Self {
        let mut out = Self::zero();
        for (q, x) in &self.det {
            bump(&mut out.det, *q, &(x * c));
        }
        for (d, x) in &self.divisors {
            bump(&mut out.divisors, *d, &(x * c));
        }
        out.grading = &self.grading * c;
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&SymbolicInt) -> SymbolicInt) -> Self {
        let mut out = Self::zero();
        for (q, x) in &self.det {
            bump(&mut out.det, *q, &f(x));
        }
        for (d, x) in &self.divisors {
            bump(&mut out.divisors, *d, &f(x));
        }
        out.grading = f(&self.grading);
        out
    }

    pub fn subst(&self, p: Param, v: &SymbolicInt) -> Self {
        self.map_coefficients(|c| c.subst(p, v))
    }

    /// The coefficient of det(x/L0) in normal form.
    pub fn abs_coefficient(&self, x: Space) -> SymbolicInt {
        self.det.get(&(x, Space::L0)).cloned().unwrap_or_default()
    }

    /// Replaces det(x/L0) by `by`, which must not mention det(x/L0).
    pub fn eliminate(&self, x: Space, by: &LineBundleExpr) -> Self {
        let n = normalize(self);
        let c = n.abs_coefficient(x);
        let mut rest = n;
        rest.det.remove(&(x, Space::L0));
        normalize(&(rest + by.scale(&c)))
    }
}

/// Canonical form: every det(A/B) becomes det(A/L0) − det(B/L0), which is
/// chain additivity read through the bottom space. The s-free part of the
/// [Z_s] family and any [fibre] term become grading, since the components
/// sum to the fibre and O([fibre]) ≅ O{2}.
pub fn normalize(e: &LineBundleExpr) -> LineBundleExpr {
    let mut out = LineBundleExpr::zero();
    for (&(a, b), c) in &e.det {
        if a != Space::L0 {
            bump(&mut out.det, (a, Space::L0), c);
        }
        if b != Space::L0 {
            bump(&mut out.det, (b, Space::L0), &-c);
        }
    }
    out.grading = e.grading.clone();
    for (&d, c) in &e.divisors {
        match d {
            Divisor::Zs => {
                let (free, rest) = c.split_free_of(Param::S);
                out.grading = &out.grading + &(&free * &SymbolicInt::int(2));
                bump(&mut out.divisors, d, &rest);
            }
            Divisor::Fibre => out.grading = &out.grading + &(c * &SymbolicInt::int(2)),
            _ => bump(&mut out.divisors, d, c),
        }
    }
    out
}

/// Which component the restriction targets. The end components lack one
/// boundary divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// 0 < t < N − l.
    Interior,
    /// t = 0, no [D_t-].
    Lower,
    /// t = N − l, no [D_t+].
    Upper,
}

impl Boundary {
    pub const ALL: [Boundary; 3] = [Boundary::Interior, Boundary::Lower, Boundary::Upper];

    pub fn t(self) -> SymbolicInt {
        match self {
            Boundary::Interior => SymbolicInt::var(Param::T),
            Boundary::Lower => SymbolicInt::zero(),
            Boundary::Upper => SymbolicInt::var(Param::N) - SymbolicInt::var(Param::L),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Boundary::Interior => "interior",
            Boundary::Lower => "t=0",
            Boundary::Upper => "t=N-l",
        }
    }
}

/// O([D_s+]) ≅ det(L2/W2)^∨ ⊗ det(W1/L0) {2(k−s)}.
pub fn d_plus_bundle(s: &SymbolicInt) -> LineBundleExpr {
    use Space::*;
    -LineBundleExpr::det(L2, W2) + LineBundleExpr::det(W1, L0) + LineBundleExpr::shift((SymbolicInt::var(Param::K) - s.clone()) * 2)
}

/// O([D_s-]) ≅ det(L1/W1)^∨ ⊗ det(W2/L1').
pub fn d_minus_bundle() -> LineBundleExpr {
    use Space::*;
    -LineBundleExpr::det(L1, W1) + LineBundleExpr::det(W2, L1p)
}

/// Restricts to the component Z_t without replacing the boundary divisors.
/// Uses [Z_{t±1}]|Z_t = [D_t±], [Z_s]|Z_t = 0 for |s−t| > 1, and
/// [Z_t]|Z_t = {2} − [D_t-] − [D_t+].
pub fn restrict_divisors(e: &LineBundleExpr, b: Boundary) -> Result<LineBundleExpr, LedgerError> {
    use Divisor::*;
    let t = b.t();
    let e = e.subst(Param::T, &t);
    let mut out = LineBundleExpr {
        det: e.det.clone(),
        divisors: BTreeMap::new(),
        grading: e.grading.clone(),
    };
    let add_self = |out: &mut LineBundleExpr, c: &SymbolicInt| {
        out.grading = &out.grading + &(c * &SymbolicInt::int(2));
        bump(&mut out.divisors, DMinus, &-c);
        bump(&mut out.divisors, DPlus, &-c);
    };
    for (&d, c) in &e.divisors {
        match d {
            Zs => {
                let at = |x: SymbolicInt| c.subst(Param::S, &x);
                let here = at(t.clone());
                bump(&mut out.divisors, DMinus, &at(&t - &SymbolicInt::int(1)));
                bump(&mut out.divisors, DPlus, &at(&t + &SymbolicInt::int(1)));
                add_self(&mut out, &here);
            }
            Zt(0) => add_self(&mut out, c),
            Zt(-1) => bump(&mut out.divisors, DMinus, c),
            Zt(1) => bump(&mut out.divisors, DPlus, c),
            Zt(_) => {}
            DPlus | DMinus => bump(&mut out.divisors, d, c),
            Fibre => out.grading = &out.grading + &(c * &SymbolicInt::int(2)),
        }
    }
    if c_depends_on_s(&out) {
        return Err(LedgerError::UnexpectedSymbol(
            "a coefficient still depends on s after restriction".into(),
        ));
    }
    match b {
        Boundary::Lower => {
            out.divisors.remove(&DMinus);
        }
        Boundary::Upper => {
            out.divisors.remove(&DPlus);
        }
        Boundary::Interior => {}
    }
    Ok(normalize(&out))
}

fn c_depends_on_s(e: &LineBundleExpr) -> bool {
    e.divisors.values().any(|c| c.depends_on(Param::S))
}

/// Restricts to Z_t and replaces the boundary divisors by their line
/// bundles. On an end component the missing divisor's bundle is trivial,
/// which is imposed by eliminating det(L1/L0) (t = 0) or det(L2/L0)
/// (t = N − l).
pub fn restrict_to_component(e: &LineBundleExpr, b: Boundary) -> Result<LineBundleExpr, LedgerError> {
    let r = restrict_divisors(e, b)?;
    let t = b.t();
    let plus = r.coefficient(Divisor::DPlus);
    let minus = r.coefficient(Divisor::DMinus);
    let mut out = r.clone();
    out.divisors.clear();
    let out = normalize(&(out + d_plus_bundle(&t).scale(&plus) + d_minus_bundle().scale(&minus)));
    Ok(match b {
        Boundary::Interior => out,
        Boundary::Lower => {
            // det(L1/W1) ≅ det(W2/L1')
            let by = normalize(&(LineBundleExpr::abs(Space::W1) + LineBundleExpr::abs(Space::W2) - LineBundleExpr::abs(Space::L1p)));
            out.eliminate(Space::L1, &by)
        }
        Boundary::Upper => {
            // det(L2/W2) ≅ det(W1/L0){2(k−t)}
            let by = normalize(&(LineBundleExpr::abs(Space::W2) + LineBundleExpr::abs(Space::W1)
                + LineBundleExpr::shift((SymbolicInt::var(Param::K) - t) * 2)));
            out.eliminate(Space::L2, &by)
        }
    })
}

impl Add for LineBundleExpr {
    type Output = LineBundleExpr;
    fn add(mut self, o: LineBundleExpr) -> LineBundleExpr {
        for (q, c) in &o.det {
            bump(&mut self.det, *q, c);
        }
        for (d, c) in &o.divisors {
            bump(&mut self.divisors, *d, c);
        }
        self.grading = &self.grading + &o.grading;
        self
    }
}

impl Neg for LineBundleExpr {
    type Output = LineBundleExpr;
    fn neg(self) -> LineBundleExpr {
        self.scale(&SymbolicInt::int(-1))
    }
}

impl Sub for LineBundleExpr {
    type Output = LineBundleExpr;
    fn sub(self, o: LineBundleExpr) -> LineBundleExpr {
        self + (-o)
    }
}

impl Mul<LineBundleExpr> for SymbolicInt {
    type Output = LineBundleExpr;
    fn mul(self, e: LineBundleExpr) -> LineBundleExpr {
        e.scale(&self)
    }
}

impl Mul<LineBundleExpr> for i64 {
    type Output = LineBundleExpr;
    fn mul(self, e: LineBundleExpr) -> LineBundleExpr {
        e.scale(&SymbolicInt::int(self))
    }
}

impl fmt::Display for LineBundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for ((a, b), c) in &self.det {
            parts.push(format!("({c})·det({}/{})", a.name(), b.name()));
        }
        for (d, c) in &self.divisors {
            parts.push(format!("({c})·{}", d.name()));
        }
        if !self.grading.is_zero() {
            parts.push(format!("{{{}}}", self.grading));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for LineBundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Space::*;

    fn v(p: Param) -> SymbolicInt {
        SymbolicInt::var(p)
    }

    #[test]
    fn chain_additivity() {
        let lhs = normalize(&LineBundleExpr::det(L2, L0));
        assert_eq!(lhs, normalize(&(LineBundleExpr::det(L2, L1) + LineBundleExpr::det(L1, L0))));
    }

    #[test]
    fn four_term_product() {
        let lhs = -LineBundleExpr::det(L2, W2) + LineBundleExpr::det(W1, L0) + LineBundleExpr::det(L1, W1)
            - LineBundleExpr::det(W2, L1p);
        let rhs = -LineBundleExpr::det(L2, L1) + LineBundleExpr::det(L1p, L0);
        assert_eq!(normalize(&lhs), normalize(&rhs));
        assert!(normalize(&LineBundleExpr::zero()).is_zero());
    }

    #[test]
    fn idempotent() {
        let e = LineBundleExpr::det(W2, L1) + LineBundleExpr::family(v(Param::S) + 3) + LineBundleExpr::shift(v(Param::K));
        let n = normalize(&e);
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn neighbour_restricts_to_boundary_divisor() {
        let r = restrict_divisors(&LineBundleExpr::divisor(Divisor::Zt(1)), Boundary::Interior).unwrap();
        assert_eq!(r, LineBundleExpr::divisor(Divisor::DPlus));
        let far = restrict_divisors(&LineBundleExpr::divisor(Divisor::Zt(2)), Boundary::Interior).unwrap();
        assert!(far.is_zero());
    }

    #[test]
    fn components_sum_to_two() {
        for b in Boundary::ALL {
            let r = restrict_to_component(&LineBundleExpr::family(SymbolicInt::int(1)), b).unwrap();
            assert_eq!(r, LineBundleExpr::shift(2), "{b:?}");
        }
    }

    #[test]
    fn weighted_family_restriction() {
        let r = restrict_to_component(&LineBundleExpr::family(v(Param::S)), Boundary::Interior).unwrap();
        let expect = -LineBundleExpr::det(L2, L1) + LineBundleExpr::det(L1p, L0) + LineBundleExpr::shift(v(Param::K) * 2);
        assert_eq!(r, normalize(&expect));
    }

    #[test]
    #[should_panic]
    fn rejects_non_quotients() {
        LineBundleExpr::det(L1, L1p);
    }
}
