use super::GeometryError;
use crate::picard_ledger::{Param, SymbolicInt};

/// Choose an `a`-dimensional subspace of a `b`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub a: SymbolicInt,
    pub b: SymbolicInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerSpec {
    pub name: String,
    pub steps: Vec<Step>,
    pub expect: Option<SymbolicInt>,
    pub assumptions: Vec<String>,
}

impl TowerSpec {
    /// Whether every step is a genuine Grassmannian at these values.
    pub fn admissible_at(&self, values: &[(Param, i64)]) -> bool {
        self.steps.iter().all(|st| {
            let a = st.a.eval(values).as_constant();
            let b = st.b.eval(values).as_constant();
            matches!((a, b), (Some(a), Some(b)) if a >= crate::exact_algebra::qi(0) && a <= b)
        })
    }
}

/// Σ a(b − a) over the steps.
pub fn tower_dimension(spec: &TowerSpec) -> SymbolicInt {
    spec.steps
        .iter()
        .fold(SymbolicInt::zero(), |acc, st| acc + st.a.clone() * (st.b.clone() - st.a.clone()))
}

fn poly(line: usize, s: &str) -> Result<SymbolicInt, GeometryError> {
    s.parse().map_err(|msg| GeometryError::Tower { line, msg })
}

/// Line format: `name <id>`, `step a=<poly> b=<poly>`, `expect <poly>`,
/// comments with `#`; a comment `# assume: ...` records an assumption.
pub fn parse_tower(text: &str) -> Result<TowerSpec, GeometryError> {
    let mut spec = TowerSpec {
        name: String::new(),
        steps: Vec::new(),
        expect: None,
        assumptions: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if let Some(c) = t.strip_prefix('#') {
            if let Some(a) = c.trim().strip_prefix("assume:") {
                spec.assumptions.push(a.trim().to_string());
            }
            continue;
        }
        if t.is_empty() {
            continue;
        }
        let (head, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match head {
            "name" => spec.name = rest.trim().to_string(),
            "expect" => spec.expect = Some(poly(line, rest)?),
            "step" => {
                let rest = rest.trim();
                let b_at = rest.find("b=").ok_or(GeometryError::Tower {
                    line,
                    msg: "step needs a=<poly> b=<poly>".into(),
                })?;
                let a = rest[..b_at].trim().strip_prefix("a=").ok_or(GeometryError::Tower {
                    line,
                    msg: "step needs a=<poly> first".into(),
                })?;
                spec.steps.push(Step {
                    a: poly(line, a)?,
                    b: poly(line, &rest[b_at + 2..])?,
                });
            }
            other => {
                return Err(GeometryError::Tower {
                    line,
                    msg: format!("unknown keyword {other:?}"),
                })
            }
        }
    }
    if spec.name.is_empty() {
        return Err(GeometryError::Tower {
            line: 0,
            msg: "missing name".into(),
        });
    }
    Ok(spec)
}

const BUNDLED: [&str; 7] = [
    include_str!("../../data/towers/grassmannian.tower"),
    include_str!("../../data/towers/y_two_step.tower"),
    include_str!("../../data/towers/z_resolution.tower"),
    include_str!("../../data/towers/complement_first.tower"),
    include_str!("../../data/towers/complement_second.tower"),
    include_str!("../../data/towers/complement_third.tower"),
    include_str!("../../data/towers/complement_second_z.tower"),
];

/// The towers shipped in `data/towers`.
pub fn bundled_towers() -> Vec<TowerSpec> {
    BUNDLED.iter().map(|t| parse_tower(t).expect("bundled tower parses")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_tower("name x\nstep a=k\n").unwrap_err();
        assert!(matches!(e, GeometryError::Tower { line: 2, .. }));
        assert!(parse_tower("step a=1 b=2").is_err());
    }

    #[test]
    fn single_grassmannian() {
        let t = parse_tower("name g\nstep a=k b=m\n").unwrap();
        assert_eq!(tower_dimension(&t), "k*m - k^2".parse().unwrap());
    }
}
