//! Slice-word text format.
//!
//! Statements are separated by newlines or `;`, `#` starts a comment:
//!
//! ```text
//! m=2; labels=; colours=
//! cup@1 k=1 c=0 o=u
//! x2@1
//! cap@1
//! ```
//!
//! `labels`, `colours` and `orient` describe the domain. Cup attributes `k`
//! (endpoint label of the left leg), `c` (colour id) and `o` (orientation of
//! the left leg) default to the values set by `label=`, `colour=` and up.

use super::pd::{parse_pd, PdOptions};
use super::{CupData, Generator, Kind, LinkDiagram, Orient, SliceObject, TangleError, TangleWord};

fn parse_orient(s: &str) -> Result<Orient, TangleError> {
    match s {
        "u" | "up" => Ok(Orient::Up),
        "d" | "down" => Ok(Orient::Down),
        _ => Err(TangleError::Parse(format!("bad orientation `{s}`"))),
    }
}

fn csv<T, F: Fn(&str) -> Result<T, TangleError>>(s: &str, f: F) -> Result<Vec<T>, TangleError> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(f).collect()
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T, TangleError> {
    s.trim()
        .parse()
        .map_err(|_| TangleError::Parse(format!("bad integer `{s}`")))
}

fn statements(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap())
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
}

pub fn parse_slice_word(text: &str) -> Result<TangleWord, TangleError> {
    let mut m: Option<u8> = None;
    let mut labels: Vec<i64> = Vec::new();
    let mut colours: Option<Vec<u32>> = None;
    let mut orient: Option<Vec<Orient>> = None;
    let mut default_label: i64 = 1;
    let mut default_colour: u32 = 0;
    let mut gens = Vec::new();
    for st in statements(text) {
        if let Some((name, pos)) = st.split_whitespace().next().and_then(|h| h.split_once('@')) {
            let kind = Kind::from_name(name).ok_or_else(|| TangleError::Parse(format!("unknown generator `{name}`")))?;
            let pos: usize = int(pos)?;
            if kind == Kind::Cup {
                let mut d = (default_label, default_colour, Orient::Up);
                for attr in st.split_whitespace().skip(1) {
                    let (k, v) = attr
                        .split_once('=')
                        .ok_or_else(|| TangleError::Parse(format!("bad cup attribute `{attr}`")))?;
                    match k {
                        "k" => d.0 = int(v)?,
                        "c" => d.1 = int(v)?,
                        "o" => d.2 = parse_orient(v)?,
                        _ => return Err(TangleError::Parse(format!("bad cup attribute `{attr}`"))),
                    }
                }
                let mm = m.ok_or_else(|| TangleError::Parse("m must precede generators".into()))?;
                if d.0 < 1 || d.0 >= mm as i64 {
                    return Err(TangleError::LabelOutOfRange { label: d.0, m: mm });
                }
                gens.push(Generator::cup(
                    pos,
                    CupData {
                        label: d.0 as u8,
                        colour: d.1,
                        left: d.2,
                    },
                ));
            } else {
                if st.split_whitespace().count() > 1 {
                    return Err(TangleError::Parse(format!("unexpected attributes in `{st}`")));
                }
                gens.push(Generator::new(kind, pos));
            }
            continue;
        }
        let (key, val) = match st.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => match st.split_once(char::is_whitespace) {
                Some((k, v)) => (k.trim(), v.trim()),
                None => return Err(TangleError::Parse(format!("cannot read `{st}`"))),
            },
        };
        match key {
            "m" => {
                let v: i64 = int(val)?;
                if !(2..=16).contains(&v) {
                    return Err(TangleError::Parse(format!("m={v} unsupported")));
                }
                m = Some(v as u8);
            }
            "labels" => labels = csv(val, int)?,
            "colours" | "colors" => colours = Some(csv(val, int)?),
            "orient" => orient = Some(csv(val, parse_orient)?),
            "label" => default_label = int(val)?,
            "colour" | "color" => default_colour = int(val)?,
            _ => return Err(TangleError::Parse(format!("unknown key `{key}`"))),
        }
        if let Some(mm) = m {
            for &k in labels.iter().chain(std::iter::once(&default_label)) {
                if k < 1 || k >= mm as i64 {
                    return Err(TangleError::LabelOutOfRange { label: k, m: mm });
                }
            }
        }
    }
    let m = m.ok_or_else(|| TangleError::Parse("missing m=".into()))?;
    let n = labels.len();
    let domain = SliceObject {
        m,
        labels: labels.iter().map(|&k| k as u8).collect(),
        colours: colours.unwrap_or_else(|| vec![0; n]),
        orient: orient.unwrap_or_else(|| vec![Orient::Up; n]),
    };
    Ok(TangleWord::new(domain, gens))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical text: header line, then one generator per line.
pub fn serialize_word(w: &TangleWord) -> String {
    let d = &w.domain;
    let mut s = format!("m={}; labels={}; colours={}", d.m, join(&d.labels), join(&d.colours));
    if !d.orient.is_empty() {
        let o: Vec<&str> = d.orient.iter().map(|o| if *o == Orient::Up { "u" } else { "d" }).collect();
        s.push_str(&format!("; orient={}", o.join(",")));
    }
    s.push('\n');
    for g in &w.gens {
        match g.cup {
            Some(c) if g.kind == Kind::Cup => s.push_str(&format!(
                "cup@{} k={} c={} o={}\n",
                g.pos,
                c.label,
                c.colour,
                if c.left == Orient::Up { "u" } else { "d" }
            )),
            _ => s.push_str(&format!("{}@{}\n", g.kind.name(), g.pos)),
        }
    }
    s
}

/// PD input is recognised by `X[`/`X(` entries, free loops `O` or bare lines
/// of four integers.
fn looks_like_pd(text: &str) -> bool {
    statements(text).any(|st| {
        st == "O"
            || st.starts_with("X[")
            || st.starts_with("X(")
            || (st.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .count()
                == 4
                && st.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()))
    })
}

/// Either format; PD codes go through the greedy Morse conversion with all
/// strands labeled 1 (or the `label=` value) and `m=2` unless `m=` is given.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, TangleError> {
    let word = if looks_like_pd(text) {
        parse_pd(text, &PdOptions::default())?.to_word()?
    } else {
        parse_slice_word(text)?
    };
    LinkDiagram::from_word(&word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_one_liner() {
        let d = parse_diagram("m=2; cup@1; cap@1").unwrap();
        assert_eq!(d.components.count, 1);
        let back = serialize_word(&d.word.word);
        assert_eq!(parse_slice_word(&back).unwrap(), d.word.word);
    }

    #[test]
    fn label_out_of_range() {
        assert!(matches!(
            parse_slice_word("m=3; label 5"),
            Err(TangleError::LabelOutOfRange { label: 5, m: 3 })
        ));
    }
}
