use crate::report::Report;
use crate::GeometryArgs;
use anyhow::{anyhow, bail, Context, Result};
use colink::coloured_khovanov::{
    build_cube, component_dimensions, deformed_differential, diagram_pd, euler_characteristic, family_line_analysis,
    homology_at_point, khovanov_homology, total_dimension,
};
use colink::exact_algebra::Q;
use colink::grassmann_geometry::{
    bundled_towers, count_points, dimension_y, fmt_q, parse_tower, poincare_y, tower_dimension, LatticeConfig,
};
use colink::picard_ledger::{catalogue, check, check_sampled, find};
use colink::skew_howe_evaluator::{evaluate_link, relation_instances, verify_relation, RelationId};
use colink::tangle_core::{
    parse_diagram, parse_pd, parse_slice_word, writhe_by_label, LinkDiagram, PdOptions,
};
use std::collections::BTreeMap;
use std::path::Path;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// PD codes get component `j` coloured `j` when `distinct` is set.
fn load(path: &Path, m: Option<u8>, distinct: bool) -> Result<LinkDiagram> {
    let text = read(path)?;
    let ctx = || format!("parsing {}", path.display());
    let d = match path.extension().and_then(|e| e.to_str()) {
        Some("pd") => {
            let text = match m {
                Some(m) => format!("m={m}\n{text}"),
                None => text,
            };
            let pd = parse_pd(&text, &PdOptions { distinct_colours: distinct }).with_context(ctx)?;
            LinkDiagram::from_word(&pd.to_word().with_context(ctx)?).with_context(ctx)?
        }
        Some("sw") => LinkDiagram::from_word(&parse_slice_word(&text).with_context(ctx)?).with_context(ctx)?,
        _ => parse_diagram(&text).with_context(ctx)?,
    };
    if let Some(m) = m {
        if d.m() != m {
            bail!("{} is a diagram for m={}, not m={m}", path.display(), d.m());
        }
    }
    Ok(d)
}

fn rationals(csv: &str) -> Result<Vec<Q>> {
    csv.split(',')
        .map(|t| t.trim().parse::<Q>().map_err(|_| anyhow!("bad rational `{t}`")))
        .collect()
}

fn integers<T: std::str::FromStr>(csv: &str) -> Result<Vec<T>> {
    csv.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| anyhow!("bad integer `{t}`")))
        .collect()
}

fn put_table(r: &mut Report, prefix: &str, t: &BTreeMap<(i64, i64), usize>) {
    for ((h, q), n) in t {
        r.put(format!("{prefix}({h},{q})"), n);
    }
}

pub fn invariant(path: &Path, m: Option<u8>) -> Result<Report> {
    let d = load(path, m, false)?;
    let p = evaluate_link(&d).with_context(|| format!("evaluating {}", path.display()))?;
    let mut r = Report::new("invariant");
    r.put("m", d.m());
    r.put("components", d.components.count);
    r.put("crossings", d.word.word.crossings());
    for (k, w) in writhe_by_label(&d.word) {
        r.put(format!("writhe.{k}"), w);
    }
    r.put("polynomial", p);
    Ok(r)
}

pub fn homology(path: &Path, colours: &str) -> Result<Report> {
    let d = load(path, None, true)?;
    let cube = build_cube(&d)?;
    let dd = deformed_differential(&cube);
    let kh = khovanov_homology(&cube, &dd);
    let mut r = Report::new("homology");
    r.put("components", d.components.count);
    r.put(
        "colour_ids",
        dd.colours.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    );
    put_table(&mut r, "kh", &kh);
    r.put("kh.total", total_dimension(&kh));
    r.put("euler", euler_characteristic(&kh));
    if colours.trim() == "symbolic" {
        r.check("square_zero", dd.check_square_zero().is_ok());
        return Ok(r);
    }
    let values = rationals(colours)?;
    let point = homology_at_point(&cube, &dd, &values)?;
    r.put("point.total", point.total);
    r.put("point.even", point.by_parity[0]);
    r.put("point.odd", point.by_parity[1]);
    let ids: Vec<&Q> = dd.colours.iter().map(|&c| &values[c as usize]).collect();
    let distinct = ids.iter().enumerate().all(|(i, a)| ids[i + 1..].iter().all(|b| a != b));
    if distinct {
        let dims = component_dimensions(&diagram_pd(&d)?)?;
        let product: usize = dims.iter().product();
        r.put("split.product", product);
        r.check("split", dd.colours.len() == d.components.count && point.total == product);
    }
    Ok(r)
}

pub fn ss(path: &Path, direction: &str) -> Result<Report> {
    let d = load(path, None, true)?;
    let cube = build_cube(&d)?;
    let dd = deformed_differential(&cube);
    let rep = family_line_analysis(&cube, &dd, &rationals(direction)?)?;
    let mut r = Report::new("ss");
    put_table(&mut r, "e1", &rep.e1);
    r.put("e1.total", rep.e1_total);
    r.put("betti", rep.betti);
    let free: Vec<String> = rep.free.iter().map(|(h, q)| format!("({h},{q})")).collect();
    r.put("free", free.join(" "));
    let torsion: Vec<String> = rep.torsion.iter().map(|(h, q, e)| format!("({h},{q},{e})")).collect();
    r.put("torsion", torsion.join(" "));
    r.put("collapse_page", rep.collapse_page);
    r.check("rank_count", rep.betti + 2 * rep.torsion.len() == rep.e1_total);
    Ok(r)
}

pub fn relations(suite: &str, m: u8, max_strands: usize, jobs: usize) -> Result<Report> {
    if m < 2 {
        bail!("m must be at least 2");
    }
    let ids: Vec<RelationId> = if suite == "all" {
        RelationId::ALL.to_vec()
    } else {
        vec![RelationId::from_name(suite).ok_or_else(|| {
            let names: Vec<_> = RelationId::ALL.iter().map(|r| r.name()).collect();
            anyhow!("unknown suite `{suite}`; expected all or one of {}", names.join(", "))
        })?]
    };
    let instances: Vec<_> = ids.iter().flat_map(|&id| relation_instances(m, max_strands, id)).collect();
    let chunk = instances.len().div_ceil(jobs).max(1);
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(verify_relation).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("relation worker")).collect()
    });
    let mut r = Report::new("relations");
    r.put("m", m);
    r.put("max_strands", max_strands);
    for id in ids {
        let mut total = 0;
        let mut failed = Vec::new();
        for (inst, res) in instances.iter().zip(&results) {
            if inst.id != id {
                continue;
            }
            total += 1;
            let res = res.as_ref().map_err(|e| anyhow!("{id}: {e}"))?;
            if !res.pass {
                failed.push(res.witness.clone());
            }
        }
        r.put(format!("{id}.instances"), total);
        if let Some(Some(w)) = failed.first() {
            let w: Vec<String> = w.iter().map(u16::to_string).collect();
            r.put(format!("{id}.witness"), w.join(","));
        }
        r.check(id.name(), failed.is_empty());
    }
    Ok(r)
}

/// `k=..,l=..[,m=..]`; m defaults to l + 1.
fn sample_params(s: &str) -> Result<(i64, i64, i64)> {
    let mut vals: BTreeMap<&str, i64> = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| anyhow!("expected name=value, got `{part}`"))?;
        if !matches!(k.trim(), "k" | "l" | "m") {
            bail!("unknown parameter `{k}`");
        }
        vals.insert(k.trim(), v.trim().parse().map_err(|_| anyhow!("bad integer `{v}`"))?);
    }
    let k = *vals.get("k").ok_or_else(|| anyhow!("missing k"))?;
    let l = *vals.get("l").ok_or_else(|| anyhow!("missing l"))?;
    let m = vals.get("m").copied().unwrap_or(l + 1);
    if !(1 <= k && k <= l && l < m) {
        bail!("need 1 <= k <= l < m, got k={k} l={l} m={m}");
    }
    Ok((k, l, m))
}

pub fn ledger(which: &str, params: Option<&str>) -> Result<Report> {
    let ids = if which == "all" { catalogue() } else { vec![find(which)?] };
    let sample = params.map(sample_params).transpose()?;
    let mut r = Report::new("ledger");
    r.put("identities", ids.len());
    if let Some((k, l, m)) = sample {
        r.put("sample", format!("k={k},l={l},m={m}"));
    }
    for id in &ids {
        let c = check(id)?;
        for (case, diff) in &c.differences {
            r.put(format!("{}.difference.{case}", id.name), diff);
        }
        r.check(id.name, c.pass);
        if let Some((k, l, m)) = sample {
            let bad = check_sampled(id, k, l, m)?;
            if let Some(case) = &bad {
                r.put(format!("{}.sampled.case", id.name), case);
            }
            r.check(format!("{}.sampled", id.name), bad.is_none());
        }
    }
    Ok(r)
}

pub fn geometry(g: &GeometryArgs, budget: u128) -> Result<Report> {
    let mut r = Report::new("geometry");
    if let Some(spec) = &g.poincare {
        let v: Vec<usize> = integers(spec)?;
        let (&m, labels) = v.split_first().ok_or_else(|| anyhow!("expected m,k1,k2,..."))?;
        r.put("m", m);
        r.put("labels", format!("{labels:?}"));
        r.put("poincare", fmt_q(&poincare_y(m, labels)?));
        r.put("dimension", dimension_y(m, labels));
    } else if g.towers {
        let towers = if g.tower_files.is_empty() {
            bundled_towers()
        } else {
            g.tower_files
                .iter()
                .map(|p| parse_tower(&read(p)?).with_context(|| format!("parsing {}", p.display())))
                .collect::<Result<_>>()?
        };
        for t in towers {
            let dim = tower_dimension(&t);
            r.put(format!("{}.steps", t.name), t.steps.len());
            r.put(format!("{}.dimension", t.name), &dim);
            for (i, a) in t.assumptions.iter().enumerate() {
                r.put(format!("{}.assume.{i}", t.name), a);
            }
            if let Some(e) = &t.expect {
                r.put(format!("{}.expect", t.name), e);
                r.check(format!("{}.matches", t.name), (dim - e.clone()).is_zero());
            }
        }
    } else if let Some(spec) = &g.count {
        let v: Vec<usize> = integers(spec)?;
        let [p, m, labels @ ..] = v.as_slice() else {
            bail!("expected p,m,k1,k2,...");
        };
        let p32 = u32::try_from(*p).map_err(|_| anyhow!("p too large"))?;
        let mut cfg = LatticeConfig::new(p32, *m, labels);
        cfg.budget = budget;
        let n = count_points(&cfg)?;
        let expect = poincare_y(*m, labels)?.eval(&Q::from_integer((*p).into()));
        r.put("p", p);
        r.put("m", m);
        r.put("labels", format!("{labels:?}"));
        r.put("count", n);
        r.put("poincare_at_p", &expect);
        r.check("matches", Q::from_integer(n.into()) == expect);
    }
    Ok(r)
}
