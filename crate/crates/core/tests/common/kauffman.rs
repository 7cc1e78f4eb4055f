//! State-sum Kauffman bracket straight from a PD code. Shares nothing with
//! the library beyond the text format.

use std::collections::BTreeMap;

/// Laurent polynomial in `A` with integer coefficients.
pub type APoly = BTreeMap<i64, i64>;

pub struct Pd {
    pub crossings: Vec<[usize; 4]>,
    pub free_loops: usize,
}

pub fn parse(text: &str) -> Pd {
    let mut crossings = Vec::new();
    let mut free_loops = 0;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if line == "O" {
            free_loops += 1;
            continue;
        }
        let nums: Vec<usize> = line
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(nums.len(), 4, "bad PD line {line}");
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    Pd { crossings, free_loops }
}

/// Writhe from edge directions: the understrand enters at port 0, every
/// edge enters one end and leaves the other, and undetermined over strands
/// are oriented `b -> d`.
pub fn writhe(pd: &Pd) -> i64 {
    // true when the edge at (crossing, port) enters the crossing
    let mut dir: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut occ: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, c) in pd.crossings.iter().enumerate() {
        for (p, e) in c.iter().enumerate() {
            occ.entry(*e).or_default().push((x, p));
        }
        dir.insert((x, 0), true);
        dir.insert((x, 2), false);
    }
    let other = |e: usize, at: (usize, usize)| -> (usize, usize) {
        let v = &occ[&e];
        if v[0] == at {
            v[1]
        } else {
            v[0]
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            let known: Vec<((usize, usize), bool)> = dir.iter().map(|(k, v)| (*k, *v)).collect();
            for ((x, p), incoming) in known {
                let e = pd.crossings[x][p];
                let o = other(e, (x, p));
                if !dir.contains_key(&o) {
                    dir.insert(o, !incoming);
                    changed = true;
                }
                // the over strand passes straight through
                if p % 2 == 1 && !dir.contains_key(&(x, (p + 2) % 4)) {
                    dir.insert((x, (p + 2) % 4), !incoming);
                    changed = true;
                }
            }
        }
        match (0..pd.crossings.len()).find(|&x| !dir.contains_key(&(x, 1))) {
            Some(x) => {
                dir.insert((x, 1), true);
            }
            None => break,
        }
    }
    (0..pd.crossings.len())
        .map(|x| if dir[&(x, 3)] { 1 } else { -1 })
        .sum()
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// `<D>` with `<O> = -A^2 - A^{-2}` per loop, so the empty diagram is 1.
pub fn bracket(pd: &Pd) -> APoly {
    let n = pd.crossings.len();
    let mut labels: Vec<usize> = pd.crossings.iter().flatten().copied().collect();
    labels.sort();
    labels.dedup();
    let idx: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut out = APoly::new();
    for state in 0u64..1 << n {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        let mut a_count = 0i64;
        for (x, c) in pd.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.map(|e| idx[&e]);
            let pairs = if state >> x & 1 == 0 {
                a_count += 1;
                [(a, b), (cc, d)]
            } else {
                [(a, d), (b, cc)]
            };
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let loops = (0..labels.len()).filter(|&i| find(&mut parent, i) == i).count() + pd.free_loops;
        // A^{a - b} δ^{loops}
        let mut term = APoly::from([(2 * a_count - n as i64, 1)]);
        for _ in 0..loops {
            let mut next = APoly::new();
            for (e, c) in &term {
                *next.entry(e + 2).or_default() -= c;
                *next.entry(e - 2).or_default() -= c;
            }
            term = next;
        }
        for (e, c) in term {
            *out.entry(e).or_default() += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `(-A^3)^{-w} <D>`, then `A^2 -> -q^{s}`; exponents of `A` are even.
pub fn unnormalized_jones(text: &str, s: i64) -> BTreeMap<i64, i64> {
    let pd = parse(text);
    let w = writhe(&pd);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let mut out = BTreeMap::new();
    for (e, c) in bracket(&pd) {
        let e = e - 3 * w;
        assert!(e % 2 == 0, "odd power of A");
        let j = e / 2;
        let sg = if j % 2 == 0 { 1 } else { -1 };
        *out.entry(s * j).or_default() += sign * sg * c;
    }
    out.retain(|_, c: &mut i64| *c != 0);
    out
}
