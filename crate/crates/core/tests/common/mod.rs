#![allow(dead_code)]

pub mod kauffman;

use std::path::PathBuf;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus")
}

/// `(name, PD text)` for every bundled diagram, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "pd").then(|| {
                let name = p.file_stem().unwrap().to_string_lossy().into_owned();
                (name, std::fs::read_to_string(&p).expect("readable corpus file"))
            })
        })
        .collect();
    out.sort();
    out
}

use colink::tangle_core::{parse_pd, LinkDiagram, PdOptions, RewriteOptions, random_rewrite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The diagram with component `j` carrying colour id `j`.
pub fn distinct_coloured(text: &str) -> LinkDiagram {
    let pd = parse_pd(text, &PdOptions { distinct_colours: true }).unwrap();
    LinkDiagram::from_word(&pd.to_word().unwrap()).unwrap()
}

/// `count` random move sequences applied to `d`, reproducible from `seed`.
pub fn rewrites(d: &LinkDiagram, count: usize, seed: u64, colour_passing: bool, extra: usize) -> Vec<LinkDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = d.word.word.crossings();
    (0..count)
        .map(|_| {
            let opts = RewriteOptions {
                steps: 1 + rng.gen_range(0..6),
                max_crossings: n + extra,
                colour_passing,
            };
            let w = random_rewrite(&d.word.word, opts, |k| rng.gen_range(0..k));
            LinkDiagram::from_word(&w).unwrap()
        })
        .collect()
}
