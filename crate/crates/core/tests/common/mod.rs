//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use zv_core::presentation::{
    braid_relator, commutator_relator, equality_relator, Generator, Presentation, Word,
};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

fn word(s: &str) -> Word {
    Word::parse(s.trim()).unwrap_or_else(|e| panic!("bad word {s:?}: {e}"))
}

/// Every combination of the `|`-separated alternatives on both sides.
fn pairs(body: &str) -> Vec<(Word, Word)> {
    let (l, r) = body.split_once(',').expect("two arguments");
    let mut out = Vec::new();
    for x in l.split('|') {
        for y in r.split('|') {
            out.push((word(x), word(y)));
        }
    }
    out
}

/// Parses a relation fixture into relator words, in file order.
pub fn parse_relations(text: &str) -> Vec<Word> {
    let mut out = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(body) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            out.extend(pairs(body).iter().map(|(x, y)| commutator_relator(x, y)));
        } else if let Some(body) = line.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            out.extend(pairs(body).iter().map(|(x, y)| braid_relator(x, y)));
        } else if let Some((u, v)) = line.split_once('=') {
            if v.trim() == "e" {
                out.push(word(u));
            } else {
                out.push(equality_relator(&word(u), &word(v)));
            }
        } else {
            panic!("unrecognised fixture line {raw:?}");
        }
    }
    out
}

/// Canonical relator strings, as a set.
pub fn canonical_strings<'a>(words: impl IntoIterator<Item = &'a Word>) -> BTreeSet<String> {
    words
        .into_iter()
        .map(|w| w.canonical_relator(true).to_string())
        .collect()
}

/// Sends every primed generator to its plain partner.
pub fn identify_primes(p: &Presentation) -> Presentation {
    let relators = p
        .relators
        .iter()
        .map(|w| {
            Word::from_generators(
                w.letters()
                    .iter()
                    .map(|l| Generator::plain(l.generator.line)),
            )
        })
        .collect();
    let alphabet: Vec<Generator> = p.alphabet.iter().filter(|g| !g.primed).copied().collect();
    Presentation::new(alphabet, relators, true)
}
