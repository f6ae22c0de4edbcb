//! Tietze simplification of involutive presentations.
//!
//! Only two moves are used: dropping relators that are trivial or repeat
//! another relator up to rotation and inversion, and eliminating a generator
//! `g` through a relator in which it occurs exactly once (`g = w`), by
//! substituting `w` for `g` everywhere. Both preserve the group.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::word::{Generator, Word};
use super::{Presentation, PresentationError};

#[derive(Debug, Clone, Copy)]
pub struct TietzeOptions {
    /// Without a target, only eliminate through definitions at most this long.
    pub max_definition_len: usize,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions {
            max_definition_len: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeResult {
    pub presentation: Presentation,
    /// Eliminated generators with the word substituted for them, in order.
    /// Each definition is over the generators alive at that moment.
    pub eliminated: Vec<(Generator, Word)>,
}

/// Preference order for eliminations: smaller keys go first.
type EliminationKey = (usize, bool, Generator, usize);

pub fn tietze_simplify(
    p: &Presentation,
    target: Option<&BTreeSet<Generator>>,
) -> Result<TietzeResult, PresentationError> {
    tietze_simplify_with(p, target, TietzeOptions::default())
}

/// With `target`, eliminates exactly the generators outside it and fails
/// if one of them has no defining relator. Without, eliminates greedily
/// through short definitions, primed generators first.
pub fn tietze_simplify_with(
    p: &Presentation,
    target: Option<&BTreeSet<Generator>>,
    options: TietzeOptions,
) -> Result<TietzeResult, PresentationError> {
    if !p.involutive {
        return Err(PresentationError::NotInvolutive);
    }
    p.validate()?;
    if let Some(t) = target {
        let alphabet = p.generator_set();
        if let Some(g) = t.iter().find(|g| !alphabet.contains(g)) {
            return Err(PresentationError::UnknownTarget(*g));
        }
    }

    let mut alphabet = p.alphabet.clone();
    let mut relators = normalize(p.relators.iter().cloned());
    let mut eliminated = Vec::new();

    loop {
        let eligible = |g: Generator, def_len: usize| match target {
            Some(t) => !t.contains(&g),
            None => def_len <= options.max_definition_len,
        };
        let mut best: Option<(EliminationKey, usize, Generator)> = None;
        for (i, r) in relators.iter().enumerate() {
            let mut counts: BTreeMap<Generator, usize> = BTreeMap::new();
            for l in r.letters() {
                *counts.entry(l.generator).or_default() += 1;
            }
            for (&g, &c) in &counts {
                if c != 1 || !eligible(g, r.len() - 1) {
                    continue;
                }
                let key = (r.len(), !g.primed, g, i);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, i, g));
                }
            }
        }
        let Some((_, idx, g)) = best else { break };

        let r = relators.remove(idx);
        let pos = r.letters().iter().position(|l| l.generator == g).unwrap();
        let mut rotated = r.letters().to_vec();
        rotated.rotate_left(pos);
        // g v = e, so g = v^-1 = reverse(v)
        let definition = Word(rotated[1..].to_vec()).reversed();

        relators = normalize(relators.iter().map(|w| w.substitute(g, &definition)));
        alphabet.retain(|x| *x != g);
        eliminated.push((g, definition));
    }

    if let Some(t) = target {
        if let Some(g) = alphabet.iter().find(|g| !t.contains(g)) {
            return Err(PresentationError::NoDefiningRelator(*g));
        }
    }

    Ok(TietzeResult {
        presentation: Presentation::new(alphabet, relators, true),
        eliminated,
    })
}

fn normalize(words: impl Iterator<Item = Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in words {
        let c = w.canonical_relator(true);
        if !c.is_empty() && seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &str, rels: &[&str]) -> Presentation {
        Presentation::new(
            gens.split_whitespace()
                .map(|g| g.parse().unwrap())
                .collect(),
            rels.iter().map(|r| Word::parse(r).unwrap()).collect(),
            true,
        )
    }

    #[test]
    fn eliminates_primed_copy() {
        let p = pres("1 1' 2", &["1 1'", "1' 2 1' 2 1' 2"]);
        let out = tietze_simplify(&p, None).unwrap();
        assert_eq!(
            out.presentation.alphabet,
            vec![Generator::plain(1), Generator::plain(2)]
        );
        assert_eq!(
            out.presentation.relators,
            vec![Word::parse("1 2 1 2 1 2").unwrap()]
        );
        assert_eq!(out.eliminated[0].0, Generator::primed(1));
    }

    #[test]
    fn target_without_definition_fails() {
        let p = pres("1 2", &["1 2 1 2 1 2"]);
        let target: BTreeSet<_> = [Generator::plain(1)].into();
        assert_eq!(
            tietze_simplify(&p, Some(&target)),
            Err(PresentationError::NoDefiningRelator(Generator::plain(2)))
        );
    }

    #[test]
    fn target_keeps_requested_generators() {
        let p = pres("1 2 3", &["3 1 2 1", "1 2 1 2 1 2"]);
        let target: BTreeSet<_> = [Generator::plain(1), Generator::plain(2)].into();
        let out = tietze_simplify(&p, Some(&target)).unwrap();
        assert_eq!(out.presentation.generator_set(), target);
        assert_eq!(
            out.eliminated,
            vec![(Generator::plain(3), Word::parse("1 2 1").unwrap())]
        );
    }

    #[test]
    fn fixed_point() {
        let p = pres(
            "1 1' 2 3",
            &["1 1'", "1' 2 1' 2 1' 2", "2 3 2 3 2 3", "1 3 1 3"],
        );
        let once = tietze_simplify(&p, None).unwrap().presentation;
        let twice = tietze_simplify(&once, None).unwrap();
        assert_eq!(twice.presentation, once);
        assert!(twice.eliminated.is_empty());
    }

    #[test]
    fn rejects_raw() {
        let mut p = pres("1", &["1 1"]);
        p.involutive = false;
        assert_eq!(
            tietze_simplify(&p, None),
            Err(PresentationError::NotInvolutive)
        );
    }
}
