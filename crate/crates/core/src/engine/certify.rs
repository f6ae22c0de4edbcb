//! Order of `G_1` from a Coxeter path, without enumerating all of it.
//!
//! Suppose generators `x_1, ..., x_{N-1}` of the presentation map to the
//! transpositions `(p_0 p_1), (p_1 p_2), ..., (p_{N-2} p_{N-1})` along a
//! path through all `N` points, and the presentation literally contains the
//! Coxeter relators `(x_i x_{i+1})^3` and `(x_i x_j)^2` for `|i-j| > 1`.
//! Then `H = <x_i>` is a quotient of the Coxeter group of type `A_{N-1}`,
//! which is `S_N`, and maps onto `S_N`, so `H ≅ S_N`. Enumerating the
//! cosets of `H` gives `|G_1| = [G_1 : H] N!`.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::degeneration::{build_family, graph_connected, Degeneration, TranspositionMap};
use crate::presentation::{
    assemble_g1, braid_relator, commutator_relator, equality_relator, tietze_simplify,
    AssemblyMode, Generator, Presentation, TietzeResult, Word,
};

use super::{
    coset_enumerate, factorial, image_check, EngineError, EnumerationConfig, SimplyConnected,
    Strategy, Verdict,
};

const SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterPath {
    pub generators: Vec<Generator>,
    /// The points visited, one more than the generators.
    pub points: Vec<u32>,
}

/// Searches, in alphabet order, for a Coxeter path through all `degree`
/// points whose relators occur verbatim in `p`.
pub fn coxeter_path(p: &Presentation, tmap: &TranspositionMap, degree: u32) -> Option<CoxeterPath> {
    let rels = p.canonical_relator_set();
    let has = |w: Word| rels.contains(&w.canonical_relator(p.involutive));
    let gens: Vec<Generator> = p
        .alphabet
        .iter()
        .copied()
        .filter(|g| tmap.contains_key(&g.line))
        .collect();
    let k = gens.len();
    let mut braid = vec![false; k * k];
    let mut commute = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let (x, y) = (Word::gen(gens[i]), Word::gen(gens[j]));
                braid[i * k + j] = has(braid_relator(&x, &y));
                commute[i * k + j] = has(commutator_relator(&x, &y));
            }
        }
    }

    struct Search<'a> {
        gens: &'a [Generator],
        tmap: &'a TranspositionMap,
        braid: &'a [bool],
        commute: &'a [bool],
        target: usize,
        budget: u64,
        path: Vec<usize>,
        points: Vec<u32>,
    }

    impl Search<'_> {
        fn extend(&mut self) -> bool {
            if self.points.len() == self.target {
                return true;
            }
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let k = self.gens.len();
            let end = *self.points.last().unwrap();
            let last = *self.path.last().unwrap();
            for g in 0..k {
                let (a, b) = self.tmap[&self.gens[g].line];
                let next = if a == end {
                    b
                } else if b == end {
                    a
                } else {
                    continue;
                };
                if self.points.contains(&next)
                    || !self.braid[last * k + g]
                    || !self.path[..self.path.len() - 1]
                        .iter()
                        .all(|&h| self.commute[h * k + g])
                {
                    continue;
                }
                self.path.push(g);
                self.points.push(next);
                if self.extend() {
                    return true;
                }
                self.path.pop();
                self.points.pop();
            }
            false
        }
    }

    let mut search = Search {
        gens: &gens,
        tmap,
        braid: &braid,
        commute: &commute,
        target: degree as usize,
        budget: SEARCH_BUDGET,
        path: Vec::new(),
        points: Vec::new(),
    };
    for g in 0..k {
        let (a, b) = tmap[&gens[g].line];
        for (s, e) in [(a, b), (b, a)] {
            search.path = vec![g];
            search.points = vec![s, e];
            if search.extend() {
                return Some(CoxeterPath {
                    generators: search.path.iter().map(|&i| gens[i]).collect(),
                    points: search.points.clone(),
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub path: CoxeterPath,
    /// `[G_1 : H]`, or `None` if the enumeration overflowed.
    pub index: Option<u64>,
}

/// Certifies `|G_1|` for the family member `n` through a Coxeter path.
/// Returns the verdict (same contract as `verify_simply_connected`) and
/// the path used, if one was found. The index enumeration always runs HLT
/// with lookahead, which collapses to index 1 far sooner than Felsch here.
pub fn verify_by_coxeter_path(
    n: u32,
    max_cosets: usize,
) -> Result<(Verdict, Option<OrderCertificate>), EngineError> {
    let cfg = &EnumerationConfig::new(max_cosets, Strategy::HltLookahead);
    let started = Instant::now();
    let d = build_family(n)?;
    let p = assemble_g1(&d, AssemblyMode::Simplified)?;
    let tmap = d.transposition_map();
    let image_full_symmetric =
        image_check(&p, &tmap) && graph_connected(d.degree(), tmap.values().copied());
    let mut verdict = Verdict {
        n,
        group_order: None,
        image_full_symmetric,
        simply_connected: SimplyConnected::Falsified,
        cosets_defined_peak: 0,
        wall_time_ms: 0,
    };
    let mut certificate = None;
    if image_full_symmetric {
        verdict.simply_connected = SimplyConnected::Inconclusive;
        if let Some(path) = coxeter_path(&p, &tmap, d.degree()) {
            let subgroup: Vec<Word> = path.generators.iter().map(|g| Word::gen(*g)).collect();
            let t = coset_enumerate(&p, &subgroup, cfg)?;
            verdict.cosets_defined_peak = t.stats().peak_live;
            let index = t.is_complete().then_some(t.coset_count() as u64);
            if let Some(k) = index {
                let order = k as u128 * factorial(d.degree());
                verdict.group_order = u64::try_from(order).ok();
                verdict.simply_connected = if k == 1 {
                    SimplyConnected::Verified
                } else {
                    SimplyConnected::Falsified
                };
            }
            certificate = Some(OrderCertificate { path, index });
        }
    }
    verdict.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok((verdict, certificate))
}

/// `{1, 3, 4, ..., 2n+2}`.
pub fn target_generators(n: u32) -> BTreeSet<Generator> {
    std::iter::once(1)
        .chain(3..=2 * n + 2)
        .map(Generator::plain)
        .collect()
}

/// Reduces `G_1` to the generators `target_generators(n)`. Needs a verified
/// certificate: then `G_1 → S_{2n+2}` is injective, so every `j = j'`
/// (same transposition on both sides) holds and may be adjoined.
pub fn simplify_to_target(
    p: &Presentation,
    d: &Degeneration,
    certified: &Verdict,
) -> Result<TietzeResult, EngineError> {
    if certified.n != d.n || certified.simply_connected != SimplyConnected::Verified {
        return Err(EngineError::Uncertified(format!(
            "j = j' for n = {} without a verified order",
            d.n
        )));
    }
    let tmap = d.transposition_map();
    let equalities: Vec<Word> = d
        .line_ids()
        .map(|j| {
            equality_relator(
                &Word::gen(Generator::plain(j)),
                &Word::gen(Generator::primed(j)),
            )
            .reduced(true)
        })
        .collect();
    let check = Presentation::new(p.alphabet.clone(), equalities.clone(), true);
    if !image_check(&check, &tmap) {
        return Err(EngineError::Uncertified("j = j' in S_{2n+2}".into()));
    }
    let mut q = p.clone();
    q.relators.extend(equalities);
    Ok(tietze_simplify(&q, Some(&target_generators(d.n)))?)
}
