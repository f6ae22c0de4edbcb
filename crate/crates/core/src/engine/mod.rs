//! Coset enumeration, consequence checking and the simply-connectedness
//! verdict for `G_1`.

mod certify;
mod enumerate;
mod table;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degeneration::{build_family, graph_connected, DegenerationError, TranspositionMap};
use crate::presentation::{
    assemble_g1, tietze_simplify_with, AssemblyMode, Generator, Presentation, PresentationError,
    TietzeOptions, Word,
};

pub use certify::{
    coxeter_path, simplify_to_target, target_generators, verify_by_coxeter_path, CoxeterPath,
    OrderCertificate,
};
pub use enumerate::coset_enumerate;
pub use table::{CosetTable, EnumerationStats, TableStatus};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("generator {0} is not in the table alphabet")]
    UnknownGenerator(Generator),
    #[error("presentation has no generators")]
    EmptyAlphabet,
    #[error("operation needs a complete coset table")]
    NotComplete,
    #[error("bad table file: {0}")]
    Format(String),
    #[error("could not certify {0}")]
    Uncertified(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Degeneration(#[from] DegenerationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Felsch,
    #[default]
    #[serde(rename = "hlt_with_lookahead")]
    HltLookahead,
}

/// Budget for the coset table when none is given: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Bound on simultaneously live cosets.
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl EnumerationConfig {
    pub fn new(max_cosets: usize, strategy: Strategy) -> Self {
        EnumerationConfig {
            max_cosets,
            strategy,
        }
    }

    /// `2 (2n+2)!` live cosets, capped by the default memory budget.
    pub fn for_n(n: u32) -> Self {
        Self::for_n_with_budget(n, DEFAULT_MEMORY_BUDGET)
    }

    pub fn for_n_with_budget(n: u32, budget_bytes: u64) -> Self {
        let mut wanted: u128 = 2;
        for k in 1..=(2 * n as u128 + 2) {
            wanted = wanted.saturating_mul(k);
        }
        // one column per line after simplification, plus bookkeeping, with
        // room for as many dead ids as live ones before compaction
        let per_coset = 2 * (4 * (3 * n as u64 + 1) + 12);
        let cap = (budget_bytes / per_coset) as u128;
        EnumerationConfig {
            max_cosets: wanted.min(cap).min(u32::MAX as u128 - 1) as usize,
            strategy: Strategy::default(),
        }
    }
}

/// Order of the group, or `None` if the enumeration overflowed.
pub fn group_order(p: &Presentation, cfg: &EnumerationConfig) -> Result<Option<u64>, EngineError> {
    let t = coset_enumerate(p, &[], cfg)?;
    Ok(t.is_complete().then_some(t.coset_count() as u64))
}

/// Whether `w` is trivial in the group of a table over the trivial subgroup.
pub fn is_consequence(t: &CosetTable, w: &Word) -> Result<bool, EngineError> {
    t.is_consequence(w)
}

/// Whether every relator of `p` holds after sending each generator (plain or
/// primed) to its line's transposition. Generators of unmapped lines fail.
pub fn image_check(p: &Presentation, tmap: &TranspositionMap) -> bool {
    let degree = tmap.values().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize;
    p.relators.iter().all(|r| {
        let mut perm: Vec<u32> = (0..=degree as u32).collect();
        for l in r.letters() {
            let Some(&(a, b)) = tmap.get(&l.generator.line) else {
                return false;
            };
            // right action: apply the transposition after what came before
            for v in perm.iter_mut() {
                if *v == a {
                    *v = b;
                } else if *v == b {
                    *v = a;
                }
            }
        }
        perm.iter().enumerate().all(|(i, &v)| v as usize == i)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplyConnected {
    Verified,
    Falsified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: u32,
    #[serde(rename = "order")]
    pub group_order: Option<u64>,
    pub image_full_symmetric: bool,
    #[serde(rename = "verdict")]
    pub simply_connected: SimplyConnected,
    pub cosets_defined_peak: usize,
    pub wall_time_ms: u64,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

pub fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

/// Builds the family, assembles the simplified `G_1`, checks the map onto
/// `S_{2n+2}` and enumerates. Verified iff the map is onto and the order is
/// `(2n+2)!`, so the map is an isomorphism.
pub fn verify_simply_connected(n: u32, cfg: &EnumerationConfig) -> Result<Verdict, EngineError> {
    verify_simply_connected_with(n, AssemblyMode::Simplified, cfg)
}

/// Before enumerating, generators equal to another single generator are
/// eliminated; longer definitions are kept since substituting them makes
/// the relators much longer and the enumeration slower.
pub fn verify_simply_connected_with(
    n: u32,
    mode: AssemblyMode,
    cfg: &EnumerationConfig,
) -> Result<Verdict, EngineError> {
    let started = Instant::now();
    let d = build_family(n)?;
    let p = assemble_g1(&d, mode)?;
    let tmap = d.transposition_map();
    let image_ok = image_check(&p, &tmap);
    let onto = graph_connected(d.degree(), tmap.values().copied());
    let image_full_symmetric = image_ok && onto;

    let mut verdict = Verdict {
        n,
        group_order: None,
        image_full_symmetric,
        simply_connected: SimplyConnected::Falsified,
        cosets_defined_peak: 0,
        wall_time_ms: 0,
    };
    if image_full_symmetric {
        let reduced = tietze_simplify_with(
            &p,
            None,
            TietzeOptions {
                max_definition_len: 1,
            },
        )?
        .presentation;
        let t = coset_enumerate(&reduced, &[], cfg)?;
        verdict.cosets_defined_peak = t.stats().peak_live;
        verdict.simply_connected = if !t.is_complete() {
            SimplyConnected::Inconclusive
        } else {
            verdict.group_order = Some(t.coset_count() as u64);
            if t.coset_count() as u128 == factorial(d.degree()) {
                SimplyConnected::Verified
            } else {
                SimplyConnected::Falsified
            }
        };
    }
    verdict.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(verdict)
}
