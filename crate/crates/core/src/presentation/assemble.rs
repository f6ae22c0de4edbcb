use std::collections::HashSet;

use crate::degeneration::{Degeneration, VertexKind};

use super::families::{
    fourline_relators_raw, fourline_relators_simplified, zappatic_relators,
    zappatic_relators_raw_r4, zappatic_relators_raw_r5, CommutationVariants, Relator, RelatorKind,
};
use super::word::{commutator_relator, equality_relator, Generator, Word};
use super::{Presentation, PresentationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssemblyMode {
    /// Unsimplified four-line and `R_4`/`R_5` blocks; `n` in `{3, 4}` only.
    Raw,
    #[default]
    Simplified,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AssemblyOptions {
    pub mode: AssemblyMode,
    pub commutation: CommutationVariants,
}

impl From<AssemblyMode> for AssemblyOptions {
    fn from(mode: AssemblyMode) -> Self {
        AssemblyOptions {
            mode,
            ..Default::default()
        }
    }
}

/// All relators of `G_1` with provenance, in vertex order (then the
/// disjoint-edge commutators, then the projective relator). Words are
/// reduced modulo the squares; exact repeats are dropped.
pub fn assemble_relators(
    d: &Degeneration,
    options: AssemblyOptions,
) -> Result<Vec<Relator>, PresentationError> {
    d.validate()?;
    if options.mode == AssemblyMode::Raw && !(3..=4).contains(&d.n) {
        return Err(PresentationError::RawModeUnavailable(d.n));
    }
    let mut vertices: Vec<_> = d.vertices.iter().collect();
    vertices.sort_by_key(|v| v.id);

    let mut out: Vec<Relator> = Vec::new();
    for v in vertices {
        let block = match (v.kind, options.mode) {
            (VertexKind::ConicEndpoint, _) => {
                let j = v.lines[0];
                vec![Relator {
                    word: equality_relator(
                        &Word::gen(Generator::plain(j)),
                        &Word::gen(Generator::primed(j)),
                    ),
                    kind: RelatorKind::Equality,
                    source: format!("conic endpoint V{}", v.id),
                }]
            }
            (VertexKind::FourLine, mode) => {
                let lines = [v.lines[0], v.lines[1], v.lines[2], v.lines[3]];
                match mode {
                    AssemblyMode::Raw => fourline_relators_raw(lines)?,
                    AssemblyMode::Simplified => fourline_relators_simplified(lines)?,
                }
            }
            (VertexKind::Zappatic(_), AssemblyMode::Simplified) => {
                zappatic_relators(&v.lines, options.commutation)?
            }
            (VertexKind::Zappatic(_), AssemblyMode::Raw) => match v.lines.len() {
                3 => zappatic_relators_raw_r4(&v.lines)?,
                _ => zappatic_relators_raw_r5(&v.lines)?,
            },
        };
        out.extend(block.into_iter().map(|mut r| {
            r.source = format!("V{}: {}", v.id, r.source);
            r
        }));
    }

    for (i, j) in d.disjoint_line_pairs() {
        for gi in [Generator::plain(i), Generator::primed(i)] {
            for gj in [Generator::plain(j), Generator::primed(j)] {
                out.push(Relator {
                    word: commutator_relator(&Word::gen(gi), &Word::gen(gj)),
                    kind: RelatorKind::Commutator,
                    source: format!("disjoint lines ({i},{j})"),
                });
            }
        }
    }

    let mut ids: Vec<_> = d.line_ids().collect();
    ids.sort_unstable();
    let projective = Word::from_generators(
        ids.iter()
            .rev()
            .flat_map(|&j| [Generator::primed(j), Generator::plain(j)]),
    );
    out.push(Relator {
        word: projective,
        kind: RelatorKind::Projective,
        source: "projective".into(),
    });

    let mut seen = HashSet::new();
    let mut deduped = Vec::with_capacity(out.len());
    for mut r in out {
        r.word = r.word.reduced(true);
        if !r.word.is_empty() && seen.insert(r.word.clone()) {
            deduped.push(r);
        }
    }
    Ok(deduped)
}

/// `G_1 = G / <j^2, j'^2>` for the degeneration, on the alphabet
/// `1, 1', 2, 2', ..., (3n+1), (3n+1)'`.
pub fn assemble_g1(
    d: &Degeneration,
    options: impl Into<AssemblyOptions>,
) -> Result<Presentation, PresentationError> {
    let relators = assemble_relators(d, options.into())?;
    let mut ids: Vec<_> = d.line_ids().collect();
    ids.sort_unstable();
    let alphabet = ids
        .iter()
        .flat_map(|&j| [Generator::plain(j), Generator::primed(j)])
        .collect();
    let p = Presentation::new(
        alphabet,
        relators.into_iter().map(|r| r.word).collect(),
        true,
    );
    p.validate()?;
    Ok(p)
}
