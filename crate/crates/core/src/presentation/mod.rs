//! Words, relator families and presentations of `G_1`.

mod assemble;
mod families;
mod tietze;
mod word;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::degeneration::{DegenerationError, LineId};

pub use assemble::{assemble_g1, assemble_relators, AssemblyMode, AssemblyOptions};
pub use families::{
    fourline_relators_raw, fourline_relators_simplified, zappatic_relators,
    zappatic_relators_raw_r4, zappatic_relators_raw_r5, CommutationVariants, Relator, RelatorKind,
};
pub use tietze::{tietze_simplify, tietze_simplify_with, TietzeOptions, TietzeResult};
pub use word::{braid_relator, commutator_relator, equality_relator, Generator, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator {0} used in a relator is not in the alphabet")]
    UnknownGenerator(Generator),
    #[error("involutive presentation carries an inverse letter in relator {0}")]
    InverseInInvolutive(usize),
    #[error("{family} needs {expected} lines, got {got}")]
    Arity {
        family: &'static str,
        expected: String,
        got: usize,
    },
    #[error("lines of a vertex must be distinct: {0:?}")]
    RepeatedLine(Vec<LineId>),
    #[error("raw assembly is only available for n in {{3, 4}} (got n = {0})")]
    RawModeUnavailable(u32),
    #[error("presentation must be involutive for this operation")]
    NotInvolutive,
    #[error("no defining relator for generator {0}")]
    NoDefiningRelator(Generator),
    #[error("target generator {0} is not in the alphabet")]
    UnknownTarget(Generator),
    #[error(transparent)]
    Degeneration(#[from] DegenerationError),
}

/// A finitely presented group. With `involutive` set, every generator is
/// implicitly an involution (this is `G_1`, the quotient by all squares).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Vec<Generator>,
    pub relators: Vec<Word>,
    pub involutive: bool,
}

impl Presentation {
    pub fn new(alphabet: Vec<Generator>, relators: Vec<Word>, involutive: bool) -> Self {
        Presentation {
            alphabet,
            relators,
            involutive,
        }
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        let known: BTreeSet<Generator> = self.alphabet.iter().copied().collect();
        for (i, r) in self.relators.iter().enumerate() {
            if let Some(g) = r.generators().into_iter().find(|g| !known.contains(g)) {
                return Err(PresentationError::UnknownGenerator(g));
            }
            if self.involutive && r.has_inverse_letters() {
                return Err(PresentationError::InverseInInvolutive(i));
            }
        }
        Ok(())
    }

    pub fn generator_set(&self) -> BTreeSet<Generator> {
        self.alphabet.iter().copied().collect()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Canonical forms of the non-trivial relators, for set comparisons.
    pub fn canonical_relator_set(&self) -> BTreeSet<Word> {
        self.relators
            .iter()
            .map(|r| r.canonical_relator(self.involutive))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// The sub-presentation on `gens`: those generators and every relator
    /// that only mentions them. Its group maps onto the subgroup generated by
    /// `gens`, so identities proved in it hold here as well.
    pub fn restricted_to(&self, gens: &BTreeSet<Generator>) -> Presentation {
        Presentation {
            alphabet: self
                .alphabet
                .iter()
                .copied()
                .filter(|g| gens.contains(g))
                .collect(),
            relators: self
                .relators
                .iter()
                .filter(|r| r.generators().is_subset(gens))
                .cloned()
                .collect(),
            involutive: self.involutive,
        }
    }

    /// Text format: `gens:` header, `involutive:` flag, one relator per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("gens:");
        for g in &self.alphabet {
            let _ = write!(out, " {g}");
        }
        out.push('\n');
        let _ = writeln!(out, "involutive: {}", self.involutive);
        for r in &self.relators {
            let _ = writeln!(out, "{r}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Presentation, PresentationError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix("gens:"))
            .ok_or_else(|| PresentationError::Parse("missing `gens:` header".into()))?;
        let alphabet = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Generator>, _>>()?;
        let flag = lines
            .next()
            .and_then(|l| l.strip_prefix("involutive:"))
            .ok_or_else(|| PresentationError::Parse("missing `involutive:` line".into()))?;
        let involutive = match flag.trim() {
            "true" => true,
            "false" => false,
            other => {
                return Err(PresentationError::Parse(format!(
                    "bad involutive flag {other:?}"
                )))
            }
        };
        let relators = lines.map(Word::parse).collect::<Result<Vec<_>, _>>()?;
        let p = Presentation {
            alphabet,
            relators,
            involutive,
        };
        p.validate()?;
        Ok(p)
    }

    /// GAP-style source: a free group on `gN`/`gNp` names and the relator
    /// list, with the squares written out in involutive mode.
    pub fn to_gap(&self) -> String {
        let name = |g: &Generator| format!("g{}{}", g.line, if g.primed { "p" } else { "" });
        let mut out = String::new();
        let names: Vec<String> = self
            .alphabet
            .iter()
            .map(|g| format!("\"{}\"", name(g)))
            .collect();
        let _ = writeln!(out, "F := FreeGroup({});;", names.join(", "));
        for (i, g) in self.alphabet.iter().enumerate() {
            let _ = writeln!(out, "{} := F.{};;", name(g), i + 1);
        }
        let mut rels: Vec<String> = Vec::new();
        if self.involutive {
            rels.extend(self.alphabet.iter().map(|g| format!("{}^2", name(g))));
        }
        for r in &self.relators {
            if r.is_empty() {
                continue;
            }
            let body: Vec<String> = r
                .letters()
                .iter()
                .map(|l| {
                    if l.inverse {
                        format!("{}^-1", name(&l.generator))
                    } else {
                        name(&l.generator)
                    }
                })
                .collect();
            rels.push(body.join("*"));
        }
        let _ = writeln!(out, "G := F / [\n  {}\n];;", rels.join(",\n  "));
        out
    }
}
