//! Vertex-local relator families.
//!
//! Every relation `u = v` becomes the relator `u v^-1`, `<x,y> = e` the braid
//! relator and `[x,y] = e` the commutator. Chained relations are expanded
//! link by link, in the order they are written in the source lists.

use std::collections::BTreeSet;

use crate::degeneration::LineId;

use super::word::{braid_relator, commutator_relator, equality_relator, Generator, Letter, Word};
use super::PresentationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelatorKind {
    /// Cusp relation `<x,y> = e`.
    Braid,
    /// Node relation `[x,y] = e`.
    Commutator,
    /// `u = v`, including branch-point relations `j = j'`.
    Equality,
    /// The global product relation.
    Projective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub kind: RelatorKind,
    /// Which block of which family produced it, e.g. `four-line block 9`.
    pub source: String,
}

/// Which primed variants of the non-adjacent commutators a Zappatic vertex emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CommutationVariants {
    /// `[i,j], [i,j'], [i',j], [i',j']` for every pair `j >= i + 2`.
    #[default]
    Full,
    /// Only the forms written out: all four for the pair `(1,3)`,
    /// `[i,j], [i',j]` for the others.
    AsListed,
}

/// Parses a word over local labels (`a`..`d` or local numbers), e.g.
/// `"b' b a' b^-1"`, mapping labels to global lines.
struct Local<F: Fn(&str) -> LineId> {
    resolve: F,
}

impl<F: Fn(&str) -> LineId> Local<F> {
    fn w(&self, spec: &str) -> Word {
        Word(
            spec.split_whitespace()
                .map(|tok| {
                    let (tok, inverse) = match tok.strip_suffix("^-1") {
                        Some(t) => (t, true),
                        None => (tok, false),
                    };
                    let (label, primed) = match tok.strip_suffix('\'') {
                        Some(l) => (l, true),
                        None => (tok, false),
                    };
                    Letter {
                        generator: Generator {
                            line: (self.resolve)(label),
                            primed,
                        },
                        inverse,
                    }
                })
                .collect(),
        )
    }

    fn braid(&self, x: &str, y: &str, source: &str) -> Relator {
        Relator {
            word: braid_relator(&self.w(x), &self.w(y)),
            kind: RelatorKind::Braid,
            source: source.to_string(),
        }
    }

    fn comm(&self, x: &str, y: &str, source: &str) -> Relator {
        Relator {
            word: commutator_relator(&self.w(x), &self.w(y)),
            kind: RelatorKind::Commutator,
            source: source.to_string(),
        }
    }

    fn eq(&self, u: &str, v: &str, source: &str) -> Relator {
        Relator {
            word: equality_relator(&self.w(u), &self.w(v)),
            kind: RelatorKind::Equality,
            source: source.to_string(),
        }
    }
}

fn check_distinct(lines: &[LineId]) -> Result<(), PresentationError> {
    let set: BTreeSet<_> = lines.iter().collect();
    if set.len() != lines.len() {
        return Err(PresentationError::RepeatedLine(lines.to_vec()));
    }
    Ok(())
}

fn abcd(lines: [LineId; 4]) -> Result<Local<impl Fn(&str) -> LineId>, PresentationError> {
    check_distinct(&lines)?;
    Ok(Local {
        resolve: move |label: &str| match label {
            "a" => lines[0],
            "b" => lines[1],
            "c" => lines[2],
            "d" => lines[3],
            other => panic!("unknown local label {other}"),
        },
    })
}

fn numbered(lines: &[LineId]) -> Local<impl Fn(&str) -> LineId + '_> {
    Local {
        resolve: move |label: &str| {
            let i: usize = label.parse().expect("numeric local label");
            lines[i - 1]
        },
    }
}

/// The twelve relation blocks of a four-line point in `G`, before any
/// squares are imposed. Returns 20 relators: four triples of cusps, four
/// nodes and four equalities.
pub fn fourline_relators_raw(lines: [LineId; 4]) -> Result<Vec<Relator>, PresentationError> {
    let l = abcd(lines)?;
    Ok(vec![
        l.braid("a'", "b", "four-line block 1"),
        l.braid("a'", "b'", "four-line block 1"),
        l.braid("a'", "b^-1 b' b", "four-line block 1"),
        l.braid("c", "d", "four-line block 2"),
        l.braid("c'", "d", "four-line block 2"),
        l.braid("c^-1 c' c", "d", "four-line block 2"),
        l.comm("b' b a' b^-1 b'^-1", "d", "four-line block 3"),
        l.comm(
            "b' b a' b^-1 b'^-1",
            "c^-1 c'^-1 d^-1 d' d c' c",
            "four-line block 4",
        ),
        l.braid("a", "b", "four-line block 5"),
        l.braid("a", "b'", "four-line block 5"),
        l.braid("a", "b^-1 b' b", "four-line block 5"),
        l.braid("c", "d^-1 d' d", "four-line block 6"),
        l.braid("c'", "d^-1 d' d", "four-line block 6"),
        l.braid("c^-1 c' c", "d^-1 d' d", "four-line block 6"),
        l.comm("b' b a b^-1 b'^-1", "d^-1 d' d", "four-line block 7"),
        l.comm(
            "b' b a b^-1 b'^-1",
            "c^-1 c'^-1 d^-1 d'^-1 d d' d c' c",
            "four-line block 8",
        ),
        l.eq(
            "b' b a' b a'^-1 b^-1 b'^-1",
            "d c' d^-1",
            "four-line block 9",
        ),
        l.eq(
            "b' b a' b' a'^-1 b^-1 b'^-1",
            "d c' c c'^-1 d^-1",
            "four-line block 10",
        ),
        l.eq(
            "b' b a b a^-1 b^-1 b'^-1",
            "d^-1 d' d c' d^-1 d'^-1 d",
            "four-line block 11",
        ),
        l.eq(
            "b' b a b' a^-1 b^-1 b'^-1",
            "d^-1 d' d c' c c'^-1 d^-1 d'^-1 d",
            "four-line block 12",
        ),
    ])
}

/// The four-line family in `G_1` once `b = b'` holds: four cusps around the
/// cycle `a-b-d-c`, nodes `[b,c]`, `[a,d]`, and the rewriting rules
/// `c = c'`, `a' = bdcdb`, `d' = dcabacd`.
pub fn fourline_relators_simplified(lines: [LineId; 4]) -> Result<Vec<Relator>, PresentationError> {
    let l = abcd(lines)?;
    Ok(vec![
        l.eq("c", "c'", "four-line b=b' (c=c')"),
        l.braid("a", "b", "four-line b=b' cusp"),
        l.braid("b", "d", "four-line b=b' cusp"),
        l.braid("d", "c", "four-line b=b' cusp"),
        l.braid("c", "a", "four-line b=b' cusp"),
        l.comm("b", "c", "four-line b=b' rule"),
        l.comm("a", "d", "four-line b=b' rule"),
        l.eq("a'", "b d c d b", "four-line b=b' rule"),
        l.eq("d'", "d c a b a c d", "four-line b=b' rule"),
    ])
}

/// Relations of an `R_{k}` Zappatic point in `G_1`, for its `k - 1 >= 3`
/// lines given in local order.
pub fn zappatic_relators(
    lines: &[LineId],
    variants: CommutationVariants,
) -> Result<Vec<Relator>, PresentationError> {
    let n = lines.len();
    if n < 3 {
        return Err(PresentationError::Arity {
            family: "Zappatic relators",
            expected: "at least 3".into(),
            got: n,
        });
    }
    check_distinct(lines)?;
    let l = numbered(lines);
    let src = "zappatic (braid)";
    let mut out = vec![
        l.braid("1'", "2", src),
        l.braid("1'", "2'", src),
        l.braid("1'", "2 2' 2", src),
        l.braid("2'", "3", src),
        l.braid("3", "2' 2 2' 1' 2' 2 2'", src),
        l.braid("2", "3", src),
    ];
    for i in 3..n {
        out.push(l.braid(&format!("{i}"), &format!("{}", i + 1), src));
        out.push(l.braid(&format!("{i}'"), &format!("{}", i + 1), src));
    }

    let src = "zappatic (rewriting)";
    out.push(l.eq("1", "2' 2 1' 2 2'", src));
    out.push(l.eq("3 3' 3", "2' 2 3 2 2'", src));
    for i in 4..=n {
        let p = i - 1;
        out.push(l.eq(
            &format!("{i} {i}' {i}"),
            &format!("{p}' {p} {i}' {p} {p}'"),
            src,
        ));
    }

    let src = "zappatic (commutation)";
    for i in 1..=n {
        for j in i + 2..=n {
            let all_four = variants == CommutationVariants::Full || (i, j) == (1, 3);
            out.push(l.comm(&format!("{i}"), &format!("{j}"), src));
            if all_four {
                out.push(l.comm(&format!("{i}"), &format!("{j}'"), src));
            }
            out.push(l.comm(&format!("{i}'"), &format!("{j}"), src));
            if all_four {
                out.push(l.comm(&format!("{i}'"), &format!("{j}'"), src));
            }
        }
    }
    Ok(out)
}

/// Unsimplified relations of an `R_4` point (three lines).
pub fn zappatic_relators_raw_r4(lines: &[LineId]) -> Result<Vec<Relator>, PresentationError> {
    if lines.len() != 3 {
        return Err(PresentationError::Arity {
            family: "raw R4 relators",
            expected: "3".into(),
            got: lines.len(),
        });
    }
    check_distinct(lines)?;
    let l = numbered(lines);
    Ok(vec![
        l.braid("1'", "2", "R4 block 1"),
        l.braid("1'", "2'", "R4 block 1"),
        l.braid("1'", "2 2' 2", "R4 block 1"),
        l.eq("1", "2' 2 1' 2 2'", "R4 block 2"),
        l.braid("2' 2 1' 2 1' 2 2'", "3", "R4 block 3"),
        l.braid("2' 2 1' 2' 1' 2 2'", "3", "R4 block 3"),
        l.braid("2' 2 1' 2 2' 2 1' 2 2'", "3", "R4 block 3"),
        l.eq(
            "3'",
            "3 2' 2 1' 2' 2 1' 2 2' 3 2' 2 1' 2 2' 1' 2 2' 3",
            "R4 block 4",
        ),
        l.comm("1", "3", "R4 block 5"),
        l.comm("1", "3'", "R4 block 5"),
        l.comm("1'", "3", "R4 block 5"),
        l.comm("1'", "3'", "R4 block 5"),
    ])
}

/// Unsimplified relations of an `R_5` point (four lines): the `R_4` block on
/// the first three lines followed by the relations involving the fourth.
pub fn zappatic_relators_raw_r5(lines: &[LineId]) -> Result<Vec<Relator>, PresentationError> {
    if lines.len() != 4 {
        return Err(PresentationError::Arity {
            family: "raw R5 relators",
            expected: "4".into(),
            got: lines.len(),
        });
    }
    check_distinct(lines)?;
    let mut out = zappatic_relators_raw_r4(&lines[..3])?;
    let l = numbered(lines);
    let src = "R5 fourth line";
    out.extend([
        l.comm("1", "4 3 4", src),
        l.comm("1", "4 3' 4", src),
        l.comm("1'", "4 3 4", src),
        l.comm("1'", "4 3' 4", src),
        l.braid("3", "4", src),
        l.braid("3'", "4", src),
        l.braid("3 3' 3", "4", src),
        l.comm("2' 2 1 2 2'", "4", src),
        l.comm("2' 2 1' 2 2'", "4", src),
        l.comm("2", "4", src),
        l.comm("2'", "4", src),
        l.comm("3' 3 2' 2 1 2 2' 3 3'", "4 4' 4", src),
        l.comm("3' 3 2' 2 1' 2 2' 3 3'", "4 4' 4", src),
        l.comm("3' 3 2 3 3'", "4 4' 4", src),
        l.comm("3' 3 2' 3 3'", "4 4' 4", src),
        l.eq("4 4' 4", "3' 3 4' 3 3'", src),
    ]);
    Ok(out)
}
