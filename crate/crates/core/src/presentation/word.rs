use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::degeneration::LineId;

use super::PresentationError;

/// A standard generator `j` or `j'` attached to line `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub line: LineId,
    pub primed: bool,
}

impl Generator {
    pub const fn plain(line: LineId) -> Self {
        Generator {
            line,
            primed: false,
        }
    }

    pub const fn primed(line: LineId) -> Self {
        Generator { line, primed: true }
    }

    /// The other generator on the same line.
    pub const fn partner(self) -> Self {
        Generator {
            line: self.line,
            primed: !self.primed,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.line, if self.primed { "'" } else { "" })
    }
}

impl FromStr for Generator {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (digits, primed) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let line = digits
            .parse::<LineId>()
            .ok()
            .filter(|l| *l > 0)
            .ok_or_else(|| PresentationError::Parse(format!("bad generator {s:?}")))?;
        Ok(Generator { line, primed })
    }
}

impl serde::Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A generator with exponent `+1` (`inverse == false`) or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: Generator) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub const fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (g, inverse) = match s.strip_suffix("^-1") {
            Some(g) => (g, true),
            None => (s, false),
        };
        Ok(Letter {
            generator: g.parse()?,
            inverse,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Word(vec![Letter::new(g)])
    }

    pub fn from_generators(gens: impl IntoIterator<Item = Generator>) -> Self {
        Word(gens.into_iter().map(Letter::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Inverse in a group where every generator is an involution: the reversal.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.0.iter().map(|l| l.generator).collect()
    }

    pub fn occurrences(&self, g: Generator) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    /// Free reduction. In involutive mode exponents are dropped first (each
    /// generator is its own inverse) and equal neighbours cancel.
    pub fn reduced(&self, involutive: bool) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            let l = if involutive {
                Letter::new(l.generator)
            } else {
                l
            };
            match out.last() {
                Some(&top) if top == l.inv() || (involutive && top == l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self, involutive: bool) -> Word {
        let w = self.reduced(involutive);
        let v = &w.0;
        let cancels = |a: Letter, b: Letter| a == b.inv() || (involutive && a == b);
        let (mut lo, mut hi) = (0usize, v.len());
        while hi - lo >= 2 && cancels(v[lo], v[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(v[lo..hi].to_vec())
    }

    /// Representative of the class of a relator under cyclic rotation and
    /// inversion, after cyclic reduction. Two relators with equal
    /// canonical forms have the same normal closure.
    pub fn canonical_relator(&self, involutive: bool) -> Word {
        let w = self.cyclically_reduced(involutive);
        if w.is_empty() {
            return w;
        }
        let inv = if involutive {
            w.reversed()
        } else {
            w.inverse()
        };
        let best_w = min_rotation(&w.0);
        let best_i = min_rotation(&inv.0);
        std::cmp::min(best_w, best_i)
    }

    /// Replaces every occurrence of `g` by `replacement` (and `g^-1` by its
    /// inverse), without reducing.
    pub fn substitute(&self, g: Generator, replacement: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if l.generator == g {
                if l.inverse {
                    out.extend(replacement.inverse().0);
                } else {
                    out.extend_from_slice(&replacement.0);
                }
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn has_inverse_letters(&self) -> bool {
        self.0.iter().any(|l| l.inverse)
    }

    /// Parses whitespace-separated tokens like `7' 2 4^-1`.
    pub fn parse(s: &str) -> Result<Word, PresentationError> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

fn min_rotation(v: &[Letter]) -> Word {
    let n = v.len();
    let mut best = 0;
    for start in 1..n {
        let ord = (0..n)
            .map(|k| v[(start + k) % n].cmp(&v[(best + k) % n]))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if ord == Ordering::Less {
            best = start;
        }
    }
    Word((0..n).map(|k| v[(best + k) % n]).collect())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

/// `x y x y^-1 x^-1 y^-1`: the relator of `xyx = yxy`.
pub fn braid_relator(x: &Word, y: &Word) -> Word {
    let mut w = x.concat(y).concat(x);
    w = w
        .concat(&y.inverse())
        .concat(&x.inverse())
        .concat(&y.inverse());
    w
}

/// `x y x^-1 y^-1`.
pub fn commutator_relator(x: &Word, y: &Word) -> Word {
    x.concat(y).concat(&x.inverse()).concat(&y.inverse())
}

/// `u = v` as the relator `u v^-1`.
pub fn equality_relator(u: &Word, v: &Word) -> Word {
    u.concat(&v.inverse())
}
