//! Combinatorial model of the degenerated surface `R_{n+1} ∪ R_{n+1}`.
//!
//! Two fans of `n+1` planes each (top `T_1..T_{n+1}`, bottom `B_1..B_{n+1}`)
//! are glued along the horizontal edges `T_i ∩ B_i`. The `3n+1` lines of the
//! branch curve `S_0` are the edges shared by two planes, and the `n+4`
//! vertices are the two Zappatic points, two conic endpoints and `n`
//! four-line points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type LineId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegenerationError {
    #[error("n must be at least 3 (got {0})")]
    ParameterTooSmall(u32),
    #[error("invalid plane label {0:?}")]
    BadPlane(String),
    #[error("invalid vertex kind {0:?}")]
    BadKind(String),
    #[error("line ids must be exactly 1..={expected}, found {found:?}")]
    LineIds { expected: u32, found: Vec<LineId> },
    #[error("vertex ids must be exactly 1..={expected}, found {found:?}")]
    VertexIds { expected: u32, found: Vec<u32> },
    #[error("line {0} must join two distinct planes of the degeneration")]
    LineIncidence(LineId),
    #[error("vertex V{vertex} of kind {kind} carries {got} lines, expected {expected}")]
    VertexArity {
        vertex: u32,
        kind: VertexKind,
        got: usize,
        expected: usize,
    },
    #[error("vertex V{0} references an unknown line or repeats a line")]
    VertexLines(u32),
    #[error("four-line vertex V{0} is not in local order a < b < c < d")]
    LocalOrder(u32),
    #[error("expected 2 Zappatic, 2 conic-endpoint and {n} four-line vertices, found {zappatic}/{conic}/{four_line}")]
    VertexCensus {
        n: u32,
        zappatic: usize,
        conic: usize,
        four_line: usize,
    },
    #[error("line {0} lies on no vertex")]
    IsolatedLine(LineId),
    #[error("lines {0} and {1} share more than one vertex")]
    SharedTwice(LineId, LineId),
    #[error("plane list does not match the 2n+2 planes T1..T(n+1), B1..B(n+1)")]
    Planes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Bottom,
}

/// A plane of the degeneration, written `T3` / `B1` in documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneLabel {
    pub side: Side,
    pub index: u32,
}

impl PlaneLabel {
    pub const fn top(index: u32) -> Self {
        PlaneLabel {
            side: Side::Top,
            index,
        }
    }

    pub const fn bottom(index: u32) -> Self {
        PlaneLabel {
            side: Side::Bottom,
            index,
        }
    }

    /// Position in the fixed enumeration `T_1..T_{n+1}, B_1..B_{n+1}` (1-based).
    pub fn number(&self, n: u32) -> u32 {
        match self.side {
            Side::Top => self.index,
            Side::Bottom => n + 1 + self.index,
        }
    }
}

impl fmt::Display for PlaneLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Top => 'T',
            Side::Bottom => 'B',
        };
        write!(f, "{s}{}", self.index)
    }
}

impl FromStr for PlaneLabel {
    type Err = DegenerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DegenerationError::BadPlane(s.to_string());
        let mut chars = s.chars();
        let side = match chars.next() {
            Some('T') => Side::Top,
            Some('B') => Side::Bottom,
            _ => return Err(bad()),
        };
        let index: u32 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(PlaneLabel { side, index })
    }
}

impl Serialize for PlaneLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PlaneLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    pub id: LineId,
    pub planes: [PlaneLabel; 2],
}

/// Singularity type of a vertex. Serialized as `zappatic:<k>`, `four_line`
/// or `conic_endpoint`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Zappatic(u32),
    FourLine,
    ConicEndpoint,
}

impl VertexKind {
    pub fn arity(&self) -> usize {
        match self {
            VertexKind::Zappatic(k) => (*k as usize).saturating_sub(1),
            VertexKind::FourLine => 4,
            VertexKind::ConicEndpoint => 1,
        }
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::Zappatic(k) => write!(f, "zappatic:{k}"),
            VertexKind::FourLine => f.write_str("four_line"),
            VertexKind::ConicEndpoint => f.write_str("conic_endpoint"),
        }
    }
}

impl FromStr for VertexKind {
    type Err = DegenerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "four_line" => Ok(VertexKind::FourLine),
            "conic_endpoint" => Ok(VertexKind::ConicEndpoint),
            _ => s
                .strip_prefix("zappatic:")
                .and_then(|k| k.parse().ok())
                .filter(|k| *k >= 2)
                .map(VertexKind::Zappatic)
                .ok_or_else(|| DegenerationError::BadKind(s.to_string())),
        }
    }
}

impl Serialize for VertexKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u32,
    pub kind: VertexKind,
    /// Lines through the vertex in local order.
    pub lines: Vec<LineId>,
}

/// How a pair of lines at a vertex enters the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRole {
    /// Cusp: triple (braid) relation, transpositions must overlap in one plane.
    Braid,
    /// Node: commutator, transpositions must be disjoint.
    Commute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degeneration {
    pub n: u32,
    pub planes: Vec<PlaneLabel>,
    pub lines: Vec<LineRecord>,
    pub vertices: Vec<VertexRecord>,
}

/// Builds the canonical degeneration for parameter `n` (`k = n + 1` planes per fan).
pub fn build_family(n: u32) -> Result<Degeneration, DegenerationError> {
    if n < 3 {
        return Err(DegenerationError::ParameterTooSmall(n));
    }
    let planes = (1..=n + 1)
        .map(PlaneLabel::top)
        .chain((1..=n + 1).map(PlaneLabel::bottom))
        .collect();

    let mut incidence: BTreeMap<LineId, [PlaneLabel; 2]> = BTreeMap::new();
    for i in 1..=n {
        incidence.insert(2 * i - 1, [PlaneLabel::top(i), PlaneLabel::top(i + 1)]);
    }
    for i in 1..=n + 1 {
        incidence.insert(2 * i, [PlaneLabel::top(i), PlaneLabel::bottom(i)]);
    }
    incidence.insert(2 * n + 1, [PlaneLabel::bottom(1), PlaneLabel::bottom(2)]);
    for i in 1..n {
        incidence.insert(
            2 * n + 2 + i,
            [PlaneLabel::bottom(i + 1), PlaneLabel::bottom(i + 2)],
        );
    }
    let lines = incidence
        .into_iter()
        .map(|(id, planes)| LineRecord { id, planes })
        .collect();

    let bottom_interior = |i: u32| if i == 0 { 2 * n + 1 } else { 2 * n + 2 + i };
    let mut vertices = vec![
        VertexRecord {
            id: 1,
            kind: VertexKind::Zappatic(n + 1),
            lines: (1..=n).map(|i| 2 * i - 1).collect(),
        },
        VertexRecord {
            id: 2,
            kind: VertexKind::Zappatic(n + 1),
            lines: (0..n).map(bottom_interior).collect(),
        },
        VertexRecord {
            id: 3,
            kind: VertexKind::ConicEndpoint,
            lines: vec![2],
        },
        VertexRecord {
            id: 4,
            kind: VertexKind::ConicEndpoint,
            lines: vec![2 * n + 2],
        },
    ];
    for i in 0..n {
        vertices.push(VertexRecord {
            id: 5 + i,
            kind: VertexKind::FourLine,
            lines: vec![2 * i + 1, 2 * i + 2, 2 * i + 4, bottom_interior(i)],
        });
    }
    Ok(Degeneration {
        n,
        planes,
        lines,
        vertices,
    })
}

impl Degeneration {
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, id: LineId) -> Option<&LineRecord> {
        self.lines.iter().find(|l| l.id == id)
    }

    pub fn vertex(&self, id: u32) -> Option<&VertexRecord> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn line_ids(&self) -> impl Iterator<Item = LineId> + '_ {
        self.lines.iter().map(|l| l.id)
    }

    /// Checks every structural invariant; used on imported documents.
    pub fn validate(&self) -> Result<(), DegenerationError> {
        let n = self.n;
        if n < 3 {
            return Err(DegenerationError::ParameterTooSmall(n));
        }
        let expected_planes: BTreeSet<PlaneLabel> = (1..=n + 1)
            .map(PlaneLabel::top)
            .chain((1..=n + 1).map(PlaneLabel::bottom))
            .collect();
        let planes: BTreeSet<PlaneLabel> = self.planes.iter().copied().collect();
        if planes != expected_planes || self.planes.len() != expected_planes.len() {
            return Err(DegenerationError::Planes);
        }

        let mut ids: Vec<LineId> = self.lines.iter().map(|l| l.id).collect();
        ids.sort_unstable();
        if ids != (1..=3 * n + 1).collect::<Vec<_>>() {
            return Err(DegenerationError::LineIds {
                expected: 3 * n + 1,
                found: ids,
            });
        }
        for l in &self.lines {
            let [p, q] = l.planes;
            if p == q || !planes.contains(&p) || !planes.contains(&q) {
                return Err(DegenerationError::LineIncidence(l.id));
            }
        }

        let mut vids: Vec<u32> = self.vertices.iter().map(|v| v.id).collect();
        vids.sort_unstable();
        if vids != (1..=n + 4).collect::<Vec<_>>() {
            return Err(DegenerationError::VertexIds {
                expected: n + 4,
                found: vids,
            });
        }
        let (mut zap, mut conic, mut four) = (0, 0, 0);
        for v in &self.vertices {
            match v.kind {
                VertexKind::Zappatic(_) => zap += 1,
                VertexKind::ConicEndpoint => conic += 1,
                VertexKind::FourLine => four += 1,
            }
            let expected = v.kind.arity();
            if v.lines.len() != expected {
                return Err(DegenerationError::VertexArity {
                    vertex: v.id,
                    kind: v.kind,
                    got: v.lines.len(),
                    expected,
                });
            }
            let distinct: BTreeSet<_> = v.lines.iter().collect();
            if distinct.len() != v.lines.len() || v.lines.iter().any(|l| *l == 0 || *l > 3 * n + 1)
            {
                return Err(DegenerationError::VertexLines(v.id));
            }
            if v.kind == VertexKind::FourLine && !v.lines.windows(2).all(|w| w[0] < w[1]) {
                return Err(DegenerationError::LocalOrder(v.id));
            }
        }
        if (zap, conic, four) != (2, 2, n as usize) {
            return Err(DegenerationError::VertexCensus {
                n,
                zappatic: zap,
                conic,
                four_line: four,
            });
        }

        let mut seen = BTreeSet::new();
        let mut shared: BTreeSet<(LineId, LineId)> = BTreeSet::new();
        for v in &self.vertices {
            seen.extend(v.lines.iter().copied());
            for (i, &x) in v.lines.iter().enumerate() {
                for &y in &v.lines[i + 1..] {
                    let key = (x.min(y), x.max(y));
                    if !shared.insert(key) {
                        return Err(DegenerationError::SharedTwice(key.0, key.1));
                    }
                }
            }
        }
        if let Some(l) = self.line_ids().find(|l| !seen.contains(l)) {
            return Err(DegenerationError::IsolatedLine(l));
        }
        Ok(())
    }

    /// Unordered pairs of lines sharing a vertex.
    fn vertex_sharing_pairs(&self) -> BTreeSet<(LineId, LineId)> {
        let mut shared = BTreeSet::new();
        for v in &self.vertices {
            for (i, &x) in v.lines.iter().enumerate() {
                for &y in &v.lines[i + 1..] {
                    shared.insert((x.min(y), x.max(y)));
                }
            }
        }
        shared
    }

    /// Pairs of lines with no common vertex, in lexicographic order. Each
    /// contributes the commutators of the disjoint-edge rule.
    pub fn disjoint_line_pairs(&self) -> Vec<(LineId, LineId)> {
        let shared = self.vertex_sharing_pairs();
        let mut ids: Vec<LineId> = self.line_ids().collect();
        ids.sort_unstable();
        let mut out = Vec::new();
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i + 1..] {
                if !shared.contains(&(x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Line id -> its two planes, as numbers in `1..=2n+2` (all `T_i`
    /// first, then all `B_i`), smaller number first.
    pub fn transposition_map(&self) -> TranspositionMap {
        self.lines
            .iter()
            .map(|l| {
                let p = l.planes[0].number(self.n);
                let q = l.planes[1].number(self.n);
                (l.id, (p.min(q), p.max(q)))
            })
            .collect()
    }

    pub fn degree(&self) -> u32 {
        2 * self.n + 2
    }

    /// Whether the planes are connected through the lines. Transpositions
    /// along a connected graph generate the full symmetric group.
    pub fn transposition_graph_connected(&self) -> bool {
        let tmap = self.transposition_map();
        graph_connected(self.degree(), tmap.values().copied())
    }

    /// Checks the plane assignment against the cusp/node roles of every
    /// vertex-local pair and of every disjoint pair.
    pub fn monodromy_consistency_check(&self) -> MonodromyReport {
        let tmap = self.transposition_map();
        let mut checked = 0;
        let mut check = |vertex: Option<u32>, x: LineId, y: LineId, role: PairRole| {
            checked += 1;
            let (Some(&s), Some(&t)) = (tmap.get(&x), tmap.get(&y)) else {
                return Some(MonodromyViolation {
                    vertex,
                    lines: (x, y),
                    role,
                });
            };
            let common = [s.0, s.1]
                .iter()
                .filter(|p| **p == t.0 || **p == t.1)
                .count();
            let ok = match role {
                PairRole::Braid => common == 1,
                PairRole::Commute => common == 0,
            };
            (!ok).then_some(MonodromyViolation {
                vertex,
                lines: (x, y),
                role,
            })
        };
        let mut vertices: Vec<&VertexRecord> = self.vertices.iter().collect();
        vertices.sort_by_key(|v| v.id);
        for v in vertices {
            for (x, y, role) in vertex_line_pairs(v) {
                if let Some(violation) = check(Some(v.id), x, y, role) {
                    return MonodromyReport {
                        pairs_checked: checked,
                        violation: Some(violation),
                    };
                }
            }
        }
        for (x, y) in self.disjoint_line_pairs() {
            if let Some(violation) = check(None, x, y, PairRole::Commute) {
                return MonodromyReport {
                    pairs_checked: checked,
                    violation: Some(violation),
                };
            }
        }
        MonodromyReport {
            pairs_checked: checked,
            violation: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("degeneration serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

pub type TranspositionMap = BTreeMap<LineId, (u32, u32)>;

/// Union-find connectivity over `1..=points`.
pub fn graph_connected(points: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> bool {
    let mut parent: Vec<u32> = (0..=points).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut components = points;
    for (a, b) in edges {
        if a == 0 || b == 0 || a > points || b > points {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra as usize] = rb;
            components -= 1;
        }
    }
    components <= 1
}

/// Single-line pairs at a vertex together with their relation type:
/// the four-line cycle `a-b-d-c-a` of cusps with nodes `(b,c)`, `(a,d)`, and
/// for a Zappatic vertex cusps between consecutive lines, nodes otherwise.
pub fn vertex_line_pairs(v: &VertexRecord) -> Vec<(LineId, LineId, PairRole)> {
    match v.kind {
        VertexKind::FourLine => {
            let [a, b, c, d] = [v.lines[0], v.lines[1], v.lines[2], v.lines[3]];
            vec![
                (a, b, PairRole::Braid),
                (b, d, PairRole::Braid),
                (d, c, PairRole::Braid),
                (c, a, PairRole::Braid),
                (b, c, PairRole::Commute),
                (a, d, PairRole::Commute),
            ]
        }
        VertexKind::Zappatic(_) => {
            let mut out = Vec::new();
            for (i, &x) in v.lines.iter().enumerate() {
                for (j, &y) in v.lines.iter().enumerate().skip(i + 1) {
                    let role = if j == i + 1 {
                        PairRole::Braid
                    } else {
                        PairRole::Commute
                    };
                    out.push((x, y, role));
                }
            }
            out
        }
        VertexKind::ConicEndpoint => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyViolation {
    /// `None` for a disjoint-edge pair.
    pub vertex: Option<u32>,
    pub lines: (LineId, LineId),
    pub role: PairRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyReport {
    pub pairs_checked: usize,
    pub violation: Option<MonodromyViolation>,
}

impl MonodromyReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}
