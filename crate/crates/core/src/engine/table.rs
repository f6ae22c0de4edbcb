use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::presentation::{Generator, Presentation, Word};

use super::enumerate::{Columns, UNDEF};
use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableStatus {
    Complete,
    Overflow,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub cosets_defined: u64,
    pub peak_live: usize,
    pub coincidences: u64,
    pub compactions: u64,
    pub lookaheads: u64,
    pub wall_time_ms: u64,
}

/// Result of a coset enumeration. A complete table holds the action of
/// every column on the cosets `0..coset_count`, row-major; coset 0 is the
/// subgroup itself. An overflowed table keeps only its statistics.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub(crate) columns: Columns,
    data: Vec<u32>,
    coset_count: usize,
    status: TableStatus,
    stats: EnumerationStats,
}

impl CosetTable {
    pub(crate) fn complete(columns: Columns, data: Vec<u32>, stats: EnumerationStats) -> Self {
        let coset_count = data.len() / columns.count();
        CosetTable {
            columns,
            data,
            coset_count,
            status: TableStatus::Complete,
            stats,
        }
    }

    pub(crate) fn overflow(columns: Columns, live: usize, stats: EnumerationStats) -> Self {
        CosetTable {
            columns,
            data: Vec::new(),
            coset_count: live,
            status: TableStatus::Overflow,
            stats,
        }
    }

    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Index of the subgroup when complete; live cosets at the point of
    /// overflow otherwise.
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn stats(&self) -> &EnumerationStats {
        &self.stats
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.columns.alphabet
    }

    pub fn involutive(&self) -> bool {
        self.columns.involutive
    }

    pub fn column_count(&self) -> usize {
        self.columns.count()
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.data[c as usize * self.columns.count() + x as usize]
    }

    /// Renumbers cosets in breadth-first order from coset 0, scanning
    /// columns left to right. Two tables of the same action become equal.
    pub fn standardize(&mut self) {
        if !self.is_complete() {
            return;
        }
        let ncols = self.columns.count();
        let mut new_id = vec![UNDEF; self.coset_count];
        let mut order = Vec::with_capacity(self.coset_count);
        let mut queue = VecDeque::from([0u32]);
        new_id[0] = 0;
        order.push(0u32);
        while let Some(c) = queue.pop_front() {
            for x in 0..ncols as u32 {
                let d = self.get(c, x);
                if new_id[d as usize] == UNDEF {
                    new_id[d as usize] = order.len() as u32;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &old in &order {
            for x in 0..ncols as u32 {
                data.push(new_id[self.get(old, x) as usize]);
            }
        }
        self.coset_count = order.len();
        self.data = data;
    }

    /// Image of coset `c` under `w`.
    pub fn act(&self, c: u32, w: &Word) -> Result<u32, EngineError> {
        self.require_complete()?;
        let cols = self.columns.encode(w)?;
        Ok(self.trace(c, &cols))
    }

    fn trace(&self, mut c: u32, cols: &[u32]) -> u32 {
        for &x in cols {
            c = self.get(c, x);
        }
        c
    }

    /// The permutation of the cosets induced by `g`.
    pub fn permutation(&self, g: Generator) -> Result<Vec<u32>, EngineError> {
        self.require_complete()?;
        let x = self.columns.column(crate::presentation::Letter {
            generator: g,
            inverse: false,
        })?;
        Ok((0..self.coset_count as u32)
            .map(|c| self.get(c, x))
            .collect())
    }

    fn require_complete(&self) -> Result<(), EngineError> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(EngineError::NotComplete)
        }
    }

    /// Whether `w` fixes every coset. Over the trivial subgroup this is
    /// exactly `w = 1` in the group.
    pub fn is_consequence(&self, w: &Word) -> Result<bool, EngineError> {
        self.is_consequence_with(w, Exec::default())
    }

    pub fn is_consequence_with(&self, w: &Word, exec: Exec) -> Result<bool, EngineError> {
        self.require_complete()?;
        let cols = self.columns.encode(w)?;
        Ok(exec.all(self.coset_count, |c| {
            self.trace(c as u32, &cols) == c as u32
        }))
    }

    /// Every relator of `p` fixes every coset, and in involutive mode every
    /// column is an involution.
    pub fn self_check(&self, p: &Presentation) -> Result<bool, EngineError> {
        self.self_check_with(p, Exec::default())
    }

    pub fn self_check_with(&self, p: &Presentation, exec: Exec) -> Result<bool, EngineError> {
        self.require_complete()?;
        let ncols = self.columns.count() as u32;
        let inv = self.columns.inverse_table();
        let relators = p
            .relators
            .iter()
            .map(|r| self.columns.encode(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(exec.all(self.coset_count, |c| {
            let c = c as u32;
            (0..ncols).all(|x| {
                let d = self.get(c, x);
                d != UNDEF && self.get(d, inv[x as usize]) == c
            }) && relators.iter().all(|r| self.trace(c, r) == c)
        }))
    }

    pub fn to_json(&self) -> String {
        let ncols = self.columns.count().max(1);
        let repr = TableRepr {
            alphabet: self
                .columns
                .alphabet
                .iter()
                .map(|g| g.to_string())
                .collect(),
            involutive: self.columns.involutive,
            coset_count: self.coset_count,
            status: self.status,
            stats: self.stats,
            actions: self.data.chunks(ncols).map(<[u32]>::to_vec).collect(),
        };
        serde_json::to_string(&repr).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<CosetTable, EngineError> {
        let repr: TableRepr =
            serde_json::from_str(s).map_err(|e| EngineError::Format(e.to_string()))?;
        let alphabet = repr
            .alphabet
            .iter()
            .map(|g| g.parse())
            .collect::<Result<Vec<Generator>, _>>()?;
        let columns = Columns::new(&alphabet, repr.involutive);
        let ncols = columns.count();
        if repr.status == TableStatus::Complete {
            if repr.actions.len() != repr.coset_count
                || repr.actions.iter().any(|row| row.len() != ncols)
            {
                return Err(EngineError::Format(
                    "action array has the wrong shape".into(),
                ));
            }
            if repr
                .actions
                .iter()
                .flatten()
                .any(|&d| d as usize >= repr.coset_count)
            {
                return Err(EngineError::Format("coset id out of range".into()));
            }
        }
        Ok(CosetTable {
            columns,
            data: repr.actions.into_iter().flatten().collect(),
            coset_count: repr.coset_count,
            status: repr.status,
            stats: repr.stats,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    alphabet: Vec<String>,
    involutive: bool,
    coset_count: usize,
    status: TableStatus,
    stats: EnumerationStats,
    actions: Vec<Vec<u32>>,
}
