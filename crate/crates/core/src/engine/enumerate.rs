//! Todd–Coxeter coset enumeration.
//!
//! The table keeps one column per letter: one per generator for involutive
//! presentations (each generator is its own inverse), two per generator
//! otherwise. Cosets are numbered in order of definition and never reused;
//! the live ones are threaded on a doubly linked list in that order.
//! Coincidences follow the usual merge/representative scheme with a queue.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use crate::presentation::{Generator, Letter, Presentation, Word};

use super::table::{CosetTable, EnumerationStats};
use super::{EngineError, EnumerationConfig, Strategy};

pub(crate) const UNDEF: u32 = u32::MAX;
const NIL: u32 = u32::MAX;
/// Felsch keeps the most recent gaps of length one as preferred definitions.
const PREFERRED_CAP: usize = 256;

/// Maps words over the presentation alphabet to column sequences.
#[derive(Debug, Clone)]
pub(crate) struct Columns {
    pub alphabet: Vec<Generator>,
    pub involutive: bool,
}

impl Columns {
    pub fn new(alphabet: &[Generator], involutive: bool) -> Self {
        Columns {
            alphabet: alphabet.to_vec(),
            involutive,
        }
    }

    pub fn count(&self) -> usize {
        if self.involutive {
            self.alphabet.len()
        } else {
            2 * self.alphabet.len()
        }
    }

    pub fn inverse_table(&self) -> Vec<u32> {
        (0..self.count() as u32)
            .map(|c| if self.involutive { c } else { c ^ 1 })
            .collect()
    }

    pub fn column(&self, l: Letter) -> Result<u32, EngineError> {
        let idx = self
            .alphabet
            .iter()
            .position(|g| *g == l.generator)
            .ok_or(EngineError::UnknownGenerator(l.generator))? as u32;
        Ok(if self.involutive {
            idx
        } else {
            2 * idx + l.inverse as u32
        })
    }

    pub fn encode(&self, w: &Word) -> Result<Vec<u32>, EngineError> {
        let w = w.reduced(self.involutive);
        w.letters().iter().map(|l| self.column(*l)).collect()
    }
}

struct Enumerator {
    ncols: usize,
    inv: Vec<u32>,
    table: Vec<u32>,
    parent: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    head: u32,
    tail: u32,
    live: usize,
    max_live: usize,
    stats: EnumerationStats,
    deductions: Vec<(u32, u32)>,
    record_deductions: bool,
    preferred: VecDeque<(u32, u32)>,
}

#[derive(Debug)]
struct Overflow;

impl Enumerator {
    fn new(ncols: usize, inv: Vec<u32>, max_live: usize, record_deductions: bool) -> Self {
        let mut e = Enumerator {
            ncols,
            inv,
            table: Vec::new(),
            parent: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            head: NIL,
            tail: NIL,
            live: 0,
            max_live,
            stats: EnumerationStats::default(),
            deductions: Vec::new(),
            record_deductions,
            preferred: Default::default(),
        };
        e.new_coset().expect("room for the first coset");
        e
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.table[c as usize * self.ncols + x as usize] = d;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32, Overflow> {
        if self.live >= self.max_live {
            return Err(Overflow);
        }
        let c = self.parent.len() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.parent.push(c);
        self.next.push(NIL);
        self.prev.push(self.tail);
        if self.tail != NIL {
            self.next[self.tail as usize] = c;
        } else {
            self.head = c;
        }
        self.tail = c;
        self.live += 1;
        self.stats.cosets_defined += 1;
        self.stats.peak_live = self.stats.peak_live.max(self.live);
        Ok(c)
    }

    fn unlink(&mut self, c: u32) {
        let (p, n) = (self.prev[c as usize], self.next[c as usize]);
        if p != NIL {
            self.next[p as usize] = n;
        } else {
            self.head = n;
        }
        if n != NIL {
            self.prev[n as usize] = p;
        } else {
            self.tail = p;
        }
        self.live -= 1;
    }

    /// Defines `c^x` as a new coset.
    fn define(&mut self, c: u32, x: u32) -> Result<u32, Overflow> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, self.inv[x as usize], c);
        if self.record_deductions {
            self.deductions.push((c, x));
        }
        Ok(d)
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut l = k;
        while self.parent[l as usize] != l {
            l = self.parent[l as usize];
        }
        let mut m = k;
        while self.parent[m as usize] != l {
            let n = self.parent[m as usize];
            self.parent[m as usize] = l;
            m = n;
        }
        l
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.stats.coincidences += 1;
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            self.unlink(e);
            for x in 0..self.ncols as u32 {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                let xi = self.inv[x as usize];
                if self.get(f, xi) == e {
                    self.set(f, xi, UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let e1x = self.get(e1, x);
                if e1x != UNDEF {
                    self.merge(f1, e1x, &mut queue);
                    continue;
                }
                let f1xi = self.get(f1, xi);
                if f1xi != UNDEF {
                    self.merge(e1, f1xi, &mut queue);
                    continue;
                }
                self.set(e1, x, f1);
                self.set(f1, xi, e1);
                if self.record_deductions {
                    self.deductions.push((e1, x));
                }
            }
        }
    }

    /// Scans `w` at `c` without defining cosets; fills a single gap and
    /// reports coincidences.
    fn scan(&mut self, c: u32, w: &[u32]) {
        let r = w.len();
        let mut f = c;
        let mut i = 0;
        while i < r {
            let t = self.get(f, w[i]);
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == r {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = r;
        while j > i {
            let t = self.get(b, self.inv[w[j - 1] as usize]);
            if t == UNDEF {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            let x = w[i];
            self.set(f, x, b);
            self.set(b, self.inv[x as usize], f);
            if self.record_deductions {
                self.deductions.push((f, x));
            }
        } else if j == i + 2 && self.record_deductions {
            // defining f^w[i] would close this cycle at once
            if self.preferred.len() >= PREFERRED_CAP {
                self.preferred.pop_front();
            }
            self.preferred.push_back((f, w[i]));
        }
    }

    /// Scans `w` at `c`, defining cosets until the cycle closes.
    fn scan_and_fill(&mut self, c: u32, w: &[u32]) -> Result<(), Overflow> {
        let r = w.len();
        let mut f = c;
        let mut i = 0;
        let mut b = c;
        let mut j = r;
        loop {
            while i < j {
                let t = self.get(f, w[i]);
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let t = self.get(b, self.inv[w[j - 1] as usize]);
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, self.inv[x as usize], f);
                if self.record_deductions {
                    self.deductions.push((f, x));
                }
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn first_hole(&self, from: u32) -> Option<(u32, u32)> {
        let mut c = from;
        while c != NIL {
            if self.alive(c) {
                for x in 0..self.ncols as u32 {
                    if self.get(c, x) == UNDEF {
                        return Some((c, x));
                    }
                }
            }
            c = self.next[c as usize];
        }
        None
    }

    fn next_alive(&self, mut c: u32) -> u32 {
        while c != NIL && !self.alive(c) {
            c = self.next[c as usize];
        }
        c
    }

    /// Renumbers live cosets `0..live` in list order once more than half of
    /// the allocated ids are dead. Returns the new id of `keep`.
    fn maybe_compact(&mut self, keep: u32) -> u32 {
        let allocated = self.parent.len();
        if allocated < 4096 || (allocated - self.live) * 2 <= allocated {
            return keep;
        }
        debug_assert!(self.deductions.is_empty());
        self.preferred.clear();
        self.stats.compactions += 1;
        let mut new_id = vec![UNDEF; allocated];
        let mut order = Vec::with_capacity(self.live);
        let mut c = self.head;
        while c != NIL {
            new_id[c as usize] = order.len() as u32;
            order.push(c);
            c = self.next[c as usize];
        }
        let mut table = Vec::with_capacity(order.len() * self.ncols);
        for &old in &order {
            let row = &self.table[old as usize * self.ncols..(old as usize + 1) * self.ncols];
            table.extend(row.iter().map(|&t| {
                if t == UNDEF {
                    UNDEF
                } else {
                    new_id[t as usize]
                }
            }));
        }
        let n = order.len() as u32;
        self.table = table;
        self.parent = (0..n).collect();
        self.next = (1..=n).map(|i| if i == n { NIL } else { i }).collect();
        self.prev = (0..n).map(|i| if i == 0 { NIL } else { i - 1 }).collect();
        self.head = if n == 0 { NIL } else { 0 };
        self.tail = if n == 0 { NIL } else { n - 1 };
        if keep == NIL {
            NIL
        } else {
            new_id[keep as usize]
        }
    }

    fn process_deductions(&mut self, conjugates: &[Vec<Vec<u32>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.alive(c) {
                continue;
            }
            for w in &conjugates[x as usize] {
                self.scan(c, w);
                if !self.alive(c) {
                    break;
                }
            }
        }
    }

    fn felsch(&mut self, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> Result<(), Overflow> {
        let conjugates = conjugates_by_column(relators, &self.inv, self.ncols);
        for w in subgroup {
            self.scan_and_fill(0, w)?;
            self.process_deductions(&conjugates);
        }
        let mut cursor = self.head;
        loop {
            if let Some((c, x)) = self.pop_preferred() {
                self.define(c, x)?;
                self.process_deductions(&conjugates);
                continue;
            }
            match self.first_hole(self.next_alive(cursor)) {
                Some((c, x)) => {
                    cursor = c;
                    self.define(c, x)?;
                    self.process_deductions(&conjugates);
                    cursor = self.next_alive(cursor);
                    if cursor == NIL {
                        cursor = self.head;
                    }
                    cursor = self.maybe_compact(cursor);
                }
                None => match self.first_hole(self.head) {
                    Some(_) => cursor = self.head,
                    None => return Ok(()),
                },
            }
        }
    }

    fn pop_preferred(&mut self) -> Option<(u32, u32)> {
        while let Some((c, x)) = self.preferred.pop_front() {
            if self.alive(c) && self.get(c, x) == UNDEF {
                return Some((c, x));
            }
        }
        None
    }

    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        self.stats.lookaheads += 1;
        let mut c = self.head;
        while c != NIL {
            for w in relators {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, w);
            }
            c = self.next_alive(self.next[c as usize]);
        }
    }

    fn hlt(&mut self, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> Result<(), Overflow> {
        for w in subgroup {
            self.with_lookahead(relators, |e| e.scan_and_fill(0, w))?;
        }
        loop {
            let mut c = self.head;
            while c != NIL {
                for w in relators {
                    if !self.alive(c) {
                        break;
                    }
                    self.with_lookahead(relators, |e| {
                        if e.alive(c) {
                            e.scan_and_fill(c, w)
                        } else {
                            Ok(())
                        }
                    })?;
                }
                if self.alive(c) {
                    for x in 0..self.ncols as u32 {
                        self.with_lookahead(relators, |e| {
                            if e.alive(c) && e.get(c, x) == UNDEF {
                                e.define(c, x)?;
                            }
                            Ok(())
                        })?;
                    }
                }
                let next = self.next_alive(self.next[c as usize]);
                c = self.maybe_compact(next);
            }
            if self.first_hole(self.head).is_none() {
                return Ok(());
            }
        }
    }

    /// Runs `step`; on overflow, tries one lookahead pass and retries once.
    fn with_lookahead(
        &mut self,
        relators: &[Vec<u32>],
        mut step: impl FnMut(&mut Self) -> Result<(), Overflow>,
    ) -> Result<(), Overflow> {
        match step(self) {
            Ok(()) => Ok(()),
            Err(Overflow) => {
                let before = self.live;
                self.lookahead(relators);
                if self.live < before {
                    step(self)
                } else {
                    Err(Overflow)
                }
            }
        }
    }
}

/// For each column, the distinct cyclic conjugates (of relators and their
/// inverses) that start with it.
fn conjugates_by_column(relators: &[Vec<u32>], inv: &[u32], ncols: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new(); ncols];
    let mut seen = HashSet::new();
    for w in relators {
        let inverse: Vec<u32> = w.iter().rev().map(|&x| inv[x as usize]).collect();
        for base in [w.clone(), inverse] {
            for k in 0..base.len() {
                let mut rot = base.clone();
                rot.rotate_left(k);
                if seen.insert(rot.clone()) {
                    out[rot[0] as usize].push(rot);
                }
            }
        }
    }
    out
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group of `p`.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[Word],
    cfg: &EnumerationConfig,
) -> Result<CosetTable, EngineError> {
    p.validate().map_err(EngineError::Presentation)?;
    let columns = Columns::new(&p.alphabet, p.involutive);
    if columns.count() == 0 {
        return Err(EngineError::EmptyAlphabet);
    }
    let relators: Vec<Vec<u32>> = p
        .relators
        .iter()
        .map(|w| columns.encode(&w.cyclically_reduced(p.involutive)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let subgroup: Vec<Vec<u32>> = subgroup
        .iter()
        .map(|w| columns.encode(w))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();

    let started = Instant::now();
    let mut e = Enumerator::new(
        columns.count(),
        columns.inverse_table(),
        cfg.max_cosets.max(1),
        cfg.strategy == Strategy::Felsch,
    );
    let result = match cfg.strategy {
        Strategy::Felsch => e.felsch(&relators, &subgroup),
        Strategy::HltLookahead => e.hlt(&relators, &subgroup),
    };
    let mut stats = e.stats;
    stats.wall_time_ms = started.elapsed().as_millis() as u64;

    match result {
        Err(Overflow) => Ok(CosetTable::overflow(columns, e.live, stats)),
        Ok(()) => {
            let mut order = Vec::with_capacity(e.live);
            let mut c = e.head;
            while c != NIL {
                order.push(c);
                c = e.next[c as usize];
            }
            let mut new_id = vec![UNDEF; e.parent.len()];
            for (i, &c) in order.iter().enumerate() {
                new_id[c as usize] = i as u32;
            }
            let ncols = e.ncols;
            let mut data = Vec::with_capacity(order.len() * ncols);
            for &c in &order {
                for x in 0..ncols as u32 {
                    data.push(new_id[e.get(c, x) as usize]);
                }
            }
            drop(e);
            let mut table = CosetTable::complete(columns, data, stats);
            table.standardize();
            Ok(table)
        }
    }
}
