//! Brute-force corner tallies over enumerated bargraphs and set partitions,
//! and exact Stirling / Bell tables.
//!
//! The enumeration is deliberately naive: every object is generated and its
//! corners extracted one by one. This module is the oracle the generating
//! functions are checked against.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bargraph::{corners, enumerate_bargraphs, enumerate_setpartitions, Bargraph, CornerKind};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusRecord {
    pub count: u64,
    pub total_a: u64,
    pub total_b: u64,
    pub per_ab_a: BTreeMap<(u32, u32), u64>,
    pub per_ab_b: BTreeMap<(u32, u32), u64>,
}

impl CensusRecord {
    pub fn tally(&mut self, g: &Bargraph) {
        self.count += 1;
        for c in corners(g) {
            let (total, table) = match c.kind {
                CornerKind::A => (&mut self.total_a, &mut self.per_ab_a),
                CornerKind::B => (&mut self.total_b, &mut self.per_ab_b),
            };
            *total += 1;
            *table.entry((c.a, c.b)).or_insert(0) += 1;
        }
    }

    pub fn merge(&mut self, other: &CensusRecord) {
        self.count += other.count;
        self.total_a += other.total_a;
        self.total_b += other.total_b;
        for (k, v) in &other.per_ab_a {
            *self.per_ab_a.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.per_ab_b {
            *self.per_ab_b.entry(*k).or_insert(0) += v;
        }
    }

    pub fn per_ab(&self, kind: CornerKind, a: u32, b: u32) -> u64 {
        let t = match kind {
            CornerKind::A => &self.per_ab_a,
            CornerKind::B => &self.per_ab_b,
        };
        t.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn total(&self, kind: CornerKind) -> u64 {
        match kind {
            CornerKind::A => self.total_a,
            CornerKind::B => self.total_b,
        }
    }
}

/// Records keyed by `(n, k)`: cells and columns for bargraphs, ground-set
/// size and block count for set partitions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusTable {
    pub rows: BTreeMap<(usize, usize), CensusRecord>,
}

impl CensusTable {
    pub fn get(&self, n: usize, k: usize) -> Option<&CensusRecord> {
        self.rows.get(&(n, k))
    }

    /// Aggregate of every row with the given `n`.
    pub fn by_n(&self, n: usize) -> CensusRecord {
        let mut acc = CensusRecord::default();
        for (_, r) in self.rows.range((n, 0)..=(n, usize::MAX)) {
            acc.merge(r);
        }
        acc
    }

    pub fn merge(&mut self, other: &CensusTable) {
        for (key, r) in &other.rows {
            self.rows.entry(*key).or_default().merge(r);
        }
    }

    pub fn n_max(&self) -> Option<usize> {
        self.rows.keys().map(|&(n, _)| n).max()
    }

    pub fn to_rows(&self) -> Vec<CensusRow> {
        self.rows
            .iter()
            .map(|(&(n, k), r)| CensusRow {
                n,
                k,
                count: r.count,
                total_a: r.total_a,
                total_b: r.total_b,
                per_ab_a: r.per_ab_a.iter().map(|(&(a, b), &c)| [a as u64, b as u64, c]).collect(),
                per_ab_b: r.per_ab_b.iter().map(|(&(a, b), &c)| [a as u64, b as u64, c]).collect(),
            })
            .collect()
    }
}

/// Serialized form of one census row.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    pub count: u64,
    #[serde(rename = "total_A")]
    pub total_a: u64,
    #[serde(rename = "total_B")]
    pub total_b: u64,
    #[serde(rename = "per_ab_A")]
    pub per_ab_a: Vec<[u64; 3]>,
    #[serde(rename = "per_ab_B")]
    pub per_ab_b: Vec<[u64; 3]>,
}

fn bargraph_rows(n: usize, hmax: Option<u32>) -> CensusTable {
    let mut t = CensusTable::default();
    for g in enumerate_bargraphs(n, None, hmax) {
        t.rows.entry((n, g.columns())).or_default().tally(&g);
    }
    t
}

/// Tallies every bargraph with at most `n_max` cells (heights at most `hmax`).
pub fn census_bargraphs(n_max: usize, hmax: Option<u32>) -> CensusTable {
    let parts: Vec<CensusTable> = (0..=n_max)
        .into_par_iter()
        .map(|n| bargraph_rows(n, hmax))
        .collect();
    let mut t = CensusTable::default();
    for p in &parts {
        t.merge(p);
    }
    t
}

/// Tallies every set partition of `[n]`, `n ≤ n_max`, keyed by `(n, blocks)`.
pub fn census_setpartitions(n_max: usize) -> CensusTable {
    let jobs: Vec<(usize, u32)> = (0..=n_max)
        .flat_map(|n| (0..=n as u32).map(move |k| (n, k)))
        .collect();
    let parts: Vec<CensusTable> = jobs
        .into_par_iter()
        .map(|(n, k)| {
            let mut t = CensusTable::default();
            for w in enumerate_setpartitions(n, Some(k)) {
                t.rows.entry((n, k as usize)).or_default().tally(&w.as_bargraph());
            }
            t
        })
        .collect();
    let mut t = CensusTable::default();
    for p in &parts {
        t.merge(p);
    }
    t
}

/// Stirling numbers of the second kind and Bell numbers up to a fixed `n`.
#[derive(Debug, Clone)]
pub struct StirlingBellTable {
    s: Vec<Vec<BigUint>>,
    bell: Vec<BigUint>,
}

impl StirlingBellTable {
    pub fn new(n_max: usize) -> Self {
        let mut s: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        s.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let prev = &s[n - 1];
            let row: Vec<BigUint> = (0..=n)
                .map(|k| {
                    let mut v = BigUint::zero();
                    if k >= 1 {
                        v += &prev[k - 1];
                    }
                    if k < n {
                        v += &prev[k] * BigUint::from(k);
                    }
                    v
                })
                .collect();
            s.push(row);
        }
        let bell = s.iter().map(|row| row.iter().sum()).collect();
        StirlingBellTable { s, bell }
    }

    pub fn n_max(&self) -> usize {
        self.s.len() - 1
    }

    /// `S(n, k)`; zero for `k > n` or negative `k`. Panics beyond the table.
    pub fn stirling(&self, n: usize, k: i64) -> BigUint {
        assert!(n <= self.n_max(), "stirling({n}, {k}) beyond table size {}", self.n_max());
        if k < 0 || k as usize > n {
            BigUint::zero()
        } else {
            self.s[n][k as usize].clone()
        }
    }

    pub fn bell(&self, n: usize) -> BigUint {
        assert!(n <= self.n_max(), "bell({n}) beyond table size {}", self.n_max());
        self.bell[n].clone()
    }
}

pub fn stirling(n: usize, k: usize) -> BigUint {
    StirlingBellTable::new(n).stirling(n, k as i64)
}

pub fn bell(n: usize) -> BigUint {
    StirlingBellTable::new(n).bell(n)
}
