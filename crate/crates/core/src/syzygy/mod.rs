//! Graded Betti numbers through Koszul homology, and the homological
//! verdicts (depth, Cohen–Macaulay, type, Gorenstein) read off a table.

mod koszul;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use koszul::{koszul_betti, koszul_betti_named};

/// Nonzero `β_{n,j}` grouped by homological degree `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub rows: BTreeMap<usize, BTreeMap<u32, u64>>,
    pub koszul_variables: Vec<String>,
    /// `(max_n, max_j)` of the computed cells.
    pub window: (usize, u32),
    /// Whether the window provably holds the whole table (Euler identity
    /// against the Hilbert series, all homological degrees present).
    pub certified: bool,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), u64)>, window: (usize, u32)) -> Self {
        let mut t = Self { window, ..Self::default() };
        for ((n, j), b) in entries {
            t.add(n, j, b);
        }
        t
    }

    pub(crate) fn add(&mut self, n: usize, j: u32, b: u64) {
        if b > 0 {
            *self.rows.entry(n).or_default().entry(j).or_default() += b;
        }
    }

    pub fn get(&self, n: usize, j: u32) -> u64 {
        self.rows.get(&n).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.rows.iter().flat_map(|(n, r)| r.iter().map(move |(j, b)| ((*n, *j), *b)))
    }

    /// Largest `n` with a nonzero entry.
    pub fn proj_dim(&self) -> Option<usize> {
        self.rows.keys().next_back().copied()
    }

    pub fn row_total(&self, n: usize) -> u64 {
        self.rows.get(&n).map_or(0, |r| r.values().sum())
    }

    /// `Σ (−1)^n β_{n,j} t^j` as a coefficient list.
    pub fn euler_polynomial(&self) -> Vec<i64> {
        let mut p: Vec<i64> = Vec::new();
        for ((n, j), b) in self.entries() {
            let j = j as usize;
            if p.len() <= j {
                p.resize(j + 1, 0);
            }
            let b = b as i64;
            p[j] += if n % 2 == 0 { b } else { -b };
        }
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    /// Entrywise equality, ignoring metadata.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(zero)");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|(n, r)| {
                let cells: Vec<String> = r.iter().map(|(j, b)| format!("{j}: {b}")).collect();
                format!("{n}: {{{}}}", cells.join(", "))
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub proj_dim: usize,
    pub depth: usize,
    pub dimension: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
    pub cm_type: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomologicalVerdict {
    Certified(Verdicts),
    Inconclusive(String),
}

impl HomologicalVerdict {
    pub fn certified(&self) -> Option<&Verdicts> {
        match self {
            HomologicalVerdict::Certified(v) => Some(v),
            HomologicalVerdict::Inconclusive(_) => None,
        }
    }
}

/// Auslander–Buchsbaum over the polynomial ring on the Koszul variables.
pub fn homological_verdicts(table: &BettiTable, dim: usize, n_vars: usize) -> HomologicalVerdict {
    if !table.certified {
        return HomologicalVerdict::Inconclusive("Betti window not certified".into());
    }
    let Some(pd) = table.proj_dim() else {
        return HomologicalVerdict::Inconclusive("zero module".into());
    };
    if pd > n_vars {
        return HomologicalVerdict::Inconclusive(format!("projective dimension {pd} exceeds {n_vars} variables"));
    }
    let depth = n_vars - pd;
    let is_cm = depth == dim;
    let cm_type = table.row_total(pd);
    HomologicalVerdict::Certified(Verdicts {
        proj_dim: pd,
        depth,
        dimension: dim,
        is_cm,
        is_gorenstein: is_cm && cm_type == 1,
        cm_type,
    })
}
