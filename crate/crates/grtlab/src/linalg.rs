//! Exact rational Gaussian elimination.
//!
//! [`RowSpace`] maintains a reduced row echelon form incrementally: every
//! stored row has leading coefficient 1 at its pivot column and zeros at all
//! other pivot columns, so rows stay sparse whenever the complement of the
//! row space is small. Pivot columns are chosen in ascending column order,
//! which makes quotient coordinates deterministic across runs.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::rational::Rat;

/// Sparse vector: strictly ascending column indices, nonzero values.
pub type SparseVec = Vec<(usize, Rat)>;

/// Incrementally built reduced row echelon form over the rationals.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: Vec<SparseVec>,
    row_of_pivot: HashMap<usize, usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in ascending order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.row_of_pivot.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// The reduced rows, in insertion order.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the row space; the remainder is supported on
    /// non-pivot columns only.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Rat> = v.into_iter().collect();
        let mut cursor = 0usize;
        loop {
            let hit = work
                .range(cursor..)
                .find(|(c, _)| self.row_of_pivot.contains_key(c))
                .map(|(&c, coeff)| (c, coeff.clone()));
            let (col, coeff) = match hit {
                Some(h) => h,
                None => break,
            };
            let row = &self.rows[self.row_of_pivot[&col]];
            for (c, val) in row {
                let entry = work.entry(*c).or_insert_with(Rat::zero);
                *entry -= &coeff * val;
                if entry.is_zero() {
                    work.remove(c);
                }
            }
            debug_assert!(!work.contains_key(&col));
            cursor = col;
        }
        work.into_iter().collect()
    }

    /// Inserts `v`; returns `true` if it enlarged the row space (i.e. its
    /// reduction against the current rows was nonzero).
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let reduced = self.reduce(v);
        let (pivot_col, pivot_val) = match reduced.first() {
            Some((c, val)) => (*c, val.clone()),
            None => return false,
        };
        let inv = Rat::one() / pivot_val;
        let new_row: SparseVec = reduced
            .into_iter()
            .map(|(c, val)| (c, val * &inv))
            .collect();

        // Keep the form reduced: clear the new pivot column from all rows.
        for row in &mut self.rows {
            let coeff = match row.binary_search_by_key(&pivot_col, |(c, _)| *c) {
                Ok(idx) => row[idx].1.clone(),
                Err(_) => continue,
            };
            let mut merged: BTreeMap<usize, Rat> =
                row.iter().map(|(c, v)| (*c, v.clone())).collect();
            for (c, val) in &new_row {
                let entry = merged.entry(*c).or_insert_with(Rat::zero);
                *entry -= &coeff * val;
                if entry.is_zero() {
                    merged.remove(c);
                }
            }
            *row = merged.into_iter().collect();
        }

        self.row_of_pivot.insert(pivot_col, self.rows.len());
        self.rows.push(new_row);
        true
    }
}

/// Kernel of a growing list of dense linear constraints on `n` unknowns.
#[derive(Debug, Clone)]
pub struct RationalKernel {
    n: usize,
    space: RowSpace,
}

impl RationalKernel {
    pub fn new(n: usize) -> Self {
        RationalKernel {
            n,
            space: RowSpace::new(),
        }
    }

    pub fn add_constraint(&mut self, row: Vec<Rat>) {
        assert_eq!(row.len(), self.n);
        let sparse: SparseVec = row
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.space.insert(sparse);
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// Kernel basis as dense vectors, one per free column, each normalized
    /// so its first nonzero coordinate is 1.
    pub fn basis(&self) -> Vec<Vec<Rat>> {
        let pivots = self.space.pivot_columns();
        let mut out = Vec::new();
        for free in 0..self.n {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.n];
            v[free] = Rat::one();
            for (p, row_idx) in &self.space.row_of_pivot {
                let row = &self.space.rows[*row_idx];
                if let Ok(idx) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[*p] = -row[idx].1.clone();
                }
            }
            let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap();
            for c in &mut v {
                *c /= lead.clone();
            }
            out.push(v);
        }
        out
    }
}
