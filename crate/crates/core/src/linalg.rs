//! Exact sparse linear algebra over the rationals.
//!
//! [`Echelon`] keeps an incrementally built row-echelon basis whose rows are
//! normalised so that each pivot is the smallest column of its row and has
//! coefficient one. It backs rank computations, linear solves, span membership
//! and kernels throughout the crate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{axpy, Scalar, SparseVec};

/// Outcome of inserting a row into an [`Echelon`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// The row was independent and now has the given pivot column.
    Pivot(usize),
    /// The row was a combination of previous rows with a compatible right-hand side.
    Dependent,
    /// The row was a combination of previous rows but the right-hand side disagrees.
    Inconsistent,
}

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, Scalar)>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `(row, rhs)` against the current rows.
    fn reduce_with_rhs(&self, mut row: SparseVec, mut rhs: Scalar) -> (SparseVec, Scalar) {
        let mut cursor = 0usize;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, x)) = next else { break };
            let (prow, prhs) = &self.rows[&col];
            axpy(&mut row, &-x.clone(), prow);
            rhs -= x * prhs;
            cursor = col + 1;
        }
        (row, rhs)
    }

    pub fn reduce(&self, row: &SparseVec) -> SparseVec {
        self.reduce_with_rhs(row.clone(), Scalar::zero()).0
    }

    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn insert(&mut self, row: SparseVec) -> Insert {
        self.insert_eq(row, Scalar::zero())
    }

    /// Inserts the equation `row · x = rhs`.
    pub fn insert_eq(&mut self, row: SparseVec, rhs: Scalar) -> Insert {
        let (row, rhs) = self.reduce_with_rhs(row, rhs);
        let Some((&pivot, lead)) = row.iter().next() else {
            if rhs.is_zero() {
                return Insert::Dependent;
            }
            self.inconsistent = true;
            return Insert::Inconsistent;
        };
        let inv = Scalar::one() / lead;
        let row: SparseVec = row.iter().map(|(&c, x)| (c, x * &inv)).collect();
        self.rows.insert(pivot, (row, rhs * inv));
        Insert::Pivot(pivot)
    }

    /// Fully reduced rows: every pivot column is zero in every other row.
    pub fn reduced_rows(&self) -> BTreeMap<usize, (SparseVec, Scalar)> {
        let mut done: BTreeMap<usize, (SparseVec, Scalar)> = BTreeMap::new();
        for (&p, (row, rhs)) in self.rows.iter().rev() {
            let mut row = row.clone();
            let mut rhs = rhs.clone();
            let hits: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(c, _)| **c != p && done.contains_key(c))
                .map(|(c, x)| (*c, x.clone()))
                .collect();
            for (c, x) in hits {
                let (prow, prhs) = &done[&c];
                axpy(&mut row, &-x.clone(), prow);
                rhs -= x * prhs;
            }
            done.insert(p, (row, rhs));
        }
        done
    }

    /// The solution with all free variables set to zero, if consistent.
    pub fn particular(&self) -> Option<SparseVec> {
        if self.inconsistent {
            return None;
        }
        Some(
            self.reduced_rows()
                .into_iter()
                .filter(|(_, (_, rhs))| !rhs.is_zero())
                .map(|(p, (_, rhs))| (p, rhs))
                .collect(),
        )
    }

    /// Basis of the solution space of the homogeneous system over the columns
    /// `0..ncols`, one vector per free column in increasing order.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let reduced = self.reduced_rows();
        // column -> list of (pivot, coefficient) for rows that contain it
        let mut by_col: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (&p, (row, _)) in &reduced {
            for (&c, x) in row {
                if c != p {
                    by_col.entry(c).or_default().push((p, x.clone()));
                }
            }
        }
        (0..ncols)
            .filter(|c| !reduced.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, Scalar::one());
                if let Some(entries) = by_col.get(&free) {
                    for (p, x) in entries {
                        v.insert(*p, -x.clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of the span of `rows`.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Kernel of the linear map sending the `j`-th domain vector to `images[j]`.
/// Kernel vectors are returned as coordinate vectors over `0..images.len()`.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let offset = images
        .iter()
        .filter_map(|v| v.keys().next_back())
        .max()
        .map_or(0, |m| m + 1);
    let mut e = Echelon::new();
    for (j, w) in images.iter().enumerate() {
        let mut row = w.clone();
        row.insert(offset + j, Scalar::one());
        e.insert(row);
    }
    e.reduced_rows()
        .into_iter()
        .filter(|(p, _)| *p >= offset)
        .map(|(_, (row, _))| row.into_iter().map(|(c, x)| (c - offset, x)).collect())
        .collect()
}

/// Solves `Σ_j y_j · columns[j] = target`, returning `y` if solvable.
pub fn solve_combination(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    // unknowns y_j; one equation per coordinate of the ambient space
    let mut eqs: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (&r, x) in col {
            eqs.entry(r).or_default().insert(j, x.clone());
        }
    }
    let mut e = Echelon::new();
    for (r, row) in &eqs {
        let rhs = target.get(r).cloned().unwrap_or_else(Scalar::zero);
        e.insert_eq(row.clone(), rhs);
    }
    for (r, x) in target {
        if !eqs.contains_key(r) && !x.is_zero() {
            return None;
        }
    }
    e.particular()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, unit_vec};

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, x)| (c, int(x))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn kernel_of_sum_map() {
        // (a, b, c) -> a + b + c
        let images = vec![unit_vec(0), unit_vec(0), unit_vec(0)];
        let k = kernel(&images);
        assert_eq!(k.len(), 2);
        for vec in &k {
            let s: Scalar = vec.values().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_and_nullspace() {
        // x0 + x1 = 3, x1 - x2 = 1
        let mut e = Echelon::new();
        e.insert_eq(v(&[(0, 1), (1, 1)]), int(3));
        e.insert_eq(v(&[(1, 1), (2, -1)]), int(1));
        let p = e.particular().unwrap();
        assert_eq!(p.get(&0).cloned().unwrap_or_default() + p.get(&1).cloned().unwrap_or_default(), int(3));
        let ns = e.nullspace(3);
        assert_eq!(ns.len(), 1);
        let n = &ns[0];
        assert_eq!(n[&2], int(1));
        assert_eq!(n[&1], int(1));
        assert_eq!(n[&0], int(-1));
    }

    #[test]
    fn inconsistent_system() {
        let mut e = Echelon::new();
        e.insert_eq(v(&[(0, 1)]), int(1));
        assert_eq!(e.insert_eq(v(&[(0, 2)]), int(3)), Insert::Inconsistent);
        assert!(e.particular().is_none());
    }

    #[test]
    fn combination_solver() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)])];
        let y = solve_combination(&cols, &v(&[(0, 2), (1, 5)])).unwrap();
        assert_eq!(y[&0], int(2));
        assert_eq!(y[&1], int(3));
        assert!(solve_combination(&cols, &v(&[(2, 1)])).is_none());
    }
}
