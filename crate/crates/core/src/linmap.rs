//! Sparse exact linear algebra: an incremental row echelon form and linear
//! maps between weight-graded spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalars::{Mode, Scalar, ScalarMatrix};
use crate::weights::Weight;

/// Sparse vector keyed by basis index; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// `v += c * w`, pruning zeros.
pub fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    for (k, x) in w {
        let t = c * x;
        match v.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(*k, t);
                }
            }
        }
    }
}

pub fn scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// Rows in echelon form with unit pivots at their smallest key.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut from = 0usize;
        loop {
            let next = v.range(from..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(k) = next else { break };
            let c = -v[&k].clone();
            axpy(&mut v, &c, &self.rows[self.pivots[&k]]);
            from = k + 1;
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_row(v).is_some()
    }

    /// Like [`Echelon::insert`], returning the new normalised row.
    pub fn insert_row(&mut self, v: SparseVec) -> Option<&SparseVec> {
        let v = self.reduce(v);
        let (&lead, c) = v.iter().next()?;
        let inv = c.inv().expect("nonzero pivot");
        let row = scale(&v, &inv);
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        self.rows.last()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Solves `Σ x_j c_j = b` for fixed sparse columns `c_j`: an echelon form of
/// the columns in which every row remembers its combination of columns.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    rows: Vec<(SparseVec, SparseVec)>,
    pivots: BTreeMap<usize, usize>,
    columns: usize,
}

impl ColumnSolver {
    pub fn new(mode: &Mode, cols: &[SparseVec]) -> Self {
        let mut s = ColumnSolver { rows: Vec::new(), pivots: BTreeMap::new(), columns: cols.len() };
        for (j, c) in cols.iter().enumerate() {
            let (v, comb) = s.reduce(c.clone(), SparseVec::from([(j, mode.one())]));
            if let Some((&lead, x)) = v.iter().next() {
                let inv = x.inv().expect("nonzero pivot");
                s.pivots.insert(lead, s.rows.len());
                s.rows.push((scale(&v, &inv), scale(&comb, &inv)));
            }
        }
        s
    }

    /// Subtracts pivot rows from `v` and adds the same multiples to `comb`
    /// with the opposite sign, keeping `v - Σ comb_j c_j` fixed.
    fn reduce(&self, mut v: SparseVec, mut comb: SparseVec) -> (SparseVec, SparseVec) {
        let mut from = 0usize;
        loop {
            let next = v.range(from..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(k) = next else { break };
            let c = v[&k].clone();
            let (row, rc) = &self.rows[self.pivots[&k]];
            axpy(&mut v, &-c.clone(), row);
            axpy(&mut comb, &-c, rc);
            from = k + 1;
        }
        (v, comb)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn full_column_rank(&self) -> bool {
        self.rows.len() == self.columns
    }

    /// Some solution `x` (unique under full column rank), or `None` if `b`
    /// is not in the column span.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let (v, comb) = self.reduce(b.clone(), SparseVec::new());
        v.is_empty().then(|| comb.into_iter().map(|(j, x)| (j, -x)).collect())
    }
}

/// Linear map between spaces whose bases carry weights, stored by sparse
/// columns. Ranks are computed block by block on the weight grading.
#[derive(Clone, Debug)]
pub struct GradedMap {
    mode: Mode,
    source: Vec<Weight>,
    target: Vec<Weight>,
    cols: Vec<SparseVec>,
}

impl GradedMap {
    pub fn new(mode: &Mode, source: Vec<Weight>, target: Vec<Weight>, cols: Vec<SparseVec>) -> Self {
        assert_eq!(source.len(), cols.len());
        debug_assert!(cols.iter().all(|c| c.keys().all(|&r| r < target.len())));
        GradedMap { mode: mode.clone(), source, target, cols }
    }

    pub fn zero(mode: &Mode, source: Vec<Weight>, target: Vec<Weight>) -> Self {
        let cols = vec![SparseVec::new(); source.len()];
        Self::new(mode, source, target, cols)
    }

    pub fn identity(mode: &Mode, grades: Vec<Weight>) -> Self {
        let cols = (0..grades.len()).map(|i| SparseVec::from([(i, mode.one())])).collect();
        Self::new(mode, grades.clone(), grades, cols)
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn source_dim(&self) -> usize {
        self.source.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target.len()
    }

    pub fn source_grades(&self) -> &[Weight] {
        &self.source
    }

    pub fn target_grades(&self) -> &[Weight] {
        &self.target
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(&r).cloned().unwrap_or_else(|| self.mode.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, x) in v {
            axpy(&mut out, x, &self.cols[*c]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(other.target.len(), self.source.len(), "dimension mismatch in composition");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        GradedMap::new(&self.mode, other.source.clone(), self.target.clone(), cols)
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        assert_eq!((self.source.len(), self.target.len()), (other.source.len(), other.target.len()));
        let minus = -self.mode.one();
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut v = a.clone();
                axpy(&mut v, &minus, b);
                v
            })
            .collect();
        GradedMap::new(&self.mode, self.source.clone(), self.target.clone(), cols)
    }

    pub fn scaled(&self, c: &Scalar) -> GradedMap {
        let cols = self.cols.iter().map(|v| scale(v, c)).collect();
        GradedMap::new(&self.mode, self.source.clone(), self.target.clone(), cols)
    }

    pub fn to_dense(&self) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(&self.mode, self.target.len(), self.source.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    /// Exact rank. Columns are grouped by source weight; when the groups hit
    /// disjoint target rows the rank is the sum of the block ranks.
    pub fn rank(&self) -> usize {
        let mut groups: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
        for (c, w) in self.source.iter().enumerate() {
            groups.entry(w).or_default().push(c);
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut blocks = Vec::new();
        for cols in groups.into_values() {
            let rows: BTreeSet<usize> = cols.iter().flat_map(|&c| self.cols[c].keys().copied()).collect();
            if rows.iter().any(|r| seen.contains(r)) {
                return self.to_dense().rank();
            }
            seen.extend(rows.iter().copied());
            blocks.push((cols, rows));
        }
        blocks
            .iter()
            .map(|(cols, rows)| {
                if rows.is_empty() {
                    return 0;
                }
                let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
                let mut m = ScalarMatrix::zeros(&self.mode, rows.len(), cols.len());
                for (j, &c) in cols.iter().enumerate() {
                    for (r, x) in &self.cols[c] {
                        m.set(index[r], j, x.clone());
                    }
                }
                m.rank()
            })
            .sum()
    }

    pub fn nullity(&self) -> usize {
        self.source.len() - self.rank()
    }
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.len() == other.source.len()
            && self.target.len() == other.target.len()
            && self.cols == other.cols
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(mode: &Mode, entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().filter(|(_, c)| *c != 0).map(|&(k, c)| (k, mode.int(c))).collect()
    }

    #[test]
    fn echelon_tracks_rank_and_membership() {
        let m = Mode::Generic;
        let mut e = Echelon::new();
        assert!(e.insert(v(&m, &[(0, 1), (2, 1)])));
        assert!(e.insert(v(&m, &[(0, 1), (1, 1)])));
        assert!(!e.insert(v(&m, &[(1, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(v(&m, &[(0, 2), (1, 1), (2, 1)])));
        let r = e.reduce(v(&m, &[(0, 1)]));
        assert!(r.keys().all(|k| !e.is_pivot(*k)));
    }

    #[test]
    fn column_solver() {
        let m = Mode::Generic;
        let q = m.q();
        let cols = vec![
            SparseVec::from([(0, q.clone()), (2, m.one())]),
            SparseVec::from([(1, m.int(2)), (2, m.one())]),
            SparseVec::from([(0, q.clone()), (1, m.int(2)), (2, m.int(2))]),
        ];
        let s = ColumnSolver::new(&m, &cols);
        assert_eq!((s.rank(), s.full_column_rank()), (2, false));
        let b = SparseVec::from([(0, &q * &m.int(3)), (1, m.int(-2)), (2, m.int(2))]);
        let x = s.solve(&b).unwrap();
        let mut back = SparseVec::new();
        for (j, c) in &x {
            axpy(&mut back, c, &cols[*j]);
        }
        assert_eq!(back, b);
        assert!(s.solve(&SparseVec::from([(0, m.one())])).is_none());
    }

    #[test]
    fn block_rank_matches_dense_rank() {
        let m = Mode::Generic;
        let q = m.q();
        let g = |c: &[i64]| Weight::new(c.to_vec());
        let source = vec![g(&[1, 0]), g(&[1, 0]), g(&[0, 1])];
        let target = vec![g(&[1, 0]), g(&[1, 0]), g(&[0, 1])];
        let cols = vec![
            SparseVec::from([(0, q.clone()), (1, m.one())]),
            SparseVec::from([(0, &q * &q), (1, q.clone())]),
            SparseVec::from([(2, m.int(3))]),
        ];
        let f = GradedMap::new(&m, source, target, cols);
        assert_eq!(f.rank(), 2);
        assert_eq!(f.to_dense().rank(), 2);
        assert_eq!(f.nullity(), 1);
        let id = GradedMap::identity(&m, f.target_grades().to_vec());
        assert_eq!(id.compose(&f), f);
        assert!(f.sub(&f).is_zero());
    }
}
