use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::cyclo::{CycloElt, Cyclotomic};
use super::poly::{self, IntPoly};
use super::{Mode, Repr, Scalar};

/// Dense matrix of scalars sharing one [`Mode`].
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    mode: Mode,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ScalarMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ScalarMatrix {
    pub fn zeros(mode: &Mode, rows: usize, cols: usize) -> Self {
        ScalarMatrix { mode: mode.clone(), rows, cols, data: vec![mode.zero(); rows * cols] }
    }

    pub fn identity(mode: &Mode, n: usize) -> Self {
        let mut m = Self::zeros(mode, n, n);
        for i in 0..n {
            m.set(i, i, mode.one());
        }
        m
    }

    pub fn from_rows(mode: &Mode, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for x in row {
                assert_eq!(&x.mode(), mode, "matrix entry in wrong mode");
                data.push(x);
            }
        }
        ScalarMatrix { mode: mode.clone(), rows: r, cols: c, data }
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.mode, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(&self.mode, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.mode.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    ///
    /// Generic-mode rows are first scaled into `Z[q]`; cyclotomic entries are
    /// eliminated in `Q(ζ)` with the same cross-multiplication scheme.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match &self.mode {
            Mode::Generic => {
                let rows: Vec<Vec<IntPoly>> = (0..self.rows).map(|r| integral_row(self.row(r))).collect();
                bareiss_rank(rows, &PolyDomain)
            }
            Mode::RootOfUnity(f) => {
                let rows: Vec<Vec<CycloElt>> = (0..self.rows)
                    .map(|r| {
                        self.row(r)
                            .iter()
                            .map(|s| match &s.0 {
                                Repr::Cyclo(_, c) => c.clone(),
                                Repr::Generic(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect();
                bareiss_rank(rows, &CycloDomain(f))
            }
        }
    }

    /// Reduced row echelon form over the field together with pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pj = m.get(r, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * pj);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.mode.zero(); self.cols];
                v[f] = self.mode.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(&self.mode, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.mode.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Scales a generic-mode row by a common denominator and a power of `q` so
/// that every entry is a polynomial in `Z[q]`.
fn integral_row(row: &[Scalar]) -> Vec<IntPoly> {
    let rats: Vec<&super::ratfunc::RatFunc> = row
        .iter()
        .map(|s| match &s.0 {
            Repr::Generic(r) => r,
            Repr::Cyclo(..) => unreachable!(),
        })
        .collect();
    let min_shift = rats.iter().filter(|r| !r.is_zero()).map(|r| r.shift).min().unwrap_or(0);
    let mut den: IntPoly = vec![BigInt::one()];
    for r in rats.iter().filter(|r| !r.is_zero()) {
        if !poly::is_one(&r.den) {
            let g = poly::gcd(&den, &r.den);
            den = poly::mul(&den, &poly::div_exact(&r.den, &g).unwrap());
        }
    }
    rats.iter()
        .map(|r| {
            if r.is_zero() {
                return Vec::new();
            }
            let factor = poly::div_exact(&den, &r.den).unwrap();
            poly::shift_up(&poly::mul(&r.num, &factor), (r.shift - min_shift) as usize)
        })
        .collect()
}

trait Domain {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a*b - c*d`
    fn cross(&self, a: &Self::E, b: &Self::E, c: &Self::E, d: &Self::E) -> Self::E;
    fn div_exact(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct PolyDomain;

impl Domain for PolyDomain {
    type E = IntPoly;
    fn zero(&self) -> IntPoly {
        Vec::new()
    }
    fn one(&self) -> IntPoly {
        vec![BigInt::one()]
    }
    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_empty()
    }
    fn cross(&self, a: &IntPoly, b: &IntPoly, c: &IntPoly, d: &IntPoly) -> IntPoly {
        poly::sub(&poly::mul(a, b), &poly::mul(c, d))
    }
    fn div_exact(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        poly::div_exact(a, b).expect("Bareiss quotient is exact")
    }
}

struct CycloDomain<'a>(&'a Cyclotomic);

impl Domain for CycloDomain<'_> {
    type E = CycloElt;
    fn zero(&self) -> CycloElt {
        CycloElt::zero()
    }
    fn one(&self) -> CycloElt {
        CycloElt::from_int(BigInt::one())
    }
    fn is_zero(&self, a: &CycloElt) -> bool {
        a.is_zero()
    }
    fn cross(&self, a: &CycloElt, b: &CycloElt, c: &CycloElt, d: &CycloElt) -> CycloElt {
        a.mul(b, self.0).add(&c.mul(d, self.0).neg())
    }
    fn div_exact(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        a.mul(&b.inv(self.0).expect("nonzero pivot"), self.0)
    }
}

fn bareiss_rank<D: Domain>(mut a: Vec<Vec<D::E>>, dom: &D) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = dom.one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !dom.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = dom.cross(&pivot_row[c], &row[j], &lead, &pivot_row[j]);
                row[j] = if dom.is_zero(&v) { v } else { dom.div_exact(&v, &prev) };
            }
            row[c] = dom.zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let g = Mode::Generic;
        assert_eq!(ScalarMatrix::zeros(&g, 0, 0).rank(), 0);
        assert_eq!(ScalarMatrix::identity(&g, 3).rank(), 3);
        let q = g.q();
        let m = ScalarMatrix::from_rows(&g, vec![vec![q.clone(), g.one()], vec![q.pow(2), q.clone()]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let z = Mode::root_of_unity(5).unwrap();
        let q = z.q();
        let m = ScalarMatrix::from_rows(
            &z,
            vec![
                vec![z.zero(), q.clone(), z.one()],
                vec![z.zero(), q.pow(2), q.clone()],
                vec![z.zero(), z.zero(), z.one()],
            ],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().1, vec![1, 2]);
    }

    #[test]
    fn solve_and_kernel() {
        let g = Mode::Generic;
        let q = g.q();
        let m = ScalarMatrix::from_rows(&g, vec![vec![g.one(), q.clone()], vec![q.clone(), q.pow(2)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
        let x = m.solve(&[g.one(), q.clone()]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![g.one(), q.clone()]);
        assert!(m.solve(&[g.one(), g.one()]).is_none());
    }
}
