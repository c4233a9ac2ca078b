//! Exact dense linear algebra over the rationals.
//!
//! Everything downstream (normal forms, hom spaces, silting tests) reduces to
//! yes/no rank statements, so all arithmetic here is exact: entries are
//! [`Rat`] (arbitrary-precision rationals, always stored reduced with positive
//! denominator). There is no floating point anywhere in this crate.
//!
//! The hot paths only need ranks; [`rank`] clears denominators row by row and
//! runs fraction-free Bareiss elimination over integers (with an `i128` fast
//! path), which is much cheaper than tracking reduced fractions through
//! Gauss-Jordan. [`ExactMatrix::rref`] stays the reference implementation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form together with the (strictly increasing)
    /// pivot column list.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut a = self.clone();
        let pivots = rref_in_place(&mut a);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Basis of the right null space: vectors `v` with `self * v = 0`.
    /// Free variables are set one at a time to 1, in increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let pivot_row: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (&pc, &pr) in &pivot_row {
                v[pc] = -r.at(pr, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = rhs`, with all free variables set to zero;
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows, "rhs length must equal row count");
        // Reduce the augmented matrix; a pivot in the last column means
        // inconsistency.
        let mut aug = ExactMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs[r].clone();
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }
}

fn rref_in_place(a: &mut ExactMatrix) -> Vec<usize> {
    let (m, n) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..n {
        if prow >= m {
            break;
        }
        let Some(found) = (prow..m).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if found != prow {
            for c in 0..n {
                let tmp = a.at(found, c).clone();
                *a.at_mut(found, c) = a.at(prow, c).clone();
                *a.at_mut(prow, c) = tmp;
            }
        }
        let inv = a.at(prow, col).clone();
        for c in col..n {
            let v = a.at(prow, c).clone() / inv.clone();
            *a.at_mut(prow, c) = v;
        }
        for r in 0..m {
            if r == prow || a.at(r, col).is_zero() {
                continue;
            }
            let f = a.at(r, col).clone();
            for c in col..n {
                let v = a.at(r, c).clone() - f.clone() * a.at(prow, c).clone();
                *a.at_mut(r, c) = v;
            }
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}

/// `true` iff span(a) = span(b) inside an ambient space of dimension `dim`.
/// Decided by comparing reduced row spaces.
pub fn subspace_equal(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> Result<bool, LinalgError> {
    for v in a.iter().chain(b.iter()) {
        if v.len() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let ra = reduced_row_space(a, dim);
    let rb = reduced_row_space(b, dim);
    Ok(ra == rb)
}

fn reduced_row_space(vs: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let m = ExactMatrix::from_rows(vs.to_vec());
    if vs.is_empty() {
        return Vec::new();
    }
    assert_eq!(m.cols, dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Incremental row-space builder: rows are inserted one at a time and kept in
/// reduced echelon form. Used where the spanning set is large and discovered
/// gradually (relation closures, subspace saturation).
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    /// Echelon rows, sorted by pivot column; each row is reduced against the
    /// others and scaled to pivot 1.
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Reduce `v` against the current rows (eliminating all pivot columns).
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut v[p], Rat::zero());
            for c in p + 1..self.dim {
                if !row[c].is_zero() {
                    v[c] = std::mem::take(&mut v[c]) - f.clone() * row[c].clone();
                }
            }
        }
        v
    }

    /// Insert `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = std::mem::take(x) / inv.clone();
            }
        }
        // Back-substitute into existing rows to keep full reduction.
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(rp != p);
            if !row[p].is_zero() {
                let f = row[p].clone();
                for c in p..self.dim {
                    if !v[c].is_zero() {
                        row[c] = std::mem::take(&mut row[c]) - f.clone() * v[c].clone();
                    }
                }
                debug_assert!(row[p].is_zero());
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` as a combination of the echelon rows, or `None`.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let mut v = v.to_vec();
        let mut coord = vec![Rat::zero(); self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut v[p], Rat::zero());
            for c in p + 1..self.dim {
                if !row[c].is_zero() {
                    v[c] = std::mem::take(&mut v[c]) - f.clone() * row[c].clone();
                }
            }
            coord[i] = f;
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coord)
        } else {
            None
        }
    }
}

/// Exact rank via fraction-free Bareiss elimination on the integer matrix
/// obtained by clearing denominators row by row. Falls back from `i128` to
/// `BigInt` on overflow.
pub fn rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut lcm = BigInt::one();
        for c in 0..m.cols {
            let d = m.at(r, c).denom();
            lcm = num_integer::lcm(lcm, d.clone());
        }
        int_rows.push(
            (0..m.cols)
                .map(|c| {
                    let x = m.at(r, c);
                    x.numer() * (&lcm / x.denom())
                })
                .collect(),
        );
    }
    match bareiss_rank_i128(&int_rows) {
        Some(rk) => rk,
        None => bareiss_rank_big(int_rows),
    }
}

fn bareiss_rank_i128(rows: &[Vec<BigInt>]) -> Option<usize> {
    let m = rows.len();
    let n = rows[0].len();
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(m);
    for row in rows {
        let mut out = Vec::with_capacity(n);
        for x in row {
            out.push(i128::try_from(x).ok()?);
        }
        a.push(out);
    }
    let mut prev: i128 = 1;
    let mut rk = 0;
    for col in 0..n {
        if rk >= m {
            break;
        }
        let Some(p) = (rk..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rk, p);
        for r in rk + 1..m {
            for c in col + 1..n {
                let t1 = a[rk][col].checked_mul(a[r][c])?;
                let t2 = a[r][col].checked_mul(a[rk][c])?;
                let num = t1.checked_sub(t2)?;
                a[r][c] = num / prev; // exact by Bareiss
            }
            a[r][col] = 0;
        }
        prev = a[rk][col];
        rk += 1;
    }
    Some(rk)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut rk = 0;
    for col in 0..n {
        if rk >= m {
            break;
        }
        let Some(p) = (rk..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rk, p);
        for r in rk + 1..m {
            for c in col + 1..n {
                let num = &a[rk][col] * &a[r][c] - &a[r][col] * &a[rk][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rk][col].clone();
        rk += 1;
    }
    rk
}
