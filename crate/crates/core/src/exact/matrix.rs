use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged integer matrix");
            entries.extend(row.iter().map(|&v| Rational::from_integer(BigInt::from(v))));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        for col in columns {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn pow(&self, exp: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Submatrix `A[rows, cols]` without any validation of the selection.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Each row scaled by the lcm of its denominators, so that all entries are
    /// integers. Returns the integer rows and the per-row scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            out.push(
                row.iter()
                    .map(|e| e.numer() * (&lcm / e.denom()))
                    .collect(),
            );
            scales.push(lcm);
        }
        (out, scales)
    }

    /// Exact rank by fraction-free elimination. Rows are cleared of
    /// denominators, and every combined row is divided by its content so the
    /// integers stay small.
    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows();
        let mut rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            // smallest nonzero pivot keeps the growth down
            let pivot = (rank..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].bits());
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            let pv = &prow[col];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let g = pv.gcd(&row[col]);
                let mp = pv / &g;
                let mr = &row[col] / &g;
                for j in col..self.cols {
                    let v = &mp * &row[j] - &mr * &prow[j];
                    row[j] = v;
                }
                reduce_content(&mut row[col..]);
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// Determinant by Bareiss elimination on the denominator-cleared rows.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scales) = self.integer_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut det = a[n - 1][n - 1].clone();
        if negate {
            det = -det;
        }
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Rational::new(det, denom))
    }

    /// Determinant of `A[row_sel, col_sel]`; selections are 0-based and strictly increasing.
    pub fn minor(&self, row_sel: &[usize], col_sel: &[usize]) -> Result<Rational> {
        check_selection(row_sel, self.rows, "row")?;
        check_selection(col_sel, self.cols, "column")?;
        if row_sel.len() != col_sel.len() {
            return Err(Error::NonSquareSelection {
                rows: row_sel.len(),
                cols: col_sel.len(),
            });
        }
        self.select(row_sel, col_sel).determinant()
    }

    /// Forward substitution for a square lower-triangular system.
    pub fn solve_lower_triangular(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        if let Some(index) = (0..n).find(|&i| self.get(i, i).is_zero()) {
            return Err(Error::ZeroDiagonal { index });
        }
        let mut x: Vec<Rational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = b[i].clone();
            for (j, xj) in x.iter().enumerate() {
                let l = self.get(i, j);
                if !l.is_zero() && !xj.is_zero() {
                    acc -= l * xj;
                }
            }
            x.push(acc / self.get(i, i));
        }
        Ok(x)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    /// Reduced row echelon form together with the pivot columns.
    fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = Rational::one() / m.get(row, col);
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in col..m.cols {
                    let rj = m.get(row, j);
                    if !rj.is_zero() {
                        let v = m.get(i, j) - &f * rj;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Unique solution of a square nonsingular system.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, n + 1, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Singular);
        }
        Ok((0..n).map(|i| red.get(i, n).clone()).collect())
    }
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    if g > BigInt::one() {
        for e in row.iter_mut() {
            *e = &*e / &g;
        }
    }
}

fn check_selection(sel: &[usize], bound: usize, what: &str) -> Result<()> {
    if sel.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSelection(format!("{what} selection {sel:?} is not strictly increasing")));
    }
    if let Some(&last) = sel.last() {
        if last >= bound {
            return Err(Error::BadSelection(format!(
                "{what} index {last} out of bounds for size {bound}"
            )));
        }
    }
    Ok(())
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
