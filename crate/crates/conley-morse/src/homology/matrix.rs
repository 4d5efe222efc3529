//! Dense exact-rational matrices and the elimination routines the
//! homology computations need. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl FieldMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = FieldMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, rat(v));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[BigRational]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = FieldMatrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            m.set_column(j, col);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = FieldMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// `self^k` for square matrices; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> FieldMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FieldMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Row echelon form together with the pivot column indices.
    /// Deterministic: columns scanned left to right, the first row with a
    /// nonzero entry is the pivot.
    fn echelon(&self) -> (FieldMatrix, Vec<usize>) {
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
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(row, col).clone();
            for j in 0..m.cols {
                let v = m.get(row, j) / &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let factor = m.get(i, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &factor * m.get(row, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Indices of a maximal independent set of columns (the pivot
    /// columns of the echelon form).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().1
    }

    /// Basis of the kernel, one vector per free column, in ascending
    /// free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (ech, pivots) = self.echelon();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -ech.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `self · x = rhs` with free variables set to
    /// zero; `None` when inconsistent.
    pub fn solve(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(rhs.len(), self.rows);
        // eliminate on the augmented matrix
        let mut aug = FieldMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (ech, pivots) = aug.echelon();
        // inconsistent iff a pivot lands in the augmented column
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = ech.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `self · X = B` columnwise.
    pub fn solve_matrix(&self, b: &FieldMatrix) -> Option<FieldMatrix> {
        assert_eq!(self.rows, b.rows);
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            cols.push(self.solve(&b.column(j))?);
        }
        Some(FieldMatrix::from_columns(self.cols, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve_matrix(&FieldMatrix::identity(self.rows))?;
        if self.mul(&sol) == FieldMatrix::identity(self.rows) {
            Some(sol)
        } else {
            None
        }
    }

    /// Entries as `f64`, for display only.
    pub fn to_i64_lossy(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let v = self.get(i, j);
                        let num: i64 = v.numer().try_into().unwrap_or(i64::MAX);
                        let den: i64 = v.denom().try_into().unwrap_or(1);
                        num / den
                    })
                    .collect()
            })
            .collect()
    }
}

/// Signed column vector helpers.
pub fn vec_is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add_scaled(acc: &mut [BigRational], v: &[BigRational], scale: &BigRational) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a + scale * b;
    }
}

pub fn rat_is_negative(v: &BigRational) -> bool {
    v.is_negative()
}
