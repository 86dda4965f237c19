use std::fmt;

use super::field::{FpScalar, Prime};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    prime: Prime,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, prime: Prime) -> Self {
        FpMatrix {
            rows,
            cols,
            prime,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, prime: Prime) -> Self {
        let mut m = FpMatrix::zeros(n, n, prime);
        for i in 0..n {
            m.data[i * n + i] = 1 % prime.get();
        }
        m
    }

    /// Builds a matrix from rows of signed integers, reducing each entry.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], cols: usize, prime: Prime) -> Self {
        let mut m = FpMatrix::zeros(rows.len(), cols, prime);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = prime.reduce(x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given residue vectors.
    pub fn from_columns(columns: &[Vec<u32>], rows: usize, prime: Prime) -> Self {
        let mut m = FpMatrix::zeros(rows, columns.len(), prime);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x % prime.get();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar::from_residue(self.get(i, j), self.prime)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.data[i * self.cols + j] = value % self.prime.get();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let columns: Vec<Vec<u32>> = cols.iter().map(|&j| self.column(j)).collect();
        FpMatrix::from_columns(&columns, self.rows, self.prime)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length does not match column count"
        );
        let p = self.prime.as_u64();
        (0..self.rows)
            .map(|i| {
                let s = self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    (acc + u64::from(a) * u64::from(b)) % p
                });
                s as u32
            })
            .collect()
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let prime = self.prime;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = prime.inv(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        m.add_row_multiple(i, r, prime.neg(f));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        debug_assert!(rank <= self.rows.min(self.cols));
        Rref {
            reduced: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Rref {
            reduced,
            rank,
            pivots,
        } = self.rref();
        let prime = self.prime;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1 % prime.get();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = prime.neg(reduced.get(row, free));
                }
                v
            })
            .collect();
        assert_eq!(
            rank + basis.len(),
            self.cols,
            "rank-nullity violated after reduction"
        );
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, f: u32) {
        let prime = self.prime;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = prime.mul(*x, f);
        }
    }

    // row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: u32) {
        let prime = self.prime;
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = prime.add(*d, prime.mul(f, s));
            }
        }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix {}x{} over F_{}",
            self.rows, self.cols, self.prime
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
