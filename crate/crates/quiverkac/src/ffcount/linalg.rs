//! Dense matrices over a prime field, sized for brute-force enumeration.

use std::fmt;

/// Residue modulo a prime.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FpScalar {
    value: u64,
    prime: u64,
}

impl FpScalar {
    pub fn new(value: u64, prime: u64) -> Self {
        FpScalar {
            value: value % prime,
            prime,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, other.prime);
        FpScalar::new(self.value + other.value, self.prime)
    }

    pub fn sub(&self, other: &FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, other.prime);
        FpScalar::new(self.value + self.prime - other.value, self.prime)
    }

    pub fn mul(&self, other: &FpScalar) -> FpScalar {
        debug_assert_eq!(self.prime, other.prime);
        FpScalar::new(self.value * other.value, self.prime)
    }

    /// Multiplicative inverse (value must be nonzero, prime must be prime).
    pub fn inverse(&self) -> FpScalar {
        assert!(self.value != 0, "inverse of zero");
        FpScalar::new(mod_inverse(self.value, self.prime), self.prime)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(p as i128) as u64
}

/// Row-major matrix over the prime field; `0 x k` and `k x 0` shapes are
/// legal and behave as expected.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    prime: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(prime: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            prime,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(prime: u64, n: usize) -> Self {
        let mut m = FpMatrix::zero(prime, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(prime: u64, rows: &[&[u64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = FpMatrix::zero(prime, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar::new(self.get(i, j), self.prime)
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.prime;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == FpMatrix::identity(self.prime, self.rows)
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.prime)
            .collect();
        FpMatrix {
            prime: self.prime,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.prime - b) % self.prime)
            .collect();
        FpMatrix {
            prime: self.prime,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = FpMatrix::zero(self.prime, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> u64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum::<u64>() % self.prime
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(pivot) = pivot else { continue };
            m.swap_rows(rank, pivot);
            let inv = mod_inverse(m.get(rank, col), m.prime);
            m.scale_row(rank, inv);
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    m.subtract_scaled_row(r, rank, factor);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel, one coordinate vector per basis element.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(pivot) = pivot else { continue };
            m.swap_rows(rank, pivot);
            let inv = mod_inverse(m.get(rank, col), m.prime);
            m.scale_row(rank, inv);
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    m.subtract_scaled_row(r, rank, factor);
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let pivot_cols: std::collections::HashSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut vec = vec![0u64; m.cols];
            vec[free] = 1;
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                // pivot variable = -(coefficient of the free column)
                let coeff = m.get(row, free);
                vec[pc] = (m.prime - coeff) % m.prime;
            }
            basis.push(vec);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        for j in 0..self.cols {
            let cur = self.get(r, j);
            self.set(r, j, cur * factor);
        }
    }

    fn subtract_scaled_row(&mut self, target: usize, source: usize, factor: u64) {
        for j in 0..self.cols {
            let delta = (self.get(source, j) * factor) % self.prime;
            let cur = self.get(target, j);
            self.set(target, j, cur + self.prime - delta);
        }
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_field_ops() {
        let p = 7;
        let a = FpScalar::new(3, p);
        let b = FpScalar::new(5, p);
        assert_eq!(a.add(&b).value(), 1);
        assert_eq!(a.sub(&b).value(), 5);
        assert_eq!(a.mul(&b).value(), 1);
        assert_eq!(a.inverse().value(), 5);
        for x in 1..p {
            let s = FpScalar::new(x, p);
            assert_eq!(s.mul(&s.inverse()).value(), 1);
        }
    }

    #[test]
    fn rank_and_kernel() {
        let m = FpMatrix::from_rows(5, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        // verify kernel vectors are annihilated
        for v in &basis {
            for i in 0..m.rows() {
                let dot: u64 = (0..m.cols()).map(|j| m.get(i, j) * v[j]).sum();
                assert_eq!(dot % 5, 0);
            }
        }
        assert_eq!(FpMatrix::identity(3, 4).rank(), 4);
        assert_eq!(FpMatrix::zero(3, 2, 5).rank(), 0);
        assert_eq!(FpMatrix::zero(3, 2, 5).kernel_basis().len(), 5);
    }

    #[test]
    fn empty_shapes() {
        let m = FpMatrix::zero(3, 0, 0);
        assert!(m.is_identity());
        assert_eq!(m.rank(), 0);
        let tall = FpMatrix::zero(3, 2, 0);
        assert_eq!(tall.kernel_basis().len(), 0);
        let wide = FpMatrix::zero(3, 0, 2);
        assert_eq!(wide.kernel_basis().len(), 2);
        assert_eq!(wide.mul(&FpMatrix::zero(3, 2, 3)).rows(), 0);
    }

    #[test]
    fn product_and_trace() {
        let a = FpMatrix::from_rows(5, &[&[1, 2], &[3, 4]]);
        let b = FpMatrix::from_rows(5, &[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, FpMatrix::from_rows(5, &[&[2, 1], &[4, 3]]));
        assert_eq!(ab.trace(), 0);
        assert_eq!(a.trace(), 0);
        assert_eq!(FpMatrix::identity(5, 3).trace(), 3);
    }
}
