//! Dense linear algebra over `F_p` and over `Q`.

use crate::error::{Error, Result};
use crate::number::PrimeFieldElement;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, f: impl Fn(usize, usize) -> PrimeFieldElement) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j).value();
            }
        }
        m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> PrimeFieldElement {
        PrimeFieldElement::new(self.p, self.data[i * self.cols + j] as i64)
    }

    pub fn set(&mut self, i: usize, j: usize, v: PrimeFieldElement) {
        self.data[i * self.cols + j] = v.value();
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = (out.data[idx] + a * o.data[k * o.cols + j]) % p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[PrimeFieldElement]) -> Vec<PrimeFieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let s = (0..self.cols).fold(0u64, |acc, j| (acc + self.data[i * self.cols + j] * v[j].value()) % self.p);
                PrimeFieldElement::new(self.p, s as i64)
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.data[r * m.cols + col] != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(piv * m.cols + j, row * m.cols + j);
            }
            let inv = m.get(row, col).inverse().expect("nonzero pivot").value();
            for j in 0..m.cols {
                m.data[row * m.cols + j] = m.data[row * m.cols + j] * inv % p;
            }
            for r in 0..m.rows {
                let f = m.data[r * m.cols + col];
                if r == row || f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = f * m.data[row * m.cols + j] % p;
                    m.data[r * m.cols + j] = (m.data[r * m.cols + j] + p - sub) % p;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> PrimeFieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = PrimeFieldElement::new(p, 1);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m.data[r * n + col] != 0) else {
                return PrimeFieldElement::new(p, 0);
            };
            if piv != col {
                for j in 0..n {
                    m.data.swap(piv * n + j, col * n + j);
                }
                det = det.neg();
            }
            let d = m.get(col, col);
            det = det.mul(d);
            let inv = d.inverse().expect("nonzero pivot").value();
            for r in col + 1..n {
                let f = m.data[r * n + col] * inv % p;
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = f * m.data[col * n + j] % p;
                    m.data[r * n + j] = (m.data[r * n + j] + p - sub) % p;
                }
            }
        }
        det
    }

    /// Solves `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[PrimeFieldElement]) -> Result<Vec<PrimeFieldElement>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::InvalidInput("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * (n + 1) + j] = self.data[i * n + j];
            }
            aug.data[i * (n + 1) + n] = b[i].value();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return Err(Error::Singular("matrix over F_p is not invertible".into()));
        }
        Ok((0..n).map(|i| r.get(i, n)).collect())
    }

    /// One solution of `self · x = b` (free coordinates set to zero) and the
    /// pivot columns, or `None` if the system is inconsistent.
    pub fn solve_particular(&self, b: &[PrimeFieldElement]) -> Option<(Vec<PrimeFieldElement>, Vec<usize>)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let (n, k) = (self.rows, self.cols);
        let mut aug = Self::zeros(self.p, n, k + 1);
        for i in 0..n {
            for j in 0..k {
                aug.data[i * (k + 1) + j] = self.data[i * k + j];
            }
            aug.data[i * (k + 1) + k] = b[i].value();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&k) {
            return None;
        }
        let mut x = vec![PrimeFieldElement::new(self.p, 0); k];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, k);
        }
        Some((x, pivots))
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<PrimeFieldElement>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![PrimeFieldElement::new(self.p, 0); self.cols];
                v[fc] = PrimeFieldElement::new(self.p, 1);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, fc).neg();
                }
                v
            })
            .collect()
    }
}

/// Dense matrix over `Q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * o.get(k, j))
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * &v[k]))
            .collect()
    }

    /// Sub-matrix of the given rows.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(piv * m.cols + j, row * m.cols + j);
            }
            let inv = BigRational::one() / m.get(row, col);
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j) - &f * m.get(row, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// cleared integer matrix.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigRational::one();
        }
        let mut m = self.clone();
        let mut sign = BigRational::one();
        let mut prev = BigRational::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(piv) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigRational::zero();
                };
                for j in 0..n {
                    m.data.swap(piv * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * prev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn fp(p: u64, v: i64) -> PrimeFieldElement {
        PrimeFieldElement::new(p, v)
    }

    #[test]
    fn fp_det_solve_kernel() {
        let m = FpMatrix::from_fn(7, 3, 3, |i, j| fp(7, [[2, 1, 0], [1, 3, 4], [0, 5, 6]][i][j]));
        let d = m.det();
        // 2(18-20) - 1(6-0) = -10 = 4 mod 7
        assert_eq!(d.value(), 4);
        let b = vec![fp(7, 1), fp(7, 2), fp(7, 3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let s = FpMatrix::from_fn(5, 2, 3, |i, j| fp(5, [[1, 2, 3], [2, 4, 6]][i][j]));
        assert_eq!(s.rank(), 1);
        for v in s.kernel() {
            assert!(s.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(s.kernel().len(), 2);
    }

    #[test]
    fn rational_det_matches_cofactor_expansion() {
        let m = QMatrix::from_fn(3, 3, |i, j| rat(((i * 3 + j) * (i + 1)) as i64 % 7 + 1, (j + 1) as i64));
        let g = |i: usize, j: usize| m.get(i, j).clone();
        let cof = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        assert_eq!(m.det(), cof);
    }
}
