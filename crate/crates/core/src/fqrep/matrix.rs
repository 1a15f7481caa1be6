//! Dense matrices over a prime field `F_p` and Gaussian elimination.

use std::fmt;

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|k: &u32| (*k as u64) * (*k as u64) <= p as u64)
            .all(|k| !p.is_multiple_of(k))
}

pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1u64 % p as u64;
    let mut b = (base % p) as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Smallest generator of `F_p^×`.
pub(crate) fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut k = 2;
    while k * k <= m {
        if m.is_multiple_of(k) {
            factors.push(k);
            while m.is_multiple_of(k) {
                m /= k;
            }
        }
        k += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("F_p^× is cyclic")
}

/// A `rows × cols` matrix with entries in `0..p`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = FpMatrix::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Entries are reduced mod `p`. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>], p: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&x| x.rem_euclid(p as i64) as u32));
        }
        FpMatrix {
            rows: r,
            cols: c,
            p,
            data,
        }
    }

    pub(crate) fn from_data(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        FpMatrix {
            rows,
            cols,
            p,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.data[i * self.cols + k] as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let o = &mut out.data[i * other.cols + j];
                    *o = ((*o as u64 + x * other.data[k * other.cols + j] as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let data = self
            .data
            .iter()
            .map(|&a| (a as u64 * c as u64 % p) as u32)
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u32>> = self
            .data
            .chunks(self.cols.max(1))
            .map(<[u32]>::to_vec)
            .collect();
        if self.cols == 0 {
            return 0;
        }
        row_reduce(&mut rows, self.cols, self.p).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, 2 * n, self.p);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let data = aug
            .iter()
            .take(n)
            .flat_map(|r| r[n..].iter().copied())
            .collect();
        Some(FpMatrix::from_data(n, n, self.p, data))
    }

    /// `A^k = 0` for `k = rows`.
    pub fn is_nilpotent(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let mut acc = FpMatrix::identity(self.rows, self.p);
        for _ in 0..self.rows {
            acc = acc.mul(self);
            if acc.is_zero() {
                return true;
            }
        }
        acc.is_zero()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form in place; returns pivot columns. Rows past the
/// rank are left zero.
pub(crate) fn row_reduce(rows: &mut [Vec<u32>], ncols: usize, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % p64) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = (p - row[c]) as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + f * y as u64) % p64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by its rows.
pub(crate) fn nullspace(mut rows: Vec<Vec<u32>>, ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let pivots = row_reduce(&mut rows, ncols, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = (p - rows[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        let primes: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn inverse_and_rank() {
        let m = FpMatrix::from_rows(&[vec![1, 2], vec![3, 4]], 5);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(2, 5));
        let singular = FpMatrix::from_rows(&[vec![1, 2], vec![2, 4]], 5);
        assert_eq!(singular.rank(), 1);
        assert!(singular.inverse().is_none());
        assert!(!singular.is_invertible());
    }

    #[test]
    fn nilpotency() {
        assert!(FpMatrix::from_rows(&[vec![0, 1], vec![0, 0]], 2).is_nilpotent());
        assert!(!FpMatrix::from_rows(&[vec![1, 1], vec![0, 1]], 2).is_nilpotent());
        assert!(FpMatrix::zeros(0, 0, 3).is_nilpotent());
    }

    #[test]
    fn kernel_basis() {
        let ker = nullspace(vec![vec![1, 1, 0]], 3, 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert_eq!((v[0] + v[1]) % 3, 0);
        }
    }
}
