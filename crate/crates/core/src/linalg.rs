//! Small dense complex linear algebra: fixed 4x4 / 4x2 matrices for the
//! cascade and a row-major dense matrix for the global boundary system.
//!
//! Everything is solved with partial-pivoted Gaussian elimination. Callers
//! decide what condition number is acceptable; nothing here regularises.

use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::scalar::{Cx, Scalar};

/// Zero pivot encountered during elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularMatrix {
    pub column: usize,
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Cx::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cx::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, x: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .fold(Cx::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        (0..self.cols)
            .map(|c| (0..self.rows).fold(T::zero(), |acc, r| acc + self[(r, c)].norm()))
            .fold(T::zero(), T::max)
    }

    /// LU factorisation with partial pivoting.
    pub fn lu(&self) -> Result<Lu<T>, SingularMatrix> {
        assert_eq!(self.rows, self.cols, "LU needs a square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|r| (r, a[r * n + k].norm()))
                .fold(
                    (k, T::neg_infinity()),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            if !(pmax > T::zero()) {
                return Err(SingularMatrix { column: k });
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = a[k * n + k];
            for r in k + 1..n {
                let f = a[r * n + k] / pivot;
                a[r * n + k] = f;
                if f.is_zero() {
                    continue;
                }
                for c in k + 1..n {
                    let u = a[k * n + c];
                    a[r * n + c] -= f * u;
                }
            }
        }
        Ok(Lu { n, a, perm })
    }

    pub fn solve(&self, b: &[Cx<T>]) -> Result<Vec<Cx<T>>, SingularMatrix> {
        Ok(self.lu()?.solve(b))
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>, SingularMatrix> {
        let lu = self.lu()?;
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        let mut e = vec![Cx::zero(); n];
        for c in 0..n {
            e.iter_mut().for_each(|x| *x = Cx::zero());
            e[c] = Cx::one();
            let col = lu.solve(&e);
            for r in 0..n {
                inv[(r, c)] = col[r];
            }
        }
        Ok(inv)
    }
}

impl<T: Scalar> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Cx<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Cx<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cx<T> {
        &mut self.data[r * self.cols + c]
    }
}

/// Packed LU factors (unit lower triangle below the diagonal).
#[derive(Debug, Clone)]
pub struct Lu<T: Scalar> {
    n: usize,
    a: Vec<Cx<T>>,
    perm: Vec<usize>,
}

impl<T: Scalar> Lu<T> {
    pub fn solve(&self, b: &[Cx<T>]) -> Vec<Cx<T>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<Cx<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                let l = self.a[r * n + c];
                let xc = x[c];
                x[r] -= l * xc;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let u = self.a[r * n + c];
                let xc = x[c];
                x[r] -= u * xc;
            }
            x[r] /= self.a[r * n + r];
        }
        x
    }
}

/// Complex 4-vector.
pub type Vec4<T> = [Cx<T>; 4];

/// Dense complex 4x4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4<T: Scalar>(pub [[Cx<T>; 4]; 4]);

impl<T: Scalar> Mat4<T> {
    pub fn zero() -> Self {
        Self([[Cx::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diagonal([Cx::one(); 4])
    }

    pub fn diagonal(d: [Cx<T>; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: [Vec4<T>; 4]) -> Self {
        let mut m = Self::zero();
        for (c, col) in cols.iter().enumerate() {
            for (row, v) in m.0.iter_mut().zip(col) {
                row[c] = *v;
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec4<T> {
        [self.0[0][c], self.0[1][c], self.0[2][c], self.0[3][c]]
    }

    pub fn mul_vec(&self, x: &Vec4<T>) -> Vec4<T> {
        let mut y = [Cx::zero(); 4];
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = (0..4).fold(Cx::zero(), |acc, c| acc + self.0[r][c] * x[c]);
        }
        y
    }

    pub fn norm1(&self) -> T {
        (0..4)
            .map(|c| (0..4).fold(T::zero(), |acc, r| acc + self.0[r][c].norm()))
            .fold(T::zero(), T::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for r in 0..4 {
            for c in 0..4 {
                m = m.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Inverse together with the 1-norm condition number.
    pub fn inverse_with_cond(&self) -> Result<(Self, T), SingularMatrix> {
        let inv = self.to_dense().inverse()?;
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = inv[(r, c)];
            }
        }
        let cond = self.norm1() * out.norm1();
        Ok((out, cond))
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Keeps the first two columns.
    pub fn left_columns(&self) -> Mat4x2<T> {
        let mut m = Mat4x2::zero();
        for r in 0..4 {
            m.0[r] = [self.0[r][0], self.0[r][1]];
        }
        m
    }

    fn to_dense(self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                d[(r, c)] = self.0[r][c];
            }
        }
        d
    }
}

impl<T: Scalar> Mul for Mat4<T> {
    type Output = Mat4<T>;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = (0..4).fold(Cx::zero(), |acc, k| acc + self.0[r][k] * rhs.0[k][c]);
            }
        }
        out
    }
}

/// Dense complex 4x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4x2<T: Scalar>(pub [[Cx<T>; 2]; 4]);

impl<T: Scalar> Mat4x2<T> {
    pub fn zero() -> Self {
        Self([[Cx::zero(); 2]; 4])
    }

    /// Upper 2x2 block (rows 0..2).
    pub fn top(&self) -> [[Cx<T>; 2]; 2] {
        [self.0[0], self.0[1]]
    }

    /// Lower 2x2 block (rows 2..4).
    pub fn bottom(&self) -> [[Cx<T>; 2]; 2] {
        [self.0[2], self.0[3]]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for r in 0..4 {
            for c in 0..2 {
                m = m.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        m
    }
}

impl<T: Scalar> Mul<Mat4x2<T>> for Mat4<T> {
    type Output = Mat4x2<T>;
    fn mul(self, rhs: Mat4x2<T>) -> Mat4x2<T> {
        let mut out = Mat4x2::zero();
        for r in 0..4 {
            for c in 0..2 {
                out.0[r][c] = (0..4).fold(Cx::zero(), |acc, k| acc + self.0[r][k] * rhs.0[k][c]);
            }
        }
        out
    }
}

/// Solves a 2x2 system by pivoted elimination, returning the solution and
/// the 1-norm condition number of `a`.
pub fn solve2<T: Scalar>(a: [[Cx<T>; 2]; 2], b: [Cx<T>; 2]) -> Result<([Cx<T>; 2], T), SingularMatrix> {
    let mut d = DenseMatrix::zeros(2, 2);
    for r in 0..2 {
        for c in 0..2 {
            d[(r, c)] = a[r][c];
        }
    }
    let inv = d.inverse()?;
    let cond = d.norm1() * inv.norm1();
    let x = inv.mul_vec(&b);
    Ok(([x[0], x[1]], cond))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn dense_solve_needs_pivoting() {
        let mut a = DenseMatrix::<f64>::zeros(3, 3);
        let rows = [
            [c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0)],
            [c(1.0, -1.0), c(0.0, 0.0), c(3.0, 0.0)],
            [c(2.0, 0.0), c(1.0, 0.0), c(0.0, 2.0)],
        ];
        for (r, row) in rows.iter().enumerate() {
            for (cc, v) in row.iter().enumerate() {
                a[(r, cc)] = *v;
            }
        }
        let x = [c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0)];
        let b = a.mul_vec(&x);
        let y = a.solve(&b).unwrap();
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).norm() < 1e-14);
        }
    }

    #[test]
    fn singular_is_reported() {
        let mut a = DenseMatrix::<f64>::zeros(2, 2);
        a[(0, 0)] = c(1.0, 0.0);
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 0)] = c(2.0, 0.0);
        a[(1, 1)] = c(4.0, 0.0);
        assert!(a.lu().is_err());
    }

    #[test]
    fn mat4_inverse_and_pow() {
        let m = Mat4::from_columns([
            [c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.5, 0.0)],
            [c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)],
            [c(0.3, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, -1.0)],
            [c(0.0, 0.0), c(0.0, 0.2), c(0.0, 0.0), c(3.0, 0.0)],
        ]);
        let (inv, cond) = m.inverse_with_cond().unwrap();
        assert!((m * inv).max_abs_diff(&Mat4::identity()) < 1e-14);
        assert!(cond >= 1.0);
        let p5 = m.pow(5);
        let direct = m * m * m * m * m;
        assert!(p5.max_abs_diff(&direct) < 1e-10 * direct.norm1());
        assert_eq!(m.pow(0), Mat4::identity());
    }
}
