//! Dense exact linear algebra: Bareiss determinants, ranks over fields,
//! signatures of symmetric forms and Smith normal form with transforms.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{Field, IntegerRing, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn map<U: Clone + Zero, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        self.mul_vec(v)
            .into_iter()
            .zip(v)
            .fold(T::zero(), |acc, (a, b)| acc + a * b.clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Fraction-free determinant.
pub fn det_bareiss<I: IntegerRing>(m: &Matrix<I>) -> I {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return I::one();
    }
    let mut a = m.clone();
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return I::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = F::one() / m[(row, col)].clone();
        for c in 0..m.cols() {
            m[(row, c)] = m[(row, c)].clone() * inv.clone();
        }
        for r in 0..m.rows() {
            if r != row && !m[(r, col)].is_zero() {
                let f = m[(r, col)].clone();
                for c in 0..m.cols() {
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * m[(row, c)].clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    row_reduce(&mut m.clone()).len()
}

/// Columns spanning the right kernel.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut r = m.clone();
    let pivots = row_reduce(&mut r);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols()];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns<T: Clone + Zero>(rows: usize, cols: &[Vec<T>]) -> Matrix<T> {
    let mut m = Matrix::zeros(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        assert_eq!(v.len(), rows);
        for (i, x) in v.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, n + r)] = F::one();
    }
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(aug.submatrix(&rows, &cols))
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by symmetric
/// elimination over an ordered field.
pub fn inertia<F: Field + PartialOrd>(m: &Matrix<F>) -> (usize, usize, usize) {
    assert!(m.is_symmetric(), "inertia needs a symmetric matrix");
    let mut a = m.clone();
    let mut n = a.rows();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    // Active block is the leading n x n corner; finished indices move to the end.
    while n > 0 {
        let piv = (0..n).find(|&i| !a[(i, i)].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                match off {
                    None => {
                        zero += n;
                        break;
                    }
                    Some((i, j)) => {
                        // Replace e_i by e_i + e_j, which makes the diagonal 2 a_ij.
                        for k in 0..a.rows() {
                            let v = a[(i, k)].clone() + a[(j, k)].clone();
                            a[(i, k)] = v;
                        }
                        for k in 0..a.rows() {
                            let v = a[(k, i)].clone() + a[(k, j)].clone();
                            a[(k, i)] = v;
                        }
                        i
                    }
                }
            }
        };
        let last = n - 1;
        a.swap_rows(p, last);
        a.swap_cols(p, last);
        let d = a[(last, last)].clone();
        if d > F::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in 0..last {
            let f = a[(i, last)].clone() / d.clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..last {
                let v = a[(i, j)].clone() - f.clone() * a[(last, j)].clone();
                a[(i, j)] = v;
            }
        }
        n -= 1;
    }
    (pos, neg, zero)
}

pub fn signature<F: Field + PartialOrd>(m: &Matrix<F>) -> i64 {
    let (p, n, _) = inertia(m);
    p as i64 - n as i64
}

/// Smith normal form `left * A * right = diag` with both transforms and their inverses.
#[derive(Clone, Debug)]
pub struct Smith<I> {
    pub diagonal: Vec<I>,
    pub left: Matrix<I>,
    pub left_inv: Matrix<I>,
    pub right: Matrix<I>,
    pub right_inv: Matrix<I>,
}

impl<I: IntegerRing> Smith<I> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

struct SnfState<I> {
    a: Matrix<I>,
    left: Matrix<I>,
    left_inv: Matrix<I>,
    right: Matrix<I>,
    right_inv: Matrix<I>,
}

impl<I: IntegerRing> SnfState<I> {
    // row_r <- row_r + f * row_s, tracked on the left transforms.
    fn add_row(&mut self, r: usize, s: usize, f: I) {
        for c in 0..self.a.cols() {
            let v = self.a[(r, c)].clone() + f.clone() * self.a[(s, c)].clone();
            self.a[(r, c)] = v;
        }
        for c in 0..self.left.cols() {
            let v = self.left[(r, c)].clone() + f.clone() * self.left[(s, c)].clone();
            self.left[(r, c)] = v;
        }
        for k in 0..self.left_inv.rows() {
            let v = self.left_inv[(k, s)].clone() - f.clone() * self.left_inv[(k, r)].clone();
            self.left_inv[(k, s)] = v;
        }
    }

    fn add_col(&mut self, c: usize, s: usize, f: I) {
        for r in 0..self.a.rows() {
            let v = self.a[(r, c)].clone() + f.clone() * self.a[(r, s)].clone();
            self.a[(r, c)] = v;
        }
        for r in 0..self.right.rows() {
            let v = self.right[(r, c)].clone() + f.clone() * self.right[(r, s)].clone();
            self.right[(r, c)] = v;
        }
        for k in 0..self.right_inv.cols() {
            let v = self.right_inv[(s, k)].clone() - f.clone() * self.right_inv[(c, k)].clone();
            self.right_inv[(s, k)] = v;
        }
    }

    fn swap_row(&mut self, r: usize, s: usize) {
        self.a.swap_rows(r, s);
        self.left.swap_rows(r, s);
        self.left_inv.swap_cols(r, s);
    }

    fn swap_col(&mut self, c: usize, s: usize) {
        self.a.swap_cols(c, s);
        self.right.swap_cols(c, s);
        self.right_inv.swap_rows(c, s);
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.a.cols() {
            self.a[(r, c)] = -self.a[(r, c)].clone();
        }
        for c in 0..self.left.cols() {
            self.left[(r, c)] = -self.left[(r, c)].clone();
        }
        for k in 0..self.left_inv.rows() {
            self.left_inv[(k, r)] = -self.left_inv[(k, r)].clone();
        }
    }
}

/// Smith normal form over the integers; the diagonal is nonnegative and each
/// entry divides the next.
pub fn smith_normal_form<I: IntegerRing>(m: &Matrix<I>) -> Smith<I> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = SnfState {
        a: m.clone(),
        left: Matrix::identity(rows),
        left_inv: Matrix::identity(rows),
        right: Matrix::identity(cols),
        right_inv: Matrix::identity(cols),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        // Pick the smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = st.a[(r, c)].abs();
                if !v.is_zero() && best.is_none_or(|(br, bc)| v < st.a[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        st.swap_row(t, br);
        st.swap_col(t, bc);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if st.a[(r, t)].is_zero() {
                    continue;
                }
                let q = st.a[(r, t)].div_floor(&st.a[(t, t)]);
                st.add_row(r, t, -q);
                if !st.a[(r, t)].is_zero() {
                    st.swap_row(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if st.a[(t, c)].is_zero() {
                    continue;
                }
                let q = st.a[(t, c)].div_floor(&st.a[(t, t)]);
                st.add_col(c, t, -q);
                if !st.a[(t, c)].is_zero() {
                    st.swap_col(t, c);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility against the rest of the block.
            let piv = st.a[(t, t)].clone();
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(st.a[(r, c)].clone() % piv.clone()).is_zero());
            match bad {
                Some((r, _)) => st.add_row(t, r, I::one()),
                None => break,
            }
        }
        if st.a[(t, t)].is_negative() {
            st.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| st.a[(i, i)].clone()).collect();
    Smith { diagonal, left: st.left, left_inv: st.left_inv, right: st.right, right_inv: st.right_inv }
}

/// Nontrivial invariant factors (entries `> 1`) of a Smith form diagonal.
pub fn torsion_of<I: IntegerRing>(diag: &[I]) -> Vec<I> {
    diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Q> {
        Matrix::from_rows(rows).map(|&x| Q::from_integer(x))
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = Matrix::from_rows(vec![vec![2i64, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(det_bareiss(&m), 4);
        let s = Matrix::from_rows(vec![vec![0i64, 1], vec![1, 0]]);
        assert_eq!(det_bareiss(&s), -1);
        assert_eq!(det_bareiss(&Matrix::<i64>::zeros(0, 0)), 1);
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        assert_eq!(inertia(&qm(vec![vec![0, 1], vec![1, 0]])), (1, 1, 0));
        assert_eq!(signature(&qm(vec![vec![-2, 1], vec![1, -2]])), -2);
        assert_eq!(inertia(&qm(vec![vec![1, 1], vec![1, 1]])), (1, 0, 1));
    }

    #[test]
    fn kernel_and_rank() {
        let m = qm(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(vec![vec![2, 1], vec![1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(inverse(&qm(vec![vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn smith_transforms_are_consistent() {
        let m = Matrix::from_rows(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], if i == j { s.diagonal[i] } else { 0 });
            }
        }
        assert_eq!(s.left.mul(&s.left_inv), Matrix::identity(3));
        assert_eq!(s.right.mul(&s.right_inv), Matrix::identity(3));
    }
}
