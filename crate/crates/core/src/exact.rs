//! Integer matrices and Smith normal form.
//!
//! The elimination keeps the smallest nonzero entry as pivot and reduces
//! every other entry of the pivot row and column modulo it on each sweep,
//! which keeps entries bounded for the small relation matrices that appear
//! as abelianization inputs.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix has {rows}x{cols} shape but {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("ragged rows: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch in product: {0}x{1} times {2}x{3}")]
    Product(usize, usize, usize, usize),
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape { rows, cols, len: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from explicit rows; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: i, len: row.len(), expected: cols });
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Product(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Appends a row, returning an error on length mismatch.
    pub fn push_row(&mut self, row: Vec<T>) -> Result<(), MatrixError> {
        if row.len() != self.cols {
            return Err(MatrixError::Ragged { row: self.rows, len: row.len(), expected: self.cols });
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn determinant(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(T::one());
        }
        let mut a = self.data.clone();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Some(T::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j].clone() * a[k * n + k].clone()
                        - a[i * n + k].clone() * a[k * n + j].clone();
                    a[i * n + j] = v / prev.clone();
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        Some(if negate { -d } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + factor.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + factor.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|v| format!("{v:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T> {
    /// `d_1 | d_2 | ...`, non-negative, zeros last; length `min(rows, cols)`.
    pub diagonal: Vec<T>,
    /// `(L, R)` with `L * M * R` equal to the diagonal matrix.
    pub transforms: Option<(IntMatrix<T>, IntMatrix<T>)>,
}

impl<T> SnfResult<T>
where
    T: Integer + Signed + Clone,
{
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Diagonal matrix of the given shape carrying the invariants.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix<T> {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

/// Smith normal form, optionally with unimodular transforms.
pub fn snf<T>(m: &IntMatrix<T>, with_transforms: bool) -> SnfResult<T>
where
    T: Integer + Signed + Clone,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = with_transforms.then(|| IntMatrix::identity(rows));
    let mut right = with_transforms.then(|| IntMatrix::identity(cols));
    let k = rows.min(cols);

    for t in 0..k {
        // Smallest nonzero |entry| of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_abs_position(&a, t, t..rows, t..cols) else {
            break;
        };
        move_pivot(&mut a, &mut left, &mut right, t, pi, pj);

        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let e = a.get(i, t).clone();
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(&pivot);
                let neg_q = -q;
                a.add_row_multiple(i, t, &neg_q);
                if let Some(l) = left.as_mut() {
                    l.add_row_multiple(i, t, &neg_q);
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let e = a.get(t, j).clone();
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(&pivot);
                let neg_q = -q;
                a.add_col_multiple(j, t, &neg_q);
                if let Some(r) = right.as_mut() {
                    r.add_col_multiple(j, t, &neg_q);
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived: promote it.
                let (pi, pj) = cross_min_position(&a, t);
                move_pivot(&mut a, &mut left, &mut right, t, pi, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility on the block.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    if let Some(l) = left.as_mut() {
                        l.add_row_multiple(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(l) = left.as_mut() {
                l.negate_row(t);
            }
        }
    }

    let diagonal = (0..k).map(|i| a.get(i, i).clone()).collect();
    SnfResult { diagonal, transforms: left.zip(right) }
}

fn min_abs_position<T>(
    a: &IntMatrix<T>,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)>
where
    T: Integer + Signed + Clone,
{
    let mut best: Option<(usize, usize, T)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn cross_min_position<T>(a: &IntMatrix<T>, t: usize) -> (usize, usize)
where
    T: Integer + Signed + Clone,
{
    let mut best = (t, t, a.get(t, t).abs());
    for i in t + 1..a.rows {
        let v = a.get(i, t);
        if !v.is_zero() && v.abs() < best.2 {
            best = (i, t, v.abs());
        }
    }
    for j in t + 1..a.cols {
        let v = a.get(t, j);
        if !v.is_zero() && v.abs() < best.2 {
            best = (t, j, v.abs());
        }
    }
    (best.0, best.1)
}

fn move_pivot<T>(
    a: &mut IntMatrix<T>,
    left: &mut Option<IntMatrix<T>>,
    right: &mut Option<IntMatrix<T>>,
    t: usize,
    pi: usize,
    pj: usize,
) where
    T: Integer + Signed + Clone,
{
    a.swap_rows(t, pi);
    if let Some(l) = left.as_mut() {
        l.swap_rows(t, pi);
    }
    a.swap_cols(t, pj);
    if let Some(r) = right.as_mut() {
        r.swap_cols(t, pj);
    }
}

/// Invariants of the cokernel `Z^cols / rowspace(M)`: units dropped, finite
/// orders ascending (divisibility chain), one `0` per free summand at the end.
pub fn abelian_invariants<T>(m: &IntMatrix<T>) -> Vec<T>
where
    T: Integer + Signed + Clone,
{
    let result = snf(m, false);
    let mut out: Vec<T> = result.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    // Columns beyond the diagonal carry free summands.
    out.extend(std::iter::repeat_n(T::zero(), m.cols.saturating_sub(m.rows.min(m.cols))));
    let (mut finite, zeros): (Vec<T>, Vec<T>) = out.into_iter().partition(|d| !d.is_zero());
    finite.sort();
    finite.extend(zeros);
    finite
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(rows: &[&[i64]], cols: usize) -> IntMatrix<BigInt> {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols)
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_2_3_normalizes_to_1_6() {
        let m = big(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(snf(&m, false).diagonal, ints(&[1, 6]));
    }

    #[test]
    fn identity_is_all_ones() {
        let m: IntMatrix<BigInt> = IntMatrix::identity(5);
        assert_eq!(snf(&m, false).diagonal, ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn empty_matrix_with_generators_is_free() {
        let m: IntMatrix<BigInt> = IntMatrix::zeros(0, 2);
        assert_eq!(abelian_invariants(&m), ints(&[0, 0]));
        let m: IntMatrix<BigInt> = IntMatrix::zeros(3, 0);
        assert!(abelian_invariants(&m).is_empty());
        assert!(snf(&m, true).diagonal.is_empty());
    }

    #[test]
    fn fibonacci_f28_relation_matrix() {
        // x_i x_{i+1} x_{i+2}^{-1}, indices mod 8.
        let rows: Vec<Vec<i64>> = (0..8)
            .map(|i| {
                let mut r = vec![0i64; 8];
                r[i] += 1;
                r[(i + 1) % 8] += 1;
                r[(i + 2) % 8] -= 1;
                r
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = big(&refs, 8);
        assert_eq!(abelian_invariants(&m), ints(&[3, 15]));
    }

    #[test]
    fn transforms_reconstruct_diagonal() {
        let m = big(&[&[4, 6, 2], &[8, 3, 5], &[-2, 0, 7], &[0, 0, 0]], 3);
        let r = snf(&m, true);
        let (l, rt) = r.transforms.clone().unwrap();
        let lhs = l.mul(&m).unwrap().mul(&rt).unwrap();
        assert_eq!(lhs, r.diagonal_matrix(4, 3));
        assert_eq!(l.determinant().unwrap().abs(), BigInt::from(1));
        assert_eq!(rt.determinant().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn works_over_machine_integers() {
        let m = IntMatrix::<i64>::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).unwrap();
        assert_eq!(snf(&m, false).diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn zero_rows_keep_free_rank() {
        let m = big(&[&[0, 0, 0], &[0, 2, 0]], 3);
        assert_eq!(abelian_invariants(&m), ints(&[2, 0, 0]));
    }

    #[test]
    fn bad_shapes_are_rejected() {
        assert!(IntMatrix::<i64>::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(IntMatrix::<i64>::from_rows(vec![vec![1], vec![1, 2]], 1).is_err());
    }
}
