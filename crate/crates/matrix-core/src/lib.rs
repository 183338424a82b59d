//! Dense exact matrices over any [`Ring`], indexed 1-based at the API the
//! way submatrix notation is written by hand: `A_{[i,j]}^{[k,l]}` is
//! `a.submatrix(&seg(i, j), &seg(k, l))`.

use std::collections::HashMap;
use std::fmt;

use exact_arith::{ArithError, Field, Ring};

mod json;

pub use json::{matrix_from_json, matrix_to_json};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("index list must be strictly increasing")]
    UnsortedIndices,
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("bad matrix json: {0}")]
    Json(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `[a, a+1, ..., b]`, empty when `b < a`.
pub fn seg(a: usize, b: usize) -> Vec<usize> {
    if b < a {
        Vec::new()
    } else {
        (a..=b).collect()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> RingMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RingMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(RingMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self, MatrixError> {
        let r = cols.first().map_or(0, |x| x.len());
        if cols.iter().any(|x| x.len() != r) {
            return Err(MatrixError::DimensionMismatch("columns of unequal length".into()));
        }
        Ok(Self::from_fn(r, cols.len(), |i, j| cols[j - 1][i - 1].clone()))
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

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Entry (i, j), 1-based. Panics out of range, like slice indexing.
    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "({i},{j}) outside {}x{}", self.rows, self.cols);
        &self.data[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "({i},{j}) outside {}x{}", self.rows, self.cols);
        self.data[(i - 1) * self.cols + (j - 1)] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (1..=self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (1..=self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    fn check_list(list: &[usize], bound: usize) -> Result<(), MatrixError> {
        for w in list.windows(2) {
            if w[0] >= w[1] {
                return Err(MatrixError::UnsortedIndices);
            }
        }
        for &index in list {
            if index == 0 || index > bound {
                return Err(MatrixError::IndexOutOfRange { index, bound });
            }
        }
        Ok(())
    }

    /// Rows `rowset` and columns `colset`, both 1-based and strictly
    /// increasing. Empty lists give legal empty matrices.
    pub fn submatrix(&self, rowset: &[usize], colset: &[usize]) -> Result<Self, MatrixError> {
        Self::check_list(rowset, self.rows)?;
        Self::check_list(colset, self.cols)?;
        let mut data = Vec::with_capacity(rowset.len() * colset.len());
        for &i in rowset {
            for &j in colset {
                data.push(self.at(i - 1, j - 1).clone());
            }
        }
        Ok(RingMatrix {
            rows: rowset.len(),
            cols: colset.len(),
            data,
        })
    }

    /// Hatted selection: delete the listed rows and columns.
    pub fn delete(&self, rows_del: &[usize], cols_del: &[usize]) -> Result<Self, MatrixError> {
        for &index in rows_del {
            if index == 0 || index > self.rows {
                return Err(MatrixError::IndexOutOfRange { index, bound: self.rows });
            }
        }
        for &index in cols_del {
            if index == 0 || index > self.cols {
                return Err(MatrixError::IndexOutOfRange { index, bound: self.cols });
            }
        }
        let keep_r: Vec<usize> = (1..=self.rows).filter(|i| !rows_del.contains(i)).collect();
        let keep_c: Vec<usize> = (1..=self.cols).filter(|j| !cols_del.contains(j)).collect();
        self.submatrix(&keep_r, &keep_c)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> RingMatrix<U> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<RingMatrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn same_shape(&self, o: &Self, what: &str) -> Result<(), MatrixError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, MatrixError> {
        self.same_shape(o, "sum")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, MatrixError> {
        self.same_shape(o, "difference")?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scalar_mul(&self, c: &T) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn matmul(&self, o: &Self) -> Result<Self, MatrixError> {
        if self.cols != o.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.at(r, t);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.at(t, c);
                    if !b.is_zero() {
                        let idx = r * o.cols + c;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.at(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, w: &[T]) -> Result<Vec<T>, MatrixError> {
        self.transpose().mul_vec(w)
    }

    /// `[A | B]`
    pub fn hconcat(&self, o: &Self) -> Result<Self, MatrixError> {
        if self.rows != o.rows {
            return Err(MatrixError::DimensionMismatch("hconcat row counts".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j <= self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        }))
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.rows != self.cols {
            Err(MatrixError::NotSquare(self.rows, self.cols))
        } else {
            Ok(self.rows)
        }
    }

    /// Determinant: plain elimination over a field, fraction-free elimination
    /// otherwise.
    pub fn det(&self) -> Result<T, MatrixError> {
        if T::IS_FIELD {
            self.det_gauss()
        } else {
            self.det_bareiss()
        }
    }

    /// Elimination with division by the pivot; for fields only, the
    /// divisions are exact there.
    pub fn det_gauss(&self) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        let mut a = self.data.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Ok(T::zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = a[c * n + c].clone();
            det = det.mul(&piv);
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].div_exact(&piv)?;
                for j in c + 1..n {
                    if !a[c * n + j].is_zero() {
                        a[r * n + j] = a[r * n + j].sub(&f.mul(&a[c * n + j]));
                    }
                }
                a[r * n + c] = T::zero();
            }
        }
        Ok(det)
    }

    /// Bareiss fraction-free elimination. Every division is exact.
    pub fn det_bareiss(&self) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.data.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Ok(T::zero());
                };
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign = !sign;
            }
            let piv = a[k * n + k].clone();
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    let mut num = a[i * n + j].mul(&piv);
                    if !aik.is_zero() && !a[k * n + j].is_zero() {
                        num = num.sub(&aik.mul(&a[k * n + j]));
                    }
                    a[i * n + j] = num.div_exact(&prev)?;
                }
                a[i * n + k] = T::zero();
            }
            prev = piv;
        }
        let d = a[n * n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Memoized Laplace expansion over the leading rows: one minor per
    /// column subset, no divisions. Independent of the elimination paths and
    /// cheap on sparse symbolic matrices. Dimension is capped at 63.
    pub fn det_laplace(&self) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        if n > 63 {
            return Err(MatrixError::DimensionMismatch("laplace expansion above 63".into()));
        }
        let mut layer: HashMap<u64, T> = HashMap::from([(0u64, T::one())]);
        for r in 0..n {
            let mut next: HashMap<u64, T> = HashMap::new();
            for (mask, val) in &layer {
                for c in 0..n {
                    if mask >> c & 1 == 1 {
                        continue;
                    }
                    let a = self.at(r, c);
                    if a.is_zero() {
                        continue;
                    }
                    let before = (mask & ((1u64 << c) - 1)).count_ones() as usize;
                    let term = a.mul(val);
                    let term = if (r + before) % 2 == 1 { term.neg() } else { term };
                    let slot = next.entry(mask | 1 << c).or_insert_with(T::zero);
                    *slot = slot.add(&term);
                }
            }
            next.retain(|_, v| !v.is_zero());
            layer = next;
        }
        let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        Ok(layer.remove(&full).unwrap_or_else(T::zero))
    }

    /// Textbook cofactor expansion along the first row. Exponential; the
    /// reference oracle for small matrices.
    pub fn det_cofactor(&self) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(T::one());
        }
        if n == 1 {
            return Ok(self.data[0].clone());
        }
        let mut acc = T::zero();
        for j in 1..=n {
            let a = self.get(1, j);
            if a.is_zero() {
                continue;
            }
            let minor = self.delete(&[1], &[j])?.det_cofactor()?;
            let t = a.mul(&minor);
            acc = if j % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    /// Row `i` cofactor expansion, used to check Laplace along any row.
    pub fn det_along_row(&self, i: usize) -> Result<T, MatrixError> {
        let n = self.require_square()?;
        let mut acc = T::zero();
        for j in 1..=n {
            let a = self.get(i, j);
            if a.is_zero() {
                continue;
            }
            let t = a.mul(&self.delete(&[i], &[j])?.det()?);
            acc = if (i + j) % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }
}

impl<F: Field> RingMatrix<F> {
    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.require_square()?;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * n + c].is_zero()).ok_or(MatrixError::Singular)?;
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a[c * n + c].inv()?;
            for j in 0..n {
                a[c * n + j] = a[c * n + j].mul(&pinv);
                inv[c * n + j] = inv[c * n + j].mul(&pinv);
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for j in 0..n {
                    a[r * n + j] = a[r * n + j].sub(&f.mul(&a[c * n + j]));
                    inv[r * n + j] = inv[r * n + j].sub(&f.mul(&inv[c * n + j]));
                }
            }
        }
        Ok(RingMatrix { rows: n, cols: n, data: inv })
    }
}

impl<T: Ring> fmt::Display for RingMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::{Fp, Poly, Rational};

    fn q(rows: &[&[i64]]) -> RingMatrix<Rational> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_submatrix() {
        let i3 = RingMatrix::<Rational>::identity(3);
        assert_eq!(i3.submatrix(&[2, 3], &[2, 3]).unwrap(), RingMatrix::identity(2));
        assert_eq!(i3.submatrix(&seg(1, 3), &seg(1, 3)).unwrap(), i3);
        assert!(matches!(
            i3.submatrix(&[0], &[1]),
            Err(MatrixError::IndexOutOfRange { .. })
        ));
        assert_eq!(i3.submatrix(&[3, 2], &[1]), Err(MatrixError::UnsortedIndices));
        assert!(matches!(i3.submatrix(&[4], &[1]), Err(MatrixError::IndexOutOfRange { .. })));
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        let e = RingMatrix::<Fp>::zeros(0, 0);
        assert_eq!(e.det().unwrap(), Fp::one());
        assert_eq!(e.det_bareiss().unwrap(), Fp::one());
        assert_eq!(e.det_laplace().unwrap(), Fp::one());
        let m = RingMatrix::<Fp>::identity(3).submatrix(&[], &[1, 2]).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 2));
    }

    #[test]
    fn basic_determinants() {
        assert_eq!(RingMatrix::<Rational>::identity(5).det().unwrap(), Rational::one());
        let z = q(&[&[1, 2, 3], &[0, 0, 0], &[4, 5, 6]]);
        assert_eq!(z.det().unwrap(), Rational::zero());
        let a = q(&[&[2, -1, 0, 3], &[1, 4, 2, -2], &[0, 5, -3, 1], &[7, 1, 1, 1]]);
        let d = a.det_cofactor().unwrap();
        assert_eq!(a.det().unwrap(), d);
        assert_eq!(a.det_bareiss().unwrap(), d);
        assert_eq!(a.det_laplace().unwrap(), d);
        for i in 1..=4 {
            assert_eq!(a.det_along_row(i).unwrap(), d);
        }
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = q(&[&[2, 0], &[0, 4]]);
        let di = d.inverse().unwrap();
        assert_eq!(di.get(1, 1), &Rational::new(1, 2));
        assert_eq!(di.get(2, 2), &Rational::new(1, 4));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn not_square_and_mismatch() {
        let a = q(&[&[1, 2, 3]]);
        assert_eq!(a.det(), Err(MatrixError::NotSquare(1, 3)));
        assert!(a.matmul(&a).is_err());
        assert!(a.add(&q(&[&[1]])).is_err());
    }

    #[test]
    fn symbolic_2x2() {
        let v = |i| Poly::<Rational>::var(i);
        let m = RingMatrix::from_rows(vec![vec![v(0), v(1)], vec![v(2), v(3)]]).unwrap();
        let expect: Poly<Rational> = "x0*x3 - x1*x2".parse().unwrap();
        assert_eq!(m.det().unwrap(), expect);
        assert_eq!(m.det_laplace().unwrap(), expect);
    }

    #[test]
    fn delete_is_hatted_selection() {
        let a = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.delete(&[2], &[1, 3]).unwrap(), q(&[&[2], &[8]]));
    }
}
