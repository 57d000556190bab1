use super::poly::Poly;
use super::ring::QuotientRing;
use crate::error::{Error, Result};

/// Dense matrix of ring elements, stored row-major. Arithmetic goes through a
/// [`QuotientRing`] so entries stay in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(r: &QuotientRing, n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, r.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>, ncols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch(format!("row {i} has {} entries, expected {ncols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols: ncols, data })
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<Poly>]) -> Self {
        let mut m = Matrix::zero(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vec(&self, i: usize) -> Vec<Poly> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<Poly>> = idx.iter().map(|&j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zero(idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        let mut m = Matrix::zero(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    pub fn place(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.first().map(|m| m.rows).unwrap_or(0);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::ShapeMismatch("hstack with unequal row counts".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let mut c = 0;
        for m in parts {
            out.place(0, c, m);
            c += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.first().map(|m| m.cols).unwrap_or(0);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::ShapeMismatch("vstack with unequal column counts".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(rows, cols);
        let mut r = 0;
        for m in parts {
            out.place(r, 0, m);
            r += m.rows;
        }
        Ok(out)
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.place(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix, r: &QuotientRing) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = r.poly();
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = p.add(&acc, &p.mul(a, b));
                }
                out.set(i, j, r.reduce(&acc));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Poly], r: &QuotientRing) -> Vec<Poly> {
        let col = Matrix::from_columns(v.len(), &[v.to_vec()]);
        self.mul(&col, r).expect("shape").column(0)
    }

    pub fn add(&self, other: &Matrix, r: &QuotientRing) -> Result<Matrix> {
        self.zip(other, |a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Matrix, r: &QuotientRing) -> Result<Matrix> {
        self.zip(other, |a, b| r.sub(a, b))
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self, r: &QuotientRing) -> Matrix {
        self.map(|p| r.neg(p))
    }

    pub fn scale(&self, f: &Poly, r: &QuotientRing) -> Matrix {
        self.map(|p| r.mul(p, f))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn reduce(&self, r: &QuotientRing) -> Matrix {
        self.map(|p| r.reduce(p))
    }

    /// True if some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.data.iter().any(|p| p.is_constant())
    }

    pub fn format(&self, r: &QuotientRing) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| r.format(self.get(i, j))).collect())
            .collect()
    }
}
