use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{CycField, CycNumber};

/// Dense matrix over K, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

/// A column vector over K.
pub type Vector = Vec<CycNumber>;

pub fn zero_vector(field: &Arc<CycField>, n: usize) -> Vector {
    vec![CycNumber::zero(field); n]
}

pub fn unit_vector(field: &Arc<CycField>, n: usize, k: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[k] = CycNumber::one(field);
    v
}

pub fn vec_add(a: &[CycNumber], b: &[CycNumber]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[CycNumber], c: &CycNumber) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[CycNumber]) -> bool {
    a.iter().all(CycNumber::is_zero)
}

impl FMatrix {
    pub fn zeros(field: &Arc<CycField>, rows: usize, cols: usize) -> Self {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![CycNumber::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for k in 0..n {
            m.set(k, k, CycNumber::one(field));
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(field: &Arc<CycField>, cols: usize, rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let data: Vec<CycNumber> = rows
            .into_iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cols, "ragged matrix");
                row
            })
            .collect();
        FMatrix {
            field: field.clone(),
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_columns(field: &Arc<CycField>, rows: usize, cols: Vec<Vector>) -> Self {
        Self::from_rows(field, rows, cols).transpose()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Parses rows of CycNumber text.
    pub fn parse(field: &Arc<CycField>, rows: &[Vec<String>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let parsed = rows
            .iter()
            .map(|row| {
                if row.len() != cols {
                    return Err(Error::DimensionMismatch("ragged matrix".into()));
                }
                row.iter()
                    .map(|s| CycNumber::parse_text(field, s))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(field, cols, parsed))
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(CycNumber::to_text).collect())
            .collect()
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &CycNumber {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: CycNumber) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycNumber] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNumber::is_zero)
    }

    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNumber]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = CycNumber::zero(&self.field);
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &FMatrix) -> FMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &FMatrix) -> FMatrix {
        self.add(&other.scale(&-CycNumber::one(&self.field)))
    }

    pub fn scale(&self, c: &CycNumber) -> FMatrix {
        FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> CycNumber {
        let mut acc = CycNumber::zero(&self.field);
        for k in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(k, k);
        }
        acc
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        FMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal sum.
    pub fn block_diag(field: &Arc<CycField>, blocks: &[&FMatrix]) -> FMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (FMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&k| !m.get(k, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, r * m.cols + k);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(r, k) * &inv;
                m.set(r, k, v);
            }
            for k in 0..m.rows {
                if k == r {
                    continue;
                }
                let f = m.get(k, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(k, j) - &(&f * m.get(r, j));
                    m.set(k, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of {x : A x = 0}, one vector per free column, ordered by column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = unit_vector(&self.field, self.cols, f);
                for (k, &p) in pivots.iter().enumerate().take(rank) {
                    v[p] = -r.get(k, f);
                }
                v
            })
            .collect()
    }

    /// Some x with A x = b, if the system is consistent.
    pub fn solve(&self, b: &[CycNumber]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = FMatrix::from_columns(
            &self.field,
            self.rows,
            (0..self.cols).map(|c| self.column(c)).chain([b.to_vec()]).collect(),
        );
        let (r, rank, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(&self.field, self.cols);
        for (k, &p) in pivots.iter().enumerate().take(rank) {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<FMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let id = FMatrix::identity(&self.field, n);
        let aug = FMatrix::from_columns(
            &self.field,
            n,
            (0..n)
                .map(|c| self.column(c))
                .chain((0..n).map(|c| id.column(c)))
                .collect(),
        );
        let (r, rank, pivots) = aug.rref();
        if rank < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = FMatrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let parts: Vec<String> = self.row(r).iter().map(CycNumber::pretty).collect();
                parts.join(" ")
            })
            .collect();
        write!(f, "({})", rows.join("; "))
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
