use std::fmt;
use std::sync::Arc;

use super::matrix::{vec_add, vec_scale, zero_vector, FMatrix, Vector};
use crate::exactfield::{CycField, CycNumber};

/// A subspace of K^n stored as the nonzero rows of its reduced row echelon
/// basis, so equal subspaces have equal bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: &Arc<CycField>, n: usize, vectors: Vec<Vector>) -> Self {
        Self::from_matrix(&FMatrix::from_rows(field, n, vectors))
    }

    pub fn from_matrix(m: &FMatrix) -> Self {
        let (r, rank, pivots) = m.rref();
        let rows = (0..rank).map(|k| r.row(k).to_vec()).collect();
        Subspace {
            basis: FMatrix::from_rows(m.field(), m.cols(), rows),
            pivots,
        }
    }

    pub fn zero(field: &Arc<CycField>, n: usize) -> Self {
        Subspace {
            basis: FMatrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Arc<CycField>, n: usize) -> Self {
        Subspace {
            basis: FMatrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Pivot columns of the canonical basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis rows in canonical form.
    pub fn basis(&self) -> &FMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::from_matrix(&self.basis.stack(&other.basis))
    }

    pub fn sum_all<'a>(field: &Arc<CycField>, n: usize, spaces: impl IntoIterator<Item = &'a Subspace>) -> Subspace {
        let mut rows = Vec::new();
        for s in spaces {
            rows.extend(s.vectors());
        }
        Self::span(field, n, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field(), self.ambient_dim());
        }
        // y with y·[U; -W] = 0 gives a·U = b·W
        let neg = other.basis.scale(&-CycNumber::one(self.field()));
        let stacked = self.basis.stack(&neg);
        let k = self.dim();
        let vectors = stacked
            .transpose()
            .nullspace()
            .into_iter()
            .map(|y| self.combine(&y[..k]))
            .collect();
        Self::span(self.field(), self.ambient_dim(), vectors)
    }

    /// Σ c_k b_k over the canonical basis.
    pub fn combine(&self, coeffs: &[CycNumber]) -> Vector {
        let mut acc = zero_vector(self.field(), self.ambient_dim());
        for (c, b) in coeffs.iter().zip(self.basis.row_vectors()) {
            if !c.is_zero() {
                acc = vec_add(&acc, &vec_scale(&b, c));
            }
        }
        acc
    }

    /// Coordinates of `v` in the canonical basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[CycNumber]) -> Option<Vector> {
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.combine(&coeffs) == v).then_some(coeffs)
    }

    pub fn contains_vector(&self, v: &[CycNumber]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.row_vectors().iter().all(|v| other.contains_vector(v))
    }

    /// Image under a linear map given as a matrix acting on columns.
    pub fn image(&self, m: &FMatrix) -> Subspace {
        let vectors = self.basis.row_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Self::span(self.field(), m.rows(), vectors)
    }

    /// Basis vectors of a complement of `self` inside `within`, chosen from
    /// the canonical basis of `within`.
    pub fn linear_complement_in(&self, within: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in within.vectors() {
            if !acc.contains_vector(&v) {
                acc = acc.sum(&Subspace::span(self.field(), self.ambient_dim(), vec![v.clone()]));
                out.push(v);
            }
        }
        out
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let rows: Vec<String> = self
            .vectors()
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(CycNumber::pretty).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
