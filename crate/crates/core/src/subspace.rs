use alloc::vec::Vec;

use crate::field::Field;
use crate::matrix::{LinalgError, Matrix};

/// A subspace of `F^n` stored by a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
        }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    pub fn span(
        field: F,
        ambient_dim: usize,
        vectors: &[Vec<F::Elem>],
    ) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix<F>) -> Self {
        let e = m.echelon();
        let rank = e.pivots.len();
        let rows: Vec<usize> = (0..rank).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: e.matrix.select_rows(&rows),
        }
    }

    /// `{v : m v = 0}`.
    pub fn kernel_of(m: &Matrix<F>) -> Self {
        let vs = m.kernel_vectors();
        Self::span(m.field().clone(), m.cols(), &vs).expect("kernel vectors have ambient length")
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors as rows, in reduced row-echelon form.
    pub fn basis_matrix(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vectors()
    }

    fn check_dim(&self, n: usize) -> Result<(), LinalgError> {
        if n != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: n,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool, LinalgError> {
        self.check_dim(v.len())?;
        let f = self.field();
        if v.iter().all(|x| f.is_zero(x)) {
            return Ok(true);
        }
        Ok(self.basis.transpose().solve(v)?.is_some())
    }

    /// Every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_dim(other.ambient_dim)?;
        for v in self.basis() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rows spanning the annihilator `{h : h . v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Matrix<F> {
        let vs = self.basis.kernel_vectors();
        Matrix::from_rows(self.field().clone(), self.ambient_dim, &vs)
            .expect("kernel vectors have ambient length")
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other.ambient_dim)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other.ambient_dim)?;
        let constraints = self.annihilator().vstack(&other.annihilator());
        Ok(Self::kernel_of(&constraints))
    }

    /// Vectors of `self` supported inside `coords` (0-based coordinates).
    pub fn restrict_to_coords(&self, coords: &[usize]) -> Self {
        let f = self.field().clone();
        let mut constraints = self.annihilator();
        for i in 0..self.ambient_dim {
            if !coords.contains(&i) {
                let mut row = alloc::vec![f.zero(); self.ambient_dim];
                row[i] = f.one();
                let r = Matrix::from_rows(f.clone(), self.ambient_dim, &[row]).expect("unit row");
                constraints = constraints.vstack(&r);
            }
        }
        Self::kernel_of(&constraints)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
        self.check_dim(v.len())?;
        self.basis.transpose().solve(v)
    }
}
