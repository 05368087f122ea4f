use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of `K^n`, stored by its canonical RREF basis.
///
/// Two subspaces are equal exactly when their stored bases are identical,
/// so the derived `Eq`/`Hash` are semantic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let m = Matrix::from_rows(field, vectors, ambient).expect("vectors must have the ambient length");
        Subspace::from_row_matrix(&m)
    }

    /// Row space of `m`.
    pub fn from_row_matrix(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref_with_pivots();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        Subspace { ambient: m.cols(), basis: r.select_rows(&idx) }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let m = self.basis.vstack(&Matrix::from_rows(self.field(), vec![v.to_vec()], self.ambient).unwrap());
        m.rank() == self.dim()
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace::from_row_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Orthogonal complement for the standard bilinear form; `perp(perp(U)) = U`.
    pub fn perp(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    /// Image of the coordinate projection onto `coords` (in the given order).
    pub fn project(&self, coords: &[usize]) -> Subspace {
        Subspace::from_row_matrix(&self.basis.select_cols(coords))
    }

    /// `dim a - dim b` for `b ⊆ a`.
    pub fn quotient_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
        if !a.contains(b)? {
            return Err(Error::NotASubspace("quotient by a subspace that is not contained".into()));
        }
        Ok(a.dim() - b.dim())
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let imgs = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(self.field(), m.rows(), imgs)
    }

    /// Preimage `{v : m v ∈ self}` under `m`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        // v ∈ preimage iff every functional killing `self` kills m v.
        let ann = self.perp();
        if ann.dim() == 0 {
            return Subspace::full(self.field(), m.cols());
        }
        (&ann.basis * m).kernel()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.basis.transpose().solve(v)
    }

    /// Direct sum `self ⊕ other` inside `K^(n+m)`.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        let n = self.ambient + other.ambient;
        let mut vs = Vec::new();
        for v in self.basis_vectors() {
            let mut w = v;
            w.extend(std::iter::repeat(f.zero()).take(other.ambient));
            vs.push(w);
        }
        for v in other.basis_vectors() {
            let mut w = vec![f.zero(); self.ambient];
            w.extend(v);
            vs.push(w);
        }
        Subspace::span(f, n, vs)
    }
}

/// A chosen basis of `top / bottom` by coset representatives.
///
/// Representatives are the rows of `top`'s canonical basis that are
/// independent modulo `bottom`, taken in order.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    reps: Vec<Vec<Scalar>>,
    // columns: reps followed by bottom basis; has full column rank
    frame: Matrix,
    bottom_dim: usize,
    field: Field,
}

impl QuotientBasis {
    pub fn new(top: &Subspace, bottom: &Subspace) -> Result<QuotientBasis> {
        if !top.contains(bottom)? {
            return Err(Error::NotASubspace("bottom is not contained in top".into()));
        }
        let field = top.field();
        let mut reps = Vec::new();
        let mut acc = bottom.clone();
        for v in top.basis_vectors() {
            if !acc.contains_vector(&v) {
                acc = acc.sum(&Subspace::span(field, top.ambient(), vec![v.clone()]))?;
                reps.push(v);
            }
        }
        let mut cols = reps.clone();
        cols.extend(bottom.basis_vectors());
        let frame = Matrix::from_rows(field, cols, top.ambient())?.transpose();
        Ok(QuotientBasis { reps, frame, bottom_dim: bottom.dim(), field })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    /// Coordinates of the coset `v + bottom`; `None` when `v ∉ top`.
    pub fn coset_coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.frame.cols() == 0 {
            return if v.iter().all(Scalar::is_zero) { Some(Vec::new()) } else { None };
        }
        let x = self.frame.solve(v)?;
        Some(x[..self.reps.len()].to_vec())
    }

    /// Lift of quotient coordinates back to the ambient space.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.reps.len());
        let n = self.frame.rows();
        let mut out = vec![self.field.zero(); n];
        for (c, r) in coords.iter().zip(&self.reps) {
            for (o, x) in out.iter_mut().zip(r) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    pub fn bottom_dim(&self) -> usize {
        self.bottom_dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::span(Q, 2, vec![v(&[1, 0])]);
        let b = Subspace::span(Q, 2, vec![v(&[0, 1])]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(a.sum(&b).unwrap().is_full());

        let diag = Subspace::span(Q, 2, vec![v(&[1, 1])]);
        assert!(diag.project(&[0]).is_full());

        let full = Subspace::full(Q, 2);
        assert_eq!(Subspace::quotient_dim(&full, &a).unwrap(), 1);
        assert!(matches!(Subspace::quotient_dim(&a, &full), Err(Error::NotASubspace(_))));
        assert!(matches!(a.sum(&Subspace::zero(Q, 3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(Q, 3, vec![v(&[1, 2, 3]), v(&[2, 4, 7])]);
        let b = Subspace::span(Q, 3, vec![v(&[0, 0, 1]), v(&[3, 6, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_basis_coordinates() {
        let top = Subspace::full(Q, 3);
        let bottom = Subspace::span(Q, 3, vec![v(&[1, 1, 0])]);
        let qb = QuotientBasis::new(&top, &bottom).unwrap();
        assert_eq!(qb.dim(), 2);
        let c = qb.coset_coordinates(&v(&[1, 1, 0])).unwrap();
        assert!(c.iter().all(Scalar::is_zero));
        let w = v(&[2, 5, -1]);
        let c = qb.coset_coordinates(&w).unwrap();
        let back = qb.lift(&c);
        let diff: Vec<Scalar> = w.iter().zip(&back).map(|(a, b)| a - b).collect();
        assert!(bottom.contains_vector(&diff));
    }

    #[test]
    fn preimage() {
        let m = Matrix::from_i64_rows(Q, &[&[1, 0], &[0, 0]]);
        let target = Subspace::zero(Q, 2);
        assert_eq!(target.preimage_under(&m), Subspace::span(Q, 2, vec![v(&[0, 1])]));
    }
}
