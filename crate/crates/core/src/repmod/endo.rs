//! Finite-dimensional algebras of matrices: structure constants, the
//! Jacobson radical, locality and unit search. Shared by endomorphism rings
//! of representations and of modules over finite algebras.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{poly, Field, Matrix, Scalar, Subspace};

/// `sc[i][j]` holds the coordinates of `b_i · b_j`.
pub type StructureConstants = Vec<Vec<Vec<Scalar>>>;

/// Radical of an algebra given by structure constants, as the kernel of the
/// trace form of its regular representation.
///
/// Exact in characteristic 0 and in characteristic `p > dim`.
pub fn trace_radical(field: Field, sc: &StructureConstants) -> Result<Subspace> {
    let d = sc.len();
    let p = field.characteristic() as usize;
    if p != 0 && p <= d {
        return Err(Error::CharacteristicTooSmall { characteristic: field.characteristic(), needed: d });
    }
    // tr(L_{b_m}) = Σ_j coefficient of b_j in b_m b_j
    let traces: Vec<Scalar> = (0..d)
        .map(|m| (0..d).fold(field.zero(), |acc, j| &acc + &sc[m][j][j]))
        .collect();
    let gram = Matrix::from_fn(field, d, d, |i, k| {
        sc[i][k].iter().zip(&traces).fold(field.zero(), |acc, (c, t)| &acc + &(c * t))
    });
    Ok(gram.kernel())
}

/// Coordinates with respect to a linearly independent family of matrices.
#[derive(Debug, Clone)]
pub struct MatrixBasis {
    field: Field,
    shape: (usize, usize),
    basis: Vec<Matrix>,
    // entry positions that determine coordinates, and the inverse of the
    // square submatrix they cut out
    pivots: Vec<usize>,
    inv: Matrix,
}

impl MatrixBasis {
    pub fn new(field: Field, shape: (usize, usize), basis: Vec<Matrix>) -> Result<MatrixBasis> {
        let len = shape.0 * shape.1;
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let m = Matrix::from_rows(field, rows, len)?;
        let (_, pivots) = m.rref_with_pivots();
        if pivots.len() != basis.len() {
            return Err(Error::InvalidInput("matrix family is linearly dependent".into()));
        }
        let sub = m.select_cols(&pivots).transpose();
        let inv = sub.inverse().expect("pivot columns are independent");
        Ok(MatrixBasis { field, shape, basis, pivots, inv })
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `x`, assuming it lies in the span.
    pub fn coordinates_unchecked(&self, x: &Matrix) -> Vec<Scalar> {
        let e = x.entries();
        let picked: Vec<Scalar> = self.pivots.iter().map(|&p| e[p].clone()).collect();
        self.inv.mul_vec(&picked)
    }

    /// Coordinates of `x`, or `None` when `x` is outside the span.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        if x.shape() != self.shape {
            return None;
        }
        let c = self.coordinates_unchecked(x);
        (self.combine(&c) == *x).then_some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.shape.0, self.shape.1);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }
}

/// A subalgebra of `n x n` matrices given by a basis, with its radical.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    field: Field,
    n: usize,
    basis: MatrixBasis,
    structure: StructureConstants,
    radical: Subspace,
}

/// How an algebra of endomorphisms sits relative to locality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locality {
    /// `A / rad A = K`.
    Split,
    /// `A / rad A` is bigger than K but no splitting element was found.
    NonSplit,
    /// An element neither nilpotent nor invertible (a Fitting witness).
    Decomposable(Matrix),
}

impl EndAlgebra {
    pub fn new(field: Field, n: usize, mats: Vec<Matrix>) -> Result<EndAlgebra> {
        let basis = MatrixBasis::new(field, (n, n), mats)?;
        let structure: StructureConstants = basis
            .basis()
            .iter()
            .map(|a| {
                basis
                    .basis()
                    .iter()
                    .map(|b| {
                        basis
                            .coordinates(&(a * b))
                            .ok_or_else(|| Error::InvalidInput("matrix family is not closed under products".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let radical = trace_radical(field, &structure)?;
        Ok(EndAlgebra { field, n, basis, structure, radical })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        self.basis.basis()
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    /// The radical, in coordinates of the basis.
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        self.basis.coordinates(x)
    }

    pub fn combine(&self, c: &[Scalar]) -> Matrix {
        self.basis.combine(c)
    }

    fn is_nilpotent(&self, g: &Matrix) -> bool {
        g.pow(self.n.max(1) as u32).is_zero()
    }

    /// Decides whether the algebra is local with residue field K, searching
    /// for a Fitting witness otherwise.
    pub fn locality<R: Rng + ?Sized>(&self, rng: &mut R) -> Locality {
        if self.dim() == self.radical.dim() + 1 {
            return Locality::Split;
        }
        let d = self.dim();
        let mut candidates: Vec<Matrix> = self.basis().to_vec();
        for i in 0..d {
            for j in i + 1..d {
                candidates.push(&self.basis()[i] + &self.basis()[j]);
            }
        }
        for _ in 0..16 {
            let c: Vec<Scalar> = (0..d).map(|_| self.field.random(rng, 3)).collect();
            candidates.push(self.combine(&c));
        }
        for f in &candidates {
            for lambda in poly::roots(&poly::min_poly(f), self.field, rng) {
                let g = f - &Matrix::identity(self.field, self.n).scale(&lambda);
                if !self.is_nilpotent(&g) {
                    return Locality::Decomposable(g);
                }
            }
        }
        Locality::NonSplit
    }
}

/// Result of searching a space of square matrices for an invertible element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSearch {
    pub coefficients: Option<Vec<Scalar>>,
    /// The whole space was enumerated, so a miss is conclusive.
    pub exhaustive: bool,
}

const RANDOM_TRIALS: usize = 64;

/// Looks for an invertible linear combination of square matrices.
///
/// Over a prime field the space is enumerated when it has at most four
/// dimensions and at most 2^16 elements; otherwise the basis elements and
/// then 64 random combinations are tried.
pub fn find_unit<R: Rng + ?Sized>(field: Field, mats: &[Matrix], rng: &mut R) -> UnitSearch {
    let d = mats.len();
    let combine = |c: &[Scalar]| {
        let (r, k) = mats.first().map_or((0, 0), Matrix::shape);
        let mut acc = Matrix::zeros(field, r, k);
        for (m, x) in mats.iter().zip(c) {
            if !x.is_zero() {
                acc = &acc + &m.scale(x);
            }
        }
        acc
    };
    let is_unit = |m: &Matrix| m.is_square() && m.rank() == m.rows();
    if d == 0 {
        return UnitSearch { coefficients: None, exhaustive: true };
    }
    if let Some(q) = field.order() {
        if d <= 4 && q.checked_pow(d as u32).is_some_and(|n| n <= 1 << 16) {
            let elems = field.elements().unwrap();
            let mut idx = vec![0usize; d];
            loop {
                let c: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
                if is_unit(&combine(&c)) {
                    return UnitSearch { coefficients: Some(c), exhaustive: true };
                }
                let mut k = 0;
                loop {
                    if k == d {
                        return UnitSearch { coefficients: None, exhaustive: true };
                    }
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
    for i in 0..d {
        let mut c = vec![field.zero(); d];
        c[i] = field.one();
        if is_unit(&mats[i]) {
            return UnitSearch { coefficients: Some(c), exhaustive: false };
        }
    }
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<Scalar> = (0..d).map(|_| field.random(rng, 5)).collect();
        if is_unit(&combine(&c)) {
            return UnitSearch { coefficients: Some(c), exhaustive: false };
        }
    }
    UnitSearch { coefficients: None, exhaustive: false }
}
