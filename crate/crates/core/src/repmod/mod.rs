//! Finite-dimensional representations of quivers with relations, their
//! morphisms and hom spaces.

pub mod endo;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, QuotientBasis, Scalar, Subspace};
use crate::quivalg::{Path, QuiverAlgebra, RingElement};

pub use endo::{EndAlgebra, Locality, UnitSearch};

/// A module over a quiver algebra: one space per vertex, one matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    algebra: Arc<QuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<QuiverAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions given, quiver has {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow matrices given, quiver has {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidInput(format!("matrix for `{}` is over the wrong field", a.name)));
            }
        }
        let rep = Representation { algebra, dims, maps };
        for (i, r) in rep.algebra.relations().iter().enumerate() {
            if !rep.act(r)?.is_zero() {
                return Err(Error::InvalidInput(format!("relation {} does not act as zero", i + 1)));
            }
        }
        Ok(rep)
    }

    pub fn zero(algebra: Arc<QuiverAlgebra>) -> Representation {
        let f = algebra.field();
        let maps = algebra.quiver().arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        let dims = vec![0; algebra.vertex_count()];
        Representation { algebra, dims, maps }
    }

    /// The indecomposable projective `P(s)`: `P(s)(v)` has the irreducible
    /// paths `s -> v` as basis.
    pub fn projective(algebra: Arc<QuiverAlgebra>, s: usize) -> Result<Representation> {
        let n = algebra.vertex_count();
        let bases: Vec<Vec<Path>> = (0..n).map(|v| algebra.hom_basis(s, v)).collect::<Result<_>>()?;
        let f = algebra.field();
        let mut maps = Vec::new();
        for (ai, a) in algebra.quiver().arrows().iter().enumerate() {
            let src = &bases[a.source];
            let tgt = &bases[a.target];
            let mut m = Matrix::zeros(f, tgt.len(), src.len());
            for (j, p) in src.iter().enumerate() {
                let ap = RingElement::arrow(algebra.quiver(), ai, f)
                    .compose(&RingElement::from_path(p.clone(), f.one()))?;
                let red = algebra.reduce(&ap);
                for (path, c) in red.terms() {
                    let i = tgt.iter().position(|t| t == path).expect("normal forms are basis paths");
                    m.set(i, j, c.clone());
                }
            }
            maps.push(m);
        }
        Representation::new(algebra, bases.iter().map(Vec::len).collect(), maps)
    }

    /// The simple module concentrated at `v`.
    pub fn simple(algebra: Arc<QuiverAlgebra>, v: usize) -> Result<Representation> {
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        let f = algebra.field();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation::new(algebra, dims, maps)
    }

    pub fn algebra(&self) -> &Arc<QuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Start of vertex `v`'s block in the concatenated space.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn same_algebra(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Matrix of a path: product of arrow matrices in application order.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let f = self.field();
        let mut acc = Matrix::identity(f, self.dims[p.source]);
        for &a in &p.arrows {
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    /// The action of a ring element, shape `dim(target) x dim(source)`.
    pub fn act(&self, r: &RingElement) -> Result<Matrix> {
        let n = self.algebra.vertex_count();
        if r.source >= n || r.target >= n {
            return Err(Error::SortMismatch("ring element sorts are not vertices of the algebra".into()));
        }
        let mut acc = Matrix::zeros(self.field(), self.dims[r.target], self.dims[r.source]);
        for (p, c) in r.terms() {
            if p.arrows.iter().any(|&a| a >= self.maps.len()) {
                return Err(Error::SortMismatch("ring element uses an unknown arrow".into()));
            }
            acc = &acc + &self.path_matrix(p).scale(c);
        }
        Ok(acc)
    }

    /// Transport of structure along per-vertex invertible matrices `g_v`:
    /// the arrow `a: s -> t` acts by `g_t M(a) g_s^{-1}`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Representation> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&g[a.target] * m) * &inv[a.source])
            .collect();
        Representation::new(self.algebra.clone(), self.dims.clone(), maps)
    }

    /// The K-linear dual, a module over the opposite algebra: arrow matrices transposed.
    pub fn dual(&self) -> Representation {
        let alg = Arc::new(self.algebra.opposite());
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation::new(alg, self.dims.clone(), maps).expect("dual of a module is a module")
    }

    /// The same data read as a module over another (structurally equal) algebra handle.
    pub fn rebind(&self, algebra: Arc<QuiverAlgebra>) -> Result<Representation> {
        Representation::new(algebra, self.dims.clone(), self.maps.clone())
    }
}

/// A morphism of representations, one block per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Matrix>,
}

impl RepMorphism {
    /// Checks shapes and every commuting square.
    pub fn new(source: &Representation, target: &Representation, blocks: Vec<Matrix>) -> Result<RepMorphism> {
        source.same_algebra(target)?;
        if blocks.len() != source.dims.len() {
            return Err(Error::DimensionMismatch("one block per vertex required".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::DimensionMismatch(format!(
                    "block at vertex {v} should be {}x{}",
                    target.dims[v], source.dims[v]
                )));
            }
        }
        for (i, a) in source.algebra.quiver().arrows().iter().enumerate() {
            if &blocks[a.target] * &source.maps[i] != &target.maps[i] * &blocks[a.source] {
                return Err(Error::InvalidInput(format!("square at arrow `{}` does not commute", a.name)));
            }
        }
        Ok(RepMorphism { source: source.clone(), target: target.clone(), blocks })
    }

    fn unchecked(source: &Representation, target: &Representation, blocks: Vec<Matrix>) -> RepMorphism {
        RepMorphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(m: &Representation) -> RepMorphism {
        let f = m.field();
        RepMorphism::unchecked(m, m, m.dims.iter().map(|&d| Matrix::identity(f, d)).collect())
    }

    pub fn zero(source: &Representation, target: &Representation) -> RepMorphism {
        let f = source.field();
        let blocks = (0..source.dims.len())
            .map(|v| Matrix::zeros(f, target.dims[v], source.dims[v]))
            .collect();
        RepMorphism::unchecked(source, target, blocks)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMorphism) -> Result<RepMorphism> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("morphisms are not composable".into()));
        }
        let blocks = self.blocks.iter().zip(&first.blocks).map(|(a, b)| a * b).collect();
        Ok(RepMorphism::unchecked(&first.source, &self.target, blocks))
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        RepMorphism::unchecked(&self.source, &self.target, blocks)
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        RepMorphism::unchecked(&self.source, &self.target, self.blocks.iter().map(|b| b.scale(c)).collect())
    }

    /// Linear combination of parallel morphisms.
    pub fn combine(source: &Representation, target: &Representation, basis: &[RepMorphism], coeffs: &[Scalar]) -> RepMorphism {
        let mut acc = RepMorphism::zero(source, target);
        for (b, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Block-diagonal matrix on the concatenated spaces.
    pub fn total_matrix(&self) -> Matrix {
        Matrix::block_diag(self.source.field(), &self.blocks)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_injective)
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.blocks.iter().all(|b| b.inverse().is_some())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism::unchecked(&self.target, &self.source, blocks))
    }

    /// Image of a tuple of elements, each given with its vertex.
    pub fn apply(&self, v: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.blocks[v].mul_vec(x)
    }
}

/// A K-basis of `Hom(M, N)`, found as the kernel of the assembled
/// commuting-square system.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    m.same_algebra(n)?;
    let f = m.field();
    let nv = m.dims.len();
    // unknown index of entry (i, j) of block v
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offsets[nv];
    let idx = |v: usize, i: usize, j: usize| offsets[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (ai, a) in m.algebra.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.maps[ai];
        let na = &n.maps[ai];
        // (f_t M(a) - N(a) f_s)[i][j] = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let u = idx(t, i, k);
                        row[u] = &row[u] + c;
                    }
                }
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let u = idx(s, k, j);
                        row[u] = &row[u] - c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let sol = Matrix::from_rows(f, rows, unknowns)?.kernel();
    Ok(sol
        .basis_vectors()
        .into_iter()
        .map(|x| {
            let blocks = (0..nv)
                .map(|v| Matrix::from_fn(f, n.dims[v], m.dims[v], |i, j| x[idx(v, i, j)].clone()))
                .collect();
            RepMorphism::unchecked(m, n, blocks)
        })
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// Direct sum with the canonical injections.
pub fn direct_sum(parts: &[Representation]) -> Result<(Representation, Vec<RepMorphism>)> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidInput("direct sum of an empty list".into()));
    };
    for p in parts {
        first.same_algebra(p)?;
    }
    let alg = first.algebra.clone();
    let f = alg.field();
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| Matrix::block_diag(f, &parts.iter().map(|p| p.maps[a].clone()).collect::<Vec<_>>()))
        .collect();
    let sum = Representation::new(alg, dims.clone(), maps)?;
    let mut injections = Vec::new();
    let mut off = vec![0usize; nv];
    for p in parts {
        let blocks = (0..nv)
            .map(|v| {
                let mut b = Matrix::zeros(f, dims[v], p.dims[v]);
                b.set_block(off[v], 0, &Matrix::identity(f, p.dims[v]));
                b
            })
            .collect();
        for v in 0..nv {
            off[v] += p.dims[v];
        }
        injections.push(RepMorphism::unchecked(p, &sum, blocks));
    }
    Ok((sum, injections))
}

/// Like [`direct_sum`], but an empty list gives the zero module of `alg`.
pub fn direct_sum_in(alg: &Arc<QuiverAlgebra>, parts: &[Representation]) -> Result<(Representation, Vec<RepMorphism>)> {
    if parts.is_empty() {
        Ok((Representation::zero(alg.clone()), Vec::new()))
    } else {
        direct_sum(parts)
    }
}

/// Kernel with its inclusion.
pub fn kernel_of(h: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let m = &h.source;
    let f = m.field();
    let kers: Vec<Subspace> = h.blocks.iter().map(Matrix::kernel).collect();
    let incl: Vec<Matrix> = kers.iter().map(|k| k.basis().transpose()).collect();
    let mut maps = Vec::new();
    for (ai, a) in m.algebra.quiver().arrows().iter().enumerate() {
        let img = &m.maps[ai] * &incl[a.source];
        let x = if kers[a.target].dim() == 0 {
            Matrix::zeros(f, 0, img.cols())
        } else {
            incl[a.target].solve_matrix(&img).ok_or_else(|| Error::InvalidInput("morphism is not a module map".into()))?
        };
        maps.push(x);
    }
    let k = Representation::new(m.algebra.clone(), kers.iter().map(Subspace::dim).collect(), maps)?;
    let inc = RepMorphism::new(&k, m, incl)?;
    Ok((k, inc))
}

/// Cokernel with its projection; coset bases come from the standard basis.
pub fn cokernel_of(h: &RepMorphism) -> Result<(Representation, RepMorphism)> {
    let n = &h.target;
    let f = n.field();
    let nv = n.dims.len();
    let qbs: Vec<QuotientBasis> = (0..nv)
        .map(|v| QuotientBasis::new(&Subspace::full(f, n.dims[v]), &h.blocks[v].image()))
        .collect::<Result<_>>()?;
    let proj: Vec<Matrix> = (0..nv)
        .map(|v| {
            let q = &qbs[v];
            let mut p = Matrix::zeros(f, q.dim(), n.dims[v]);
            for j in 0..n.dims[v] {
                let mut e = vec![f.zero(); n.dims[v]];
                e[j] = f.one();
                for (i, c) in q.coset_coordinates(&e).expect("full space").into_iter().enumerate() {
                    p.set(i, j, c);
                }
            }
            p
        })
        .collect();
    let mut maps = Vec::new();
    for (ai, a) in n.algebra.quiver().arrows().iter().enumerate() {
        let lifts = Matrix::from_rows(f, qbs[a.source].representatives().to_vec(), n.dims[a.source])?.transpose();
        maps.push(&(&proj[a.target] * &n.maps[ai]) * &lifts);
    }
    let c = Representation::new(n.algebra.clone(), qbs.iter().map(QuotientBasis::dim).collect(), maps)?;
    let p = RepMorphism::new(n, &c, proj)?;
    Ok((c, p))
}

/// Jacobson radical of `End(M)` (trace form of the regular representation).
pub fn endo_radical(m: &Representation) -> Result<EndAlgebra> {
    let basis = hom_space(m, m)?;
    let mats: Vec<Matrix> = basis.iter().map(RepMorphism::total_matrix).collect();
    EndAlgebra::new(m.field(), m.total_dim(), mats)
}

/// Outcome of the indecomposability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indecomposability {
    pub indecomposable: bool,
    /// `End/rad` is larger than K although no splitting was found.
    pub non_split: bool,
    pub end_dim: usize,
    pub radical_dim: usize,
}

pub fn indecomposability(m: &Representation, seed: u64) -> Result<Indecomposability> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let end = endo_radical(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loc = end.locality(&mut rng);
    Ok(Indecomposability {
        indecomposable: !matches!(loc, Locality::Decomposable(_)),
        non_split: matches!(loc, Locality::NonSplit),
        end_dim: end.dim(),
        radical_dim: end.radical().dim(),
    })
}

pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    Ok(indecomposability(m, 0)?.indecomposable)
}

/// Verdict of the isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness: Option<RepMorphism>,
    /// A negative answer obtained by sampling rather than exhaustion.
    pub probabilistic: bool,
}

pub fn are_isomorphic(m: &Representation, n: &Representation, seed: u64) -> Result<IsoVerdict> {
    m.same_algebra(n)?;
    let no = IsoVerdict { isomorphic: false, witness: None, probabilistic: false };
    if m.dims != n.dims {
        return Ok(no);
    }
    let mn = hom_space(m, n)?;
    let nm_dim = hom_dim(n, m)?;
    if mn.len() != nm_dim || hom_dim(m, m)? != mn.len() {
        return Ok(no);
    }
    if m.is_zero() {
        return Ok(IsoVerdict { isomorphic: true, witness: Some(RepMorphism::identity(m)), probabilistic: false });
    }
    let mats: Vec<Matrix> = mn.iter().map(RepMorphism::total_matrix).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let search = endo::find_unit(m.field(), &mats, &mut rng);
    Ok(match search.coefficients {
        Some(c) => IsoVerdict {
            isomorphic: true,
            witness: Some(RepMorphism::combine(m, n, &mn, &c)),
            probabilistic: false,
        },
        None => IsoVerdict { isomorphic: false, witness: None, probabilistic: !search.exhaustive },
    })
}
