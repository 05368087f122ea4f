//! Finite-dimensional algebras given by structure constants and their right
//! modules: the Auslander algebra of a representation-finite algebra,
//! evaluation of finitely presented functors, Serre subcategories given by
//! sets of simples, and skeletons of Serre quotients.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, QuotientBasis, Scalar, Subspace};
use crate::ppcore::PpPair;
use crate::ppeval::eval_pair;
use crate::quivalg::{QuiverAlgebra, RingElement};
use crate::repmod::endo::{find_unit, trace_radical, EndAlgebra, Locality, MatrixBasis, StructureConstants};
use crate::repmod::{direct_sum, hom_space, indecomposability, RepMorphism, Representation};

/// An associative unital algebra with a chosen basis and a complete set of
/// orthogonal idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: Field,
    labels: Vec<String>,
    sc: StructureConstants,
    one: Vec<Scalar>,
    idempotents: Vec<Vec<Scalar>>,
    radical: Subspace,
}

impl FiniteAlgebra {
    /// Checks associativity on all basis triples and the idempotent axioms.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        sc: StructureConstants,
        idempotents: Vec<Vec<Scalar>>,
    ) -> Result<FiniteAlgebra> {
        let d = labels.len();
        if sc.len() != d || sc.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::DimensionMismatch("structure constants do not match the basis".into()));
        }
        let radical = trace_radical(field, &sc)?;
        let mut one = vec![field.zero(); d];
        for e in &idempotents {
            one = add(&one, e);
        }
        let alg = FiniteAlgebra { field, labels, sc, one, idempotents, radical };
        let basis: Vec<Vec<Scalar>> = (0..d).map(|i| alg.unit_vector(i)).collect();
        for a in &basis {
            for b in &basis {
                let ab = alg.mul(a, b);
                for c in &basis {
                    if alg.mul(&ab, c) != alg.mul(a, &alg.mul(b, c)) {
                        return Err(Error::InvalidInput("multiplication is not associative".into()));
                    }
                }
            }
            if alg.mul(&alg.one, a) != *a || alg.mul(a, &alg.one) != *a {
                return Err(Error::InvalidInput("idempotents do not sum to the unit".into()));
            }
        }
        for (i, e) in alg.idempotents.iter().enumerate() {
            for (j, f) in alg.idempotents.iter().enumerate() {
                let ef = alg.mul(e, f);
                let expected = if i == j { e.clone() } else { vec![field.zero(); d] };
                if ef != expected {
                    return Err(Error::InvalidInput("idempotents are not orthogonal".into()));
                }
            }
        }
        Ok(alg)
    }

    /// The path algebra of an admissible quiver algebra with the diagrammatic
    /// product: `p * q` means "first `p`, then `q`".
    pub fn from_path_algebra(alg: &QuiverAlgebra) -> Result<FiniteAlgebra> {
        let paths = alg.basis_paths()?;
        let field = alg.field();
        let d = paths.len();
        let mut sc = vec![vec![vec![field.zero(); d]; d]; d];
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if p.target != q.source {
                    continue;
                }
                let prod = alg.reduce(
                    &RingElement::from_path(q.clone(), field.one()).compose(&RingElement::from_path(p.clone(), field.one()))?,
                );
                for (path, c) in prod.terms() {
                    let k = paths.iter().position(|x| x == path).expect("normal form is a basis path");
                    sc[i][j][k] = c.clone();
                }
            }
        }
        let idempotents = (0..alg.vertex_count())
            .map(|v| {
                let mut e = vec![field.zero(); d];
                e[paths.iter().position(|p| p.is_lazy() && p.source == v).unwrap()] = field.one();
                e
            })
            .collect();
        let labels = paths.iter().map(|p| p.display(alg.quiver())).collect();
        FiniteAlgebra::new(field, labels, sc, idempotents)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> &[Scalar] {
        &self.one
    }

    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.sc[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A right module: `action[k]` is the matrix of `v ↦ v·b_k` on column vectors,
/// so that `A_{s*t} = A_t A_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinModule {
    algebra: Arc<FiniteAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl FinModule {
    pub fn new(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<FinModule> {
        let d = algebra.dim();
        if action.len() != d || action.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch("one square action matrix per basis element required".into()));
        }
        let m = FinModule { algebra, dim, action };
        for i in 0..d {
            for j in 0..d {
                let st = m.algebra.mul(&m.algebra.unit_vector(i), &m.algebra.unit_vector(j));
                if m.act(&st) != &m.action[j] * &m.action[i] {
                    return Err(Error::InvalidInput("action does not respect the multiplication".into()));
                }
            }
        }
        if m.act(m.algebra.one()) != Matrix::identity(m.algebra.field, dim) {
            return Err(Error::InvalidInput("the unit does not act as the identity".into()));
        }
        Ok(m)
    }

    fn unchecked(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Matrix>) -> FinModule {
        FinModule { algebra, dim, action }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Matrix of the action of an algebra element.
    pub fn act(&self, s: &[Scalar]) -> Matrix {
        let f = self.algebra.field;
        let mut acc = Matrix::zeros(f, self.dim, self.dim);
        for (c, a) in s.iter().zip(&self.action) {
            if !c.is_zero() {
                acc = &acc + &a.scale(c);
            }
        }
        acc
    }

    /// The indecomposable projective `e_i S`.
    pub fn projective(algebra: &Arc<FiniteAlgebra>, i: usize) -> Result<FinModule> {
        let regular = FinModule::regular(algebra);
        let e = &algebra.idempotents[i];
        // e_i S is the image of left multiplication by e_i
        let d = algebra.dim();
        let vecs: Vec<Vec<Scalar>> = (0..d).map(|k| algebra.mul(e, &algebra.unit_vector(k))).collect();
        let sub = Subspace::span(algebra.field, d, vecs);
        Ok(regular.submodule(&sub)?.0)
    }

    /// The simple top `e_i S / e_i rad S`.
    pub fn simple(algebra: &Arc<FiniteAlgebra>, i: usize) -> Result<FinModule> {
        let p = FinModule::projective(algebra, i)?;
        let rad = p.times_radical(&Subspace::full(algebra.field, p.dim));
        Ok(p.quotient(&rad)?.0)
    }

    /// `S_S`: the regular right module.
    pub fn regular(algebra: &Arc<FiniteAlgebra>) -> FinModule {
        let d = algebra.dim();
        let f = algebra.field;
        let action = (0..d)
            .map(|k| {
                let bk = algebra.unit_vector(k);
                let mut m = Matrix::zeros(f, d, d);
                for j in 0..d {
                    for (i, c) in algebra.mul(&algebra.unit_vector(j), &bk).into_iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
                m
            })
            .collect();
        FinModule::unchecked(algebra.clone(), d, action)
    }

    /// Smallest submodule containing `u`.
    pub fn generated(&self, u: &Subspace) -> Subspace {
        let mut cur = u.clone();
        loop {
            let mut next = cur.clone();
            for a in &self.action {
                next = next.sum(&cur.image_under(a)).expect("same ambient");
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `U · rad S`.
    pub fn times_radical(&self, u: &Subspace) -> Subspace {
        let f = self.algebra.field;
        let mut acc = Subspace::zero(f, self.dim);
        for r in self.algebra.radical.basis_vectors() {
            acc = acc.sum(&u.image_under(&self.act(&r))).expect("same ambient");
        }
        acc
    }

    fn check_submodule(&self, u: &Subspace) -> Result<()> {
        for a in &self.action {
            if !u.contains(&u.image_under(a))? {
                return Err(Error::NotASubspace("subspace is not a submodule".into()));
            }
        }
        Ok(())
    }

    /// A submodule with its inclusion matrix (columns are the basis of `u`).
    pub fn submodule(&self, u: &Subspace) -> Result<(FinModule, Matrix)> {
        self.check_submodule(u)?;
        let incl = u.basis().transpose();
        let action = self
            .action
            .iter()
            .map(|a| {
                let img = a * &incl;
                if u.dim() == 0 {
                    Matrix::zeros(self.algebra.field, 0, 0)
                } else {
                    incl.solve_matrix(&img).expect("submodule is invariant")
                }
            })
            .collect();
        Ok((FinModule::unchecked(self.algebra.clone(), u.dim(), action), incl))
    }

    /// A quotient module with its projection matrix and coset basis.
    pub fn quotient(&self, u: &Subspace) -> Result<(FinModule, Matrix, QuotientBasis)> {
        self.check_submodule(u)?;
        let f = self.algebra.field;
        let qb = QuotientBasis::new(&Subspace::full(f, self.dim), u)?;
        let mut proj = Matrix::zeros(f, qb.dim(), self.dim);
        for j in 0..self.dim {
            let mut e = vec![f.zero(); self.dim];
            e[j] = f.one();
            for (i, c) in qb.coset_coordinates(&e).unwrap().into_iter().enumerate() {
                proj.set(i, j, c);
            }
        }
        let lifts = Matrix::from_rows(f, qb.representatives().to_vec(), self.dim)?.transpose();
        let action = self.action.iter().map(|a| &(&proj * a) * &lifts).collect();
        Ok((FinModule::unchecked(self.algebra.clone(), qb.dim(), action), proj, qb))
    }

    /// Composition multiplicity of the simple at idempotent `i`: `dim X e_i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.act(&self.algebra.idempotents[i]).rank()
    }

    /// Support: the simples occurring as composition factors.
    pub fn composition_support(&self) -> BTreeSet<usize> {
        (0..self.algebra.idempotents.len()).filter(|&i| self.multiplicity(i) > 0).collect()
    }
}

/// A basis of `Hom_S(V, W)` as `dim W x dim V` matrices.
pub fn module_hom(v: &FinModule, w: &FinModule) -> Result<Vec<Matrix>> {
    if v.algebra != w.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let f = v.algebra.field;
    let (n, m) = (w.dim, v.dim);
    let unknowns = n * m;
    let mut rows = Vec::new();
    for (av, aw) in v.action.iter().zip(&w.action) {
        // (h A_v - A_w h)[i][j] = 0
        for i in 0..n {
            for j in 0..m {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..m {
                    let c = av.get(k, j);
                    if !c.is_zero() {
                        row[i * m + k] = &row[i * m + k] + c;
                    }
                }
                for k in 0..n {
                    let c = aw.get(i, k);
                    if !c.is_zero() {
                        row[k * m + j] = &row[k * m + j] - c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(f, rows, unknowns)?.kernel();
    Ok(ker
        .basis_vectors()
        .into_iter()
        .map(|x| Matrix::from_fn(f, n, m, |i, j| x[i * m + j].clone()))
        .collect())
}

/// Endomorphism algebra of a module, with its radical.
pub fn module_end(v: &FinModule) -> Result<EndAlgebra> {
    EndAlgebra::new(v.algebra.field, v.dim, module_hom(v, v)?)
}

pub fn module_is_indecomposable(v: &FinModule, seed: u64) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroModule);
    }
    let end = module_end(v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(!matches!(end.locality(&mut rng), Locality::Decomposable(_)))
}

pub fn modules_isomorphic(v: &FinModule, w: &FinModule, seed: u64) -> Result<bool> {
    if v.dim != w.dim {
        return Ok(false);
    }
    let hom = module_hom(v, w)?;
    if hom.len() != module_hom(w, v)?.len() {
        return Ok(false);
    }
    if v.dim == 0 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(find_unit(v.algebra.field, &hom, &mut rng).coefficients.is_some())
}

/// The Auslander algebra `S = End(⊕ M_i)` with the data needed to evaluate
/// functors on representations.
#[derive(Debug, Clone)]
pub struct Auslander {
    pub algebra: Arc<FiniteAlgebra>,
    pub summands: Vec<Representation>,
    pub generator: Representation,
    /// Basis elements as endomorphisms of the generator (total matrices).
    basis_maps: Vec<Matrix>,
}

/// Builds `S = End(⊕ M_i)` with product `s * t = t ∘ s`; idempotent `i`
/// projects onto `M_i`.
pub fn auslander_algebra(indecomposables: &[Representation], names: &[String]) -> Result<Auslander> {
    if indecomposables.is_empty() {
        return Err(Error::InvalidInput("empty list of indecomposables".into()));
    }
    for (k, m) in indecomposables.iter().enumerate() {
        let ind = indecomposability(m, 0)?;
        if !ind.indecomposable || ind.non_split || ind.end_dim != ind.radical_dim + 1 {
            return Err(Error::NotSplitEndo(names.get(k).cloned().unwrap_or_else(|| format!("#{k}"))));
        }
    }
    let (sum, inj) = direct_sum(indecomposables)?;
    let field = sum.field();
    let proj: Vec<RepMorphism> = inj
        .iter()
        .map(|i| RepMorphism::new(&sum, i.source(), i.blocks().iter().map(Matrix::transpose).collect()))
        .collect::<Result<_>>()?;
    let name = |k: usize| names.get(k).cloned().unwrap_or_else(|| format!("M{}", k + 1));
    let mut labels = Vec::new();
    let mut maps = Vec::new();
    for (a, ma) in indecomposables.iter().enumerate() {
        for (b, mb) in indecomposables.iter().enumerate() {
            for (k, h) in hom_space(ma, mb)?.into_iter().enumerate() {
                let s = inj[b].after(&h)?.after(&proj[a])?;
                labels.push(format!("{}->{}#{}", name(a), name(b), k + 1));
                maps.push(s.total_matrix());
            }
        }
    }
    let n = sum.total_dim();
    let basis = MatrixBasis::new(field, (n, n), maps.clone())?;
    let d = maps.len();
    let sc: StructureConstants = (0..d)
        .map(|i| (0..d).map(|j| basis.coordinates_unchecked(&(&maps[j] * &maps[i]))).collect())
        .collect();
    let idempotents: Vec<Vec<Scalar>> = (0..indecomposables.len())
        .map(|i| Ok(basis.coordinates_unchecked(&inj[i].after(&proj[i])?.total_matrix())))
        .collect::<Result<_>>()?;
    let algebra = Arc::new(FiniteAlgebra::new(field, labels, sc, idempotents)?);
    Ok(Auslander { algebra, summands: indecomposables.to_vec(), generator: sum, basis_maps: maps })
}

impl Auslander {
    /// `dim V ⊗_S Hom(M, X)`.
    pub fn functor_eval(&self, v: &FinModule, x: &Representation) -> Result<usize> {
        if v.algebra != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        self.generator.same_algebra(x)?;
        let f = self.algebra.field;
        let h = hom_space(&self.generator, x)?;
        if h.is_empty() || v.dim == 0 {
            return Ok(0);
        }
        let mats: Vec<Matrix> = h.iter().map(RepMorphism::total_matrix).collect();
        let hb = MatrixBasis::new(f, (x.total_dim(), self.generator.total_dim()), mats.clone())?;
        let dh = mats.len();
        // left action on H: s · g = g ∘ s
        let left: Vec<Matrix> = self
            .basis_maps
            .iter()
            .map(|s| {
                let mut l = Matrix::zeros(f, dh, dh);
                for (j, g) in mats.iter().enumerate() {
                    for (i, c) in hb.coordinates_unchecked(&(g * s)).into_iter().enumerate() {
                        l.set(i, j, c);
                    }
                }
                l
            })
            .collect();
        let iv = Matrix::identity(f, v.dim);
        let ih = Matrix::identity(f, dh);
        let mut rel = Matrix::zeros(f, v.dim * dh, 0);
        for (a, l) in v.action.iter().zip(&left) {
            rel = rel.hstack(&(&a.kron(&ih) - &iv.kron(l)));
        }
        Ok(v.dim * dh - rel.rank())
    }

    /// Whether the pair and the module define the same functor on `modules`.
    pub fn pp_functor_crosscheck(&self, pair: &PpPair, v: &FinModule, modules: &[Representation]) -> Result<bool> {
        for m in modules {
            if eval_pair(pair, m)? != self.functor_eval(v, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The Serre subcategory generated by the given functors that vanish on `g`.
    pub fn serre_from_generator(&self, functors: &[FinModule], g: &Representation) -> Result<SerreData> {
        let mut simples = BTreeSet::new();
        for v in functors {
            if self.functor_eval(v, g)? == 0 {
                simples.extend(v.composition_support());
            }
        }
        Ok(SerreData { simples })
    }
}

/// A Serre subcategory of finite-length modules, given by its simples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SerreData {
    pub simples: BTreeSet<usize>,
}

impl SerreData {
    fn complement_idempotent(&self, alg: &FiniteAlgebra) -> Vec<Scalar> {
        let mut e = vec![alg.field.zero(); alg.dim()];
        for (i, ei) in alg.idempotents.iter().enumerate() {
            if !self.simples.contains(&i) {
                e = add(&e, ei);
            }
        }
        e
    }

    fn check(&self, alg: &FiniteAlgebra) -> Result<()> {
        if self.simples.iter().any(|&i| i >= alg.idempotents.len()) {
            return Err(Error::InvalidInput("Serre data names an unknown simple".into()));
        }
        Ok(())
    }

    /// `t_Σ(Y)`: the largest submodule with all composition factors in Σ.
    pub fn torsion(&self, y: &FinModule) -> Result<Subspace> {
        self.check(&y.algebra)?;
        let f = y.algebra.field;
        let mut gens: Vec<Matrix> = y.algebra.radical.basis_vectors().iter().map(|r| y.act(r)).collect();
        gens.push(y.act(&self.complement_idempotent(&y.algebra)));
        let mut cur = Subspace::zero(f, y.dim);
        loop {
            let mut next = Subspace::full(f, y.dim);
            for g in &gens {
                next = next.intersect(&cur.preimage_under(g))?;
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `X_min`: the smallest submodule whose quotient lies in the subcategory.
    pub fn minimal_sub(&self, x: &FinModule) -> Result<Subspace> {
        self.check(&x.algebra)?;
        let comp = x.act(&self.complement_idempotent(&x.algebra));
        let mut cur = Subspace::full(x.algebra.field, x.dim);
        loop {
            let next = x.times_radical(&cur).sum(&cur.image_under(&comp))?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn contains(&self, x: &FinModule) -> Result<bool> {
        Ok(self.torsion(x)?.dim() == x.dim)
    }
}

/// `Hom(X_min, Y / t_Σ Y)`, the hom space of the Serre quotient.
#[derive(Debug, Clone)]
pub struct QuotientHom {
    pub x_min: Subspace,
    pub x_min_module: FinModule,
    /// Columns span `X_min` inside `X`.
    pub x_incl: Matrix,
    pub y_torsion: Subspace,
    pub y_bar: FinModule,
    pub y_proj: Matrix,
    pub basis: Vec<Matrix>,
}

pub fn quotient_hom(x: &FinModule, y: &FinModule, s: &SerreData) -> Result<QuotientHom> {
    let x_min = s.minimal_sub(x)?;
    let (xm, incl) = x.submodule(&x_min)?;
    let ty = s.torsion(y)?;
    let (yb, proj, _) = y.quotient(&ty)?;
    let basis = module_hom(&xm, &yb)?;
    Ok(QuotientHom { x_min, x_min_module: xm, x_incl: incl, y_torsion: ty, y_bar: yb, y_proj: proj, basis })
}

/// Identity of `X` in the quotient: `X_min ↪ X ↠ X / t X`.
pub fn quotient_identity(x: &FinModule, s: &SerreData) -> Result<Matrix> {
    let q = quotient_hom(x, x, s)?;
    Ok(&q.y_proj * &q.x_incl)
}

/// `g ∘ f` for quotient morphisms `f: X → Y` and `g: Y → Z`, on canonical
/// representatives.
pub fn quotient_compose(
    f: &Matrix,
    fx: &QuotientHom,
    g: &Matrix,
    gy: &QuotientHom,
    y: &FinModule,
) -> Result<Matrix> {
    let field = y.algebra.field;
    // lift f's values to Y, then split them along Y_min + tY
    let lift = gy.x_incl.hstack(&fx.y_torsion.basis().transpose());
    let (_, _, qb) = y.quotient(&fx.y_torsion)?;
    let mut out = Matrix::zeros(field, g.rows(), f.cols());
    for j in 0..f.cols() {
        let ybar = f.col(j);
        let yv = qb.lift(&ybar);
        let c = lift
            .solve(&yv)
            .ok_or_else(|| Error::InvalidInput("morphism does not land in Y_min + tY".into()))?;
        let u = &c[..gy.x_incl.cols()];
        for (i, v) in g.mul_vec(u).into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Discarded functors and quotient-isomorphism classes of the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub discarded: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub probabilistic: bool,
}

const SKELETON_TRIALS: usize = 256;

/// Searches for mutually inverse quotient morphisms `X ⇄ Y`. For each
/// candidate `f` the conditions on `g` are linear, so only `f` is searched.
fn quotient_isomorphic<R: Rng + ?Sized>(
    x: &FinModule,
    y: &FinModule,
    s: &SerreData,
    rng: &mut R,
) -> Result<(bool, bool)> {
    let field = x.algebra.field;
    let fxy = quotient_hom(x, y, s)?;
    let gyx = quotient_hom(y, x, s)?;
    if fxy.basis.is_empty() || gyx.basis.is_empty() {
        return Ok((false, false));
    }
    let id_x = quotient_identity(x, s)?;
    let id_y = quotient_identity(y, s)?;
    let try_f = |f: &Matrix| -> Result<bool> {
        // unknown coefficients c of g = Σ c_k g_k; both composites are linear in c
        let gf: Vec<Matrix> = gyx.basis.iter().map(|g| quotient_compose(f, &fxy, g, &gyx, y)).collect::<Result<_>>()?;
        let fg: Vec<Matrix> = gyx.basis.iter().map(|g| quotient_compose(g, &gyx, f, &fxy, x)).collect::<Result<_>>()?;
        let rows_per = id_x.entries().len() + id_y.entries().len();
        let cols = gyx.basis.len();
        let a = Matrix::from_fn(field, rows_per, cols, |r, k| {
            let ex = id_x.entries().len();
            if r < ex {
                gf[k].entries()[r].clone()
            } else {
                fg[k].entries()[r - ex].clone()
            }
        });
        let mut rhs = id_x.entries().to_vec();
        rhs.extend(id_y.entries().iter().cloned());
        Ok(a.solve(&rhs).is_some())
    };
    let d = fxy.basis.len();
    let combine = |c: &[Scalar]| {
        let mut acc = Matrix::zeros(field, fxy.basis[0].rows(), fxy.basis[0].cols());
        for (b, x) in fxy.basis.iter().zip(c) {
            acc = &acc + &b.scale(x);
        }
        acc
    };
    if let Some(q) = field.order() {
        if q.checked_pow(d as u32).is_some_and(|n| n <= 1 << 16) {
            let elems = field.elements().unwrap();
            let total = q.pow(d as u32);
            for mut k in 0..total {
                let c: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let x = elems[(k % q) as usize].clone();
                        k /= q;
                        x
                    })
                    .collect();
                if try_f(&combine(&c))? {
                    return Ok((true, false));
                }
            }
            return Ok((false, false));
        }
    }
    for i in 0..d {
        if try_f(&fxy.basis[i])? {
            return Ok((true, false));
        }
    }
    for _ in 0..SKELETON_TRIALS {
        let c: Vec<Scalar> = (0..d).map(|_| field.random(rng, 5)).collect();
        if try_f(&combine(&c))? {
            return Ok((true, false));
        }
    }
    Ok((false, true))
}

pub fn quotient_skeleton(functors: &[FinModule], s: &SerreData, seed: u64) -> Result<Skeleton> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut discarded = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut probabilistic = false;
    for (i, x) in functors.iter().enumerate() {
        if s.contains(x)? {
            discarded.push(i);
            continue;
        }
        let mut placed = false;
        for class in classes.iter_mut() {
            let (iso, prob) = quotient_isomorphic(&functors[class[0]], x, s, &mut rng)?;
            probabilistic |= prob;
            if iso {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Skeleton { discarded, classes, probabilistic })
}

/// An explicit algebra isomorphism `A → B`, as the matrix sending the basis of
/// `A` to coordinates in `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraIso {
    pub vertex_map: Vec<usize>,
    pub matrix: Matrix,
}

/// Searches for an isomorphism from the path algebra of `presented` onto `b`:
/// vertices go to idempotents, arrows to basis elements of the matching
/// corner spaces, and the induced map is checked to be bijective and
/// multiplicative.
pub fn find_algebra_iso(presented: &QuiverAlgebra, b: &FiniteAlgebra) -> Result<Option<AlgebraIso>> {
    let a = FiniteAlgebra::from_path_algebra(presented)?;
    if a.dim() != b.dim() || a.idempotents.len() != b.idempotents.len() {
        return Ok(None);
    }
    let n = a.idempotents.len();
    let paths = presented.basis_paths()?;
    let q = presented.quiver();
    for perm in permutations(n) {
        // candidate images for each arrow: basis of e_σ(s) B e_σ(t)
        let mut options: Vec<Vec<Vec<Scalar>>> = Vec::new();
        for arrow in q.arrows() {
            let es = &b.idempotents[perm[arrow.source]];
            let et = &b.idempotents[perm[arrow.target]];
            let corner: Vec<Vec<Scalar>> = (0..b.dim()).map(|k| b.mul(&b.mul(es, &b.unit_vector(k)), et)).collect();
            let sub = Subspace::span(b.field, b.dim(), corner);
            options.push(sub.basis_vectors());
        }
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0usize; options.len()];
        loop {
            let images: Vec<Vec<Scalar>> = paths
                .iter()
                .map(|p| {
                    if p.is_lazy() {
                        b.idempotents[perm[p.source]].clone()
                    } else {
                        let mut acc = options[p.arrows[0]][choice[p.arrows[0]]].clone();
                        for &ar in &p.arrows[1..] {
                            acc = b.mul(&acc, &options[ar][choice[ar]]);
                        }
                        acc
                    }
                })
                .collect();
            let m = Matrix::from_rows(b.field, images.clone(), b.dim())?.transpose();
            if m.rank() == b.dim() {
                let multiplicative = (0..a.dim()).all(|i| {
                    (0..a.dim()).all(|j| {
                        let lhs = m.mul_vec(&a.mul(&a.unit_vector(i), &a.unit_vector(j)));
                        lhs == b.mul(&images[i], &images[j])
                    })
                });
                if multiplicative {
                    return Ok(Some(AlgebraIso { vertex_map: perm, matrix: m }));
                }
            }
            let mut k = 0;
            loop {
                if k == choice.len() {
                    break;
                }
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
