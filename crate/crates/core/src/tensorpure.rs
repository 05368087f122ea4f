//! Tensor products of right and left representations, and purity of
//! monomorphisms tested through tensor functors and through pp formulas.
//!
//! A right module over a quiver algebra is a representation of the opposite
//! algebra: its arrow matrices point backwards.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, QuotientBasis, Subspace};
use crate::ppcore::{Equation, PpFormula, Var};
use crate::ppeval::eval;
use crate::quivalg::{QuiverAlgebra, RingElement};
use crate::repmod::{direct_sum_in, hom_space, kernel_of, RepMorphism, Representation};

/// A projective presentation `⊕ (−, j_l) → ⊕ (−, i_k) → L → 0`.
///
/// `relations[l]` has sort `j_l` and one coefficient per generator: an
/// element of the algebra from `j_l` to `i_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub relations: Vec<(usize, Vec<RingElement>)>,
}

fn check_sides(l: &Representation, m: &Representation) -> Result<()> {
    m.algebra().require_admissible("tensor product")?;
    if **l.algebra() != m.algebra().opposite() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// Covers every component of `l` by copies of the representable at that
/// vertex, then covers the kernel the same way.
pub fn presentation(l: &Representation) -> Result<Presentation> {
    let op = l.algebra().clone();
    op.require_admissible("projective presentation")?;
    let f = l.field();
    let n = op.vertex_count();
    let generators: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i).take(l.dim(i))).collect();
    let projs: Vec<Representation> =
        generators.iter().map(|&i| Representation::projective(op.clone(), i)).collect::<Result<_>>()?;
    let bases: Vec<Vec<_>> =
        (0..n).map(|v| (0..n).map(|i| op.hom_basis(i, v)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let (p0, _) = direct_sum_in(&op, &projs)?;
    // generator k of sort i is sent to the k-th basis vector of L(i)
    let mut blocks = Vec::new();
    for v in 0..n {
        let mut b = Matrix::zeros(f, l.dim(v), p0.dim(v));
        let mut col = 0;
        let mut seen = vec![0usize; n];
        for &i in &generators {
            let k = seen[i];
            seen[i] += 1;
            for p in &bases[v][i] {
                let image = l.path_matrix(p).col(k);
                for (r, x) in image.into_iter().enumerate() {
                    b.set(r, col, x);
                }
                col += 1;
            }
        }
        blocks.push(b);
    }
    let pi = RepMorphism::new(&p0, l, blocks)?;
    let (k, incl) = kernel_of(&pi)?;
    let mut relations = Vec::new();
    for j in 0..n {
        for c in 0..k.dim(j) {
            let v = incl.block(j).col(c);
            let mut coeffs = Vec::new();
            let mut off = 0;
            for &i in &generators {
                let mut r = RingElement::zero(j, i);
                for p in &bases[j][i] {
                    r.add_term(p.reversed(), v[off].clone());
                    off += 1;
                }
                coeffs.push(r);
            }
            relations.push((j, coeffs));
        }
    }
    Ok(Presentation { generators, relations })
}

/// `L ⊗ M` as the cokernel of the presentation tensored with `M`.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub presentation: Presentation,
    /// Dimension of `⊕ M(i_k)`.
    pub ambient: usize,
    /// Image of the relations inside `⊕ M(i_k)`.
    pub relations: Subspace,
    pub basis: QuotientBasis,
}

impl TensorProduct {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

fn tensored_relations(p: &Presentation, m: &Representation) -> Result<(usize, Subspace)> {
    let f = m.field();
    let rows: usize = p.generators.iter().map(|&i| m.dim(i)).sum();
    let mut phi = Matrix::zeros(f, rows, 0);
    for (j, coeffs) in &p.relations {
        let mut col = Matrix::zeros(f, 0, m.dim(*j));
        for r in coeffs {
            col = col.vstack(&m.act(r)?);
        }
        phi = phi.hstack(&col);
    }
    Ok((rows, phi.image()))
}

pub fn tensor(l: &Representation, m: &Representation) -> Result<TensorProduct> {
    check_sides(l, m)?;
    let presentation = presentation(l)?;
    let (ambient, relations) = tensored_relations(&presentation, m)?;
    let basis = QuotientBasis::new(&Subspace::full(m.field(), ambient), &relations)?;
    Ok(TensorProduct { presentation, ambient, relations, basis })
}

/// `dim L ⊗ M` from generators `l ⊗ m` and the balancing relations
/// `l·a ⊗ m = l ⊗ a·m`, without any presentation.
pub fn tensor_balanced_dim(l: &Representation, m: &Representation) -> Result<usize> {
    check_sides(l, m)?;
    let f = m.field();
    let n = m.algebra().vertex_count();
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + l.dim(v) * m.dim(v);
    }
    let mut rel = Matrix::zeros(f, offsets[n], 0);
    for (ai, a) in m.algebra().quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let cols = l.dim(t) * m.dim(s);
        let mut block = Matrix::zeros(f, offsets[n], cols);
        block.set_block(offsets[s], 0, &l.map(ai).kron(&Matrix::identity(f, m.dim(s))));
        let right = Matrix::identity(f, l.dim(t)).kron(m.map(ai));
        let prev = block.block(offsets[t], 0, right.rows(), cols);
        block.set_block(offsets[t], 0, &(&prev - &right));
        rel = rel.hstack(&block);
    }
    Ok(offsets[n] - rel.rank())
}

/// Outcome of a purity test over a list of test objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityVerdict {
    pub pure: bool,
    /// The list was declared complete, so the verdict is conclusive.
    pub complete: bool,
    /// Index of the first test object that detects impurity.
    pub witness: Option<usize>,
}

fn require_mono(f: &RepMorphism) -> Result<()> {
    if f.is_injective() {
        Ok(())
    } else {
        Err(Error::NotMono)
    }
}

/// Whether `L ⊗ f` is injective for every `L` in the list.
pub fn purity_tensor(f: &RepMorphism, ls: &[Representation], complete: bool) -> Result<PurityVerdict> {
    require_mono(f)?;
    let (m, n) = (f.source(), f.target());
    for (idx, l) in ls.iter().enumerate() {
        check_sides(l, m)?;
        let p = presentation(l)?;
        let (_, rel_m) = tensored_relations(&p, m)?;
        let (_, rel_n) = tensored_relations(&p, n)?;
        let blocks: Vec<Matrix> = p.generators.iter().map(|&i| f.block(i).clone()).collect();
        let fx = Matrix::block_diag(m.field(), &blocks);
        // injective on the cokernels iff no new element falls into the relations
        if rel_n.preimage_under(&fx).dim() != rel_m.dim() {
            return Ok(PurityVerdict { pure: false, complete, witness: Some(idx) });
        }
    }
    Ok(PurityVerdict { pure: true, complete, witness: None })
}

/// Whether `φ(M) = f⁻¹ φ(N)` for every formula in the list. Never conclusive
/// on its own.
pub fn purity_pp(f: &RepMorphism, formulas: &[PpFormula]) -> Result<PurityVerdict> {
    require_mono(f)?;
    let (m, n) = (f.source(), f.target());
    for (idx, phi) in formulas.iter().enumerate() {
        let in_m = eval(phi, m)?;
        let in_n = eval(phi, n)?;
        let blocks: Vec<Matrix> = phi.free_sorts().iter().map(|&s| f.block(s).clone()).collect();
        let fx = Matrix::block_diag(m.field(), &blocks);
        if in_n.space.preimage_under(&fx) != in_m.space {
            return Ok(PurityVerdict { pure: false, complete: false, witness: Some(idx) });
        }
    }
    Ok(PurityVerdict { pure: true, complete: false, witness: None })
}

/// The divisibility formula of a presentation: `∃ȳ (x̄ = Φ ȳ)`. A tuple of
/// `M` satisfies it iff it dies in `L ⊗ M`.
pub fn divisibility_formula(algebra: &Arc<QuiverAlgebra>, p: &Presentation) -> Result<PpFormula> {
    let field = algebra.field();
    let n0 = p.generators.len();
    let free = p.generators.iter().enumerate().map(|(k, &i)| Var::new(format!("x{}", k + 1), i)).collect();
    let bound = p.relations.iter().enumerate().map(|(l, (j, _))| Var::new(format!("y{}", l + 1), *j)).collect();
    let equations = p
        .generators
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let terms = std::iter::once((k, RingElement::lazy(i, field)))
                .chain(p.relations.iter().enumerate().map(|(l, (_, c))| (n0 + l, c[k].neg())));
            Equation::new(i, terms)
        })
        .collect();
    PpFormula::new(algebra.clone(), free, bound, equations)
}

/// Divisibility formulas of the given right modules. When the list contains
/// every indecomposable right module, pp-purity against it is equivalent to
/// tensor purity.
pub fn saturated_formulas(algebra: &Arc<QuiverAlgebra>, ls: &[Representation]) -> Result<Vec<PpFormula>> {
    ls.iter().map(|l| divisibility_formula(algebra, &presentation(l)?)).collect()
}

/// Whether `f` has a retraction `g` with `g ∘ f = id`.
pub fn is_split_mono(f: &RepMorphism) -> Result<bool> {
    let (m, n) = (f.source(), f.target());
    let field = m.field();
    let id = RepMorphism::identity(m).total_matrix();
    let comps: Vec<Matrix> =
        hom_space(n, m)?.iter().map(|g| g.after(f).map(|h| h.total_matrix())).collect::<Result<_>>()?;
    if comps.is_empty() {
        return Ok(id.rows() == 0);
    }
    let a = Matrix::from_fn(field, id.entries().len(), comps.len(), |r, k| comps[k].entries()[r].clone());
    Ok(a.solve(id.entries()).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::quivalg::Quiver;
    use crate::repmod::direct_sum;

    fn a3(field: Field) -> Arc<QuiverAlgebra> {
        let q = Quiver::new("A3", &["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]).unwrap();
        Arc::new(QuiverAlgebra::free(q, field))
    }

    fn rep(alg: &Arc<QuiverAlgebra>, dims: &[usize], maps: &[&[&[i64]]]) -> Representation {
        let f = alg.field();
        let maps = maps
            .iter()
            .zip(alg.quiver().arrows())
            .map(|(rows, a)| {
                if rows.is_empty() {
                    Matrix::zeros(f, dims[a.target], dims[a.source])
                } else {
                    Matrix::from_i64_rows(f, rows)
                }
            })
            .collect();
        Representation::new(alg.clone(), dims.to_vec(), maps).unwrap()
    }

    #[test]
    fn chain_example() {
        let alg = a3(Field::Rationals);
        let op = Arc::new(alg.opposite());
        // L = 0 <- K <- K, arrows of the opposite quiver point backwards
        let l = rep(&op, &[0, 1, 1], &[&[], &[&[1]]]);
        let chain = rep(&alg, &[1, 1, 1], &[&[&[1]], &[&[1]]]);
        assert_eq!(tensor(&l, &chain).unwrap().dim(), 0);
        let s3 = Representation::simple(alg.clone(), 2).unwrap();
        assert_eq!(tensor(&l, &s3).unwrap().dim(), 1);
        for v in 0..3 {
            let rv = Representation::projective(op.clone(), v).unwrap();
            assert_eq!(tensor(&rv, &chain).unwrap().dim(), 1);
            assert_eq!(tensor_balanced_dim(&rv, &chain).unwrap(), 1);
        }
    }

    #[test]
    fn presentation_and_balanced_agree() {
        let alg = a3(Field::Prime(3));
        let op = Arc::new(alg.opposite());
        let ls = vec![
            rep(&op, &[0, 1, 1], &[&[], &[&[1]]]),
            rep(&op, &[1, 1, 0], &[&[&[1]], &[]]),
            rep(&op, &[1, 2, 1], &[&[&[1, 1]], &[&[1], &[2]]]),
        ];
        let ms = vec![
            rep(&alg, &[1, 1, 1], &[&[&[1]], &[&[1]]]),
            rep(&alg, &[2, 1, 0], &[&[&[1, 2]], &[]]),
            Representation::projective(alg.clone(), 1).unwrap(),
        ];
        for l in &ls {
            for m in &ms {
                assert_eq!(tensor(l, m).unwrap().dim(), tensor_balanced_dim(l, m).unwrap());
            }
        }
    }

    #[test]
    fn zero_factors_give_zero() {
        let q = Quiver::new("A2", &["1", "2"], &[("alpha", "1", "2")]).unwrap();
        let alg = Arc::new(QuiverAlgebra::free(q, Field::Rationals));
        let op = Arc::new(alg.opposite());
        let l = Representation::projective(op.clone(), 0).unwrap();
        let m = Representation::projective(alg.clone(), 0).unwrap();
        assert_eq!(tensor(&Representation::zero(op), &m).unwrap().dim(), 0);
        assert_eq!(tensor(&l, &Representation::zero(alg)).unwrap().dim(), 0);
    }

    #[test]
    fn a2_purity() {
        let q = Quiver::new("A2", &["1", "2"], &[("alpha", "1", "2")]).unwrap();
        let alg = Arc::new(QuiverAlgebra::free(q, Field::Prime(2)));
        let op = Arc::new(alg.opposite());
        let ls: Vec<Representation> = vec![
            Representation::simple(op.clone(), 0).unwrap(),
            Representation::simple(op.clone(), 1).unwrap(),
            Representation::projective(op.clone(), 1).unwrap(),
        ];
        let p1 = Representation::projective(alg.clone(), 0).unwrap();
        let p2 = Representation::projective(alg.clone(), 1).unwrap();
        let i = hom_space(&p2, &p1).unwrap().remove(0);
        let v = purity_tensor(&i, &ls, true).unwrap();
        assert!(!v.pure && v.complete);
        let formulas = saturated_formulas(&alg, &ls).unwrap();
        assert!(!purity_pp(&i, &formulas).unwrap().pure);
        assert!(!is_split_mono(&i).unwrap());

        let s1 = Representation::simple(alg.clone(), 0).unwrap();
        let (sum, inj) = direct_sum(&[p2.clone(), s1]).unwrap();
        assert_eq!(sum.dims(), &[1, 1]);
        assert!(purity_tensor(&inj[0], &ls, true).unwrap().pure);
        assert!(purity_pp(&inj[0], &formulas).unwrap().pure);
        assert!(is_split_mono(&inj[0]).unwrap());

        let id = RepMorphism::identity(&p1);
        assert!(purity_tensor(&id, &ls, false).unwrap().pure);
        assert!(purity_pp(&id, &[]).unwrap().pure);
        let zero = RepMorphism::zero(&p2, &p1);
        assert_eq!(purity_tensor(&zero, &ls, true).unwrap_err(), Error::NotMono);
    }

    #[test]
    fn divisibility_detects_the_non_split_embedding() {
        let q = Quiver::new("A2", &["1", "2"], &[("alpha", "1", "2")]).unwrap();
        let alg = Arc::new(QuiverAlgebra::free(q, Field::Rationals));
        // x:2 is divisible by alpha
        let phi = PpFormula::new(
            alg.clone(),
            vec![Var::new("x", 1)],
            vec![Var::new("y", 0)],
            vec![Equation::new(
                1,
                [(0, RingElement::lazy(1, alg.field())), (1, alg.element(&["alpha"]).unwrap().neg())],
            )],
        )
        .unwrap();
        let p1 = Representation::projective(alg.clone(), 0).unwrap();
        let p2 = Representation::projective(alg.clone(), 1).unwrap();
        let i = hom_space(&p2, &p1).unwrap().remove(0);
        let v = purity_pp(&i, &[phi]).unwrap();
        assert_eq!(v.witness, Some(0));
    }
}
