//! Evaluating pp formulas on representations, free realizations and
//! pp-implication.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Subspace};
use crate::ppcore::{conj, exists, PpFormula, PpMap, PpPair};
use crate::quivalg::{Path, QuiverAlgebra, RingElement};
use crate::repmod::{cokernel_of, direct_sum_in, RepMorphism, Representation};

/// A subspace of `M(s_1) ⊕ … ⊕ M(s_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedSubspace {
    /// `(vertex, dim M(vertex))` per coordinate block.
    pub sorts: Vec<(usize, usize)>,
    pub space: Subspace,
}

impl SortedSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Whether a tuple (one vector per sort) lies in the subspace.
    pub fn contains_tuple(&self, tuple: &[Vec<Scalar>]) -> bool {
        let v: Vec<Scalar> = tuple.iter().flatten().cloned().collect();
        v.len() == self.space.ambient() && self.space.contains_vector(&v)
    }
}

fn check_algebra(f: &PpFormula, m: &Representation) -> Result<()> {
    if Arc::ptr_eq(f.algebra(), m.algebra()) || f.algebra() == m.algebra() {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// The solution set `φ(M)`: one block matrix, one kernel, one projection.
pub fn eval(f: &PpFormula, m: &Representation) -> Result<SortedSubspace> {
    check_algebra(f, m)?;
    let field = m.field();
    let n = f.var_count();
    let mut offsets = vec![0usize; n + 1];
    for i in 0..n {
        offsets[i + 1] = offsets[i] + m.dim(f.var(i).sort);
    }
    let cols = offsets[n];
    let rows: usize = f.equations().iter().map(|e| m.dim(e.sort)).sum();
    let mut e = Matrix::zeros(field, rows, cols);
    let mut r0 = 0;
    for eq in f.equations() {
        for (&i, r) in &eq.coeffs {
            e.set_block(r0, offsets[i], &m.act(r)?);
        }
        r0 += m.dim(eq.sort);
    }
    let nfree = f.free().len();
    let sol = e.kernel().project(&(0..offsets[nfree]).collect::<Vec<_>>());
    Ok(SortedSubspace {
        sorts: f.free().iter().map(|v| (v.sort, m.dim(v.sort))).collect(),
        space: sol,
    })
}

/// `dim φ(M) − dim ψ(M)` for a certified pair.
pub fn eval_pair(p: &PpPair, m: &Representation) -> Result<usize> {
    p.require_certified("pair")?;
    Ok(eval(p.top(), m)?.dim() - eval(p.bottom(), m)?.dim())
}

/// A module with a tuple generic for a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeRealization {
    pub formula: PpFormula,
    pub module: Representation,
    /// One vector per free variable, in the space of its sort.
    pub tuple: Vec<Vec<Scalar>>,
}

/// The cokernel of `⊕_j P(q_j) → ⊕_i P(s_i)` induced by the coefficients,
/// with the images of the generators of the free-variable summands.
pub fn free_realization(f: &PpFormula) -> Result<FreeRealization> {
    let alg = f.algebra().clone();
    alg.require_admissible("free realization")?;
    let field = alg.field();
    let nv = alg.vertex_count();
    let var_sorts: Vec<usize> = (0..f.var_count()).map(|i| f.var(i).sort).collect();
    let eq_sorts: Vec<usize> = f.equations().iter().map(|e| e.sort).collect();
    let projective = |s: usize| Representation::projective(alg.clone(), s);
    let gens: Vec<Representation> = var_sorts.iter().map(|&s| projective(s)).collect::<Result<_>>()?;
    let rels: Vec<Representation> = eq_sorts.iter().map(|&s| projective(s)).collect::<Result<_>>()?;
    let (target, _) = direct_sum_in(&alg, &gens)?;
    let (source, _) = direct_sum_in(&alg, &rels)?;
    let bases: Vec<Vec<Vec<Path>>> = (0..nv)
        .map(|s| (0..nv).map(|v| alg.hom_basis(s, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut blocks = Vec::new();
    for v in 0..nv {
        let mut b = Matrix::zeros(field, target.dim(v), source.dim(v));
        let mut col0 = 0;
        for (j, eq) in f.equations().iter().enumerate() {
            let q = eq_sorts[j];
            let src_paths = &bases[q][v];
            let mut row0 = 0;
            for (i, &s) in var_sorts.iter().enumerate() {
                let tgt_paths = &bases[s][v];
                if let Some(r) = eq.coeffs.get(&i) {
                    for (c, g) in src_paths.iter().enumerate() {
                        let img = alg.reduce(&RingElement::from_path(g.clone(), field.one()).compose(r)?);
                        for (p, x) in img.terms() {
                            let row = tgt_paths.iter().position(|t| t == p).expect("normal form is a basis path");
                            b.set(row0 + row, col0 + c, x.clone());
                        }
                    }
                }
                row0 += tgt_paths.len();
            }
            col0 += src_paths.len();
        }
        blocks.push(b);
    }
    let map = RepMorphism::new(&source, &target, blocks)?;
    let (c, proj) = cokernel_of(&map)?;
    // generator of summand i sits at vertex s_i
    let mut tuple = Vec::new();
    for i in 0..f.free().len() {
        let s = var_sorts[i];
        let before: usize = var_sorts[..i].iter().map(|&t| bases[t][s].len()).sum();
        let lazy_pos = bases[var_sorts[i]][s].iter().position(|p| p.is_lazy()).expect("lazy path is irreducible");
        let mut e = vec![field.zero(); target.dim(s)];
        e[before + lazy_pos] = field.one();
        tuple.push(proj.apply(s, &e));
    }
    Ok(FreeRealization { formula: f.clone(), module: c, tuple })
}

/// How an implication is decided.
#[derive(Debug, Clone, Copy)]
pub enum Mode<'a> {
    /// Free realizations; needs an admissible algebra.
    Exact,
    /// Containment on a finite list of modules only.
    TestSet(&'a [Representation]),
}

/// Verdict of an implication test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    pub holds: bool,
    pub relative_to_test_set: bool,
    /// In test-set mode, the index of a module where containment fails.
    pub counterexample: Option<usize>,
}

/// Whether `f ≤ g`, i.e. `f(M) ⊆ g(M)` for every module `M`.
pub fn pp_implies(f: &PpFormula, g: &PpFormula, mode: Mode<'_>) -> Result<Implication> {
    if f.free_sorts() != g.free_sorts() {
        return Err(Error::SortMismatch("implication between formulas with different free sorts".into()));
    }
    if !(Arc::ptr_eq(f.algebra(), g.algebra()) || f.algebra() == g.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    match mode {
        Mode::Exact => {
            let fr = free_realization(f)?;
            let holds = eval(g, &fr.module)?.contains_tuple(&fr.tuple);
            Ok(Implication { holds, relative_to_test_set: false, counterexample: None })
        }
        Mode::TestSet(mods) => {
            for (k, m) in mods.iter().enumerate() {
                let a = eval(f, m)?;
                let b = eval(g, m)?;
                if !b.space.contains(&a.space)? {
                    return Ok(Implication { holds: false, relative_to_test_set: true, counterexample: Some(k) });
                }
            }
            Ok(Implication { holds: true, relative_to_test_set: true, counterexample: None })
        }
    }
}

/// Certifies `top/bottom` by proving `bottom ≤ top`.
pub fn certify(pair: &PpPair, mode: Mode<'_>) -> Result<Option<PpPair>> {
    let imp = pp_implies(pair.bottom(), pair.top(), mode)?;
    Ok(imp.holds.then(|| {
        let mut p = pair.clone();
        p.mark_certified(imp.relative_to_test_set);
        p
    }))
}

/// The three functionality conditions of a pp-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    /// `φ ≤ ∃ȳ ρ`
    pub total: bool,
    /// `ρ ∧ φ ≤ φ′`
    pub lands_in_top: bool,
    /// `ρ ∧ ψ ≤ ψ′`
    pub bottom_to_bottom: bool,
    pub relative_to_test_set: bool,
}

impl MapCheck {
    pub fn holds(&self) -> bool {
        self.total && self.lands_in_top && self.bottom_to_bottom
    }
}

/// `f(x̄)` read as a formula in `(x̄, ȳ)` with `ȳ` unconstrained (or the other way round).
fn pad(f: &PpFormula, sorts_before: &[usize], sorts_after: &[usize]) -> Result<PpFormula> {
    let before = PpFormula::top(f.algebra().clone(), sorts_before);
    let after = PpFormula::top(f.algebra().clone(), sorts_after);
    let with_before = if sorts_before.is_empty() { f.clone() } else { conj(&before, f, &[])? };
    if sorts_after.is_empty() {
        Ok(with_before)
    } else {
        conj(&with_before, &after, &[])
    }
}

pub fn check_pp_map(m: &PpMap, mode: Mode<'_>) -> Result<MapCheck> {
    m.source.require_certified("source pair")?;
    m.target.require_certified("target pair")?;
    let n = m.n_source();
    let xs = m.source.free_sorts();
    let target_names: Vec<String> = m.rho.free()[n..].iter().map(|v| v.name.clone()).collect();
    let names: Vec<&str> = target_names.iter().map(String::as_str).collect();
    let ex = exists(&m.rho, &names)?;
    let ident: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();

    let c1 = pp_implies(m.source.top(), &ex, mode)?;
    let rho_phi = conj(&m.rho, m.source.top(), &ident)?;
    let c2 = pp_implies(&rho_phi, &pad(m.target.top(), &xs, &[])?, mode)?;
    let rho_psi = conj(&m.rho, m.source.bottom(), &ident)?;
    let c3 = pp_implies(&rho_psi, &pad(m.target.bottom(), &xs, &[])?, mode)?;
    Ok(MapCheck {
        total: c1.holds,
        lands_in_top: c2.holds,
        bottom_to_bottom: c3.holds,
        relative_to_test_set: matches!(mode, Mode::TestSet(_)),
    })
}

/// Whether `M` lies in the definable subcategory cut out by the pairs.
pub fn definable_membership(pairs: &[PpPair], m: &Representation) -> Result<bool> {
    for p in pairs {
        if eval_pair(p, m)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Jordan-block modules over a one-vertex, one-loop algebra: every block size
/// up to `max_dim` at eigenvalues 0, 1, −1, 2 (all of 𝔽ₚ for p ≤ 7).
pub fn jordan_test_set(alg: &Arc<QuiverAlgebra>, max_dim: usize) -> Result<Vec<Representation>> {
    let q = alg.quiver();
    if q.vertex_count() != 1 || q.arrows().len() != 1 {
        return Err(Error::InvalidInput(format!(
            "no default test set for `{}`; supply one with a fixture",
            alg.name()
        )));
    }
    let field = alg.field();
    let lambdas: Vec<Scalar> = match field {
        Field::Prime(p) if p <= 7 => field.elements().unwrap(),
        _ => [0, 1, -1, 2].iter().map(|&x| field.from_i64(x)).collect::<Vec<_>>(),
    };
    let mut lambdas_dedup: Vec<Scalar> = Vec::new();
    for l in lambdas {
        if !lambdas_dedup.contains(&l) {
            lambdas_dedup.push(l);
        }
    }
    let mut out = Vec::new();
    for k in 1..=max_dim {
        for l in &lambdas_dedup {
            if let Ok(m) = Representation::new(alg.clone(), vec![k], vec![jordan_block(field, k, l)]) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Upper-triangular Jordan block `J_k(λ)`.
pub fn jordan_block(field: Field, k: usize, lambda: &Scalar) -> Matrix {
    Matrix::from_fn(field, k, k, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppcore::{Equation, Var};
    use crate::quivalg::Quiver;

    const Q: Field = Field::Rationals;

    fn a2() -> Arc<QuiverAlgebra> {
        let q = Quiver::new("A2", &["1", "2"], &[("alpha", "1", "2")]).unwrap();
        Arc::new(QuiverAlgebra::free(q, Q))
    }

    fn alpha_x_zero(alg: &Arc<QuiverAlgebra>) -> PpFormula {
        let alpha = alg.element(&["alpha"]).unwrap();
        PpFormula::new(alg.clone(), vec![Var::new("x", 0)], vec![], vec![Equation::new(1, [(0, alpha)])]).unwrap()
    }

    /// `∃y (x = αy)` with `x` of sort 2.
    fn alpha_divides(alg: &Arc<QuiverAlgebra>) -> PpFormula {
        let alpha = alg.element(&["alpha"]).unwrap();
        let eq = Equation::new(1, [(0, RingElement::lazy(1, Q)), (1, alpha.neg())]);
        PpFormula::new(alg.clone(), vec![Var::new("x", 1)], vec![Var::new("y", 0)], vec![eq]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let alg = a2();
        let s1 = Representation::simple(alg.clone(), 0).unwrap();
        let p1 = Representation::projective(alg.clone(), 0).unwrap();
        let p2 = Representation::projective(alg.clone(), 1).unwrap();
        let f = alpha_x_zero(&alg);
        assert_eq!(eval(&f, &s1).unwrap().dim(), 1);
        assert_eq!(eval(&f, &p1).unwrap().dim(), 0);
        assert_eq!(eval(&alpha_divides(&alg), &p2).unwrap().dim(), 0);
        assert_eq!(eval(&alpha_divides(&alg), &p1).unwrap().dim(), 1);
    }

    #[test]
    fn free_realizations() {
        let alg = a2();
        let s1 = Representation::simple(alg.clone(), 0).unwrap();
        let p1 = Representation::projective(alg.clone(), 0).unwrap();
        let fr = free_realization(&alpha_x_zero(&alg)).unwrap();
        assert!(crate::repmod::are_isomorphic(&fr.module, &s1, 0).unwrap().isomorphic);
        assert_eq!(fr.tuple, vec![vec![Q.one()]]);

        let fr = free_realization(&PpFormula::top(alg.clone(), &[0])).unwrap();
        assert!(crate::repmod::are_isomorphic(&fr.module, &p1, 0).unwrap().isomorphic);

        let fr = free_realization(&alpha_divides(&alg)).unwrap();
        assert!(crate::repmod::are_isomorphic(&fr.module, &p1, 0).unwrap().isomorphic);
        assert!(eval(&alpha_divides(&alg), &fr.module).unwrap().contains_tuple(&fr.tuple));
        assert!(fr.tuple[0].iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn implication_examples() {
        let alg = a2();
        let zero = PpFormula::zero(alg.clone(), &[0]);
        let f = alpha_x_zero(&alg);
        let top = PpFormula::top(alg.clone(), &[0]);
        assert!(pp_implies(&zero, &f, Mode::Exact).unwrap().holds);
        assert!(!pp_implies(&f, &zero, Mode::Exact).unwrap().holds);
        let e1x = {
            let eq = Equation::new(0, [(0, RingElement::lazy(0, Q)), (0, RingElement::lazy(0, Q).neg())]);
            PpFormula::new(alg.clone(), vec![Var::new("x", 0)], vec![], vec![eq]).unwrap()
        };
        assert!(pp_implies(&e1x, &top, Mode::Exact).unwrap().holds);
        let other = PpFormula::top(alg, &[1]);
        assert!(matches!(pp_implies(&top, &other, Mode::Exact), Err(Error::SortMismatch(_))));
    }

    #[test]
    fn pair_values() {
        let alg = a2();
        let p1 = Representation::projective(alg.clone(), 0).unwrap();
        let pair = PpPair::new(PpFormula::top(alg.clone(), &[0]), PpFormula::zero(alg.clone(), &[0])).unwrap();
        assert!(matches!(eval_pair(&pair, &p1), Err(Error::UncertifiedPair(_))));
        let pair = certify(&pair, Mode::Exact).unwrap().unwrap();
        assert_eq!(eval_pair(&pair, &p1).unwrap(), 1);
        assert_eq!(eval_pair(&pair, &Representation::zero(alg.clone())).unwrap(), 0);

        let t3 = PpPair::new(PpFormula::top(alg.clone(), &[1]), alpha_divides(&alg)).unwrap();
        let t3 = certify(&t3, Mode::Exact).unwrap().unwrap();
        assert_eq!(eval_pair(&t3, &p1).unwrap(), 0);

        let q1 = certify(&PpPair::new(alpha_x_zero(&alg), PpFormula::zero(alg.clone(), &[0])).unwrap(), Mode::Exact)
            .unwrap()
            .unwrap();
        assert!(definable_membership(&[q1.clone(), t3.clone()], &p1).unwrap());
        let s1 = Representation::simple(alg.clone(), 0).unwrap();
        assert!(!definable_membership(&[q1, t3], &s1).unwrap());
        assert!(definable_membership(&[], &s1).unwrap());
    }

    #[test]
    fn alpha_map_between_vertex_sorts() {
        let alg = a2();
        let alpha = alg.element(&["alpha"]).unwrap();
        let e1 = certify(&PpPair::new(PpFormula::top(alg.clone(), &[0]), PpFormula::zero(alg.clone(), &[0])).unwrap(), Mode::Exact)
            .unwrap()
            .unwrap();
        let e2 = certify(&PpPair::new(PpFormula::top(alg.clone(), &[1]), PpFormula::zero(alg.clone(), &[1])).unwrap(), Mode::Exact)
            .unwrap()
            .unwrap();
        let rho = PpFormula::new(
            alg.clone(),
            vec![Var::new("x", 0), Var::new("y", 1)],
            vec![],
            vec![Equation::new(1, [(1, RingElement::lazy(1, Q)), (0, alpha.neg())])],
        )
        .unwrap();
        let m = PpMap::new(e1.clone(), e2, rho).unwrap();
        assert!(check_pp_map(&m, Mode::Exact).unwrap().holds());
        let id = PpMap::new(e1.clone(), e1, PpFormula::identity_map(alg, &[0])).unwrap();
        assert!(check_pp_map(&id, Mode::Exact).unwrap().holds());
    }
}
