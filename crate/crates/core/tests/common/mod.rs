//! Random algebras, modules and formulas shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use ppcat::exactla::{Field, Matrix, Scalar};
use ppcat::ppcore::{Equation, PpFormula, Var};
use ppcat::quivalg::{Quiver, QuiverAlgebra, RingElement};
use ppcat::repmod::Representation;
use ppcat::textio::Workspace;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn a2(field: Field) -> Arc<QuiverAlgebra> {
    let q = Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap();
    Arc::new(QuiverAlgebra::free(q, field))
}

pub fn a3(field: Field) -> Arc<QuiverAlgebra> {
    let q = Quiver::new("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
    Arc::new(QuiverAlgebra::free(q, field))
}

pub fn kronecker(field: Field) -> Arc<QuiverAlgebra> {
    let q = Quiver::new("Kr", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
    Arc::new(QuiverAlgebra::free(q, field))
}

pub fn small_algebras(field: Field) -> Vec<Arc<QuiverAlgebra>> {
    vec![a2(field), a3(field), kronecker(field)]
}

/// The three indecomposables of A2: S1, P1 and P2.
pub fn a2_indecomposables(alg: &Arc<QuiverAlgebra>) -> Vec<Representation> {
    vec![
        Representation::simple(alg.clone(), 0).unwrap(),
        Representation::projective(alg.clone(), 0).unwrap(),
        Representation::projective(alg.clone(), 1).unwrap(),
    ]
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.random(rng, 2))
}

/// A module over a relation-free algebra with every dimension at most `max_dim`.
pub fn random_module<R: Rng>(rng: &mut R, alg: &Arc<QuiverAlgebra>, max_dim: usize) -> Representation {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = q.arrows().iter().map(|a| random_matrix(rng, alg.field(), dims[a.target], dims[a.source])).collect();
    Representation::new(alg.clone(), dims, maps).unwrap()
}

fn random_element<R: Rng>(rng: &mut R, alg: &Arc<QuiverAlgebra>, s: usize, t: usize) -> RingElement {
    let field = alg.field();
    let mut r = RingElement::zero(s, t);
    for p in alg.hom_basis(s, t).unwrap() {
        if rng.gen_bool(0.6) {
            r.add_term(p, field.random(rng, 3));
        }
    }
    r
}

/// A formula with the given (nonempty) free sorts, up to two bound variables
/// and between one and `max_eqs` equations.
pub fn random_formula<R: Rng>(rng: &mut R, alg: &Arc<QuiverAlgebra>, free_sorts: &[usize], max_eqs: usize) -> PpFormula {
    let nv = alg.vertex_count();
    let free: Vec<Var> = free_sorts.iter().enumerate().map(|(i, &s)| Var::new(format!("x{i}"), s)).collect();
    let bound: Vec<Var> = (0..rng.gen_range(0..=2)).map(|i| Var::new(format!("y{i}"), rng.gen_range(0..nv))).collect();
    let sorts: Vec<usize> = free.iter().chain(&bound).map(|v| v.sort).collect();
    let mut equations = Vec::new();
    for _ in 0..rng.gen_range(1..=max_eqs.max(1)) {
        // anchor the equation on a free variable so it constrains the free part
        let anchor = rng.gen_range(0..free.len());
        let reachable: Vec<usize> =
            (0..nv).filter(|&t| !alg.hom_basis(sorts[anchor], t).unwrap().is_empty()).collect();
        let q = *reachable.choose(rng).unwrap();
        let mut idx: Vec<usize> = (0..sorts.len()).filter(|&i| i != anchor).collect();
        idx.shuffle(rng);
        idx.truncate(rng.gen_range(0..=2));
        idx.insert(0, anchor);
        let mut terms: Vec<(usize, RingElement)> = Vec::new();
        for i in idx {
            // a few draws so that most terms survive over small fields
            for _ in 0..3 {
                let r = random_element(rng, alg, sorts[i], q);
                if !r.is_zero() {
                    terms.push((i, r));
                    break;
                }
            }
        }
        equations.push(Equation::new(q, terms));
    }
    PpFormula::new(alg.clone(), free, bound, equations).unwrap()
}

pub fn random_sorts<R: Rng>(rng: &mut R, alg: &Arc<QuiverAlgebra>, max: usize) -> Vec<usize> {
    let vs: Vec<usize> = (0..alg.vertex_count()).collect();
    (0..rng.gen_range(1..=max)).map(|_| *vs.choose(rng).unwrap()).collect()
}

pub fn fixture_workspace(name: &str) -> Workspace {
    Workspace::load(ppcat::textio::corpus::fixture(&format!("{name}.ppc")).unwrap()).unwrap()
}

pub fn scalars(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

/// The commutative square 1 -> 2 -> 4, 1 -> 3 -> 4.
pub fn commutative_square(field: Field) -> Arc<QuiverAlgebra> {
    let q = Quiver::new("Sq", &["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
        .unwrap();
    let free = QuiverAlgebra::free(q.clone(), field);
    let rel = free.element(&["b", "a"]).unwrap().add(&free.element(&["d", "c"]).unwrap().neg()).unwrap();
    Arc::new(QuiverAlgebra::new("Sq", q, field, vec![rel], None).unwrap())
}

/// A random element of `e_t A e_s`.
pub fn random_element_between<R: Rng>(rng: &mut R, alg: &Arc<QuiverAlgebra>, s: usize, t: usize) -> RingElement {
    random_element(rng, alg, s, t)
}

pub fn random_nonzero_module<R: Rng>(rng: &mut R, alg: &Arc<QuiverAlgebra>, max_dim: usize) -> Representation {
    loop {
        let m = random_module(rng, alg, max_dim);
        if !m.is_zero() {
            return m;
        }
    }
}

/// A random element of `Hom(M, N)`.
pub fn random_hom<R: Rng>(rng: &mut R, m: &Representation, n: &Representation) -> ppcat::repmod::RepMorphism {
    let basis = ppcat::repmod::hom_space(m, n).unwrap();
    let coeffs: Vec<Scalar> = basis.iter().map(|_| m.field().random(rng, 2)).collect();
    ppcat::repmod::RepMorphism::combine(m, n, &basis, &coeffs)
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let g = random_matrix(rng, field, n, n);
        if g.rank() == n {
            return g;
        }
    }
}
