mod common;

use std::sync::Arc;

use ppcat::exactla::{Field, Matrix, Scalar};
use ppcat::ppcore::{dual, exists, PpFormula};
use ppcat::ppeval::{eval, free_realization, pp_implies, Mode};
use ppcat::quivalg::QuiverAlgebra;
use ppcat::repmod::{direct_sum, hom_space, RepMorphism, Representation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

/// Every A2-module over F2 with both dimensions at most `max`.
fn all_a2_modules(alg: &Arc<QuiverAlgebra>, max: usize) -> Vec<Representation> {
    let field = alg.field();
    let elems = field.elements().unwrap();
    let mut out = Vec::new();
    for d1 in 0..=max {
        for d2 in 0..=max {
            for code in 0..elems.len().pow((d1 * d2) as u32) {
                let m = Matrix::from_fn(field, d2, d1, |i, j| elems[(code >> (i * d1 + j)) & 1].clone());
                out.push(Representation::new(alg.clone(), vec![d1, d2], vec![m]).unwrap());
            }
        }
    }
    out
}

/// All vectors of `F2^n`.
fn all_vectors(n: usize) -> Vec<Vec<Scalar>> {
    let f = f2();
    (0..1usize << n).map(|c| (0..n).map(|i| f.from_i64(((c >> i) & 1) as i64)).collect()).collect()
}

fn all_combinations(basis: &[RepMorphism], m: &Representation, n: &Representation) -> Vec<RepMorphism> {
    all_vectors(basis.len()).iter().map(|c| RepMorphism::combine(m, n, basis, c)).collect()
}

fn random_case(rng: &mut ChaCha8Rng, f: Field, min_vars: usize) -> (Arc<QuiverAlgebra>, PpFormula, Vec<usize>) {
    let algs = small_algebras(f);
    let alg = algs[rng.gen_range(0..algs.len())].clone();
    let sorts: Vec<usize> = (0..rng.gen_range(min_vars..=3)).map(|_| rng.gen_range(0..alg.vertex_count())).collect();
    let phi = random_formula(rng, &alg, &sorts, 3);
    (alg, phi, sorts)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn exists_composes(seed: u64, q: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if q { Field::Rationals } else { f2() };
        let (alg, phi, _) = random_case(&mut rng, f, 3);
        let once = exists(&phi, &["x0", "x2"]).unwrap();
        let twice = exists(&exists(&phi, &["x0"]).unwrap(), &["x2"]).unwrap();
        for _ in 0..4 {
            let m = random_module(&mut rng, &alg, 3);
            prop_assert_eq!(eval(&once, &m).unwrap().space, eval(&twice, &m).unwrap().space);
        }
    }

    /// Quantifying a variable projects its block away.
    #[test]
    fn exists_is_projection(seed: u64, q: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if q { Field::Rationals } else { f2() };
        let (alg, phi, sorts) = random_case(&mut rng, f, 2);
        let m = random_module(&mut rng, &alg, 3);
        let drop = rng.gen_range(0..sorts.len());
        let name = format!("x{drop}");
        let e = exists(&phi, &[name.as_str()]).unwrap();
        let mut coords = Vec::new();
        let mut off = 0;
        for (i, &s) in sorts.iter().enumerate() {
            if i != drop {
                coords.extend(off..off + m.dim(s));
            }
            off += m.dim(s);
        }
        let full = eval(&phi, &m).unwrap();
        prop_assert_eq!(eval(&e, &m).unwrap().space, full.space.project(&coords));
    }

    #[test]
    fn annihilator_identity(seed: u64, q: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if q { Field::Rationals } else { f2() };
        let (alg, phi, sorts) = random_case(&mut rng, f, 1);
        let m = random_module(&mut rng, &alg, 3);
        let total: usize = sorts.iter().map(|&s| m.dim(s)).sum();
        let lhs = eval(&dual(&phi), &m.dual()).unwrap().dim();
        prop_assert_eq!(lhs + eval(&phi, &m).unwrap().dim(), total);
    }

    #[test]
    fn homomorphisms_preserve_solutions(seed: u64, q: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if q { Field::Rationals } else { Field::prime(3).unwrap() };
        let (alg, phi, sorts) = random_case(&mut rng, f, 1);
        let m = random_module(&mut rng, &alg, 3);
        let n = random_module(&mut rng, &alg, 3);
        let h = random_hom(&mut rng, &m, &n);
        let target = eval(&phi, &n).unwrap();
        for v in eval(&phi, &m).unwrap().space.basis_vectors() {
            let mut off = 0;
            let mut image = Vec::new();
            for &s in &sorts {
                image.push(h.apply(s, &v[off..off + m.dim(s)]));
                off += m.dim(s);
            }
            prop_assert!(target.contains_tuple(&image));
        }
    }

    #[test]
    fn solutions_add_over_direct_sums(seed: u64, q: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if q { Field::Rationals } else { f2() };
        let (alg, phi, sorts) = random_case(&mut rng, f, 1);
        let m = random_module(&mut rng, &alg, 2);
        let n = random_module(&mut rng, &alg, 2);
        let (s, inj) = direct_sum(&[m.clone(), n.clone()]).unwrap();
        let sum = eval(&phi, &s).unwrap();
        let (em, en) = (eval(&phi, &m).unwrap(), eval(&phi, &n).unwrap());
        prop_assert_eq!(sum.dim(), em.dim() + en.dim());
        for (part, e, j) in [(&m, &em, &inj[0]), (&n, &en, &inj[1])] {
            for v in e.space.basis_vectors() {
                let mut off = 0;
                let mut image = Vec::new();
                for &srt in &sorts {
                    image.push(j.apply(srt, &v[off..off + part.dim(srt)]));
                    off += part.dim(srt);
                }
                prop_assert!(sum.contains_tuple(&image));
            }
        }
    }

    /// A3 has finite type, so its six indecomposables decide implications.
    #[test]
    fn exact_implication_matches_indecomposables(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ws = fixture_workspace("a3");
        let ind = ws.fixture("ind").unwrap();
        let alg = ind[0].algebra().clone();
        let sorts = random_sorts(&mut rng, &alg, 2);
        let phi = random_formula(&mut rng, &alg, &sorts, 3);
        let psi = random_formula(&mut rng, &alg, &sorts, 3);
        let exact = pp_implies(&phi, &psi, Mode::Exact).unwrap();
        let tested = pp_implies(&phi, &psi, Mode::TestSet(ind)).unwrap();
        prop_assert_eq!(exact.holds, tested.holds);
    }
}

proptest! {
    #![proptest_config(config(16))]

    /// `DDφ` and `φ` cut out the same subgroup of every A2-module over F2 with dims <= 3.
    #[test]
    fn dual_is_an_involution(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = a2(f2());
        let sorts = random_sorts(&mut rng, &alg, 2);
        let phi = random_formula(&mut rng, &alg, &sorts, 3);
        let dd = dual(&dual(&phi));
        prop_assert!(dd.algebra().as_ref() == alg.as_ref());
        for m in all_a2_modules(&alg, 3) {
            prop_assert_eq!(eval(&dd, &m).unwrap().space, eval(&phi, &m).unwrap().space);
        }
    }

    /// `ā ∈ φ(M)` exactly when some map out of the free realization sends
    /// the generic tuple to `ā`.
    #[test]
    fn free_realization_is_universal(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = a2(f2());
        let sorts = random_sorts(&mut rng, &alg, 2);
        let phi = random_formula(&mut rng, &alg, &sorts, 2);
        let fr = free_realization(&phi).unwrap();
        for m in all_a2_modules(&alg, 2) {
            let sol = eval(&phi, &m).unwrap();
            let homs = all_combinations(&hom_space(&fr.module, &m).unwrap(), &fr.module, &m);
            let hit: Vec<Vec<Scalar>> = homs
                .iter()
                .map(|h| sorts.iter().zip(&fr.tuple).flat_map(|(&s, t)| h.apply(s, t)).collect())
                .collect();
            let total: usize = sorts.iter().map(|&s| m.dim(s)).sum();
            for a in all_vectors(total) {
                prop_assert_eq!(sol.space.contains_vector(&a), hit.contains(&a));
            }
        }
    }
}

#[test]
fn fixture_formulas_are_universal_too() {
    let ws = ppcat::textio::Workspace::load(
        "field F 2;\nquiver A2 { vertices 1 2; arrow a: 1 -> 2; }\n\
         pp phi over A2 { free x:1; eq 2: a*x = 0; }\n\
         pp div over A2 { free x:2; exists y:1; eq 2: x - a*y = 0; }\n\
         pp both over A2 { free x:1, z:2; eq 2: a*x - z = 0; }\n",
    )
    .unwrap();
    let alg = ws.formula("phi").unwrap().algebra().clone();
    for name in ["phi", "div", "both"] {
        let phi = ws.formula(name).unwrap();
        let sorts = phi.free_sorts();
        let fr = free_realization(phi).unwrap();
        for m in all_a2_modules(&alg, 2) {
            let sol = eval(phi, &m).unwrap();
            let homs = all_combinations(&hom_space(&fr.module, &m).unwrap(), &fr.module, &m);
            let total: usize = sorts.iter().map(|&s| m.dim(s)).sum();
            for a in all_vectors(total) {
                let hit = homs.iter().any(|h| {
                    let img: Vec<Scalar> = sorts.iter().zip(&fr.tuple).flat_map(|(&s, t)| h.apply(s, t)).collect();
                    img == a
                });
                assert_eq!(sol.space.contains_vector(&a), hit, "{name}");
            }
        }
    }
}
