mod common;

use ppcat::exactla::Field;
use ppcat::repmod::{are_isomorphic, cokernel_of, direct_sum, hom_dim, is_indecomposable, kernel_of};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn field(k: u8) -> Field {
    if k % 2 == 0 {
        Field::prime(3).unwrap()
    } else {
        Field::Rationals
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_associative_and_bilinear(seed: u64, k: u8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(k);
        let algs = [a3(f), kronecker(f), commutative_square(f)];
        let alg = &algs[rng.gen_range(0..algs.len())];
        let n = alg.vertex_count();
        let v: Vec<usize> = (0..4).map(|_| rng.gen_range(0..n)).collect();
        let x = random_element_between(&mut rng, alg, v[0], v[1]);
        let y = random_element_between(&mut rng, alg, v[1], v[2]);
        let y2 = random_element_between(&mut rng, alg, v[1], v[2]);
        let z = random_element_between(&mut rng, alg, v[2], v[3]);
        let r = |e| alg.reduce(&e);
        let left = r(r(z.compose(&y).unwrap()).compose(&x).unwrap());
        let right = r(z.compose(&r(y.compose(&x).unwrap())).unwrap());
        prop_assert_eq!(left, right);
        let c = f.random(&mut rng, 3);
        let lhs = r(z.compose(&y.add(&y2.scale(&c)).unwrap()).unwrap());
        let rhs = r(z.compose(&y).unwrap().add(&z.compose(&y2).unwrap().scale(&c)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hom_dimension_is_isomorphism_invariant(seed: u64, k: u8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(k);
        let algs = small_algebras(f);
        let alg = &algs[rng.gen_range(0..algs.len())];
        let m = random_module(&mut rng, alg, 2);
        let n = random_module(&mut rng, alg, 2);
        let g: Vec<_> = m.dims().iter().map(|&d| random_invertible(&mut rng, f, d)).collect();
        let m2 = m.conjugate(&g).unwrap();
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&m2, &n).unwrap());
        prop_assert_eq!(hom_dim(&n, &m).unwrap(), hom_dim(&n, &m2).unwrap());
        prop_assert!(are_isomorphic(&m, &m2, seed).unwrap().isomorphic);
    }

    #[test]
    fn kernel_and_cokernel_rank_nullity(seed: u64, k: u8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(k);
        let algs = small_algebras(f);
        let alg = &algs[rng.gen_range(0..algs.len())];
        let m = random_module(&mut rng, alg, 3);
        let n = random_module(&mut rng, alg, 3);
        let h = random_hom(&mut rng, &m, &n);
        let (ker, _) = kernel_of(&h).unwrap();
        let (coker, _) = cokernel_of(&h).unwrap();
        for v in 0..alg.vertex_count() {
            let r = h.block(v).rank();
            prop_assert_eq!(ker.dim(v) + r, m.dim(v));
            prop_assert_eq!(coker.dim(v) + r, n.dim(v));
        }
    }

    #[test]
    fn sums_of_nonzero_modules_decompose(seed: u64, k: u8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // the radical of End needs characteristic above its dimension
        let f = if k % 2 == 0 { Field::prime(101).unwrap() } else { Field::Rationals };
        let algs = small_algebras(f);
        let alg = &algs[rng.gen_range(0..algs.len())];
        let m = random_nonzero_module(&mut rng, alg, 2);
        let n = random_nonzero_module(&mut rng, alg, 2);
        let (s, _) = direct_sum(&[m, n]).unwrap();
        prop_assert!(!is_indecomposable(&s).unwrap());
    }

    /// Krull-Schmidt shadow: a sum of indecomposables does not depend on
    /// the order of its summands.
    #[test]
    fn sums_of_indecomposables_ignore_order(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ws = fixture_workspace("a3");
        let ind = ws.fixture("ind").unwrap();
        let mut parts: Vec<_> = (0..rng.gen_range(2..=4)).map(|_| ind.choose(&mut rng).unwrap().clone()).collect();
        let (a, _) = direct_sum(&parts).unwrap();
        parts.shuffle(&mut rng);
        let (b, _) = direct_sum(&parts).unwrap();
        prop_assert!(are_isomorphic(&a, &b, seed).unwrap().isomorphic);
        for x in ind {
            prop_assert_eq!(hom_dim(x, &a).unwrap(), hom_dim(x, &b).unwrap());
        }
    }
}

#[test]
fn total_hom_dimension_is_algebra_dimension() {
    let f = Field::Rationals;
    for (alg, want) in [(a2(f), 3), (a3(f), 6), (commutative_square(f), 9)] {
        let n = alg.vertex_count();
        let total: usize = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).map(|(s, t)| alg.hom_basis(s, t).unwrap().len()).sum();
        assert_eq!(total, want, "{}", alg.name());
    }
}
