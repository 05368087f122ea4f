mod common;

use ppcat::exactla::{Field, Matrix, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random_matrix;

fn field(k: u8) -> Field {
    match k % 3 {
        0 => Field::prime(2).unwrap(),
        1 => Field::prime(5).unwrap(),
        _ => Field::Rationals,
    }
}

fn random_subspace(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    Subspace::from_row_matrix(&random_matrix(rng, f, k, n))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn modular_law(seed: u64, k: u8, n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(k);
        let a = random_subspace(&mut rng, f, n);
        let b = random_subspace(&mut rng, f, n);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(sum.contains(&a).unwrap() && sum.contains(&b).unwrap());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
    }

    #[test]
    fn rref_is_idempotent(seed: u64, k: u8, r in 0usize..5, c in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, field(k), r, c);
        let once = m.rref();
        prop_assert_eq!(once.rref(), once.clone());
        prop_assert_eq!(once.rank(), m.rank());
    }

    #[test]
    fn rank_nullity(seed: u64, k: u8, r in 0usize..5, c in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, field(k), r, c);
        let ker = m.kernel();
        prop_assert_eq!(ker.dim() + m.image().dim(), c);
        for v in ker.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    /// Two spanning sets of one space give bit-identical stored bases.
    #[test]
    fn subspaces_are_canonical(seed: u64, k: u8, n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(k);
        let a = random_subspace(&mut rng, f, n);
        let d = a.dim();
        // recombine the basis through a random invertible matrix
        let g = loop {
            let g = random_matrix(&mut rng, f, d, d);
            if g.rank() == d {
                break g;
            }
        };
        let b = Subspace::from_row_matrix(&(&g * a.basis()));
        prop_assert_eq!(a.basis().clone(), b.basis().clone());
        prop_assert!(a == b);
        let c = random_subspace(&mut rng, f, n);
        prop_assert_eq!(a == c, a.contains(&c).unwrap() && c.contains(&a).unwrap());
    }
}

#[test]
fn zero_dimensional_edge_cases() {
    let f = Field::Rationals;
    let m = Matrix::zeros(f, 0, 3);
    assert_eq!(m.kernel().dim(), 3);
    assert_eq!(Subspace::zero(f, 0).sum(&Subspace::full(f, 0)).unwrap().dim(), 0);
}
