mod common;

use ppcat::interp::InterpretationFunctor;
use ppcat::repmod::{direct_sum, RepMorphism, Representation};
use ppcat::textio::Workspace;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

/// Functors from the corpus that are defined on every source module.
fn functors() -> Vec<(Workspace, &'static str)> {
    vec![
        (fixture_workspace("a1tilde"), "I"),
        (fixture_workspace("d4tilde"), "I"),
        (fixture_workspace("morita"), "F"),
        (fixture_workspace("forget"), "U"),
    ]
}

fn pick(rng: &mut ChaCha8Rng, ws: &[(Workspace, &'static str)]) -> InterpretationFunctor {
    let (w, name) = &ws[rng.gen_range(0..ws.len())];
    w.interp(name).unwrap().clone()
}

fn module(rng: &mut ChaCha8Rng, f: &InterpretationFunctor) -> Representation {
    random_module(rng, f.source(), 2)
}

fn is_iso(w: &RepMorphism) -> bool {
    w.blocks().iter().all(|b| b.is_square() && b.rank() == b.rows())
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn functors_are_additive(seed: u64) {
        let fs = functors();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = pick(&mut rng, &fs);
        let m = module(&mut rng, &f);
        let n = module(&mut rng, &f);
        let (s, inj) = direct_sum(&[m.clone(), n.clone()]).unwrap();
        let (fm, fn_, fs_) = (f.apply(&m).unwrap(), f.apply(&n).unwrap(), f.apply(&s).unwrap());
        let (sum, _) = direct_sum(&[fm, fn_]).unwrap();
        // the canonical comparison map [F(i1) F(i2)]: F(M) + F(N) -> F(M + N)
        let i1 = f.apply_morphism(&inj[0]).unwrap();
        let i2 = f.apply_morphism(&inj[1]).unwrap();
        let blocks = i1.blocks().iter().zip(i2.blocks()).map(|(a, b)| a.hstack(b)).collect();
        let w = RepMorphism::new(&sum, &fs_, blocks).unwrap();
        prop_assert!(is_iso(&w));
    }

    #[test]
    fn functors_are_natural(seed: u64) {
        let fs = functors();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = pick(&mut rng, &fs);
        let (l, m, n) = (module(&mut rng, &f), module(&mut rng, &f), module(&mut rng, &f));
        let h = random_hom(&mut rng, &l, &m);
        let g = random_hom(&mut rng, &m, &n);
        let fh = f.apply_morphism(&h).unwrap();
        let fg = f.apply_morphism(&g).unwrap();
        let fgh = f.apply_morphism(&g.after(&h).unwrap()).unwrap();
        prop_assert_eq!(fgh.blocks().to_vec(), fg.after(&fh).unwrap().blocks().to_vec());
        let id = f.apply_morphism(&RepMorphism::identity(&m)).unwrap();
        prop_assert_eq!(id.blocks().to_vec(), RepMorphism::identity(id.source()).blocks().to_vec());
        // sums of maps go to sums
        let h2 = random_hom(&mut rng, &l, &m);
        let lhs = f.apply_morphism(&h.add(&h2)).unwrap();
        let rhs = fh.add(&f.apply_morphism(&h2).unwrap());
        prop_assert_eq!(lhs.blocks(), rhs.blocks());
    }
}

#[test]
fn round_trips_preserve_dimension_vectors() {
    for file in ["a1tilde", "d4tilde"] {
        let ws = fixture_workspace(file);
        let rts = ppcat::interp::round_trip_check(ws.interp("I").unwrap(), ws.interp("J").unwrap(), ws.fixture("kt").unwrap(), 0)
            .unwrap();
        for (rt, m) in rts.iter().zip(ws.fixture("kt").unwrap()) {
            assert_eq!(rt.back_dims, m.dims());
            assert!(rt.verdict.isomorphic && rt.verdict.witness.is_some(), "{file}");
        }
    }
}
