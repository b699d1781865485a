use flagcone::cones;
use flagcone::embed::EmbeddingDatum;
use flagcone::liealg::{ChevalleyAlgebra, RankOracle, DEFAULT_DIM_CAP};
use flagcone::linalg::{q, Q};
use flagcone::oracle;
use flagcone::popov::{self, Context};
use flagcone::rootcore::{Isogeny, RootDatum};
use flagcone::strat;
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn rd(s: &str) -> RootDatum {
    RootDatum::parse(s, Isogeny::SimplyConnected).unwrap()
}

fn family() -> &'static [EmbeddingDatum] {
    static F: OnceLock<Vec<EmbeddingDatum>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            EmbeddingDatum::principal(rd("A2")).unwrap(),
            EmbeddingDatum::principal(rd("B2")).unwrap(),
            EmbeddingDatum::diagonal(&rd("A1"), 3).unwrap(),
            EmbeddingDatum::diagonal(&rd("A1"), 4).unwrap(),
            EmbeddingDatum::diagonal(&rd("A2"), 2).unwrap(),
        ]
    })
}

fn c1_cones() -> &'static [cones::ConeH] {
    static C: OnceLock<Vec<cones::ConeH>> = OnceLock::new();
    C.get_or_init(|| {
        family()
            .iter()
            .map(|e| cones::ck_cone(&RankOracle::new(e, DEFAULT_DIM_CAP).unwrap(), 1, 5, 0).unwrap())
            .collect()
    })
}

/// An embedding from the family with a strictly dominant weight of matching length.
fn embedded_weight(max: i64) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..family().len()).prop_flat_map(move |i| {
        let n = family()[i].g.rank();
        (Just(i), proptest::collection::vec(1..=max, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ampleness_is_ray_invariant((i, lam) in embedded_weight(5), k in 2i64..4) {
        let e = &family()[i];
        let mut cx = Context::new();
        let scaled: Vec<i64> = lam.iter().map(|x| x * k).collect();
        prop_assert_eq!(cx.is_ample(e, &lam).unwrap(), cx.is_ample(e, &scaled).unwrap());
    }

    #[test]
    fn three_descriptions_of_the_ample_cone_agree((i, lam) in embedded_weight(5)) {
        let e = &family()[i];
        let mut cx = Context::new();
        let ample = cx.is_ample(e, &lam).unwrap();
        let codim = strat::codim_unstable(&mut cx, e, &lam).unwrap();
        prop_assert_eq!(c1_cones()[i].contains_int(&lam), ample);
        prop_assert_eq!(codim.is_some_and(|c| c >= 1), ample);
    }

    #[test]
    fn codimension_bounds((i, lam) in embedded_weight(6)) {
        let e = &family()[i];
        let mut cx = Context::new();
        let codim = strat::codim_unstable(&mut cx, e, &lam).unwrap().unwrap();
        // torus-unstable points are unstable for the whole group
        let t = strat::t_codim_unstable(e, &lam).unwrap().unwrap();
        prop_assert!(codim <= t);
        prop_assert!(codim <= strat::codim_upper_bound(e).unwrap());
    }

    #[test]
    fn invariants_are_symmetric(a in 0i64..5, b in 0i64..5, c in 0i64..5, d in 0i64..4, f in 0i64..4) {
        let e3 = EmbeddingDatum::diagonal(&rd("A1"), 3).unwrap();
        let base = oracle::invariant_dim(&e3, &[a, b, c]).unwrap();
        prop_assert_eq!(base, oracle::invariant_dim(&e3, &[c, a, b]).unwrap());
        prop_assert_eq!(base, oracle::invariant_dim(&e3, &[b, a, c]).unwrap());
        let e2 = EmbeddingDatum::diagonal(&rd("A2"), 2).unwrap();
        let x = oracle::invariant_dim(&e2, &[a, b, d, f]).unwrap();
        prop_assert_eq!(x, oracle::invariant_dim(&e2, &[d, f, a, b]).unwrap());
        // dual weights: swap the two fundamental coordinates in every factor
        prop_assert_eq!(x, oracle::invariant_dim(&e2, &[b, a, f, d]).unwrap());
    }

    #[test]
    fn membership_is_monotone_in_jmax(a in 1i64..4, b in 1i64..4, c in 1i64..4, j in 1usize..4) {
        let e = EmbeddingDatum::diagonal(&rd("A1"), 3).unwrap();
        let small = oracle::membership(&e, &[a, b, c], j).unwrap();
        let large = oracle::membership(&e, &[a, b, c], j + 2).unwrap();
        prop_assert!(!small.is_positive() || large.is_positive());
    }

    #[test]
    fn xi_from_nu_ignores_scale(v in proptest::collection::vec(-6i64..6, 2), num in 1i64..7, den in 1i64..7) {
        let e = EmbeddingDatum::identity(rd("B2")).unwrap();
        let nu: Vec<Q> = v.iter().map(|&x| q(x)).collect();
        let s = Q::new(num.into(), den.into());
        let scaled: Vec<Q> = nu.iter().map(|x| x * &s).collect();
        prop_assert_eq!(popov::xi_from_nu(&e, &nu), popov::xi_from_nu(&e, &scaled));
    }

    #[test]
    fn min_norm_point_is_certified(pts in proptest::collection::vec(proptest::collection::vec(-5i64..6, 3), 1..7)) {
        let e = EmbeddingDatum::identity(rd("B3")).unwrap();
        let metric = popov::weight_metric(&e);
        let pts: Vec<Vec<Q>> = pts.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect();
        let r = popov::min_norm_point(&pts, &metric).unwrap();
        let total: Q = r.support.iter().map(|(_, c)| c.clone()).sum();
        prop_assert_eq!(total, q(1));
    }

    #[test]
    fn words_normalize(word in proptest::collection::vec(0usize..3, 0..12)) {
        let g = rd("C3");
        let w = g.element_from_word(&word);
        prop_assert_eq!(&g.element_from_word(&w.word), &w);
        prop_assert!(g.compose(&w, &g.inverse(&w)).is_identity());
        let rho = g.rho().0;
        let a = g.act(&w, &rho);
        let b = g.act(&g.compose(&w, &g.longest()), &rho);
        prop_assert!(a.iter().zip(&b).all(|(x, y)| x + y == 0));
        prop_assert_eq!(g.inversion_set(&w).len(), w.length());
    }

    #[test]
    fn mumford_values_negate_under_duality((i, lam) in embedded_weight(4)) {
        // (w sigma lambda)(xi) = -(u sigma lambda*)(xi) with lambda* = -w0 lambda and u = w sigma w0 sigma^-1
        let e = &family()[i];
        let g = &e.g;
        let w0 = g.longest();
        let dual: Vec<i64> = g.act(&w0, &lam).iter().map(|x| -x).collect();
        for levi in e.xi_max().unwrap() {
            let twist = g.compose(&g.compose(&levi.sigma, &w0), &g.inverse(&levi.sigma));
            for w in e.weyl().unwrap().iter().take(24) {
                let a = strat::mumford_value(e, &lam, &levi.xi, w).unwrap();
                let b = strat::mumford_value(e, &dual, &levi.xi, &g.compose(w, &twist)).unwrap();
                prop_assert!((a + b).is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity_on_exceptional_samples(t in 0usize..2, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        static ALGS: OnceLock<Vec<ChevalleyAlgebra>> = OnceLock::new();
        let algs = ALGS.get_or_init(|| {
            ["F4", "E6"].iter().map(|s| ChevalleyAlgebra::build(&rd(s), DEFAULT_DIM_CAP).unwrap()).collect()
        });
        let alg = &algs[t];
        let n = alg.dim();
        let defect = alg.jacobi_defect(a % n, b % n, c % n);
        prop_assert!(defect.iter().all(Zero::is_zero));
    }
}
