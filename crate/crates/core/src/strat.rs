//! Mumford values on orbit labels, the partition of `W` by their sign, and the
//! Kirwan-Ness stratification of the unstable locus on `G/B`.

use crate::embed::{EmbeddingDatum, LeviDatum};
use crate::error::{Error, Result};
use crate::liealg::RankOracle;
use crate::linalg::{self, Q};
use crate::popov::{Candidate, Context};
use crate::rootcore::{Coweight, WeylElement};
use num_traits::Signed;
use serde::Serialize;

/// `w sigma_xi lambda (iota xi)` for a twisted element `w`.
pub fn mumford_value(e: &EmbeddingDatum, lambda: &[i64], xi: &Coweight, w: &WeylElement) -> Result<Q> {
    check_dominant(e, lambda)?;
    let sigma = e.sigma_of(&xi.0)?;
    let v = e.g.act(&e.g.compose(w, &sigma), lambda);
    Ok(linalg::dot(&linalg::qvec(&v), &e.push_coweight(&xi.0)))
}

/// The sign classes of `w -> w sigma_xi lambda (xi)` over `W`.
#[derive(Clone, Debug)]
pub struct WPartition {
    pub plus: Vec<WeylElement>,
    pub zero: Vec<WeylElement>,
    pub minus: Vec<WeylElement>,
    /// largest `l_xi(w)` over shortest representatives in `plus`
    pub l_plus: Option<usize>,
}

pub fn w_partition(e: &EmbeddingDatum, lambda: &[i64], xi: &Coweight) -> Result<WPartition> {
    check_dominant(e, lambda)?;
    let levi = e.levi_datum(xi)?;
    partition_for(e, &levi, lambda)
}

fn partition_for(e: &EmbeddingDatum, levi: &LeviDatum, lambda: &[i64]) -> Result<WPartition> {
    let g = &e.g;
    let mut p = WPartition {
        plus: Vec::new(),
        zero: Vec::new(),
        minus: Vec::new(),
        l_plus: None,
    };
    for w in e.weyl()?.iter() {
        let wp = levi.untwist(g, w);
        let m = levi.mumford(g, &wp, lambda);
        if m.is_positive() {
            if levi.is_min_rep(g, &wp) {
                p.l_plus = p.l_plus.max(Some(wp.length()));
            }
            p.plus.push(w.clone());
        } else if m.is_negative() {
            p.minus.push(w.clone());
        } else {
            p.zero.push(w.clone());
        }
    }
    Ok(p)
}

/// One connected Kirwan-Ness stratum `Ghat P_xi x_{w sigma_xi}`.
#[derive(Clone, Debug, Serialize)]
pub struct StratumRecord {
    pub xi: String,
    pub sigma: Vec<usize>,
    pub w: Vec<usize>,
    pub w_prime: Vec<usize>,
    pub m: String,
    pub length: usize,
    pub r: usize,
    pub r_hat: usize,
    pub n: usize,
    pub dim: i64,
    pub codim: i64,
    /// filled in by the rank oracle when requested
    pub fit: Option<bool>,
}

impl StratumRecord {
    fn from_candidate(e: &EmbeddingDatum, c: &Candidate) -> Self {
        let codim = c.codim();
        Self {
            xi: c.levi.xi.to_string(),
            sigma: c.levi.sigma.word.clone(),
            w: c.w.word.clone(),
            w_prime: c.w_prime.word.clone(),
            m: c.m.to_string(),
            length: c.length,
            r: c.levi.r,
            r_hat: c.levi.r_hat,
            n: c.levi.n,
            dim: e.g.num_positive() as i64 - codim,
            codim,
            fit: None,
        }
    }
}

/// Candidates whose restricted weight is ample for the Levi sub-embedding,
/// in candidate order.
pub fn stratifying_candidates(cx: &mut Context, e: &EmbeddingDatum, lambda: &[i64]) -> Result<Vec<Candidate>> {
    e.require_regular()?;
    check_strict(e, lambda)?;
    let mut out = Vec::new();
    for c in cx.candidates(e, lambda)?.iter() {
        if cx.levi_ample(e, c)? {
            out.push(c.clone());
        }
    }
    Ok(out)
}

pub fn stratifying_pairs(cx: &mut Context, e: &EmbeddingDatum, lambda: &[i64]) -> Result<Vec<StratumRecord>> {
    Ok(stratifying_candidates(cx, e, lambda)?
        .iter()
        .map(|c| StratumRecord::from_candidate(e, c))
        .collect())
}

/// Stratifying pairs with the `fit` field filled in by the rank oracle.
pub fn stratifying_pairs_with_fit(
    cx: &mut Context,
    oracle: &RankOracle,
    lambda: &[i64],
    trials: usize,
    seed: u64,
) -> Result<Vec<StratumRecord>> {
    let e = &oracle.e;
    stratifying_candidates(cx, e, lambda)?
        .iter()
        .map(|c| {
            let mut r = StratumRecord::from_candidate(e, c);
            r.fit = Some(oracle.orbit_dim(&c.levi, &c.w_prime, trials, seed)?.fit);
            Ok(r)
        })
        .collect()
}

/// Strata not contained in the closure of another stratum with the same `xi`
/// (Bruhat order on the untwisted elements). Their closures cover `X^us`.
pub fn top_strata(e: &EmbeddingDatum, records: &[StratumRecord]) -> Vec<StratumRecord> {
    let g = &e.g;
    let elem: Vec<WeylElement> = records.iter().map(|r| g.element_from_word(&r.w_prime)).collect();
    records
        .iter()
        .enumerate()
        .filter(|&(i, r)| {
            !records.iter().enumerate().any(|(j, s)| {
                j != i && s.xi == r.xi && s.length > r.length && g.bruhat_le(&elem[i], &elem[j])
            })
        })
        .map(|(_, r)| r.clone())
        .collect()
}

/// `codim_X X^us(lambda)`; `None` when no stratum exists.
pub fn codim_unstable(cx: &mut Context, e: &EmbeddingDatum, lambda: &[i64]) -> Result<Option<i64>> {
    e.require_regular()?;
    check_strict(e, lambda)?;
    let mut cands: Vec<Candidate> = cx.candidates(e, lambda)?.iter().cloned().collect();
    cands.sort_by_key(Candidate::codim);
    for c in &cands {
        if cx.levi_ample(e, c)? {
            return Ok(Some(c.codim()));
        }
    }
    Ok(None)
}

/// Codimension of the unstable locus for the maximal torus of `Ghat`, read
/// from the largest `l_xi(w)` with positive Mumford value over `Xi_max`.
/// `None` means every point is semistable.
pub fn t_codim_unstable(e: &EmbeddingDatum, lambda: &[i64]) -> Result<Option<i64>> {
    e.require_regular()?;
    check_dominant(e, lambda)?;
    let mut best: Option<i64> = None;
    for levi in e.xi_max()? {
        if let Some(l) = partition_for(e, &levi, lambda)?.l_plus {
            let c = levi.r as i64 - l as i64;
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    Ok(best)
}

/// `min (r_xi - r_hat_xi)` over `Xi_max`, an upper bound for the codimension.
pub fn codim_upper_bound(e: &EmbeddingDatum) -> Result<i64> {
    e.xi_max()?
        .iter()
        .map(LeviDatum::upper_codim)
        .min()
        .ok_or_else(|| Error::Validation("Ghat has rank zero".into()))
}

pub(crate) fn check_dominant(e: &EmbeddingDatum, lambda: &[i64]) -> Result<()> {
    if lambda.len() != e.g.rank() || lambda.iter().any(|&x| x < 0) {
        return Err(Error::Validation(format!(
            "lambda = {lambda:?} must be dominant of length {}",
            e.g.rank()
        )));
    }
    Ok(())
}

pub(crate) fn check_strict(e: &EmbeddingDatum, lambda: &[i64]) -> Result<()> {
    check_dominant(e, lambda)?;
    if lambda.contains(&0) {
        return Err(Error::Validation(format!(
            "lambda = {lambda:?} must be strictly dominant"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use num_traits::Zero;
    use crate::rootcore::{Isogeny, RootDatum};

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s, Isogeny::SimplyConnected).unwrap()
    }

    fn principal_a2() -> EmbeddingDatum {
        EmbeddingDatum::principal(rd("A2")).unwrap()
    }

    fn diag(s: &str, k: usize) -> EmbeddingDatum {
        EmbeddingDatum::diagonal(&rd(s), k).unwrap()
    }

    fn rho(e: &EmbeddingDatum) -> Vec<i64> {
        vec![1; e.g.rank()]
    }

    #[test]
    fn principal_mumford_and_partition() {
        let e = principal_a2();
        let xi = e.xi_max().unwrap()[0].xi.clone();
        let s1 = e.g.element_from_word(&[0]);
        assert_eq!(mumford_value(&e, &[1, 1], &xi, &s1).unwrap(), q(1));
        let p = w_partition(&e, &[2, 5], &xi).unwrap();
        let words: Vec<Vec<usize>> = p.plus.iter().map(|w| w.word.clone()).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1]]);
        assert_eq!(p.l_plus, Some(1));
        let p0 = w_partition(&e, &[0, 0], &xi).unwrap();
        assert_eq!(p0.zero.len(), 6);
        assert_eq!(p0.l_plus, None);
    }

    #[test]
    fn principal_strata() {
        let e = principal_a2();
        let mut cx = Context::new();
        let s = stratifying_pairs(&mut cx, &e, &[1, 1]).unwrap();
        let mut ws: Vec<Vec<usize>> = s.iter().map(|r| r.w.clone()).collect();
        ws.sort();
        // the closed orbit of x_1 is the most unstable stratum
        assert_eq!(ws, vec![vec![], vec![0], vec![1]]);
        let top = top_strata(&e, &s);
        let mut ws: Vec<Vec<usize>> = top.iter().map(|r| r.w.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![vec![0], vec![1]]);
        assert!(top.iter().all(|r| r.codim == 1 && r.dim == 2));
        assert_eq!(codim_unstable(&mut cx, &e, &[1, 1]).unwrap(), Some(1));
        assert_eq!(codim_unstable(&mut cx, &e, &[3, 1]).unwrap(), Some(1));
        assert_eq!(t_codim_unstable(&e, &[1, 1]).unwrap(), Some(2));
        assert_eq!(t_codim_unstable(&e, &[0, 0]).unwrap(), None);
    }

    #[test]
    fn mumford_negates_under_longest() {
        let e = diag("A2", 2);
        let w0 = e.g.longest();
        for xi in e.ghat.fundamental_coweights() {
            for w in e.weyl().unwrap().iter() {
                let a = mumford_value(&e, &rho(&e), &xi, w).unwrap();
                let b = mumford_value(&e, &rho(&e), &xi, &e.g.compose(w, &w0)).unwrap();
                assert_eq!(a, -b);
            }
        }
    }

    #[test]
    fn diagonal_rho_codims() {
        let mut cx = Context::new();
        for (s, k, want) in [("A1", 2, 1), ("A1", 3, 1), ("A1", 4, 2), ("A2", 3, 2)] {
            let e = diag(s, k);
            assert_eq!(codim_unstable(&mut cx, &e, &rho(&e)).unwrap(), Some(want), "{s}^{k}");
            assert!(want <= codim_upper_bound(&e).unwrap());
        }
    }

    #[test]
    fn off_diagonal_weight_has_codim_zero() {
        let e = diag("A1", 2);
        let mut cx = Context::new();
        assert_eq!(codim_unstable(&mut cx, &e, &[2, 1]).unwrap(), Some(0));
    }

    #[test]
    fn diagonal_lplus_matches_floor_formula() {
        for (s, k) in [("A1", 3), ("A1", 4), ("A2", 2)] {
            let e = diag(s, k);
            for levi in e.xi_max().unwrap() {
                let p = w_partition(&e, &rho(&e), &levi.xi).unwrap();
                assert_eq!(p.l_plus, Some((levi.r - 1) / 2), "{s}^{k} at {}", levi.xi);
            }
        }
    }

    /// Torus codimension from every translate `What xi_j`, each read in its own
    /// `G`-dominant frame, without twisting by `sigma`.
    fn torus_codim_by_translates(e: &EmbeddingDatum, lambda: &[i64]) -> Option<i64> {
        let g = &e.g;
        let mut best: Option<i64> = None;
        let what = e.ghat.enumerate_weyl(1000).unwrap();
        for levi in e.xi_max().unwrap() {
            for wh in what.iter() {
                let eta = e.push_coweight(&e.ghat.act_coweight(wh, &levi.xi.0));
                // tau^{-1} eta dominant
                let mut dom = eta.clone();
                let mut word = Vec::new();
                while let Some(i) = g.simple_values(&dom).iter().position(|v| v.is_negative()) {
                    g.reflect_coweight(i, &mut dom);
                    word.push(i);
                }
                let tau_inv = g.element_from_word(&word.iter().rev().copied().collect::<Vec<_>>());
                let vals = g.simple_values(&dom);
                let simple: Vec<usize> = (0..g.rank()).filter(|&i| vals[i].is_zero()).collect();
                let roots = g.standard_levi(&simple);
                let r = (g.num_positive() - roots.len()) as i64;
                for v in e.weyl().unwrap().iter() {
                    let vl = linalg::qvec(&g.act(v, lambda));
                    if linalg::dot(&vl, &eta).is_positive() {
                        let u = g.coset_min(&roots, &g.compose(&tau_inv, v));
                        let c = r - u.length() as i64;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn torus_codim_matches_translate_oracle() {
        let cases: Vec<(EmbeddingDatum, Vec<Vec<i64>>)> = vec![
            (principal_a2(), vec![vec![1, 1], vec![3, 1], vec![0, 0]]),
            (diag("A1", 2), vec![vec![1, 1], vec![2, 1], vec![1, 3]]),
            (diag("A1", 3), vec![vec![1, 1, 1], vec![3, 1, 1], vec![1, 2, 3]]),
            (diag("A2", 2), vec![vec![1, 1, 1, 1], vec![2, 1, 1, 3]]),
        ];
        for (e, lams) in cases {
            for lam in lams {
                assert_eq!(t_codim_unstable(&e, &lam).unwrap(), torus_codim_by_translates(&e, &lam), "{} {lam:?}", e.describe());
            }
        }
    }

    #[test]
    fn emitted_strata_are_fit_and_chains_step_by_one() {
        let mut cx = Context::new();
        for e in [principal_a2(), diag("A1", 3), diag("A1", 4)] {
            let oracle = RankOracle::new(&e, crate::liealg::DEFAULT_DIM_CAP).unwrap();
            let lam = rho(&e);
            for r in stratifying_pairs_with_fit(&mut cx, &oracle, &lam, 3, 7).unwrap() {
                assert_eq!(r.fit, Some(true), "{} {:?}", e.describe(), r.w);
            }
            for c in stratifying_candidates(&mut cx, &e, &lam).unwrap() {
                let chain = oracle.seq_fit_chain(&c.levi, &c.w_prime, 3, 7).unwrap();
                assert_eq!(chain.len(), c.length + 1);
                for pair in chain.windows(2) {
                    assert!(pair[0].fit && pair[1].fit);
                    assert_eq!(pair[1].codim, pair[0].codim + 1);
                }
            }
        }
    }

    #[test]
    fn boundary_weight_rejected_for_strata() {
        let e = principal_a2();
        let mut cx = Context::new();
        assert!(matches!(codim_unstable(&mut cx, &e, &[1, 0]), Err(Error::Validation(_))));
    }
}
