//! Brute-force dimensions of `Ghat`-invariants in irreducible `G`-modules, used
//! to cross-check ample-cone membership.
//!
//! Characters are computed per simple factor of `G` with Freudenthal's
//! recursion, pushed to the torus of `Ghat`, multiplied together, and the
//! trivial multiplicity is read off with the alternating sum over `What`.

use crate::embed::EmbeddingDatum;
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::rootcore::{Isogeny, RootDatum};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_JMAX: usize = 6;
pub const DEFAULT_WEIGHT_CAP: usize = 200_000;

/// Weight multiplicities keyed by fundamental coordinates.
pub type Character = HashMap<Vec<i64>, u64>;

/// Freudenthal data for one simple factor.
struct FactorForm {
    datum: RootDatum,
    /// `(alpha_j, alpha_j) / 2`, short roots normalized to 1
    half_norm: Vec<i64>,
}

impl FactorForm {
    fn new(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let datum = RootDatum::from_cartan(cartan, Isogeny::SimplyConnected)?;
        let top = datum.ratio.iter().copied().max().unwrap_or(1);
        let half_norm = datum.ratio.iter().map(|&r| top / r).collect();
        Ok(Self { datum, half_norm })
    }

    /// `(nu, beta)` for a weight `nu` and a root-lattice element `beta` in simple-root coordinates.
    fn pair(&self, nu: &[i64], beta: &[i64]) -> i64 {
        nu.iter()
            .zip(beta)
            .zip(&self.half_norm)
            .map(|((a, b), d)| a * b * d)
            .sum()
    }

    fn to_root_coords(&self, nu: &[i64]) -> Option<Vec<i64>> {
        let n = nu.len();
        let ct: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| linalg::q(self.datum.cartan[j][i])).collect())
            .collect();
        let c = linalg::solve(&ct, &linalg::qvec(nu))?;
        c.iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }

    fn dominant_conjugate(&self, mu: &[i64]) -> Vec<i64> {
        let mut v = mu.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.datum.reflect_weight(i, &mut v);
        }
        v
    }

    fn is_weight_of(&self, lambda: &[i64], mu: &[i64]) -> bool {
        let d = self.dominant_conjugate(mu);
        let diff: Vec<i64> = lambda.iter().zip(&d).map(|(a, b)| a - b).collect();
        self.to_root_coords(&diff).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    fn freudenthal(&self, lambda: &[i64], cap: usize) -> Result<Character> {
        let n = lambda.len();
        let rho = vec![1; n];
        let lam_rho: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut mult: Character = HashMap::new();
        mult.insert(lambda.to_vec(), 1);
        let mut level = vec![lambda.to_vec()];
        while !level.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for mu in &level {
                for i in 0..n {
                    let nu: Vec<i64> = mu
                        .iter()
                        .zip(&self.datum.cartan[i])
                        .map(|(a, c)| a - c)
                        .collect();
                    if !mult.contains_key(&nu) && !next.contains(&nu) && self.is_weight_of(lambda, &nu) {
                        next.push(nu);
                    }
                }
            }
            for mu in &next {
                // (lambda+rho)^2 - (mu+rho)^2 = (lambda - mu, lambda + mu + 2 rho)
                let diff = self
                    .to_root_coords(&lambda.iter().zip(mu).map(|(a, b)| a - b).collect::<Vec<_>>())
                    .ok_or_else(|| crate::error::invariant("weight left the root lattice coset"))?;
                let sum: Vec<i64> = lam_rho.iter().zip(mu).zip(&rho).map(|((a, b), r)| a + b + r).collect();
                let denom = self.pair(&sum, &diff);
                let mut numer = 0i64;
                for root in &self.datum.positive {
                    let mut k = 1;
                    loop {
                        let up: Vec<i64> = mu.iter().zip(&root.weight).map(|(a, b)| a + k * b).collect();
                        let Some(&m) = mult.get(&up) else { break };
                        numer += 2 * m as i64 * self.pair(&up, &root.coeffs);
                        k += 1;
                    }
                }
                if denom <= 0 || numer % denom != 0 {
                    return Err(crate::error::invariant("Freudenthal recursion produced a non-integer multiplicity"));
                }
                mult.insert(mu.clone(), (numer / denom) as u64);
            }
            if mult.len() > cap {
                return Err(Error::CapExceeded {
                    what: "weights in a factor character",
                    cap: cap as u64,
                    estimate: mult.len() as u64,
                });
            }
            level = next;
        }
        Ok(mult)
    }

    /// Kostant's alternating sum of partition counts; slow but independent of Freudenthal.
    fn kostant(&self, lambda: &[i64], mu: &[i64]) -> Result<i64> {
        let w = self.datum.enumerate_weyl(1_000_000)?;
        let n = lambda.len();
        let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let mut memo = HashMap::new();
        let mut total = 0i64;
        for el in w.iter() {
            let wl = self.datum.act(el, &lr);
            let gamma: Vec<i64> = (0..n).map(|i| wl[i] - mu[i] - 1).collect();
            let Some(c) = self.to_root_coords(&gamma) else { continue };
            if c.iter().any(|&x| x < 0) {
                continue;
            }
            let p = partitions(&self.datum, &c, 0, &mut memo);
            total += if el.length() % 2 == 0 { p } else { -p };
        }
        Ok(total)
    }
}

fn partitions(d: &RootDatum, c: &[i64], from: usize, memo: &mut HashMap<(Vec<i64>, usize), i64>) -> i64 {
    if c.iter().all(|&x| x == 0) {
        return 1;
    }
    if from == d.positive.len() {
        return 0;
    }
    let key = (c.to_vec(), from);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let root = &d.positive[from].coeffs;
    let mut total = 0;
    let mut rest = c.to_vec();
    loop {
        total += partitions(d, &rest, from + 1, memo);
        for (r, a) in rest.iter_mut().zip(root) {
            *r -= a;
        }
        if rest.iter().any(|&x| x < 0) {
            break;
        }
    }
    memo.insert(key, total);
    total
}

fn factor_forms(g: &RootDatum) -> Result<Vec<(Vec<usize>, FactorForm)>> {
    g.components
        .iter()
        .map(|idx| {
            let cartan = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| g.cartan[i][j]).collect())
                .collect();
            Ok((idx.clone(), FactorForm::new(cartan)?))
        })
        .collect()
}

/// Character of the irreducible `G`-module of highest weight `lambda`.
pub fn character(g: &RootDatum, lambda: &[i64], cap: usize) -> Result<Character> {
    let mut total: Character = HashMap::from([(vec![0; g.rank()], 1)]);
    for (idx, form) in factor_forms(g)? {
        let sub: Vec<i64> = idx.iter().map(|&i| lambda[i]).collect();
        let ch = form.freudenthal(&sub, cap)?;
        let mut next = HashMap::new();
        for (a, ma) in &total {
            for (b, mb) in &ch {
                let mut v = a.clone();
                for (k, &i) in idx.iter().enumerate() {
                    v[i] = b[k];
                }
                *next.entry(v).or_insert(0) += ma * mb;
            }
        }
        if next.len() > cap {
            return Err(Error::CapExceeded {
                what: "weights in a character",
                cap: cap as u64,
                estimate: next.len() as u64,
            });
        }
        total = next;
    }
    Ok(total)
}

/// Weight multiplicity by Kostant's formula, for cross-checking [`character`] on simple `G`.
pub fn kostant_multiplicity(g: &RootDatum, lambda: &[i64], mu: &[i64]) -> Result<i64> {
    let forms = factor_forms(g)?;
    let mut prod = 1;
    for (idx, form) in forms {
        let l: Vec<i64> = idx.iter().map(|&i| lambda[i]).collect();
        let m: Vec<i64> = idx.iter().map(|&i| mu[i]).collect();
        prod *= form.kostant(&l, &m)?;
    }
    Ok(prod)
}

fn pushed_factors(e: &EmbeddingDatum, lambda: &[i64], cap: usize) -> Result<Vec<Character>> {
    let mut out = Vec::new();
    for (idx, form) in factor_forms(&e.g)? {
        let sub: Vec<i64> = idx.iter().map(|&i| lambda[i]).collect();
        let mut pushed: Character = HashMap::new();
        for (mu, m) in form.freudenthal(&sub, cap)? {
            let v: Vec<i64> = e
                .iota
                .iter()
                .map(|row| idx.iter().zip(&mu).map(|(&i, x)| row[i] * x).sum())
                .collect();
            *pushed.entry(v).or_insert(0) += m;
        }
        out.push(pushed);
    }
    Ok(out)
}

fn convolve(a: &Character, b: &Character, cap: usize) -> Result<Character> {
    let mut next = HashMap::new();
    for (x, mx) in a {
        for (y, my) in b {
            let v: Vec<i64> = x.iter().zip(y).map(|(s, t)| s + t).collect();
            *next.entry(v).or_insert(0) += mx * my;
        }
    }
    if next.len() > cap {
        return Err(Error::CapExceeded {
            what: "weights in a restricted character",
            cap: cap as u64,
            estimate: next.len() as u64,
        });
    }
    Ok(next)
}

/// The character of `V_lambda` restricted to the torus of `Ghat`, factor by factor.
pub fn restricted_character(e: &EmbeddingDatum, lambda: &[i64], cap: usize) -> Result<Character> {
    let mut total: Character = HashMap::from([(vec![0; e.ghat.rank()], 1)]);
    for f in pushed_factors(e, lambda, cap)? {
        total = convolve(&total, &f, cap)?;
    }
    Ok(total)
}

/// `dim V_lambda^Ghat`.
pub fn invariant_dim(e: &EmbeddingDatum, lambda: &[i64]) -> Result<u64> {
    invariant_dim_capped(e, lambda, DEFAULT_WEIGHT_CAP)
}

pub fn invariant_dim_capped(e: &EmbeddingDatum, lambda: &[i64], cap: usize) -> Result<u64> {
    if lambda.len() != e.g.rank() || lambda.iter().any(|&x| x < 0) {
        return Err(Error::Validation(format!(
            "lambda = {lambda:?} must be dominant of length {}",
            e.g.rank()
        )));
    }
    // full products for all but the last factor, then only the needed coefficients
    let mut factors = pushed_factors(e, lambda, cap)?;
    let last = factors.pop().unwrap_or_default();
    let mut head: Character = HashMap::from([(vec![0; e.ghat.rank()], 1)]);
    for f in &factors {
        head = convolve(&head, f, cap)?;
    }
    let coeff = |t: &[i64]| -> u64 {
        last.iter()
            .map(|(b, mb)| {
                let rest: Vec<i64> = t.iter().zip(b).map(|(x, y)| x - y).collect();
                mb * head.get(&rest).copied().unwrap_or(0)
            })
            .sum()
    };
    let what = e.ghat.enumerate_weyl(e.cap_weyl)?;
    let rho = e.ghat.rho().0;
    let mut total = 0i64;
    for w in what.iter() {
        let wr = e.ghat.act(w, &rho);
        let key: Vec<i64> = rho.iter().zip(&wr).map(|(a, b)| a - b).collect();
        let m = coeff(&key) as i64;
        total += if w.length() % 2 == 0 { m } else { -m };
    }
    u64::try_from(total).map_err(|_| crate::error::invariant("negative invariant multiplicity"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "label", rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedPositive { j: usize, dim: u64 },
    NegativeUpTo { j_max: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub lambda: Vec<i64>,
    pub verdict: Verdict,
    /// `dim V_{j lambda}^Ghat` for `j = 1..` until the first positive value
    pub dims: Vec<u64>,
}

impl Membership {
    pub fn is_positive(&self) -> bool {
        matches!(self.verdict, Verdict::CertifiedPositive { .. })
    }
}

/// Whether some `V_{j lambda}`, `1 <= j <= j_max`, has a nonzero invariant.
/// A negative answer is only evidence up to `j_max`.
pub fn membership(e: &EmbeddingDatum, lambda: &[i64], j_max: usize) -> Result<Membership> {
    if j_max == 0 {
        return Err(Error::Validation("j_max must be at least 1".into()));
    }
    let mut dims = Vec::new();
    for j in 1..=j_max {
        let jl: Vec<i64> = lambda.iter().map(|x| x * j as i64).collect();
        let d = invariant_dim(e, &jl)?;
        dims.push(d);
        if d > 0 {
            return Ok(Membership {
                lambda: lambda.to_vec(),
                verdict: Verdict::CertifiedPositive { j, dim: d },
                dims,
            });
        }
    }
    Ok(Membership {
        lambda: lambda.to_vec(),
        verdict: Verdict::NegativeUpTo { j_max },
        dims,
    })
}

/// Dimension of `V_lambda` by the Weyl dimension formula, for sanity checks.
pub fn weyl_dimension(g: &RootDatum, lambda: &[i64]) -> u64 {
    let mut num = Q::from_integer(1.into());
    for root in &g.positive {
        let top: i64 = root.coroot.iter().zip(lambda).map(|(c, l)| c * (l + 1)).sum();
        let bottom: i64 = root.coroot.iter().sum();
        num *= Q::new(top.into(), bottom.into());
    }
    num.to_integer().to_u64().unwrap_or(0)
}

/// Characters as sorted lists, for stable output.
pub fn sorted(ch: &Character) -> BTreeMap<Vec<i64>, u64> {
    ch.iter().filter(|(_, m)| !m.is_zero()).map(|(k, v)| (k.clone(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s, Isogeny::SimplyConnected).unwrap()
    }

    fn diag(s: &str, k: usize) -> EmbeddingDatum {
        EmbeddingDatum::diagonal(&rd(s), k).unwrap()
    }

    #[test]
    fn characters_sum_to_weyl_dimension() {
        for (s, lam) in [("A2", vec![2, 1]), ("B2", vec![1, 2]), ("C3", vec![1, 0, 1]), ("G2", vec![1, 1]), ("A1xB2", vec![2, 1, 1])] {
            let g = rd(s);
            let ch = character(&g, &lam, DEFAULT_WEIGHT_CAP).unwrap();
            assert_eq!(ch.values().sum::<u64>(), weyl_dimension(&g, &lam), "{s} {lam:?}");
        }
    }

    #[test]
    fn freudenthal_matches_kostant() {
        for (s, lam) in [("A2", vec![2, 2]), ("B2", vec![2, 1]), ("G2", vec![1, 1]), ("A3", vec![1, 1, 1])] {
            let g = rd(s);
            for (mu, m) in character(&g, &lam, DEFAULT_WEIGHT_CAP).unwrap() {
                if mu.iter().all(|&x| x >= 0) {
                    assert_eq!(kostant_multiplicity(&g, &lam, &mu).unwrap(), m as i64, "{s} {lam:?} at {mu:?}");
                }
            }
        }
    }

    #[test]
    fn adjoint_zero_weight() {
        // the zero weight of the adjoint module has multiplicity equal to the rank
        let g = rd("B3");
        assert_eq!(character(&g, &[0, 1, 0], DEFAULT_WEIGHT_CAP).unwrap()[&vec![0, 0, 0]], 3);
    }

    #[test]
    fn clebsch_gordan_counts() {
        let e2 = diag("A1", 2);
        let e3 = diag("A1", 3);
        for a in 0..5i64 {
            for b in 0..5i64 {
                assert_eq!(invariant_dim(&e2, &[a, b]).unwrap(), u64::from(a == b));
                for c in 0..5i64 {
                    let tri = a + b + c;
                    let want = tri % 2 == 0 && a <= b + c && b <= a + c && c <= a + b;
                    assert_eq!(invariant_dim(&e3, &[a, b, c]).unwrap(), u64::from(want), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn sl3_invariants_in_triple_products() {
        // V_(1,0) x V_(1,0) x V_(1,0) contains the determinant once
        let e = diag("A2", 3);
        assert_eq!(invariant_dim(&e, &[1, 0, 1, 0, 1, 0]).unwrap(), 1);
        // the adjoint appears twice in its own square
        assert_eq!(invariant_dim(&e, &[1, 1, 1, 1, 1, 1]).unwrap(), 2);
        assert_eq!(invariant_dim(&e, &[0; 6]).unwrap(), 1);
    }

    #[test]
    fn principal_invariants() {
        // Sym^2 of the adjoint of sl3 restricted to the principal sl2 contains the Killing form
        let e = EmbeddingDatum::principal(rd("A2")).unwrap();
        assert_eq!(invariant_dim(&e, &[1, 1]).unwrap(), 0);
        assert_eq!(invariant_dim(&e, &[2, 2]).unwrap(), 1);
    }

    #[test]
    fn restricted_character_matches_direct_restriction() {
        let e = diag("A2", 2);
        let lam = [1, 2, 2, 0];
        let direct = character(&e.g, &lam, DEFAULT_WEIGHT_CAP).unwrap();
        let mut want: Character = HashMap::new();
        for (mu, m) in direct {
            *want.entry(e.restrict(&mu)).or_insert(0) += m;
        }
        assert_eq!(sorted(&restricted_character(&e, &lam, DEFAULT_WEIGHT_CAP).unwrap()), sorted(&want));
    }

    #[test]
    fn membership_labels() {
        let e = diag("A1", 2);
        let m = membership(&e, &[3, 3], DEFAULT_JMAX).unwrap();
        assert_eq!(m.verdict, Verdict::CertifiedPositive { j: 1, dim: 1 });
        let m = membership(&e, &[2, 1], DEFAULT_JMAX).unwrap();
        assert_eq!(m.verdict, Verdict::NegativeUpTo { j_max: 6 });
        assert!(membership(&e, &[0, 0], 1).unwrap().is_positive());
        assert!(membership(&e, &[1, 1], 0).is_err());
    }
}
