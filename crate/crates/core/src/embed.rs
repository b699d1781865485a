//! The embedding `Ghat -> G` as a pair of lattice maps, plus the cubicle data
//! attached to it: the relative Weyl set, the extreme rays `Xi_max`, and the
//! Levi data of one-parameter subgroups.

use crate::error::{invariant, Error, Result};
use crate::linalg::{self, q, Q};
use crate::lp;
use crate::rootcore::{Coweight, Factor, Isogeny, RootDatum, WeylElement, WeylGroup};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

pub const DEFAULT_WEYL_CAP: u64 = 10_000_000;

/// Which of the single-cubicle conditions hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EmbeddingFlags {
    /// (a) the relative Weyl set is trivial; `None` when not yet decidable under the cap
    pub trivial_wrel: Option<bool>,
    /// (b) the torus of `Ghat` contains `G`-regular elements
    pub regular: bool,
    /// (c) every restricted positive root is a nonnegative combination of simple roots of `Ghat`
    pub positive_restriction: bool,
    /// (d) built as a diagonal embedding
    pub diagonal: bool,
}

#[derive(Clone, Debug)]
pub struct EmbeddingDatum {
    pub ghat: RootDatum,
    pub g: RootDatum,
    /// `iota[i]` is the image of the simple coroot `alphahat_i^vee` in simple-coroot coordinates of `G`
    pub iota: Vec<Vec<i64>>,
    pub flags: EmbeddingFlags,
    pub cap_weyl: u64,
    weyl: Arc<OnceLock<Result<WeylGroup>>>,
    wrel: Arc<OnceLock<Result<Vec<WeylElement>>>>,
}

/// A cubicle `that_+ cap sigma t_+`, described in the coordinates
/// `y_i = alphahat_i(xihat)`; the cone is `y >= 0` plus `facets . y >= 0`.
#[derive(Clone, Debug)]
pub struct Cubicle {
    pub sigma: WeylElement,
    pub facets: Vec<Vec<Q>>,
    pub rays: Vec<Coweight>,
}

/// Data attached to one dominant one-parameter subgroup `xi` of `Ghat`.
///
/// Everything on the `G` side is stored in the untwisted frame: `xi_prime =
/// sigma^{-1} iota(xi)` is `G`-dominant, and a twisted element `w` corresponds
/// to `w' = sigma^{-1} w sigma`.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    pub xi: Coweight,
    pub sigma: WeylElement,
    pub xi_prime: Vec<Q>,
    /// simple roots of `G` vanishing on `xi_prime`
    pub levi_simple: Vec<usize>,
    /// positive roots of that standard Levi, as indices into `g.positive`
    pub levi_roots: Vec<usize>,
    pub r: usize,
    pub n: usize,
    pub ghat_levi_simple: Vec<usize>,
    pub r_hat: usize,
    pub n_hat: usize,
    /// min and max of `alpha(xi)` over the roots of the unipotent radical
    pub a: Q,
    pub b: Q,
}

impl LeviDatum {
    /// Untwists `w` to `sigma^{-1} w sigma`.
    pub fn untwist(&self, g: &RootDatum, w: &WeylElement) -> WeylElement {
        let si = g.inverse(&self.sigma);
        g.compose(&si, &g.compose(w, &self.sigma))
    }

    /// Twists `w'` back to `sigma w' sigma^{-1}`.
    pub fn twist(&self, g: &RootDatum, wp: &WeylElement) -> WeylElement {
        let si = g.inverse(&self.sigma);
        g.compose(&self.sigma, &g.compose(wp, &si))
    }

    pub fn is_min_rep(&self, g: &RootDatum, wp: &WeylElement) -> bool {
        self.levi_roots
            .iter()
            .all(|&k| linalg::dot_i(&wp.rho, &g.positive[k].coroot) > 0)
    }

    /// Mumford value `w' lambda (xi')` in the untwisted frame.
    pub fn mumford(&self, g: &RootDatum, wp: &WeylElement, lambda: &[i64]) -> Q {
        let v = g.act(wp, lambda);
        v.iter()
            .zip(&self.xi_prime)
            .fold(Q::zero(), |acc, (&a, x)| acc + q(a) * x)
    }

    /// Levi-fundamental coordinates of `w' lambda` on `L'`.
    pub fn restricted_weight(&self, g: &RootDatum, wp: &WeylElement, lambda: &[i64]) -> Vec<i64> {
        let v = g.act(wp, lambda);
        self.levi_simple.iter().map(|&j| v[j]).collect()
    }

    pub fn upper_codim(&self) -> i64 {
        self.r as i64 - self.r_hat as i64
    }
}

/// JSON schema for embeddings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EmbeddingSpec {
    Diagonal {
        factor: FactorSpec,
        copies: usize,
    },
    Custom {
        ghat: GroupSpec,
        g: GroupSpec,
        iota: Vec<Vec<i64>>,
    },
    Principal {
        g: GroupSpec,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FactorSpec {
    pub series: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupSpec {
    pub factors: Vec<FactorSpec>,
    #[serde(default)]
    pub isogeny: Isogeny,
}

impl FactorSpec {
    fn to_factor(&self) -> Result<Factor> {
        Factor::new(crate::rootcore::Series::parse(&self.series)?, self.rank)
    }
}

impl GroupSpec {
    pub fn to_datum(&self) -> Result<RootDatum> {
        let fs = self
            .factors
            .iter()
            .map(FactorSpec::to_factor)
            .collect::<Result<Vec<_>>>()?;
        RootDatum::build(&fs, self.isogeny)
    }
}

impl EmbeddingSpec {
    pub fn build(&self) -> Result<EmbeddingDatum> {
        match self {
            EmbeddingSpec::Diagonal { factor, copies } => {
                let f = factor.to_factor()?;
                let ghat = RootDatum::build(&[f], Isogeny::SimplyConnected)?;
                EmbeddingDatum::diagonal(&ghat, *copies)
            }
            EmbeddingSpec::Custom { ghat, g, iota } => {
                EmbeddingDatum::custom(ghat.to_datum()?, g.to_datum()?, iota.clone())
            }
            EmbeddingSpec::Principal { g } => EmbeddingDatum::principal(g.to_datum()?),
        }
    }
}

impl EmbeddingDatum {
    pub fn diagonal(ghat: &RootDatum, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Validation("a diagonal embedding needs at least 2 copies".into()));
        }
        let factors: Vec<Factor> = (0..k).flat_map(|_| ghat.factors.iter().copied()).collect();
        let g = RootDatum::build(&factors, ghat.isogeny)?;
        let nh = ghat.rank();
        let iota = (0..nh)
            .map(|i| {
                let mut row = vec![0; nh * k];
                for c in 0..k {
                    row[c * nh + i] = 1;
                }
                row
            })
            .collect();
        let mut e = Self::assemble(ghat.clone(), g, iota);
        e.flags.diagonal = true;
        e.flags.trivial_wrel = Some(true);
        Ok(e)
    }

    /// `A1 -> G` through `alphahat^vee -> 2 rho^vee`. When `rho^vee` is a
    /// lattice point the image is `PSL2` and the indivisible coweight maps to `rho^vee`.
    pub fn principal(g: RootDatum) -> Result<Self> {
        let two = g.two_rho_vee();
        let even = two.iter().all(|x| x % 2 == 0);
        let iso = if even { Isogeny::Adjoint } else { Isogeny::SimplyConnected };
        let ghat = RootDatum::parse("A1", iso)?;
        Self::custom(ghat, g, vec![two])
    }

    pub fn identity(g: RootDatum) -> Result<Self> {
        let n = g.rank();
        let iota = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::custom(g.clone(), g, iota)
    }

    /// Validated constructor for an arbitrary integer matrix `iota`.
    pub fn custom(ghat: RootDatum, g: RootDatum, iota: Vec<Vec<i64>>) -> Result<Self> {
        if iota.len() != ghat.rank() || iota.iter().any(|r| r.len() != g.rank()) {
            return Err(Error::Validation(format!(
                "iota must be {} rows of length {}",
                ghat.rank(),
                g.rank()
            )));
        }
        let rows: Vec<Vec<Q>> = iota.iter().map(|r| linalg::qvec(r)).collect();
        if linalg::rank(&rows) != ghat.rank() {
            return Err(Error::Validation("iota is not injective".into()));
        }
        if ghat.isogeny == Isogeny::Adjoint {
            // fundamental coweights of Ghat must land in the cocharacter lattice of G
            for w in ghat.fundamental_coweights() {
                let img = Self::apply_iota(&iota, g.rank(), &w.0);
                let ok = match g.isogeny {
                    Isogeny::SimplyConnected => img.iter().all(|x| x.is_integer()),
                    Isogeny::Adjoint => g.simple_values(&img).iter().all(|x| x.is_integer()),
                };
                if !ok {
                    return Err(Error::Validation(
                        "iota does not map the coweight lattice of Ghat into that of G".into(),
                    ));
                }
            }
        }
        let mut e = Self::assemble(ghat, g, iota);
        if e.flags.positive_restriction {
            e.flags.trivial_wrel = Some(true);
        } else if e.g.weyl_order() <= e.cap_weyl as u128 {
            e.flags.trivial_wrel = Some(e.relative_weyl_set()?.len() == 1);
        }
        Ok(e)
    }

    /// Unvalidated assembly used for Levi sub-embeddings.
    fn assemble(ghat: RootDatum, g: RootDatum, iota: Vec<Vec<i64>>) -> Self {
        let mut e = EmbeddingDatum {
            ghat,
            g,
            iota,
            flags: EmbeddingFlags::default(),
            cap_weyl: DEFAULT_WEYL_CAP,
            weyl: Arc::new(OnceLock::new()),
            wrel: Arc::new(OnceLock::new()),
        };
        let restricted: Vec<Vec<i64>> = e.g.positive.iter().map(|r| e.restrict(&r.weight)).collect();
        e.flags.regular = restricted.iter().all(|v| v.iter().any(|&x| x != 0));
        let chat_inv = e.ghat.cartan_inverse();
        e.flags.positive_restriction = restricted.iter().all(|v| {
            // simple-root coordinates of the restriction are v . Chat^{-1}
            let c: Vec<Q> = (0..v.len())
                .map(|j| (0..v.len()).fold(Q::zero(), |acc, i| acc + q(v[i]) * &chat_inv[i][j]))
                .collect();
            c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| x.is_positive())
        });
        if e.flags.positive_restriction {
            e.flags.trivial_wrel = Some(true);
        }
        e
    }

    pub fn with_cap(mut self, cap_weyl: u64) -> Self {
        if cap_weyl != self.cap_weyl {
            self.cap_weyl = cap_weyl;
            self.weyl = Arc::new(OnceLock::new());
            self.wrel = Arc::new(OnceLock::new());
        }
        self
    }

    /// Stable text key identifying the embedding up to equality of data.
    pub fn key(&self) -> String {
        format!("{:?}|{:?}|{:?}", self.ghat.cartan, self.g.cartan, self.iota)
    }

    pub fn describe(&self) -> String {
        format!("{} -> {}", self.ghat.name(), self.g.name())
    }

    pub fn require_regular(&self) -> Result<()> {
        if self.flags.regular {
            Ok(())
        } else {
            Err(Error::NotRegular)
        }
    }

    fn apply_iota(iota: &[Vec<i64>], n: usize, xi: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (row, x) in iota.iter().zip(xi) {
            if !x.is_zero() {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o += x * q(r);
                }
            }
        }
        out
    }

    /// `iota(xihat)` in simple-coroot coordinates of `G`.
    pub fn push_coweight(&self, xi: &[Q]) -> Vec<Q> {
        Self::apply_iota(&self.iota, self.g.rank(), xi)
    }

    /// `iota^*(mu)` in fundamental-weight coordinates of `Ghat`.
    pub fn restrict(&self, mu: &[i64]) -> Vec<i64> {
        self.iota.iter().map(|row| linalg::dot_i(row, mu)).collect()
    }

    pub fn restrict_q(&self, mu: &[Q]) -> Vec<Q> {
        self.iota
            .iter()
            .map(|row| row.iter().zip(mu).fold(Q::zero(), |acc, (&a, b)| acc + q(a) * b))
            .collect()
    }

    pub fn weyl(&self) -> Result<&WeylGroup> {
        self.weyl
            .get_or_init(|| self.g.enumerate_weyl(self.cap_weyl))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Positive roots of `G` whose restriction to `that` vanishes.
    pub fn centralizer_roots(&self) -> Vec<usize> {
        (0..self.g.num_positive())
            .filter(|&k| self.restrict(&self.g.positive[k].weight).iter().all(|&x| x == 0))
            .collect()
    }

    /// Functional `y -> (sigma alpha_j)(iota(Chat^{-1} y))` for each simple `alpha_j`.
    fn chamber_functionals(&self, sigma: &WeylElement) -> Vec<Vec<Q>> {
        let chat_inv = self.ghat.cartan_inverse();
        let nh = self.ghat.rank();
        (0..self.g.rank())
            .map(|j| {
                let root = self.g.act(sigma, &self.g.cartan[j]);
                let r = self.restrict(&root);
                (0..nh)
                    .map(|k| (0..nh).fold(Q::zero(), |acc, i| acc + q(r[i]) * &chat_inv[i][k]))
                    .collect()
            })
            .collect()
    }

    /// The relative Weyl set, ordered lexicographically by reduced word.
    pub fn relative_weyl_set(&self) -> Result<&Vec<WeylElement>> {
        self.wrel
            .get_or_init(|| self.compute_wrel())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_wrel(&self) -> Result<Vec<WeylElement>> {
        if self.flags.positive_restriction || self.flags.diagonal {
            return Ok(vec![self.g.identity()]);
        }
        let nh = self.ghat.rank();
        let z = self.centralizer_roots();
        let mut out = Vec::new();
        for sigma in self.weyl()?.iter() {
            if self.g.coset_min(&z, sigma) != *sigma {
                continue;
            }
            let le: Vec<Vec<Q>> = self
                .chamber_functionals(sigma)
                .into_iter()
                .filter(|f| f.iter().any(|x| !x.is_zero()))
                .map(|f| f.into_iter().map(|x| -x).collect())
                .collect();
            if nh == 0 || lp::strict_point(&le, &[], nh).is_some() {
                out.push(sigma.clone());
            }
        }
        out.sort_by(|a, b| a.word.cmp(&b.word));
        if out.is_empty() {
            return Err(invariant("empty relative Weyl set"));
        }
        Ok(out)
    }

    pub fn cubicles(&self) -> Result<Vec<Cubicle>> {
        let nh = self.ghat.rank();
        self.relative_weyl_set()?
            .iter()
            .map(|sigma| {
                let facets: Vec<Vec<Q>> = self
                    .chamber_functionals(sigma)
                    .into_iter()
                    .filter(|f| f.iter().any(|x| !x.is_zero()))
                    .collect();
                let rays = self.extreme_rays(&facets, nh);
                Ok(Cubicle {
                    sigma: sigma.clone(),
                    facets,
                    rays,
                })
            })
            .collect()
    }

    /// Rays of `{y >= 0, f . y >= 0}`, mapped back to indivisible coweights of `Ghat`.
    fn extreme_rays(&self, facets: &[Vec<Q>], nh: usize) -> Vec<Coweight> {
        let mut cons: Vec<Vec<Q>> = (0..nh)
            .map(|i| (0..nh).map(|j| q(i64::from(i == j))).collect())
            .collect();
        for f in facets {
            if !cons.iter().any(|c| linalg::same_ray(c, f)) {
                cons.push(f.clone());
            }
        }
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for subset in combinations(cons.len(), nh.saturating_sub(1)) {
            let rows: Vec<Vec<Q>> = subset.iter().map(|&i| cons[i].clone()).collect();
            let ns = linalg::nullspace(&rows, nh);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1, -1] {
                let d: Vec<Q> = ns[0].iter().map(|x| x * q(sign)).collect();
                if cons.iter().all(|c| !linalg::dot(c, &d).is_negative()) {
                    let p = linalg::primitive(&d);
                    if !rays.contains(&p) {
                        rays.push(p);
                    }
                }
            }
        }
        rays.sort_by(|a, b| b.cmp(a));
        let chat_inv = self.ghat.cartan_inverse();
        rays.iter()
            .map(|y| self.ghat.indivisible(&linalg::mat_vec(&chat_inv, &linalg::qvec(y))))
            .collect()
    }

    /// Indivisible generators of all cubicle rays with their Levi data.
    pub fn xi_max(&self) -> Result<Vec<LeviDatum>> {
        let mut seen: Vec<(Vec<Q>, Coweight)> = Vec::new();
        for c in self.cubicles()? {
            for r in c.rays {
                let y = self.ghat.simple_values(&r.0);
                if !seen.iter().any(|(_, x)| *x == r) {
                    seen.push((y, r));
                }
            }
        }
        seen.sort_by(|a, b| b.0.cmp(&a.0));
        seen.into_iter().map(|(_, xi)| self.levi_datum(&xi)).collect()
    }

    /// `sigma_xi`: the lexicographically least relative Weyl element whose chamber contains `xi`.
    pub fn sigma_of(&self, xi: &[Q]) -> Result<WeylElement> {
        let x = self.push_coweight(xi);
        for sigma in self.relative_weyl_set()? {
            let si = self.g.inverse(sigma);
            if self.g.is_dominant_coweight(&self.g.act_coweight(&si, &x)) {
                return Ok(sigma.clone());
            }
        }
        Err(invariant(format!("no cubicle contains {}", Coweight(xi.to_vec()))))
    }

    pub fn levi_datum(&self, xi: &Coweight) -> Result<LeviDatum> {
        if xi.is_zero() {
            return Err(Error::Validation("xi must be nonzero".into()));
        }
        if !self.ghat.is_dominant_coweight(&xi.0) {
            return Err(Error::Validation(format!("xi = {xi} is not dominant for Ghat")));
        }
        let sigma = self.sigma_of(&xi.0)?;
        let si = self.g.inverse(&sigma);
        let xi_prime = self.g.act_coweight(&si, &self.push_coweight(&xi.0));
        let vals = self.g.simple_values(&xi_prime);
        let levi_simple: Vec<usize> = (0..self.g.rank()).filter(|&i| vals[i].is_zero()).collect();
        let levi_roots = self.g.standard_levi(&levi_simple);
        let n = levi_roots.len();
        let r = self.g.num_positive() - n;
        let hv = self.ghat.simple_values(&xi.0);
        let ghat_levi_simple: Vec<usize> = (0..self.ghat.rank()).filter(|&i| hv[i].is_zero()).collect();
        let n_hat = self.ghat.standard_levi(&ghat_levi_simple).len();
        let r_hat = self.ghat.num_positive() - n_hat;
        let mut a: Option<Q> = None;
        let mut b: Option<Q> = None;
        for root in &self.g.positive {
            let v = self.g.root_value(root, &xi_prime);
            if v.is_positive() {
                if a.as_ref().map_or(true, |x| v < *x) {
                    a = Some(v.clone());
                }
                if b.as_ref().map_or(true, |x| v > *x) {
                    b = Some(v);
                }
            }
        }
        Ok(LeviDatum {
            xi: xi.clone(),
            sigma,
            xi_prime,
            levi_simple,
            levi_roots,
            r,
            n,
            ghat_levi_simple,
            r_hat,
            n_hat,
            a: a.ok_or_else(|| invariant("xi is central in G"))?,
            b: b.unwrap(),
        })
    }

    /// The induced embedding `Lhat'_xi -> L'_xi` of semisimple parts.
    pub fn levi_embedding(&self, levi: &LeviDatum) -> Result<EmbeddingDatum> {
        let sub = |d: &RootDatum, idx: &[usize]| -> Vec<Vec<i64>> {
            idx.iter().map(|&i| idx.iter().map(|&j| d.cartan[i][j]).collect()).collect()
        };
        let ghat = RootDatum::from_cartan(sub(&self.ghat, &levi.ghat_levi_simple), Isogeny::SimplyConnected)?;
        let g = RootDatum::from_cartan(sub(&self.g, &levi.levi_simple), Isogeny::SimplyConnected)?;
        let si = self.g.inverse(&levi.sigma);
        let mut iota = Vec::new();
        for &i in &levi.ghat_levi_simple {
            let img = self.g.act_coweight(&si, &linalg::qvec(&self.iota[i]));
            let inside: BTreeSet<usize> = levi.levi_simple.iter().copied().collect();
            if img.iter().enumerate().any(|(j, x)| !inside.contains(&j) && !x.is_zero()) {
                return Err(invariant("Levi coroot of Ghat escapes the Levi of G"));
            }
            iota.push(
                levi.levi_simple
                    .iter()
                    .map(|&j| num_traits::ToPrimitive::to_i64(&img[j].to_integer()).unwrap())
                    .collect(),
            );
        }
        Ok(Self::assemble(ghat, g, iota).with_cap(self.cap_weyl))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> RootDatum {
        RootDatum::parse(&format!("A{n}"), Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn diagonal_a1_squared() {
        let e = EmbeddingDatum::diagonal(&a(1), 2).unwrap();
        assert_eq!(e.restrict(&[3, 5]), vec![8]);
        assert_eq!(e.push_coweight(&[q(1)]), vec![q(1), q(1)]);
        assert!(e.flags.regular && e.flags.diagonal);
        let xs = e.xi_max().unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!((xs[0].r, xs[0].r_hat, xs[0].n), (2, 1, 0));
    }

    #[test]
    fn principal_in_a2() {
        let e = EmbeddingDatum::principal(a(2)).unwrap();
        assert!(e.flags.regular);
        assert_eq!(e.cubicles().unwrap().len(), 1);
        let xs = e.xi_max().unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!(e.push_coweight(&xs[0].xi.0), vec![q(1), q(1)]);
        assert_eq!((xs[0].r, xs[0].r_hat), (3, 1));
        assert!(xs[0].levi_simple.is_empty() && xs[0].ghat_levi_simple.is_empty());
    }

    #[test]
    fn identity_gives_fundamental_coweights() {
        let e = EmbeddingDatum::identity(a(2)).unwrap();
        let xs: Vec<Coweight> = e.xi_max().unwrap().into_iter().map(|l| l.xi).collect();
        let fw = a(2).fundamental_coweights();
        // coroot lattice: 3 omega_i^vee are the indivisible points on those rays
        assert_eq!(xs.len(), 2);
        for (x, w) in xs.iter().zip(&fw) {
            assert!(linalg::same_ray(&x.0, &w.0));
        }
    }

    #[test]
    fn custom_matches_diagonal() {
        let d = EmbeddingDatum::diagonal(&a(1), 2).unwrap();
        let c = EmbeddingDatum::custom(a(1), RootDatum::parse("A1xA1", Isogeny::SimplyConnected).unwrap(), vec![vec![1, 1]])
            .unwrap();
        assert_eq!(d.key(), c.key());
        assert_eq!(c.relative_weyl_set().unwrap().len(), 1);
        let xd: Vec<Coweight> = d.xi_max().unwrap().into_iter().map(|l| l.xi).collect();
        let xc: Vec<Coweight> = c.xi_max().unwrap().into_iter().map(|l| l.xi).collect();
        assert_eq!(xd, xc);
    }

    #[test]
    fn root_subgroup_is_not_regular() {
        // SL2 on the first factor of SL2 x SL2 centralizes the second factor
        let g = RootDatum::parse("A1xA1", Isogeny::SimplyConnected).unwrap();
        let e = EmbeddingDatum::custom(a(1), g, vec![vec![1, 0]]).unwrap();
        assert!(!e.flags.regular);
        assert_eq!(e.require_regular(), Err(Error::NotRegular));
    }

    #[test]
    fn rejects_bad_iota() {
        assert!(EmbeddingDatum::custom(a(2), RootDatum::parse("A2xA2", Isogeny::SimplyConnected).unwrap(), vec![vec![1, 0, 1, 0], vec![2, 0, 2, 0]]).is_err());
        assert!(EmbeddingDatum::custom(a(1), a(2), vec![vec![1, 1, 1]]).is_err());
        assert!(EmbeddingDatum::diagonal(&a(1), 1).is_err());
    }
}
