//! Closest points, the one-parameter subgroups `xi_{L,w,lambda}`, and Popov's
//! signed tree deciding ample-cone membership.
//!
//! Candidate pairs `(xi, w)` are produced once per (embedding, weight) by
//! sweeping the flats of the arrangement `{ker iota^* alpha}` and the cosets
//! of the corresponding Levi Weyl groups; both the tree and the stratification
//! in `strat` read from the same candidate list.

use crate::embed::{EmbeddingDatum, LeviDatum};
use crate::error::{invariant, Result};
use crate::linalg::{self, q, Echelon, Q};
use crate::rootcore::{Coweight, WeylElement};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct MinNormResult {
    pub nu: Vec<Q>,
    /// indices of the input points with their positive barycentric weights
    pub support: Vec<(usize, Q)>,
}

fn inner(metric: &[Vec<Q>], a: &[Q], b: &[Q]) -> Q {
    let mb = linalg::mat_vec(metric, b);
    linalg::dot(a, &mb)
}

fn combine(points: &[Vec<Q>], idx: &[usize], w: &[Q]) -> Vec<Q> {
    let d = points[idx[0]].len();
    let mut x = vec![Q::zero(); d];
    for (&i, c) in idx.iter().zip(w) {
        for (xi, p) in x.iter_mut().zip(&points[i]) {
            *xi += c * p;
        }
    }
    x
}

/// Point of least norm on the affine hull of the chosen points, as barycentric weights.
fn affine_minimizer(points: &[Vec<Q>], idx: &[usize], metric: &[Vec<Q>]) -> Result<Vec<Q>> {
    let k = idx.len();
    let mut a = vec![vec![Q::zero(); k + 1]; k + 1];
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            a[r][c] = inner(metric, &points[i], &points[j]);
        }
        a[r][k] = q(1);
        a[k][r] = q(1);
    }
    let mut rhs = vec![Q::zero(); k + 1];
    rhs[k] = q(1);
    let sol = linalg::solve(&a, &rhs).ok_or_else(|| invariant("affinely dependent Wolfe corral"))?;
    Ok(sol[..k].to_vec())
}

/// Wolfe's algorithm in exact arithmetic: the point of `Conv(points)` closest
/// to the origin under the inner product `metric`. Ties go to the lowest index.
pub fn min_norm_point(points: &[Vec<Q>], metric: &[Vec<Q>]) -> Result<MinNormResult> {
    if points.is_empty() {
        return Err(invariant("min-norm point of an empty set"));
    }
    let norms: Vec<Q> = points.iter().map(|p| inner(metric, p, p)).collect();
    let start = (0..points.len()).min_by(|&a, &b| norms[a].cmp(&norms[b])).unwrap();
    let mut corral = vec![start];
    let mut lam = vec![q(1)];
    let mut x = points[start].clone();
    loop {
        let xx = inner(metric, &x, &x);
        let mx = linalg::mat_vec(metric, &x);
        let (j, best) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, linalg::dot(p, &mx)))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .unwrap();
        if best >= xx {
            break;
        }
        if corral.contains(&j) {
            return Err(invariant("Wolfe step re-entered the corral"));
        }
        corral.push(j);
        lam.push(Q::zero());
        loop {
            let mu = affine_minimizer(points, &corral, metric)?;
            if mu.iter().all(Signed::is_positive) {
                lam = mu;
                x = combine(points, &corral, &lam);
                break;
            }
            let mut theta: Option<Q> = None;
            for (l, m) in lam.iter().zip(&mu) {
                if !m.is_positive() && l > m {
                    let t = l / (l - m);
                    if theta.as_ref().map_or(true, |th| t < *th) {
                        theta = Some(t);
                    }
                }
            }
            let theta = theta.ok_or_else(|| invariant("Wolfe minor cycle without a step"))?;
            for (l, m) in lam.iter_mut().zip(&mu) {
                *l = &*l + &theta * (m - &*l);
            }
            let keep: Vec<bool> = lam.iter().map(|l| l.is_positive()).collect();
            corral = corral.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| *c).collect();
            lam = lam.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(l, _)| l).collect();
        }
    }
    // optimality certificate: <nu, s - nu> >= 0 for every input point
    let xx = inner(metric, &x, &x);
    let mx = linalg::mat_vec(metric, &x);
    if points.iter().any(|p| linalg::dot(p, &mx) < xx) {
        return Err(invariant("min-norm certificate failed"));
    }
    let mut support: Vec<(usize, Q)> = corral.into_iter().zip(lam).collect();
    support.sort_by_key(|(i, _)| *i);
    Ok(MinNormResult { nu: x, support })
}

/// Metric on weights of `Ghat` dual to the coweight form.
pub fn weight_metric(e: &EmbeddingDatum) -> Vec<Vec<Q>> {
    let k: Vec<Vec<Q>> = e.ghat.coweight_form().iter().map(|r| linalg::qvec(r)).collect();
    if k.is_empty() {
        return k;
    }
    linalg::inverse(&k).expect("invariant form is nondegenerate")
}

/// The indivisible coweight on the ray dual to `nu`, or `None` when `nu = 0`.
pub fn xi_from_nu(e: &EmbeddingDatum, nu: &[Q]) -> Option<Coweight> {
    if nu.iter().all(Zero::is_zero) {
        return None;
    }
    let x = linalg::mat_vec(&weight_metric(e), nu);
    Some(e.ghat.indivisible(&x))
}

/// One orbit label `(xi, w)` with `w` a shortest coset representative.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub levi: Arc<LeviDatum>,
    /// untwisted element `sigma^{-1} w sigma`
    pub w_prime: WeylElement,
    /// the element `w` itself
    pub w: WeylElement,
    /// Mumford value `w sigma lambda (xi)`
    pub m: Q,
    /// `l_xi(w)`
    pub length: usize,
    /// `w sigma lambda` restricted to the semisimple Levi of `G`
    pub restricted: Vec<i64>,
}

impl Candidate {
    pub fn codim(&self) -> i64 {
        self.levi.upper_codim() - self.length as i64
    }
}

/// A flat of `{ker iota^* alpha}`: the positive roots of `G` vanishing on it.
#[derive(Clone, Debug)]
struct Flat {
    roots: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Debug, Serialize)]
pub struct PopovNode {
    /// `None` at the root
    pub xi: Option<String>,
    pub w: Option<Vec<usize>>,
    pub group: String,
    pub weight: Vec<i64>,
    pub sign: Sign,
    pub height: usize,
    pub children: Vec<PopovNode>,
}

/// Memo tables shared by the tree, the stratification, and the cone code.
#[derive(Default)]
pub struct Context {
    embeddings: HashMap<String, Arc<EmbeddingDatum>>,
    flats: HashMap<String, Arc<Vec<Flat>>>,
    levis: HashMap<(String, Coweight), Arc<LeviDatum>>,
    candidates: HashMap<(String, Vec<i64>), Arc<Vec<Candidate>>>,
    signs: HashMap<(String, Vec<i64>), bool>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns an embedding so sub-embeddings share their Weyl group caches.
    pub fn intern(&mut self, e: &EmbeddingDatum) -> Arc<EmbeddingDatum> {
        self.embeddings
            .entry(e.key())
            .or_insert_with(|| Arc::new(e.clone()))
            .clone()
    }

    pub fn levi(&mut self, e: &EmbeddingDatum, xi: &Coweight) -> Result<Arc<LeviDatum>> {
        let key = (e.key(), xi.clone());
        if let Some(l) = self.levis.get(&key) {
            return Ok(l.clone());
        }
        let l = Arc::new(e.levi_datum(xi)?);
        self.levis.insert(key, l.clone());
        Ok(l)
    }

    pub fn levi_embedding(&mut self, e: &EmbeddingDatum, levi: &LeviDatum) -> Result<Arc<EmbeddingDatum>> {
        let sub = e.levi_embedding(levi)?;
        Ok(self.intern(&sub))
    }

    fn flats(&mut self, e: &EmbeddingDatum) -> Arc<Vec<Flat>> {
        if let Some(f) = self.flats.get(&e.key()) {
            return f.clone();
        }
        let nh = e.ghat.rank();
        let restricted: Vec<Vec<Q>> = e
            .g
            .positive
            .iter()
            .map(|r| linalg::qvec(&e.restrict(&r.weight)))
            .collect();
        let roots_of = |ech: &Echelon| -> Vec<usize> {
            (0..restricted.len()).filter(|&k| ech.contains(&restricted[k])).collect()
        };
        let mut out: Vec<(Echelon, Vec<usize>)> = Vec::new();
        let base = Echelon::new();
        let r0 = roots_of(&base);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(r0.clone());
        out.push((base, r0));
        let mut k = 0;
        while k < out.len() {
            let (ech, roots) = out[k].clone();
            for a in 0..restricted.len() {
                if roots.contains(&a) {
                    continue;
                }
                let mut e2 = ech.clone();
                e2.insert(&restricted[a]);
                if e2.rank() >= nh {
                    continue;
                }
                let r2 = roots_of(&e2);
                if seen.insert(r2.clone()) {
                    out.push((e2, r2));
                }
            }
            k += 1;
        }
        let flats = Arc::new(
            out.into_iter()
                .filter(|_| nh > 0)
                .map(|(_, roots)| Flat { roots })
                .collect::<Vec<_>>(),
        );
        self.flats.insert(e.key(), flats.clone());
        flats
    }

    /// All self-consistent pairs `(xi, w)` for the weight `lambda`: `xi` is
    /// dominant and equals `xi_{L_xi, w sigma_xi, lambda}`, and `w` is a
    /// shortest representative. The Mumford value is then automatically positive.
    pub fn candidates(&mut self, e: &EmbeddingDatum, lambda: &[i64]) -> Result<Arc<Vec<Candidate>>> {
        let key = (e.key(), lambda.to_vec());
        if let Some(c) = self.candidates.get(&key) {
            return Ok(c.clone());
        }
        let e = self.intern(e);
        let g = &e.g;
        let metric = weight_metric(&e);
        let restricted: Vec<Vec<i64>> = g.positive.iter().map(|r| e.restrict(&r.weight)).collect();
        let mut out = Vec::new();
        for flat in self.flats(&e).iter() {
            for u in e.weyl()?.iter() {
                if flat
                    .roots
                    .iter()
                    .any(|&k| linalg::dot_i(&u.rho, &g.positive[k].coroot) < 0)
                {
                    continue;
                }
                let orbit = levi_orbit(g, &flat.roots, &g.act(u, lambda));
                let pts: BTreeSet<Vec<i64>> = orbit.iter().map(|mu| e.restrict(mu)).collect();
                let pts: Vec<Vec<Q>> = pts.iter().map(|p| linalg::qvec(p)).collect();
                let nu = min_norm_point(&pts, &metric)?.nu;
                let Some(xi) = xi_from_nu(&e, &nu) else { continue };
                if !e.ghat.is_dominant_coweight(&xi.0) {
                    continue;
                }
                let vanish: Vec<usize> = (0..restricted.len())
                    .filter(|&k| {
                        restricted[k]
                            .iter()
                            .zip(&xi.0)
                            .fold(Q::zero(), |acc, (&a, x)| acc + q(a) * x)
                            .is_zero()
                    })
                    .collect();
                if vanish != flat.roots {
                    continue;
                }
                let levi = self.levi(&e, &xi)?;
                let si = g.inverse(&levi.sigma);
                let wp = g.coset_min(&levi.levi_roots, &g.compose(&si, u));
                let m = levi.mumford(g, &wp, lambda);
                if !m.is_positive() {
                    return Err(invariant(format!("nonpositive Mumford value at xi = {xi}")));
                }
                out.push(Candidate {
                    w: levi.twist(g, &wp),
                    length: wp.length(),
                    restricted: levi.restricted_weight(g, &wp, lambda),
                    w_prime: wp,
                    m,
                    levi,
                });
            }
        }
        let out = Arc::new(out);
        self.candidates.insert(key, out.clone());
        Ok(out)
    }

    /// Whether the candidate's restricted weight is ample for `Lhat'_xi` on the Levi flag variety.
    pub fn levi_ample(&mut self, e: &EmbeddingDatum, c: &Candidate) -> Result<bool> {
        self.restricted_ample(e, &c.levi, &c.restricted)
    }

    /// Whether a weight of the Levi `L'_xi` (Levi-fundamental coordinates) is
    /// ample for `Lhat'_xi`.
    pub fn restricted_ample(&mut self, e: &EmbeddingDatum, levi: &LeviDatum, restricted: &[i64]) -> Result<bool> {
        let sub = self.levi_embedding(e, levi)?;
        self.sign(&sub, restricted, 0, e.ghat.rank())
    }

    /// Sign of the root of the tree; `true` is `+`.
    fn sign(&mut self, e: &EmbeddingDatum, lambda: &[i64], depth: usize, bound: usize) -> Result<bool> {
        if depth > bound {
            return Err(invariant("Popov tree exceeds the rank bound"));
        }
        let key = (e.key(), lambda.to_vec());
        if let Some(&s) = self.signs.get(&key) {
            return Ok(s);
        }
        let cands = self.candidates(e, lambda)?;
        let mut plus = true;
        for c in cands.iter().filter(|c| c.codim() == 0) {
            let sub = self.levi_embedding(e, &c.levi)?;
            if self.sign(&sub, &c.restricted, depth + 1, bound)? {
                plus = false;
                break;
            }
        }
        self.signs.insert(key, plus);
        Ok(plus)
    }

    /// The labels of `M_X`: candidates whose orbit closure has codimension zero.
    pub fn m_set(&mut self, e: &EmbeddingDatum, lambda: &[i64]) -> Result<Vec<Candidate>> {
        Ok(self
            .candidates(e, lambda)?
            .iter()
            .filter(|c| c.codim() == 0)
            .cloned()
            .collect())
    }

    pub fn is_ample(&mut self, e: &EmbeddingDatum, lambda: &[i64]) -> Result<bool> {
        check_strict(e, lambda)?;
        self.sign(e, lambda, 0, e.ghat.rank())
    }

    pub fn build_tree(&mut self, e: &EmbeddingDatum, lambda: &[i64]) -> Result<PopovNode> {
        check_strict(e, lambda)?;
        self.node(e, lambda, None, 0, e.ghat.rank())
    }

    fn node(
        &mut self,
        e: &EmbeddingDatum,
        lambda: &[i64],
        label: Option<&Candidate>,
        depth: usize,
        bound: usize,
    ) -> Result<PopovNode> {
        if depth > bound {
            return Err(invariant("Popov tree exceeds the rank bound"));
        }
        let mut children = Vec::new();
        for c in self.m_set(e, lambda)? {
            let sub = self.levi_embedding(e, &c.levi)?;
            children.push(self.node(&sub, &c.restricted, Some(&c), depth + 1, bound)?);
        }
        let sign = if children.iter().any(|c| c.sign == Sign::Plus) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let height = children.iter().map(|c| c.height + 1).max().unwrap_or(0);
        Ok(PopovNode {
            xi: label.map(|c| c.levi.xi.to_string()),
            w: label.map(|c| c.w.word.clone()),
            group: e.describe(),
            weight: lambda.to_vec(),
            sign,
            height,
            children,
        })
    }
}

fn check_strict(e: &EmbeddingDatum, lambda: &[i64]) -> Result<()> {
    if lambda.len() != e.g.rank() || lambda.iter().any(|&x| x <= 0) {
        return Err(crate::Error::Validation(format!(
            "lambda = {lambda:?} must be strictly dominant of length {}",
            e.g.rank()
        )));
    }
    Ok(())
}

/// Orbit of a weight under the reflections in the given positive roots.
pub(crate) fn levi_orbit(
    g: &crate::rootcore::RootDatum,
    roots: &[usize],
    mu: &[i64],
) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(mu.to_vec());
    let mut out = vec![mu.to_vec()];
    let mut k = 0;
    while k < out.len() {
        for &r in roots {
            let mut v = out[k].clone();
            g.reflect_weight_by(&g.positive[r], &mut v);
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
        k += 1;
    }
    out
}

pub fn is_ample(e: &EmbeddingDatum, lambda: &[i64]) -> Result<bool> {
    Context::new().is_ample(e, lambda)
}

pub fn build_tree(e: &EmbeddingDatum, lambda: &[i64]) -> Result<PopovNode> {
    Context::new().build_tree(e, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::{Isogeny, RootDatum};

    fn ident(n: usize) -> Vec<Vec<Q>> {
        (0..n).map(|i| (0..n).map(|j| q(i64::from(i == j))).collect()).collect()
    }

    fn qv(v: &[i64]) -> Vec<Q> {
        linalg::qvec(v)
    }

    #[test]
    fn min_norm_small_sets() {
        let m = ident(2);
        let r = min_norm_point(&[qv(&[3, 4])], &m).unwrap();
        assert_eq!(r.nu, qv(&[3, 4]));
        let r = min_norm_point(&[qv(&[1, 2]), qv(&[-1, -2])], &m).unwrap();
        assert_eq!(r.nu, qv(&[0, 0]));
        let r = min_norm_point(&[qv(&[1, 0]), qv(&[0, 1])], &m).unwrap();
        let half = Q::new(1.into(), 2.into());
        assert_eq!(r.nu, vec![half.clone(), half]);
        assert_eq!(r.support.len(), 2);
    }

    #[test]
    fn min_norm_drops_points() {
        // the closest point of the triangle is the vertex (1, 1)
        let m = ident(2);
        let r = min_norm_point(&[qv(&[4, 1]), qv(&[1, 1]), qv(&[1, 4])], &m).unwrap();
        assert_eq!(r.nu, qv(&[1, 1]));
        assert_eq!(r.support, vec![(1, q(1))]);
    }

    #[test]
    fn xi_of_rho_in_a1() {
        let a1 = RootDatum::parse("A1", Isogeny::SimplyConnected).unwrap();
        let e = EmbeddingDatum::identity(a1).unwrap();
        assert_eq!(xi_from_nu(&e, &qv(&[1])).unwrap(), Coweight::from_ints(&[1]));
        assert_eq!(xi_from_nu(&e, &qv(&[3])).unwrap(), Coweight::from_ints(&[1]));
        assert!(xi_from_nu(&e, &qv(&[0])).is_none());
    }

    #[test]
    fn principal_a2_is_ample_with_single_node() {
        let e = EmbeddingDatum::principal(RootDatum::parse("A2", Isogeny::SimplyConnected).unwrap()).unwrap();
        let mut cx = Context::new();
        assert!(cx.m_set(&e, &[1, 1]).unwrap().is_empty());
        let t = cx.build_tree(&e, &[1, 1]).unwrap();
        assert_eq!((t.sign, t.height), (Sign::Plus, 0));
    }

    #[test]
    fn diagonal_a1_squared_membership() {
        let a1 = RootDatum::parse("A1", Isogeny::SimplyConnected).unwrap();
        let e = EmbeddingDatum::diagonal(&a1, 2).unwrap();
        assert!(is_ample(&e, &[3, 3]).unwrap());
        assert!(!is_ample(&e, &[2, 1]).unwrap());
        let t = build_tree(&e, &[2, 1]).unwrap();
        assert_eq!(t.sign, Sign::Minus);
        assert_eq!(t.height, 1);
    }

    #[test]
    fn torus_leaf_has_plus() {
        // a rank-one subgroup acting through a regular torus element
        let a1 = RootDatum::parse("A1", Isogeny::SimplyConnected).unwrap();
        let e = EmbeddingDatum::diagonal(&a1, 3).unwrap();
        let mut cx = Context::new();
        for c in cx.candidates(&e, &[1, 1, 1]).unwrap().iter() {
            let sub = cx.levi_embedding(&e, &c.levi).unwrap();
            assert_eq!(sub.ghat.rank(), 0);
            assert!(cx.levi_ample(&e, c).unwrap());
        }
    }
}
