//! Cones cut out of the dominant chamber by `lambda(v) <= 0`, the nested
//! cones `C_k`, and the chamber graph of the arrangement `{lambda(w'^{-1} xi') = 0}`.

use crate::embed::{EmbeddingDatum, LeviDatum};
use crate::error::{Error, Result};
use crate::liealg::RankOracle;
use crate::linalg::{self, q, Q};
use crate::lp;
use crate::popov::Context;
use crate::rootcore::WeylElement;
use crate::strat;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

pub const DEFAULT_HYPERPLANE_CAP: usize = 64;

fn ser_qvec<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// `{lambda >= 0 : lambda . v <= 0 for every functional v}`.
#[derive(Clone, Debug, Serialize)]
pub struct ConeH {
    pub n: usize,
    pub functionals: Vec<Vec<i64>>,
    /// where each functional came from
    pub labels: Vec<String>,
    pub dim: usize,
    /// a point of the relative interior
    #[serde(serialize_with = "ser_qvec")]
    pub interior: Vec<Q>,
}

impl ConeH {
    pub fn new(n: usize, functionals: Vec<Vec<i64>>, labels: Vec<String>) -> Self {
        let (dim, interior) = dimension(n, &functionals);
        Self {
            n,
            functionals,
            labels,
            dim,
            interior,
        }
    }

    pub fn dominant(n: usize) -> Self {
        Self::new(n, Vec::new(), Vec::new())
    }

    pub fn zero(n: usize, reason: &str) -> Self {
        Self::new(n, vec![vec![1; n]], vec![reason.to_string()])
    }

    pub fn contains(&self, lambda: &[Q]) -> bool {
        lambda.iter().all(|x| !x.is_negative())
            && self
                .functionals
                .iter()
                .all(|v| !linalg::dot(&linalg::qvec(v), lambda).is_positive())
    }

    pub fn contains_int(&self, lambda: &[i64]) -> bool {
        self.contains(&linalg::qvec(lambda))
    }

    /// The relative-interior point scaled to a primitive integer weight.
    pub fn interior_weight(&self) -> Vec<i64> {
        if self.interior.iter().all(Zero::is_zero) {
            return vec![0; self.n];
        }
        linalg::primitive(&self.interior)
    }

    fn rows(&self) -> Vec<Vec<Q>> {
        self.functionals.iter().map(|v| linalg::qvec(v)).collect()
    }
}

/// Exact dimension by finding the implicit equalities; the average of the
/// witnesses for the other constraints is a relative-interior point.
fn dimension(n: usize, functionals: &[Vec<i64>]) -> (usize, Vec<Q>) {
    let mut rows: Vec<Vec<Q>> = functionals.iter().map(|v| linalg::qvec(v)).collect();
    for i in 0..n {
        let mut r = vec![Q::zero(); n];
        r[i] = q(-1);
        rows.push(r);
    }
    let mut implicit = Vec::new();
    let mut witnesses: Vec<Vec<Q>> = Vec::new();
    for r in &rows {
        let obj: Vec<Q> = r.iter().map(|x| -x).collect();
        let (value, x) = lp::max_over_slice(&obj, &rows, &[], n);
        if value.is_positive() {
            witnesses.push(x);
        } else {
            implicit.push(r.clone());
        }
    }
    let dim = n - linalg::rank(&implicit);
    let mut p = vec![Q::zero(); n];
    if !witnesses.is_empty() {
        let k = q(witnesses.len() as i64);
        for w in &witnesses {
            for (pi, wi) in p.iter_mut().zip(w) {
                *pi += wi / &k;
            }
        }
    }
    (dim, p)
}

pub fn cone_dim(c: &ConeH) -> usize {
    c.dim
}

/// The functional `v = w'^{-1} xi'` with `lambda(v) = w' lambda (xi')`.
pub fn pair_functional(e: &EmbeddingDatum, levi: &LeviDatum, wp: &WeylElement) -> Vec<i64> {
    let g = &e.g;
    linalg::primitive(&g.act_coweight(&g.inverse(wp), &levi.xi_prime))
}

/// `C_k`: weights whose unstable locus has codimension at least `k`, cut out
/// by the fit pairs with `l_xi(w) = r_xi - rhat_xi - k + 1`.
pub fn ck_cone(oracle: &RankOracle, k: usize, trials: usize, seed: u64) -> Result<ConeH> {
    if k == 0 {
        return Err(Error::Validation("k must be at least 1".into()));
    }
    let e = &oracle.e;
    let n = e.g.rank();
    let levis = e.xi_max()?;
    let mut functionals = Vec::new();
    let mut labels = Vec::new();
    for levi in &levis {
        let target = levi.upper_codim() - k as i64 + 1;
        if target < 0 {
            return Ok(ConeH::zero(n, &format!("k exceeds r - rhat at xi = {}", levi.xi)));
        }
        for wp in e.weyl()?.iter() {
            if wp.length() as i64 != target || !levi.is_min_rep(&e.g, wp) {
                continue;
            }
            if oracle.orbit_dim(levi, wp, trials, seed)?.fit {
                functionals.push(pair_functional(e, levi, wp));
                labels.push(format!("xi={} w={}", levi.xi, levi.twist(&e.g, wp).word_string()));
            }
        }
    }
    Ok(ConeH::new(n, functionals, labels))
}

/// Functionals of `outer` whose hyperplane meets `inner` at a strictly
/// dominant point; empty when `inner` sits in the interior of `outer`
/// relative to the dominant chamber.
pub fn nesting_violations(outer: &ConeH, inner: &ConeH) -> Vec<usize> {
    let weak = inner.rows();
    outer
        .functionals
        .iter()
        .enumerate()
        .filter(|(_, v)| v.iter().any(|&x| x != 0))
        .filter(|(_, v)| lp::mixed_point(&[], &weak, &[linalg::qvec(v)], outer.n).is_some())
        .map(|(i, _)| i)
        .collect()
}

/// `min (a/(a+b)) r - rhat` over `Xi_max`; at least 2 forces movable chambers.
pub fn rho_criterion(e: &EmbeddingDatum) -> Result<Q> {
    let mut best: Option<Q> = None;
    for levi in e.xi_max()? {
        let v = &levi.a / (&levi.a + &levi.b) * q(levi.r as i64) - q(levi.r_hat as i64);
        if best.as_ref().map_or(true, |b| v < *b) {
            best = Some(v);
        }
    }
    best.ok_or_else(|| Error::Validation("Ghat has rank zero".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    /// `(index into xi_max, untwisted w')` pairs defining this hyperplane
    #[serde(skip)]
    pub pairs: Vec<(usize, WeylElement)>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chamber {
    pub signs: Vec<i8>,
    pub sample: Vec<i64>,
    pub codim: Option<i64>,
    pub class: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Facet {
    pub chambers: (usize, usize),
    pub hyperplane: usize,
    pub sample: Vec<i64>,
    pub codim: Option<i64>,
    pub g_wall: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberGraph {
    pub hyperplanes: Vec<Hyperplane>,
    pub chambers: Vec<Chamber>,
    pub facets: Vec<Facet>,
    /// chamber indices per class of `Ghat`-equivalent weights
    pub classes: Vec<Vec<usize>>,
    /// pairs of chambers in one class whose joining segment leaves it
    pub convexity_violations: Vec<(usize, usize)>,
    #[serde(skip)]
    levis: Vec<LeviDatum>,
}

fn sign_rows(hyperplanes: &[Hyperplane], signs: &[i8]) -> Vec<Vec<Q>> {
    signs
        .iter()
        .zip(hyperplanes)
        .map(|(&s, h)| h.normal.iter().map(|&x| q(-(s as i64) * x)).collect())
        .collect()
}

fn arrangement(e: &EmbeddingDatum, levis: &[LeviDatum], cap: usize) -> Result<Vec<Hyperplane>> {
    let g = &e.g;
    let mut by_normal: BTreeMap<Vec<i64>, Hyperplane> = BTreeMap::new();
    for (j, levi) in levis.iter().enumerate() {
        for wp in e.weyl()?.iter() {
            if !levi.is_min_rep(g, wp) {
                continue;
            }
            let v = pair_functional(e, levi, wp);
            // only hyperplanes crossing the open dominant chamber matter
            if !(v.iter().any(|&x| x > 0) && v.iter().any(|&x| x < 0)) {
                continue;
            }
            let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
            let normal: Vec<i64> = if first < 0 { v.iter().map(|x| -x).collect() } else { v };
            let h = by_normal.entry(normal.clone()).or_insert_with(|| Hyperplane {
                normal,
                pairs: Vec::new(),
                labels: Vec::new(),
            });
            h.pairs.push((j, wp.clone()));
            h.labels.push(format!("xi={} w={}", levi.xi, levi.twist(g, wp).word_string()));
        }
    }
    if by_normal.len() > cap {
        return Err(Error::CapExceeded {
            what: "hyperplanes in the chamber arrangement",
            cap: cap as u64,
            estimate: by_normal.len() as u64,
        });
    }
    Ok(by_normal.into_values().collect())
}

/// Whether the facet sample `lambda` on `H_{w'^{-1} xi'}` separates classes
/// for the pair `(xi, w)`: the restricted weight is ample for the Levi.
pub fn g_wall_pair(cx: &mut Context, e: &EmbeddingDatum, levi: &LeviDatum, wp: &WeylElement, lambda: &[i64]) -> Result<bool> {
    strat::check_strict(e, lambda)?;
    if !levi.mumford(&e.g, wp, lambda).is_zero() {
        return Err(Error::Validation(format!(
            "{lambda:?} does not lie on the hyperplane of xi = {}, w' = {}",
            levi.xi,
            wp.word_string()
        )));
    }
    let restricted = levi.restricted_weight(&e.g, wp, lambda);
    cx.restricted_ample(e, levi, &restricted)
}

/// A facet is a wall between classes when some pair defining its hyperplane passes [`g_wall_pair`].
pub fn g_wall_test(cx: &mut Context, e: &EmbeddingDatum, graph: &ChamberGraph, facet: usize) -> Result<bool> {
    let f = &graph.facets[facet];
    for (j, wp) in &graph.hyperplanes[f.hyperplane].pairs {
        if g_wall_pair(cx, e, &graph.levis[*j], wp, &f.sample)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sign vectors and primitive sample points of the full-dimensional chambers,
/// by inserting one hyperplane at a time.
fn enumerate_chambers(hyperplanes: &[Hyperplane], n: usize) -> Result<Vec<(Vec<i8>, Vec<i64>)>> {
    let mut regions: Vec<Vec<i8>> = vec![Vec::new()];
    for (k, h) in hyperplanes.iter().enumerate() {
        let mut next = Vec::new();
        for r in regions {
            let base = sign_rows(&hyperplanes[..k], &r);
            for s in [1i8, -1] {
                let mut rows = base.clone();
                rows.push(h.normal.iter().map(|&x| q(-(s as i64) * x)).collect());
                if lp::strict_point(&rows, &[], n).is_some() {
                    let mut r2 = r.clone();
                    r2.push(s);
                    next.push(r2);
                }
            }
        }
        regions = next;
    }
    regions
        .into_iter()
        .map(|signs| {
            let p = lp::strict_point(&sign_rows(hyperplanes, &signs), &[], n)
                .ok_or_else(|| crate::error::invariant("chamber lost its interior point"))?;
            Ok((signs, linalg::primitive(&p)))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TChamber {
    pub signs: Vec<i8>,
    pub sample: Vec<i64>,
    /// codimension of the unstable locus for the maximal torus of `Ghat`
    pub t_codim: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TArrangement {
    pub hyperplanes: Vec<Hyperplane>,
    pub chambers: Vec<TChamber>,
}

/// Chambers of the arrangement for the maximal torus alone.
pub fn t_arrangement(e: &EmbeddingDatum, cap: usize) -> Result<TArrangement> {
    e.require_regular()?;
    let levis = e.xi_max()?;
    let hyperplanes = arrangement(e, &levis, cap)?;
    let chambers = enumerate_chambers(&hyperplanes, e.g.rank())?
        .into_iter()
        .map(|(signs, sample)| {
            let t_codim = strat::t_codim_unstable(e, &sample)?;
            Ok(TChamber { signs, sample, t_codim })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TArrangement { hyperplanes, chambers })
}

/// Chambers of the arrangement inside the dominant cone, with codimensions,
/// facet adjacency, wall flags, and the induced classes.
pub fn t_chambers(cx: &mut Context, e: &EmbeddingDatum, cap: usize) -> Result<ChamberGraph> {
    e.require_regular()?;
    let n = e.g.rank();
    let levis = e.xi_max()?;
    let hyperplanes = arrangement(e, &levis, cap)?;
    let mut chambers = Vec::new();
    for (signs, sample) in enumerate_chambers(&hyperplanes, n)? {
        let codim = strat::codim_unstable(cx, e, &sample)?;
        chambers.push(Chamber {
            signs,
            sample,
            codim,
            class: 0,
        });
    }
    let mut graph = ChamberGraph {
        hyperplanes,
        chambers,
        facets: Vec::new(),
        classes: Vec::new(),
        convexity_violations: Vec::new(),
        levis,
    };
    for a in 0..graph.chambers.len() {
        for b in a + 1..graph.chambers.len() {
            let (sa, sb) = (&graph.chambers[a].signs, &graph.chambers[b].signs);
            let diff: Vec<usize> = (0..sa.len()).filter(|&i| sa[i] != sb[i]).collect();
            if diff.len() != 1 {
                continue;
            }
            let hk = diff[0];
            let mut rows = sign_rows(&graph.hyperplanes, sa);
            rows.remove(hk);
            let eq = vec![linalg::qvec(&graph.hyperplanes[hk].normal)];
            let Some(p) = lp::strict_point(&rows, &eq, n) else { continue };
            let sample = linalg::primitive(&p);
            let codim = strat::codim_unstable(cx, e, &sample)?;
            graph.facets.push(Facet {
                chambers: (a, b),
                hyperplane: hk,
                sample,
                codim,
                g_wall: false,
            });
        }
    }
    for f in 0..graph.facets.len() {
        graph.facets[f].g_wall = g_wall_test(cx, e, &graph, f)?;
    }
    assign_classes(&mut graph);
    graph.convexity_violations = convexity_audit(&graph);
    Ok(graph)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Chambers joined across facets that are not walls; all chambers where every
/// point is unstable form one class.
fn assign_classes(graph: &mut ChamberGraph) {
    let m = graph.chambers.len();
    let mut parent: Vec<usize> = (0..m).collect();
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for f in &graph.facets {
        if !f.g_wall {
            union(&mut parent, f.chambers.0, f.chambers.1);
        }
    }
    let unstable: Vec<usize> = (0..m).filter(|&i| graph.chambers[i].codim == Some(0)).collect();
    for w in unstable.windows(2) {
        union(&mut parent, w[0], w[1]);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    graph.classes = classes.into_values().collect();
    for (c, members) in graph.classes.iter().enumerate() {
        for &i in members {
            graph.chambers[i].class = c;
        }
    }
}

/// Probes points on segments between samples of one class; the class of
/// unstable chambers is not expected to be convex and is skipped.
fn convexity_audit(graph: &ChamberGraph) -> Vec<(usize, usize)> {
    let by_signs: BTreeMap<&[i8], usize> = graph
        .chambers
        .iter()
        .enumerate()
        .map(|(i, c)| (c.signs.as_slice(), i))
        .collect();
    let mut bad = Vec::new();
    for members in &graph.classes {
        if graph.chambers[members[0]].codim == Some(0) {
            continue;
        }
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                let (pa, pb) = (&graph.chambers[a].sample, &graph.chambers[b].sample);
                for t in 1..4 {
                    let p: Vec<Q> = pa
                        .iter()
                        .zip(pb)
                        .map(|(&u, &v)| q(u) * q(4 - t) + q(v) * q(t))
                        .collect();
                    let signs: Option<Vec<i8>> = graph
                        .hyperplanes
                        .iter()
                        .map(|h| {
                            let s = linalg::dot(&linalg::qvec(&h.normal), &p);
                            if s.is_positive() {
                                Some(1)
                            } else if s.is_negative() {
                                Some(-1)
                            } else {
                                None
                            }
                        })
                        .collect();
                    let Some(signs) = signs else { continue };
                    if by_signs.get(signs.as_slice()).map(|&c| graph.chambers[c].class) != Some(graph.chambers[a].class) {
                        bad.push((a, b));
                        break;
                    }
                }
            }
        }
    }
    bad
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct NoJumpReport {
    pub adjacent_checked: usize,
    pub closure_checked: usize,
    pub violations: Vec<String>,
}

impl NoJumpReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Codimensions change by at most one across facets, and never decrease from
/// a chamber to a facet in its closure.
pub fn no_jump_audit(graph: &ChamberGraph) -> NoJumpReport {
    let mut rep = NoJumpReport::default();
    for (k, f) in graph.facets.iter().enumerate() {
        let (a, b) = f.chambers;
        if let (Some(ca), Some(cb)) = (graph.chambers[a].codim, graph.chambers[b].codim) {
            rep.adjacent_checked += 1;
            if (ca - cb).abs() > 1 {
                rep.violations.push(format!("chambers {a} and {b}: codims {ca} and {cb}"));
            }
        }
        for c in [a, b] {
            if let (Some(cc), Some(cf)) = (graph.chambers[c].codim, f.codim) {
                rep.closure_checked += 1;
                if !(0..=1).contains(&(cf - cc)) {
                    rep.violations.push(format!("facet {k} in closure of chamber {c}: codims {cf} and {cc}"));
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_DIM_CAP;
    use crate::rootcore::{Isogeny, RootDatum};

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn dimensions_of_simple_cones() {
        assert_eq!(ConeH::dominant(2).dim, 2);
        assert_eq!(ConeH::zero(3, "test").dim, 0);
        let ray = ConeH::new(2, vec![vec![1, -1], vec![-1, 1]], vec![String::new(); 2]);
        assert_eq!(ray.dim, 1);
        assert_eq!(ray.interior_weight(), vec![1, 1]);
    }

    #[test]
    fn principal_cones() {
        let e = EmbeddingDatum::principal(rd("A2")).unwrap();
        let o = RankOracle::new(&e, DEFAULT_DIM_CAP).unwrap();
        let c1 = ck_cone(&o, 1, 3, 0).unwrap();
        let c2 = ck_cone(&o, 2, 3, 0).unwrap();
        assert_eq!((c1.dim, c2.dim), (2, 0));
        assert!(c1.contains_int(&[5, 1]));
        assert!(nesting_violations(&c1, &c2).is_empty());
        let mut cx = Context::new();
        let g = t_chambers(&mut cx, &e, DEFAULT_HYPERPLANE_CAP).unwrap();
        assert_eq!((g.chambers.len(), g.facets.len()), (1, 0));
        let t = t_arrangement(&e, DEFAULT_HYPERPLANE_CAP).unwrap();
        assert_eq!(t.chambers.len(), 1);
        assert_eq!(t.chambers[0].t_codim, Some(2));
    }

    #[test]
    fn diagonal_a1_squared() {
        let e = EmbeddingDatum::diagonal(&rd("A1"), 2).unwrap();
        let o = RankOracle::new(&e, DEFAULT_DIM_CAP).unwrap();
        let c1 = ck_cone(&o, 1, 3, 0).unwrap();
        assert_eq!(c1.dim, 1);
        assert!(c1.contains_int(&[3, 3]) && !c1.contains_int(&[2, 1]));
        let mut cx = Context::new();
        let g = t_chambers(&mut cx, &e, DEFAULT_HYPERPLANE_CAP).unwrap();
        assert_eq!(g.chambers.len(), 2);
        assert_eq!(g.facets.len(), 1);
        assert!(g.facets[0].g_wall);
        assert_eq!(g.facets[0].codim, Some(1));
        assert!(g.chambers.iter().all(|c| c.codim == Some(0)));
        assert_eq!(g.classes.len(), 1);
        assert!(no_jump_audit(&g).passed());
    }

    #[test]
    fn diagonal_a1_fourth_movable_ray() {
        let e = EmbeddingDatum::diagonal(&rd("A1"), 4).unwrap();
        let o = RankOracle::new(&e, DEFAULT_DIM_CAP).unwrap();
        let c2 = ck_cone(&o, 2, 3, 0).unwrap();
        assert_eq!(c2.dim, 1);
        assert_eq!(c2.interior_weight(), vec![1, 1, 1, 1]);
        let c1 = ck_cone(&o, 1, 3, 0).unwrap();
        assert_eq!(c1.dim, 4);
        assert!(nesting_violations(&c1, &c2).is_empty());
    }

    #[test]
    fn chambers_are_disjoint_and_cover_the_dominant_cone() {
        for k in [3, 4] {
            let e = EmbeddingDatum::diagonal(&rd("A1"), k).unwrap();
            let mut cx = Context::new();
            let g = t_chambers(&mut cx, &e, DEFAULT_HYPERPLANE_CAP).unwrap();
            let sign_of = |p: &[i64]| -> Option<Vec<i8>> {
                g.hyperplanes
                    .iter()
                    .map(|h| match linalg::dot_i(&h.normal, p).signum() {
                        0 => None,
                        s => Some(s as i8),
                    })
                    .collect()
            };
            for c in &g.chambers {
                assert_eq!(sign_of(&c.sample).as_ref(), Some(&c.signs));
            }
            let mut box_pt = vec![1i64; k];
            loop {
                if let Some(s) = sign_of(&box_pt) {
                    assert!(g.chambers.iter().any(|c| c.signs == s), "{box_pt:?} in no chamber");
                }
                let Some(i) = box_pt.iter().position(|&x| x < 5) else { break };
                box_pt[i] += 1;
                box_pt[..i].iter_mut().for_each(|x| *x = 1);
            }
        }
    }

    #[test]
    fn interior_point_is_strict_off_implicit_equalities() {
        let e = EmbeddingDatum::diagonal(&rd("A1"), 3).unwrap();
        let o = RankOracle::new(&e, DEFAULT_DIM_CAP).unwrap();
        let c1 = ck_cone(&o, 1, 3, 0).unwrap();
        assert_eq!(c1.dim, 3);
        let p = &c1.interior;
        assert!(p.iter().all(|x| x.is_positive()));
        for v in &c1.functionals {
            assert!(linalg::dot(&linalg::qvec(v), p).is_negative());
        }
    }
}
