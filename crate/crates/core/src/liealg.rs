//! Integer structure constants for `g` and a randomized exact-rank estimate of
//! the dimension of sweeps `Ghat P_xi x_{w sigma_xi}`.
//!
//! Simply-laced components use the sign cocycle `eps(a, b) = (-1)^{a^T M b}`
//! with `M` read off an orientation of the Dynkin diagram. The other types are
//! fixed points of a diagram automorphism of a simply-laced algebra whose
//! orientation is invariant, so the automorphism preserves the cocycle.

use crate::embed::{EmbeddingDatum, LeviDatum};
use crate::error::{invariant, Error, Result};
use crate::linalg::{self, q, Echelon, Q};
use crate::rootcore::{Coweight, Factor, Isogeny, RootDatum, Series, WeylElement};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

pub const DEFAULT_DIM_CAP: usize = 400;
/// Coefficients of random nilpotent elements are drawn from `[-B, B]`.
pub const COEFF_BOUND: i64 = 101;

/// A simply-laced cover together with the orbits folding it onto one factor.
struct Cover {
    cartan: Vec<Vec<i64>>,
    arrows: Vec<(usize, usize)>,
    /// cover nodes over each simple root of the factor, in Bourbaki order
    orbits: Vec<Vec<usize>>,
}

fn graph_cartan(m: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; m]; m];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    c
}

fn chain(m: usize) -> Vec<(usize, usize)> {
    (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

fn cover(series: Series, n: usize) -> Cover {
    match series {
        Series::C => {
            // A_{2n-1}, arrows pointing away from the middle node
            let m = 2 * n - 1;
            let arrows = chain(m)
                .into_iter()
                .map(|(i, j)| if j < n { (j, i) } else { (i, j) })
                .collect();
            let mut orbits: Vec<Vec<usize>> = (0..n - 1).map(|b| vec![b, m - 1 - b]).collect();
            orbits.push(vec![n - 1]);
            Cover {
                cartan: graph_cartan(m, &chain(m)),
                arrows,
                orbits,
            }
        }
        Series::B => {
            // D_{n+1}
            let mut edges = chain(n);
            edges.push((n - 2, n));
            let mut orbits: Vec<Vec<usize>> = (0..n - 1).map(|b| vec![b]).collect();
            orbits.push(vec![n - 1, n]);
            Cover {
                cartan: graph_cartan(n + 1, &edges),
                arrows: edges,
                orbits,
            }
        }
        Series::F => Cover {
            cartan: graph_cartan(6, &[(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
            arrows: vec![(2, 0), (4, 5), (3, 2), (3, 4), (3, 1)],
            orbits: vec![vec![1], vec![3], vec![2, 4], vec![0, 5]],
        },
        Series::G => Cover {
            cartan: graph_cartan(4, &[(0, 1), (1, 2), (1, 3)]),
            arrows: vec![(1, 0), (1, 2), (1, 3)],
            orbits: vec![vec![0, 2, 3], vec![1]],
        },
        Series::A | Series::D | Series::E => {
            let c = Factor { series, rank: n }.cartan();
            let mut arrows = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if c[i][j] != 0 {
                        arrows.push((i, j));
                    }
                }
            }
            Cover {
                cartan: c,
                arrows,
                orbits: (0..n).map(|i| vec![i]).collect(),
            }
        }
    }
}

/// `perm[b]` is the local node playing the role of Bourbaki node `b`.
fn match_bourbaki(local: &[Vec<i64>], bourbaki: &[Vec<i64>]) -> Option<Vec<usize>> {
    fn extend(local: &[Vec<i64>], bour: &[Vec<i64>], perm: &mut Vec<usize>) -> bool {
        let b = perm.len();
        if b == bour.len() {
            return true;
        }
        for cand in 0..local.len() {
            if perm.contains(&cand) {
                continue;
            }
            let ok = (0..b).all(|a| local[perm[a]][cand] == bour[a][b] && local[cand][perm[a]] == bour[b][a]);
            if ok {
                perm.push(cand);
                if extend(local, bour, perm) {
                    return true;
                }
                perm.pop();
            }
        }
        false
    }
    let mut perm = Vec::new();
    extend(local, bourbaki, &mut perm).then_some(perm)
}

/// Element of the cover algebra: root coordinates (possibly negative) or Cartan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum CoverBasis {
    Root(Vec<i64>),
    Cartan(usize),
}

struct CoverAlgebra {
    cartan: Vec<Vec<i64>>,
    m: Vec<Vec<i64>>,
    roots: std::collections::HashSet<Vec<i64>>,
}

impl CoverAlgebra {
    fn new(c: &Cover) -> Result<Self> {
        let n = c.cartan.len();
        let big = RootDatum::from_cartan(c.cartan.clone(), Isogeny::SimplyConnected)?;
        let mut roots = std::collections::HashSet::new();
        for r in &big.positive {
            roots.insert(r.coeffs.clone());
            roots.insert(r.coeffs.iter().map(|x| -x).collect());
        }
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j) in &c.arrows {
            m[i][j] = 1;
        }
        Ok(Self {
            cartan: c.cartan.clone(),
            m,
            roots,
        })
    }

    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                s += ai * self.m[i][j] * bj;
            }
        }
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `[E_a, E_b]` with `[E_a, E_{-a}] = -a^vee`.
    fn bracket_roots(&self, a: &[i64], b: &[i64]) -> Vec<(CoverBasis, i64)> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if s.iter().all(|&x| x == 0) {
            return a
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (CoverBasis::Cartan(i), -x))
                .collect();
        }
        if self.roots.contains(&s) {
            vec![(CoverBasis::Root(s), self.eps(a, b))]
        } else {
            Vec::new()
        }
    }
}

/// A semisimple Lie algebra in the basis `x_alpha (alpha > 0)`, `x_{-alpha}`,
/// `h_i = alpha_i^vee`, with integer structure constants.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    npos: usize,
    rank: usize,
    table: Vec<Vec<(usize, i64)>>,
}

impl ChevalleyAlgebra {
    pub fn build(g: &RootDatum, cap_dim: usize) -> Result<Self> {
        let (npos, rank) = (g.num_positive(), g.rank());
        let d = 2 * npos + rank;
        if d > cap_dim {
            return Err(Error::CapExceeded {
                what: "Lie algebra dimension",
                cap: cap_dim as u64,
                estimate: d as u64,
            });
        }
        let mut alg = Self {
            npos,
            rank,
            table: vec![Vec::new(); d * d],
        };
        // Cartan against roots
        for (k, root) in g.positive.iter().enumerate() {
            for i in 0..rank {
                let v = root.weight[i];
                if v != 0 {
                    let h = alg.cartan_index(i);
                    alg.set(h, k, vec![(k, v)]);
                    alg.set(k, h, vec![(k, -v)]);
                    alg.set(h, npos + k, vec![(npos + k, -v)]);
                    alg.set(npos + k, h, vec![(npos + k, v)]);
                }
            }
        }
        for (comp, factor) in g.components.iter().zip(&g.factors) {
            alg.fill_component(g, comp, factor)?;
        }
        Ok(alg)
    }

    fn set(&mut self, i: usize, j: usize, v: Vec<(usize, i64)>) {
        let d = self.dim();
        self.table[i * d + j] = v;
    }

    fn fill_component(&mut self, g: &RootDatum, comp: &[usize], factor: &Factor) -> Result<()> {
        let n = comp.len();
        let local: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| g.cartan[i][j]).collect()).collect();
        let perm = match_bourbaki(&local, &factor.cartan())
            .ok_or_else(|| Error::LieModel(format!("component {comp:?} does not match {factor}")))?;
        let cov = cover(factor.series, n);
        let big = CoverAlgebra::new(&cov)?;
        // fold cover roots onto global root coordinates
        let fold = |a: &[i64]| -> Vec<i64> {
            let mut c = vec![0; g.rank()];
            for (b, orbit) in cov.orbits.iter().enumerate() {
                c[comp[perm[b]]] = orbit.iter().map(|&k| a[k]).sum();
            }
            c
        };
        let mut orbit_of: HashMap<usize, Vec<Vec<i64>>> = HashMap::new();
        for a in &big.roots {
            let c = fold(a);
            let idx = self.signed_root_index(g, &c).ok_or_else(|| {
                Error::LieModel(format!("folded root {c:?} is not a root of {factor}"))
            })?;
            orbit_of.entry(idx).or_default().push(a.clone());
        }
        for o in orbit_of.values_mut() {
            o.sort();
        }
        let mine: Vec<usize> = {
            let mut v: Vec<usize> = orbit_of.keys().copied().collect();
            v.sort_unstable();
            v
        };
        if mine.len() != 2 * factor.positive_root_count() {
            return Err(Error::LieModel(format!("folding of {factor} has the wrong root count")));
        }
        // the cover Cartan node k lies over local node comp[perm[b]]
        let mut cartan_node = vec![0; big.cartan.len()];
        for (b, orbit) in cov.orbits.iter().enumerate() {
            for &k in orbit {
                cartan_node[k] = comp[perm[b]];
            }
        }
        for &x in &mine {
            for &y in &mine {
                let mut acc: HashMap<CoverBasis, i64> = HashMap::new();
                for a in &orbit_of[&x] {
                    for b in &orbit_of[&y] {
                        for (t, c) in big.bracket_roots(a, b) {
                            *acc.entry(t).or_insert(0) += c;
                        }
                    }
                }
                acc.retain(|_, c| *c != 0);
                let out = self.read_folded(g, &acc, &orbit_of, &cov, &cartan_node, &fold)?;
                self.set(x, y, out);
            }
        }
        Ok(())
    }

    /// Expresses an orbit-invariant cover element in the folded basis, checking invariance.
    fn read_folded(
        &self,
        g: &RootDatum,
        acc: &HashMap<CoverBasis, i64>,
        orbit_of: &HashMap<usize, Vec<Vec<i64>>>,
        cov: &Cover,
        cartan_node: &[usize],
        fold: &dyn Fn(&[i64]) -> Vec<i64>,
    ) -> Result<Vec<(usize, i64)>> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        let bad = || Error::LieModel("folded bracket is not orbit invariant".into());
        for (t, &c) in acc {
            let (idx, first) = match t {
                CoverBasis::Root(a) => {
                    let idx = self.signed_root_index(g, &fold(a)).ok_or_else(bad)?;
                    (idx, orbit_of[&idx][0] == *a)
                }
                CoverBasis::Cartan(k) => {
                    let orbit = cov.orbits.iter().find(|o| o.contains(k)).ok_or_else(bad)?;
                    (self.cartan_index(cartan_node[*k]), orbit[0] == *k)
                }
            };
            // every member of an orbit must carry the same coefficient
            let same = match t {
                CoverBasis::Root(a) => {
                    let idx = self.signed_root_index(g, &fold(a)).ok_or_else(bad)?;
                    orbit_of[&idx]
                        .iter()
                        .all(|b| acc.get(&CoverBasis::Root(b.clone())) == Some(&c))
                }
                CoverBasis::Cartan(k) => cov
                    .orbits
                    .iter()
                    .find(|o| o.contains(k))
                    .unwrap()
                    .iter()
                    .all(|&j| acc.get(&CoverBasis::Cartan(j)) == Some(&c)),
            };
            if !same {
                return Err(bad());
            }
            if first {
                out.push((idx, c));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    fn signed_root_index(&self, g: &RootDatum, c: &[i64]) -> Option<usize> {
        if c.iter().all(|&x| x >= 0) {
            g.root_index(c)
        } else {
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            g.root_index(&neg).map(|k| self.npos + k)
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.npos + self.rank
    }

    /// Basis index of `x_beta` for a root given by (possibly negative) coordinates.
    pub fn root_vector(&self, g: &RootDatum, coeffs: &[i64]) -> usize {
        self.signed_root_index(g, coeffs).expect("coordinates of a root")
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        2 * self.npos + i
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let p = xi * yj;
                for &(k, c) in &self.table[i * d + j] {
                    out[k] += &p * q(c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let d = self.dim();
        let mut m = vec![vec![Q::zero(); d]; d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..d {
                for &(k, c) in &self.table[i * d + j] {
                    m[k][j] += xi * q(c);
                }
            }
        }
        m
    }

    /// `exp(ad n) v` for a nilpotent `ad n` given as a matrix.
    pub fn exp_ad(&self, ad_n: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
        let mut sum = v.to_vec();
        let mut term = v.to_vec();
        for k in 1..=self.dim() {
            term = linalg::mat_vec(ad_n, &term);
            if term.iter().all(Zero::is_zero) {
                break;
            }
            let inv = Q::new(1.into(), (k as i64).into());
            for t in term.iter_mut() {
                *t *= &inv;
            }
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
        }
        sum
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]` on basis elements.
    pub fn jacobi_defect(&self, a: usize, b: usize, c: usize) -> Vec<Q> {
        let (ea, eb, ec) = (self.basis_vector(a), self.basis_vector(b), self.basis_vector(c));
        let t1 = self.bracket(&ea, &self.bracket(&eb, &ec));
        let t2 = self.bracket(&eb, &self.bracket(&ec, &ea));
        let t3 = self.bracket(&ec, &self.bracket(&ea, &eb));
        t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z).collect()
    }
}

/// Report of one randomized dimension computation.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitDimReport {
    pub xi: String,
    pub w: Vec<usize>,
    pub w_prime: Vec<usize>,
    pub dim: i64,
    pub codim: i64,
    /// `r_hat + n + l`
    pub expected: i64,
    pub fit: bool,
    pub seed: u64,
    pub trials: usize,
    pub per_trial: Vec<i64>,
    pub stabilized: bool,
}

/// The algebra of `G`, the image of `ghat`, and the embedding they model.
pub struct RankOracle {
    pub e: EmbeddingDatum,
    pub alg: ChevalleyAlgebra,
    /// basis of the image of `ghat`
    pub sub: Vec<Vec<Q>>,
}

impl RankOracle {
    pub fn new(e: &EmbeddingDatum, cap_dim: usize) -> Result<Self> {
        let alg = ChevalleyAlgebra::build(&e.g, cap_dim)?;
        let sub = embedded_subalgebra(&alg, e)?;
        Ok(Self {
            e: e.clone(),
            alg,
            sub,
        })
    }

    /// Generic dimension of `Ghat P_xi x_{w sigma}` for an untwisted shortest
    /// representative `w'`.
    pub fn orbit_dim(&self, levi: &LeviDatum, wp: &WeylElement, trials: usize, seed: u64) -> Result<OrbitDimReport> {
        if trials < 3 {
            return Err(Error::Validation(format!("trials = {trials}; at least 3 are required")));
        }
        let g = &self.e.g;
        if !levi.is_min_rep(g, wp) {
            return Err(Error::Validation(format!(
                "{} is not a shortest coset representative for xi = {}",
                wp.word_string(),
                levi.xi
            )));
        }
        let alg = &self.alg;
        let x = self.e.push_coweight(&levi.xi.0);
        // coordinates of g / p_xi: root vectors with negative xi-value
        let mut rminus: Vec<usize> = Vec::new();
        for root in &g.positive {
            let v = g.root_value(root, &x);
            if v.is_positive() {
                rminus.push(alg.npos + g.root_index(&root.coeffs).unwrap());
            } else if v.is_negative() {
                rminus.push(g.root_index(&root.coeffs).unwrap());
            }
        }
        rminus.sort_unstable();
        let u = g.compose(&levi.sigma, &g.coset_max(&levi.levi_roots, wp));
        let b_u: Vec<Vec<Q>> = (0..g.rank())
            .map(|i| alg.basis_vector(alg.cartan_index(i)))
            .chain(
                g.positive
                    .iter()
                    .map(|r| alg.basis_vector(alg.root_vector(g, &g.act_root(&u, &r.coeffs)))),
            )
            .collect();
        let nil: Vec<usize> = g
            .positive
            .iter()
            .map(|r| alg.root_vector(g, &g.act_root(&levi.sigma, &r.coeffs)))
            .collect();
        let project = |v: &[Q]| -> Vec<Q> { rminus.iter().map(|&k| v[k].clone()).collect() };
        let mut per_trial = Vec::with_capacity(trials);
        for t in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let mut n = vec![Q::zero(); alg.dim()];
            for &k in &nil {
                n[k] = q(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND));
            }
            let ad_n = alg.ad(&n);
            let mut ech = Echelon::new();
            for v in &self.sub {
                ech.insert(&project(v));
            }
            for v in &b_u {
                ech.insert(&project(&alg.exp_ad(&ad_n, v)));
            }
            per_trial.push((levi.n + ech.rank()) as i64);
        }
        let dim = *per_trial.iter().max().unwrap();
        let hits = per_trial.iter().filter(|&&d| d == dim).count();
        let expected = (levi.r_hat + levi.n + wp.length()) as i64;
        if dim > expected {
            return Err(invariant(format!(
                "sweep dimension {dim} exceeds r_hat + n + l = {expected}"
            )));
        }
        Ok(OrbitDimReport {
            xi: levi.xi.to_string(),
            w: levi.twist(g, wp).word,
            w_prime: wp.word.clone(),
            dim,
            codim: g.num_positive() as i64 - dim,
            expected,
            fit: dim == expected,
            seed,
            trials,
            per_trial,
            stabilized: hits >= 2,
        })
    }

    /// All `(xi, w)` with `w` a shortest representative, with their sweep dimensions.
    pub fn fit_pairs(&self, levi: &LeviDatum, trials: usize, seed: u64) -> Result<Vec<OrbitDimReport>> {
        let g = &self.e.g;
        self.e
            .weyl()?
            .iter()
            .filter(|w| levi.is_min_rep(g, w))
            .map(|wp| self.orbit_dim(levi, wp, trials, seed))
            .collect()
    }

    /// Codimension of `X^us(lambda)` as the smallest codimension among sweeps
    /// `Ghat P_j x_{w sigma_j}` with positive Mumford value over `Xi_max`.
    /// Reports along `w' = w_1 > w_2 > ... > 1`, each step deleting one root
    /// from the inverted set; every step of a fit chain adds 1 to the codimension.
    pub fn seq_fit_chain(&self, levi: &LeviDatum, wp: &WeylElement, trials: usize, seed: u64) -> Result<Vec<OrbitDimReport>> {
        inverted_chain(&self.e.g, wp)
            .iter()
            .map(|w| self.orbit_dim(levi, w, trials, seed))
            .collect()
    }

    pub fn codim_from_sweeps(&self, lambda: &[i64], trials: usize, seed: u64) -> Result<Option<i64>> {
        let g = &self.e.g;
        let mut best: Option<i64> = None;
        for levi in self.e.xi_max()? {
            for wp in self.e.weyl()?.iter() {
                if !levi.is_min_rep(g, wp) || !levi.mumford(g, wp, lambda).is_positive() {
                    continue;
                }
                let c = self.orbit_dim(&levi, wp, trials, seed)?.codim;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        Ok(best)
    }
}

/// The subalgebra generated by `e_i = sum x_alpha` over roots with
/// `iota^* alpha = alphahat_i`, and matching `f_i` with `[e_i, f_i] = iota(alphahat_i^vee)`.
pub fn embedded_subalgebra(alg: &ChevalleyAlgebra, e: &EmbeddingDatum) -> Result<Vec<Vec<Q>>> {
    let g = &e.g;
    let mut gens: Vec<Vec<Q>> = Vec::new();
    for i in 0..e.ghat.rank() {
        let target = &e.ghat.cartan[i];
        let mut ups: Vec<Vec<i64>> = Vec::new();
        for root in &g.positive {
            for sign in [1, -1] {
                let w: Vec<i64> = root.weight.iter().map(|x| sign * x).collect();
                if e.restrict(&w) == *target {
                    ups.push(root.coeffs.iter().map(|x| sign * x).collect());
                }
            }
        }
        if ups.is_empty() {
            return Err(Error::LieModel(format!("no root of G restricts to simple root {i} of Ghat")));
        }
        let mut ei = vec![Q::zero(); alg.dim()];
        let mut hs: Vec<Vec<Q>> = Vec::new();
        for a in &ups {
            let k = alg.root_vector(g, a);
            ei[k] = Q::one();
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let h = alg.bracket(&alg.basis_vector(k), &alg.basis_vector(alg.root_vector(g, &neg)));
            hs.push((0..g.rank()).map(|j| h[alg.cartan_index(j)].clone()).collect());
        }
        // solve sum_a c_a h_a = iota(alphahat_i^vee)
        let goal = linalg::qvec(&e.iota[i]);
        let mut rows: Vec<Vec<Q>> = (0..g.rank())
            .map(|j| {
                let mut r: Vec<Q> = hs.iter().map(|h| h[j].clone()).collect();
                r.push(goal[j].clone());
                r
            })
            .collect();
        let m = hs.len();
        let pivots = linalg::rref(&mut rows, m);
        if rows.iter().any(|r| r[..m].iter().all(Zero::is_zero) && !r[m].is_zero()) {
            return Err(Error::LieModel(format!("coroot {i} of Ghat is not a sum of root coroots")));
        }
        let mut c = vec![Q::zero(); m];
        for (row, &p) in pivots.iter().enumerate() {
            c[p] = rows[row][m].clone();
        }
        let mut fi = vec![Q::zero(); alg.dim()];
        for (a, ca) in ups.iter().zip(&c) {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            fi[alg.root_vector(g, &neg)] = ca.clone();
        }
        gens.push(ei);
        gens.push(fi);
    }
    let want = e.ghat.dim();
    let mut ech = Echelon::new();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for v in &gens {
        if ech.insert(v) {
            basis.push(v.clone());
        }
    }
    let mut k = 0;
    while k < basis.len() {
        for gen in &gens {
            let v = alg.bracket(gen, &basis[k]);
            if ech.insert(&v) {
                basis.push(v);
                if basis.len() > want {
                    return Err(Error::LieModel(format!(
                        "generators span more than dim Ghat = {want}"
                    )));
                }
            }
        }
        k += 1;
    }
    if basis.len() != want {
        return Err(Error::LieModel(format!(
            "generated subalgebra has dimension {} instead of {want}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// The chain `w = w_1, ..., w_{l+1} = 1` peeling one inverted root at a time.
pub fn inverted_chain(g: &RootDatum, w: &WeylElement) -> Vec<WeylElement> {
    let mut out = vec![w.clone()];
    let mut cur = w.clone();
    // a right descent i sends alpha_i negative; then w s_i drops the root w alpha_i
    while let Some(i) = (0..g.rank()).find(|&i| {
        let mut e = vec![0; g.rank()];
        e[i] = 1;
        g.act_root(&cur, &e).iter().any(|&x| x < 0)
    }) {
        let mut word = cur.word.clone();
        word.push(i);
        cur = g.element_from_word(&word);
        out.push(cur.clone());
    }
    out
}

pub fn generic_orbit_dim(
    e: &EmbeddingDatum,
    xi: &Coweight,
    w: &WeylElement,
    trials: usize,
    seed: u64,
) -> Result<OrbitDimReport> {
    let levi = e.levi_datum(xi)?;
    let oracle = RankOracle::new(e, DEFAULT_DIM_CAP)?;
    oracle.orbit_dim(&levi, &levi.untwist(&e.g, w), trials, seed)
}

pub fn is_fit(e: &EmbeddingDatum, xi: &Coweight, w: &WeylElement, trials: usize, seed: u64) -> Result<bool> {
    Ok(generic_orbit_dim(e, xi, w, trials, seed)?.fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s, Isogeny::SimplyConnected).unwrap()
    }

    fn jacobi_all(g: &RootDatum) {
        let alg = ChevalleyAlgebra::build(g, DEFAULT_DIM_CAP).unwrap();
        let d = alg.dim();
        for a in 0..d {
            for b in a..d {
                for c in b..d {
                    assert!(alg.jacobi_defect(a, b, c).iter().all(Zero::is_zero), "{} at {a},{b},{c}", g.name());
                }
            }
        }
    }

    #[test]
    fn sl2_relations() {
        let g = rd("A1");
        let alg = ChevalleyAlgebra::build(&g, DEFAULT_DIM_CAP).unwrap();
        let (e, f, h) = (0, 1, 2);
        assert_eq!(alg.bracket_basis(h, e), &[(e, 2)]);
        assert_eq!(alg.bracket_basis(h, f), &[(f, -2)]);
        let ef = alg.bracket_basis(e, f);
        assert_eq!(ef.len(), 1);
        assert_eq!(ef[0].0, h);
    }

    #[test]
    fn jacobi_small_ranks() {
        for s in ["A2", "B2", "G2", "A1xA1", "A3", "B3", "C3"] {
            jacobi_all(&rd(s));
        }
    }

    #[test]
    fn root_vectors_pair_to_coroots() {
        for s in ["B3", "C3", "G2", "F4", "D4"] {
            let g = rd(s);
            let alg = ChevalleyAlgebra::build(&g, DEFAULT_DIM_CAP).unwrap();
            for (k, root) in g.positive.iter().enumerate() {
                let h = alg.bracket(&alg.basis_vector(k), &alg.basis_vector(alg.npos + k));
                let hv: Vec<Q> = (0..g.rank()).map(|i| h[alg.cartan_index(i)].clone()).collect();
                let cr = linalg::qvec(&root.coroot);
                assert!(linalg::same_ray(&hv, &cr) || linalg::same_ray(&hv, &cr.iter().map(|x| -x).collect::<Vec<_>>()), "{s}");
            }
        }
    }

    #[test]
    fn cross_factor_brackets_vanish() {
        let g = rd("A1xA1");
        let alg = ChevalleyAlgebra::build(&g, DEFAULT_DIM_CAP).unwrap();
        for i in [0, 2] {
            for j in [1, 3] {
                assert!(alg.bracket_basis(i, j).is_empty());
            }
        }
    }

    #[test]
    fn principal_image_is_sl2() {
        let e = EmbeddingDatum::principal(rd("A2")).unwrap();
        let alg = ChevalleyAlgebra::build(&e.g, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(embedded_subalgebra(&alg, &e).unwrap().len(), 3);
        let d = EmbeddingDatum::diagonal(&rd("B2"), 2).unwrap();
        let alg = ChevalleyAlgebra::build(&d.g, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(embedded_subalgebra(&alg, &d).unwrap().len(), 10);
    }

    #[test]
    fn principal_sweeps() {
        let e = EmbeddingDatum::principal(rd("A2")).unwrap();
        let oracle = RankOracle::new(&e, DEFAULT_DIM_CAP).unwrap();
        let levi = e.xi_max().unwrap().remove(0);
        let s1 = e.g.element_from_word(&[0]);
        let r = oracle.orbit_dim(&levi, &s1, 5, 7).unwrap();
        assert_eq!((r.dim, r.codim, r.fit, r.stabilized), (2, 1, true, true));
        let one = e.g.identity();
        let r = oracle.orbit_dim(&levi, &one, 5, 7).unwrap();
        assert_eq!((r.dim, r.fit), (1, true));
        assert_eq!(oracle.codim_from_sweeps(&[1, 1], 3, 1).unwrap(), Some(1));
    }

    #[test]
    fn diagonal_identity_pair_is_fit() {
        let a1 = rd("A1");
        let e = EmbeddingDatum::diagonal(&a1, 2).unwrap();
        let xi = Coweight::from_ints(&[1]);
        let r = generic_orbit_dim(&e, &xi, &e.g.identity(), 3, 0).unwrap();
        assert_eq!((r.dim, r.expected, r.fit), (1, 1, true));
    }

    #[test]
    fn too_few_trials_rejected() {
        let e = EmbeddingDatum::principal(rd("A2")).unwrap();
        let xi = e.xi_max().unwrap()[0].xi.clone();
        assert!(matches!(generic_orbit_dim(&e, &xi, &e.g.identity(), 2, 0), Err(Error::Validation(_))));
    }

    #[test]
    fn chain_descends_by_one() {
        let g = rd("A3");
        for w in g.enumerate_weyl(100).unwrap().iter() {
            let ch = inverted_chain(&g, w);
            assert_eq!(ch.len(), w.length() + 1);
            for (j, x) in ch.iter().enumerate() {
                assert_eq!(x.length(), w.length() - j);
            }
        }
    }
}
