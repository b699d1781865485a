//! Root systems and Weyl groups in exact integer coordinates.
//!
//! Conventions: `cartan[i][j] = alpha_i(alpha_j^vee)`, so row `i` is the simple
//! root `alpha_i` written in fundamental weights. Weights are stored in
//! fundamental-weight coordinates and coweights in simple-coroot coordinates,
//! which makes the pairing a plain dot product.

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return Err(Error::InvalidType(format!("unknown series {other:?}"))),
        })
    }
}

/// One simple factor, e.g. `A2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub series: Series,
    pub rank: usize,
}

impl Factor {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{series:?}{rank}")));
        }
        Ok(Self { series, rank })
    }

    /// Parses `"A2"`, `"b3"`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let rank = tail
            .parse()
            .map_err(|_| Error::InvalidType(format!("bad rank in {s:?}")))?;
        Factor::new(Series::parse(head)?, rank)
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Series::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Series::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Series::G => link(0, 1),
        }
        match self.series {
            Series::B => c[n - 2][n - 1] = -2,
            Series::C => c[n - 1][n - 2] = -2,
            Series::F => c[1][2] = -2,
            Series::G => c[1][0] = -3,
            _ => {}
        }
        c
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match (self.series, self.rank) {
            (Series::A, _) => fact(n + 1),
            (Series::B | Series::C, _) => (1u128 << n) * fact(n),
            (Series::D, _) => (1u128 << (n - 1)) * fact(n),
            (Series::E, 6) => 51_840,
            (Series::E, 7) => 2_903_040,
            (Series::E, _) => 696_729_600,
            (Series::F, _) => 1_152,
            (Series::G, _) => 12,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.series, n) {
            (Series::A, _) => n * (n + 1) / 2,
            (Series::B | Series::C, _) => n * n,
            (Series::D, _) => n * (n - 1),
            (Series::E, 6) => 36,
            (Series::E, 7) => 63,
            (Series::E, _) => 120,
            (Series::F, _) => 24,
            (Series::G, _) => 6,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

/// Which cocharacter lattice the group carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    #[default]
    SimplyConnected,
    Adjoint,
}

/// A positive root with its weight and coroot coordinates cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    /// simple-root coordinates
    pub coeffs: Vec<i64>,
    /// fundamental-weight coordinates, `alpha(alpha_j^vee)`
    pub weight: Vec<i64>,
    /// simple-coroot coordinates of `alpha^vee`
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn pair(&self, xi: &Coweight) -> Q {
        self.0
            .iter()
            .zip(&xi.0)
            .fold(Q::zero(), |acc, (&a, x)| acc + q(a) * x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<Q>);

impl Coweight {
    pub fn from_ints(v: &[i64]) -> Self {
        Coweight(linalg::qvec(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan: Vec<Vec<i64>>,
    pub factors: Vec<Factor>,
    /// simple-root indices of each connected component, parallel to `factors`
    pub components: Vec<Vec<usize>>,
    pub isogeny: Isogeny,
    pub positive: Vec<Root>,
    /// `|long root|^2 / |alpha_i|^2`, so the coweight form is `ratio_i * cartan[i][j]`
    pub ratio: Vec<i64>,
}

impl RootDatum {
    pub fn build(factors: &[Factor], isogeny: Isogeny) -> Result<Self> {
        let n: usize = factors.iter().map(|f| f.rank).sum();
        let mut cartan = vec![vec![0; n]; n];
        let mut off = 0;
        for f in factors {
            for (i, row) in f.cartan().into_iter().enumerate() {
                cartan[off + i][off..off + f.rank].copy_from_slice(&row);
            }
            off += f.rank;
        }
        let mut d = Self::from_cartan(cartan, isogeny)?;
        // keep the caller's labels (B2 and C2 share a Cartan matrix up to order)
        d.factors = factors.to_vec();
        Ok(d)
    }

    pub fn parse(spec: &str, isogeny: Isogeny) -> Result<Self> {
        let factors = spec
            .split(['x', '*', ' ', ','])
            .filter(|s| !s.is_empty())
            .map(Factor::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::build(&factors, isogeny)
    }

    /// Any (possibly empty) Cartan matrix of finite type.
    pub fn from_cartan(cartan: Vec<Vec<i64>>, isogeny: Isogeny) -> Result<Self> {
        let n = cartan.len();
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n || row[i] != 2 {
                return Err(Error::InvalidType("Cartan diagonal must be 2".into()));
            }
            for j in 0..n {
                if i != j && (row[j] > 0 || (row[j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidType("bad off-diagonal Cartan entry".into()));
                }
            }
        }
        let ratio = length_ratios(&cartan)?;
        let positive = enumerate_roots(&cartan)?;
        let components = connected_components(&cartan);
        let mut d = RootDatum {
            cartan,
            factors: Vec::new(),
            components,
            isogeny,
            positive,
            ratio,
        };
        d.factors = d
            .components
            .iter()
            .map(|c| d.classify(c))
            .collect::<Result<_>>()?;
        Ok(d)
    }

    fn classify(&self, comp: &[usize]) -> Result<Factor> {
        let n = comp.len();
        let count = self
            .positive
            .iter()
            .filter(|r| comp.iter().any(|&i| r.coeffs[i] != 0))
            .count();
        let laced = comp.iter().all(|&i| self.ratio[i] == 1);
        let series = if laced {
            if count == n * (n + 1) / 2 {
                Series::A
            } else if count == n * (n - 1) {
                Series::D
            } else {
                Series::E
            }
        } else if n == 2 && count == 6 {
            Series::G
        } else if n == 4 && count == 24 {
            Series::F
        } else {
            // B has a single short simple root, C a single long one
            let short = comp.iter().filter(|&&i| self.ratio[i] > 1).count();
            if short == 1 {
                Series::B
            } else {
                Series::C
            }
        };
        let f = Factor::new(series, n)?;
        if f.positive_root_count() != count {
            return Err(Error::InvalidType("Cartan matrix is not of finite type".into()));
        }
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.num_positive()
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(Factor::weyl_order).product()
    }

    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Twice `rho^vee` in coroot coordinates (the sum of positive coroots).
    pub fn two_rho_vee(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        for r in &self.positive {
            for (x, c) in v.iter_mut().zip(&r.coroot) {
                *x += c;
            }
        }
        v
    }

    /// Fundamental coweights as columns of the inverse Cartan matrix.
    pub fn fundamental_coweights(&self) -> Vec<Coweight> {
        let inv = self.cartan_inverse();
        (0..self.rank())
            .map(|i| Coweight(inv.iter().map(|row| row[i].clone()).collect()))
            .collect()
    }

    pub fn cartan_q(&self) -> Vec<Vec<Q>> {
        self.cartan.iter().map(|r| linalg::qvec(r)).collect()
    }

    pub fn cartan_inverse(&self) -> Vec<Vec<Q>> {
        linalg::inverse(&self.cartan_q()).expect("Cartan matrices are invertible")
    }

    /// Values `alpha_i(x)` of the simple roots on a coweight.
    pub fn simple_values(&self, x: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.cartan_q(), x)
    }

    pub fn root_value(&self, root: &Root, x: &[Q]) -> Q {
        root.weight
            .iter()
            .zip(x)
            .fold(Q::zero(), |acc, (&a, b)| acc + q(a) * b)
    }

    pub fn is_dominant_coweight(&self, x: &[Q]) -> bool {
        self.simple_values(x).iter().all(|v| !v.is_negative())
    }

    /// Symmetric invariant form on coweights, `K = diag(ratio) * cartan`,
    /// normalized so short coroots have square length 2.
    pub fn coweight_form(&self) -> Vec<Vec<i64>> {
        self.cartan
            .iter()
            .zip(&self.ratio)
            .map(|(row, &r)| row.iter().map(|c| c * r).collect())
            .collect()
    }

    /// Scales a nonzero rational coweight to the indivisible lattice point on its ray.
    pub fn indivisible(&self, x: &[Q]) -> Coweight {
        match self.isogeny {
            Isogeny::SimplyConnected => Coweight(linalg::qvec(&linalg::primitive(x))),
            Isogeny::Adjoint => {
                let vals = linalg::primitive(&self.simple_values(x));
                let inv = self.cartan_inverse();
                Coweight(linalg::mat_vec(&inv, &linalg::qvec(&vals)))
            }
        }
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive.iter().position(|r| r.coeffs == coeffs)
    }

    // ---- reflections ----

    pub fn reflect_weight(&self, i: usize, lam: &mut [i64]) {
        let c = lam[i];
        if c != 0 {
            for (x, a) in lam.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    pub fn reflect_weight_q(&self, i: usize, lam: &mut [Q]) {
        let c = lam[i].clone();
        if !c.is_zero() {
            for (x, &a) in lam.iter_mut().zip(&self.cartan[i]) {
                *x -= &c * q(a);
            }
        }
    }

    /// `s_i` on simple-root coordinates of a root.
    pub fn reflect_root(&self, i: usize, c: &mut [i64]) {
        let v: i64 = c.iter().zip(&self.cartan).map(|(x, row)| x * row[i]).sum();
        c[i] -= v;
    }

    /// `s_i` on a coweight: `x -> x - alpha_i(x) alpha_i^vee`.
    pub fn reflect_coweight(&self, i: usize, x: &mut [Q]) {
        let v = self.cartan[i]
            .iter()
            .zip(x.iter())
            .fold(Q::zero(), |acc, (&a, b)| acc + q(a) * b);
        x[i] -= v;
    }

    /// Reflection in an arbitrary positive root acting on weights.
    pub fn reflect_weight_by(&self, root: &Root, lam: &mut [i64]) {
        let c = linalg::dot_i(lam, &root.coroot);
        if c != 0 {
            for (x, a) in lam.iter_mut().zip(&root.weight) {
                *x -= c * a;
            }
        }
    }

    pub fn act(&self, w: &WeylElement, lam: &[i64]) -> Vec<i64> {
        let mut v = lam.to_vec();
        for &i in w.word.iter().rev() {
            self.reflect_weight(i, &mut v);
        }
        v
    }

    pub fn act_q(&self, w: &WeylElement, lam: &[Q]) -> Vec<Q> {
        let mut v = lam.to_vec();
        for &i in w.word.iter().rev() {
            self.reflect_weight_q(i, &mut v);
        }
        v
    }

    pub fn act_root(&self, w: &WeylElement, c: &[i64]) -> Vec<i64> {
        let mut v = c.to_vec();
        for &i in w.word.iter().rev() {
            self.reflect_root(i, &mut v);
        }
        v
    }

    pub fn act_coweight(&self, w: &WeylElement, x: &[Q]) -> Vec<Q> {
        let mut v = x.to_vec();
        for &i in w.word.iter().rev() {
            self.reflect_coweight(i, &mut v);
        }
        v
    }

    /// `Phi_w = {alpha > 0 : w alpha < 0}`, as indices into `positive`.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<usize> {
        let inv_rho = self.act(&w.inverse_word(), &self.rho().0);
        (0..self.positive.len())
            .filter(|&k| linalg::dot_i(&inv_rho, &self.positive[k].coroot) < 0)
            .collect()
    }

    /// `Psi_w = Delta^- cap w Delta^+`, returned as negative roots in simple-root coordinates.
    pub fn inverted_set(&self, w: &WeylElement) -> Vec<Vec<i64>> {
        self.positive
            .iter()
            .filter(|r| linalg::dot_i(&w.rho, &r.coroot) < 0)
            .map(|r| r.coeffs.iter().map(|x| -x).collect())
            .collect()
    }

    /// Orders `Psi_w` so that peeling `beta_1, beta_2, ...` off the left drops
    /// the length by one each time; `beta_j` is simple for `w_j Delta^+`.
    pub fn order_inverted_set(&self, w: &WeylElement) -> Vec<Vec<i64>> {
        let mut cur = w.clone();
        let mut out = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| {
            let mut e = vec![0; self.rank()];
            e[i] = 1;
            self.act_root(&cur, &e).iter().any(|&x| x < 0)
        }) {
            let mut e = vec![0; self.rank()];
            e[i] = 1;
            out.push(self.act_root(&cur, &e));
            let mut word = cur.word.clone();
            word.push(i);
            cur = self.element_from_word(&word);
        }
        out
    }

    /// Builds an element from any word (reduced or not) and normalizes it.
    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        let mut rho = self.rho().0;
        for &i in word.iter().rev() {
            self.reflect_weight(i, &mut rho);
        }
        self.element_from_rho(rho)
    }

    /// The element `w` with `w rho = rho_image`; the word is the lex-least reduced one.
    pub fn element_from_rho(&self, rho_image: Vec<i64>) -> WeylElement {
        let mut word = Vec::new();
        let mut v = rho_image.clone();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            word.push(i);
            self.reflect_weight(i, &mut v);
        }
        WeylElement {
            word,
            rho: rho_image,
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            rho: self.rho().0,
        }
    }

    pub fn longest(&self) -> WeylElement {
        self.element_from_rho(self.rho().0.iter().map(|x| -x).collect())
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        self.element_from_rho(self.act(a, &b.rho))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        self.element_from_word(&w.inverse_word().word)
    }

    /// Positive roots of the subsystem spanned by the given simple roots.
    pub fn standard_levi(&self, simple: &[usize]) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&k| {
                self.positive[k]
                    .coeffs
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || simple.contains(&i))
            })
            .collect()
    }

    fn check_levi(&self, levi: &[usize]) -> Result<()> {
        let set: BTreeSet<&Vec<i64>> = levi.iter().map(|&k| &self.positive[k].coeffs).collect();
        for &a in levi {
            for &b in levi {
                let ca = &self.positive[a].coeffs;
                let cb = &self.positive[b].coeffs;
                let sum: Vec<i64> = ca.iter().zip(cb).map(|(x, y)| x + y).collect();
                if self.root_index(&sum).is_some() && !set.contains(&sum) {
                    return Err(Error::Validation("Levi root set is not closed".into()));
                }
                let diff: Vec<i64> = ca.iter().zip(cb).map(|(x, y)| x - y).collect();
                let neg: Vec<i64> = diff.iter().map(|x| -x).collect();
                if (self.root_index(&diff).is_some() && !set.contains(&diff))
                    || (self.root_index(&neg).is_some() && !set.contains(&neg))
                {
                    return Err(Error::Validation("Levi root set is not symmetric".into()));
                }
            }
        }
        Ok(())
    }

    /// Minimal and maximal representatives of `W_L w` for the Levi subsystem
    /// whose positive roots are `levi` (indices into `positive`).
    pub fn coset_reps(&self, levi: &[usize], w: &WeylElement) -> Result<(WeylElement, WeylElement)> {
        self.check_levi(levi)?;
        Ok((self.coset_min(levi, w), self.coset_max(levi, w)))
    }

    pub fn coset_min(&self, levi: &[usize], w: &WeylElement) -> WeylElement {
        let mut v = w.rho.clone();
        while let Some(&k) = levi
            .iter()
            .find(|&&k| linalg::dot_i(&v, &self.positive[k].coroot) < 0)
        {
            self.reflect_weight_by(&self.positive[k], &mut v);
        }
        self.element_from_rho(v)
    }

    pub fn coset_max(&self, levi: &[usize], w: &WeylElement) -> WeylElement {
        let mut v = w.rho.clone();
        while let Some(&k) = levi
            .iter()
            .find(|&&k| linalg::dot_i(&v, &self.positive[k].coroot) > 0)
        {
            self.reflect_weight_by(&self.positive[k], &mut v);
        }
        self.element_from_rho(v)
    }

    /// Bruhat order `u <= w`.
    pub fn bruhat_le(&self, u: &WeylElement, w: &WeylElement) -> bool {
        let mut u = u.rho.clone();
        let mut w = w.rho.clone();
        // lifting property: if s w < w then u <= w iff min(u, s u) <= s w
        while let Some(i) = w.iter().position(|&x| x < 0) {
            self.reflect_weight(i, &mut w);
            if u[i] < 0 {
                self.reflect_weight(i, &mut u);
            }
        }
        u.iter().all(|&x| x > 0)
    }

    pub fn enumerate_weyl(&self, cap: u64) -> Result<WeylGroup> {
        let order = self.weyl_order();
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                what: "Weyl group order",
                cap,
                estimate: u64::try_from(order).unwrap_or(u64::MAX),
            });
        }
        let mut elems = vec![self.identity()];
        let mut index = HashMap::new();
        index.insert(elems[0].rho.clone(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next: Vec<WeylElement> = Vec::new();
            let mut seen = BTreeSet::new();
            for &k in &level {
                for i in 0..self.rank() {
                    if elems[k].rho[i] > 0 {
                        let mut v = elems[k].rho.clone();
                        self.reflect_weight(i, &mut v);
                        if seen.insert(v.clone()) {
                            next.push(self.element_from_rho(v));
                        }
                    }
                }
            }
            next.sort_by(|a, b| a.word.cmp(&b.word));
            level.clear();
            for e in next {
                index.insert(e.rho.clone(), elems.len());
                level.push(elems.len());
                elems.push(e);
            }
        }
        if elems.len() as u128 != order {
            return Err(Error::Invariant(format!(
                "enumerated {} Weyl elements, expected {order}",
                elems.len()
            )));
        }
        Ok(WeylGroup { elems, index })
    }
}

/// A Weyl group element, keyed by the image of `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    /// lex-least reduced word, `w = s_{word[0]} s_{word[1]} ...`
    pub word: Vec<usize>,
    /// `w rho` in fundamental-weight coordinates
    pub rho: Vec<i64>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Left descents are the negative coordinates of `w rho`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.rho[i] < 0
    }

    /// The reversed word as an (unnormalized) element; only the word is meaningful.
    fn inverse_word(&self) -> WeylElement {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            rho: Vec::new(),
        }
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "1".into();
        }
        self.word
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join("")
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elems: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, WeylElement> {
        self.elems.iter()
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.rho).copied()
    }

    pub fn max_length(&self) -> usize {
        self.elems.last().map_or(0, WeylElement::length)
    }
}

fn connected_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Squared-length ratios from `cartan[i][j] l_j = cartan[j][i] l_i`.
fn length_ratios(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut len: Vec<Option<Q>> = vec![None; n];
    let mut out = vec![1i64; n];
    for comp in connected_components(cartan) {
        len[comp[0]] = Some(q(1));
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            let li = len[i].clone().unwrap();
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    let lj = &li * q(cartan[j][i]) / q(cartan[i][j]);
                    match &len[j] {
                        Some(x) if *x != lj => {
                            return Err(Error::InvalidType("Cartan matrix is not symmetrizable".into()))
                        }
                        Some(_) => {}
                        None => {
                            len[j] = Some(lj);
                            stack.push(j);
                        }
                    }
                }
            }
        }
        let longest = comp.iter().map(|&i| len[i].clone().unwrap()).max().unwrap();
        for &i in &comp {
            let r = &longest / len[i].as_ref().unwrap();
            if !r.is_integer() {
                return Err(Error::InvalidType("non-integral length ratio".into()));
            }
            out[i] = num_traits::ToPrimitive::to_i64(&r.to_integer()).unwrap();
        }
    }
    Ok(out)
}

/// Positive roots by closure under simple reflections, sorted by height.
fn enumerate_roots(cartan: &[Vec<i64>]) -> Result<Vec<Root>> {
    let n = cartan.len();
    let weight_of = |c: &[i64]| -> Vec<i64> {
        (0..n).map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum()).collect()
    };
    let mut found: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        found.push((e.clone(), e));
    }
    let mut k = 0;
    while k < found.len() {
        let (c, cv) = found[k].clone();
        let wt = weight_of(&c);
        for i in 0..n {
            // s_i(alpha) = alpha - alpha(alpha_i^vee) alpha_i, coroot likewise
            let mut c2 = c.clone();
            c2[i] -= wt[i];
            if c2.iter().all(|&x| x >= 0) && c2.iter().any(|&x| x > 0) && seen.insert(c2.clone()) {
                let cv_val: i64 = (0..n).map(|j| cartan[i][j] * cv[j]).sum();
                let mut cv2 = cv.clone();
                cv2[i] -= cv_val;
                found.push((c2, cv2));
            }
        }
        k += 1;
        if found.len() > 100_000 {
            return Err(Error::InvalidType("root system is not finite".into()));
        }
    }
    let mut roots: Vec<Root> = found
        .into_iter()
        .map(|(c, cv)| Root {
            weight: weight_of(&c),
            coeffs: c,
            coroot: cv,
        })
        .collect();
    roots.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| b.coeffs.cmp(&a.coeffs))
    });
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn root_counts_and_orders() {
        for (s, np, w) in [
            ("A1", 1, 2),
            ("A2", 3, 6),
            ("A1xA1", 2, 4),
            ("B2", 4, 8),
            ("G2", 6, 12),
            ("B3", 9, 48),
            ("C3", 9, 48),
            ("D4", 12, 192),
            ("F4", 24, 1152),
        ] {
            let d = rd(s);
            assert_eq!(d.num_positive(), np, "{s}");
            assert_eq!(d.enumerate_weyl(10_000).unwrap().len(), w, "{s}");
        }
        assert_eq!(rd("E6").num_positive(), 36);
        assert_eq!(rd("E8").num_positive(), 120);
    }

    #[test]
    fn rejects_bad_types() {
        assert!(Factor::parse("E5").is_err());
        assert!(Factor::parse("G3").is_err());
        assert!(Factor::parse("Q2").is_err());
    }

    #[test]
    fn cap_is_reported() {
        let err = rd("A5").enumerate_weyl(100).unwrap_err();
        assert_eq!(err, Error::CapExceeded { what: "Weyl group order", cap: 100, estimate: 720 });
    }

    #[test]
    fn first_elements_of_a2() {
        let d = rd("A2");
        let w = d.enumerate_weyl(100).unwrap();
        let words: Vec<Vec<usize>> = w.iter().map(|e| e.word.clone()).collect();
        assert_eq!(
            words,
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]]
        );
    }

    #[test]
    fn coweight_form_is_symmetric() {
        for s in ["B3", "C3", "F4", "G2", "A3xB2"] {
            let k = rd(s).coweight_form();
            for i in 0..k.len() {
                for j in 0..k.len() {
                    assert_eq!(k[i][j], k[j][i], "{s}");
                }
            }
        }
    }

    #[test]
    fn classification_of_cartan_blocks() {
        for s in ["B3", "C4", "D5", "E7", "F4", "G2", "A4"] {
            let d = rd(s);
            let again = RootDatum::from_cartan(d.cartan.clone(), Isogeny::SimplyConnected).unwrap();
            assert_eq!(again.factors, d.factors);
        }
    }

    #[test]
    fn minimal_coset_reps_for_first_fundamental_coweight() {
        // W_xi = <s2> in A2; s1s2 qualifies (its only left descent is s1), s2s1 does not
        let d = rd("A2");
        let w = d.enumerate_weyl(100).unwrap();
        let levi = d.standard_levi(&[1]);
        let mins: BTreeSet<Vec<usize>> = w.iter().map(|e| d.coset_min(&levi, e).word).collect();
        let expected: BTreeSet<Vec<usize>> = [vec![], vec![0], vec![0, 1]].into_iter().collect();
        assert_eq!(mins, expected);
    }

    #[test]
    fn simple_inverted_sets() {
        let d = rd("A2");
        assert!(d.inverted_set(&d.identity()).is_empty());
        assert_eq!(d.inverted_set(&d.element_from_word(&[0])), vec![vec![-1, 0]]);
        assert_eq!(d.inverted_set(&d.longest()).len(), 3);
        assert_eq!(d.order_inverted_set(&d.element_from_word(&[0])), vec![vec![-1, 0]]);
    }

    #[test]
    fn bruhat_small_cases() {
        let d = rd("A2");
        let s1 = d.element_from_word(&[0]);
        let s2 = d.element_from_word(&[1]);
        let s1s2 = d.element_from_word(&[0, 1]);
        assert!(d.bruhat_le(&s1, &s1s2));
        assert!(d.bruhat_le(&s2, &s1s2));
        assert!(!d.bruhat_le(&s1, &s2));
        assert!(d.bruhat_le(&d.identity(), &d.longest()));
        assert!(!d.bruhat_le(&d.longest(), &s1s2));
    }

    #[test]
    fn adjoint_indivisibility() {
        let d = RootDatum::parse("A1", Isogeny::Adjoint).unwrap();
        // omega^vee = alpha^vee / 2 is a lattice point in the adjoint case
        let x = d.indivisible(&[q(4)]);
        assert_eq!(x.0, vec![Q::new(1.into(), 2.into())]);
        let sc = rd("A1").indivisible(&[q(4)]);
        assert_eq!(sc.0, vec![q(1)]);
    }
}
