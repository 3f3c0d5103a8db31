//! Plücker coordinates of lines, degree-two Plücker monomials and the
//! `D`-term basis of bidegree (2,2) sections.
//!
//! Indices follow the coefficient convention of binary forms:
//! `f = Σ A_a x^{ℓ-a} y^a`, `g = Σ B_b x^{ℓ-b} y^b`,
//! `h = Σ C_c x^{d-2ℓ-c} y^c`, and `q_{ab} = A_a B_b - A_b B_a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{LeftInverse, Matrix};
use crate::poly::{fmt_rational, rat, MultiPoly, Rational, Roster};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PluckerVar {
    pub alpha: u32,
    pub beta: u32,
}

impl PluckerVar {
    pub fn new(alpha: u32, beta: u32) -> Result<Self> {
        if alpha >= beta {
            return Err(Error::OutOfRange(format!("Plücker variable q{alpha}{beta} needs α < β")));
        }
        Ok(PluckerVar { alpha, beta })
    }

    pub fn name(&self, prefix: &str) -> String {
        if self.beta < 10 {
            format!("{prefix}{}{}", self.alpha, self.beta)
        } else {
            format!("{prefix}{}_{}", self.alpha, self.beta)
        }
    }
}

fn plucker_vars(ell: u32) -> Vec<PluckerVar> {
    (0..=ell).flat_map(|a| (a + 1..=ell).map(move |b| PluckerVar { alpha: a, beta: b })).collect()
}

/// Roster of Plücker variables `prefix_{αβ}` for `0 ≤ α < β ≤ ell`.
pub fn plucker_roster(ell: u32, prefix: &str) -> Roster {
    Roster::new(plucker_vars(ell).iter().map(|v| v.name(prefix))).expect("distinct names")
}

/// The quadratic Plücker relations `p_{αβ}p_{γδ} - p_{αγ}p_{βδ} + p_{αδ}p_{βγ}`
/// for `α < β < γ < δ ≤ n`, in lexicographic order of the index quadruple.
pub fn plucker_relations(n: u32) -> Vec<MultiPoly> {
    let roster = plucker_roster(n, "p");
    let p = |a: u32, b: u32| MultiPoly::var_named(&roster, &PluckerVar { alpha: a, beta: b }.name("p"));
    let mut out = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    out.push(&(&(&p(a, b) * &p(c, d)) - &(&p(a, c) * &p(b, d))) + &(&p(a, d) * &p(b, c)));
                }
            }
        }
    }
    out
}

/// A product `q_{αβ} q_{γδ}`.
pub type PluckerPair = (PluckerVar, PluckerVar);

/// Degree-two Plücker monomials `q_{αβ}q_{γδ}` with `α ≤ γ ≤ β, δ` (and
/// `β ≤ δ` when `α = γ`), ordered lexicographically on `(α, γ, β, δ)`.
/// They form a basis of the degree-two part of the Plücker coordinate ring.
pub fn basis_b(ell: u32) -> Vec<PluckerPair> {
    let mut out = Vec::new();
    for a in 0..=ell {
        for g in a..=ell {
            for b in (g.max(a + 1))..=ell {
                for d in (g + 1)..=ell {
                    if a == g && b > d {
                        continue;
                    }
                    out.push((PluckerVar { alpha: a, beta: b }, PluckerVar { alpha: g, beta: d }));
                }
            }
        }
    }
    out
}

/// `(1/3)·C(ℓ+2,2)·C(ℓ+1,2)`.
pub fn basis_b_size(ell: u32) -> usize {
    let l = ell as usize;
    (l + 2) * (l + 1) / 2 * ((l + 1) * l / 2) / 3
}

/// Rewrites `sign · q_{ab} q_{cd}` over `basis_b`. Returns `(pair, coeff)`
/// items; empty when a factor is `q_{aa}`.
fn reduce_pair(mut a: u32, mut b: u32, mut c: u32, mut d: u32, mut sign: i64) -> Vec<(PluckerPair, i64)> {
    if a == b || c == d {
        return vec![];
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
        sign = -sign;
    }
    if c > d {
        std::mem::swap(&mut c, &mut d);
        sign = -sign;
    }
    if (c, d) < (a, b) {
        std::mem::swap(&mut a, &mut c);
        std::mem::swap(&mut b, &mut d);
    }
    let pv = |x, y| PluckerVar { alpha: x, beta: y };
    if c <= b {
        return vec![((pv(a, b), pv(c, d)), sign)];
    }
    // a < b < c < d: q_ab q_cd = q_ac q_bd - q_ad q_bc
    vec![((pv(a, c), pv(b, d)), sign), ((pv(a, d), pv(b, c)), -sign)]
}

/// Coordinates of a quadratic polynomial in the Plücker variables (over
/// `plucker_roster(ell, "q")`) with respect to `basis_b(ell)`.
pub fn normal_form_t2(expr: &MultiPoly, ell: u32) -> Result<Vec<Rational>> {
    let roster = plucker_roster(ell, "q");
    expr.roster().check_same(&roster)?;
    let vars = plucker_vars(ell);
    let basis = basis_b(ell);
    let index: HashMap<PluckerPair, usize> = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut out = vec![Rational::zero(); basis.len()];
    for (e, c) in expr.terms() {
        if e.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: e.degree() });
        }
        let mut factors = Vec::with_capacity(2);
        for (i, &k) in e.as_slice().iter().enumerate() {
            for _ in 0..k {
                factors.push(vars[i]);
            }
        }
        let (p, q) = (factors[0], factors[1]);
        for (pair, s) in reduce_pair(p.alpha, p.beta, q.alpha, q.beta, 1) {
            out[index[&pair]] += c * rat(s);
        }
    }
    Ok(out)
}

/// `sign · C_λ C_μ q_{αβ} q_{γδ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DTermRepr", into = "DTermRepr")]
pub struct DTerm {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
    pub lambda: u32,
    pub mu: u32,
    pub sign: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DTermRepr {
    sign: i8,
    pair1: [u32; 2],
    pair2: [u32; 2],
    cvars: [u32; 2],
}

impl TryFrom<DTermRepr> for DTerm {
    type Error = Error;
    fn try_from(r: DTermRepr) -> Result<Self> {
        if r.sign != 1 && r.sign != -1 {
            return Err(Error::Json(format!("sign must be ±1, got {}", r.sign)));
        }
        Ok(DTerm {
            alpha: r.pair1[0],
            beta: r.pair1[1],
            gamma: r.pair2[0],
            delta: r.pair2[1],
            lambda: r.cvars[0],
            mu: r.cvars[1],
            sign: r.sign,
        })
    }
}

impl From<DTerm> for DTermRepr {
    fn from(t: DTerm) -> Self {
        DTermRepr { sign: t.sign, pair1: [t.alpha, t.beta], pair2: [t.gamma, t.delta], cvars: [t.lambda, t.mu] }
    }
}

impl DTerm {
    /// `D(α, β, γ, δ, λ, μ)` with sign `+1`.
    pub const fn new(alpha: u32, beta: u32, gamma: u32, delta: u32, lambda: u32, mu: u32) -> Self {
        DTerm { alpha, beta, gamma, delta, lambda, mu, sign: 1 }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        crate::json::from_json(src)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_json(self)
    }

    fn key(&self) -> [u32; 6] {
        [self.lambda, self.mu, self.alpha, self.gamma, self.beta, self.delta]
    }

    fn unsigned(mut self) -> Self {
        self.sign = 1;
        self
    }

    /// Membership in Σ, ignoring the sign.
    pub fn in_sigma(&self) -> bool {
        let DTerm { alpha: a, beta: b, gamma: g, delta: d, lambda: l, mu: m, .. } = *self;
        a < b && g < d && a <= g && g <= b && g <= d && l <= m && (a != g || b <= d)
    }

    fn check_range(&self, ell: u32, d: u32) -> Result<()> {
        let c = d - 2 * ell;
        if [self.alpha, self.beta, self.gamma, self.delta].iter().any(|&v| v > ell) || self.lambda > c || self.mu > c {
            return Err(Error::OutOfRange(format!("{self} outside ℓ = {ell}, d = {d}")));
        }
        Ok(())
    }

    /// Expansion in `K[A, B, C]`.
    pub fn expand(&self, ring: &AbcRing) -> MultiPoly {
        let p = &(&ring.q(self.alpha, self.beta) * &ring.q(self.gamma, self.delta))
            * &(&ring.c(self.lambda) * &ring.c(self.mu));
        if self.sign < 0 {
            -&p
        } else {
            p
        }
    }
}

impl fmt::Display for DTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "D({},{},{},{},{},{})", self.alpha, self.beta, self.gamma, self.delta, self.lambda, self.mu)
    }
}

/// Polynomial ring `K[A_0..A_ℓ, B_0..B_ℓ, C_0..C_{d-2ℓ}]`.
#[derive(Clone, Debug)]
pub struct AbcRing {
    pub ell: u32,
    pub d: u32,
    roster: Roster,
}

impl AbcRing {
    pub fn new(ell: u32, d: u32) -> Result<Self> {
        check_params(ell, d)?;
        let c = d - 2 * ell;
        let names = (0..=ell)
            .map(|i| format!("A{i}"))
            .chain((0..=ell).map(|i| format!("B{i}")))
            .chain((0..=c).map(|i| format!("C{i}")));
        Ok(AbcRing { ell, d, roster: Roster::new(names)? })
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn a(&self, i: u32) -> MultiPoly {
        MultiPoly::var(&self.roster, i as usize)
    }

    pub fn b(&self, i: u32) -> MultiPoly {
        MultiPoly::var(&self.roster, (self.ell + 1 + i) as usize)
    }

    pub fn c(&self, i: u32) -> MultiPoly {
        MultiPoly::var(&self.roster, (2 * self.ell + 2 + i) as usize)
    }

    pub fn q(&self, a: u32, b: u32) -> MultiPoly {
        &(&self.a(a) * &self.b(b)) - &(&self.a(b) * &self.b(a))
    }

    /// Generic `f`, `g`, `h` as binary forms in `x, y`, with coefficients in
    /// this ring.
    pub fn generic_fgh(&self) -> [Vec<MultiPoly>; 3] {
        let c = self.d - 2 * self.ell;
        [
            (0..=self.ell).map(|i| self.a(i)).collect(),
            (0..=self.ell).map(|i| self.b(i)).collect(),
            (0..=c).map(|i| self.c(i)).collect(),
        ]
    }
}

pub(crate) fn check_params(ell: u32, d: u32) -> Result<()> {
    if ell < 1 || 2 * ell > d {
        return Err(Error::OutOfRange(format!("need 1 ≤ ℓ ≤ d/2, got ℓ = {ell}, d = {d}")));
    }
    Ok(())
}

/// The basis Σ of `Δ_ℓ`, ordered lexicographically on `(λ, μ, α, γ, β, δ)`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaBasis {
    pub ell: u32,
    pub d: u32,
    pub elements: Vec<DTerm>,
    #[serde(skip)]
    index: HashMap<DTerm, usize>,
}

impl SigmaBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, t: &DTerm) -> Option<usize> {
        self.index.get(&t.unsigned()).copied()
    }

    pub fn get(&self, i: usize) -> &DTerm {
        &self.elements[i]
    }

    /// Roster `q_{αβ}…, C_0…` used to print elements of `Δ_ℓ`.
    pub fn qc_roster(&self) -> Roster {
        let c = self.d - 2 * self.ell;
        Roster::new(plucker_vars(self.ell).iter().map(|v| v.name("q")).chain((0..=c).map(|i| format!("C{i}"))))
            .expect("distinct names")
    }
}

/// `dim K[C_0..C_c]_2 = C(c+2, 2)` for `c = d - 2ℓ`.
pub fn sigma_basis_size(ell: u32, d: u32) -> usize {
    let c = (d - 2 * ell) as usize;
    basis_b_size(ell) * ((c + 2) * (c + 1) / 2)
}

pub fn sigma_basis(ell: u32, d: u32) -> Result<SigmaBasis> {
    check_params(ell, d)?;
    let c = d - 2 * ell;
    let bb = basis_b(ell);
    let mut elements = Vec::with_capacity(sigma_basis_size(ell, d));
    for l in 0..=c {
        for m in l..=c {
            for (p, q) in &bb {
                elements.push(DTerm::new(p.alpha, p.beta, q.alpha, q.beta, l, m));
            }
        }
    }
    elements.sort_by_key(DTerm::key);
    let index = elements.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    Ok(SigmaBasis { ell, d, elements, index })
}

/// An element of `Δ_ℓ` in coordinates over a [`SigmaBasis`]; only nonzero
/// coordinates are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaElement {
    coords: BTreeMap<usize, Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordRepr {
    index: usize,
    #[serde(flatten)]
    value: crate::json::RatRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaRepr {
    coords: Vec<CoordRepr>,
}

impl Serialize for DeltaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DeltaRepr { coords: self.coords.iter().map(|(&index, v)| CoordRepr { index, value: v.into() }).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DeltaElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DeltaRepr::deserialize(d)?;
        let mut out = DeltaElement::zero();
        for c in repr.coords {
            let v = c.value.to_rational().map_err(D::Error::custom)?;
            out.add_coord(c.index, &v);
        }
        Ok(out)
    }
}

impl DeltaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut out = Self::zero();
        for (i, v) in coords {
            out.add_coord(i, &v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coordinates in increasing index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().map(|(&i, v)| (i, v))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_coord(&mut self, i: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.coords.entry(i).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.coords.remove(&i);
        }
    }

    pub fn add(&self, other: &DeltaElement) -> DeltaElement {
        let mut out = self.clone();
        for (i, v) in other.support() {
            out.add_coord(i, v);
        }
        out
    }

    pub fn sub(&self, other: &DeltaElement) -> DeltaElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> DeltaElement {
        if c.is_zero() {
            return Self::zero();
        }
        DeltaElement { coords: self.coords.iter().map(|(&i, v)| (i, v * c)).collect() }
    }

    /// Dense coordinate vector of length `basis.len()`.
    pub fn dense(&self, basis: &SigmaBasis) -> Vec<Rational> {
        (0..basis.len()).map(|i| self.coord(i)).collect()
    }

    pub fn expand(&self, basis: &SigmaBasis, ring: &AbcRing) -> MultiPoly {
        let mut out = MultiPoly::zero(ring.roster());
        for (i, v) in self.support() {
            out = &out + &basis.get(i).expand(ring).scale(v);
        }
        out
    }

    /// As a polynomial in the Plücker and `C` variables over
    /// [`SigmaBasis::qc_roster`].
    pub fn to_qc_poly(&self, basis: &SigmaBasis) -> MultiPoly {
        let roster = basis.qc_roster();
        let mut out = MultiPoly::zero(&roster);
        for (i, v) in self.support() {
            let t = basis.get(i);
            let q = |a, b| MultiPoly::var_named(&roster, &PluckerVar { alpha: a, beta: b }.name("q"));
            let c = |k: u32| MultiPoly::var_named(&roster, &format!("C{k}"));
            let m = &(&q(t.alpha, t.beta) * &q(t.gamma, t.delta)) * &(&c(t.lambda) * &c(t.mu));
            out = &out + &m.scale(v);
        }
        out
    }

    /// Human-readable form listing terms in basis order, e.g.
    /// `2*q01*q02*C0^2 + q01^2*C0*C1`.
    pub fn display(&self, basis: &SigmaBasis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, v)) in self.support().enumerate() {
            let mono = DeltaElement::from_coords([(i, Rational::one())]).to_qc_poly(basis);
            let neg = v < &Rational::zero();
            let abs = if neg { -v } else { v.clone() };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !abs.is_one() {
                s.push_str(&fmt_rational(&abs));
                s.push('*');
            }
            s.push_str(&mono.to_string());
        }
        s
    }
}

/// Coordinates of `t` over Σ.
pub fn dterm_normalize(t: &DTerm, basis: &SigmaBasis) -> Result<DeltaElement> {
    t.check_range(basis.ell, basis.d)?;
    let (l, m) = if t.lambda <= t.mu { (t.lambda, t.mu) } else { (t.mu, t.lambda) };
    let mut out = DeltaElement::zero();
    for ((p, q), s) in reduce_pair(t.alpha, t.beta, t.gamma, t.delta, i64::from(t.sign)) {
        let term = DTerm::new(p.alpha, p.beta, q.alpha, q.beta, l, m);
        let idx = basis.index_of(&term).expect("reduced term lies in Σ");
        out.add_coord(idx, &rat(s));
    }
    Ok(out)
}

/// `Σ(s,t)` restricted to Σ, or the whole of `Σ(s,t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaSet {
    pub s: u32,
    pub t: u32,
    pub members: Vec<DTerm>,
}

fn index_sums(t: &DTerm) -> (u32, u32) {
    (t.lambda + t.alpha + t.gamma, t.mu + t.beta + t.delta)
}

/// `Λ(s,t)`: members of Σ with `λ+α+γ = s` and `μ+β+δ = t`.
pub fn lambda_set(s: u32, t: u32, basis: &SigmaBasis) -> LambdaSet {
    LambdaSet { s, t, members: basis.elements.iter().filter(|e| index_sums(e) == (s, t)).copied().collect() }
}

/// `Σ(s,t)`: every `D(α,β,γ,δ,λ,μ)` with `α ≠ β`, `γ ≠ δ` and the given
/// index sums, not necessarily in Σ.
pub fn sigma_st(s: u32, t: u32, ell: u32, d: u32) -> Result<LambdaSet> {
    check_params(ell, d)?;
    let c = d - 2 * ell;
    let mut members = Vec::new();
    for a in 0..=ell {
        for b in 0..=ell {
            for g in 0..=ell {
                for dd in 0..=ell {
                    if a == b || g == dd {
                        continue;
                    }
                    for l in 0..=c {
                        for m in 0..=c {
                            let term = DTerm::new(a, b, g, dd, l, m);
                            if index_sums(&term) == (s, t) {
                                members.push(term);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(LambdaSet { s, t, members })
}

/// An explicit member of `Λ(i, j+1)` for `0 ≤ i < j ≤ d-1`.
pub fn lambda_witness(i: u32, j: u32, ell: u32, d: u32) -> Result<DTerm> {
    check_params(ell, d)?;
    if i >= j || j >= d {
        return Err(Error::OutOfRange(format!("need 0 ≤ i < j ≤ d-1, got ({i}, {j}) with d = {d}")));
    }
    if j < 2 * ell {
        let (m, n) = (i / 2, j.div_ceil(2));
        let (g, dd) = match (i % 2, (j + 1) % 2) {
            (0, 0) => (m, n),
            (0, _) => (m, n + 1),
            (_, 0) => (m + 1, n),
            _ => (m + 1, n + 1),
        };
        Ok(DTerm::new(m, n, g, dd, 0, 0))
    } else {
        let mu = j + 1 - 2 * ell;
        let lambda = i.saturating_sub(2 * (ell - 1));
        let r = i - lambda;
        let alpha = r / 2;
        Ok(DTerm::new(alpha, ell, r - alpha, ell, lambda, mu))
    }
}

/// Extracts Σ-coordinates of elements of `K[A,B,C]` of bidegree (2,2) in
/// `(A,B)` jointly and degree 2 in `C`.
pub struct SigmaExtractor {
    pub basis: SigmaBasis,
    pub ring: AbcRing,
    ab_rows: HashMap<Vec<u32>, usize>,
    solver: LeftInverse,
    sigma_index: HashMap<(u32, u32, usize), usize>,
}

impl SigmaExtractor {
    pub fn new(ell: u32, d: u32) -> Result<Self> {
        let basis = sigma_basis(ell, d)?;
        let ring = AbcRing::new(ell, d)?;
        let bb = basis_b(ell);
        let nab = 2 * (ell as usize + 1);
        let mut ab_rows: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
        for (p, q) in &bb {
            let e = &ring.q(p.alpha, p.beta) * &ring.q(q.alpha, q.beta);
            let mut col = Vec::new();
            for (ex, c) in e.terms() {
                let key = ex.as_slice()[..nab].to_vec();
                let n = ab_rows.len();
                let r = *ab_rows.entry(key).or_insert(n);
                col.push((r, c.clone()));
            }
            cols.push(col);
        }
        let mut m = Matrix::zeros(ab_rows.len(), bb.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (r, v) in col {
                m.set(r, j, v);
            }
        }
        let solver = LeftInverse::new(m)?;
        let pair_index: HashMap<PluckerPair, usize> = bb.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let sigma_index = basis
            .elements
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let pv = |a, b| PluckerVar { alpha: a, beta: b };
                ((t.lambda, t.mu, pair_index[&(pv(t.alpha, t.beta), pv(t.gamma, t.delta))]), k)
            })
            .collect();
        Ok(SigmaExtractor { basis, ring, ab_rows, solver, sigma_index })
    }

    /// Σ-coordinates of `p`; errors when `p` does not lie in `Δ_ℓ`.
    pub fn extract(&self, p: &MultiPoly) -> Result<DeltaElement> {
        p.roster().check_same(self.ring.roster())?;
        let nab = 2 * (self.ring.ell as usize + 1);
        let mut groups: BTreeMap<(u32, u32), Vec<Rational>> = BTreeMap::new();
        let nrows = self.solver.matrix().rows();
        for (e, c) in p.terms() {
            let ex = e.as_slice();
            let cpart: Vec<u32> =
                ex[nab..].iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k as u32, n as usize)).collect();
            let &[l, m] = cpart.as_slice() else {
                return Err(Error::Degenerate(format!("term of C-degree {} outside Δ", cpart.len())));
            };
            let Some(&row) = self.ab_rows.get(&ex[..nab]) else {
                return Err(Error::Degenerate("monomial outside the Plücker span".into()));
            };
            groups.entry((l, m)).or_insert_with(|| vec![Rational::zero(); nrows])[row] = c.clone();
        }
        let mut out = DeltaElement::zero();
        for ((l, m), rhs) in groups {
            let x = self
                .solver
                .solve(&rhs)
                .ok_or_else(|| Error::Degenerate("coefficient not in the Plücker span".into()))?;
            for (k, v) in x.iter().enumerate() {
                out.add_coord(self.sigma_index[&(l, m, k)], v);
            }
        }
        Ok(out)
    }
}
