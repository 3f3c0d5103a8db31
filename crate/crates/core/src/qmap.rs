//! The maps `Q_ℓ(f, g, h) = φ(f²h)·φ(g²h) − φ(fgh)²`, quadratic forms on the
//! Veronese ambient space and the coefficient tables of `Q_ℓ` over the
//! binomial generators `Q_{i,j} = z_i z_{j+1} − z_{i+1} z_j` of the rational
//! normal curve.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::RatRepr;
use crate::linalg::{LeftInverse, Matrix};
use crate::plucker::{check_params, sigma_basis_size, DTerm, DeltaElement, SigmaBasis, SigmaExtractor};
use crate::poly::{rat, ExponentVector, MultiPoly, Rational, Roster};

const MAX_AMBIENT: usize = 4096;

/// `P^r` with coordinates `z_I`, `I ∈ 𝓘_d`, ordered descending-lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseSpace {
    pub n: u32,
    pub d: u32,
    indices: Vec<Vec<u32>>,
    position: HashMap<Vec<u32>, usize>,
    x_roster: Roster,
    z_roster: Roster,
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for a in (0..=total).rev() {
        prefix.push(a);
        compositions(total - a, parts - 1, prefix, out);
        prefix.pop();
    }
}

impl VeroneseSpace {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::OutOfRange(format!("need n ≥ 1 and d ≥ 1, got n = {n}, d = {d}")));
        }
        let size = binomial(u64::from(n + d), u64::from(n));
        if size > MAX_AMBIENT as u64 {
            return Err(Error::OutOfRange(format!("ambient dimension {size} too large")));
        }
        let mut indices = Vec::new();
        compositions(d, n as usize + 1, &mut Vec::new(), &mut indices);
        let position = indices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let x_roster = if n == 1 { Roster::new(["x", "y"])? } else { Roster::indexed("x", n as usize + 1) };
        let z_roster = Roster::indexed("z", indices.len());
        Ok(VeroneseSpace { n, d, indices, position, x_roster, z_roster })
    }

    /// `r`, so that the space is `P^r`.
    pub fn r(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn index_set(&self) -> &[Vec<u32>] {
        &self.indices
    }

    pub fn x_roster(&self) -> &Roster {
        &self.x_roster
    }

    pub fn z_roster(&self) -> &Roster {
        &self.z_roster
    }

    /// Coefficient vector of a degree-`d` form in the `z_I` order.
    fn coords(&self, form: &MultiPoly) -> Result<Vec<Rational>> {
        form.roster().check_same(&self.x_roster)?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (e, c) in form.terms() {
            if e.degree() != self.d {
                return Err(Error::DegreeMismatch { expected: self.d, found: e.degree() });
            }
            out[self.position[e.as_slice()]] = c.clone();
        }
        Ok(out)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `φ`: relabels the monomials of a degree-`d` form as coordinates `z_I`.
pub fn phi(form: &MultiPoly, space: &VeroneseSpace) -> Result<MultiPoly> {
    let c = space.coords(form)?;
    let roster = space.z_roster();
    Ok(MultiPoly::from_terms(
        roster,
        c.into_iter().enumerate().map(|(i, v)| (ExponentVector::unit(roster.len(), i), v)),
    ))
}

/// A quadratic form on the Veronese ambient space, stored as its symmetric
/// Gram matrix: `Σ_{s≤t} β_{s,t} z_s z_t` has `β_{s,s}` on the diagonal and
/// `β_{s,t}/2` off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadForm {
    pub n: u32,
    pub d: u32,
    matrix: Matrix,
}

impl QuadForm {
    pub fn zero(space: &VeroneseSpace) -> Self {
        QuadForm { n: space.n, d: space.d, matrix: Matrix::zeros(space.dim(), space.dim()) }
    }

    pub fn from_matrix(space: &VeroneseSpace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != space.dim() || !matrix.is_symmetric() {
            return Err(Error::Degenerate("Gram matrix must be symmetric of ambient size".into()));
        }
        Ok(QuadForm { n: space.n, d: space.d, matrix })
    }

    /// From a homogeneous quadratic polynomial over the space's `z` roster.
    pub fn from_poly(space: &VeroneseSpace, p: &MultiPoly) -> Result<Self> {
        p.roster().check_same(space.z_roster())?;
        let mut q = QuadForm::zero(space);
        let half = Rational::new(1.into(), 2.into());
        for (e, c) in p.terms() {
            if e.degree() != 2 {
                return Err(Error::DegreeMismatch { expected: 2, found: e.degree() });
            }
            let vars: Vec<usize> =
                e.as_slice().iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
            let (s, t) = (vars[0], vars[1]);
            if s == t {
                q.matrix.set(s, s, c.clone());
            } else {
                q.matrix.set(s, t, c * &half);
                q.matrix.set(t, s, c * &half);
            }
        }
        Ok(q)
    }

    pub fn to_poly(&self, space: &VeroneseSpace) -> MultiPoly {
        let roster = space.z_roster();
        let mut terms = Vec::new();
        for s in 0..self.matrix.rows() {
            for t in s..self.matrix.cols() {
                let v = self.beta(s, t);
                if !v.is_zero() {
                    let e = ExponentVector::unit(roster.len(), s).mul(&ExponentVector::unit(roster.len(), t));
                    terms.push((e, v));
                }
            }
        }
        MultiPoly::from_terms(roster, terms)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Coefficient of `z_s z_t` for `s ≤ t`.
    pub fn beta(&self, s: usize, t: usize) -> Rational {
        let (s, t) = (s.min(t), s.max(t));
        if s == t {
            self.matrix.get(s, s).clone()
        } else {
            self.matrix.get(s, t) * rat(2)
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.rows()).all(|i| self.matrix.row(i).iter().all(Zero::is_zero))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn scale(&self, c: &Rational) -> QuadForm {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j) * c;
                m.set(i, j, v);
            }
        }
        QuadForm { n: self.n, d: self.d, matrix: m }
    }

    /// Scaled so that the first nonzero entry in row-major order is 1.
    pub fn normalized(&self) -> QuadForm {
        for i in 0..self.matrix.rows() {
            if let Some(v) = self.matrix.row(i).iter().find(|v| !v.is_zero()) {
                return self.scale(&v.recip());
            }
        }
        self.clone()
    }

    /// Equality as points of projective space; two zero forms compare equal.
    pub fn projectively_equal(&self, other: &QuadForm) -> bool {
        self.n == other.n && self.d == other.d && self.normalized() == other.normalized()
    }
}

/// True iff `q` pulls back to zero under `z_I ↦ x^I`.
pub fn veronese_vanishing_check(q: &QuadForm, space: &VeroneseSpace) -> bool {
    let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
    let idx = space.index_set();
    for s in 0..space.dim() {
        for t in s..space.dim() {
            let b = q.beta(s, t);
            if b.is_zero() {
                continue;
            }
            let key: Vec<u32> = idx[s].iter().zip(&idx[t]).map(|(a, c)| a + c).collect();
            *acc.entry(key).or_insert_with(Rational::zero) += b;
        }
    }
    acc.values().all(Zero::is_zero)
}

/// The binomial generator `Q_{i,j} = z_i z_{j+1} − z_{i+1} z_j` of the
/// ideal of the rational normal curve of degree `d`.
#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub i: u32,
    pub j: u32,
    pub form: QuadForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorBasis {
    pub d: u32,
    pub generators: Vec<Generator>,
}

/// All index pairs `0 ≤ i < j ≤ d−1` in lexicographic order.
pub fn generator_indices(d: u32) -> Vec<(u32, u32)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

pub fn rnc_generators(d: u32) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("need d ≥ 2, got {d}")));
    }
    let space = VeroneseSpace::new(1, d)?;
    let z = |k: u32| MultiPoly::var(space.z_roster(), k as usize);
    let generators = generator_indices(d)
        .into_iter()
        .map(|(i, j)| {
            let p = &(&z(i) * &z(j + 1)) - &(&z(i + 1) * &z(j));
            Generator { i, j, form: QuadForm::from_poly(&space, &p).expect("quadratic") }
        })
        .collect();
    Ok(GeneratorBasis { d, generators })
}

fn check_form(p: &MultiPoly, degree: u32, what: &str) -> Result<()> {
    if p.is_zero() {
        return Ok(());
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let found = p.total_degree().unwrap_or(0);
    if found != degree {
        return Err(Error::Unsupported(format!("{what} has degree {found}, expected {degree}")));
    }
    Ok(())
}

/// `Q_ℓ(f, g, h)` for forms `f, g` of degree `ℓ` and `h` of degree `d − 2ℓ`.
pub fn q_ell_eval(space: &VeroneseSpace, ell: u32, f: &MultiPoly, g: &MultiPoly, h: &MultiPoly) -> Result<QuadForm> {
    if 2 * ell > space.d {
        return Err(Error::OutOfRange(format!("need 2ℓ ≤ d, got ℓ = {ell}, d = {}", space.d)));
    }
    for p in [f, g, h] {
        p.roster().check_same(space.x_roster())?;
    }
    check_form(f, ell, "f")?;
    check_form(g, ell, "g")?;
    check_form(h, space.d - 2 * ell, "h")?;
    let u = space.coords(&(&(f * f) * h))?;
    let v = space.coords(&(&(g * g) * h))?;
    let w = space.coords(&(&(f * g) * h))?;
    let n = space.dim();
    let half = Rational::new(1.into(), 2.into());
    let mut m = Matrix::zeros(n, n);
    for s in 0..n {
        for t in s..n {
            let val = (&u[s] * &v[t] + &u[t] * &v[s]) * &half - &w[s] * &w[t];
            if !val.is_zero() {
                m.set(s, t, val.clone());
                m.set(t, s, val);
            }
        }
    }
    QuadForm::from_matrix(space, m)
}

/// Values that can fill a coefficient table: Σ-coordinates or rationals.
pub trait TableValue: Clone + PartialEq + std::fmt::Debug {
    const MODE: &'static str;
    fn zero_value() -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, c: &Rational) -> Self;
    fn to_json_value(&self) -> Value;
    fn from_json_value(v: Value) -> Result<Self>;
}

impl TableValue for DeltaElement {
    const MODE: &'static str = "symbolic";
    fn zero_value() -> Self {
        DeltaElement::zero()
    }
    fn vanishes(&self) -> bool {
        DeltaElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        DeltaElement::add(self, other)
    }
    fn times(&self, c: &Rational) -> Self {
        DeltaElement::scale(self, c)
    }
    fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
    fn from_json_value(v: Value) -> Result<Self> {
        serde_json::from_value(v).map_err(|e| Error::Json(e.to_string()))
    }
}

impl TableValue for Rational {
    const MODE: &'static str = "evaluated";
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, c: &Rational) -> Self {
        self * c
    }
    fn to_json_value(&self) -> Value {
        serde_json::to_value(RatRepr::from(self)).expect("serializable")
    }
    fn from_json_value(v: Value) -> Result<Self> {
        serde_json::from_value::<RatRepr>(v).map_err(|e| Error::Json(e.to_string()))?.to_rational()
    }
}

/// Coefficients indexed by pairs, with the convention that any pair outside
/// the stored range reads as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable<V> {
    pub d: u32,
    pub ell: u32,
    entries: BTreeMap<(u32, u32), V>,
}

/// `α_{i,j}` for `0 ≤ i < j ≤ d−1`.
pub type AlphaTable<V> = CoeffTable<V>;
/// `β_{s,t}` for `0 ≤ s ≤ t ≤ d`.
pub type BetaTable<V> = CoeffTable<V>;

impl<V: TableValue> CoeffTable<V> {
    pub fn new(d: u32, ell: u32) -> Self {
        CoeffTable { d, ell, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, i: u32, j: u32, v: V) {
        self.entries.insert((i, j), v);
    }

    /// `α_{i,j}`, zero when `i < 0`, `j ≥ d`, `i ≥ j` or unset.
    pub fn alpha(&self, i: i64, j: i64) -> V {
        if i < 0 || j >= i64::from(self.d) || i >= j {
            return V::zero_value();
        }
        self.entries.get(&(i as u32, j as u32)).cloned().unwrap_or_else(V::zero_value)
    }

    /// `β_{s,t}` read symmetrically.
    pub fn beta(&self, s: u32, t: u32) -> V {
        self.entries.get(&(s.min(t), s.max(t))).cloned().unwrap_or_else(V::zero_value)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &V)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `{"d", "ell", "mode", "entries": [{"i", "j", "value"}]}`.
    pub fn to_json(&self) -> String {
        crate::json::to_json(&self.json_value())
    }

    pub fn json_value(&self) -> Value {
        let entries: Vec<Value> =
            self.entries.iter().map(|(&(i, j), v)| json!({"i": i, "j": j, "value": v.to_json_value()})).collect();
        json!({"d": self.d, "ell": self.ell, "mode": V::MODE, "entries": entries})
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRepr {
    d: u32,
    ell: u32,
    mode: String,
    entries: Vec<EntryRepr>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    i: u32,
    j: u32,
    value: Value,
}

/// A decoded α-table of either mode.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlphaTable {
    Symbolic(AlphaTable<DeltaElement>),
    Evaluated(AlphaTable<Rational>),
}

const MAX_TABLE_D: u32 = 64;

fn decode_table<V: TableValue>(repr: TableRepr, check: impl Fn(&V) -> Result<()>) -> Result<CoeffTable<V>> {
    let mut t = CoeffTable::new(repr.d, repr.ell);
    for e in repr.entries {
        if e.i >= e.j || e.j >= repr.d {
            return Err(Error::Json(format!("entry ({}, {}) outside 0 ≤ i < j ≤ d−1", e.i, e.j)));
        }
        let v = V::from_json_value(e.value)?;
        check(&v)?;
        if t.entries.insert((e.i, e.j), v).is_some() {
            return Err(Error::Json(format!("duplicate entry ({}, {})", e.i, e.j)));
        }
    }
    t.entries.retain(|_, v| !v.vanishes());
    Ok(t)
}

impl AnyAlphaTable {
    pub fn from_json(src: &str) -> Result<Self> {
        let repr: TableRepr = crate::json::from_json(src)?;
        if repr.d > MAX_TABLE_D {
            return Err(Error::Json(format!("d = {} too large", repr.d)));
        }
        check_params(repr.ell, repr.d).map_err(|e| Error::Json(e.to_string()))?;
        match repr.mode.as_str() {
            "symbolic" => {
                let size = sigma_basis_size(repr.ell, repr.d);
                decode_table(repr, |v: &DeltaElement| match v.support().last() {
                    Some((i, _)) if i >= size => Err(Error::Json(format!("Σ index {i} ≥ {size}"))),
                    _ => Ok(()),
                })
                .map(AnyAlphaTable::Symbolic)
            }
            "evaluated" => decode_table(repr, |_: &Rational| Ok(())).map(AnyAlphaTable::Evaluated),
            m => Err(Error::Json(format!("unknown mode {m:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyAlphaTable::Symbolic(t) => t.to_json(),
            AnyAlphaTable::Evaluated(t) => t.to_json(),
        }
    }
}

/// The generators' `β`-coordinates as columns: rows are the pairs
/// `0 ≤ s ≤ t ≤ d`, columns the pairs `(i, j)` of [`generator_indices`].
fn generator_matrix(d: u32) -> (Vec<(u32, u32)>, LeftInverse) {
    let rows: Vec<(u32, u32)> = (0..=d).flat_map(|s| (s..=d).map(move |t| (s, t))).collect();
    let row_of: HashMap<(u32, u32), usize> = rows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let cols = generator_indices(d);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (c, &(i, j)) in cols.iter().enumerate() {
        m.set(row_of[&(i, j + 1)], c, rat(1));
        let (a, b) = (i + 1, j);
        let cur = m.get(row_of[&(a.min(b), a.max(b))], c) - rat(1);
        m.set(row_of[&(a.min(b), a.max(b))], c, cur);
    }
    (rows, LeftInverse::new(m).expect("generators are independent"))
}

/// α from β by solving the linear system of the generator basis.
fn alpha_generic<V: TableValue>(beta: &BetaTable<V>) -> Result<AlphaTable<V>> {
    let d = beta.d;
    let (rows, solver) = generator_matrix(d);
    let m = solver.matrix();
    // least-squares-free: pick independent rows and invert, then verify
    let picked = m.independent_rows();
    let sub = Matrix::from_rows(picked.iter().map(|&r| m.row(r).to_vec()).collect(), m.cols())?;
    let inv = sub.inverse()?;
    let mut alpha = CoeffTable::new(d, beta.ell);
    for (c, &(i, j)) in generator_indices(d).iter().enumerate() {
        let mut acc = V::zero_value();
        for (k, &r) in picked.iter().enumerate() {
            let w = inv.get(c, k);
            if !w.is_zero() {
                let (s, t) = rows[r];
                acc = acc.plus(&beta.beta(s, t).times(w));
            }
        }
        if !acc.vanishes() {
            alpha.insert(i, j, acc);
        }
    }
    // reconstruction Σ α_{i,j} Q_{i,j} = Σ β_{s,t} z_s z_t
    for (r, &(s, t)) in rows.iter().enumerate() {
        let mut acc = V::zero_value();
        for (c, &(i, j)) in generator_indices(d).iter().enumerate() {
            let w = m.get(r, c);
            if !w.is_zero() {
                acc = acc.plus(&alpha.alpha(i64::from(i), i64::from(j)).times(w));
            }
        }
        if acc != beta.beta(s, t) {
            return Err(Error::Degenerate(format!(
                "quadric is not in the span of the generators (β_{{{s},{t}}} mismatch)"
            )));
        }
    }
    Ok(alpha)
}

/// α from β by the partial sums `Σ_{k=0}^{i} β_{k,i+j+1−k}` (for
/// `i + j ≤ d−1`) and `Σ_{k=j+1}^{d} β_{i+j+1−k,k}` (for `i + j ≥ d`).
pub fn alpha_closed_form<V: TableValue>(beta: &BetaTable<V>) -> AlphaTable<V> {
    let d = beta.d;
    let mut alpha = CoeffTable::new(d, beta.ell);
    for (i, j) in generator_indices(d) {
        let v = if i + j < d {
            (0..=i).fold(V::zero_value(), |acc, k| acc.plus(&beta.beta(k, i + j + 1 - k)))
        } else {
            (j + 1..=d).fold(V::zero_value(), |acc, k| acc.plus(&beta.beta(i + j + 1 - k, k)))
        };
        if !v.vanishes() {
            alpha.insert(i, j, v);
        }
    }
    alpha
}

fn beta_of_form(q: &QuadForm) -> BetaTable<Rational> {
    let mut b = CoeffTable::new(q.d, 0);
    for s in 0..=q.d {
        for t in s..=q.d {
            let v = q.beta(s as usize, t as usize);
            if !v.is_zero() {
                b.insert(s, t, v);
            }
        }
    }
    b
}

/// Coefficients of a quadric of `I(C)_2` (for the degree-`d` rational normal
/// curve) over the generators `Q_{i,j}`, by the closed-form partial sums,
/// cross-checked against a direct linear solve.
pub fn express_in_generators(q: &QuadForm, ell: u32) -> Result<AlphaTable<Rational>> {
    if q.n != 1 {
        return Err(Error::Unsupported("generator expansion needs n = 1".into()));
    }
    let mut beta = beta_of_form(q);
    beta.ell = ell;
    let closed = alpha_closed_form(&beta);
    let generic = alpha_generic(&beta)?;
    if closed != generic {
        return Err(Error::Falsified("closed-form α disagrees with the linear solve".into()));
    }
    Ok(closed)
}

/// Reassembles `Σ α_{i,j} Q_{i,j}`.
pub fn quadform_from_alpha(alpha: &AlphaTable<Rational>) -> Result<QuadForm> {
    let gens = rnc_generators(alpha.d)?;
    let space = VeroneseSpace::new(1, alpha.d)?;
    let mut p = MultiPoly::zero(space.z_roster());
    for g in &gens.generators {
        let a = alpha.alpha(i64::from(g.i), i64::from(g.j));
        if !a.is_zero() {
            p = &p + &g.form.to_poly(&space).scale(&a);
        }
    }
    QuadForm::from_poly(&space, &p)
}

/// Coefficient lists of the binary forms `f²h`, `g²h`, `fgh` from generic
/// coefficient lists.
fn convolve(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let roster = a[0].roster();
    let mut out = vec![MultiPoly::zero(roster); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Both coefficient tables of the generic `Q_ℓ` for the rational normal curve
/// of degree `d`, in Σ-coordinates.
pub struct SymbolicTables {
    pub extractor: SigmaExtractor,
    pub alpha: AlphaTable<DeltaElement>,
    pub beta: BetaTable<DeltaElement>,
}

impl SymbolicTables {
    pub fn basis(&self) -> &SigmaBasis {
        &self.extractor.basis
    }
}

/// `P_k`, `G_k`, `H_k`: coefficients of `f²h`, `g²h`, `fgh` for generic
/// `f`, `g`, `h` over `K[A, B, C]`.
pub fn generic_expansions(ext: &SigmaExtractor) -> [Vec<MultiPoly>; 3] {
    let [f, g, h] = ext.ring.generic_fgh();
    let ff = convolve(&convolve(&f, &f), &h);
    let gg = convolve(&convolve(&g, &g), &h);
    let fg = convolve(&convolve(&f, &g), &h);
    [ff, gg, fg]
}

pub fn alpha_table_symbolic(d: u32, ell: u32) -> Result<SymbolicTables> {
    check_params(ell, d)?;
    let ext = SigmaExtractor::new(ell, d)?;
    let [p, g, h] = generic_expansions(&ext);
    let mut beta = CoeffTable::new(d, ell);
    for s in 0..=d as usize {
        for t in s..=d as usize {
            let poly = if s == t {
                &(&p[s] * &g[s]) - &(&h[s] * &h[s])
            } else {
                &(&(&p[s] * &g[t]) + &(&p[t] * &g[s])) - &(&h[s] * &h[t]).scale(&rat(2))
            };
            let v = ext.extract(&poly)?;
            if !v.is_zero() {
                beta.insert(s as u32, t as u32, v);
            }
        }
    }
    let alpha = alpha_generic(&beta)?;
    Ok(SymbolicTables { extractor: ext, alpha, beta })
}

/// One checked instance of a β/α identity.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub identity: &'static str,
    pub index: (u32, u32),
    pub zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<DeltaElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceReport {
    pub d: u32,
    pub ell: u32,
    pub checked: usize,
    pub all_zero: bool,
    pub failures: Vec<Residual>,
}

/// Checks `β_{s,t} = −α_{s−1,t} + α_{s,t−1}` for `0 ≤ s ≤ t ≤ d` and both
/// partial-sum formulas for α, including the overlap at `i + j = d − 1`.
pub fn beta_alpha_recurrences(tables: &SymbolicTables) -> RecurrenceReport {
    let (alpha, beta) = (&tables.alpha, &tables.beta);
    let d = alpha.d;
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut record = |identity: &'static str, index: (u32, u32), residual: DeltaElement| {
        checked += 1;
        if !residual.is_zero() {
            failures.push(Residual { identity, index, zero: false, residual: Some(residual) });
        }
    };
    for s in 0..=d {
        for t in s..=d {
            let (si, ti) = (i64::from(s), i64::from(t));
            let rhs = alpha.alpha(si, ti - 1).sub(&alpha.alpha(si - 1, ti));
            record("beta-from-alpha", (s, t), beta.beta(s, t).sub(&rhs));
        }
    }
    for (i, j) in generator_indices(d) {
        let a = alpha.alpha(i64::from(i), i64::from(j));
        if i + j < d {
            let sum = (0..=i).fold(DeltaElement::zero(), |acc, k| acc.add(&beta.beta(k, i + j + 1 - k)));
            record("alpha-lower-sum", (i, j), a.sub(&sum));
        }
        if i + j + 1 >= d {
            let sum = (j + 1..=d).fold(DeltaElement::zero(), |acc, k| acc.add(&beta.beta(i + j + 1 - k, k)));
            record("alpha-upper-sum", (i, j), a.sub(&sum));
        }
    }
    RecurrenceReport { d, ell: alpha.ell, checked, all_zero: failures.is_empty(), failures }
}

/// One step of the successive-vanishing argument on `α_{0,*}`.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingStep {
    /// `j`: the step uses `α_{0,2j+1}` with `q_{01}, …, q_{0j}` already zero.
    pub j: u32,
    pub alpha_index: (u32, u32),
    pub residual: String,
    pub residual_term: DTerm,
    #[serde(with = "crate::json::rational")]
    pub coefficient: Rational,
    pub forces_zero: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingChainCert {
    pub d: u32,
    pub ell: u32,
    /// Every term of every `α_{0,k}` contains `C_0`.
    pub c0_zero_branch: bool,
    pub c0_nonzero_chain: Vec<VanishingStep>,
    /// After `q_{01} = ⋯ = q_{0ℓ} = 0`, every `α_{0,k}` vanishes.
    pub all_alpha0_vanish: bool,
    pub verified: bool,
}

fn kills(t: &DTerm, upto: u32) -> bool {
    (t.alpha == 0 && t.beta <= upto) || (t.gamma == 0 && t.delta <= upto)
}

/// If `α_{0,1} = ⋯ = α_{0,2ℓ−1} = 0` then every `α_{0,k}` vanishes: either
/// `C_0 = 0`, or `q_{01}, …, q_{0ℓ}` are forced to zero one at a time.
pub fn vanishing_chain(d: u32, ell: u32) -> Result<VanishingChainCert> {
    let tables = alpha_table_symbolic(d, ell)?;
    vanishing_chain_from_tables(&tables)
}

pub fn vanishing_chain_from_tables(tables: &SymbolicTables) -> Result<VanishingChainCert> {
    let basis = tables.basis();
    let (d, ell) = (basis.d, basis.ell);
    let a0 = |k: u32| tables.alpha.alpha(0, i64::from(k));
    let c0_zero_branch = (1..d).all(|k| a0(k).support().all(|(i, _)| basis.get(i).lambda == 0));
    let mut chain = Vec::new();
    let mut ok = true;
    for j in 0..ell {
        let k = 2 * j + 1;
        let residual = DeltaElement::from_coords(
            a0(k).support().filter(|(i, _)| !kills(basis.get(*i), j)).map(|(i, v)| (i, v.clone())),
        );
        let expected = DTerm::new(0, j + 1, 0, j + 1, 0, 0);
        let idx = basis.index_of(&expected).expect("in Σ");
        let coefficient = residual.coord(idx);
        let shape_ok = residual.len() == 1 && !coefficient.is_zero();
        ok &= shape_ok;
        chain.push(VanishingStep {
            j,
            alpha_index: (0, k),
            residual: residual.display(basis),
            residual_term: expected,
            coefficient,
            forces_zero: crate::plucker::PluckerVar { alpha: 0, beta: j + 1 }.name("q"),
        });
        if !shape_ok {
            break;
        }
    }
    let all_alpha0_vanish = (1..d).all(|k| a0(k).support().all(|(i, _)| kills(basis.get(i), ell)));
    let verified = ok && c0_zero_branch && all_alpha0_vanish;
    Ok(VanishingChainCert { d, ell, c0_zero_branch, c0_nonzero_chain: chain, all_alpha0_vanish, verified })
}

/// `Q_ℓ(x^ℓ, y^ℓ, x^{d−2ℓ}) = z_0 z_{2ℓ} − z_ℓ²` and its generator expansion.
pub fn witness_quadric(d: u32, ell: u32) -> Result<(QuadForm, AlphaTable<Rational>)> {
    check_params(ell, d)?;
    let space = VeroneseSpace::new(1, d)?;
    let z = |k: u32| MultiPoly::var(space.z_roster(), k as usize);
    let p = &(&z(0) * &z(2 * ell)) - &(&z(ell) * &z(ell));
    let q = QuadForm::from_poly(&space, &p)?;
    let alpha = express_in_generators(&q, ell)?;
    Ok((q, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, ratio};
    use proptest::prelude::*;

    fn space(n: u32, d: u32) -> VeroneseSpace {
        VeroneseSpace::new(n, d).unwrap()
    }

    #[test]
    fn index_sets() {
        let s = space(1, 4);
        assert_eq!(s.r(), 4);
        assert_eq!(s.index_set()[0], vec![4, 0]);
        assert_eq!(s.index_set()[3], vec![1, 3]);
        let s = space(2, 2);
        assert_eq!(s.dim(), 6);
        assert_eq!(
            s.index_set(),
            [vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
    }

    #[test]
    fn phi_examples() {
        let s = space(1, 4);
        let x = s.x_roster().clone();
        let z = s.z_roster().clone();
        assert_eq!(phi(&parse_poly("x^4", &x).unwrap(), &s).unwrap(), parse_poly("z0", &z).unwrap());
        assert_eq!(
            phi(&parse_poly("3*x^2*y^2 - x*y^3", &x).unwrap(), &s).unwrap(),
            parse_poly("3*z2 - z3", &z).unwrap()
        );
        assert_eq!(
            phi(&parse_poly("(x^2*y)*(x*y^2)", &x).unwrap(), &space(1, 6)).unwrap(),
            parse_poly("z3", &Roster::indexed("z", 7)).unwrap()
        );
        assert!(phi(&parse_poly("x^3", &x).unwrap(), &s).is_err());
    }

    #[test]
    fn generators() {
        let g = rnc_generators(4).unwrap();
        assert_eq!(g.generators.len(), 6);
        let s = space(1, 4);
        let first = g.generators[0].form.to_poly(&s);
        assert_eq!(first, parse_poly("z0*z2 - z1^2", s.z_roster()).unwrap());
        assert_eq!(rnc_generators(5).unwrap().generators.len(), 10);
        assert_eq!(rnc_generators(2).unwrap().generators.len(), 1);
        assert!(rnc_generators(1).is_err());
        for d in 2..=8 {
            let s = space(1, d);
            assert!(rnc_generators(d).unwrap().generators.iter().all(|g| veronese_vanishing_check(&g.form, &s)));
        }
    }

    #[test]
    fn vanishing_examples() {
        let s = space(1, 4);
        let zz = QuadForm::from_poly(&s, &parse_poly("z0*z1", s.z_roster()).unwrap()).unwrap();
        assert!(!veronese_vanishing_check(&zz, &s));
        let s6 = space(1, 6);
        let x = s6.x_roster();
        let q = q_ell_eval(
            &s6,
            2,
            &parse_poly("x^2", x).unwrap(),
            &parse_poly("x*y", x).unwrap(),
            &parse_poly("y^2", x).unwrap(),
        )
        .unwrap();
        assert!(veronese_vanishing_check(&q, &s6));
        assert_eq!(q.to_poly(&s6), parse_poly("z2*z4 - z3^2", s6.z_roster()).unwrap());
    }

    #[test]
    fn q_ell_examples() {
        let s = space(1, 4);
        let x = s.x_roster();
        let q = q_ell_eval(
            &s,
            1,
            &parse_poly("x", x).unwrap(),
            &parse_poly("y", x).unwrap(),
            &parse_poly("x^2", x).unwrap(),
        )
        .unwrap();
        assert_eq!(q.to_poly(&s), parse_poly("z0*z2 - z1^2", s.z_roster()).unwrap());
        let f = parse_poly("x+2*y", x).unwrap();
        assert!(q_ell_eval(&s, 1, &f, &f, &parse_poly("x*y", x).unwrap()).unwrap().is_zero());
        assert!(q_ell_eval(&s, 1, &f, &parse_poly("x", x).unwrap(), &parse_poly("x", x).unwrap()).is_err());
        let s2 = space(2, 4);
        let x2 = s2.x_roster();
        let q =
            q_ell_eval(&s2, 2, &parse_poly("x0^2", x2).unwrap(), &parse_poly("x1^2", x2).unwrap(), &MultiPoly::one(x2))
                .unwrap();
        assert_eq!(q.rank(), 3);
        assert!(veronese_vanishing_check(&q, &s2));
    }

    #[test]
    fn example_d5_table() {
        let t = alpha_table_symbolic(5, 2).unwrap();
        let b = t.basis();
        let show = |i, j| t.alpha.alpha(i, j).display(b);
        assert_eq!(show(0, 1), "q01^2*C0^2");
        assert_eq!(show(0, 2), "2*q01*q02*C0^2 + q01^2*C0*C1");
        assert_eq!(show(1, 2), "q02^2*C0^2 + 2*q01*q12*C0^2 + 2*q01*q02*C0*C1 + q01^2*C1^2");
        assert_eq!(show(3, 4), "q12^2*C1^2");
        let report = beta_alpha_recurrences(&t);
        assert!(report.all_zero);
        assert_eq!(t.beta.beta(0, 2), t.alpha.alpha(0, 1));
        assert_eq!(t.alpha.alpha(1, 2), t.beta.beta(0, 4).add(&t.beta.beta(1, 3)));
    }

    #[test]
    fn symbolic_alpha_reconstructs_in_abc() {
        // Σ α_{i,j} Q_{i,j} expanded in K[A,B,C][z] equals the direct product
        for d in 2..=6 {
            for ell in 1..=d / 2 {
                let t = alpha_table_symbolic(d, ell).unwrap();
                let ext = &t.extractor;
                let [p, g, h] = generic_expansions(ext);
                for s in 0..=d {
                    for u in s..=d {
                        let mut lhs = MultiPoly::zero(ext.ring.roster());
                        for (i, j) in generator_indices(d) {
                            let a = t.alpha.alpha(i64::from(i), i64::from(j)).expand(t.basis(), &ext.ring);
                            if (i, j + 1) == (s, u) {
                                lhs = &lhs + &a;
                            }
                            if (i + 1).min(j) == s && (i + 1).max(j) == u {
                                lhs = &lhs - &a;
                            }
                        }
                        let (s, u) = (s as usize, u as usize);
                        let direct = if s == u {
                            &(&p[s] * &g[s]) - &(&h[s] * &h[s])
                        } else {
                            &(&(&p[s] * &g[u]) + &(&p[u] * &g[s])) - &(&h[s] * &h[u]).scale(&rat(2))
                        };
                        assert_eq!(lhs, direct, "d={d} ℓ={ell} (s,t)=({s},{u})");
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_coefficients_nonzero_in_beta() {
        // every element of Λ(s,t) appears in β_{s,t} with nonzero coefficient
        for (d, ell) in [(5, 2), (6, 2), (7, 3), (6, 1)] {
            let t = alpha_table_symbolic(d, ell).unwrap();
            let b = t.basis();
            for s in 0..=d {
                for u in s + 1..=d {
                    let beta = t.beta.beta(s, u);
                    for m in crate::plucker::lambda_set(s, u, b).members {
                        assert!(!beta.coord(b.index_of(&m).unwrap()).is_zero(), "{m} in β_{s},{u}");
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_chain_examples() {
        let c = vanishing_chain(5, 2).unwrap();
        assert!(c.verified);
        assert_eq!(c.c0_nonzero_chain[0].residual, "q01^2*C0^2");
        assert_eq!(c.c0_nonzero_chain[1].residual, "q02^2*C0^2");
        assert_eq!(c.c0_nonzero_chain[1].forces_zero, "q02");
        let c = vanishing_chain(4, 1).unwrap();
        assert!(c.verified);
        assert_eq!(c.c0_nonzero_chain.len(), 1);
    }

    #[test]
    fn witness_examples() {
        let (_, a) = witness_quadric(4, 2).unwrap();
        let nz: Vec<_> = a.entries().map(|(k, v)| (k, v.clone())).collect();
        assert_eq!(nz, vec![((0, 3), rat(1)), ((1, 2), rat(1))]);
        let (_, a) = witness_quadric(6, 3).unwrap();
        assert_eq!(a.entries().map(|(k, _)| k).collect::<Vec<_>>(), vec![(0, 5), (1, 4), (2, 3)]);
        let (q, a) = witness_quadric(4, 1).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.alpha(0, 1), rat(1));
        let s = space(1, 4);
        assert_eq!(q.to_poly(&s), parse_poly("z0*z2 - z1^2", s.z_roster()).unwrap());
        for d in 2..=10 {
            for ell in 1..=d / 2 {
                let (q, a) = witness_quadric(d, ell).unwrap();
                let s = space(1, d);
                let x = s.x_roster();
                let via_q = q_ell_eval(
                    &s,
                    ell,
                    &MultiPoly::var(x, 0).pow(ell.into()).unwrap(),
                    &MultiPoly::var(x, 1).pow(ell.into()).unwrap(),
                    &MultiPoly::var(x, 0).pow((d - 2 * ell).into()).unwrap(),
                )
                .unwrap();
                assert_eq!(via_q, q);
                assert_eq!(quadform_from_alpha(&a).unwrap(), q);
                for k in 1..2 * ell - 1 {
                    assert!(a.alpha(0, i64::from(k)).is_zero());
                }
                assert!(!a.alpha(0, i64::from(2 * ell - 1)).is_zero());
            }
        }
    }

    #[test]
    fn express_rejects_non_members() {
        let s = space(1, 4);
        let q = QuadForm::from_poly(&s, &parse_poly("z0*z2", s.z_roster()).unwrap()).unwrap();
        assert!(express_in_generators(&q, 1).is_err());
    }

    #[test]
    fn alpha_table_json() {
        let (_, a) = witness_quadric(4, 2).unwrap();
        let s = a.to_json();
        assert_eq!(
            s,
            r#"{"d":4,"ell":2,"entries":[{"i":0,"j":3,"value":{"den":"1","num":"1"}},{"i":1,"j":2,"value":{"den":"1","num":"1"}}],"mode":"evaluated"}"#
        );
        let back = AnyAlphaTable::from_json(&s).unwrap();
        assert_eq!(back, AnyAlphaTable::Evaluated(a));
        assert_eq!(back.to_json(), s);
        let t = alpha_table_symbolic(4, 1).unwrap();
        let s = t.alpha.to_json();
        assert_eq!(AnyAlphaTable::from_json(&s).unwrap().to_json(), s);
        assert!(AnyAlphaTable::from_json(r#"{"d":4,"ell":3,"mode":"evaluated","entries":[]}"#).is_err());
        assert!(AnyAlphaTable::from_json(
            r#"{"d":4,"ell":1,"mode":"evaluated","entries":[{"i":2,"j":1,"value":{"num":"1","den":"1"}}]}"#
        )
        .is_err());
        assert!(AnyAlphaTable::from_json(r#"{"d":4,"ell":1,"mode":"symbolic","entries":[{"i":0,"j":1,"value":{"coords":[{"index":99,"num":"1","den":"1"}]}}]}"#).is_err());
    }

    fn form(deg: u32) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..=3, deg as usize + 1)
    }

    fn binary(c: &[i64]) -> MultiPoly {
        let r = Roster::new(["x", "y"]).unwrap();
        MultiPoly::from_binary_coeffs(&r, &c.iter().map(|&v| rat(v)).collect::<Vec<_>>())
    }

    proptest! {
        #[test]
        fn q_ell_invariants(f in form(2), g in form(2), h in form(3), a in 1i64..4, b in -3i64..-1, c in 1i64..3) {
            let s = space(1, 7);
            let (f, g, h) = (binary(&f), binary(&g), binary(&h));
            let q = q_ell_eval(&s, 2, &f, &g, &h).unwrap();
            prop_assert!(veronese_vanishing_check(&q, &s));
            prop_assert_eq!(&q_ell_eval(&s, 2, &g, &f, &h).unwrap(), &q);
            let scaled = q_ell_eval(&s, 2, &f.scale(&rat(a)), &g.scale(&rat(b)), &h.scale(&ratio(c, 2))).unwrap();
            let k = rat(a * b) * ratio(c, 2);
            prop_assert_eq!(scaled, q.scale(&(&k * &k)));
            let degenerate = f.is_zero() || g.is_zero() || f.is_proportional(&g) || h.is_zero();
            prop_assert_eq!(q.is_zero(), degenerate);
            prop_assert_eq!(q.rank(), if degenerate { 0 } else { 3 });
        }
    }
}
