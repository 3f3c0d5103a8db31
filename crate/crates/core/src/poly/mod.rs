//! Sparse multivariate polynomials with exact rational coefficients.

mod order;
pub mod parse;
pub mod univariate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use order::MonomialOrder;
pub use parse::{parse_poly, parse_poly_infer};
pub use univariate::{binary_linear_factors, square_part, squarefree_part, univariate_gcd};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Roster(Arc<[String]>);

impl Roster {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Unsupported("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::Unsupported(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Roster(names.into()))
    }

    /// `prefix0, prefix1, …, prefix{count-1}`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        Roster((0..count).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Roster consisting of `self` followed by the names of `other` that are
    /// not already present.
    pub fn union(&self, other: &Roster) -> Roster {
        let mut names = self.0.to_vec();
        for n in other.names() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        Roster(names.into())
    }

    pub(crate) fn check_same(&self, other: &Roster) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RosterMismatch { left: self.0.to_vec(), right: other.0.to_vec() })
        }
    }
}

impl fmt::Debug for Roster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector of a monomial, one entry per roster variable.
///
/// The derived `Ord` is the lexicographic order with the first variable most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn unit(len: usize, var: usize) -> Self {
        let mut v = vec![0; len];
        v[var] = 1;
        ExponentVector(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other).then(|| ExponentVector(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ScalarMul(Rational),
    Power(i64),
}

/// Sparse polynomial over the rationals.
///
/// Zero coefficients are never stored; iteration is in descending
/// lexicographic order of exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    roster: Roster,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl MultiPoly {
    pub fn zero(roster: &Roster) -> Self {
        MultiPoly { roster: roster.clone(), terms: BTreeMap::new() }
    }

    pub fn one(roster: &Roster) -> Self {
        Self::constant(roster, Rational::one())
    }

    pub fn constant(roster: &Roster, c: Rational) -> Self {
        Self::monomial(roster, ExponentVector::zeros(roster.len()), c)
    }

    pub fn var(roster: &Roster, idx: usize) -> Self {
        Self::monomial(roster, ExponentVector::unit(roster.len(), idx), Rational::one())
    }

    /// Variable by name; panics if the name is not in the roster.
    pub fn var_named(roster: &Roster, name: &str) -> Self {
        let idx = roster.index_of(name).unwrap_or_else(|| panic!("variable `{name}` not in roster {roster:?}"));
        Self::var(roster, idx)
    }

    pub fn monomial(roster: &Roster, exps: ExponentVector, c: Rational) -> Self {
        assert_eq!(exps.len(), roster.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { roster: roster.clone(), terms }
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I>(roster: &Roster, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = MultiPoly::zero(roster);
        for (e, c) in terms {
            assert_eq!(e.len(), roster.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_coeff(&self) -> Rational {
        self.coeff(&ExponentVector::zeros(self.roster.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(ExponentVector::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Highest exponent of variable `var` occurring in the polynomial.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.as_slice()[var]).max().unwrap_or(0)
    }

    /// The order-maximal exponent vector.
    pub fn multideg(&self, ord: &MonomialOrder) -> Result<ExponentVector> {
        self.leading_term(ord).map(|(e, _)| e.clone())
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(&ExponentVector, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0.as_slice(), b.0.as_slice()))
            .ok_or(Error::ZeroPolynomial("multidegree"))
    }

    /// Leading coefficient for the lexicographic order.
    pub fn lex_leading_coeff(&self) -> Option<&Rational> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.roster.check_same(&other.roster)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.roster.check_same(&other.roster)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.roster.check_same(&other.roster)?;
        let mut out = MultiPoly::zero(&self.roster);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.roster);
        }
        MultiPoly { roster: self.roster.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial `c · x^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.roster);
        }
        MultiPoly { roster: self.roster.clone(), terms: self.terms.iter().map(|(k, v)| (k.mul(e), v * c)).collect() }
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return Err(Error::NegativeExponent(exp));
        }
        let mut result = MultiPoly::one(&self.roster);
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Divides every coefficient by the lexicographic leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lex_leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MultiPoly::zero(&self.roster);
        for (e, c) in &self.terms {
            let k = e.as_slice()[var];
            if k > 0 {
                let mut v = e.as_slice().to_vec();
                v[var] -= 1;
                out.add_term(ExponentVector(v), c * Rational::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// True if variable `var` occurs with positive exponent.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.as_slice()[var] > 0)
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &Roster) -> Result<Self> {
        let mut map = Vec::with_capacity(self.roster.len());
        for (i, n) in self.roster.names().iter().enumerate() {
            match target.index_of(n) {
                Some(j) => map.push(j),
                None if self.uses_var(i) => return Err(Error::UnboundVariable(n.clone())),
                None => map.push(usize::MAX),
            }
        }
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut v = vec![0u32; target.len()];
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    v[map[i]] += k;
                }
            }
            out.add_term(ExponentVector(v), c.clone());
        }
        Ok(out)
    }

    /// Composes with `bindings`, which map variable names of `self` to
    /// polynomials over a common target roster.
    pub fn substitute(&self, target: &Roster, bindings: &HashMap<String, MultiPoly>) -> Result<Self> {
        let mut images = Vec::with_capacity(self.roster.len());
        for (i, name) in self.roster.names().iter().enumerate() {
            let used = self.uses_var(i);
            match bindings.get(name) {
                Some(p) => {
                    p.roster.check_same(target)?;
                    images.push(Some(p));
                }
                None if used => return Err(Error::UnboundVariable(name.clone())),
                None => images.push(None),
            }
        }
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|_| vec![MultiPoly::one(target)]).collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let base = images[i].expect("bound");
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * base;
                    cache[i].push(next);
                }
                term = &term * &cache[i][k as usize];
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point given by variable name.
    pub fn evaluate(&self, values: &HashMap<String, Rational>) -> Result<Rational> {
        let mut vals = Vec::with_capacity(self.roster.len());
        for (i, name) in self.roster.names().iter().enumerate() {
            let used = self.uses_var(i);
            match values.get(name) {
                Some(v) => vals.push(v.clone()),
                None if used => return Err(Error::UnboundVariable(name.clone())),
                None => vals.push(Rational::zero()),
            }
        }
        Ok(self.evaluate_slice(&vals))
    }

    pub fn evaluate_slice(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in vals.iter().zip(e.as_slice()) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients of a homogeneous polynomial listed by descending
    /// lexicographic order of all monomials of that degree in two variables,
    /// i.e. `x^k, x^{k-1}y, …, y^k`. Only for two-variable rosters.
    pub fn binary_coeffs(&self, degree: u32) -> Result<Vec<Rational>> {
        if self.roster.len() != 2 {
            return Err(Error::Unsupported("binary form expected".into()));
        }
        let mut out = vec![Rational::zero(); degree as usize + 1];
        for (e, c) in &self.terms {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: e.degree() });
            }
            out[e.as_slice()[1] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_binary_coeffs(roster: &Roster, coeffs: &[Rational]) -> Self {
        assert_eq!(roster.len(), 2);
        let k = coeffs.len() as u32 - 1;
        MultiPoly::from_terms(
            roster,
            coeffs.iter().enumerate().map(|(i, c)| (ExponentVector(vec![k - i as u32, i as u32]), c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
}

/// Arithmetic dispatcher with roster checking.
pub fn poly_arith(p: &MultiPoly, q: Option<&MultiPoly>, op: ArithOp) -> Result<MultiPoly> {
    let other = || q.ok_or_else(|| Error::Unsupported("binary operation needs two operands".into()));
    match op {
        ArithOp::Add => p.checked_add(other()?),
        ArithOp::Sub => p.checked_sub(other()?),
        ArithOp::Mul => p.checked_mul(other()?),
        ArithOp::ScalarMul(c) => Ok(p.scale(&c)),
        ArithOp::Power(k) => p.pow(k),
    }
}

// Operator impls panic on roster mismatch; use the `checked_*` methods for
// untrusted operands.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("roster mismatch in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("roster mismatch in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("roster mismatch in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.degree() == 0 {
                factors.push(fmt_rational(&abs));
            }
            for (name, &k) in self.roster.names().iter().zip(e.as_slice()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self} over {:?})", self.roster)
    }
}
