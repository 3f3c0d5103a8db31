//! Exact Gröbner bases over the rationals: reduced bases, elimination,
//! ideal and radical membership, Hilbert polynomials.

mod engine;
mod hilbert;

use std::fmt;
use std::time::Duration;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{poly_from_terms, terms_repr, TermRepr};
use crate::poly::{parse_poly, ExponentVector, MonomialOrder, MultiPoly, Rational, Roster};
use engine::Poly;

const MAX_VARS: usize = 64;
const MAX_GENERATORS: usize = 4096;

/// Resource limits for a Gröbner computation. Exceeding one is reported as
/// [`Error::Timeout`].
#[derive(Clone, Debug)]
pub struct Limits {
    pub timeout: Option<Duration>,
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { timeout: None, max_basis: 20_000, max_pairs: 2_000_000 }
    }
}

impl Limits {
    pub fn with_timeout(t: Duration) -> Self {
        Limits { timeout: Some(t), ..Limits::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    roster: Roster,
    generators: Vec<MultiPoly>,
    homogeneous: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealRepr {
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<MonomialOrder>,
    generators: Vec<Vec<TermRepr>>,
}

fn check_order(order: &MonomialOrder, nvars: usize) -> Result<()> {
    match *order {
        MonomialOrder::BlockElim { split } if split > nvars => {
            Err(Error::OutOfRange(format!("block split {split} exceeds {nvars} variables")))
        }
        _ => Ok(()),
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(roster: &Roster, generators: Vec<MultiPoly>) -> Result<Self> {
        for g in &generators {
            roster.check_same(g.roster())?;
        }
        let generators: Vec<MultiPoly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let homogeneous = generators.iter().all(MultiPoly::is_homogeneous);
        Ok(Ideal { roster: roster.clone(), generators, homogeneous })
    }

    /// Parses each generator in the infix grammar over `vars`.
    pub fn parse<S: AsRef<str>>(vars: &[S], generators: &[S]) -> Result<Self> {
        let roster = Roster::new(vars.iter().map(|v| v.as_ref().to_string()))?;
        let gens = generators.iter().map(|g| parse_poly(g.as_ref(), &roster)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&roster, gens)
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.roster.check_same(&other.roster)?;
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(&self.roster, g)
    }

    pub fn with_generator(&self, f: &MultiPoly) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.push(f.clone());
        Ideal::new(&self.roster, g)
    }

    /// JSON with an optional order descriptor.
    pub fn to_json(&self, order: Option<MonomialOrder>) -> String {
        crate::json::to_json(&IdealRepr {
            vars: self.roster.names().to_vec(),
            order,
            generators: self.generators.iter().map(terms_repr).collect(),
        })
    }

    /// Decodes an ideal and its order descriptor (degrevlex when absent).
    pub fn from_json(src: &str) -> Result<(Ideal, MonomialOrder)> {
        let repr: IdealRepr = crate::json::from_json(src)?;
        if repr.vars.len() > MAX_VARS || repr.generators.len() > MAX_GENERATORS {
            return Err(Error::Json("ideal too large".into()));
        }
        let roster = Roster::new(repr.vars)?;
        let order = repr.order.unwrap_or_default();
        check_order(&order, roster.len())?;
        let gens = repr.generators.into_iter().map(|t| poly_from_terms(&roster, t)).collect::<Result<Vec<_>>>()?;
        Ok((Ideal::new(&roster, gens)?, order))
    }
}

/// A reduced Gröbner basis: monic, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBasis {
    roster: Roster,
    order: MonomialOrder,
    elements: Vec<MultiPoly>,
    pairs_processed: usize,
}

#[derive(Serialize)]
struct GBasisRepr<'a> {
    vars: &'a [String],
    order: MonomialOrder,
    elements: Vec<Vec<TermRepr>>,
}

impl GBasis {
    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// S-pairs popped from the queue while computing the basis.
    pub fn pairs_processed(&self) -> usize {
        self.pairs_processed
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(MultiPoly::is_constant)
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.elements.iter().map(|p| p.multideg(&self.order).expect("nonzero")).collect()
    }

    fn polys(&self) -> Vec<Poly> {
        self.elements.iter().map(|p| Poly::from_multi(p, &self.order)).collect()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.roster.check_same(f.roster())?;
        let basis = self.polys();
        let on = vec![true; basis.len()];
        Ok(engine::normal_form(&Poly::from_multi(f, &self.order), &basis, &on, &self.order).to_multi(&self.roster))
    }

    /// Post-hoc check: reduced, and every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let basis = self.polys();
        engine::is_reduced(&basis) && engine::is_groebner(&basis, &self.order)
    }

    /// Every generator of `ideal` reduces to zero.
    pub fn generates(&self, ideal: &Ideal) -> Result<bool> {
        for g in ideal.generators() {
            if !self.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_json(&GBasisRepr {
            vars: self.roster.names(),
            order: self.order,
            elements: self.elements.iter().map(terms_repr).collect(),
        })
    }

    /// Decodes a basis and re-verifies it; input that is not a reduced
    /// Gröbner basis for its order is rejected.
    pub fn from_json(src: &str) -> Result<GBasis> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            vars: Vec<String>,
            order: MonomialOrder,
            elements: Vec<Vec<TermRepr>>,
        }
        let repr: Repr = crate::json::from_json(src)?;
        if repr.vars.len() > MAX_VARS || repr.elements.len() > MAX_GENERATORS {
            return Err(Error::Json("basis too large".into()));
        }
        let roster = Roster::new(repr.vars)?;
        check_order(&repr.order, roster.len())?;
        let mut elements =
            repr.elements.into_iter().map(|t| poly_from_terms(&roster, t)).collect::<Result<Vec<_>>>()?;
        if elements.iter().any(MultiPoly::is_zero) {
            return Err(Error::Json("zero element in basis".into()));
        }
        let ord = repr.order;
        elements.sort_by(|a, b| {
            ord.cmp(a.multideg(&ord).expect("nonzero").as_slice(), b.multideg(&ord).expect("nonzero").as_slice())
        });
        let gb = GBasis { roster, order: ord, elements, pairs_processed: 0 };
        if !gb.verify() {
            return Err(Error::Json("not a reduced Gröbner basis".into()));
        }
        Ok(gb)
    }
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GBasis> {
    buchberger_with(ideal, order, &Limits::default())
}

pub fn buchberger_with(ideal: &Ideal, order: MonomialOrder, limits: &Limits) -> Result<GBasis> {
    check_order(&order, ideal.roster.len())?;
    let gens: Vec<Poly> = ideal.generators.iter().map(|g| Poly::from_multi(g, &order)).collect();
    let out = engine::buchberger(gens, &order, limits)?;
    Ok(GBasis {
        roster: ideal.roster.clone(),
        order,
        elements: out.basis.iter().map(|p| p.to_multi(&ideal.roster)).collect(),
        pairs_processed: out.pairs_processed,
    })
}

/// Whether `f` lies in the ideal of `gb`, with its normal form.
pub fn ideal_membership(f: &MultiPoly, gb: &GBasis) -> Result<(bool, MultiPoly)> {
    let nf = gb.normal_form(f)?;
    Ok((nf.is_zero(), nf))
}

/// Generators of `ideal ∩ K[retained variables]`, where the retained roster
/// keeps the original relative order. The generators form a Gröbner basis
/// for degrevlex on the retained variables.
pub fn eliminate(ideal: &Ideal, drop: &[&str]) -> Result<Ideal> {
    eliminate_with(ideal, drop, &Limits::default())
}

pub fn eliminate_with(ideal: &Ideal, drop: &[&str], limits: &Limits) -> Result<Ideal> {
    let names = ideal.roster.names();
    for d in drop {
        if ideal.roster.index_of(d).is_none() {
            return Err(Error::UnboundVariable((*d).to_string()));
        }
    }
    let keep: Vec<String> = names.iter().filter(|n| !drop.contains(&n.as_str())).cloned().collect();
    let mut reordered: Vec<String> = names.iter().filter(|n| drop.contains(&n.as_str())).cloned().collect();
    let split = reordered.len();
    reordered.extend(keep.iter().cloned());
    let big = Roster::new(reordered)?;
    let kept = Roster::new(keep)?;
    let gens = ideal.generators.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger_with(&Ideal::new(&big, gens)?, MonomialOrder::BlockElim { split }, limits)?;
    let out = gb
        .elements
        .iter()
        .filter(|p| (0..split).all(|v| !p.uses_var(v)))
        .map(|p| p.embed(&kept))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&kept, out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalCert {
    pub member: bool,
    /// Smallest `k ≤ 4` with `f^k` in the ideal, when one exists.
    pub power: Option<u32>,
    pub fresh_variable: String,
}

/// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 − w·f)`. A power witness
/// `f^k ∈ I` with `k ≤ 4` is searched independently and must agree.
pub fn radical_membership(f: &MultiPoly, ideal: &Ideal) -> Result<RadicalCert> {
    radical_membership_with(f, ideal, &Limits::default())
}

pub fn radical_membership_with(f: &MultiPoly, ideal: &Ideal, limits: &Limits) -> Result<RadicalCert> {
    ideal.roster.check_same(f.roster())?;
    let mut w = String::from("w");
    while ideal.roster.index_of(&w).is_some() {
        w.push('_');
    }
    let ext = Roster::new(ideal.roster.names().iter().cloned().chain([w.clone()]))?;
    let mut gens = ideal.generators.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>>>()?;
    let one = MultiPoly::one(&ext);
    let wf = &MultiPoly::var_named(&ext, &w) * &f.embed(&ext)?;
    gens.push(&one - &wf);
    let member = buchberger_with(&Ideal::new(&ext, gens)?, MonomialOrder::DegRevLex, limits)?.is_unit();

    let gb = buchberger_with(ideal, MonomialOrder::DegRevLex, limits)?;
    let mut power = None;
    let mut fk = MultiPoly::one(&ideal.roster);
    for k in 1..=4 {
        fk = &fk * f;
        if gb.normal_form(&fk)?.is_zero() {
            power = Some(k);
            break;
        }
    }
    if power.is_some() && !member {
        return Err(Error::Falsified("power witness found but Rabinowitsch test failed".into()));
    }
    Ok(RadicalCert { member, power, fresh_variable: w })
}

/// A Hilbert polynomial with ascending rational coefficients in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub coeffs: Vec<Rational>,
    /// Dimension of the projective scheme; −1 when empty.
    pub dimension: i64,
    /// Numerator of the Hilbert series over `(1 − t)^n`, ascending.
    pub series_numerator: Vec<i64>,
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Coeffs<'a>(&'a [Rational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::json::rational_vec::serialize(self.0, s)
            }
        }
        let mut st = s.serialize_struct("HilbertPolynomial", 4)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.serialize_field("dimension", &self.dimension)?;
        st.serialize_field("series_numerator", &self.series_numerator)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

impl HilbertPolynomial {
    pub fn from_ints(coeffs: &[i64]) -> Vec<Rational> {
        coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }

    pub fn eval(&self, t: i64) -> Rational {
        let t = Rational::from_integer(t.into());
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &t + c)
    }

    pub fn degree(&self) -> Rational {
        self.coeffs.last().map_or(Rational::zero(), |c| {
            let mut f = Rational::one();
            for k in 1..self.coeffs.len() {
                f *= Rational::from_integer((k as i64).into());
            }
            c * f
        })
    }

    pub fn to_poly(&self) -> MultiPoly {
        let r = Roster::new(["t"]).expect("valid roster");
        MultiPoly::from_terms(
            &r,
            self.coeffs.iter().enumerate().map(|(k, c)| (ExponentVector::new(vec![k as u32]), c.clone())),
        )
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

pub fn hilbert_polynomial(ideal: &Ideal, order: MonomialOrder) -> Result<HilbertPolynomial> {
    hilbert_polynomial_with(ideal, order, &Limits::default())
}

pub fn hilbert_polynomial_with(ideal: &Ideal, order: MonomialOrder, limits: &Limits) -> Result<HilbertPolynomial> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = buchberger_with(ideal, order, limits)?;
    Ok(hilbert_from_basis(&gb))
}

/// Hilbert polynomial of `K[x]/I` read off the leading monomials of `gb`,
/// which must be a basis of a homogeneous ideal.
pub fn hilbert_from_basis(gb: &GBasis) -> HilbertPolynomial {
    let lms: Vec<Vec<u32>> = gb.leading_monomials().iter().map(|e| e.as_slice().to_vec()).collect();
    let n = gb.roster.len();
    if lms.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return HilbertPolynomial { coeffs: vec![], dimension: -1, series_numerator: vec![0] };
    }
    let num = hilbert::series_numerator(&lms);
    let (coeffs, krull) = hilbert::polynomial_from_numerator(&num, n);
    HilbertPolynomial { coeffs, dimension: krull as i64 - 1, series_numerator: num.iter().map(|&c| c as i64).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Roster};
    use proptest::prelude::*;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        Ideal::parse(vars, gens).unwrap()
    }

    fn strs(gb: &GBasis) -> Vec<String> {
        gb.elements().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn textbook_lex() {
        // x^2 − y, x^3 with x > y: x^3 − x·(x^2 − y) = xy, then x·xy − y(x^2−y) = y^2
        let i = ideal(&["x", "y"], &["x^2 - y", "x^3"]);
        let gb = buchberger(&i, MonomialOrder::Lex).unwrap();
        assert_eq!(strs(&gb), ["y^2", "x*y", "x^2 - y"]);
        assert!(gb.verify());
        assert!(gb.generates(&i).unwrap());
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let i = ideal(&["z0", "z1", "z2"], &["z0*z2 - z1^2"]);
        let gb = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        // degrevlex: z1^2 > z0*z2
        assert_eq!(strs(&gb), ["-z0*z2 + z1^2"]);
        let (yes, _) = ideal_membership(&i.generators()[0], &gb).unwrap();
        assert!(yes);
        let z0 = MultiPoly::var(i.roster(), 0);
        let (no, nf) = ideal_membership(&z0, &gb).unwrap();
        assert!(!no);
        assert_eq!(nf, z0);
        let other = Roster::new(["a"]).unwrap();
        assert!(ideal_membership(&MultiPoly::var(&other, 0), &gb).is_err());
    }

    #[test]
    fn unit_ideal() {
        let i = ideal(&["x", "y"], &["x*y - 1", "x"]);
        let gb = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        assert!(gb.is_unit());
        assert_eq!(strs(&gb), ["1"]);
    }

    #[test]
    fn twisted_cubic_and_conic_elimination() {
        let i = ideal(&["s", "t", "z0", "z1", "z2"], &["z0 - s^2", "z1 - s*t", "z2 - t^2"]);
        let e = eliminate(&i, &["s", "t"]).unwrap();
        assert_eq!(e.roster().names(), ["z0", "z1", "z2"]);
        assert_eq!(e.generators().iter().map(ToString::to_string).collect::<Vec<_>>(), ["-z0*z2 + z1^2"]);

        let i = ideal(&["s", "t", "z0", "z1", "z2", "z3"], &["z0 - s^3", "z1 - s^2*t", "z2 - s*t^2", "z3 - t^3"]);
        let e = eliminate(&i, &["s", "t"]).unwrap();
        assert_eq!(e.generators().len(), 3);
        let hp = hilbert_polynomial(&e, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(hp.coeffs, [rat(1), rat(3)]);
        assert!(eliminate(&i, &["u"]).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let conic = ideal(&["z0", "z1", "z2"], &["z0*z2 - z1^2"]);
        let hp = hilbert_polynomial(&conic, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(hp.to_string(), "2*t + 1");
        assert_eq!(hp.dimension, 1);
        let quartic = ideal(
            &["z0", "z1", "z2", "z3", "z4"],
            &["z0*z2 - z1^2", "z0*z3 - z1*z2", "z0*z4 - z1*z3", "z1*z3 - z2^2", "z1*z4 - z2*z3", "z2*z4 - z3^2"],
        );
        for ord in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let hp = hilbert_polynomial(&quartic, ord).unwrap();
            assert_eq!(hp.to_string(), "4*t + 1");
            assert_eq!(hp.degree(), rat(4));
        }
        let points = ideal(&["x", "y"], &["x*y*(x - y)"]);
        assert_eq!(hilbert_polynomial(&points, MonomialOrder::Lex).unwrap().coeffs, [rat(3)]);
        let empty = ideal(&["x", "y"], &["x", "y"]);
        assert_eq!(hilbert_polynomial(&empty, MonomialOrder::Lex).unwrap().dimension, -1);
        assert!(hilbert_polynomial(&ideal(&["x"], &["x - 1"]), MonomialOrder::Lex).is_err());
    }

    #[test]
    fn radical_examples() {
        let i = ideal(&["x"], &["x^2"]);
        let x = MultiPoly::var(i.roster(), 0);
        let c = radical_membership(&x, &i).unwrap();
        assert!(c.member);
        assert_eq!(c.power, Some(2));
        let i = ideal(&["x", "y"], &["x^2", "y^3 - x*y"]);
        let y = MultiPoly::var(i.roster(), 1);
        // y^5 is the first power in the ideal
        let c = radical_membership(&y, &i).unwrap();
        assert!(c.member);
        assert_eq!(c.power, None);
        let i = ideal(&["x", "y"], &["x*y"]);
        let c = radical_membership(&MultiPoly::var(i.roster(), 0), &i).unwrap();
        assert!(!c.member && c.power.is_none());
        // fresh variable avoids collisions
        let i = ideal(&["w", "x"], &["w^2"]);
        assert_eq!(radical_membership(&MultiPoly::var(i.roster(), 0), &i).unwrap().fresh_variable, "w_");
    }

    #[test]
    fn json_round_trip_and_validation() {
        let i = ideal(&["x", "y"], &["x^2 - 1/3*y", "x*y"]);
        let s = i.to_json(Some(MonomialOrder::Lex));
        let (j, ord) = Ideal::from_json(&s).unwrap();
        assert_eq!((j.clone(), ord), (i.clone(), MonomialOrder::Lex));
        assert_eq!(j.to_json(Some(ord)), s);
        let gb = buchberger(&i, ord).unwrap();
        assert_eq!(GBasis::from_json(&gb.to_json()).unwrap().elements(), gb.elements());
        // x^2 − y, x^3 is not a Gröbner basis
        let bad = ideal(&["x", "y"], &["x^2 - y", "x*y"]).to_json(None).replace("generators", "elements");
        let bad = bad.replace("\"elements\"", "\"order\":{\"kind\":\"lex\"},\"elements\"");
        assert!(GBasis::from_json(&bad).is_err());
        assert!(Ideal::from_json(r#"{"vars":["x"],"order":{"kind":"block-elim","split":3},"generators":[]}"#).is_err());
        assert!(Ideal::from_json(r#"{"vars":["x"],"generators":[[{"num":"1","den":"1","exps":[1,1]}]]}"#).is_err());
        let (j, ord) = Ideal::from_json(r#"{"vars":["x"],"generators":[]}"#).unwrap();
        assert_eq!(ord, MonomialOrder::DegRevLex);
        assert!(buchberger(&j, ord).unwrap().is_empty());
    }

    #[test]
    fn timeout_is_reported() {
        let i = ideal(&["x", "y", "z"], &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"]);
        let limits = Limits { max_pairs: 0, ..Limits::default() };
        assert!(matches!(buchberger_with(&i, MonomialOrder::Lex, &limits), Err(Error::Timeout(_))));
    }

    #[test]
    fn lex_without_coefficient_blowup() {
        let i = ideal(&["x", "y", "z"], &["x^2*z + 3*x^2 - 2*z", "2*x*y*z^2 + x*y*z + 3*z^2", "-x^2*y^2*z - 2*x*y^2"]);
        let gb = buchberger_with(&i, MonomialOrder::Lex, &Limits::with_timeout(Duration::from_secs(10))).unwrap();
        assert!(gb.verify() && gb.generates(&i).unwrap());
        let lms: Vec<Vec<u32>> = gb.leading_monomials().iter().map(|e| e.as_slice().to_vec()).collect();
        let want = [[0, 0, 6], [0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 1, 1], [1, 2, 0], [2, 0, 0]];
        assert_eq!(lms, want.map(|m| m.to_vec()));
        assert_eq!(gb.elements()[0].to_string(), "z^6 - 2*z^4 - 6*z^3");
    }

    fn small_ideal() -> impl Strategy<Value = Vec<Vec<(i64, [u32; 3])>>> {
        prop::collection::vec(prop::collection::vec(((-3i64..=3), [0u32..3, 0u32..3, 0u32..3]), 1..4), 1..4)
    }

    fn build(gens: &[Vec<(i64, [u32; 3])>]) -> Ideal {
        let r = Roster::new(["x", "y", "z"]).unwrap();
        let gens = gens
            .iter()
            .map(|g| MultiPoly::from_terms(&r, g.iter().map(|(c, e)| (ExponentVector::new(e.to_vec()), rat(*c)))))
            .collect();
        Ideal::new(&r, gens).unwrap()
    }

    fn homogenize(gens: &[Vec<(i64, [u32; 3])>]) -> Vec<Vec<(i64, [u32; 3])>> {
        // keep, per generator, only terms of the leading total degree
        gens.iter()
            .map(|g| {
                let d = g.iter().map(|(_, e)| e.iter().sum::<u32>()).max().unwrap_or(0);
                g.iter().filter(|(_, e)| e.iter().sum::<u32>() == d).cloned().collect()
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn basis_is_verified_and_generates(gens in small_ideal()) {
            let i = build(&gens);
            for ord in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
                let gb = buchberger(&i, ord).unwrap();
                prop_assert!(gb.verify());
                prop_assert!(gb.generates(&i).unwrap());
                // each basis element lies in the ideal generated by the input,
                // seen through a second basis computed from shuffled input
                let mut rev = i.generators().to_vec();
                rev.reverse();
                let gb2 = buchberger(&Ideal::new(i.roster(), rev).unwrap(), ord).unwrap();
                prop_assert_eq!(gb.elements(), gb2.elements());
            }
        }

        #[test]
        fn hilbert_polynomial_is_order_invariant(gens in small_ideal()) {
            let i = build(&homogenize(&gens));
            let a = hilbert_polynomial(&i, MonomialOrder::DegRevLex).unwrap();
            let b = hilbert_polynomial(&i, MonomialOrder::Lex).unwrap();
            prop_assert_eq!(a.coeffs, b.coeffs);
        }
    }
}
