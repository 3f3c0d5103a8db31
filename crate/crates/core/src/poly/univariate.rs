//! Univariate polynomials and binary forms.
//!
//! Binary forms `F(x, y)` are handled by dehomogenizing at `y = 1` and
//! recording the power of `y` that divides `F` separately, so that Euclid's
//! algorithm over `Q[t]` applies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExponentVector, MultiPoly, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn lc(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dlen = divisor.0.len();
        assert!(dlen > 0, "division by zero polynomial");
        if self.0.len() < dlen {
            return (UniPoly(vec![]), self.clone());
        }
        let inv = divisor.lc().unwrap().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dlen - 1] * &inv;
            if !c.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dlen - 1);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: `self = lc · Π P_i^i` with monic,
    /// squarefree, pairwise coprime `P_i`. Returns `(lc, [P_1, P_2, …])`.
    pub fn squarefree_decomposition(&self) -> (Rational, Vec<UniPoly>) {
        let lc = self.lc().cloned().unwrap_or_else(Rational::zero);
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return (lc, vec![]);
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let c = fp.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut factors = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let b_next = b.div_exact(&a);
            let c_next = d.div_exact(&a);
            d = c_next.sub(&b_next.derivative());
            b = b_next;
            factors.push(a);
        }
        (lc, factors)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }
}

/// A polynomial in one variable, or a binary form split as `y^v · u(x/y)`.
struct Dehomogenized {
    binary: bool,
    y_power: u32,
    part: UniPoly,
}

fn dehomogenize(p: &MultiPoly) -> Result<Dehomogenized> {
    match p.roster().len() {
        1 => {
            let mut c = vec![Rational::zero(); p.degree_in(0) as usize + 1];
            for (e, v) in p.terms() {
                c[e.as_slice()[0] as usize] = v.clone();
            }
            Ok(Dehomogenized { binary: false, y_power: 0, part: UniPoly::new(c) })
        }
        2 => {
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if p.is_zero() {
                return Ok(Dehomogenized { binary: true, y_power: 0, part: UniPoly::new(vec![]) });
            }
            let v = p.terms().map(|(e, _)| e.as_slice()[1]).min().unwrap();
            let mut c = vec![Rational::zero(); p.degree_in(0) as usize + 1];
            for (e, val) in p.terms() {
                c[e.as_slice()[0] as usize] = val.clone();
            }
            Ok(Dehomogenized { binary: true, y_power: v, part: UniPoly::new(c) })
        }
        n => Err(Error::Unsupported(format!(
            "univariate operations need one variable or a binary form, got {n} variables"
        ))),
    }
}

fn rehomogenize(like: &MultiPoly, y_power: u32, part: &UniPoly, binary: bool) -> MultiPoly {
    let roster = like.roster();
    if !binary {
        return MultiPoly::from_terms(
            roster,
            part.coeffs().iter().enumerate().map(|(i, c)| (ExponentVector::new(vec![i as u32]), c.clone())),
        );
    }
    let m = part.degree().unwrap_or(0) as u32;
    MultiPoly::from_terms(
        roster,
        part.coeffs().iter().enumerate().map(|(i, c)| {
            let i = i as u32;
            (ExponentVector::new(vec![i, m - i + y_power]), c.clone())
        }),
    )
}

/// Monic greatest common divisor of two univariate polynomials or two binary
/// forms. `gcd(p, 0)` is `p` made monic.
pub fn univariate_gcd(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    p.roster().check_same(q.roster())?;
    let a = dehomogenize(p)?;
    let b = dehomogenize(q)?;
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial("gcd")),
        (false, true) => return Ok(p.monic()),
        (true, false) => return Ok(q.monic()),
        _ => {}
    }
    let g = a.part.gcd(&b.part);
    Ok(rehomogenize(p, a.y_power.min(b.y_power), &g, a.binary))
}

/// Splits `h = D² · h'` with `D` monic of maximal degree.
pub fn square_part(h: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("square part"));
    }
    let dh = dehomogenize(h)?;
    let (lc, factors) = dh.part.squarefree_decomposition();
    let mut d = UniPoly::one();
    let mut rest = UniPoly::new(vec![lc]);
    for (i, f) in factors.iter().enumerate() {
        let mult = i as u32 + 1;
        d = d.mul(&f.pow(mult / 2));
        rest = rest.mul(&f.pow(mult % 2));
    }
    let dpoly = rehomogenize(h, dh.y_power / 2, &d, dh.binary);
    let hpoly = rehomogenize(h, dh.y_power % 2, &rest, dh.binary);
    Ok((dpoly, hpoly))
}

/// Squarefree part (product of the distinct irreducible factors), monic.
pub fn squarefree_part(h: &MultiPoly) -> Result<MultiPoly> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree part"));
    }
    let dh = dehomogenize(h)?;
    let (_, factors) = dh.part.squarefree_decomposition();
    let rad = factors.iter().fold(UniPoly::one(), |acc, f| acc.mul(f));
    Ok(rehomogenize(h, dh.y_power.min(1), &rad, dh.binary))
}

/// Rational linear factors of a binary form, with multiplicities, monic for
/// the lexicographic order (`y`, or `x - t·y`). The boolean is false when the
/// coefficients were too large for the rational-root search to be exhaustive.
pub fn binary_linear_factors(f: &MultiPoly) -> Result<(Vec<(MultiPoly, u32)>, bool)> {
    let dh = dehomogenize(f)?;
    if !dh.binary {
        return Err(Error::Unsupported("binary form expected".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("factorization"));
    }
    let roster = f.roster();
    let mut out = Vec::new();
    if dh.y_power > 0 {
        out.push((MultiPoly::var(roster, 1), dh.y_power));
    }
    let (roots, complete) = rational_roots(&dh.part);
    for (t, mult) in roots {
        let lin = MultiPoly::from_binary_coeffs(roster, &[Rational::one(), -t]);
        out.push((lin, mult));
    }
    Ok((out, complete))
}

const ROOT_SEARCH_LIMIT: u64 = 1 << 40;

/// Rational roots with multiplicity.
fn rational_roots(u: &UniPoly) -> (Vec<(Rational, u32)>, bool) {
    let mut roots = Vec::new();
    let mut poly = u.clone();
    // zero roots
    let zeros = poly.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((Rational::zero(), zeros as u32));
        poly = UniPoly::new(poly.coeffs()[zeros..].to_vec());
    }
    if poly.degree().unwrap_or(0) == 0 {
        return (roots, true);
    }
    // clear denominators
    let lcm = poly.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> =
        poly.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return (roots, false);
    };
    if a0 > ROOT_SEARCH_LIMIT || an > ROOT_SEARCH_LIMIT {
        return (roots, false);
    }
    let ps = divisors(a0);
    let qs = divisors(an);
    let mut cands: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            if p.gcd(q) != 1 {
                continue;
            }
            for s in [1i64, -1] {
                cands.push(Rational::new(BigInt::from(*p as i64 * s), BigInt::from(*q as i64)));
            }
        }
    }
    cands.sort();
    for t in cands {
        let mut mult = 0;
        while poly.degree().unwrap_or(0) > 0 && poly.eval(&t).is_zero() {
            poly = poly.div_exact(&UniPoly::new(vec![-t.clone(), Rational::one()]));
            mult += 1;
        }
        if mult > 0 {
            roots.push((t, mult));
        }
    }
    (roots, true)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl MultiPoly {
    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.roster().check_same(divisor.roster())?;
        let (de, dc) =
            divisor.terms().next().map(|(e, c)| (e.clone(), c.clone())).ok_or(Error::ZeroPolynomial("divisor"))?;
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.roster());
        loop {
            let lead = rem.terms().next().map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = lead else { break };
            let Some(m) = de.quotient_of(&e) else {
                return Err(Error::Unsupported(format!("{divisor} does not divide {self}")));
            };
            let k = &c * &inv;
            rem = &rem - &divisor.mul_term(&m, &k);
            quot.add_term(m, k);
        }
        Ok(quot)
    }

    /// True when `other = c · self` for a nonzero rational `c`.
    pub fn is_proportional(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Roster};
    use proptest::prelude::*;

    fn xy() -> Roster {
        Roster::new(["x", "y"]).unwrap()
    }
    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(univariate_gcd(&p("x^2-y^2"), &p("x^2+2*x*y+y^2")).unwrap(), p("x+y"));
        assert_eq!(univariate_gcd(&p("x^3"), &p("x*y^2")).unwrap(), p("x"));
        assert_eq!(univariate_gcd(&p("x^2+x*y"), &p("x^2-y^2")).unwrap(), p("x+y"));
        assert_eq!(univariate_gcd(&p("x*y^2"), &p("y^3")).unwrap(), p("y^2"));
        assert_eq!(univariate_gcd(&p("3*x^2-3*y^2"), &MultiPoly::zero(&xy())).unwrap(), p("x^2-y^2"));
        assert!(univariate_gcd(&MultiPoly::zero(&xy()), &MultiPoly::zero(&xy())).is_err());
    }

    #[test]
    fn gcd_rejects_three_variables_and_inhomogeneous() {
        let r = Roster::new(["x", "y", "z"]).unwrap();
        let a = parse_poly("x+z", &r).unwrap();
        assert!(matches!(univariate_gcd(&a, &a), Err(Error::Unsupported(_))));
        assert_eq!(univariate_gcd(&p("x+1"), &p("x")), Err(Error::NotHomogeneous));
    }

    #[test]
    fn gcd_of_genuinely_univariate() {
        let r = Roster::new(["t"]).unwrap();
        let a = parse_poly("t^2-1", &r).unwrap();
        let b = parse_poly("2*t^2+4*t+2", &r).unwrap();
        assert_eq!(univariate_gcd(&a, &b).unwrap(), parse_poly("t+1", &r).unwrap());
    }

    #[test]
    fn square_part_examples() {
        let (d, h) = square_part(&p("x^3*(x+y)^2")).unwrap();
        assert_eq!((d, h), (p("x*(x+y)"), p("x")));
        let (d, h) = square_part(&p("x*y")).unwrap();
        assert_eq!((d, h), (p("1"), p("x*y")));
        let (d, h) = square_part(&p("(x+2*y)^4*y")).unwrap();
        assert_eq!((d, h), (p("(x+2*y)^2"), p("y")));
        let (d, h) = square_part(&p("-3*y^5")).unwrap();
        assert_eq!((d, h), (p("y^2"), p("-3*y")));
        assert!(square_part(&MultiPoly::zero(&xy())).is_err());
    }

    #[test]
    fn linear_factors_found() {
        let (f, complete) = binary_linear_factors(&p("y*(x-2*y)^2*(3*x+y)*(x^2+y^2)")).unwrap();
        assert!(complete);
        assert!(f.contains(&(p("y"), 1)));
        assert!(f.contains(&(p("x-2*y"), 2)));
        assert!(f.contains(&(p("x+1/3*y"), 1)));
        assert_eq!(f.len(), 3);
        let (f, _) = binary_linear_factors(&p("x^2*(x+y)")).unwrap();
        assert!(f.contains(&(p("x"), 2)));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2-y^2").div_exact(&p("x+y")).unwrap(), p("x-y"));
        assert!(p("x^2+y^2").div_exact(&p("x+y")).is_err());
    }

    fn binary_form(deg: u32) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(-3i64..=3, deg as usize + 1).prop_map(|c| {
            let c: Vec<Rational> = c.into_iter().map(crate::poly::rat).collect();
            MultiPoly::from_binary_coeffs(&xy(), &c)
        })
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in binary_form(3), b in binary_form(4), c in binary_form(2)) {
            let a = &a * &c;
            let b = &b * &c;
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = univariate_gcd(&a, &b).unwrap();
            prop_assert!(a.div_exact(&g).is_ok());
            prop_assert!(b.div_exact(&g).is_ok());
            if !c.is_zero() {
                prop_assert!(g.div_exact(&c).is_ok());
            }
        }

        #[test]
        fn square_part_reconstructs(a in binary_form(2), b in binary_form(1), c in binary_form(3)) {
            let h = &(&(&a * &a) * &b) * &c;
            prop_assume!(!h.is_zero());
            let (d, hp) = square_part(&h).unwrap();
            prop_assert_eq!(&(&d * &d) * &hp, h);
            prop_assert_eq!(d.lex_leading_coeff().cloned(), Some(Rational::one()));
            // h' squarefree: gcd(h', dh'/dx) after dehomogenizing is constant
            let dh = dehomogenize(&hp).unwrap();
            let g = dh.part.gcd(&dh.part.derivative());
            prop_assert!(g.degree().unwrap_or(0) == 0);
            prop_assert!(dh.y_power <= 1);
        }
    }
}
