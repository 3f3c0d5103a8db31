//! End-to-end replays of the worked examples for the rational normal quartic
//! (`d = 4`) and quintic (`d = 5`), diffed against embedded expectations.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with, eliminate_with, hilbert_from_basis, radical_membership_with, HilbertPolynomial, Ideal, Limits,
    RadicalCert,
};
use crate::poly::{parse_poly, rat, MonomialOrder, MultiPoly, Rational, Roster};
use crate::qmap::{alpha_table_symbolic, generator_indices};
use crate::structure::specialize_alpha;

/// `[a² : ab : ac : b²−ac : bc : c²]`.
pub const W1_PARAMETERIZATION: [&str; 6] = ["a^2", "a*b", "a*c", "b^2 - a*c", "b*c", "c^2"];
/// `[a² : 2ab : b² : b²+2ac : 2bc : c²]` with `a = q01`, `b = q02`, `c = q12`.
pub const W2_PARAMETERIZATION: [&str; 6] = ["a^2", "2*a*b", "b^2", "b^2 + 2*a*c", "2*b*c", "c^2"];

/// The ten coefficients `α_{i,j}` of the `d = 5`, `ℓ = 2` table, in the
/// order of [`generator_indices`].
pub const D5_ALPHA: [&str; 10] = [
    "q01^2*C0^2",
    "2*q01*q02*C0^2 + q01^2*C0*C1",
    "q02^2*C0^2 + 2*q01*q02*C0*C1",
    "q02^2*C0*C1",
    "q02^2*C0^2 + 2*q01*q12*C0^2 + 2*q01*q02*C0*C1 + q01^2*C1^2",
    "2*q02*q12*C0^2 + 2*q02^2*C0*C1 + 2*q01*q12*C0*C1 + 2*q01*q02*C1^2",
    "2*q02*q12*C0*C1 + q02^2*C1^2",
    "q12^2*C0^2 + 2*q02*q12*C0*C1 + q02^2*C1^2 + 2*q01*q12*C1^2",
    "q12^2*C0*C1 + q02*q12*C1^2",
    "q12^2*C1^2",
];

fn abc() -> Roster {
    Roster::new(["a", "b", "c"]).expect("valid roster")
}

fn parse_all(src: &[&str], r: &Roster) -> Vec<MultiPoly> {
    src.iter().map(|s| parse_poly(s, r).expect("embedded expectation parses")).collect()
}

/// The `W_ℓ` parameterizations for `d = 4` derived from the symbolic tables:
/// `q01 ↦ 1, C_k ↦ a, b, c` for `ℓ = 1` and `q01, q02, q12 ↦ a, b, c`,
/// `C0 ↦ 1` for `ℓ = 2`.
pub fn d4_parameterizations() -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    let r = abc();
    let var = |n: &str| MultiPoly::var_named(&r, n);
    let one = MultiPoly::one(&r);
    let b1: HashMap<String, MultiPoly> = [("q01", one.clone()), ("C0", var("a")), ("C1", var("b")), ("C2", var("c"))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let b2: HashMap<String, MultiPoly> = [("q01", var("a")), ("q02", var("b")), ("q12", var("c")), ("C0", one)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let w1 = specialize_alpha(&alpha_table_symbolic(4, 1)?, &r, &b1)?.into_iter().map(|(_, p)| p).collect();
    let w2 = specialize_alpha(&alpha_table_symbolic(4, 2)?, &r, &b2)?.into_iter().map(|(_, p)| p).collect();
    Ok((w1, w2))
}

/// `{z_k − m_k(params)}` over the roster `params ++ z0..z_{N−1}`.
pub fn graph_ideal(params: &[MultiPoly], z_prefix: &str) -> Result<Ideal> {
    let p = params.first().ok_or_else(|| Error::Degenerate("empty parameterization".into()))?.roster().clone();
    let z = Roster::indexed(z_prefix, params.len());
    let big = p.union(&z);
    let gens = params
        .iter()
        .enumerate()
        .map(|(k, m)| Ok(&MultiPoly::var_named(&big, &format!("{z_prefix}{k}")) - &m.embed(&big)?))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&big, gens)
}

/// Ideal of the closure of the image of a parameterization.
pub fn image_ideal(params: &[MultiPoly], z_prefix: &str, limits: &Limits) -> Result<Ideal> {
    let g = graph_ideal(params, z_prefix)?;
    let names: Vec<String> = params[0].roster().names().to_vec();
    let drop: Vec<&str> = names.iter().map(String::as_str).collect();
    eliminate_with(&g, &drop, limits)
}

/// Every generator of `ideal` vanishes after substituting the
/// parameterization `z_k ↦ params[k]`.
pub fn vanishes_on(ideal: &Ideal, params: &[MultiPoly], z_prefix: &str) -> Result<bool> {
    let target = params[0].roster().clone();
    let bindings: HashMap<String, MultiPoly> =
        params.iter().enumerate().map(|(k, m)| (format!("{z_prefix}{k}"), m.clone())).collect();
    for g in ideal.generators() {
        if !g.substitute(&target, &bindings)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleD4Report {
    pub w1_parameterization: Vec<String>,
    pub w2_parameterization: Vec<String>,
    pub w1_matches: bool,
    pub w2_matches: bool,
    pub ideal_w1: Vec<String>,
    pub ideal_w2: Vec<String>,
    pub ideals_vanish: bool,
    pub hilbert_w1: HilbertPolynomial,
    pub hilbert_w2: HilbertPolynomial,
    pub linear_form: String,
    pub radical: RadicalCert,
    pub z0_in_radical: bool,
    pub intersection_hilbert: HilbertPolynomial,
    pub expected_intersection_hilbert: String,
    pub verified: bool,
}

pub fn example_d4(limits: &Limits) -> Result<ExampleD4Report> {
    let r = abc();
    let (w1, w2) = d4_parameterizations()?;
    let w1_matches = w1 == parse_all(&W1_PARAMETERIZATION, &r);
    let w2_matches = w2 == parse_all(&W2_PARAMETERIZATION, &r);
    let i1 = image_ideal(&w1, "z", limits)?;
    let i2 = image_ideal(&w2, "z", limits)?;
    let ideals_vanish = vanishes_on(&i1, &w1, "z")? && vanishes_on(&i2, &w2, "z")?;
    let hilbert_w1 = hilbert_from_basis(&buchberger_with(&i1, MonomialOrder::DegRevLex, limits)?);
    let hilbert_w2 = hilbert_from_basis(&buchberger_with(&i2, MonomialOrder::DegRevLex, limits)?);
    let sum = i1.sum(&i2)?;
    let zr = sum.roster().clone();
    let lin = parse_poly("3*z2 - z3", &zr)?;
    let radical = radical_membership_with(&lin, &sum, limits)?;
    let z0_in_radical = radical_membership_with(&MultiPoly::var_named(&zr, "z0"), &sum, limits)?.member;
    let intersection = sum.with_generator(&lin)?;
    let intersection_hilbert = hilbert_from_basis(&buchberger_with(&intersection, MonomialOrder::DegRevLex, limits)?);
    let expected = "4*t + 1";
    let surface = "2*t^2 + 3*t + 1";
    let verified = w1_matches
        && w2_matches
        && ideals_vanish
        && radical.member
        && !z0_in_radical
        && intersection_hilbert.to_string() == expected
        && hilbert_w1.to_string() == surface
        && hilbert_w2.to_string() == surface;
    let strs = |v: &[MultiPoly]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    Ok(ExampleD4Report {
        w1_parameterization: strs(&w1),
        w2_parameterization: strs(&w2),
        w1_matches,
        w2_matches,
        ideal_w1: strs(i1.generators()),
        ideal_w2: strs(i2.generators()),
        ideals_vanish,
        hilbert_w1,
        hilbert_w2,
        linear_form: lin.to_string(),
        radical,
        z0_in_radical,
        intersection_hilbert,
        expected_intersection_hilbert: expected.into(),
        verified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaRow {
    pub i: u32,
    pub j: u32,
    pub computed: String,
    pub expected: String,
    pub matches: bool,
    /// The expected row equals the mirror image of the expected row at
    /// `(d−1−j, d−1−i)`.
    pub expected_mirror_consistent: bool,
}

/// The `x ↔ y` symmetry on `K[q, C]`: `A_i ↦ A_{ℓ−i}` and likewise for `B`,
/// so `q_{ab} ↦ −q_{ℓ−b,ℓ−a}`, and `C_k ↦ C_{d−2ℓ−k}`. It sends `α_{i,j}` to
/// `α_{d−1−j,d−1−i}`.
pub fn mirror_qc(p: &MultiPoly, ell: u32, d: u32) -> Result<MultiPoly> {
    let r = p.roster().clone();
    let mut bindings = HashMap::new();
    for a in 0..=ell {
        for b in a + 1..=ell {
            let image = format!("q{}{}", ell - b, ell - a);
            bindings.insert(format!("q{a}{b}"), -&MultiPoly::var_named(&r, &image));
        }
    }
    let c = d - 2 * ell;
    for k in 0..=c {
        bindings.insert(format!("C{k}"), MultiPoly::var_named(&r, &format!("C{}", c - k)));
    }
    p.substitute(&r, &bindings)
}

/// The `d = 5`, `ℓ = 2` α-table against the embedded expectations. Equality
/// is tested in `K[q, C]`, where distinct Σ elements are distinct monomials.
pub fn d5_alpha_rows() -> Result<Vec<AlphaRow>> {
    let t = alpha_table_symbolic(5, 2)?;
    let basis = t.basis();
    let r = basis.qc_roster();
    let idx = generator_indices(5);
    let expected: Vec<MultiPoly> = D5_ALPHA.iter().map(|s| parse_poly(s, &r)).collect::<Result<_>>()?;
    idx.iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            let a = t.alpha.alpha(i64::from(i), i64::from(j));
            let matches = a.to_qc_poly(basis) == expected[k];
            let partner = idx.iter().position(|&p| p == (4 - j, 4 - i)).expect("mirror pair exists");
            let expected_mirror_consistent = mirror_qc(&expected[partner], 2, 5)? == expected[k];
            Ok(AlphaRow {
                i,
                j,
                computed: a.display(basis),
                expected: D5_ALPHA[k].into(),
                matches,
                expected_mirror_consistent,
            })
        })
        .collect()
}

/// Bidegree-(2,2) monomials on `P² × P¹`, in descending lex order.
fn segre_veronese_exponents() -> Vec<[u32; 5]> {
    let mut out = Vec::new();
    for a0 in (0..=2u32).rev() {
        for a1 in (0..=2 - a0).rev() {
            for b0 in (0..=2u32).rev() {
                out.push([a0, a1, 2 - a0 - a1, b0, 2 - b0]);
            }
        }
    }
    out
}

/// Quadratic binomials `x_i x_j − x_k x_l` with equal exponent sums: the
/// ideal of `ν₂(P² × P¹) ⊂ P¹⁷`.
pub fn x_ideal() -> Result<Ideal> {
    let e = segre_veronese_exponents();
    let r = Roster::indexed("x", e.len());
    let pairs: Vec<(usize, usize)> = (0..e.len()).flat_map(|i| (i..e.len()).map(move |j| (i, j))).collect();
    let sum = |&(i, j): &(usize, usize)| -> [u32; 5] { std::array::from_fn(|k| e[i][k] + e[j][k]) };
    let mono = |&(i, j): &(usize, usize)| &MultiPoly::var(&r, i) * &MultiPoly::var(&r, j);
    let mut gens = Vec::new();
    for (a, p) in pairs.iter().enumerate() {
        // one binomial to the first pair of the same class
        if let Some(q) = pairs[..a].iter().find(|q| sum(q) == sum(p)) {
            gens.push(&mono(q) - &mono(p));
        }
    }
    Ideal::new(&r, gens)
}

/// `(t+1)(2t+1)² = h⁰(O_{P²}(2t)) · h⁰(O_{P¹}(2t))`.
pub fn x_closed_form() -> Vec<Rational> {
    vec![rat(1), rat(5), rat(8), rat(4)]
}

/// The parameterization of `Y` by the ten `α_{i,j}` over `q01, q02, q12, C0, C1`.
pub fn y_parameterization() -> Result<Vec<MultiPoly>> {
    let t = alpha_table_symbolic(5, 2)?;
    let basis = t.basis();
    Ok(generator_indices(5)
        .into_iter()
        .map(|(i, j)| t.alpha.alpha(i64::from(i), i64::from(j)).to_qc_poly(basis))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleD5Report {
    pub alpha: Vec<AlphaRow>,
    pub alpha_matches: bool,
    pub x_hilbert: HilbertPolynomial,
    pub x_matches_closed_form: bool,
    /// Present when the long-running elimination for `Y` was requested and
    /// finished within its limits.
    pub y_hilbert: Option<HilbertPolynomial>,
    /// The same elimination run on the table exactly as embedded in
    /// [`D5_ALPHA`].
    pub y_hilbert_embedded_table: Option<HilbertPolynomial>,
    pub y_expected: String,
    pub y_status: String,
    pub y_generators: usize,
    #[serde(with = "crate::json::rational_vec")]
    pub difference: Vec<Rational>,
    pub verified: bool,
}

pub fn example_d5(long: bool, limits: &Limits) -> Result<ExampleD5Report> {
    let alpha = d5_alpha_rows()?;
    let alpha_matches = alpha.iter().all(|r| r.matches);
    let x_hilbert = hilbert_from_basis(&buchberger_with(&x_ideal()?, MonomialOrder::DegRevLex, limits)?);
    let x_matches_closed_form = x_hilbert.coeffs == x_closed_form();
    let (mut y_hilbert, mut y_status, mut y_generators, mut difference) = (None, "skipped".to_string(), 0, vec![]);
    let mut y_hilbert_embedded_table = None;
    let mut y_ok = true;
    if long {
        let start = Instant::now();
        let computed = y_parameterization().and_then(|p| y_hilbert_polynomial(&p, limits));
        match computed {
            Ok((iy, hp)) => {
                y_status = format!("computed in {:.1?}", start.elapsed());
                y_generators = iy.generators().len();
                difference = (0..4)
                    .map(|k| {
                        x_hilbert.coeffs.get(k).cloned().unwrap_or_default()
                            - hp.coeffs.get(k).cloned().unwrap_or_default()
                    })
                    .collect();
                while difference.last().is_some_and(Zero::is_zero) {
                    difference.pop();
                }
                y_ok = hp.coeffs == HilbertPolynomial::from_ints(&Y_EXPECTED) && difference == [rat(6)];
                y_hilbert = Some(hp);
                y_hilbert_embedded_table = Some(y_hilbert_polynomial(&y_parameterization_embedded()?, limits)?.1);
            }
            Err(Error::Timeout(msg)) => {
                y_status = format!("not finished: {msg}");
                y_ok = false;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ExampleD5Report {
        verified: alpha_matches && x_matches_closed_form && y_ok,
        alpha,
        alpha_matches,
        x_hilbert,
        x_matches_closed_form,
        y_hilbert,
        y_hilbert_embedded_table,
        y_expected: HilbertPolynomial {
            coeffs: HilbertPolynomial::from_ints(&Y_EXPECTED),
            dimension: 3,
            series_numerator: vec![],
        }
        .to_string(),
        y_status,
        y_generators,
        difference,
    })
}

/// `4t³ + 8t² + 5t − 5`, ascending.
pub const Y_EXPECTED: [i64; 4] = [-5, 5, 8, 4];

/// The parameterization read from the embedded table [`D5_ALPHA`].
pub fn y_parameterization_embedded() -> Result<Vec<MultiPoly>> {
    let r = alpha_table_symbolic(5, 2)?.basis().qc_roster();
    D5_ALPHA.iter().map(|s| parse_poly(s, &r)).collect()
}

/// Eliminates the parameters of a parameterization of `Y` and reads off its
/// Hilbert polynomial.
pub fn y_hilbert_polynomial(params: &[MultiPoly], limits: &Limits) -> Result<(Ideal, HilbertPolynomial)> {
    let iy = image_ideal(params, "z", limits)?;
    if !vanishes_on(&iy, params, "z")? {
        return Err(Error::Falsified("eliminated generator does not vanish on Y".into()));
    }
    let hp = hilbert_from_basis(&buchberger_with(&iy, MonomialOrder::DegRevLex, limits)?);
    Ok((iy, hp))
}

/// Default budget for the `Y` elimination.
pub const Y_TIMEOUT: Duration = Duration::from_secs(30 * 60);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_parameterizations_match() {
        let (w1, w2) = d4_parameterizations().unwrap();
        assert_eq!(w1, parse_all(&W1_PARAMETERIZATION, &abc()));
        assert_eq!(w2, parse_all(&W2_PARAMETERIZATION, &abc()));
    }

    #[test]
    fn w1_image_contains_known_quadric() {
        let (w1, _) = d4_parameterizations().unwrap();
        let i = image_ideal(&w1, "z", &Limits::default()).unwrap();
        assert!(vanishes_on(&i, &w1, "z").unwrap());
        let gb = buchberger_with(&i, MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        // ab·ac = a²·bc
        let f = parse_poly("z1*z2 - z0*z4", i.roster()).unwrap();
        assert!(gb.normal_form(&f).unwrap().is_zero());
        assert_eq!(i.generators().len(), 6);
    }

    #[test]
    fn d4_replay() {
        let r = example_d4(&Limits::default()).unwrap();
        assert!(r.verified, "{r:?}");
    }

    #[test]
    fn d5_alpha_rows() {
        let rows = super::d5_alpha_rows().unwrap();
        let bad: Vec<(u32, u32)> = rows.iter().filter(|r| !r.matches).map(|r| (r.i, r.j)).collect();
        assert_eq!(bad, [(2, 4)]);
        assert_eq!(rows[8].computed, "q12^2*C0*C1 + 2*q02*q12*C1^2");
        // the displayed table is not symmetric under x <-> y exactly at that row
        let asym: Vec<(u32, u32)> = rows.iter().filter(|r| !r.expected_mirror_consistent).map(|r| (r.i, r.j)).collect();
        assert_eq!(asym, [(0, 2), (2, 4)]);
    }

    #[test]
    fn computed_tables_are_mirror_symmetric() {
        for d in 2..=7 {
            for ell in 1..=d / 2 {
                let t = alpha_table_symbolic(d, ell).unwrap();
                let b = t.basis();
                for (i, j) in generator_indices(d) {
                    let a = t.alpha.alpha(i64::from(i), i64::from(j)).to_qc_poly(b);
                    let m = t.alpha.alpha(i64::from(d - 1 - j), i64::from(d - 1 - i)).to_qc_poly(b);
                    assert_eq!(mirror_qc(&m, ell, d).unwrap(), a, "d={d} ell={ell} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn x_ideal_shape() {
        let i = x_ideal().unwrap();
        // 171 quadratic monomials minus 75 bidegree-(4,4) monomials
        let gb = buchberger_with(&i, MonomialOrder::DegRevLex, &Limits::default()).unwrap();
        let deg2 = gb.elements().iter().filter(|p| p.total_degree() == Some(2)).count();
        assert_eq!(deg2, 171 - 75);
        assert_eq!(hilbert_from_basis(&gb).coeffs, x_closed_form());
    }

    #[test]
    #[ignore = "long-running elimination"]
    fn y_hilbert_long() {
        let lim = Limits::with_timeout(Y_TIMEOUT);
        let (iy, hp) = y_hilbert_polynomial(&y_parameterization().unwrap(), &lim).unwrap();
        assert_eq!(iy.generators().len(), 113);
        assert_eq!(hp.to_string(), "4*t^3 + 8*t^2 - t + 2");
        let (_, hp) = y_hilbert_polynomial(&y_parameterization_embedded().unwrap(), &lim).unwrap();
        assert_eq!(hp.to_string(), "4*t^3 + 8*t^2 + 5*t - 6");
    }
}
