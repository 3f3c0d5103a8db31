//! Certificates for the rank-3 loci of rational normal curves: quadric rank,
//! nondegeneracy, minimality, fibers of `Q̃_ℓ`, singular-locus bounds and the
//! identification of the `ℓ = 1` component with a 2-uple embedding.

use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::plucker::{check_params, lambda_witness, DTerm};
use crate::poly::{binary_linear_factors, rat, square_part, univariate_gcd, MultiPoly, Rational, Roster};
use crate::qmap::{
    alpha_table_symbolic, binomial, express_in_generators, generator_indices, q_ell_eval, vanishing_chain_from_tables,
    veronese_vanishing_check, witness_quadric, QuadForm, SymbolicTables, VanishingChainCert, VeroneseSpace,
};

pub fn quad_rank(q: &QuadForm) -> usize {
    q.rank()
}

/// Whether `q` is a rank-3 quadric of `I(X)_2`.
pub fn rank3_membership(q: &QuadForm, space: &VeroneseSpace) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial("rank-3 membership"));
    }
    Ok(veronese_vanishing_check(q, space) && q.rank() == 3)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockWitness {
    pub i: u32,
    pub j: u32,
    pub witness: DTerm,
    #[serde(with = "crate::json::rational")]
    pub coefficient: Rational,
}

/// `M_k = {α_{i,j} | i + j = k}`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub k: u32,
    pub members: Vec<BlockWitness>,
    /// The witness of `α_{i,j}` has zero coefficient in every `α_{i',j'}` of
    /// the block with `i' < i`.
    pub triangular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NondegeneracyCert {
    pub d: u32,
    pub ell: u32,
    pub basis: Vec<DTerm>,
    /// Row `r` holds the Σ-coordinates of `α_{i,j}` for the `r`-th pair of
    /// `0 ≤ i < j ≤ d−1` in lexicographic order.
    pub matrix: Matrix,
    pub rank: usize,
    pub expected_rank: usize,
    pub blocks: Vec<Block>,
    pub verified: bool,
}

impl NondegeneracyCert {
    /// Recomputes the rank from the stored matrix.
    pub fn recheck(&self) -> bool {
        self.matrix.rank() == self.expected_rank
    }
}

pub fn nondegeneracy_certificate(d: u32, ell: u32) -> Result<NondegeneracyCert> {
    let tables = alpha_table_symbolic(d, ell)?;
    nondegeneracy_from_tables(&tables)
}

pub fn nondegeneracy_from_tables(tables: &SymbolicTables) -> Result<NondegeneracyCert> {
    let basis = tables.basis();
    let (d, ell) = (basis.d, basis.ell);
    let pairs = generator_indices(d);
    let rows: Vec<Vec<Rational>> =
        pairs.iter().map(|&(i, j)| tables.alpha.alpha(i64::from(i), i64::from(j)).dense(basis)).collect();
    let matrix = Matrix::from_rows(rows, basis.len())?;
    let rank = matrix.rank();
    let expected_rank = pairs.len();
    let mut blocks = Vec::new();
    let mut witnesses_ok = true;
    for k in 1..=2 * d - 3 {
        let members: Vec<(u32, u32)> = pairs.iter().copied().filter(|&(i, j)| i + j == k).collect();
        let mut out = Vec::new();
        let mut triangular = true;
        for &(i, j) in &members {
            let w = lambda_witness(i, j, ell, d)?;
            let idx = basis.index_of(&w).expect("witness lies in Σ");
            let coefficient = tables.alpha.alpha(i64::from(i), i64::from(j)).coord(idx);
            witnesses_ok &= !coefficient.is_zero();
            for &(i2, j2) in members.iter().filter(|&&(i2, _)| i2 < i) {
                triangular &= tables.alpha.alpha(i64::from(i2), i64::from(j2)).coord(idx).is_zero();
            }
            out.push(BlockWitness { i, j, witness: w, coefficient });
        }
        witnesses_ok &= triangular;
        blocks.push(Block { k, members: out, triangular });
    }
    let verified = rank == expected_rank && witnesses_ok;
    Ok(NondegeneracyCert { d, ell, basis: basis.elements.clone(), matrix, rank, expected_rank, blocks, verified })
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessPattern {
    pub ell: u32,
    pub quadric: String,
    /// `α_{0,1}, …, α_{0,d−1}` of the witness quadric.
    #[serde(with = "crate::json::rational_vec")]
    pub alpha0: Vec<Rational>,
    pub pattern_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Exclusion {
    pub ell1: u32,
    pub ell2: u32,
    pub excluded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityCert {
    pub d: u32,
    pub witnesses: Vec<WitnessPattern>,
    pub chains: Vec<VanishingChainCert>,
    pub exclusions: Vec<Exclusion>,
    pub verified: bool,
}

/// For every `ℓ₁ < ℓ₂ ≤ d/2`, a point of `W_{ℓ₂}` that no point of `W_{ℓ₁}`
/// can equal: the witness quadric has `α_{0,1} = ⋯ = α_{0,2ℓ₂−2} = 0` and
/// `α_{0,2ℓ₂−1} ≠ 0`, while on `W_{ℓ₁}` the first condition forces every
/// `α_{0,k}` to vanish.
pub fn minimality_certificate(d: u32) -> Result<MinimalityCert> {
    if d < 4 {
        return Err(Error::OutOfRange(format!("need d ≥ 4 for two components, got {d}")));
    }
    let e = d / 2;
    let mut witnesses = Vec::new();
    for ell in 1..=e {
        let (q, alpha) = witness_quadric(d, ell)?;
        let alpha0: Vec<Rational> = (1..d).map(|k| alpha.alpha(0, i64::from(k))).collect();
        let pattern_holds =
            alpha0[..(2 * ell - 2) as usize].iter().all(Zero::is_zero) && !alpha0[(2 * ell - 2) as usize].is_zero();
        let space = VeroneseSpace::new(1, d)?;
        witnesses.push(WitnessPattern { ell, quadric: q.to_poly(&space).to_string(), alpha0, pattern_holds });
    }
    let mut chains = Vec::new();
    for ell in 1..e {
        chains.push(vanishing_chain_from_tables(&alpha_table_symbolic(d, ell)?)?);
    }
    let mut exclusions = Vec::new();
    for ell2 in 2..=e {
        for ell1 in 1..ell2 {
            let chain = &chains[(ell1 - 1) as usize];
            let excluded =
                chain.verified && witnesses[(ell2 - 1) as usize].pattern_holds && 2 * ell1 - 1 <= 2 * ell2 - 2;
            exclusions.push(Exclusion { ell1, ell2, excluded });
        }
    }
    let verified = witnesses.iter().all(|w| w.pattern_holds) && exclusions.iter().all(|x| x.excluded);
    Ok(MinimalityCert { d, witnesses, chains, exclusions, verified })
}

/// A point `⟨f, g⟩` of the Grassmannian of lines in `P(R_ℓ)`, normalized by
/// reduced row echelon form of its coefficient matrix: leading coefficients
/// are 1 and the leading monomial of `f` is lex-larger than that of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannPencilPoint {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub echelon: Matrix,
}

impl GrassmannPencilPoint {
    pub fn new(f: &MultiPoly, g: &MultiPoly, ell: u32) -> Result<Self> {
        let rows = vec![f.binary_coeffs(ell)?, g.binary_coeffs(ell)?];
        let (echelon, pivots) = Matrix::from_rows(rows, ell as usize + 1)?.rref();
        if pivots.len() < 2 {
            return Err(Error::Degenerate("f and g are linearly dependent".into()));
        }
        let roster = f.roster();
        let f = MultiPoly::from_binary_coeffs(roster, echelon.row(0));
        let g = MultiPoly::from_binary_coeffs(roster, echelon.row(1));
        Ok(GrassmannPencilPoint { f, g, echelon })
    }
}

/// A point of `G(1, P(R_ℓ)) × P(R_{d−2ℓ})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberPoint {
    pub pencil: GrassmannPencilPoint,
    /// Representative of the class of `h`, lex-monic.
    pub h: MultiPoly,
}

impl FiberPoint {
    pub fn new(f: &MultiPoly, g: &MultiPoly, h: &MultiPoly, ell: u32) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::Degenerate("h = 0".into()));
        }
        Ok(FiberPoint { pencil: GrassmannPencilPoint::new(f, g, ell)?, h: h.monic() })
    }
}

/// Two distinct points with the same image under `Q̃_ℓ`: the given point
/// `(⟨Cf', Cg'⟩, ⟨D²h'⟩)` and the swapped point `(⟨Df', Dg'⟩, ⟨C²h'⟩)`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberCert {
    pub d: u32,
    pub ell: u32,
    pub s: u32,
    pub c: MultiPoly,
    #[serde(rename = "D")]
    pub dd: MultiPoly,
    pub f_prime: MultiPoly,
    pub g_prime: MultiPoly,
    pub h_prime: MultiPoly,
    pub gcd_fg: MultiPoly,
    pub square_part_h: MultiPoly,
    pub first: FiberPoint,
    pub second: FiberPoint,
    pub quadric: String,
    pub equal_up_to_scalar: bool,
    pub points_distinct: bool,
}

impl FiberCert {
    pub fn verified(&self) -> bool {
        self.equal_up_to_scalar && self.points_distinct
    }

    /// Recomputes both images and compares them projectively.
    pub fn recheck(&self) -> Result<bool> {
        let space = VeroneseSpace::new(1, self.d)?;
        let q1 = q_ell_eval(&space, self.ell, &self.first.pencil.f, &self.first.pencil.g, &self.first.h)?;
        let q2 = q_ell_eval(&space, self.ell, &self.second.pencil.f, &self.second.pencil.g, &self.second.h)?;
        Ok(!q1.is_zero() && q1.projectively_equal(&q2) && self.first != self.second)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FiberVerdict {
    /// No `C | gcd(f,g)`, `D² | h` of equal positive degree are independent.
    InjectiveAtPoint {
        point: FiberPoint,
        gcd_fg: MultiPoly,
        square_part_h: MultiPoly,
        reason: String,
    },
    NonInjective(Box<FiberCert>),
    /// Independent `C`, `D` exist over the algebraic closure but none was
    /// found among the rational divisors tried.
    NonInjectiveOverExtension {
        point: FiberPoint,
        gcd_fg: MultiPoly,
        square_part_h: MultiPoly,
    },
}

impl FiberVerdict {
    pub fn is_injective(&self) -> bool {
        matches!(self, FiberVerdict::InjectiveAtPoint { .. })
    }

    pub fn cert(&self) -> Option<&FiberCert> {
        match self {
            FiberVerdict::NonInjective(c) => Some(c),
            _ => None,
        }
    }
}

fn degree(p: &MultiPoly) -> u32 {
    p.total_degree().unwrap_or(0)
}

const MAX_DIVISORS: usize = 512;

/// Monic divisors of a binary form built from its rational linear factors,
/// its squarefree-decomposition layers and the remaining cofactor.
fn candidate_divisors(p: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let (linear, _) = binary_linear_factors(p)?;
    let lin_product =
        linear.iter().fold(MultiPoly::one(p.roster()), |acc, (l, k)| &acc * &l.pow(i64::from(*k)).expect("k ≥ 0"));
    let rest = p.div_exact(&lin_product)?.monic();
    let mut gens: Vec<(MultiPoly, u32)> = linear;
    if degree(&rest) > 0 {
        // layers of the cofactor: rest = Π P_i^i
        let mut layers = Vec::new();
        let mut cur = rest.clone();
        while degree(&cur) > 0 {
            let sf = crate::poly::squarefree_part(&cur)?;
            layers.push(sf.clone());
            cur = cur.div_exact(&sf)?;
        }
        // repeated squarefree parts share factors; collapse to distinct layers
        let mut distinct: Vec<(MultiPoly, u32)> = Vec::new();
        for l in layers {
            match distinct.iter_mut().find(|(p, _)| *p == l) {
                Some(e) => e.1 += 1,
                None => distinct.push((l, 1)),
            }
        }
        gens.extend(distinct);
    }
    let mut out = vec![MultiPoly::one(p.roster())];
    for (g, mult) in gens {
        let mut next = Vec::new();
        for base in &out {
            let mut acc = base.clone();
            next.push(acc.clone());
            for _ in 0..mult {
                acc = &acc * &g;
                if p.div_exact(&acc).is_ok() {
                    next.push(acc.clone());
                }
            }
        }
        next.dedup();
        out = next;
        if out.len() > MAX_DIVISORS {
            out.truncate(MAX_DIVISORS);
        }
    }
    out.retain(|c| degree(c) > 0);
    out.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.to_string().cmp(&a.to_string())));
    out.dedup();
    Ok(out)
}

fn check_fiber_inputs(d: u32, ell: u32, f: &MultiPoly, g: &MultiPoly, h: &MultiPoly) -> Result<()> {
    check_params(ell, d)?;
    for (p, deg, name) in [(f, ell, "f"), (g, ell, "g"), (h, d - 2 * ell, "h")] {
        if p.roster().len() != 2 {
            return Err(Error::Unsupported(format!("{name} must be a binary form in two variables")));
        }
        if p.is_zero() {
            return Err(Error::Degenerate(format!("{name} = 0")));
        }
        if !p.is_homogeneous() || degree(p) != deg {
            return Err(Error::DegreeMismatch { expected: deg, found: degree(p) });
        }
    }
    f.roster().check_same(g.roster())?;
    f.roster().check_same(h.roster())?;
    Ok(())
}

/// Decides whether `Q̃_ℓ` is injective over the point `(⟨f, g⟩, ⟨h⟩)`, and if
/// not, produces the second preimage.
pub fn fiber_analysis(d: u32, ell: u32, f: &MultiPoly, g: &MultiPoly, h: &MultiPoly) -> Result<FiberVerdict> {
    check_fiber_inputs(d, ell, f, g, h)?;
    let point = FiberPoint::new(f, g, h, ell)?;
    let c0 = univariate_gcd(&point.pencil.f, &point.pencil.g)?;
    let (d0, _) = square_part(&point.h)?;
    let injective = |reason: &str| FiberVerdict::InjectiveAtPoint {
        point: point.clone(),
        gcd_fg: c0.clone(),
        square_part_h: d0.clone(),
        reason: reason.into(),
    };
    if degree(&c0) == 0 {
        return Ok(injective("gcd(f, g) is constant"));
    }
    if degree(&d0) == 0 {
        return Ok(injective("h is squarefree"));
    }
    if degree(&crate::poly::squarefree_part(&(&c0 * &d0))?) == 1 {
        return Ok(injective("gcd(f, g) and the square part of h share a single root"));
    }
    let cs = candidate_divisors(&c0)?;
    let ds = candidate_divisors(&d0)?;
    for c in &cs {
        for dd in ds.iter().filter(|dd| degree(dd) == degree(c)) {
            if c.is_proportional(dd) {
                continue;
            }
            let cert = build_fiber_cert(d, ell, &point, c, dd, &c0, &d0)?;
            return Ok(FiberVerdict::NonInjective(Box::new(cert)));
        }
    }
    Ok(FiberVerdict::NonInjectiveOverExtension { point, gcd_fg: c0, square_part_h: d0 })
}

fn build_fiber_cert(
    d: u32,
    ell: u32,
    point: &FiberPoint,
    c: &MultiPoly,
    dd: &MultiPoly,
    c0: &MultiPoly,
    d0: &MultiPoly,
) -> Result<FiberCert> {
    let s = degree(c);
    let f_prime = point.pencil.f.div_exact(c)?;
    let g_prime = point.pencil.g.div_exact(c)?;
    let h_prime = point.h.div_exact(&(dd * dd))?;
    let second = FiberPoint::new(&(dd * &f_prime), &(dd * &g_prime), &(&(c * c) * &h_prime), ell)?;
    let space = VeroneseSpace::new(1, d)?;
    let q1 = q_ell_eval(&space, ell, &point.pencil.f, &point.pencil.g, &point.h)?;
    let q2 = q_ell_eval(&space, ell, &second.pencil.f, &second.pencil.g, &second.h)?;
    Ok(FiberCert {
        d,
        ell,
        s,
        c: c.clone(),
        dd: dd.clone(),
        f_prime,
        g_prime,
        h_prime,
        gcd_fg: c0.clone(),
        square_part_h: d0.clone(),
        quadric: q1.to_poly(&space).monic().to_string(),
        equal_up_to_scalar: !q1.is_zero() && q1.projectively_equal(&q2),
        points_distinct: *point != second,
        first: point.clone(),
        second,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaValue {
    pub m: u32,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub n: u32,
    pub d: u32,
    pub ell: u32,
    pub applicable: bool,
    pub values: Vec<ThetaValue>,
    pub max: Option<i64>,
    pub argmax: Vec<u32>,
}

/// `2·C(n+m,n) + 2·C(n+ℓ−m,n) + C(n+d−2ℓ−2m,n) − 7`.
pub fn theta_value(n: u32, d: u32, ell: u32, m: u32) -> Result<i64> {
    if m < 1 || m > ell || 2 * ell + 2 * m > d {
        return Err(Error::OutOfRange(format!("m = {m} outside 1 ≤ m ≤ min(ℓ, ⌊(d−2ℓ)/2⌋)")));
    }
    let c = |a: u32| binomial(u64::from(n + a), u64::from(n)) as i64;
    Ok(2 * c(m) + 2 * c(ell - m) + c(d - 2 * ell - 2 * m) - 7)
}

/// The lower bound on the dimension of the singular locus of `W_ℓ`, as the
/// maximum over admissible `m`. Applicable for `2 ≤ ℓ ≤ ⌊d/2⌋ − 1`.
pub fn theta(n: u32, d: u32, ell: u32) -> ThetaReport {
    let e = d / 2;
    let mut report = ThetaReport { n, d, ell, applicable: false, values: vec![], max: None, argmax: vec![] };
    if n < 1 || ell < 2 || ell + 1 > e {
        return report;
    }
    let top = ell.min((d - 2 * ell) / 2);
    report.values =
        (1..=top).map(|m| ThetaValue { m, value: theta_value(n, d, ell, m).expect("m in range") }).collect();
    report.max = report.values.iter().map(|v| v.value).max();
    report.argmax = report.values.iter().filter(|v| Some(v.value) == report.max).map(|v| v.m).collect();
    report.applicable = report.max.is_some();
    report
}

fn random_form(rng: &mut ChaCha8Rng, roster: &Roster, deg: u32) -> MultiPoly {
    let c: Vec<Rational> = (0..=deg).map(|_| rat(rng.gen_range(-5..=5))).collect();
    MultiPoly::from_binary_coeffs(roster, &c)
}

/// `count` random members of the family `(⟨Cf', Cg'⟩, ⟨M²h'⟩)` with
/// `deg C = deg M = m`, each with a verified second preimage.
pub fn singular_family_sample(n: u32, d: u32, ell: u32, m: u32, count: usize, seed: u64) -> Result<Vec<FiberCert>> {
    if n != 1 {
        return Err(Error::Unsupported("fiber certificates need n = 1".into()));
    }
    check_params(ell, d)?;
    if m < 1 || m >= ell || 2 * ell + 2 * m > d {
        return Err(Error::OutOfRange(format!(
            "m = {m} outside 1 ≤ m ≤ min(ℓ−1, ⌊(d−2ℓ)/2⌋) for (d, ℓ) = ({d}, {ell})"
        )));
    }
    let roster = Roster::new(["x", "y"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = random_form(&mut rng, &roster, m);
        let mm = random_form(&mut rng, &roster, m);
        let fp = random_form(&mut rng, &roster, ell - m);
        let gp = random_form(&mut rng, &roster, ell - m);
        let hp = random_form(&mut rng, &roster, d - 2 * ell - 2 * m);
        if c.is_zero() || mm.is_zero() || hp.is_zero() || c.is_proportional(&mm) {
            continue;
        }
        let (f, g, h) = (&c * &fp, &c * &gp, &(&mm * &mm) * &hp);
        let Ok(point) = FiberPoint::new(&f, &g, &h, ell) else { continue };
        let c0 = univariate_gcd(&point.pencil.f, &point.pencil.g)?;
        let (d0, _) = square_part(&point.h)?;
        let cert = build_fiber_cert(d, ell, &point, &c.monic(), &mm.monic(), &c0, &d0)?;
        if !cert.verified() {
            return Err(Error::Falsified(format!("sampled fiber failed to verify: {}", cert.quadric)));
        }
        if fiber_analysis(d, ell, &f, &g, &h)?.is_injective() {
            return Err(Error::Falsified("fiber analysis reports injective on a two-point fiber".into()));
        }
        out.push(cert);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct W1Report {
    pub d: u32,
    pub quadrics: Vec<String>,
    pub count: usize,
    pub expected: usize,
    pub rank: usize,
    pub verified: bool,
}

/// With `q_{01} = 1`, the `ℓ = 1` coefficients `α_{i,j}` are `C(d,2)`
/// independent quadrics in `C_0, …, C_{d−2}`.
pub fn w1_veronese_check(d: u32) -> Result<W1Report> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("need d ≥ 2, got {d}")));
    }
    let tables = alpha_table_symbolic(d, 1)?;
    let basis = tables.basis();
    let croster = Roster::indexed("C", d as usize - 1);
    let mut bindings: HashMap<String, MultiPoly> = HashMap::new();
    bindings.insert("q01".into(), MultiPoly::one(&croster));
    for k in 0..d - 1 {
        let name = format!("C{k}");
        bindings.insert(name.clone(), MultiPoly::var_named(&croster, &name));
    }
    let mut quadrics = Vec::new();
    let mut rows = Vec::new();
    for (i, j) in generator_indices(d) {
        let a = tables.alpha.alpha(i64::from(i), i64::from(j));
        rows.push(a.dense(basis));
        quadrics.push(a.to_qc_poly(basis).substitute(&croster, &bindings)?.to_string());
    }
    let rank = Matrix::from_rows(rows, basis.len())?.rank();
    let expected = binomial(u64::from(d), 2) as usize;
    Ok(W1Report {
        d,
        count: quadrics.len(),
        expected,
        rank,
        verified: rank == expected && quadrics.len() == expected,
        quadrics,
    })
}

/// The α-table specialized through substitutions of the Plücker and `C`
/// variables, e.g. `q_{01} ↦ 1, C_k ↦ a, b, c` for the `ℓ = 1` component.
pub fn specialize_alpha(
    tables: &SymbolicTables,
    target: &Roster,
    bindings: &HashMap<String, MultiPoly>,
) -> Result<Vec<((u32, u32), MultiPoly)>> {
    let basis = tables.basis();
    generator_indices(basis.d)
        .into_iter()
        .map(|(i, j)| {
            let a = tables.alpha.alpha(i64::from(i), i64::from(j)).to_qc_poly(basis);
            Ok(((i, j), a.substitute(target, bindings)?))
        })
        .collect()
}

/// Coefficients `α_{i,j}` of a point's image, in the order of
/// [`generator_indices`].
pub fn alpha_of_point(d: u32, ell: u32, f: &MultiPoly, g: &MultiPoly, h: &MultiPoly) -> Result<Vec<Rational>> {
    let space = VeroneseSpace::new(1, d)?;
    let q = q_ell_eval(&space, ell, f, g, h)?;
    let a = express_in_generators(&q, ell)?;
    Ok(generator_indices(d).into_iter().map(|(i, j)| a.alpha(i64::from(i), i64::from(j))).collect())
}
