//! Buchberger's algorithm on a flat term representation.
//!
//! Terms are kept in ascending order so the leading term is the last one and
//! reduction pops from the end. Pairs are managed with the Gebauer–Möller
//! update, which implements the product and chain criteria.

use std::cmp::Ordering;
use std::time::Instant;

use num_traits::{One, Zero};

use super::Limits;
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, MonomialOrder, MultiPoly, Rational, Roster};

pub(crate) type Mono = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    /// Ascending in the monomial order; the leading term is last.
    pub terms: Vec<(Mono, Rational)>,
}

impl Poly {
    pub fn from_multi(p: &MultiPoly, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<(Mono, Rational)> = p.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        Poly { terms }
    }

    pub fn to_multi(&self, roster: &Roster) -> MultiPoly {
        MultiPoly::from_terms(roster, self.terms.iter().map(|(m, c)| (ExponentVector::new(m.clone()), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero").1
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, v) in &mut self.terms {
                    *v *= &inv;
                }
            }
        }
    }

    /// `self − c·m·g`.
    fn sub_mul(&self, c: &Rational, m: &[u32], g: &Poly, ord: &MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(e, v)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Mono>(), v));
        let mut a = self.terms.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            let ordering = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match ordering {
                Ordering::Less => out.push(a.next().expect("peeked").clone()),
                Ordering::Greater => {
                    let (e, v) = b.next().expect("peeked");
                    out.push((e, -(c * v)));
                }
                Ordering::Equal => {
                    let (e, x) = a.next().expect("peeked");
                    let (_, y) = b.next().expect("peeked");
                    let v = x - c * y;
                    if !v.is_zero() {
                        out.push((e.clone(), v));
                    }
                }
            }
        }
        Poly { terms: out }
    }

    fn spoly(f: &Poly, g: &Poly, ord: &MonomialOrder) -> Poly {
        let l = lcm(f.lm(), g.lm());
        let mf = quotient(&l, f.lm());
        let mg = quotient(&l, g.lm());
        let scaled_f = Poly {
            terms: f.terms.iter().map(|(e, v)| (e.iter().zip(&mf).map(|(a, b)| a + b).collect(), v / f.lc())).collect(),
        };
        scaled_f.sub_mul(&g.lc().recip(), &mg, g, ord)
    }
}

/// Full reduction of `p` by the polynomials of `basis` selected by `active`.
pub(crate) fn normal_form(p: &Poly, basis: &[Poly], active: &[bool], ord: &MonomialOrder) -> Poly {
    let mut p = p.clone();
    let mut rem: Vec<(Mono, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last() {
        let divisor = basis.iter().zip(active).find(|(g, &on)| on && divides(g.lm(), m)).map(|(g, _)| g);
        match divisor {
            Some(g) => {
                let q = quotient(m, g.lm());
                let coef = c / g.lc();
                p = p.sub_mul(&coef, &q, g, ord);
            }
            None => rem.push(p.terms.pop().expect("nonempty")),
        }
    }
    rem.reverse();
    Poly { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

pub(crate) struct Outcome {
    pub basis: Vec<Poly>,
    pub pairs_processed: usize,
}

pub(crate) fn buchberger(gens: Vec<Poly>, ord: &MonomialOrder, limits: &Limits) -> Result<Outcome> {
    let start = Instant::now();
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;

    let mut gens = gens;
    gens.retain(|g| !g.is_zero());
    gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for g in gens {
        let mut h = normal_form(&g, &basis, &active, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let s = h.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0);
        update(&mut basis, &mut sugar, &mut active, &mut pairs, h, s, ord);
    }

    while !pairs.is_empty() {
        if let Some(t) = limits.timeout {
            if start.elapsed() > t {
                return Err(Error::Timeout(format!("Gröbner basis exceeded {t:?}")));
            }
        }
        if basis.len() > limits.max_basis || processed > limits.max_pairs {
            return Err(Error::Timeout(format!(
                "Gröbner basis exceeded limits ({} elements, {} pairs)",
                basis.len(),
                processed
            )));
        }
        // sugar misleads lex on some small inputs (coefficient blowup), so
        // lex uses the normal strategy: smallest lcm first
        let by_sugar = !matches!(ord, MonomialOrder::Lex);
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                let sugar = if by_sugar { p.sugar.cmp(&q.sugar) } else { Ordering::Equal };
                sugar.then_with(|| ord.cmp(&p.lcm, &q.lcm)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(pick);
        processed += 1;
        let s = Poly::spoly(&basis[pair.i], &basis[pair.j], ord);
        let mut h = normal_form(&s, &basis, &active, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        update(&mut basis, &mut sugar, &mut active, &mut pairs, h, pair.sugar, ord);
    }

    let mut out: Vec<Poly> = basis.into_iter().zip(active).filter(|(_, on)| *on).map(|(p, _)| p).collect();
    // minimal basis, then reduce tails
    let keep: Vec<bool> = (0..out.len())
        .map(|i| {
            !(0..out.len())
                .any(|j| j != i && divides(out[j].lm(), out[i].lm()) && (out[j].lm() != out[i].lm() || j < i))
        })
        .collect();
    out = out.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    let reduced: Vec<Poly> = (0..out.len())
        .map(|i| {
            let mut r = reduce_tail(&out[i], &out, &vec![true; out.len()], i, ord);
            r.make_monic();
            r
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    Ok(Outcome { basis: reduced, pairs_processed: processed })
}

fn pair_sugar(basis: &[Poly], sugar: &[u32], i: usize, j: usize, l: &[u32]) -> u32 {
    let si = sugar[i] + degree(l) - degree(basis[i].lm());
    let sj = sugar[j] + degree(l) - degree(basis[j].lm());
    si.max(sj)
}

/// Gebauer–Möller update after adding `h`.
#[allow(clippy::too_many_arguments)]
fn update(
    basis: &mut Vec<Poly>,
    sugar: &mut Vec<u32>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly,
    s: u32,
    ord: &MonomialOrder,
) {
    let k = basis.len();
    let hlm = h.lm().clone();
    basis.push(h);
    sugar.push(s);
    active.push(true);

    let cand: Vec<(usize, Mono)> = (0..k).filter(|&g| active[g]).map(|g| (g, lcm(&hlm, basis[g].lm()))).collect();
    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Mono)> = Vec::new();
    for (idx, (g, l)) in cand.iter().enumerate() {
        let coprime_pair = coprime(&hlm, basis[*g].lm());
        let dominated =
            cand[idx + 1..].iter().any(|(_, l2)| divides(l2, l)) || kept.iter().any(|(_, l2)| divides(l2, l));
        if coprime_pair || !dominated {
            kept.push((*g, l.clone()));
        }
    }
    // equal lcms: keep one representative
    let mut dedup: Vec<(usize, Mono)> = Vec::new();
    for (g, l) in kept {
        if dedup.iter().any(|(_, l2)| *l2 == l) {
            continue;
        }
        dedup.push((g, l));
    }
    let new_pairs: Vec<(usize, Mono)> = dedup.into_iter().filter(|(g, _)| !coprime(&hlm, basis[*g].lm())).collect();

    pairs.retain(|p| {
        !(divides(&hlm, &p.lcm) && lcm(basis[p.i].lm(), &hlm) != p.lcm && lcm(basis[p.j].lm(), &hlm) != p.lcm)
    });
    for (g, l) in new_pairs {
        let sg = pair_sugar(basis, sugar, g, k, &l);
        pairs.push(Pair { i: g, j: k, lcm: l, sugar: sg });
    }
    for g in 0..k {
        if active[g] && divides(&hlm, basis[g].lm()) {
            active[g] = false;
        }
    }
    // Keep tails reduced; leading monomials and hence all pair data are
    // unchanged. Without this, coefficients of stale tails blow up in lex.
    for g in 0..k {
        if active[g] && basis[g].terms[..basis[g].terms.len() - 1].iter().any(|(m, _)| divides(&hlm, m)) {
            basis[g] = reduce_tail(&basis[g], basis, active, g, ord);
        }
    }
}

/// `lt(p) + NF(tail(p))` with respect to the active elements other than `skip`.
fn reduce_tail(p: &Poly, basis: &[Poly], active: &[bool], skip: usize, ord: &MonomialOrder) -> Poly {
    let others: Vec<bool> = active.iter().enumerate().map(|(j, &on)| on && j != skip).collect();
    let lead = p.terms.last().cloned().expect("nonzero");
    let mut r = normal_form(&Poly { terms: p.terms[..p.terms.len() - 1].to_vec() }, basis, &others, ord);
    r.terms.push(lead);
    r
}

/// Every S-polynomial of `basis` reduces to zero.
pub(crate) fn is_groebner(basis: &[Poly], ord: &MonomialOrder) -> bool {
    let on = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if coprime(basis[i].lm(), basis[j].lm()) {
                continue;
            }
            if !normal_form(&Poly::spoly(&basis[i], &basis[j], ord), basis, &on, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monic, no leading monomial divides any term of another element.
pub(crate) fn is_reduced(basis: &[Poly]) -> bool {
    basis.iter().enumerate().all(|(i, p)| {
        !p.is_zero()
            && p.lc().is_one()
            && basis.iter().enumerate().all(|(j, q)| j == i || p.terms.iter().all(|(m, _)| !divides(q.lm(), m)))
    })
}
