//! Hilbert series numerators of monomial ideals and the resulting Hilbert
//! polynomials.

use num_traits::{One, Zero};

use crate::poly::{rat, Rational};

type Mono = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by_key(|m| (m.iter().sum::<u32>(), m.clone()));
    gens.dedup();
    let mut out: Vec<Mono> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| divides(m, &g)) {
            out.push(g);
        }
    }
    out
}

/// Integer polynomials in `t`, ascending coefficients.
fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<i128> {
    let mut v = vec![0; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 − t)^n` of
/// `K[x_1..x_n] / M`.
pub(crate) fn series_numerator(gens: &[Mono]) -> Vec<i128> {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Mono>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    let n = gens[0].len();
    let support = |m: &Mono| -> Vec<usize> { (0..n).filter(|&v| m[v] > 0).collect() };
    // pairwise coprime generators: product of (1 − t^deg)
    let mut used = vec![false; n];
    let mut coprime = true;
    for g in &gens {
        for v in support(g) {
            if used[v] {
                coprime = false;
            }
            used[v] = true;
        }
    }
    if coprime {
        return gens.iter().fold(vec![1], |acc, g| mul(&acc, &one_minus_t_pow(g.iter().sum())));
    }
    // split into variable-disjoint components
    let comps = components(&gens, n);
    if comps.len() > 1 {
        return comps.into_iter().fold(vec![1], |acc, c| mul(&acc, &numerator(c)));
    }
    // pivot on the variable occurring in most non-pure-power generators
    let mut counts = vec![0usize; n];
    for g in gens.iter().filter(|g| support(g).len() > 1) {
        for v in support(g) {
            counts[v] += 1;
        }
    }
    let v = (0..n).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("n > 0");
    let mut x = vec![0; n];
    x[v] = 1;
    // M + (x)
    let mut plus: Vec<Mono> = gens.iter().filter(|g| g[v] == 0).cloned().collect();
    plus.push(x.clone());
    // M : x
    let colon: Vec<Mono> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[v] = h[v].saturating_sub(1);
            h
        })
        .collect();
    let a = numerator(minimalize(plus));
    let b = numerator(minimalize(colon));
    add(&a, &mul(&[0, 1], &b))
}

fn components(gens: &[Mono], n: usize) -> Vec<Vec<Mono>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for g in gens {
        let vars: Vec<usize> = (0..n).filter(|&v| g[v] > 0).collect();
        for w in vars.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<(usize, Vec<Mono>)> = Vec::new();
    for g in gens {
        let v = (0..n).find(|&v| g[v] > 0).expect("non-unit monomial");
        let r = find(&mut parent, v);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, list)) => list.push(g.clone()),
            None => groups.push((r, vec![g.clone()])),
        }
    }
    groups.into_iter().map(|(_, l)| l).collect()
}

/// Hilbert polynomial from a series numerator over `n` variables, as
/// ascending rational coefficients in `t`, together with the Krull dimension
/// of the quotient.
pub(crate) fn polynomial_from_numerator(num: &[i128], n: usize) -> (Vec<Rational>, usize) {
    let mut q: Vec<i128> = num.to_vec();
    while q.len() > 1 && q.last() == Some(&0) {
        q.pop();
    }
    if q.iter().all(|&c| c == 0) {
        return (vec![], 0);
    }
    let mut k = 0;
    // divide by (1 − t) while N(1) = 0
    while k < n && q.iter().sum::<i128>() == 0 {
        let mut out = vec![0; q.len() - 1];
        let mut acc = 0;
        for i in 0..q.len() - 1 {
            acc += q[i];
            out[i] = acc;
        }
        q = out;
        k += 1;
    }
    let dim = n - k;
    if dim == 0 {
        return (vec![], 0);
    }
    // Σ_i q_i · C(t − i + dim − 1, dim − 1)
    let mut hp = vec![Rational::zero(); dim];
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        let mut b = vec![Rational::one()];
        let mut fact = Rational::one();
        for j in 1..dim {
            // factor (t − i + j)
            let c = rat(j as i64 - i as i64);
            let mut nb = vec![Rational::zero(); b.len() + 1];
            for (e, v) in b.iter().enumerate() {
                nb[e] += v * &c;
                nb[e + 1] += v;
            }
            b = nb;
            fact *= rat(j as i64);
        }
        for (e, v) in b.iter().enumerate() {
            hp[e] += v * Rational::from_integer(qi.into()) / &fact;
        }
    }
    while hp.last().is_some_and(Zero::is_zero) {
        hp.pop();
    }
    (hp, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerators() {
        // (x^2) in K[x, y]
        assert_eq!(series_numerator(&[vec![2, 0]]), vec![1, 0, -1]);
        // (xy) in K[x, y]: 1 − t^2
        assert_eq!(series_numerator(&[vec![1, 1]]), vec![1, 0, -1]);
        // (x^2, xy) in K[x, y]
        let n = series_numerator(&[vec![2, 0], vec![1, 1]]);
        assert_eq!(n, vec![1, 0, -2, 1]);
    }

    #[test]
    fn polynomials() {
        // conic in P^2
        let (hp, dim) = polynomial_from_numerator(&[1, 0, -1], 3);
        assert_eq!(dim, 2);
        assert_eq!(hp, vec![rat(1), rat(2)]);
        // two points in P^1: (x^2) gives HP 2
        let (hp, _) = polynomial_from_numerator(&[1, 0, -1], 2);
        assert_eq!(hp, vec![rat(2)]);
        // the whole P^2
        let (hp, _) = polynomial_from_numerator(&[1], 3);
        assert_eq!(hp, vec![rat(1), Rational::new(3.into(), 2.into()), Rational::new(1.into(), 2.into())]);
    }
}
