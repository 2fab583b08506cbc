//! Brute-force references shared by the integration tests.

#![allow(dead_code)]

use skewring::{Elem, Endo, FiniteRing};

/// Additive closure of `seeds`, plus zero.
pub fn additive_closure(r: &FiniteRing, seeds: impl IntoIterator<Item = Elem>) -> Vec<bool> {
    let mut member = vec![false; r.size()];
    member[r.zero() as usize] = true;
    let mut stack: Vec<Elem> = seeds.into_iter().collect();
    while let Some(x) = stack.pop() {
        if member[x as usize] {
            continue;
        }
        let current: Vec<Elem> = r.elements().filter(|&y| member[y as usize]).collect();
        member[x as usize] = true;
        for y in current {
            let s = r.add(x, y);
            if !member[s as usize] {
                stack.push(s);
            }
        }
    }
    member
}

/// `x` is in the prime radical iff the ideal `RxR` is nilpotent.
pub fn brute_radical(r: &FiniteRing) -> Vec<bool> {
    let n = r.size();
    r.elements()
        .map(|x| {
            let ideal = additive_closure(
                r,
                r.elements()
                    .flat_map(|a| r.elements().map(move |b| r.mul(r.mul(a, x), b))),
            );
            let mut power = ideal.clone();
            for _ in 0..=n {
                if power
                    .iter()
                    .enumerate()
                    .all(|(e, &m)| !m || e == r.zero() as usize)
                {
                    return true;
                }
                let gens: Vec<Elem> = (0..n)
                    .filter(|&p| power[p])
                    .flat_map(|p| (0..n).filter(|&q| ideal[q]).map(move |q| (p, q)))
                    .map(|(p, q)| r.mul(p as Elem, q as Elem))
                    .collect();
                power = additive_closure(r, gens);
            }
            false
        })
        .collect()
}

pub fn alpha_pow(alpha: &Endo, k: usize, mut a: Elem) -> Elem {
    for _ in 0..k {
        a = alpha.apply(a);
    }
    a
}

/// Schoolbook skew product: `(a x^i)(b x^j) = a alpha^i(b) x^(i+j)`.
pub fn skew_product(alpha: &Endo, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let r = alpha.ring();
    let mut out = vec![r.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(a, alpha_pow(alpha, i, b)));
        }
    }
    out
}

/// Every tuple in `R^len`, first coordinate most significant.
pub fn tuples(n: usize, len: usize) -> Vec<Vec<Elem>> {
    (0..n.pow(len as u32))
        .map(|mut code| {
            let mut t = vec![0 as Elem; len];
            for k in (0..len).rev() {
                t[k] = (code % n) as Elem;
                code /= n;
            }
            t
        })
        .collect()
}
