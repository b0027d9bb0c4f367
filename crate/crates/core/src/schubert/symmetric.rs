//! Universal polynomial for `c(E ⊗ F)` by the splitting principle.
//!
//! With `y_1..y_a` the Chern roots of `F` and `E_1..E_b` the Chern classes of
//! `E` kept as formal symbols,
//!
//! ```text
//! Π_j Π_i (1 + x_i + y_j) = Π_j Σ_r E_r (1 + y_j)^(b - r)
//! ```
//!
//! The right-hand side is symmetric in the `y_j`; it is rewritten in the
//! elementary symmetric polynomials `F_s = e_s(y)` by repeatedly cancelling
//! the lex-leading monomial (Gauss's algorithm).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::binom;

type Exps = Vec<u32>;
/// Polynomial in the formal symbols `E_r`, keyed by exponent vectors.
type EPoly = BTreeMap<Exps, BigInt>;
/// Polynomial in the roots `y_j` with `EPoly` coefficients.
type MixedPoly = BTreeMap<Exps, EPoly>;
/// Polynomial in the roots `y_j` only.
type YPoly = BTreeMap<Exps, BigInt>;

/// One term `coeff · Π E_r^{e[r-1]} · Π F_s^{f[s-1]}` of the reduced polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalTerm {
    pub e: Exps,
    pub f: Exps,
    pub coeff: BigInt,
}

fn e_weight(e: &[u32]) -> u32 {
    e.iter().enumerate().map(|(i, x)| (i as u32 + 1) * x).sum()
}

fn y_weight(y: &[u32]) -> u32 {
    y.iter().sum()
}

fn add_into(target: &mut EPoly, key: Exps, c: BigInt) {
    use std::collections::btree_map::Entry;
    match target.entry(key) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn add_mixed(target: &mut MixedPoly, y: Exps, e: Exps, c: BigInt) {
    let slot = target.entry(y.clone()).or_default();
    add_into(slot, e, c);
    if slot.is_empty() {
        target.remove(&y);
    }
}

/// `f(y_j) = Σ_r E_r (1 + y_j)^(b-r)` as a mixed polynomial.
fn factor(a: usize, b: usize, j: usize) -> MixedPoly {
    let mut out = MixedPoly::new();
    for r in 0..=b {
        let mut e = vec![0u32; b];
        if r > 0 {
            e[r - 1] = 1;
        }
        for t in 0..=(b - r) {
            let mut y = vec![0u32; a];
            y[j] = t as u32;
            add_mixed(&mut out, y, e.clone(), binom((b - r) as i64, t as i64));
        }
    }
    out
}

fn mul_mixed(p: &MixedPoly, q: &MixedPoly, max_weight: u32) -> MixedPoly {
    let mut out = MixedPoly::new();
    for (y1, c1) in p {
        for (y2, c2) in q {
            let y: Exps = y1.iter().zip(y2).map(|(a, b)| a + b).collect();
            let yw = y_weight(&y);
            if yw > max_weight {
                continue;
            }
            for (e1, d1) in c1 {
                for (e2, d2) in c2 {
                    let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    if yw + e_weight(&e) > max_weight {
                        continue;
                    }
                    add_mixed(&mut out, y.clone(), e, d1 * d2);
                }
            }
        }
    }
    out
}

fn mul_y(p: &YPoly, q: &YPoly) -> YPoly {
    let mut out = YPoly::new();
    for (y1, c1) in p {
        for (y2, c2) in q {
            let y: Exps = y1.iter().zip(y2).map(|(a, b)| a + b).collect();
            add_into(&mut out, y, c1 * c2);
        }
    }
    out
}

/// `e_s(y_1..y_a)` expanded in monomials.
fn elementary(a: usize, s: usize) -> YPoly {
    fn go(a: usize, s: usize, start: usize, cur: &mut Exps, out: &mut YPoly) {
        if s == 0 {
            out.insert(cur.clone(), BigInt::one());
            return;
        }
        for i in start..a {
            cur[i] = 1;
            go(a, s - 1, i + 1, cur, out);
            cur[i] = 0;
        }
    }
    let mut out = YPoly::new();
    go(a, s, 0, &mut vec![0; a], &mut out);
    out
}

/// Expands `Π_s e_s(y)^{f[s-1]}`, memoized on `f`.
fn elementary_monomial(a: usize, f: &Exps, memo: &mut HashMap<Exps, YPoly>) -> YPoly {
    if let Some(hit) = memo.get(f) {
        return hit.clone();
    }
    let mut acc: YPoly = YPoly::from([(vec![0; a], BigInt::one())]);
    for (s, &pow) in f.iter().enumerate() {
        if pow == 0 {
            continue;
        }
        let e = elementary(a, s + 1);
        for _ in 0..pow {
            acc = mul_y(&acc, &e);
        }
    }
    memo.insert(f.clone(), acc.clone());
    acc
}

/// Reduced universal polynomial of `c(E ⊗ F)` for `rank F = a` (expanded in roots)
/// and `rank E = b` (formal symbols), truncated above weighted degree `max_weight`.
pub fn tensor_chern_universal(a: usize, b: usize, max_weight: u32) -> Vec<UniversalTerm> {
    let mut poly = MixedPoly::from([(vec![0; a], EPoly::from([(vec![0; b], BigInt::one())]))]);
    for j in 0..a {
        poly = mul_mixed(&poly, &factor(a, b, j), max_weight);
    }

    let mut memo = HashMap::new();
    let mut result: BTreeMap<(Exps, Exps), BigInt> = BTreeMap::new();
    while let Some((lead, coeff_poly)) = poly.pop_last() {
        debug_assert!(lead.windows(2).all(|w| w[0] >= w[1]), "not symmetric");
        let f: Exps = (0..a)
            .map(|s| lead[s] - lead.get(s + 1).copied().unwrap_or(0))
            .collect();
        let expansion = elementary_monomial(a, &f, &mut memo);
        for (e, c) in &coeff_poly {
            *result.entry((e.clone(), f.clone())).or_default() += c;
        }
        for (y, d) in expansion {
            if y == lead {
                continue;
            }
            for (e, c) in &coeff_poly {
                add_mixed(&mut poly, y.clone(), e.clone(), -(c * &d));
            }
        }
    }
    result
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((e, f), coeff)| UniversalTerm { e, f, coeff })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(terms: &[UniversalTerm], e: &[u32], f: &[u32]) -> BigInt {
        terms
            .iter()
            .find(|t| t.e == e && t.f == f)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    #[test]
    fn line_bundles() {
        // c(L ⊗ M) = 1 + c1(L) + c1(M)
        let t = tensor_chern_universal(1, 1, 10);
        assert_eq!(t.len(), 3);
        assert_eq!(find(&t, &[0], &[0]), BigInt::one());
        assert_eq!(find(&t, &[1], &[0]), BigInt::one());
        assert_eq!(find(&t, &[0], &[1]), BigInt::one());
    }

    #[test]
    fn rank_two_with_line() {
        // c(E ⊗ L), rank E = 2: 1 + (c1 + 2l) + (c2 + c1 l + l^2)
        let t = tensor_chern_universal(1, 2, 10);
        assert_eq!(find(&t, &[1, 0], &[0]), BigInt::one());
        assert_eq!(find(&t, &[0, 0], &[1]), BigInt::from(2));
        assert_eq!(find(&t, &[0, 1], &[0]), BigInt::one());
        assert_eq!(find(&t, &[1, 0], &[1]), BigInt::one());
        assert_eq!(find(&t, &[0, 0], &[2]), BigInt::one());
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn symmetric_in_the_two_factors() {
        // swapping which side is expanded in roots must give the same polynomial
        let ab = tensor_chern_universal(2, 3, 8);
        let ba = tensor_chern_universal(3, 2, 8);
        assert_eq!(ab.len(), ba.len());
        for t in &ab {
            assert_eq!(find(&ba, &t.f, &t.e), t.coeff, "term {t:?}");
        }
    }
}
