//! Slow reference implementations.
//!
//! Nothing here touches the packed word type or the production counters; the
//! functions work on plain `Vec<i8>` sign sequences and naive loops so they
//! can serve as independent witnesses for the fast paths.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// All sign sequences of length `t`, in lexicographic order (`-1` first).
pub fn all_sequences(t: usize) -> Vec<Vec<i8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|s| {
                [-1i8, 1].into_iter().map(move |e| {
                    let mut next = s.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    out
}

/// Rotation with `out[j] = x[j - k mod t]`.
pub fn rotate(x: &[i8], k: usize) -> Vec<i8> {
    let t = x.len();
    (0..t).map(|j| x[(j + t - k % t) % t]).collect()
}

/// Least rotation by comparing all `t` rotations (O(t^2)).
pub fn least_rotation(x: &[i8]) -> Vec<i8> {
    (0..x.len()).map(|k| rotate(x, k)).min().unwrap_or_default()
}

/// Number of rotation orbits of `{-1, +1}^t`, by listing orbit representatives.
pub fn orbit_count(t: usize) -> usize {
    all_sequences(t)
        .iter()
        .map(|x| least_rotation(x))
        .collect::<BTreeSet<_>>()
        .len()
}

/// A sequence is a proper power if some proper divisor `d` of its length
/// makes it `d`-periodic.
pub fn is_proper_power(x: &[i8]) -> bool {
    let t = x.len();
    (1..t).any(|d| t.is_multiple_of(d) && (0..t).all(|j| x[j] == x[j % d]))
}

/// Longest cyclic block of equal signs, by walking forward from every start.
pub fn longest_cyclic_block(x: &[i8]) -> usize {
    let t = x.len();
    (0..t)
        .map(|s| (0..t).take_while(|&i| x[(s + i) % t] == x[s]).count())
        .max()
        .unwrap_or(0)
}

/// Classical Möbius function by trial division.
pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Primitive necklace count `(1/t) sum_{d | t} mu(d) 2^(t/d)`.
pub fn mobius_primitive_count(t: u64) -> BigUint {
    let mut sum = BigInt::zero();
    for d in 1..=t {
        if t.is_multiple_of(d) {
            let term = BigInt::one() << (t / d) as usize;
            sum += term * mobius(d);
        }
    }
    let q: BigInt = sum / BigInt::from(t);
    q.to_biguint().expect("primitive count is nonnegative")
}

/// Every composition of `t` with parts at most `m`, by depth-first expansion.
pub fn compositions(t: u32, m: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 1..=m.min(rest) {
            prefix.push(p);
            go(rest - p, m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(t, m, &mut Vec::new(), &mut out);
    out
}

/// Real fixed points of `z -> (a z + b)/(c z + d)`, the roots of
/// `c z^2 + (d - a) z - b = 0`, by the quadratic formula.
pub fn fixed_points(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Option<(f64, f64)> {
    if c.is_zero() {
        return None;
    }
    let qa = to_f64(c);
    let qb = to_f64(&(d - a));
    let qc = to_f64(&(-b));
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)))
}

fn to_f64(x: &BigInt) -> f64 {
    let s = x.abs().to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    if x.is_negative() {
        -s
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(orbit_count(1), 2);
        assert_eq!(orbit_count(4), 6);
        assert_eq!(orbit_count(6), 14);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius_primitive_count(6), BigUint::from(9u32));
        assert_eq!(compositions(4, 2).len(), 5);
        assert_eq!(compositions(2, 1), vec![vec![1, 1]]);
        assert!(is_proper_power(&[1, -1, 1, -1]));
        assert_eq!(longest_cyclic_block(&[1, -1, -1, 1]), 2);
    }
}
