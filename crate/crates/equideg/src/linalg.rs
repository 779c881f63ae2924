//! Exact rank computations over `Q` and over prime fields.

use alloc::vec::Vec;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i128>;

/// Rank of a rational matrix given by rows, by fraction-exact elimination.
pub fn rank_rational(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rational::one() / rows[rank][col];
        for entry in rows[rank].iter_mut() {
            *entry *= inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                *entry -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix over `Q`.
pub fn rank_integer(rows: &[Vec<i64>]) -> usize {
    rank_rational(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x as i128)).collect())
            .collect(),
    )
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank over `F_p` for a prime `p < 2^63`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for entry in rows[rank].iter_mut() {
            *entry = mul(*entry, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] % p == 0 {
                continue;
            }
            let factor = row[col] % p;
            for (entry, &q) in row.iter_mut().zip(&pivot_row) {
                *entry = (*entry % p + p - mul(factor, q)) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The smallest primes `p ≡ 1 (mod m)` above `floor`, so that `F_p`
/// contains a primitive `m`-th root of unity.
pub fn primes_one_mod(m: u64, floor: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = floor - floor % m + 1;
    while out.len() < count {
        if p > floor && is_prime(p) {
            out.push(p);
        }
        p += m;
    }
    out
}

/// A primitive `m`-th root of unity modulo a prime `p ≡ 1 (mod m)`.
pub fn primitive_root_of_unity(m: u64, p: u64) -> u64 {
    let factors: Vec<u64> = (2..=m).filter(|&q| m.is_multiple_of(q) && is_prime(q)).collect();
    for g in 2..p {
        let z = pow_mod(g, (p - 1) / m, p);
        if factors.iter().all(|&q| pow_mod(z, m / q, p) != 1) {
            return z;
        }
    }
    unreachable!("F_p has a primitive m-th root when m | p - 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ranks_agree() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank_integer(&rows), 2);
        let modp = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as u64).collect())
            .collect();
        assert_eq!(rank_mod_p(modp, 101), 2);
        assert_eq!(rank_integer(&[vec![0, 0]]), 0);
    }

    #[test]
    fn roots_of_unity() {
        let p = primes_one_mod(24, 1 << 30, 2);
        assert!(p.iter().all(|&q| q % 24 == 1 && is_prime(q)));
        let z = primitive_root_of_unity(24, p[0]);
        assert_eq!(pow_mod(z, 24, p[0]), 1);
        assert_ne!(pow_mod(z, 12, p[0]), 1);
        assert_ne!(pow_mod(z, 8, p[0]), 1);
    }
}
