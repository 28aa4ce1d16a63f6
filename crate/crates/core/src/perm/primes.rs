use std::collections::BTreeSet;

use super::group::PermGroup;

pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The set of prime divisors; empty for 1.
pub fn prime_divisors(n: u128) -> BTreeSet<u128> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn group_prime_divisors(g: &PermGroup) -> BTreeSet<u128> {
    prime_divisors(g.order())
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u128) -> u128 {
    let mut acc = 1;
    while n % p == 0 {
        n /= p;
        acc *= p;
    }
    acc
}

pub fn is_p_power(n: u128, p: u128) -> bool {
    p_part(n, p) == n
}

/// If `n` is a prime power `p^k` with `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u128) -> Option<(u128, u32)> {
    let f = factorize(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_sets() {
        assert!(prime_divisors(1).is_empty());
        assert_eq!(prime_divisors(336).into_iter().collect::<Vec<_>>(), vec![2, 3, 7]);
        assert_eq!(
            prime_divisors(9828).into_iter().collect::<Vec<_>>(),
            vec![2, 3, 7, 13]
        );
        assert_eq!(p_part(336, 2), 16);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
    }
}
