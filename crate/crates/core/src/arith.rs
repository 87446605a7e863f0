//! Elementary number theory on machine integers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
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

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exponent of `p` in `n` (the p-adic valuation). `n` must be nonzero.
pub fn nu_p(mut n: u64, p: u64) -> u32 {
    assert!(n != 0, "nu_p(0) is undefined");
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(nu_p(n, p))
}

pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

/// Product of the distinct primes dividing `n`.
pub fn squarefree_part(n: u64) -> u64 {
    prime_divisors(n).into_iter().product()
}

pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    result as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `a` modulo `m` (`a` must be a unit).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    debug_assert_eq!(gcd(a, m), 1);
    let phi = euler_phi(m);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord % p == 0 && mod_pow(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Units of ℤ/nℤ in increasing order (`[0]` for n = 1).
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&k| gcd(k, n) == 1).collect()
}

/// Least prime `q` with `q ≡ 1 (mod m)` and `q > bound`.
pub fn least_prime_congruent_one(m: u64, bound: f64) -> u64 {
    let mut q = m + 1;
    while (q as f64) <= bound || !is_prime(q) {
        q += m;
    }
    q
}

/// Least primitive root modulo the prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let ps = prime_divisors(q - 1);
    (2..q)
        .find(|&g| ps.iter().all(|&p| mod_pow(g, (q - 1) / p, q) != 1))
        .expect("every prime has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_functions() {
        assert_eq!(squarefree_part(12), 6);
        assert_eq!(squarefree_part(1), 1);
        assert_eq!(moebius(9), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(1), 1);
        assert_eq!(nu_p(72, 3), 2);
        assert_eq!(nu_p(72, 2), 3);
        assert_eq!(nu_p(72, 5), 0);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(p_part(120, 2), 8);
        assert_eq!(p_prime_part(120, 2), 15);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(multiplicative_order(2, 15), 4);
        assert_eq!(multiplicative_order(4, 9), 3);
        assert_eq!(primitive_root(61), 2);
        assert_eq!(least_prime_congruent_one(84, 2.0 * 168f64.sqrt()), 337);
        assert_eq!(least_prime_congruent_one(60, 2.0 * 120f64.sqrt()), 61);
        assert_eq!(least_prime_congruent_one(1, 2.0), 3);
    }

    #[test]
    fn phi_matches_unit_count() {
        for n in 1..200 {
            assert_eq!(euler_phi(n) as usize, units_mod(n).len(), "n = {n}");
        }
    }
}
