//! Scalar modular arithmetic on `u64`.
//!
//! All moduli handled by this crate fit in 62 bits, so products are computed
//! through `u128` intermediates without overflow checks beyond that bound.

/// Multiplication modulo `m`.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Addition modulo `m`.
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// Left-to-right binary exponentiation modulo `m`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    // extended Euclid on (a mod m, m)
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
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

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This base set is a proven witness set for the full u64 range.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending order. Adequate for the desk-scale inputs this crate handles.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut push = |p: u64, k: u32| {
        if k > 0 {
            factors.push((p, k));
        }
    };
    let mut k = 0;
    while n % 2 == 0 {
        n /= 2;
        k += 1;
    }
    push(2, k);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        push(p, k);
        p += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    factors
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Multiplicative order of `a` modulo `m`, given `group_order` is a multiple
/// of it (descent over the divisors of `group_order`).
pub fn order_by_descent(a: u64, m: u64, group_order: u64) -> u64 {
    let mut order = group_order;
    for (q, _) in factorize(group_order) {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}
