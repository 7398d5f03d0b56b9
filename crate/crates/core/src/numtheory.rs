//! Exact integer primitives: gcd, modular inverse and power, primality,
//! prime indexing, multiplicative order and a brute-force discrete log.
//!
//! Everything that touches key material works on [`BigUint`]. The order and
//! discrete-log helpers are small-modulus tools and take `u64`.

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("{a} has no inverse modulo {m}: gcd is {g}")]
    NotInvertible { a: BigUint, m: BigUint, g: BigUint },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(BigUint),
}

/// Result of the extended Euclidean algorithm: `s*a + t*b = g` with `g >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcdResult {
    pub g: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

pub fn ext_gcd(a: &BigInt, b: &BigInt) -> ExtGcdResult {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        ExtGcdResult {
            g: -old_r,
            s: -old_s,
            t: -old_t,
        }
    } else {
        ExtGcdResult {
            g: old_r,
            s: old_s,
            t: old_t,
        }
    }
}

/// Inverse of `a` modulo `m`, in `[1, m-1]`.
///
/// Fails with [`NumError::NotInvertible`] exactly when `gcd(a mod m, m) != 1`.
pub fn mod_inv(a: &BigUint, m: &BigUint) -> Result<BigUint, NumError> {
    if *m < BigUint::from(2u8) {
        return Err(NumError::BadModulus(m.clone()));
    }
    let a_red = a % m;
    let r = ext_gcd(
        &BigInt::from_biguint(Sign::Plus, a_red),
        &BigInt::from_biguint(Sign::Plus, m.clone()),
    );
    if !r.g.is_one() {
        return Err(NumError::NotInvertible {
            a: a.clone(),
            m: m.clone(),
            g: r.g.magnitude().clone(),
        });
    }
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let x = r.s.mod_floor(&m_int);
    Ok(x.magnitude().clone())
}

pub fn mod_pow(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    base.modpow(exp, m)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

// Witness set {2..37} is deterministic for all n < 3.3 * 10^24.
const SMALL_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const LARGE_ROUNDS: usize = 64;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test. Deterministic below 2^64; above that, 64 Miller-Rabin
/// rounds with witnesses drawn from a generator seeded by `n` itself, so the
/// answer is still a pure function of the input.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut seed = [0u8; 32];
    for (slot, byte) in seed.iter_mut().zip(n.to_bytes_le()) {
        *slot ^= byte;
    }
    let mut rng = ChaCha20Rng::from_seed(seed);
    let two = BigUint::from(2u8);
    'witness: for _ in 0..LARGE_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `x`-th prime, 1-indexed: `nth_prime(1) == 2`.
pub fn nth_prime(x: usize) -> u64 {
    assert!(x >= 1, "prime indices start at 1");
    let mut count = 0;
    let mut candidate = 1u64;
    while count < x {
        candidate += 1;
        if is_prime_u64(candidate) {
            count += 1;
        }
    }
    candidate
}

/// Number of primes `<= p`, i.e. the index of the largest prime not above `p`.
pub fn prime_index_leq(p: u64) -> usize {
    (2..=p).filter(|&c| is_prime_u64(c)).count()
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&c| is_prime_u64(c)).collect()
}

/// Largest prime `<= p`, if any.
pub fn largest_prime_leq(p: u64) -> Option<u64> {
    (2..=p).rev().find(|&c| is_prime_u64(c))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: &BigUint) -> BigUint {
    let mut c = n + 1u8;
    if c <= BigUint::from(2u8) {
        return BigUint::from(2u8);
    }
    if c.is_even() {
        c += 1u8;
    }
    while !is_prime(&c) {
        c += 2u8;
    }
    c
}

pub fn pairwise_coprime(seq: &[BigUint]) -> bool {
    seq.iter()
        .enumerate()
        .all(|(idx, a)| seq[idx + 1..].iter().all(|b| a.gcd(b).is_one()))
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorisation of `n` as ascending `(prime, exponent)` pairs.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime_u64(n) {
            out.push(n);
            return;
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            if n.is_multiple_of(p) {
                out.push(p);
                split(n / p, out);
                return;
            }
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut primes = Vec::new();
    split(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Multiplicative order of `w` modulo the prime `m`.
pub fn mult_order(w: u64, m: u64) -> u64 {
    assert!(m >= 2 && !w.is_multiple_of(m), "w must be a unit modulo m");
    let mut order = m - 1;
    for (p, e) in factorize_u64(m - 1) {
        for _ in 0..e {
            if pow_mod_u64(w, order / p, m) == 1 {
                order /= p;
            } else {
                break;
            }
        }
    }
    order
}

/// Least `e` in `[0, cap]` with `base^e == target (mod m)`, by walking powers.
pub fn dlog_bruteforce(base: u64, target: u64, m: u64, cap: u64) -> Option<u64> {
    let target = target % m;
    let mut acc = 1 % m;
    for e in 0..=cap {
        if acc == target {
            return Some(e);
        }
        acc = mul_mod_u64(acc, base, m);
    }
    None
}
