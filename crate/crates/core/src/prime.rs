//! Miller-Rabin primality testing.
//!
//! Below 2^64 the test is deterministic. Above that, the fixed witness set is
//! followed by extra bases drawn from a fixed-seed generator, so the answer is
//! probabilistic but reproducible run to run.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const EXTRA_ROUNDS: usize = 8;
const PRIMALITY_SEED: u64 = 0x05ee_d0dd_9e2f;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64, n_minus_1: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    for &a in &WITNESSES {
        if !strong_probable_prime(n, &BigUint::from(a), &d, s, &n_minus_1) {
            return false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PRIMALITY_SEED);
    let two = BigUint::from(2u32);
    for _ in 0..EXTRA_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        if !strong_probable_prime(n, &a, &d, s, &n_minus_1) {
            return false;
        }
    }
    true
}
