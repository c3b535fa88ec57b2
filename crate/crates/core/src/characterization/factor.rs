use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Trial division runs up to this bound before switching to Pollard rho.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
/// Miller-Rabin rounds for candidates beyond 64 bits.
pub const MILLER_RABIN_ROUNDS: usize = 40;
/// Pollard rho polynomial constants tried in order, `x^2 + c`.
pub const RHO_CONSTANTS: std::ops::RangeInclusive<u64> = 1..=64;

// Deterministic for every n < 3.3e24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Prime factorization `sign · ∏ p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub sign: i8,
    pub factors: BTreeMap<BigUint, u32>,
}

impl FactoredInteger {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn reconstruct(&self) -> BigInt {
        if self.sign == 0 {
            return BigInt::zero();
        }
        let mag: BigUint = self
            .factors
            .iter()
            .map(|(p, &e)| p.pow(e))
            .product();
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// Distinct odd primes, ascending.
    pub fn odd_primes(&self) -> Vec<BigUint> {
        self.factors
            .keys()
            .filter(|p| p.is_odd())
            .cloned()
            .collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.get(&BigUint::from(p)).copied().unwrap_or(0)
    }

    pub fn is_square_free(&self) -> bool {
        self.sign != 0 && self.factors.values().all(|&e| e == 1)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.sign < 0 {
            parts.push("(-1)".to_string());
        }
        for (p, &e) in &self.factors {
            if e == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" * "))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic Miller-Rabin for the full 64-bit range.
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

// splitmix64, for reproducible Miller-Rabin bases beyond the fixed set
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Primality of an arbitrary-precision integer: deterministic below 2^64,
/// [`MILLER_RABIN_ROUNDS`] Miller-Rabin rounds with a fixed base sequence
/// above it.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut state = 0x5EED_u64;
    let range = n - BigUint::from(3u32);
    for round in 0..MILLER_RABIN_ROUNDS {
        let a = match WITNESSES.get(round) {
            Some(&w) => BigUint::from(w),
            None => BigUint::from(splitmix(&mut state)) % &range + BigUint::from(2u32),
        };
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        let mut witness_found = true;
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                witness_found = false;
                break;
            }
        }
        if witness_found {
            return false;
        }
    }
    true
}

// Brent's variant; returns a nontrivial divisor of the composite n.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in RHO_CONSTANTS {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            // batch overshot; step back one at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    panic!("pollard rho exhausted its constants on {n}");
}

fn split_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    // rho needs ~sqrt(p) steps on p^k; take exact roots first
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if r.pow(k) == n {
            let mut inner = BTreeMap::new();
            split_into(r, &mut inner);
            for (p, e) in inner {
                *out.entry(p).or_insert(0) += e * k;
            }
            return;
        }
    }
    let d = pollard_rho(&n);
    let rest = &n / &d;
    split_into(d, out);
    split_into(rest, out);
}

/// Complete prime factorization: trial division up to
/// [`TRIAL_DIVISION_LIMIT`], then Pollard rho on the cofactor with
/// Miller-Rabin certification of every prime reported.
pub fn factorize(x: &BigInt) -> FactoredInteger {
    let sign = match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => {
            return FactoredInteger {
                sign: 0,
                factors: BTreeMap::new(),
            }
        }
        Sign::Plus => 1,
    };
    let mut rest = x.magnitude().clone();
    let mut factors = BTreeMap::new();
    let mut d = 2u64;
    let mut passed_root = false;
    while d <= TRIAL_DIVISION_LIMIT {
        if let Some(small) = rest.to_u64() {
            if d * d > small {
                passed_root = true;
                break;
            }
            let mut r = small;
            while r % d == 0 {
                r /= d;
                *factors.entry(BigUint::from(d)).or_insert(0) += 1;
            }
            rest = BigUint::from(r);
        } else {
            while (&rest % d).is_zero() {
                rest /= d;
                *factors.entry(BigUint::from(d)).or_insert(0) += 1;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        if passed_root {
            // no factor below sqrt(rest) remains
            *factors.entry(rest).or_insert(0) += 1;
        } else {
            split_into(rest, &mut factors);
        }
    }
    FactoredInteger { sign, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(x: i64) -> FactoredInteger {
        factorize(&BigInt::from(x))
    }

    fn map(pairs: &[(u64, u32)]) -> BTreeMap<BigUint, u32> {
        pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect()
    }

    #[test]
    fn unit_and_zero() {
        let one = fac(1);
        assert_eq!(one.sign, 1);
        assert!(one.factors.is_empty());
        let zero = fac(0);
        assert_eq!(zero.sign, 0);
        assert!(zero.factors.is_empty());
        assert!(zero.is_zero());
    }

    #[test]
    fn walk_determinants() {
        let a = fac(-14392);
        assert_eq!(a.sign, -1);
        assert_eq!(a.factors, map(&[(2, 3), (7, 1), (257, 1)]));
        assert_eq!(a.to_string(), "(-1) * 2^3 * 7 * 257");
        let b = fac(1528);
        assert_eq!(b.sign, 1);
        assert_eq!(b.factors, map(&[(2, 3), (191, 1)]));
    }

    #[test]
    fn large_semiprime_goes_through_rho() {
        // both factors exceed the trial division bound
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let n = BigInt::from(p) * BigInt::from(q) * BigInt::from(q);
        let f = factorize(&n);
        assert_eq!(f.factors, map(&[(p, 1), (q, 2)]));
        assert_eq!(f.reconstruct(), n);
    }

    #[test]
    fn beyond_64_bits() {
        // 2^61 - 1 and 2^89 - 1 are Mersenne primes
        let m61 = (BigUint::one() << 61) - BigUint::one();
        let m89 = (BigUint::one() << 89) - BigUint::one();
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * BigUint::from(3u32))));
        let n = BigInt::from(&m61 * &m61) * -3;
        let f = factorize(&n);
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors.get(&m61), Some(&2));
        assert_eq!(f.reconstruct(), n);
        let n = BigInt::from(&m61 * BigUint::from(1_000_003u64 * 1_000_033u64));
        let f = factorize(&n);
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.reconstruct(), n);
    }

    #[test]
    fn small_primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        // strong pseudoprime to several small bases
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn square_free_and_odd_primes() {
        assert!(fac(-1799).is_square_free());
        assert!(!fac(98).is_square_free());
        assert_eq!(
            fac(-14392).odd_primes(),
            vec![BigUint::from(7u32), BigUint::from(257u32)]
        );
    }
}
