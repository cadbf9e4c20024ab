//! Exact rational arithmetic with p-adic valuations, residue reduction,
//! and the Chinese remainder theorem.
//!
//! Rationals are arbitrary-precision fractions kept in lowest terms with a
//! positive denominator, so structural equality is value equality. All
//! p-adic quantities here are exact: `|x|_p` of a rational is an integer
//! power of `p`, hence itself a rational.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction, normalized on construction.
pub type Rational = num_rational::BigRational;

/// Parse a rational from `num/den` text (`den` may be omitted).
///
/// Rejects zero denominators and names the offending token in the error.
pub fn parse_rational(token: &str) -> Result<Rational> {
    token.trim().parse::<Rational>().map_err(|_| Error::Parse {
        what: "rational",
        token: token.to_string(),
    })
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `p^l` as a big integer (`l >= 0`).
pub fn prime_power(p: u64, l: u32) -> BigInt {
    BigInt::from(p).pow(l)
}

/// `base^e` for a nonzero rational base and a signed integer exponent.
pub fn rational_pow_int(base: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mag = u32::try_from(e.unsigned_abs()).expect("exponent magnitude too large");
    let powed = Rational::new(base.numer().pow(mag), base.denom().pow(mag));
    if e > 0 {
        powed
    } else {
        assert!(!powed.is_zero(), "negative power of zero");
        powed.recip()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality below 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nonempty, strictly increasing set of primes `p_1 < ... < p_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() || primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadPrimeSet(primes));
        }
        for &p in &primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(PrimeSet { primes })
    }

    /// Parse comma-separated primes, e.g. `"2,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let primes = text
            .split(',')
            .map(|t| {
                t.trim().parse::<u64>().map_err(|_| Error::Parse {
                    what: "prime",
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of primes `k`.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // k >= 1 by construction
    }
}

impl std::fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The exponent `j` with `x = p^j (a/b)`, `p` dividing neither `a` nor `b`,
/// or `Infinite` for `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

fn uint_valuation(n: &BigUint, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p_big = BigUint::from(p);
    let mut v = 0i64;
    let mut m = n.clone();
    while (&m % &p_big).is_zero() {
        v += 1;
        m /= &p_big;
    }
    v
}

/// p-adic valuation `v_p(x)`: only the p-part of `x` is extracted, numerator
/// and denominator separately.
pub fn valuation(x: &Rational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let num = uint_valuation(x.numer().magnitude(), p);
    let den = uint_valuation(x.denom().magnitude(), p);
    Ok(Valuation::Finite(num - den))
}

/// The p-adic absolute value `p^{-v_p(x)}`, exact (`0` for `x = 0`).
pub fn padic_abs(x: &Rational, p: u64) -> Result<Rational> {
    match valuation(x, p)? {
        Valuation::Infinite => Ok(Rational::zero()),
        Valuation::Finite(v) => Ok(rational_pow_int(&Rational::from(BigInt::from(p)), -v)),
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Residue of a p-adic integer modulo `p^l`, in `[0, p^l)`.
///
/// `x` must have `|x|_p <= 1`; the denominator is inverted modulo `p^l`.
pub fn residue_mod_prime_power(x: &Rational, p: u64, l: u32) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = prime_power(p, l);
    if x.denom().magnitude().is_multiple_of(&BigUint::from(p)) {
        return Err(Error::NotPAdicInteger {
            x: x.to_string(),
            p,
        });
    }
    if l == 0 {
        return Ok(BigInt::zero());
    }
    let inv = mod_inverse(x.denom(), &modulus).expect("denominator coprime to p^l");
    Ok((x.numer() * inv).mod_floor(&modulus))
}

/// Solve `z = z_j (mod m_j)` for pairwise-coprime moduli; the result is the
/// unique solution in `[0, prod m_j)`.
pub fn crt_solve(congruences: &[(BigInt, BigInt)]) -> Result<BigInt> {
    for (_, m) in congruences {
        if m < &BigInt::one() {
            return Err(Error::BadModulus(m.to_string()));
        }
    }
    for (i, (_, mi)) in congruences.iter().enumerate() {
        for (_, mj) in &congruences[i + 1..] {
            if !mi.gcd(mj).is_one() {
                return Err(Error::NonCoprimeModuli(mi.to_string(), mj.to_string()));
            }
        }
    }
    let mut z = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        let r = r.mod_floor(m);
        // z + modulus * t = r (mod m)
        let gap = (&r - &z).mod_floor(m);
        let inv = mod_inverse(&modulus.mod_floor(m), m)
            .expect("accumulated modulus coprime to next modulus");
        let t = (gap * inv).mod_floor(m);
        z += &modulus * t;
        modulus *= m;
    }
    Ok(z.mod_floor(&modulus))
}
