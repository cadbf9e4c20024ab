//! The ambient product ring: one p-adic coordinate per prime plus a real
//! coordinate, with coordinatewise arithmetic, the diagonal embedding of the
//! rationals, and the sup metrics (plain and snowflaked).
//!
//! Coordinates are rationals throughout; the rationals are dense in each
//! completion, so nothing is lost for computation and everything stays exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{is_prime, rational_pow_int, rational_to_f64, valuation, PrimeSet, Rational, Valuation};

/// An exact metric magnitude: either a nonnegative rational, or `p^{-q}`
/// with a rational exponent `q` (which is irrational unless `q` is an
/// integer).
///
/// Comparison is exact in every case. Raising both sides to the least
/// common denominator of the exponents turns any comparison into a
/// comparison of two rationals, which is decided over the integers.
#[derive(Debug, Clone)]
pub enum MetricValue {
    Real(Rational),
    PrimePower { p: u64, exponent: Rational },
}

impl MetricValue {
    pub fn zero() -> Self {
        MetricValue::Real(Rational::zero())
    }

    pub fn one() -> Self {
        MetricValue::Real(Rational::one())
    }

    pub fn real(value: Rational) -> Self {
        debug_assert!(!value.is_negative());
        MetricValue::Real(value)
    }

    /// The value `p^{-exponent}`.
    pub fn prime_power(p: u64, exponent: Rational) -> Self {
        debug_assert!(is_prime(p));
        MetricValue::PrimePower { p, exponent }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MetricValue::Real(v) if v.is_zero())
    }

    /// Exact rational form, when one exists (prime powers with a
    /// fractional exponent are irrational).
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            MetricValue::Real(v) => Some(v.clone()),
            MetricValue::PrimePower { p, exponent } => {
                if exponent.is_integer() {
                    let e = exponent.to_integer().to_i64()?;
                    Some(rational_pow_int(&Rational::from(BigInt::from(*p)), -e))
                } else {
                    None
                }
            }
        }
    }

    /// Double-precision view, for reporting only.
    pub fn to_f64(&self) -> f64 {
        match self {
            MetricValue::Real(v) => rational_to_f64(v),
            MetricValue::PrimePower { p, exponent } => {
                (*p as f64).powf(-rational_to_f64(exponent))
            }
        }
    }
}

fn as_u32(n: &BigInt, what: &str) -> u32 {
    n.to_u32().unwrap_or_else(|| panic!("{what} too large for exact comparison: {n}"))
}

fn as_i64(n: &BigInt, what: &str) -> i64 {
    n.to_i64().unwrap_or_else(|| panic!("{what} too large for exact comparison: {n}"))
}

// u vs p^{-q}, with q = s/t: compare u^t vs p^{-s} over the rationals.
fn cmp_real_prime_power(u: &Rational, p: u64, q: &Rational) -> Ordering {
    if u.is_zero() {
        return Ordering::Less;
    }
    let t = as_u32(q.denom(), "exponent denominator");
    let lhs = Rational::new(u.numer().pow(t), u.denom().pow(t));
    let s = as_i64(q.numer(), "exponent numerator");
    let rhs = rational_pow_int(&Rational::from(BigInt::from(p)), -s);
    lhs.cmp(&rhs)
}

impl Ord for MetricValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use MetricValue::*;
        match (self, other) {
            (Real(a), Real(b)) => a.cmp(b),
            (Real(u), PrimePower { p, exponent }) => cmp_real_prime_power(u, *p, exponent),
            (PrimePower { p, exponent }, Real(u)) => {
                cmp_real_prime_power(u, *p, exponent).reverse()
            }
            (
                PrimePower { p: p1, exponent: q1 },
                PrimePower { p: p2, exponent: q2 },
            ) => {
                if p1 == p2 {
                    // p^{-q} is strictly decreasing in q
                    q2.cmp(q1)
                } else {
                    let n = q1.denom().lcm(q2.denom());
                    let e1 = as_i64(&(-(q1 * &n)).to_integer(), "exponent");
                    let e2 = as_i64(&(-(q2 * &n)).to_integer(), "exponent");
                    let lhs = rational_pow_int(&Rational::from(BigInt::from(*p1)), e1);
                    let rhs = rational_pow_int(&Rational::from(BigInt::from(*p2)), e2);
                    lhs.cmp(&rhs)
                }
            }
        }
    }
}

impl PartialOrd for MetricValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for MetricValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MetricValue {}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(v) => write!(f, "{v}"),
            None => match self {
                MetricValue::PrimePower { p, exponent } => {
                    write!(f, "{}^({})", p, -exponent)
                }
                MetricValue::Real(_) => unreachable!("real magnitudes are rational"),
            },
        }
    }
}

/// Per-prime snowflake exponents, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponents {
    values: Vec<Rational>,
}

impl Exponents {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|a| !a.is_positive()) {
            return Err(Error::BadExponent(bad.to_string()));
        }
        Ok(Exponents { values })
    }

    pub fn ones(k: usize) -> Self {
        Exponents {
            values: vec![Rational::one(); k],
        }
    }

    /// Parse comma-separated positive rationals, e.g. `"2,3"` or `"1/2,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(crate::padic::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Exponents::new(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A point of the ambient ring: one rational coordinate per prime (living
/// in that prime's completion) and a real coordinate, last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPoint {
    primes: PrimeSet,
    padic: Vec<Rational>,
    real: Rational,
}

impl SPoint {
    pub fn new(primes: PrimeSet, padic: Vec<Rational>, real: Rational) -> Result<Self> {
        if padic.len() != primes.len() {
            return Err(Error::LengthMismatch {
                expected: primes.len(),
                got: padic.len(),
            });
        }
        Ok(SPoint { primes, padic, real })
    }

    /// The diagonal embedding: every coordinate equal to `x`.
    pub fn diagonal(x: &Rational, primes: &PrimeSet) -> Self {
        SPoint {
            primes: primes.clone(),
            padic: vec![x.clone(); primes.len()],
            real: x.clone(),
        }
    }

    pub fn zero(primes: &PrimeSet) -> Self {
        Self::diagonal(&Rational::zero(), primes)
    }

    /// Parse `;`-separated coordinates, p-adic first, real last.
    pub fn parse(text: &str, primes: &PrimeSet) -> Result<Self> {
        let coords = text
            .split(';')
            .map(crate::padic::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != primes.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: primes.len() + 1,
                got: coords.len(),
            });
        }
        let mut padic = coords;
        let real = padic.pop().expect("k+1 coordinates");
        SPoint::new(primes.clone(), padic, real)
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn padic_coords(&self) -> &[Rational] {
        &self.padic
    }

    pub fn real_coord(&self) -> &Rational {
        &self.real
    }

    fn check_same_primes(&self, other: &SPoint) -> Result<()> {
        if self.primes != other.primes {
            return Err(Error::PrimeSetMismatch(
                self.primes.primes().to_vec(),
                other.primes.primes().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &SPoint) -> Result<SPoint> {
        self.check_same_primes(other)?;
        Ok(SPoint {
            primes: self.primes.clone(),
            padic: self
                .padic
                .iter()
                .zip(&other.padic)
                .map(|(a, b)| a + b)
                .collect(),
            real: &self.real + &other.real,
        })
    }

    pub fn sub(&self, other: &SPoint) -> Result<SPoint> {
        self.check_same_primes(other)?;
        Ok(SPoint {
            primes: self.primes.clone(),
            padic: self
                .padic
                .iter()
                .zip(&other.padic)
                .map(|(a, b)| a - b)
                .collect(),
            real: &self.real - &other.real,
        })
    }

    pub fn mul(&self, other: &SPoint) -> Result<SPoint> {
        self.check_same_primes(other)?;
        Ok(SPoint {
            primes: self.primes.clone(),
            padic: self
                .padic
                .iter()
                .zip(&other.padic)
                .map(|(a, b)| a * b)
                .collect(),
            real: &self.real * &other.real,
        })
    }

    pub fn neg(&self) -> SPoint {
        SPoint {
            primes: self.primes.clone(),
            padic: self.padic.iter().map(|a| -a).collect(),
            real: -&self.real,
        }
    }

    /// Multiply every coordinate by the scalar (the diagonal action).
    pub fn scale(&self, c: &Rational) -> SPoint {
        SPoint {
            primes: self.primes.clone(),
            padic: self.padic.iter().map(|a| a * c).collect(),
            real: &self.real * c,
        }
    }

    /// Translate by the diagonal embedding of `x`.
    pub fn translate(&self, x: &Rational) -> SPoint {
        SPoint {
            primes: self.primes.clone(),
            padic: self.padic.iter().map(|a| a + x).collect(),
            real: &self.real + x,
        }
    }

    /// The sup metric: max of the per-prime absolute values of the
    /// coordinate differences and the real absolute difference.
    pub fn dist(&self, other: &SPoint) -> Result<MetricValue> {
        self.snowflake_dist(other, &Exponents::ones(self.primes.len()))
    }

    /// The snowflake metric: the j-th p-adic term is raised to `a_j`; the
    /// real term keeps exponent one. Reduces to [`SPoint::dist`] when all
    /// exponents are one.
    pub fn snowflake_dist(&self, other: &SPoint, exponents: &Exponents) -> Result<MetricValue> {
        self.check_same_primes(other)?;
        if exponents.len() != self.primes.len() {
            return Err(Error::LengthMismatch {
                expected: self.primes.len(),
                got: exponents.len(),
            });
        }
        let mut best = MetricValue::real((&self.real - &other.real).abs());
        for (j, &p) in self.primes.primes().iter().enumerate() {
            let diff = &self.padic[j] - &other.padic[j];
            match valuation(&diff, p).expect("set members are prime") {
                Valuation::Infinite => {}
                Valuation::Finite(v) => {
                    let term = MetricValue::prime_power(
                        p,
                        &exponents.values()[j] * Rational::from(BigInt::from(v)),
                    );
                    if term > best {
                        best = term;
                    }
                }
            }
        }
        Ok(best)
    }
}

impl fmt::Display for SPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.padic {
            write!(f, "{c};")?;
        }
        write!(f, "{}", self.real)
    }
}
