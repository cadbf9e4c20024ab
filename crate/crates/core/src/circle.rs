//! Finite approximations of the solenoid: residue projections at a level,
//! the circle coordinate that identifies the level quotient with a circle of
//! circumference `p^l`, characters with exact rational phases, and the
//! approximation of any coset by a point of the real line.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Exponents, MetricValue, SPoint};
use crate::padic::{
    crt_solve, prime_power, residue_mod_prime_power, Rational, PrimeSet,
};
use crate::solenoid::{quotient_dist, SolenoidPoint};

/// A tuple of nonnegative levels, one per prime, with derived modulus the
/// product of the prime powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    primes: PrimeSet,
    levels: Vec<u32>,
}

impl Level {
    pub fn new(primes: PrimeSet, levels: Vec<u32>) -> Result<Self> {
        if levels.len() != primes.len() {
            return Err(Error::LengthMismatch {
                expected: primes.len(),
                got: levels.len(),
            });
        }
        Ok(Level { primes, levels })
    }

    /// Parse comma-separated levels, e.g. `"1,1"`.
    pub fn parse(text: &str, primes: &PrimeSet) -> Result<Self> {
        let levels = text
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| Error::Parse {
                    what: "level",
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Level::new(primes.clone(), levels)
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// The modulus of the j-th factor, `p_j^{l_j}`.
    pub fn prime_modulus(&self, j: usize) -> BigInt {
        prime_power(self.primes.primes()[j], self.levels[j])
    }

    /// The combined modulus, the product of all prime powers.
    pub fn modulus(&self) -> BigInt {
        (0..self.levels.len()).map(|j| self.prime_modulus(j)).product()
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Image of a point under the level projection: one residue per prime, real
/// coordinate carried through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPoint {
    residues: Vec<BigInt>,
    real: Rational,
}

impl LevelPoint {
    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn real_coord(&self) -> &Rational {
        &self.real
    }

    /// Componentwise addition modulo the level.
    pub fn add(&self, other: &LevelPoint, level: &Level) -> LevelPoint {
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .enumerate()
            .map(|(j, (a, b))| (a + b).mod_floor(&level.prime_modulus(j)))
            .collect();
        LevelPoint {
            residues,
            real: &self.real + &other.real,
        }
    }
}

/// Level projection of an arbitrary point with p-adic integer coordinates
/// (a ring homomorphism in each prime slot).
pub fn project_point(rep: &SPoint, level: &Level) -> Result<LevelPoint> {
    if rep.primes() != level.primes() {
        return Err(Error::PrimeSetMismatch(
            rep.primes().primes().to_vec(),
            level.primes().primes().to_vec(),
        ));
    }
    let residues = level
        .primes
        .primes()
        .iter()
        .zip(rep.padic_coords())
        .zip(&level.levels)
        .map(|((&p, c), &l)| residue_mod_prime_power(c, p, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelPoint {
        residues,
        real: rep.real_coord().clone(),
    })
}

/// Level projection of a canonical representative (total: the invariants
/// guarantee p-adic integer coordinates).
pub fn project(x: &SolenoidPoint, level: &Level) -> Result<LevelPoint> {
    project_point(x.rep(), level)
}

/// A point of the level circle, a real value modulo `p^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirclePoint {
    value: Rational,
}

impl CirclePoint {
    pub fn new(value: Rational, level: &Level) -> Result<Self> {
        let modulus = Rational::from(level.modulus());
        if value.is_negative() || value >= modulus {
            return Err(Error::InvalidInput(format!(
                "circle value {value} outside [0, {modulus})"
            )));
        }
        Ok(CirclePoint { value })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }
}

/// `x mod m` into `[0, m)` for rationals.
pub fn rational_mod(x: &Rational, modulus: &Rational) -> Rational {
    x - modulus * (x / modulus).floor()
}

/// The circle coordinate at a level: subtract the CRT lift of the residues
/// from the real coordinate, modulo the combined modulus.
///
/// Replacing the representative by an integer diagonal translate moves the
/// CRT lift and the real coordinate in lockstep, so the value only depends
/// on the image in the level circle. At the all-zero level this degenerates
/// to the real coordinate modulo one.
pub fn circle_coord_point(rep: &SPoint, level: &Level) -> Result<CirclePoint> {
    let projected = project_point(rep, level)?;
    let congruences: Vec<(BigInt, BigInt)> = projected
        .residues()
        .iter()
        .enumerate()
        .map(|(j, r)| (r.clone(), level.prime_modulus(j)))
        .collect();
    let lift = crt_solve(&congruences)?;
    let modulus = Rational::from(level.modulus());
    let value = rational_mod(&(rep.real_coord() - Rational::from(lift)), &modulus);
    Ok(CirclePoint { value })
}

pub fn circle_coord(x: &SolenoidPoint, level: &Level) -> Result<CirclePoint> {
    circle_coord_point(x.rep(), level)
}

/// A character of the solenoid that factors through a level circle:
/// evaluation winds the circle coordinate `frequency` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    level: Level,
    frequency: i64,
}

impl Character {
    pub fn new(level: Level, frequency: i64) -> Self {
        Character { level, frequency }
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn frequency(&self) -> i64 {
        self.frequency
    }

    /// The phase in `[0, 1)`; the character value is `e^{2 pi i phase}`.
    pub fn eval(&self, x: &SolenoidPoint) -> Result<Rational> {
        let coord = circle_coord(x, &self.level)?;
        let modulus = Rational::from(self.level.modulus());
        let turns = Rational::from(BigInt::from(self.frequency)) * coord.value() / modulus;
        Ok(rational_mod(&turns, &Rational::one()))
    }
}

/// A real-line point whose coset approximates a target to within a given
/// tolerance, together with the level used and the achieved quotient
/// distance (computed as a certificate).
#[derive(Debug, Clone)]
pub struct LineWitness {
    pub s: Rational,
    pub level: Level,
    pub distance: MetricValue,
}

/// Approximate a coset by a point of the real line.
///
/// Per prime the minimal level with `p^{-l a} <= eps` is chosen, the CRT
/// lift `x` of the negated residues cancels the p-adic coordinates to that
/// depth, and `s = real + x` matches the real coordinate on the nose.
pub fn line_approximation(
    target: &SolenoidPoint,
    eps: &Rational,
    exponents: &Exponents,
) -> Result<LineWitness> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput(format!("eps {eps} must be positive")));
    }
    let primes = target.primes().clone();
    if exponents.len() != primes.len() {
        return Err(Error::LengthMismatch {
            expected: primes.len(),
            got: exponents.len(),
        });
    }
    let bound = MetricValue::real(eps.clone());
    let mut levels = Vec::with_capacity(primes.len());
    for (&p, a) in primes.primes().iter().zip(exponents.values()) {
        let mut l = 0u32;
        while MetricValue::prime_power(p, a * Rational::from(BigInt::from(l))) > bound {
            l += 1;
        }
        levels.push(l);
    }
    let level = Level::new(primes.clone(), levels)?;
    let congruences: Vec<(BigInt, BigInt)> = target
        .rep()
        .padic_coords()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let m = level.prime_modulus(j);
            let r = residue_mod_prime_power(c, primes.primes()[j], level.levels()[j])?;
            Ok(((-r).mod_floor(&m), m))
        })
        .collect::<Result<Vec<_>>>()?;
    let x = crt_solve(&congruences)?;
    let s = target.rep().real_coord() + Rational::from(x);
    let line_point = SPoint::new(
        primes.clone(),
        vec![Rational::zero(); primes.len()],
        s.clone(),
    )?;
    let distance = quotient_dist(&line_point, target.rep(), exponents)?;
    debug_assert!(distance <= bound);
    Ok(LineWitness { s, level, distance })
}
