//! The quotient of the ambient ring by the diagonal lattice of S-integers.
//!
//! Every coset has exactly one representative with all p-adic coordinates of
//! absolute value at most one and real coordinate in `[0, 1)`. Reduction to
//! that representative makes coset equality structural and gives the
//! quotient metric a three-candidate closed form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Exponents, MetricValue, SPoint};
use crate::padic::{
    prime_power, residue_mod_prime_power, valuation, PrimeSet, Rational, Valuation,
};

/// True iff the denominator of `x` (in lowest terms) only contains primes
/// from the set, i.e. `x` is an S-integer.
pub fn is_s_integer(x: &Rational, primes: &PrimeSet) -> bool {
    let mut den = x.denom().magnitude().clone();
    for &p in primes.primes() {
        let p = num_bigint::BigUint::from(p);
        while den.is_multiple_of(&p) {
            den /= &p;
        }
    }
    den.is_one()
}

/// True iff `x` and `1/x` are both S-integers, i.e. `x` is plus or minus a
/// product of powers of the set's primes.
pub fn is_s_unit(x: &Rational, primes: &PrimeSet) -> bool {
    if x.is_zero() {
        return false;
    }
    let mut num = x.numer().magnitude().clone();
    let mut den = x.denom().magnitude().clone();
    for &p in primes.primes() {
        let p = num_bigint::BigUint::from(p);
        while num.is_multiple_of(&p) {
            num /= &p;
        }
        while den.is_multiple_of(&p) {
            den /= &p;
        }
    }
    num.is_one() && den.is_one()
}

/// A canonical coset representative together with the lattice shift that
/// produced it (`original - diagonal(shift) = rep`), retained for audit.
#[derive(Debug, Clone)]
pub struct SolenoidPoint {
    rep: SPoint,
    shift: Rational,
}

impl SolenoidPoint {
    pub fn rep(&self) -> &SPoint {
        &self.rep
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn primes(&self) -> &PrimeSet {
        self.rep.primes()
    }

    pub fn zero(primes: &PrimeSet) -> Self {
        SolenoidPoint {
            rep: SPoint::zero(primes),
            shift: Rational::zero(),
        }
    }

    /// Wrap a point that is already canonical; rejects anything outside the
    /// fundamental domain.
    pub fn from_canonical(rep: SPoint) -> Result<Self> {
        if !is_canonical(&rep) {
            return Err(Error::InvalidInput(format!(
                "{rep} is not a canonical representative"
            )));
        }
        Ok(SolenoidPoint {
            rep,
            shift: Rational::zero(),
        })
    }

    /// Group addition on cosets (re-reduces the representative sum).
    pub fn add(&self, other: &SolenoidPoint) -> Result<SolenoidPoint> {
        Ok(reduce(&self.rep.add(&other.rep)?))
    }

    pub fn neg(&self) -> SolenoidPoint {
        reduce(&self.rep.neg())
    }

    /// Structural equality of canonical representatives = coset equality.
    pub fn same_coset(&self, other: &SolenoidPoint) -> bool {
        self.rep == other.rep
    }
}

/// True iff every p-adic coordinate has absolute value at most one and the
/// real coordinate lies in `[0, 1)`.
pub fn is_canonical(rep: &SPoint) -> bool {
    if rep.real_coord().is_negative() || rep.real_coord() >= &Rational::one() {
        return false;
    }
    rep.primes()
        .primes()
        .iter()
        .zip(rep.padic_coords())
        .all(|(&p, c)| match valuation(c, p).expect("set members are prime") {
            Valuation::Infinite => true,
            Valuation::Finite(v) => v >= 0,
        })
}

/// Reduce a point to its canonical coset representative.
///
/// For each prime coordinate with absolute value `p^l > 1`, the fractional
/// part is matched by `a p^{-l}` with `a` the residue of `p^l r_j` modulo
/// `p^l`; summing those corrections over the primes lands the point in the
/// open subring with p-adic integer coordinates, and subtracting the floor
/// of the adjusted real coordinate lands the real part in `[0, 1)`. The
/// combined shift is an S-integer and is returned alongside.
pub fn reduce(r: &SPoint) -> SolenoidPoint {
    let primes = r.primes().clone();
    let mut x = Rational::zero();
    for (j, &p) in primes.primes().iter().enumerate() {
        let coord = &r.padic_coords()[j];
        if let Valuation::Finite(v) = valuation(coord, p).expect("set members are prime") {
            if v < 0 {
                let l = (-v) as u32;
                let modulus = prime_power(p, l);
                let scaled = coord * Rational::from(modulus.clone());
                let a = residue_mod_prime_power(&scaled, p, l)
                    .expect("p^l r_j is a p-adic integer by construction");
                x += Rational::new(a, modulus);
            }
        }
    }
    let adjusted_real = r.real_coord() - &x;
    let m = adjusted_real.floor().to_integer();
    let shift = x + Rational::from(m);
    let rep = r
        .sub(&SPoint::diagonal(&shift, &primes))
        .expect("same prime set");
    debug_assert!(is_canonical(&rep));
    SolenoidPoint { rep, shift }
}

/// Coset equality: `r` and `t` differ by a diagonal S-integer.
pub fn coset_eq(r: &SPoint, t: &SPoint) -> Result<bool> {
    if r.primes() != t.primes() {
        return Err(Error::PrimeSetMismatch(
            r.primes().primes().to_vec(),
            t.primes().primes().to_vec(),
        ));
    }
    Ok(reduce(r).rep == reduce(t).rep)
}

/// Quotient metric together with the integer translate that attains it.
///
/// Both points are reduced first. With representatives in the fundamental
/// domain, every p-adic term stays at most one for any integer translate,
/// so only integers within distance one of the real gap can beat the
/// round-to-nearest bound; that leaves at most three candidates. Ties
/// resolve to the smallest candidate.
pub fn quotient_dist_witness(
    r: &SPoint,
    t: &SPoint,
    exponents: &Exponents,
) -> Result<(BigInt, MetricValue)> {
    let rep_r = reduce(r);
    let rep_t = reduce(t);
    let delta = rep_r.rep.real_coord() - rep_t.rep.real_coord();
    let f = delta.floor().to_integer();
    let mut best: Option<(BigInt, MetricValue)> = None;
    for offs in -1i64..=1 {
        let z = &f + BigInt::from(offs);
        let zr = Rational::from(z.clone());
        if (&delta - &zr).abs() > Rational::one() {
            continue;
        }
        let candidate = rep_t.rep.translate(&zr);
        let d = rep_r.rep.snowflake_dist(&candidate, exponents)?;
        if best.as_ref().is_none_or(|(_, b)| d < *b) {
            best = Some((z, d));
        }
    }
    Ok(best.expect("round(delta) is always a candidate"))
}

/// The quotient metric: infimum of the ambient snowflake metric over coset
/// representatives. Always at most one; equals the ambient metric exactly
/// when the latter is at most one half.
pub fn quotient_dist(r: &SPoint, t: &SPoint, exponents: &Exponents) -> Result<MetricValue> {
    quotient_dist_witness(r, t, exponents).map(|(_, d)| d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn s23() -> PrimeSet {
        PrimeSet::new(vec![2, 3]).unwrap()
    }

    fn s2() -> PrimeSet {
        PrimeSet::new(vec![2]).unwrap()
    }

    fn pt(primes: &PrimeSet, coords: &[(i64, i64)]) -> SPoint {
        let mut c: Vec<Rational> = coords.iter().map(|&(n, d)| rat(n, d)).collect();
        let real = c.pop().unwrap();
        SPoint::new(primes.clone(), c, real).unwrap()
    }

    // Independent oracle: scan integer translates far beyond the candidate set.
    fn quotient_dist_brute(r: &SPoint, t: &SPoint, a: &Exponents) -> MetricValue {
        let rr = reduce(r);
        let tt = reduce(t);
        let mut best: Option<MetricValue> = None;
        for z in -50i64..=50 {
            let cand = tt.rep().translate(&rat(z, 1));
            let d = rr.rep().snowflake_dist(&cand, a).unwrap();
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        best.unwrap()
    }

    #[test]
    fn s_integer_membership() {
        let s = s23();
        assert!(is_s_integer(&rat(17, 12), &s));
        assert!(!is_s_integer(&rat(1, 5), &s));
        assert!(is_s_integer(&rat(7, 1), &s));
        assert!(is_s_integer(&rat(7, 1), &PrimeSet::new(vec![13]).unwrap()));
        assert!(is_s_integer(&rat(0, 1), &s));
    }

    #[test]
    fn s_unit_membership() {
        let s = s23();
        assert!(is_s_unit(&rat(2, 3), &s));
        assert!(!is_s_unit(&rat(5, 1), &s));
        assert!(is_s_unit(&rat(1, 1), &s));
        assert!(is_s_unit(&rat(1, 1), &PrimeSet::new(vec![13]).unwrap()));
        assert!(is_s_unit(&rat(-72, 1), &s));
        assert!(!is_s_unit(&rat(0, 1), &s));
        assert!(!is_s_unit(&rat(6, 5), &s));
    }

    #[test]
    fn reduce_unwinds_padic_fraction() {
        let s = s23();
        let r = pt(&s, &[(3, 4), (0, 1), (0, 1)]);
        let out = reduce(&r);
        assert_eq!(out.rep(), &pt(&s, &[(1, 1), (1, 4), (1, 4)]));
        assert_eq!(out.shift(), &rat(-1, 4));
        // original - rep is the diagonal embedding of the shift
        let diff = r.sub(out.rep()).unwrap();
        assert_eq!(diff, SPoint::diagonal(out.shift(), &s));
        assert!(is_s_integer(out.shift(), &s));
    }

    #[test]
    fn reduce_wraps_real_coordinate() {
        let s = s23();
        let r = pt(&s, &[(0, 1), (0, 1), (5, 2)]);
        let out = reduce(&r);
        assert_eq!(out.rep(), &pt(&s, &[(-2, 1), (-2, 1), (1, 2)]));
        assert_eq!(out.shift(), &rat(2, 1));
    }

    #[test]
    fn reduce_is_idempotent_on_canonical_points() {
        let s = s23();
        let r = pt(&s, &[(22, 7), (3, 5), (9, 10)]);
        let once = reduce(&r);
        let twice = reduce(once.rep());
        assert_eq!(twice.rep(), once.rep());
        assert!(twice.shift().is_zero());
    }

    #[test]
    fn canonical_wrapper_validates() {
        let s = s23();
        assert!(SolenoidPoint::from_canonical(pt(&s, &[(1, 5), (2, 1), (0, 1)])).is_ok());
        assert!(SolenoidPoint::from_canonical(pt(&s, &[(1, 2), (0, 1), (0, 1)])).is_err());
        assert!(SolenoidPoint::from_canonical(pt(&s, &[(0, 1), (0, 1), (1, 1)])).is_err());
        assert!(SolenoidPoint::from_canonical(pt(&s, &[(0, 1), (0, 1), (-1, 10)])).is_err());
    }

    #[test]
    fn coset_equality_examples() {
        let s = s23();
        let r = pt(&s, &[(5, 8), (7, 9), (13, 10)]);
        let lattice = SPoint::diagonal(&rat(17, 12), &s);
        assert!(coset_eq(&r, &r.add(&lattice).unwrap()).unwrap());

        let z = SPoint::zero(&s);
        let half_real = pt(&s, &[(0, 1), (0, 1), (1, 2)]);
        assert!(!coset_eq(&z, &half_real).unwrap());

        let outside = SPoint::diagonal(&rat(1, 5), &s);
        assert!(!coset_eq(&r, &r.add(&outside).unwrap()).unwrap());
    }

    #[test]
    fn quotient_dist_examples() {
        let s = s2();
        let a = Exponents::ones(1);
        let z = SPoint::zero(&s);

        let near_one = pt(&s, &[(0, 1), (9, 10)]);
        assert_eq!(
            quotient_dist(&near_one, &z, &a).unwrap(),
            MetricValue::real(rat(9, 10))
        );

        // the 2-adic winding compensates: translate by z = 1 wins
        let wound = pt(&s, &[(1, 1), (9, 10)]);
        let (z_opt, d) = quotient_dist_witness(&wound, &z, &a).unwrap();
        assert_eq!(d, MetricValue::real(rat(1, 10)));
        assert_eq!(z_opt, BigInt::from(1));

        // below one half the quotient metric is the ambient metric
        let close = pt(&s, &[(0, 1), (3, 10)]);
        let d = quotient_dist(&close, &z, &a).unwrap();
        assert_eq!(d, MetricValue::real(rat(3, 10)));
        assert_eq!(d, close.dist(&z).unwrap());
    }

    #[test]
    fn quotient_dist_ties_resolve_to_smallest_translate() {
        // real gap of exactly 1/2: z = 0 and z = 1 give the same distance
        let s = s2();
        let a = Exponents::ones(1);
        let r = pt(&s, &[(0, 1), (3, 4)]);
        let t = pt(&s, &[(0, 1), (1, 4)]);
        let (z, d) = quotient_dist_witness(&r, &t, &a).unwrap();
        assert_eq!(d, MetricValue::real(rat(1, 2)));
        assert_eq!(z, BigInt::zero());
    }

    #[test]
    fn group_laws_hold_on_cosets() {
        let s = s23();
        let x = reduce(&pt(&s, &[(5, 4), (1, 3), (7, 5)]));
        let zero = SolenoidPoint::zero(&s);

        let sum = x.add(&x.neg()).unwrap();
        assert!(sum.same_coset(&zero));
        assert!(zero.add(&x).unwrap().same_coset(&x));

        let three_fifths = reduce(&pt(&s, &[(0, 1), (0, 1), (3, 5)]));
        let doubled = three_fifths.add(&three_fifths).unwrap();
        assert_eq!(doubled.rep(), &pt(&s, &[(-1, 1), (-1, 1), (1, 5)]));
    }

    fn arb_spoint() -> impl Strategy<Value = SPoint> {
        proptest::collection::vec((-400i64..400, 1i64..80), 3).prop_map(|cs| {
            let s = s23();
            let mut coords: Vec<Rational> = cs.into_iter().map(|(n, d)| rat(n, d)).collect();
            let real = coords.pop().unwrap();
            SPoint::new(s, coords, real).unwrap()
        })
    }

    // canonical points: denominators coprime to the respective prime,
    // real coordinate folded into [0, 1)
    fn arb_canonical() -> impl Strategy<Value = SPoint> {
        (
            (-300i64..300, 1i64..50).prop_filter("odd denominator", |(_, d)| d % 2 != 0),
            (-300i64..300, 1i64..50).prop_filter("denominator coprime to 3", |(_, d)| d % 3 != 0),
            (0i64..100, 1i64..50),
        )
            .prop_map(|((n2, d2), (n3, d3), (nr, dr))| {
                let s = s23();
                let real = rat(nr % dr, dr);
                SPoint::new(s, vec![rat(n2, d2), rat(n3, d3)], real).unwrap()
            })
    }

    proptest! {
        #[test]
        fn reduce_lands_in_fundamental_domain(r in arb_spoint()) {
            let out = reduce(&r);
            prop_assert!(is_canonical(out.rep()));
            prop_assert!(is_s_integer(out.shift(), &s23()));
            let diff = r.sub(out.rep()).unwrap();
            prop_assert_eq!(diff, SPoint::diagonal(out.shift(), &s23()));
            // covering bound: the chosen lattice point is within distance 1
            let d = r.dist(&SPoint::diagonal(out.shift(), &s23())).unwrap();
            prop_assert!(d <= MetricValue::one());
        }

        #[test]
        fn quotient_dist_matches_brute_force(r in arb_canonical(), t in arb_canonical()) {
            let a = Exponents::new(vec![rat(2, 1), rat(3, 1)]).unwrap();
            for a in [Exponents::ones(2), a] {
                let fast = quotient_dist(&r, &t, &a).unwrap();
                let brute = quotient_dist_brute(&r, &t, &a);
                prop_assert_eq!(&fast, &brute);
                prop_assert!(fast <= MetricValue::one());
                let ambient = r.snowflake_dist(&t, &a).unwrap();
                if ambient <= MetricValue::real(rat(1, 2)) {
                    prop_assert_eq!(&fast, &ambient);
                }
            }
        }

        #[test]
        fn quotient_metric_axioms(r in arb_canonical(), t in arb_canonical(), u in arb_canonical()) {
            let a = Exponents::ones(2);
            let drt = quotient_dist(&r, &t, &a).unwrap();
            let dtr = quotient_dist(&t, &r, &a).unwrap();
            prop_assert_eq!(&drt, &dtr);
            prop_assert_eq!(drt.is_zero(), coset_eq(&r, &t).unwrap());

            // translation invariance on cosets
            let shifted = quotient_dist(&r.add(&u).unwrap(), &t.add(&u).unwrap(), &a).unwrap();
            prop_assert_eq!(&drt, &shifted);

            // triangle inequality via rational views (unit exponents keep
            // every magnitude rational)
            let dru = quotient_dist(&r, &u, &a).unwrap().to_rational().unwrap();
            let dtu = quotient_dist(&t, &u, &a).unwrap().to_rational().unwrap();
            prop_assert!(dru <= drt.to_rational().unwrap() + dtu);
        }
    }
}
