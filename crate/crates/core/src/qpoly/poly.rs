use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat_pow;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `q^(1/4)` over the integers.
///
/// Invariants: no stored coefficient is zero, and the zero polynomial is the
/// empty map. Degrees are derived, never stored, and are absent for zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

/// Norm and degree summary of a polynomial. Degrees are in quarter units of
/// `q` and absent for the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Norms {
    pub l1: BigUint,
    pub l2_sq: BigUint,
    pub maxdeg_q4: Option<i64>,
    pub mindeg_q4: Option<i64>,
}

impl Norms {
    /// Span `maxdeg - mindeg` in `q` units, as a rational.
    pub fn span_q(&self) -> Option<Rational64> {
        match (self.maxdeg_q4, self.mindeg_q4) {
            (Some(hi), Some(lo)) => Some(Rational64::new(hi - lo, 4)),
            _ => None,
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c * q^(e/4)`.
    pub fn monomial(exp_q4: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp_q4, coeff);
        }
        LaurentPoly { terms }
    }

    /// `q^k` for integer `k`.
    pub fn q_power(k: i64) -> Self {
        Self::monomial(4 * k, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in iter {
            accumulate(&mut map, e, c);
        }
        LaurentPoly { terms: map }
    }

    pub(crate) fn from_map(map: BTreeMap<i64, BigInt>) -> Self {
        debug_assert!(map.values().all(|c| !c.is_zero()));
        LaurentPoly { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Term iteration in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp_q4: i64) -> BigInt {
        self.terms.get(&exp_q4).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn maxdeg_q4(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn mindeg_q4(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Span in quarter units; `None` for the zero polynomial.
    pub fn span_q4(&self) -> Option<i64> {
        Some(self.maxdeg_q4()? - self.mindeg_q4()?)
    }

    pub fn l1_norm(&self) -> BigUint {
        let mut s = BigUint::zero();
        for c in self.terms.values() {
            s += c.magnitude();
        }
        s
    }

    pub fn l2_norm_sq(&self) -> BigUint {
        let mut s = BigUint::zero();
        for c in self.terms.values() {
            s += c.magnitude() * c.magnitude();
        }
        s
    }

    pub fn norms(&self) -> Norms {
        Norms {
            l1: self.l1_norm(),
            l2_sq: self.l2_norm_sq(),
            maxdeg_q4: self.maxdeg_q4(),
            mindeg_q4: self.mindeg_q4(),
        }
    }

    /// True iff every exponent is an integer power of `q` (multiple of 4).
    pub fn has_integer_q_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(4) == 0)
    }

    /// Multiply by the monomial `q^(shift/4)` in place.
    pub fn shift(&self, shift_q4: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + shift_q4, c.clone())).collect(),
        }
    }

    /// The image under `q -> q^(-1)`.
    pub fn conjugate(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact quotient; fails with [`Error::InexactDivision`] if `self` is not
    /// a multiple of `divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dmax, dlead) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(&e, c)| (e, c.clone()))
            .expect("nonzero divisor");
        let dmin = divisor.mindeg_q4().expect("nonzero divisor");
        let smin = self.mindeg_q4().expect("nonzero self");
        // An exact quotient has exponents in [smin - dmin, smax - dmax].
        let qmin = smin - dmin;
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();
        while let Some((&rmax, rlead)) = rem.iter().next_back() {
            let qexp = rmax - dmax;
            if qexp < qmin {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = num_integer::Integer::div_rem(rlead, &dlead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (&e, c) in &divisor.terms {
                accumulate(&mut rem, e + qexp, -(c * &qc));
            }
            debug_assert!(!rem.contains_key(&rmax));
            quot.insert(qexp, qc);
        }
        Ok(LaurentPoly { terms: quot })
    }

    /// Exact value with `v0` substituted for `q^(1/4)`.
    pub fn eval_exact(&self, v0: &BigRational) -> BigRational {
        assert!(!v0.is_zero(), "evaluation point must be nonzero");
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            acc += BigRational::from(c.clone()) * rat_pow(v0, e);
        }
        acc
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            accumulate(&mut terms, e, c.clone());
        }
        LaurentPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            accumulate(&mut terms, e, -c.clone());
        }
        LaurentPoly { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map = BTreeMap::new();
        mul_acc(&mut map, self, other);
        LaurentPoly { terms: map }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, t)| (e, t * c)).collect(),
        }
    }
}

/// `acc += e, c` keeping the no-zero-coefficients invariant.
pub(crate) fn accumulate(acc: &mut BTreeMap<i64, BigInt>, exp: i64, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(exp) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// `acc += f * g`.
pub(crate) fn mul_acc(acc: &mut BTreeMap<i64, BigInt>, f: &LaurentPoly, g: &LaurentPoly) {
    // Iterate the shorter factor on the outside.
    let (outer, inner) = if f.num_terms() <= g.num_terms() { (f, g) } else { (g, f) };
    for (eo, co) in outer.iter() {
        for (ei, ci) in inner.iter() {
            accumulate(acc, eo + ei, co * ci);
        }
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest power first reads like a hand-written polynomial.
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e.rem_euclid(4) == 0 {
                    write!(f, "q^{}", e / 4)?;
                } else {
                    let g = num_integer::Integer::gcd(&e, &4);
                    write!(f, "q^({}/{})", e / g, 4 / g)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    unit: String,
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            unit: "q^(1/4)".to_owned(),
            terms: self.terms.iter().map(|(&e, c)| (e, c.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.unit != "q^(1/4)" {
            return Err(D::Error::custom(format!("unsupported exponent unit {:?}", raw.unit)));
        }
        let mut map = BTreeMap::new();
        for (e, c) in raw.terms {
            let c: BigInt = c.parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            accumulate(&mut map, e, c);
        }
        Ok(LaurentPoly { terms: map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{qfactorial, qint};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_polynomial_has_no_degrees() {
        let z = LaurentPoly::zero();
        assert!(z.is_zero());
        assert_eq!(z.l1_norm(), BigUint::zero());
        assert_eq!(z.maxdeg_q4(), None);
        assert_eq!(z.mindeg_q4(), None);
        assert_eq!(z.norms().span_q(), None);
    }

    #[test]
    fn norms_of_q_minus_one() {
        // f = q - 1: l1 = 2, span = 1 (in q units).
        let f = &LaurentPoly::q_power(1) - &LaurentPoly::one();
        let n = f.norms();
        assert_eq!(n.l1, BigUint::from(2u32));
        assert_eq!(n.span_q(), Some(Rational64::new(1, 1)));
    }

    #[test]
    fn norms_of_qfactorial_two() {
        // {2}! = v^3 - v - v^-1 + v^-3 has four unit coefficients.
        let f = qfactorial(2);
        assert_eq!(f.l1_norm(), BigUint::from(4u32));
        assert_eq!(f.l2_norm_sq(), BigUint::from(4u32));
    }

    #[test]
    fn exact_division_round_trip_and_failure() {
        let a = qint(3);
        let b = qint(1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        // (v - v^-1) vanishes at v = 1, this one does not.
        let bad = LaurentPoly::from_terms([(6, BigInt::from(1)), (2, BigInt::from(1)), (0, BigInt::from(1))]);
        assert_eq!(bad.div_exact(&b), Err(Error::InexactDivision));
    }

    #[test]
    fn eval_exact_examples() {
        // q^(1/4) = 2, so v = 4: {1} -> 4 - 1/4 = 15/4.
        let v0 = rat(2, 1);
        assert_eq!(LaurentPoly::one().eval_exact(&v0), rat(1, 1));
        assert_eq!(qint(1).eval_exact(&v0), rat(15, 4));
    }

    #[test]
    fn json_shape_is_stable() {
        let f = &qint(1) * &qint(1);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"unit":"q^(1/4)","terms":[[-4,"1"],[0,"-2"],[4,"1"]]}"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn display_uses_reduced_quarter_powers() {
        let f = LaurentPoly::from_terms([(1, BigInt::from(3)), (-4, BigInt::from(-1)), (0, BigInt::from(2))]);
        assert_eq!(f.to_string(), "3*q^(1/4) + 2 - q^-1");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-30i64..30, -9i64..9), 0..12).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn l1_is_subadditive_and_submultiplicative(f in arb_poly(), g in arb_poly()) {
            let sum = &f + &g;
            let prod = &f * &g;
            prop_assert!(sum.l1_norm() <= f.l1_norm() + g.l1_norm());
            prop_assert!(prod.l1_norm() <= f.l1_norm() * g.l1_norm());
        }

        #[test]
        fn eval_exact_is_a_ring_homomorphism(f in arb_poly(), g in arb_poly()) {
            let v0 = rat(3, 2);
            let lhs = (&f * &g).eval_exact(&v0);
            let rhs = f.eval_exact(&v0) * g.eval_exact(&v0);
            prop_assert_eq!(lhs, rhs);
            let lhs = (&f + &g).eval_exact(&v0);
            let rhs = f.eval_exact(&v0) + g.eval_exact(&v0);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_division_inverts_multiplication(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero());
            let prod = &f * &g;
            prop_assert_eq!(prod.div_exact(&g).unwrap(), f);
        }
    }
}
