use num_bigint::BigInt;
use num_traits::One;

use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// `{a} = v^a - v^(-a)` (so `{0} = 0` and `{-a} = -{a}`).
pub fn qint(a: i64) -> LaurentPoly {
    if a == 0 {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_terms([(2 * a, BigInt::one()), (-2 * a, -BigInt::one())])
}

/// Balanced quantum integer `[a] = {a}/{1} = v^(a-1) + v^(a-3) + ... + v^(1-a)`.
pub fn qint_balanced(a: u32) -> LaurentPoly {
    let a = i64::from(a);
    LaurentPoly::from_terms((0..a).map(|i| (2 * (a - 1 - 2 * i), BigInt::one())))
}

/// `{a}! = prod_{i=1}^{a} {i}`.
pub fn qfactorial(a: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for i in 1..=i64::from(a) {
        acc = &acc * &qint(i);
    }
    acc
}

/// Falling product `{a}_b = {a} {a-1} ... {a-b+1}`, computed as the short
/// product rather than a quotient of factorials.
pub fn qfalling(a: u32, b: u32) -> Result<LaurentPoly> {
    if b > a {
        return Err(Error::Domain(format!("qfalling needs b <= a, got a={a} b={b}")));
    }
    let (a, b) = (i64::from(a), i64::from(b));
    let mut acc = LaurentPoly::one();
    for i in (a - b + 1)..=a {
        acc = &acc * &qint(i);
    }
    Ok(acc)
}

/// Quantum binomial `{a}! / ({b}! {a-b}!)`, computed by exact division of the
/// falling product by `{b}!`. The division always leaves zero remainder.
pub fn qbinom(a: u32, b: u32) -> Result<LaurentPoly> {
    if b > a {
        return Err(Error::Domain(format!("qbinom needs 0 <= b <= a, got a={a} b={b}")));
    }
    let b = b.min(a - b);
    if b == 0 {
        return Ok(LaurentPoly::one());
    }
    qfalling(a, b)?.div_exact(&qfactorial(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::Signed;

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), LaurentPoly::from_terms([(2, 1.into()), (-2, BigInt::from(-1))]));
        assert_eq!(qint(3), LaurentPoly::from_terms([(6, 1.into()), (-6, BigInt::from(-1))]));
        assert_eq!(qint(-3), qint(3).neg());
    }

    #[test]
    fn qfactorial_small_values() {
        assert!(qfactorial(0).is_one());
        // {2}! = (v - v^-1)(v^2 - v^-2) = v^3 - v - v^-1 + v^-3
        let expect = LaurentPoly::from_terms([
            (6, 1.into()),
            (2, BigInt::from(-1)),
            (-2, BigInt::from(-1)),
            (-6, 1.into()),
        ]);
        assert_eq!(qfactorial(2), expect);
    }

    #[test]
    fn qfalling_single_factor_and_domain_error() {
        assert_eq!(qfalling(3, 1).unwrap(), qint(3));
        assert_eq!(qfalling(3, 0).unwrap(), LaurentPoly::one());
        assert!(qfalling(2, 3).is_err());
    }

    #[test]
    fn qbinom_examples() {
        for n in 0..8 {
            assert!(qbinom(n, 0).unwrap().is_one());
        }
        // {2 choose 1} = {2}/{1} = v + v^-1
        assert_eq!(
            qbinom(2, 1).unwrap(),
            LaurentPoly::from_terms([(2, 1.into()), (-2, 1.into())])
        );
        assert_eq!(qbinom(4, 2).unwrap().l1_norm(), BigUint::from(6u32));
    }

    #[test]
    fn qbinom_matches_ordinary_binomial_l1_and_positivity() {
        for a in 0..=20u32 {
            for b in 0..=a {
                let p = qbinom(a, b).unwrap();
                assert!(p.iter().all(|(_, c)| c.is_positive()), "negative coefficient in [{a} choose {b}]");
                let ordinary = num_integer::binomial(BigUint::from(a), BigUint::from(b));
                assert_eq!(p.l1_norm(), ordinary, "l1 of [{a} choose {b}]");
            }
        }
    }

    #[test]
    fn qfalling_l1_bound_from_crossing_weights() {
        // ||{n-1+k-a}_k||_1 <= 2^k for the colorings 0 <= k <= a < n <= 20.
        for n in 1..=20u32 {
            for a in 0..n {
                for k in 0..=a {
                    let p = qfalling(n - 1 + k - a, k).unwrap();
                    assert!(p.l1_norm() <= BigUint::from(2u32).pow(k));
                }
            }
        }
    }

    #[test]
    fn balanced_qint_agrees_with_quotient() {
        for a in 1..=9u32 {
            assert_eq!(qint_balanced(a), qint(i64::from(a)).div_exact(&qint(1)).unwrap());
        }
        assert!(qint_balanced(0).is_zero());
    }
}
