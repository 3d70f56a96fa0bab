use num_rational::BigRational;
use num_traits::Zero;

use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials with a nonzero denominator.
///
/// Kept unreduced: equality is tested by cross-multiplication and exact
/// evaluation is available wherever the denominator does not vanish.
#[derive(Clone, Debug)]
pub struct LaurentRatio {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentRatio {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(LaurentRatio { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentRatio { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentRatio {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentRatio {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    /// Exact value with `v0` substituted for `q^(1/4)`; [`Error::Pole`] if the
    /// denominator vanishes there.
    pub fn eval_exact(&self, v0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_exact(v0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_exact(v0) / d)
    }

    /// Reduce to a polynomial when the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        self.num.div_exact(&self.den)
    }
}

impl PartialEq for LaurentRatio {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}
