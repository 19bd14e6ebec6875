//! The fraction field of integer polynomials in `q`, with eager gcd
//! reduction so every value is in a unique canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{AlgError, IntPoly};

/// Ratio of two integer polynomials in `q`.
///
/// Canonical form: denominator nonzero with positive leading coefficient,
/// and the polynomial gcd of numerator and denominator over the integers
/// (contents included) is 1. For the zero function the denominator is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num,
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RationalFunction::from_poly(IntPoly::constant_i64(c))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RationalFunction::reduced(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
    }

    /// `q^e`, clearing negative exponents into the denominator.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            RationalFunction::from_poly(IntPoly::q_pow(e as usize))
        } else {
            RationalFunction {
                num: IntPoly::one(),
                den: IntPoly::q_pow((-e) as usize),
            }
        }
    }

    /// `1 - q^{-j}` as a reduced fraction `(q^j - 1)/q^j` (j >= 1).
    pub fn one_minus_q_inverse_pow(j: u32) -> Self {
        assert!(j >= 1);
        RationalFunction {
            num: IntPoly::q_pow_minus_one(j as usize),
            den: IntPoly::q_pow(j as usize),
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::ZeroDenominator);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<Self, AlgError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut result = RationalFunction::one();
        let mut base = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Replaces `q` by `q^k` in numerator and denominator (k >= 1).
    pub fn substitute_power(&self, k: u32) -> Self {
        Self::reduced(self.num.substitute_power(k), self.den.substitute_power(k))
    }

    /// The exact polynomial this fraction represents. In canonical form the
    /// denominator of a polynomial embeds as the constant 1, so a nontrivial
    /// constant denominator means rational non-integer coefficients and a
    /// nonconstant one means the division is not exact.
    pub fn to_polynomial(&self) -> Result<IntPoly, AlgError> {
        match self.den.degree() {
            Some(0) => {
                if self.den.is_one() {
                    Ok(self.num.clone())
                } else {
                    Err(AlgError::NonIntegral)
                }
            }
            Some(_) => Err(AlgError::NonPolynomial),
            None => unreachable!("canonical denominator is nonzero"),
        }
    }

    /// Exact value at a rational point, or `PoleAtPoint` where the (reduced)
    /// denominator vanishes.
    pub fn eval_at(&self, x: &BigRational) -> Result<BigRational, AlgError> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(AlgError::PoleAtPoint);
        }
        Ok(self.num.eval(x) / den)
    }

    /// The constant value if this fraction is a constant rational number.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            Some(BigRational::new(
                self.num.constant_term(),
                self.den.constant_term(),
            ))
        } else {
            None
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::reduced(num, den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel before multiplying to limit coefficient growth
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        RationalFunction::reduced(&a * &c, &b * &d)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self * &RationalFunction::reduced(rhs.den.clone(), rhs.num.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs_i64(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        // (q^2-1)/(q-1) reduces to the polynomial q+1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // contents reduce jointly
        assert_eq!(rf(&[0, 2], &[2, 0, 4]), rf(&[0, 1], &[1, 0, 2]));
        // denominator sign normalized
        let f = rf(&[1], &[1, -1]);
        assert!(f.denominator().leading().unwrap() > &BigInt::zero());
        assert_eq!(f, rf(&[-1], &[-1, 1]));
        // zero numerator forces denominator 1
        assert_eq!(rf(&[], &[5, 3]), RationalFunction::zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(p(&[1]), IntPoly::zero()),
            Err(AlgError::ZeroDenominator)
        );
        assert!(RationalFunction::zero().inverse().is_err());
    }

    #[test]
    fn field_operations() {
        let a = rf(&[1, 1], &[-1, 1]); // (q+1)/(q-1)
        let b = rf(&[0, 1], &[1]); // q
        assert_eq!(&a * &a.inverse().unwrap(), RationalFunction::one());
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a / &a, RationalFunction::one());
        let prod = &a * &b;
        assert_eq!(prod, rf(&[0, 1, 1], &[-1, 1]));
    }

    #[test]
    fn one_minus_q_inverse_pow_clears_negative_powers() {
        // 1 - q^{-2} = (q^2-1)/q^2
        assert_eq!(
            RationalFunction::one_minus_q_inverse_pow(2),
            rf(&[-1, 0, 1], &[0, 0, 1])
        );
        // q^{-3}
        assert_eq!(RationalFunction::q_pow(-3), rf(&[1], &[0, 0, 0, 1]));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(rf(&[0, 1], &[1]).substitute_power(3), rf(&[0, 0, 0, 1], &[1]));
        assert_eq!(
            rf(&[1, 1], &[-1, 1]).substitute_power(2),
            rf(&[1, 0, 1], &[-1, 0, 1])
        );
        assert_eq!(
            rf(&[0, -1, 1], &[1]).substitute_power(2),
            rf(&[0, 0, -1, 0, 1], &[1])
        );
    }

    #[test]
    fn substitute_power_composes() {
        let f = rf(&[1, 2], &[-1, 0, 1]);
        for (j, k) in [(2u32, 3u32), (1, 5), (4, 2)] {
            assert_eq!(
                f.substitute_power(j).substitute_power(k),
                f.substitute_power(j * k)
            );
        }
    }

    #[test]
    fn to_polynomial_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]).to_polynomial(), Ok(p(&[1, 1])));
        assert_eq!(rf(&[0, -1, 0, 1], &[-1, 1]).to_polynomial(), Ok(p(&[0, 1, 1])));
        assert_eq!(
            rf(&[1], &[-1, 1]).to_polynomial(),
            Err(AlgError::NonPolynomial)
        );
        assert_eq!(rf(&[1, 1], &[2]).to_polynomial(), Err(AlgError::NonIntegral));
        assert_eq!(RationalFunction::zero().to_polynomial(), Ok(IntPoly::zero()));
    }

    #[test]
    fn to_polynomial_agrees_with_long_division() {
        // long-division oracle on the raw polynomials
        let n = p(&[0, -1, 0, 1]);
        let d = p(&[-1, 1]);
        let (quot, rem) = n.div_rem_rational(&d);
        assert!(rem.is_empty());
        let expected: Vec<BigInt> = quot.iter().map(|c| c.numer().clone()).collect();
        assert!(quot.iter().all(|c| c.denom().is_one()));
        assert_eq!(
            RationalFunction::new(n, d).unwrap().to_polynomial().unwrap(),
            IntPoly::from_coeffs(expected)
        );
    }

    #[test]
    fn eval_examples() {
        let at = |f: &RationalFunction, x: i64| f.eval_at(&BigRational::from(BigInt::from(x)));
        let f = rf(&[1, 1], &[-1, 1]);
        assert_eq!(at(&f, 0), Ok(BigRational::from(BigInt::from(-1))));
        assert_eq!(
            at(&rf(&[0, 1, 1], &[1]), 3),
            Ok(BigRational::from(BigInt::from(12)))
        );
        assert_eq!(at(&rf(&[1], &[-1, 1]), 1), Err(AlgError::PoleAtPoint));
    }

    #[test]
    fn constant_extraction() {
        assert_eq!(
            rf(&[3], &[6]).as_constant(),
            Some(BigRational::new(BigInt::from(1), BigInt::from(2)))
        );
        assert_eq!(RationalFunction::zero().as_constant(), Some(BigRational::zero()));
        assert_eq!(rf(&[0, 1], &[1]).as_constant(), None);
        assert_eq!(rf(&[1], &[-1, 1]).as_constant(), None);
    }

    #[test]
    fn pow_including_negative() {
        let f = rf(&[0, 1], &[1, 1]); // q/(q+1)
        assert_eq!(f.pow(0).unwrap(), RationalFunction::one());
        assert_eq!(f.pow(2).unwrap(), rf(&[0, 0, 1], &[1, 2, 1]));
        assert_eq!(f.pow(-1).unwrap(), rf(&[1, 1], &[0, 1]));
    }
}
