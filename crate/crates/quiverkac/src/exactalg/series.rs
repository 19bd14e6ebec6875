//! Multivariate power series in one variable `X_i` per vertex, truncated to
//! the box `0 <= v <= bound` componentwise, with coefficients in the rational
//! function field in `q`.
//!
//! The box is downward closed under exponent addition, so the coefficient of
//! `X^v` in any product depends only on coefficients at exponents `<= v`;
//! every ring operation below is therefore exact on the box.

use std::collections::BTreeMap;

use super::{AlgError, RationalFunction};
use crate::quiver::DimVector;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MSeries {
    bound: DimVector,
    coeffs: BTreeMap<DimVector, RationalFunction>,
}

impl MSeries {
    pub fn zero(bound: DimVector) -> Self {
        MSeries {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(bound: DimVector) -> Self {
        let mut s = MSeries::zero(bound);
        s.set_coeff(DimVector::zeros(s.bound.len()), RationalFunction::one());
        s
    }

    /// `coeff * X^v` (panics if `v` lies outside the box).
    pub fn monomial(bound: DimVector, v: DimVector, coeff: RationalFunction) -> Self {
        let mut s = MSeries::zero(bound);
        s.set_coeff(v, coeff);
        s
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    /// Coefficient at `v` (zero if absent).
    pub fn coeff(&self, v: &DimVector) -> RationalFunction {
        self.coeffs.get(v).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn coeff_ref(&self, v: &DimVector) -> Option<&RationalFunction> {
        self.coeffs.get(v)
    }

    pub fn set_coeff(&mut self, v: DimVector, coeff: RationalFunction) {
        assert!(v.le(&self.bound), "exponent outside the box");
        if coeff.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, coeff);
        }
    }

    pub fn add_to_coeff(&mut self, v: DimVector, delta: &RationalFunction) {
        assert!(v.le(&self.bound), "exponent outside the box");
        if delta.is_zero() {
            return;
        }
        let updated = match self.coeffs.get(&v) {
            Some(existing) => existing + delta,
            None => delta.clone(),
        };
        if updated.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, updated);
        }
    }

    /// Nonzero coefficients in lexicographic exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.len()
    }

    fn check_bound(&self, other: &MSeries) -> Result<(), AlgError> {
        if self.bound != other.bound {
            return Err(AlgError::BoundMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MSeries) -> Result<MSeries, AlgError> {
        self.check_bound(other)?;
        let mut out = self.clone();
        for (v, c) in other.iter() {
            out.add_to_coeff(v.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MSeries) -> Result<MSeries, AlgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MSeries {
        MSeries {
            bound: self.bound.clone(),
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &RationalFunction) -> MSeries {
        if factor.is_zero() {
            return MSeries::zero(self.bound.clone());
        }
        MSeries {
            bound: self.bound.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(v, c)| (v.clone(), c * factor))
                .collect(),
        }
    }

    /// Exact Cauchy product within the box.
    pub fn mul(&self, other: &MSeries) -> Result<MSeries, AlgError> {
        self.check_bound(other)?;
        let mut out = MSeries::zero(self.bound.clone());
        for (u, a) in self.iter() {
            for (w, b) in other.iter() {
                let v = u.add(w);
                if v.le(&self.bound) {
                    out.add_to_coeff(v, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<MSeries, AlgError> {
        let mut result = MSeries::one(self.bound.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplicative inverse, by graded recursion on the total exponent:
    /// with `a_0` invertible, `b_0 = a_0^{-1}` and for `v != 0`
    /// `b_v = -a_0^{-1} * sum_{0 < u <= v} a_u b_{v-u}`.
    pub fn inverse(&self) -> Result<MSeries, AlgError> {
        let zero_exp = DimVector::zeros(self.bound.len());
        let a0 = self.coeff(&zero_exp);
        if a0.is_zero() {
            return Err(AlgError::ZeroConstantTerm);
        }
        let a0_inv = a0.inverse().expect("nonzero constant term");
        let mut out = MSeries::zero(self.bound.clone());
        out.set_coeff(zero_exp.clone(), a0_inv.clone());
        for v in self.bound.box_vectors() {
            if v.is_zero() {
                continue;
            }
            let mut acc = RationalFunction::zero();
            for (u, a) in self.iter() {
                if u.is_zero() || !u.le(&v) {
                    continue;
                }
                let rest = v.checked_sub(u).unwrap();
                if let Some(b) = out.coeff_ref(&rest) {
                    acc = &acc + &(a * b);
                }
            }
            if !acc.is_zero() {
                out.set_coeff(v, &(-&acc) * &a0_inv);
            }
        }
        Ok(out)
    }

    /// Formal logarithm `log(1+u) = sum_{k>=1} (-1)^{k+1} u^k / k`, truncated
    /// to the box. Computed by the graded recursion obtained from applying
    /// the total-degree Euler operator `D` (with `D X^v = |v| X^v`) to
    /// `f = exp(g)`: comparing coefficients in `D f = f * D g` gives, for
    /// `v != 0`,
    ///
    /// `g_v = f_v - (1/|v|) * sum_{0 < w < v} |w| g_w f_{v-w}`,
    ///
    /// which agrees with the defining power series (checked in tests against
    /// a direct expansion).
    pub fn log(&self) -> Result<MSeries, AlgError> {
        let zero_exp = DimVector::zeros(self.bound.len());
        if !self.coeff(&zero_exp).is_one() {
            return Err(AlgError::LogConstantTermNotOne);
        }
        let mut out = MSeries::zero(self.bound.clone());
        for v in self.bound.box_vectors() {
            if v.is_zero() {
                continue;
            }
            let mut acc = self.coeff(&v);
            let mut correction = RationalFunction::zero();
            for (w, g_w) in out.iter() {
                if w == &v || !w.le(&v) {
                    continue;
                }
                let rest = v.checked_sub(w).unwrap();
                if let Some(f_rest) = self.coeff_ref(&rest) {
                    let weighted = &RationalFunction::from_int(w.total() as i64) * g_w;
                    correction = &correction + &(&weighted * f_rest);
                }
            }
            if !correction.is_zero() {
                let inv_total = RationalFunction::from_int(v.total() as i64)
                    .inverse()
                    .expect("v != 0");
                acc = &acc - &(&correction * &inv_total);
            }
            if !acc.is_zero() {
                out.set_coeff(v, acc);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPoly;

    fn dv(c: &[u32]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(
            IntPoly::from_coeffs_i64(num),
            IntPoly::from_coeffs_i64(den),
        )
        .unwrap()
    }

    /// 1 + c*X in one variable.
    fn one_plus(bound: &DimVector, c: RationalFunction) -> MSeries {
        let mut s = MSeries::one(bound.clone());
        s.set_coeff(dv(&[1]), c);
        s
    }

    #[test]
    fn mul_identity_and_binomial() {
        let bound = dv(&[2]);
        let x = one_plus(&bound, RationalFunction::from_int(1));
        assert_eq!(MSeries::one(bound.clone()).mul(&x).unwrap(), x);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.coeff(&dv(&[0])), RationalFunction::from_int(1));
        assert_eq!(sq.coeff(&dv(&[1])), RationalFunction::from_int(2));
        assert_eq!(sq.coeff(&dv(&[2])), RationalFunction::from_int(1));
    }

    #[test]
    fn mul_telescopes() {
        // (1-X)(1+X+X^2) = 1 within the box (2)
        let bound = dv(&[2]);
        let a = one_plus(&bound, RationalFunction::from_int(-1));
        let mut b = MSeries::one(bound.clone());
        b.set_coeff(dv(&[1]), RationalFunction::from_int(1));
        b.set_coeff(dv(&[2]), RationalFunction::from_int(1));
        assert_eq!(a.mul(&b).unwrap(), MSeries::one(bound));
    }

    #[test]
    fn mul_bound_mismatch() {
        let a = MSeries::one(dv(&[1]));
        let b = MSeries::one(dv(&[2]));
        assert_eq!(a.mul(&b), Err(AlgError::BoundMismatch));
    }

    #[test]
    fn inverse_of_one_and_geometric() {
        let bound = dv(&[3]);
        assert_eq!(
            MSeries::one(bound.clone()).inverse().unwrap(),
            MSeries::one(bound.clone())
        );
        let a = one_plus(&bound, RationalFunction::from_int(-1)); // 1 - X
        let inv = a.inverse().unwrap();
        for k in 0..=3u32 {
            assert_eq!(inv.coeff(&dv(&[k])), RationalFunction::from_int(1));
        }
        assert_eq!(a.mul(&inv).unwrap(), MSeries::one(bound));
    }

    #[test]
    fn inverse_with_rational_function_coefficients() {
        // inverse(1 + X/(q-1)) = 1 - X/(q-1) + X^2/(q-1)^2 at bound (2)
        let bound = dv(&[2]);
        let a = one_plus(&bound, rf(&[1], &[-1, 1]));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeff(&dv(&[0])), RationalFunction::from_int(1));
        assert_eq!(inv.coeff(&dv(&[1])), rf(&[-1], &[-1, 1]));
        assert_eq!(inv.coeff(&dv(&[2])), rf(&[1], &[1, -2, 1]));
        assert_eq!(a.mul(&inv).unwrap(), MSeries::one(bound));
    }

    #[test]
    fn inverse_requires_unit_constant_term() {
        let mut s = MSeries::zero(dv(&[1]));
        s.set_coeff(dv(&[1]), RationalFunction::from_int(1));
        assert_eq!(s.inverse(), Err(AlgError::ZeroConstantTerm));
    }

    /// Direct power-series logarithm, kept independent of the graded recursion.
    fn log_by_powers(f: &MSeries) -> MSeries {
        let bound = f.bound().clone();
        let u = f
            .sub(&MSeries::one(bound.clone()))
            .expect("same bound");
        let mut acc = MSeries::zero(bound.clone());
        let max_k: u64 = bound.total().max(1);
        let mut power = MSeries::one(bound.clone());
        for k in 1..=max_k {
            power = power.mul(&u).expect("same bound");
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let factor = &RationalFunction::from_int(sign)
                * &RationalFunction::from_int(k as i64).inverse().unwrap();
            acc = acc.add(&power.scale(&factor)).expect("same bound");
        }
        acc
    }

    #[test]
    fn log_examples() {
        let bound = dv(&[3]);
        assert_eq!(
            MSeries::one(bound.clone()).log().unwrap(),
            MSeries::zero(bound.clone())
        );
        let a = one_plus(&bound, RationalFunction::from_int(-1)); // 1 - X
        let l = a.log().unwrap();
        assert_eq!(l.coeff(&dv(&[1])), RationalFunction::from_int(-1));
        assert_eq!(l.coeff(&dv(&[2])), rf(&[-1], &[2]));
        assert_eq!(l.coeff(&dv(&[3])), rf(&[-1], &[3]));
    }

    #[test]
    fn log_is_additive_on_products() {
        let bound = dv(&[2]);
        let a = one_plus(&bound, RationalFunction::from_int(-1));
        let a_sq = a.mul(&a).unwrap();
        let log_sq = a_sq.log().unwrap();
        let twice = a.log().unwrap().scale(&RationalFunction::from_int(2));
        assert_eq!(log_sq, twice);
    }

    #[test]
    fn log_requires_constant_term_one() {
        let s = MSeries::zero(dv(&[1]));
        assert_eq!(s.log(), Err(AlgError::LogConstantTermNotOne));
        let two = MSeries::one(dv(&[1])).scale(&RationalFunction::from_int(2));
        assert_eq!(two.log(), Err(AlgError::LogConstantTermNotOne));
    }

    #[test]
    fn log_matches_direct_expansion_multivariate() {
        let bound = dv(&[2, 2]);
        let mut f = MSeries::one(bound.clone());
        f.set_coeff(dv(&[1, 0]), rf(&[1], &[-1, 1]));
        f.set_coeff(dv(&[0, 1]), rf(&[0, 1], &[1]));
        f.set_coeff(dv(&[1, 1]), rf(&[2], &[1]));
        f.set_coeff(dv(&[2, 1]), rf(&[0, 0, 1], &[-1, 0, 1]));
        assert_eq!(f.log().unwrap(), log_by_powers(&f));
    }

    #[test]
    fn log_exp_structure_via_inverse() {
        // log(1/f) = -log(f) within the box
        let bound = dv(&[2, 1]);
        let mut f = MSeries::one(bound.clone());
        f.set_coeff(dv(&[1, 0]), rf(&[1, 1], &[1]));
        f.set_coeff(dv(&[0, 1]), rf(&[-1], &[0, 1]));
        let li = f.inverse().unwrap().log().unwrap();
        assert_eq!(li, f.log().unwrap().neg());
    }
}
