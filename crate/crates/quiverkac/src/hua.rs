//! Multipartition generating sums over a quiver and the extraction of Kac
//! A-polynomials from them.
//!
//! The basic object is the sum over multipartitions `lambda = (lambda^i)_i`
//! of the weight
//!
//! ```text
//!   prod_e q^<lambda^{s(e)}, lambda^{t(e)}>  *  prod_i q^<lambda^i, 1^{w_i}>
//!   -------------------------------------------------------------------------  X^{|lambda|}
//!   prod_i ( q^<lambda^i,lambda^i> prod_k prod_{j=1}^{m_k(lambda^i)} (1-q^{-j}) )
//! ```
//!
//! where the framing factor `q^<lambda^i, 1^{w_i}>` is present only when a
//! framing vector `w` is supplied; `<lambda, 1^w> = w * length(lambda)`, an
//! identity verified in the partition tests.
//!
//! # The inversion recurrence
//!
//! Write `H` for the unframed sum and suppose `H` has a product expansion
//! `H = prod_{alpha>0} prod_{i>=0} prod_{j>=0} (1 - q^{i+j} X^alpha)^{t^alpha_j}`
//! with `A_alpha(q) = sum_j t^alpha_j q^j`. Taking logarithms and expanding
//! `log(1-u) = -sum_{k>=1} u^k/k` gives
//!
//! ```text
//!   log H = - sum_alpha sum_{k>=1} (X^{k alpha} / k)
//!           * (sum_j t^alpha_j q^{kj}) * (sum_{i>=0} q^{ki}),
//! ```
//!
//! and the geometric sum over `i` collapses to `1/(1-q^k)` in the rational
//! function field (the coefficients live there, never in power series in
//! `q`), so the coefficient of `X^beta` is
//!
//! ```text
//!   (log H)_beta = - sum_{k>=1, beta = k alpha} A_alpha(q^k) / (k (1-q^k)).
//! ```
//!
//! Isolating the `k = 1` term and inducting on the total size of `beta`:
//!
//! ```text
//!   A_beta(q) = -(1-q) * ( (log H)_beta
//!               + sum_{k>=2, beta = k alpha} A_alpha(q^k) / (k (1-q^k)) ).
//! ```
//!
//! Each `A_beta` must come out a polynomial with integer coefficients; a
//! `NonPolynomial` error here means a formula or truncation bug. The whole
//! inversion is cross-checked in tests by exponentiating the claimed
//! logarithm back, and against a brute-force representation classifier over
//! prime fields.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{AlgError, IntPoly, MSeries, RationalFunction};
use crate::partitions::{enumerate_partitions, MultiPartition, Partition};
use crate::quiver::{DimVector, Quiver, QuiverError};

#[derive(Debug, Error)]
pub enum HuaError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("coefficient at {at} is not an integer polynomial ({source})")]
    NonPolynomial { at: DimVector, source: AlgError },
}

/// The weight of a single multipartition in the sum: a rational function in
/// `q` together with the exponent vector it multiplies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuaTerm {
    pub weight: RationalFunction,
    pub sizes: DimVector,
}

/// Weight of one multipartition, with the framing factor included when `w`
/// is supplied. Exposed mainly for tests; the series builders below assemble
/// the same data from per-vertex caches.
pub fn hua_term(quiver: &Quiver, w: Option<&DimVector>, mp: &MultiPartition) -> HuaTerm {
    let mut exponent: i64 = 0;
    for &(s, t) in quiver.edges() {
        exponent += mp.component(s).pairing(mp.component(t)) as i64;
    }
    if let Some(w) = w {
        for i in 0..quiver.vertex_count() {
            exponent += i64::from(w.get(i)) * mp.component(i).length() as i64;
        }
    }
    let mut weight = RationalFunction::q_pow(exponent);
    for i in 0..quiver.vertex_count() {
        weight = &weight / &mp.component(i).centralizer_order();
    }
    HuaTerm {
        weight,
        sizes: mp.sizes(),
    }
}

struct VertexCache {
    partitions: Vec<Partition>,
    sizes: Vec<u32>,
    /// `q^{w_i * length(lambda)} / |C_lambda|` per partition.
    factors: Vec<RationalFunction>,
}

/// Sum of the weights times `X^{|lambda|}` over all multipartitions in the
/// box. Terms are folded in parallel; the reduction is coefficient addition,
/// so the result does not depend on the partitioning.
fn multipartition_sum(quiver: &Quiver, w: Option<&DimVector>, bound: &DimVector) -> MSeries {
    let n = quiver.vertex_count();
    let caches: Vec<VertexCache> = (0..n)
        .map(|i| {
            let partitions: Vec<Partition> = (0..=bound.get(i))
                .flat_map(enumerate_partitions)
                .collect();
            let sizes = partitions.iter().map(|p| p.size() as u32).collect();
            let factors = partitions
                .iter()
                .map(|p| {
                    let framing = w.map_or(0, |w| i64::from(w.get(i)) * p.length() as i64);
                    &RationalFunction::q_pow(framing) / &p.centralizer_order()
                })
                .collect();
            VertexCache {
                partitions,
                sizes,
                factors,
            }
        })
        .collect();

    // pairing exponents memoized per unordered incidence pair (loops included)
    let pairs: Vec<(usize, usize, u32, Vec<Vec<u64>>)> = quiver
        .incidence_pairs()
        .into_iter()
        .map(|((i, j), mult)| {
            let table: Vec<Vec<u64>> = caches[i]
                .partitions
                .iter()
                .map(|a| caches[j].partitions.iter().map(|b| a.pairing(b)).collect())
                .collect();
            (i, j, mult, table)
        })
        .collect();

    let total: u64 = caches.iter().fold(1u64, |acc, c| {
        acc.checked_mul(c.partitions.len() as u64)
            .expect("multipartition index space exceeds u64")
    });

    let caches = &caches;
    let pairs = &pairs;
    let coeffs = (0..total)
        .into_par_iter()
        .fold(
            BTreeMap::<DimVector, RationalFunction>::new,
            |mut acc, index| {
                let mut rest = index;
                let digits: Vec<usize> = caches
                    .iter()
                    .map(|c| {
                        let len = c.partitions.len() as u64;
                        let digit = (rest % len) as usize;
                        rest /= len;
                        digit
                    })
                    .collect();
                let mut exponent: i64 = 0;
                for (i, j, mult, table) in pairs {
                    exponent += i64::from(*mult) * table[digits[*i]][digits[*j]] as i64;
                }
                let mut weight = RationalFunction::q_pow(exponent);
                for (cache, &digit) in caches.iter().zip(&digits) {
                    weight = &weight * &cache.factors[digit];
                }
                let sizes = DimVector::new(
                    caches
                        .iter()
                        .zip(&digits)
                        .map(|(c, &d)| c.sizes[d])
                        .collect(),
                );
                match acc.get_mut(&sizes) {
                    Some(existing) => *existing = &*existing + &weight,
                    None => {
                        acc.insert(sizes, weight);
                    }
                }
                acc
            },
        )
        .reduce(BTreeMap::new, |mut left, right| {
            for (v, c) in right {
                match left.get_mut(&v) {
                    Some(existing) => *existing = &*existing + &c,
                    None => {
                        left.insert(v, c);
                    }
                }
            }
            left
        });

    let mut series = MSeries::zero(bound.clone());
    for (v, c) in coeffs {
        series.set_coeff(v, c);
    }
    series
}

/// The unframed multipartition sum; constant coefficient 1.
pub fn hua_series(quiver: &Quiver, bound: &DimVector) -> MSeries {
    multipartition_sum(quiver, None, bound)
}

/// The framed multipartition sum; reduces to [`hua_series`] when `w = 0`.
pub fn framed_numerator_series(
    quiver: &Quiver,
    w: &DimVector,
    bound: &DimVector,
) -> Result<MSeries, HuaError> {
    if w.len() != quiver.vertex_count() {
        return Err(QuiverError::LengthMismatch {
            expected: quiver.vertex_count(),
            got: w.len(),
        }
        .into());
    }
    Ok(multipartition_sum(quiver, Some(w), bound))
}

/// Table of Kac A-polynomials `A(alpha, q)` for `0 < alpha <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APolyTable {
    entries: BTreeMap<DimVector, IntPoly>,
}

impl APolyTable {
    pub fn get(&self, alpha: &DimVector) -> Option<&IntPoly> {
        self.entries.get(alpha)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &IntPoly)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Extracts `A(alpha, q)` for every `0 < alpha <= bound` by the inversion
/// recurrence derived in the module docs. Dimension vectors admitting no
/// absolutely indecomposable representation get the zero polynomial.
pub fn kac_a_polynomials(quiver: &Quiver, bound: &DimVector) -> Result<APolyTable, HuaError> {
    let log = hua_series(quiver, bound)
        .log()
        .expect("constant coefficient of the multipartition sum is 1");
    let one_minus_q = RationalFunction::from_poly(IntPoly::one_minus_q_pow(1));
    let mut entries: BTreeMap<DimVector, IntPoly> = BTreeMap::new();
    for beta in bound.box_vectors() {
        if beta.is_zero() {
            continue;
        }
        let mut acc = log.coeff(&beta);
        let gcd = beta.component_gcd();
        for k in 2..=gcd {
            if gcd % k != 0 {
                continue;
            }
            let alpha = beta.checked_div(k).expect("k divides gcd");
            let a_alpha = entries
                .get(&alpha)
                .expect("smaller total size, already solved");
            if a_alpha.is_zero() {
                continue;
            }
            // A_alpha(q^k) / (k (1 - q^k))
            let denom = IntPoly::one_minus_q_pow(k as usize).scale(&num_bigint::BigInt::from(k));
            let term = RationalFunction::new(a_alpha.substitute_power(k), denom)
                .expect("nonzero denominator");
            acc = &acc + &term;
        }
        let a_beta = &(-&one_minus_q) * &acc;
        let poly = a_beta
            .to_polynomial()
            .map_err(|source| HuaError::NonPolynomial {
                at: beta.clone(),
                source,
            })?;
        entries.insert(beta, poly);
    }
    Ok(APolyTable { entries })
}

/// Constant terms `A(alpha, 0)` of every table entry.
pub fn constant_terms(table: &APolyTable) -> BTreeMap<DimVector, i64> {
    table
        .iter()
        .map(|(alpha, poly)| {
            let value = poly
                .eval_at_zero()
                .to_i64()
                .expect("constant term fits in i64 at desk scale");
            (alpha.clone(), value)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_multipartitions;

    fn dv(c: &[u32]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(IntPoly::from_coeffs_i64(num), IntPoly::from_coeffs_i64(den))
            .unwrap()
    }

    fn single() -> Quiver {
        Quiver::parse("vertices 1\n").unwrap()
    }

    fn jordan() -> Quiver {
        Quiver::parse("vertices 1\nedge 1 1\n").unwrap()
    }

    fn kronecker() -> Quiver {
        Quiver::parse("vertices 2\nedge 1 2\nedge 1 2\n").unwrap()
    }

    fn a2() -> Quiver {
        Quiver::parse("vertices 2\nedge 1 2\n").unwrap()
    }

    #[test]
    fn hua_series_examples() {
        let s = hua_series(&single(), &dv(&[2]));
        assert_eq!(s.coeff(&dv(&[0])), RationalFunction::one());
        assert_eq!(s.coeff(&dv(&[1])), rf(&[1], &[-1, 1]));

        let j = hua_series(&jordan(), &dv(&[1]));
        assert_eq!(j.coeff(&dv(&[0])), RationalFunction::one());
        assert_eq!(j.coeff(&dv(&[1])), rf(&[0, 1], &[-1, 1]));
    }

    #[test]
    fn framed_series_examples() {
        let q = single();
        let unframed = hua_series(&q, &dv(&[2]));
        let zero_framed = framed_numerator_series(&q, &dv(&[0]), &dv(&[2])).unwrap();
        assert_eq!(unframed, zero_framed);

        let w2 = framed_numerator_series(&q, &dv(&[2]), &dv(&[1])).unwrap();
        assert_eq!(w2.coeff(&dv(&[1])), rf(&[0, 0, 1], &[-1, 1]));
        let w1 = framed_numerator_series(&q, &dv(&[1]), &dv(&[1])).unwrap();
        assert_eq!(w1.coeff(&dv(&[1])), rf(&[0, 1], &[-1, 1]));
    }

    #[test]
    fn framed_series_rejects_length_mismatch() {
        assert!(framed_numerator_series(&kronecker(), &dv(&[1]), &dv(&[1, 1])).is_err());
    }

    #[test]
    fn hua_term_matches_series_assembly() {
        let q = kronecker();
        let bound = dv(&[2, 2]);
        let mut direct = MSeries::zero(bound.clone());
        for mp in enumerate_multipartitions(&bound) {
            let term = hua_term(&q, None, &mp);
            direct.add_to_coeff(term.sizes, &term.weight);
        }
        assert_eq!(direct, hua_series(&q, &bound));
    }

    #[test]
    fn hua_series_depends_only_on_undirected_graph() {
        let q = Quiver::parse("vertices 3\nedge 1 2\nedge 2 3\nedge 3 1\nedge 1 2\n").unwrap();
        let bound = dv(&[2, 2, 1]);
        assert_eq!(hua_series(&q, &bound), hua_series(&q.reversed(), &bound));
        // and under reorienting a single edge
        let flipped =
            Quiver::parse("vertices 3\nedge 2 1\nedge 2 3\nedge 3 1\nedge 1 2\n").unwrap();
        assert_eq!(hua_series(&q, &bound), hua_series(&flipped, &bound));
    }

    #[test]
    fn a_polynomial_examples() {
        let t = kac_a_polynomials(&single(), &dv(&[2])).unwrap();
        assert_eq!(t.get(&dv(&[1])), Some(&IntPoly::one()));
        assert_eq!(t.get(&dv(&[2])), Some(&IntPoly::zero()));

        let t = kac_a_polynomials(&jordan(), &dv(&[3])).unwrap();
        assert_eq!(t.get(&dv(&[1])), Some(&IntPoly::q()));
        assert_eq!(t.get(&dv(&[2])), Some(&IntPoly::q()));
        assert_eq!(t.get(&dv(&[3])), Some(&IntPoly::q()));

        let t = kac_a_polynomials(&kronecker(), &dv(&[1, 1])).unwrap();
        assert_eq!(
            t.get(&dv(&[1, 1])),
            Some(&IntPoly::from_coeffs_i64(&[1, 1]))
        );

        let t = kac_a_polynomials(&a2(), &dv(&[1, 1])).unwrap();
        assert_eq!(t.get(&dv(&[1, 1])), Some(&IntPoly::one()));
    }

    #[test]
    fn unit_vectors_have_unit_a_polynomial() {
        for q in [single(), a2(), kronecker()] {
            let n = q.vertex_count();
            let t = kac_a_polynomials(&q, &DimVector::new(vec![1; n])).unwrap();
            for i in 0..n {
                assert_eq!(t.get(&DimVector::unit(n, i)), Some(&IntPoly::one()));
            }
        }
    }

    #[test]
    fn constant_term_examples() {
        let t = kac_a_polynomials(&kronecker(), &dv(&[1, 1])).unwrap();
        let c = constant_terms(&t);
        assert_eq!(c.get(&dv(&[1, 1])), Some(&1));

        let t = kac_a_polynomials(&jordan(), &dv(&[1])).unwrap();
        let c = constant_terms(&t);
        assert_eq!(c.get(&dv(&[1])), Some(&0));

        let t = kac_a_polynomials(&single(), &dv(&[2])).unwrap();
        let c = constant_terms(&t);
        assert_eq!(c.get(&dv(&[2])), Some(&0));
    }

    /// Exponential by the defining series, kept independent of `MSeries::log`.
    fn exp_by_powers(f: &MSeries) -> MSeries {
        let bound = f.bound().clone();
        let mut acc = MSeries::one(bound.clone());
        let mut power = MSeries::one(bound.clone());
        let mut factorial = RationalFunction::one();
        for k in 1..=bound.total().max(1) {
            power = power.mul(f).unwrap();
            factorial = &factorial * &RationalFunction::from_int(k as i64);
            acc = acc
                .add(&power.scale(&factorial.inverse().unwrap()))
                .unwrap();
        }
        acc
    }

    /// Re-expands the claimed product form of the multipartition sum from the
    /// extracted A-polynomials: exponentiating
    /// `-sum_{alpha,k} A_alpha(q^k) X^{k alpha} / (k (1-q^k))`
    /// must reproduce the series exactly.
    #[test]
    fn inversion_roundtrip_through_exp() {
        for (q, bound) in [
            (single(), dv(&[3])),
            (jordan(), dv(&[3])),
            (kronecker(), dv(&[2, 2])),
            (a2(), dv(&[2, 2])),
        ] {
            let table = kac_a_polynomials(&q, &bound).unwrap();
            let mut log_series = MSeries::zero(bound.clone());
            for (alpha, poly) in table.iter() {
                if poly.is_zero() {
                    continue;
                }
                let mut k = 1u32;
                loop {
                    let mut scaled = alpha.clone();
                    for _ in 1..k {
                        scaled = scaled.add(alpha);
                    }
                    if !scaled.le(&bound) {
                        break;
                    }
                    let denom =
                        IntPoly::one_minus_q_pow(k as usize).scale(&num_bigint::BigInt::from(k));
                    let term = RationalFunction::new(poly.substitute_power(k), denom).unwrap();
                    log_series.add_to_coeff(scaled, &(-&term));
                    k += 1;
                }
            }
            assert_eq!(exp_by_powers(&log_series), hua_series(&q, &bound), "{bound}");
        }
    }
}
