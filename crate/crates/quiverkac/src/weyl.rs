//! Weyl group orbit sums, root multiplicities from the denominator product,
//! and highest-weight character multiplicities.
//!
//! The reflection calculus uses the integer Cartan matrix `C_ij = 2 d_ij -
//! b_ij` of a loop-free quiver. States track the orbit of the shifted weight
//! `Lambda + rho`, where `Lambda = sum_i w_i Lambda_i` pairs to `w_i` against
//! the `i`-th coroot and `rho` pairs to 1 against every coroot. A state
//! stores the offset `mu` with current weight `(Lambda + rho) - sum mu_i
//! alpha_i`, the coroot pairings `c_i` of the current weight, and the sign of
//! the group element. Reflecting in `i` sends `mu` to `mu + c_i e_i`, `c_j`
//! to `c_j - c_i C_ji`, and flips the sign.
//!
//! # Why pruning at the box is exact
//!
//! The search applies reflection `i` only when `c_i > 0`. Such a step
//! increases `mu_i` by `c_i > 0` and leaves the other coordinates unchanged,
//! so offsets only ever grow coordinatewise along a search path; once a state
//! leaves the box it can never re-enter, and discarding it loses nothing
//! inside the box. Every orbit element is reachable this way: a state other
//! than the initial one has some `c_i < 0` (the initial weight is the unique
//! one with all pairings positive, pairings of zero never occur since the
//! initial pairings `w_i + 1` are all positive and reflections act
//! invertibly on the orbit of such a weight), and un-reflecting there
//! strictly lowers `|mu|`, so induction on `|mu|` reaches the top. A stress
//! test compares pruned runs against runs with an enlarged box.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::exactalg::{MSeries, RationalFunction};
use crate::quiver::{DimVector, Quiver, QuiverError};

#[derive(Debug, Error)]
pub enum WeylError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("root multiplicity at {at} is not an integer: {value}")]
    NonIntegerMultiplicity { at: DimVector, value: BigRational },
    #[error("character multiplicity at {at} is not a nonnegative integer: {value}")]
    NegativeOrNonIntegerMultiplicity { at: DimVector, value: String },
    #[error("two group elements reached offset {at} with opposite signs")]
    SignCollision { at: DimVector },
}

/// One element of the orbit of `Lambda + rho`: the offset from the top, the
/// coroot pairings of the current weight, and the sign of the group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylState {
    pub offset: DimVector,
    pub pairings: Vec<i64>,
    pub sign: i8,
}

impl WeylState {
    /// The identity element: offset 0, pairings `w_i + 1`, sign `+1`.
    pub fn initial(w: &DimVector) -> Self {
        WeylState {
            offset: DimVector::zeros(w.len()),
            pairings: w.as_slice().iter().map(|&wi| i64::from(wi) + 1).collect(),
            sign: 1,
        }
    }

    /// Applies the simple reflection `i` (valid for any `i`; the orbit search
    /// only uses it when `pairings[i] > 0`).
    pub fn reflect(&self, i: usize, cartan: &[Vec<i64>]) -> WeylState {
        let c_i = self.pairings[i];
        let mut offset: Vec<u32> = self.offset.as_slice().to_vec();
        let shifted = i64::from(offset[i]) + c_i;
        assert!(shifted >= 0, "reflection applied against the descent rule");
        offset[i] = u32::try_from(shifted).expect("offset fits in u32");
        let pairings = self
            .pairings
            .iter()
            .enumerate()
            .map(|(j, &c_j)| c_j - c_i * cartan[j][i])
            .collect();
        WeylState {
            offset: DimVector::new(offset),
            pairings,
            sign: -self.sign,
        }
    }
}

/// Alternating orbit sum `sum det(w) X^{(Lambda+rho) - w(Lambda+rho)}` over
/// the group elements whose offset stays inside the box. Coefficients are the
/// integer constants `+1`/`-1`; the coefficient at 0 is `+1`.
pub fn weyl_orbit_sum(
    quiver: &Quiver,
    w: &DimVector,
    bound: &DimVector,
) -> Result<MSeries, WeylError> {
    let cartan = quiver.cartan_matrix()?;
    if w.len() != quiver.vertex_count() {
        return Err(QuiverError::LengthMismatch {
            expected: quiver.vertex_count(),
            got: w.len(),
        }
        .into());
    }
    let mut series = MSeries::zero(bound.clone());
    let mut visited: HashMap<DimVector, i8> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = WeylState::initial(w);
    visited.insert(start.offset.clone(), start.sign);
    series.set_coeff(start.offset.clone(), RationalFunction::from_int(1));
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        for i in 0..quiver.vertex_count() {
            let c_i = state.pairings[i];
            if c_i <= 0 {
                continue;
            }
            let target = i64::from(state.offset.get(i)) + c_i;
            if target > i64::from(bound.get(i)) {
                continue; // permanent: offsets only grow along a path
            }
            let next = state.reflect(i, &cartan);
            match visited.get(&next.offset) {
                Some(&seen) => {
                    if seen != next.sign {
                        return Err(WeylError::SignCollision { at: next.offset });
                    }
                }
                None => {
                    visited.insert(next.offset.clone(), next.sign);
                    series.set_coeff(
                        next.offset.clone(),
                        RationalFunction::from_int(i64::from(next.sign)),
                    );
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(series)
}

/// Multiplicity table keyed by dimension vector; absent keys mean the vector
/// lies outside the table's box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    entries: BTreeMap<DimVector, i64>,
}

impl MultiplicityTable {
    pub fn get(&self, alpha: &DimVector) -> Option<i64> {
        self.entries.get(alpha).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &i64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Root multiplicities `m_alpha` for `0 < alpha <= bound`, defined by the
/// product expansion `sum_w det(w) X^{rho - w(rho)} = prod_alpha (1 -
/// X^alpha)^{m_alpha}`. Taking logarithms turns the right side into
/// `-sum_alpha m_alpha sum_k X^{k alpha}/k`, so with `L = log` of the orbit
/// sum, `m_beta = -(L_beta + sum_{k>=2, beta=k alpha} m_alpha / k)`,
/// solved inductively on the total size.
pub fn root_multiplicities(
    quiver: &Quiver,
    bound: &DimVector,
) -> Result<MultiplicityTable, WeylError> {
    let zero_w = DimVector::zeros(quiver.vertex_count());
    let orbit = weyl_orbit_sum(quiver, &zero_w, bound)?;
    let log = orbit.log().expect("orbit sum has constant term 1");
    let mut entries: BTreeMap<DimVector, i64> = BTreeMap::new();
    for beta in bound.box_vectors() {
        if beta.is_zero() {
            continue;
        }
        let mut acc = log
            .coeff(&beta)
            .as_constant()
            .expect("log of a constant-coefficient series has constant coefficients");
        let gcd = beta.component_gcd();
        for k in 2..=gcd {
            if gcd % k != 0 {
                continue;
            }
            let alpha = beta.checked_div(k).expect("k divides gcd");
            let m_alpha = entries[&alpha];
            acc += BigRational::new(BigInt::from(m_alpha), BigInt::from(k));
        }
        let value = -acc;
        if !value.is_integer() {
            return Err(WeylError::NonIntegerMultiplicity {
                at: beta,
                value,
            });
        }
        let m = value.to_integer().to_i64().expect("multiplicity fits in i64");
        entries.insert(beta, m);
    }
    Ok(MultiplicityTable { entries })
}

/// Weight multiplicities of the irreducible highest-weight module attached
/// to `w`: the coefficientwise ratio of the `w`-orbit sum by the `0`-orbit
/// sum, for every `alpha <= bound`. All values must be nonnegative integers.
pub fn character_multiplicities(
    quiver: &Quiver,
    w: &DimVector,
    bound: &DimVector,
) -> Result<MultiplicityTable, WeylError> {
    let numerator = weyl_orbit_sum(quiver, w, bound)?;
    let denominator = weyl_orbit_sum(quiver, &DimVector::zeros(quiver.vertex_count()), bound)?;
    let ratio = numerator
        .mul(&denominator.inverse().expect("constant term 1"))
        .expect("equal bounds");
    let mut entries = BTreeMap::new();
    for alpha in bound.box_vectors() {
        let coeff = ratio.coeff(&alpha);
        let constant = coeff.as_constant();
        let value = match constant {
            Some(c) if c.is_integer() && !c.is_negative() => {
                c.to_integer().to_i64().expect("multiplicity fits in i64")
            }
            _ => {
                return Err(WeylError::NegativeOrNonIntegerMultiplicity {
                    at: alpha,
                    value: coeff.to_string(),
                })
            }
        };
        entries.insert(alpha, value);
    }
    Ok(MultiplicityTable { entries })
}
