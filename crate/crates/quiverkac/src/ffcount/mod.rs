//! Finite-field ground truth: brute-force and character-sum counts of
//! moment-map solutions over prime fields, nilpotent censuses, and the
//! equality checks against the Poincaré-polynomial pipeline.
//!
//! Only prime fields are implemented. The characteristic condition
//! `p > sum_i v_i` is required by the counting contracts anyway, desk-scale
//! cases never need proper extensions, and the character-sum identity below
//! works uniformly, so extension-field arithmetic would only add an error
//! surface.
//!
//! # Eliminating the additive character
//!
//! The solution count of `mu(rep) = 1*_v` over the field with `p` elements
//! is `(|V|/|g|) * sum_x a(x) Psi(tr x)`, where `x` runs over `g = prod_i
//! gl(v_i)`, `a(x) = p^(dim ker rho(x))` for the linear action of `x` on the
//! representation space `V`, and `Psi` is any nontrivial additive character.
//! No character values are ever materialized: `a(cx) = a(x)` and
//! `tr(cx) = c tr(x)` for `c != 0`, so the part of the sum with `tr(x) = t`
//! is independent of `t` as long as `t != 0`, and `sum_{t != 0} Psi(t) = -1`.
//! With `T = sum_{tr x = 0} a(x)` and `S = sum_x a(x)` the full sum collapses
//! to `T - (S - T)/(p - 1)`, an exact integer computation.

mod census;
mod linalg;

pub use census::{centralizer_census, intertwiner_count, jordan_nilpotent, nilpotent_jordan_type};
pub use linalg::{FpMatrix, FpScalar};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::betti::{point_count_from_table, poincare_series, BettiError};
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::report::{VerifyCheck, VerifyReport};

/// Default cap on the number of field configurations either counter will
/// enumerate.
pub const DEFAULT_GUARD: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum FfError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("characteristic {p} too small: the count requires p > {min}")]
    CharacteristicTooSmall { p: u64, min: u64 },
    #[error("search space of {space} configurations exceeds the guard {guard}")]
    SearchSpaceTooLarge { space: String, guard: u64 },
    #[error("census guard violated: size {n} over the field with {prime} elements")]
    CensusGuard { n: u32, prime: u64 },
    #[error("matrix shapes inconsistent with the dimension vectors")]
    ShapeMismatch,
    #[error("internal non-integer division in the character-sum count")]
    InternalNonInteger,
}

/// A point of the doubled representation space: per edge the pair
/// `(A_e, B_e)` with `A_e` of shape `v_t x v_s` and `B_e` of shape
/// `v_s x v_t`, per vertex the pair `(I_i, J_i)` of shapes `v_i x w_i` and
/// `w_i x v_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFRep {
    pub a: Vec<FpMatrix>,
    pub b: Vec<FpMatrix>,
    pub i_maps: Vec<FpMatrix>,
    pub j_maps: Vec<FpMatrix>,
}

/// Value of the moment map: one `v_i x v_i` matrix per vertex, identified
/// with a linear form on `g_v` through the trace pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoadjointValue {
    pub blocks: Vec<FpMatrix>,
}

impl CoadjointValue {
    /// `lambda * 1*_v`.
    pub fn scalar_identity(prime: u64, v: &DimVector, lambda: u64) -> Self {
        let blocks = v
            .as_slice()
            .iter()
            .map(|&vi| {
                let mut m = FpMatrix::zero(prime, vi as usize, vi as usize);
                for d in 0..vi as usize {
                    m.set(d, d, lambda);
                }
                m
            })
            .collect();
        CoadjointValue { blocks }
    }
}

/// The moment map `(I_i J_i + sum_{s(e)=i} B_e A_e - sum_{t(e)=i} A_e B_e)_i`.
pub fn moment_map(
    quiver: &Quiver,
    v: &DimVector,
    w: &DimVector,
    rep: &FFRep,
) -> Result<CoadjointValue, FfError> {
    let n = quiver.vertex_count();
    if v.len() != n || w.len() != n {
        return Err(QuiverError::LengthMismatch {
            expected: n,
            got: if v.len() != n { v.len() } else { w.len() },
        }
        .into());
    }
    if rep.a.len() != quiver.edges().len()
        || rep.b.len() != quiver.edges().len()
        || rep.i_maps.len() != n
        || rep.j_maps.len() != n
    {
        return Err(FfError::ShapeMismatch);
    }
    for (e, &(s, t)) in quiver.edges().iter().enumerate() {
        let (vs, vt) = (v.get(s) as usize, v.get(t) as usize);
        if rep.a[e].rows() != vt || rep.a[e].cols() != vs {
            return Err(FfError::ShapeMismatch);
        }
        if rep.b[e].rows() != vs || rep.b[e].cols() != vt {
            return Err(FfError::ShapeMismatch);
        }
    }
    for i in 0..n {
        let (vi, wi) = (v.get(i) as usize, w.get(i) as usize);
        if rep.i_maps[i].rows() != vi || rep.i_maps[i].cols() != wi {
            return Err(FfError::ShapeMismatch);
        }
        if rep.j_maps[i].rows() != wi || rep.j_maps[i].cols() != vi {
            return Err(FfError::ShapeMismatch);
        }
    }
    let blocks = (0..n)
        .map(|i| {
            let mut block = rep.i_maps[i].mul(&rep.j_maps[i]);
            for (e, &(s, t)) in quiver.edges().iter().enumerate() {
                if s == i {
                    block = block.add(&rep.b[e].mul(&rep.a[e]));
                }
                if t == i {
                    block = block.sub(&rep.a[e].mul(&rep.b[e]));
                }
            }
            block
        })
        .collect();
    Ok(CoadjointValue { blocks })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn validate(quiver: &Quiver, v: &DimVector, w: &DimVector, p: u64) -> Result<(), FfError> {
    quiver.require_loop_free()?;
    if v.len() != quiver.vertex_count() || w.len() != quiver.vertex_count() {
        return Err(QuiverError::LengthMismatch {
            expected: quiver.vertex_count(),
            got: if v.len() != quiver.vertex_count() {
                v.len()
            } else {
                w.len()
            },
        }
        .into());
    }
    if !is_prime(p) {
        return Err(FfError::NotPrime { p });
    }
    if p <= v.total() {
        return Err(FfError::CharacteristicTooSmall { p, min: v.total() });
    }
    Ok(())
}

/// `p^dim` as a `u64` if it stays within the guard.
fn space_within_guard(p: u64, dim: u64, guard: u64) -> Result<u64, FfError> {
    let mut space: u128 = 1;
    for _ in 0..dim {
        space = space.saturating_mul(p as u128);
        if space > guard as u128 {
            return Err(FfError::SearchSpaceTooLarge {
                space: format!("{p}^{dim}"),
                guard,
            });
        }
    }
    Ok(space as u64)
}

/// Flattened matrix shapes enumerated by a single odometer index.
struct Layout {
    prime: u64,
    shapes: Vec<(usize, usize)>,
}

impl Layout {
    fn entries(&self) -> u64 {
        self.shapes.iter().map(|&(r, c)| (r * c) as u64).sum()
    }

    fn decode(&self, index: u64) -> Vec<FpMatrix> {
        let mut rest = index;
        self.shapes
            .iter()
            .map(|&(r, c)| {
                let mut m = FpMatrix::zero(self.prime, r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, rest % self.prime);
                        rest /= self.prime;
                    }
                }
                m
            })
            .collect()
    }
}

/// Exact number of doubled representations whose moment map equals `1*_v`,
/// by exhaustive enumeration of all `p^(dim M)` configurations.
pub fn count_bruteforce(
    quiver: &Quiver,
    v: &DimVector,
    w: &DimVector,
    p: u64,
    guard: u64,
) -> Result<BigInt, FfError> {
    validate(quiver, v, w, p)?;
    let dim_m = 2 * quiver.rep_space_dim(v, w).expect("lengths checked");
    let space = space_within_guard(p, dim_m, guard)?;

    let edge_count = quiver.edges().len();
    let mut shapes = Vec::new();
    for &(s, t) in quiver.edges() {
        shapes.push((v.get(t) as usize, v.get(s) as usize)); // A_e
    }
    for i in 0..quiver.vertex_count() {
        shapes.push((v.get(i) as usize, w.get(i) as usize)); // I_i
    }
    for &(s, t) in quiver.edges() {
        shapes.push((v.get(s) as usize, v.get(t) as usize)); // B_e
    }
    for i in 0..quiver.vertex_count() {
        shapes.push((w.get(i) as usize, v.get(i) as usize)); // J_i
    }
    let layout = Layout { prime: p, shapes };
    debug_assert_eq!(layout.entries(), dim_m);
    let target = CoadjointValue::scalar_identity(p, v, 1);

    let n = quiver.vertex_count();
    let hits: u64 = (0..space)
        .into_par_iter()
        .map(|index| {
            let mats = layout.decode(index);
            let rep = FFRep {
                a: mats[..edge_count].to_vec(),
                i_maps: mats[edge_count..edge_count + n].to_vec(),
                b: mats[edge_count + n..2 * edge_count + n].to_vec(),
                j_maps: mats[2 * edge_count + n..].to_vec(),
            };
            let value = moment_map(quiver, v, w, &rep).expect("shapes match layout");
            u64::from(value == target)
        })
        .sum();
    Ok(BigInt::from(hits))
}

/// Matrix of the operator `A -> x_t A - A x_s` on `Hom(V_s, V_t)` in the
/// row-major basis of `A`.
fn commutator_operator(x_t: &FpMatrix, x_s: &FpMatrix) -> FpMatrix {
    let p = x_t.prime();
    let vt = x_t.rows();
    let vs = x_s.rows();
    let dim = vt * vs;
    let mut op = FpMatrix::zero(p, dim, dim);
    let idx = |r: usize, c: usize| r * vs + c;
    for r in 0..vt {
        for c in 0..vs {
            let row = idx(r, c);
            for k in 0..vt {
                let cur = op.get(row, idx(k, c));
                op.set(row, idx(k, c), cur + x_t.get(r, k));
            }
            for l in 0..vs {
                let cur = op.get(row, idx(r, l));
                op.set(row, idx(r, l), cur + p - x_s.get(l, c));
            }
        }
    }
    op
}

/// Same count as [`count_bruteforce`], through the character-sum identity:
/// enumerates `x in g_v` only, computing `a(x) = p^(dim ker rho(x))` with
/// the kernel dimension split over edge blocks (`A -> x_t A - A x_s`) and
/// framing blocks (`I -> x_i I`, contributing `w_i * dim ker x_i`).
pub fn count_fourier(
    quiver: &Quiver,
    v: &DimVector,
    w: &DimVector,
    p: u64,
    guard: u64,
) -> Result<BigInt, FfError> {
    validate(quiver, v, w, p)?;
    let dim_g: u64 = v.as_slice().iter().map(|&c| u64::from(c) * u64::from(c)).sum();
    let dim_v = quiver.rep_space_dim(v, w).expect("lengths checked");
    let space = space_within_guard(p, dim_g, guard)?;

    let layout = Layout {
        prime: p,
        shapes: v
            .as_slice()
            .iter()
            .map(|&c| (c as usize, c as usize))
            .collect(),
    };

    let buckets = dim_v as usize + 1;
    let (hist_all, hist_tr0) = (0..space)
        .into_par_iter()
        .fold(
            || (vec![0u64; buckets], vec![0u64; buckets]),
            |(mut all, mut tr0), index| {
                let blocks = layout.decode(index);
                let mut kernel_dim = 0usize;
                for (i, block) in blocks.iter().enumerate() {
                    kernel_dim += w.get(i) as usize * block.nullity();
                }
                for &(s, t) in quiver.edges() {
                    kernel_dim += commutator_operator(&blocks[t], &blocks[s]).nullity();
                }
                let trace: u64 = blocks.iter().map(|b| b.trace()).sum::<u64>() % p;
                all[kernel_dim] += 1;
                if trace == 0 {
                    tr0[kernel_dim] += 1;
                }
                (all, tr0)
            },
        )
        .reduce(
            || (vec![0u64; buckets], vec![0u64; buckets]),
            |(mut a1, mut t1), (a2, t2)| {
                for (x, y) in a1.iter_mut().zip(a2) {
                    *x += y;
                }
                for (x, y) in t1.iter_mut().zip(t2) {
                    *x += y;
                }
                (a1, t1)
            },
        );

    let weigh = |hist: &[u64]| -> BigInt {
        hist.iter()
            .enumerate()
            .map(|(k, &count)| BigInt::from(count) * BigInt::from(p).pow(k as u32))
            .sum()
    };
    let s = weigh(&hist_all);
    let t = weigh(&hist_tr0);
    let x = {
        let (quotient, remainder) = (&s - &t).div_rem(&BigInt::from(p - 1));
        if !remainder.is_zero() {
            return Err(FfError::InternalNonInteger);
        }
        t - quotient
    };
    let numerator = BigInt::from(p).pow(dim_v as u32) * x;
    let (count, remainder) = numerator.div_rem(&BigInt::from(p).pow(dim_g as u32));
    if !remainder.is_zero() {
        return Err(FfError::InternalNonInteger);
    }
    Ok(count)
}

/// `|G_v| = prod_i prod_{j=0}^{v_i - 1} (p^{v_i} - p^j)`.
pub fn group_order(v: &DimVector, p: u64) -> BigInt {
    let mut order = BigInt::one();
    for &vi in v.as_slice() {
        let pn = BigInt::from(p).pow(vi);
        for j in 0..vi {
            order *= &pn - BigInt::from(p).pow(j);
        }
    }
    order
}

/// Checks the two point-count identities for a single `(v, w, p)`:
/// the group order divides the solution count (free action), and the
/// quotient equals `p^{d_{v,w}} P_v(p)` from the series pipeline. The count
/// is taken from [`count_fourier`]; its agreement with [`count_bruteforce`]
/// is a separate check.
pub fn verify_count_vs_poincare(
    quiver: &Quiver,
    v: &DimVector,
    w: &DimVector,
    p: u64,
    guard: u64,
) -> Result<VerifyReport, FfError> {
    let count = count_fourier(quiver, v, w, p, guard)?;
    let order = group_order(v, p);
    let (quotient, remainder) = count.div_rem(&order);
    let mut report = VerifyReport::new();
    report.push(VerifyCheck::compare(
        format!("free action v={v} w={w} p={p}: count mod |G|"),
        remainder,
        BigInt::zero(),
    ));
    let table = poincare_series(quiver, w, v)?;
    let expected = point_count_from_table(&table, v, p)?;
    report.push(VerifyCheck::compare(
        format!("point count v={v} w={w} p={p}: count/|G| vs p^d P(p)"),
        quotient,
        expected,
    ));
    Ok(report)
}
