//! Brute-force censuses of nilpotent matrices by Jordan type, and of
//! intertwiners between nilpotent pairs.

use std::collections::BTreeMap;

use crate::partitions::Partition;

use super::linalg::FpMatrix;
use super::FfError;

/// Nilpotent matrix in Jordan form for the given type: one block of ones on
/// the superdiagonal per part.
pub fn jordan_nilpotent(lambda: &Partition, prime: u64) -> FpMatrix {
    let n: usize = lambda.size() as usize;
    let mut m = FpMatrix::zero(prime, n, n);
    let mut offset = 0;
    for &part in lambda.parts() {
        for k in 0..(part as usize - 1) {
            m.set(offset + k, offset + k + 1, 1);
        }
        offset += part as usize;
    }
    m
}

/// Jordan type of a nilpotent matrix, read off the kernel filtration: the
/// conjugate partition has parts `dim ker(x^k) - dim ker(x^{k-1})`.
pub fn nilpotent_jordan_type(x: &FpMatrix) -> Partition {
    let n = x.rows();
    let mut conjugate_parts = Vec::new();
    let mut power = FpMatrix::identity(x.prime(), n);
    let mut previous_nullity = 0;
    for _ in 0..n {
        power = power.mul(x);
        let nullity = power.nullity();
        let step = nullity - previous_nullity;
        if step == 0 {
            break;
        }
        conjugate_parts.push(step as u32);
        previous_nullity = nullity;
    }
    Partition::new(conjugate_parts).conjugate()
}

/// Classifies every nilpotent `n x n` matrix over the prime field by Jordan
/// type, by exhausting all `p^(n^2)` matrices. Guarded to `n <= 3` and
/// `p in {2, 3}`: the census is a ground-truth oracle, not a production
/// counter.
pub fn centralizer_census(n: u32, prime: u64) -> Result<BTreeMap<Partition, u64>, FfError> {
    if n > 3 || !(prime == 2 || prime == 3) {
        return Err(FfError::CensusGuard { n, prime });
    }
    let n = n as usize;
    let entries = n * n;
    let total = prime.pow(entries as u32);
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for index in 0..total {
        let mut m = FpMatrix::zero(prime, n, n);
        let mut rest = index;
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rest % prime);
                rest /= prime;
            }
        }
        // nilpotency: x^n = 0
        let mut power = FpMatrix::identity(prime, n);
        for _ in 0..n {
            power = power.mul(&m);
        }
        if !power.is_zero() {
            continue;
        }
        *counts.entry(nilpotent_jordan_type(&m)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Number of matrices `A` with `A X_1 = X_2 A`, where `X_1`, `X_2` are the
/// Jordan nilpotents of the two types, by exhausting all of `Hom`. Guarded
/// so the search space stays at census scale.
pub fn intertwiner_count(
    lambda: &Partition,
    mu: &Partition,
    prime: u64,
) -> Result<u64, FfError> {
    let n1 = lambda.size() as usize;
    let n2 = mu.size() as usize;
    if n1 * n2 > 12 || prime > 3 {
        return Err(FfError::CensusGuard {
            n: (n1 * n2) as u32,
            prime,
        });
    }
    let x1 = jordan_nilpotent(lambda, prime);
    let x2 = jordan_nilpotent(mu, prime);
    let entries = n1 * n2;
    let total = prime.pow(entries as u32);
    let mut count = 0;
    for index in 0..total {
        let mut a = FpMatrix::zero(prime, n2, n1);
        let mut rest = index;
        for i in 0..n2 {
            for j in 0..n1 {
                a.set(i, j, rest % prime);
                rest /= prime;
            }
        }
        if a.mul(&x1) == x2.mul(&a) {
            count += 1;
        }
    }
    Ok(count)
}
