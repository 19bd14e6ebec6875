//! Integer partitions, multipartitions, the min-pairing, centralizer orders,
//! and bounded enumeration.

use std::fmt;

use crate::exactalg::RationalFunction;
use crate::quiver::DimVector;

/// Integer partition stored as a weakly decreasing list of positive parts,
/// with the multiplicity view cached at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
    /// `(part value, multiplicity)` pairs, part values ascending.
    mults: Vec<(u32, u32)>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut mults: Vec<(u32, u32)> = Vec::new();
        for &p in parts.iter().rev() {
            match mults.last_mut() {
                Some((value, m)) if *value == p => *m += 1,
                _ => mults.push((p, 1)),
            }
        }
        Partition { parts, mults }
    }

    pub fn empty() -> Self {
        Partition::new(Vec::new())
    }

    /// `1^n`: n parts equal to 1.
    pub fn ones(n: u32) -> Self {
        Partition::new(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `(k, m_k)` pairs with part value `k` ascending.
    pub fn mults(&self) -> &[(u32, u32)] {
        &self.mults
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.mults
            .iter()
            .find(|&&(value, _)| value == k)
            .map_or(0, |&(_, m)| m)
    }

    /// `|lambda|` = sum of parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Conjugate partition: part `k` of the conjugate counts parts `>= k`.
    pub fn conjugate(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32)
            .collect();
        Partition::new(parts)
    }

    /// The pairing `sum_{i,j} min(i,j) m_i(self) m_j(other)`, computed as the
    /// dot product of the conjugates (the two forms agree; see tests).
    pub fn pairing(&self, other: &Partition) -> u64 {
        let a = self.conjugate();
        let b = other.conjugate();
        a.parts
            .iter()
            .zip(b.parts.iter())
            .map(|(&x, &y)| u64::from(x) * u64::from(y))
            .sum()
    }

    /// Order of the centralizer of a nilpotent matrix with this Jordan type,
    /// as a function of the field size:
    /// `q^<lambda,lambda> * prod_k prod_{j=1}^{m_k} (1 - q^{-j})`.
    pub fn centralizer_order(&self) -> RationalFunction {
        let exponent = self.pairing(self);
        let mut order = RationalFunction::q_pow(exponent as i64);
        for &(_, m) in &self.mults {
            for j in 1..=m {
                order = &order * &RationalFunction::one_minus_q_inverse_pow(j);
            }
        }
        order
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, each exactly once, in reverse-lexicographic order
/// on part lists (so `(n)` first and `1^n` last).
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::new(stack.clone()));
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            stack.push(part);
            go(remaining - part, part, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// One partition per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPartition {
    parts: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(parts: Vec<Partition>) -> Self {
        MultiPartition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.parts[i]
    }

    pub fn components(&self) -> &[Partition] {
        &self.parts
    }

    /// The vector of sizes `(|lambda_i|)_i`.
    pub fn sizes(&self) -> DimVector {
        DimVector::new(self.parts.iter().map(|p| p.size() as u32).collect())
    }
}

/// Lazily streams every multipartition whose size vector is componentwise
/// `<= bound`, each exactly once. The stream never materializes the product
/// index set; only the per-vertex partition lists are held.
pub fn enumerate_multipartitions(bound: &DimVector) -> MultiPartitionIter {
    let per_vertex: Vec<Vec<Partition>> = bound
        .as_slice()
        .iter()
        .map(|&b| (0..=b).flat_map(enumerate_partitions).collect())
        .collect();
    MultiPartitionIter {
        indices: vec![0; per_vertex.len()],
        per_vertex,
        done: false,
    }
}

/// Number of multipartitions the stream will yield.
pub fn multipartition_count(bound: &DimVector) -> u64 {
    bound
        .as_slice()
        .iter()
        .map(|&b| (0..=b).map(|k| enumerate_partitions(k).len() as u64).sum::<u64>())
        .product()
}

pub struct MultiPartitionIter {
    per_vertex: Vec<Vec<Partition>>,
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for MultiPartitionIter {
    type Item = MultiPartition;

    fn next(&mut self) -> Option<MultiPartition> {
        if self.done {
            return None;
        }
        let item = MultiPartition::new(
            self.indices
                .iter()
                .zip(&self.per_vertex)
                .map(|(&idx, list)| list[idx].clone())
                .collect(),
        );
        // odometer over the per-vertex lists
        let mut i = 0;
        loop {
            if i == self.indices.len() {
                self.done = true;
                break;
            }
            self.indices[i] += 1;
            if self.indices[i] < self.per_vertex[i].len() {
                break;
            }
            self.indices[i] = 0;
            i += 1;
        }
        Some(item)
    }
}
