//! Quiver data model: vertices, directed multi-edges, dimension vectors,
//! Cartan data, and the text file format.
//!
//! A quiver is a finite directed multigraph. Vertices are numbered `1..=n`
//! in files and on the CLI, `0..n` internally. Edge orientation is stored
//! because the moment map needs source/target maps, but the dimension
//! formula, the generating-function sums, and the Cartan matrix only use
//! unordered incidence counts.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex index {index} out of range 1..={count}")]
    VertexOutOfRange {
        line: usize,
        index: i64,
        count: usize,
    },
    #[error("dimension vector has length {got}, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quiver has a loop at vertex {vertex}, which this operation does not allow")]
    LoopNotAllowed { vertex: usize },
}

/// Vector of per-vertex nonnegative integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(components: Vec<u32>) -> Self {
        DimVector(components)
    }

    pub fn zeros(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    /// Standard basis vector `e_index` of the given length.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = vec![0; len];
        v[index] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        debug_assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` if any component would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Componentwise quotient by `k`; `None` unless `k` divides every component.
    pub fn checked_div(&self, k: u32) -> Option<DimVector> {
        if k == 0 || self.0.iter().any(|&c| c % k != 0) {
            return None;
        }
        Some(DimVector(self.0.iter().map(|&c| c / k).collect()))
    }

    /// Gcd of the components (0 for the zero vector).
    pub fn component_gcd(&self) -> u32 {
        self.0.iter().fold(0, |g, &c| num_integer::gcd(g, c))
    }

    /// Parses a comma-separated list of nonnegative integers, e.g. `1,2,1`.
    pub fn parse_csv(text: &str) -> Result<DimVector, String> {
        let components = text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("invalid dimension vector component `{}`", part.trim()))
            })
            .collect::<Result<Vec<u32>, String>>()?;
        if components.is_empty() {
            return Err("empty dimension vector".to_string());
        }
        Ok(DimVector(components))
    }

    /// Every vector `0 <= v <= self` componentwise, sorted by total size then
    /// lexicographically. This is the fixed enumeration order used for series
    /// coefficients, tables, and all printed output.
    pub fn box_vectors(&self) -> Vec<DimVector> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.len()];
        loop {
            out.push(DimVector(current.clone()));
            // odometer with per-digit limits
            let mut i = 0;
            loop {
                if i == current.len() {
                    out.sort_by_key(|v| (v.total(), v.0.clone()));
                    return out;
                }
                if current[i] < self.0[i] {
                    current[i] += 1;
                    break;
                }
                current[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Finite directed multigraph with 0-based vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(vertex_count > 0, "quiver needs at least one vertex");
        for &(s, t) in &edges {
            assert!(s < vertex_count && t < vertex_count, "edge endpoint out of range");
        }
        Quiver {
            vertex_count,
            edges,
        }
    }

    /// Parses the text format: a `vertices <n>` line followed by zero or more
    /// `edge <i> <j>` lines (1-based, repeated lines accumulate multiplicity).
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Quiver, QuiverError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().unwrap();
            match keyword {
                "vertices" => {
                    if vertex_count.is_some() {
                        return Err(QuiverError::Syntax {
                            line: line_no,
                            msg: "duplicate `vertices` line".to_string(),
                        });
                    }
                    let n = tokens
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| QuiverError::Syntax {
                            line: line_no,
                            msg: "expected `vertices <n>`".to_string(),
                        })?;
                    if n == 0 {
                        return Err(QuiverError::Syntax {
                            line: line_no,
                            msg: "vertex count must be positive".to_string(),
                        });
                    }
                    if tokens.next().is_some() {
                        return Err(QuiverError::Syntax {
                            line: line_no,
                            msg: "trailing tokens after vertex count".to_string(),
                        });
                    }
                    vertex_count = Some(n);
                }
                "edge" => {
                    let n = vertex_count.ok_or_else(|| QuiverError::Syntax {
                        line: line_no,
                        msg: "`edge` before `vertices`".to_string(),
                    })?;
                    let endpoint = |tok: Option<&str>| -> Result<usize, QuiverError> {
                        let value = tok
                            .and_then(|t| t.parse::<i64>().ok())
                            .ok_or_else(|| QuiverError::Syntax {
                                line: line_no,
                                msg: "expected `edge <i> <j>`".to_string(),
                            })?;
                        if value < 1 || value as usize > n {
                            return Err(QuiverError::VertexOutOfRange {
                                line: line_no,
                                index: value,
                                count: n,
                            });
                        }
                        Ok(value as usize - 1)
                    };
                    let s = endpoint(tokens.next())?;
                    let t = endpoint(tokens.next())?;
                    if tokens.next().is_some() {
                        return Err(QuiverError::Syntax {
                            line: line_no,
                            msg: "trailing tokens after edge".to_string(),
                        });
                    }
                    edges.push((s, t));
                }
                other => {
                    return Err(QuiverError::Syntax {
                        line: line_no,
                        msg: format!("unknown keyword `{other}`"),
                    });
                }
            }
        }
        let vertex_count = vertex_count.ok_or(QuiverError::Syntax {
            line: text.lines().count() + 1,
            msg: "missing `vertices` line".to_string(),
        })?;
        Ok(Quiver {
            vertex_count,
            edges,
        })
    }

    /// Serializes back to the text format (1-based, edges in stored order).
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for &(s, t) in &self.edges {
            out.push_str(&format!("edge {} {}\n", s + 1, t + 1));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges between `i` and `j` regardless of orientation (`i != j`),
    /// or the number of loops at `i` when `i == j`.
    pub fn edges_between(&self, i: usize, j: usize) -> u32 {
        self.edges
            .iter()
            .filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i))
            .count() as u32
    }

    pub fn loop_count(&self, i: usize) -> u32 {
        self.edges.iter().filter(|&&(s, t)| s == i && t == i).count() as u32
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(s, t)| s == t)
    }

    /// First vertex carrying a loop, as a `LoopNotAllowed` error if any.
    pub fn require_loop_free(&self) -> Result<(), QuiverError> {
        match self.edges.iter().find(|&&(s, t)| s == t) {
            Some(&(s, _)) => Err(QuiverError::LoopNotAllowed { vertex: s + 1 }),
            None => Ok(()),
        }
    }

    fn check_len(&self, v: &DimVector) -> Result<(), QuiverError> {
        if v.len() != self.vertex_count {
            return Err(QuiverError::LengthMismatch {
                expected: self.vertex_count,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Half the dimension of the quiver variety attached to `(v, w)`:
    /// `sum_e v_{s(e)} v_{t(e)} + sum_i v_i (w_i - v_i)`. May be negative, in
    /// which case the variety is empty and callers treat the value as such.
    pub fn half_dimension(&self, v: &DimVector, w: &DimVector) -> Result<i64, QuiverError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let mut d: i64 = 0;
        for &(s, t) in &self.edges {
            d += i64::from(v.get(s)) * i64::from(v.get(t));
        }
        for i in 0..self.vertex_count {
            d += i64::from(v.get(i)) * (i64::from(w.get(i)) - i64::from(v.get(i)));
        }
        Ok(d)
    }

    /// Dimension of the representation space: `sum_e v_{s(e)} v_{t(e)} +
    /// sum_i v_i w_i`. Together with `dim g_v = sum v_i^2` this satisfies
    /// `half_dimension = rep_space_dim - sum v_i^2`.
    pub fn rep_space_dim(&self, v: &DimVector, w: &DimVector) -> Result<u64, QuiverError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let mut d: u64 = 0;
        for &(s, t) in &self.edges {
            d += u64::from(v.get(s)) * u64::from(v.get(t));
        }
        for i in 0..self.vertex_count {
            d += u64::from(v.get(i)) * u64::from(w.get(i));
        }
        Ok(d)
    }

    /// Integer Cartan matrix `C_ij = 2 delta_ij - b_ij`. Loops are rejected:
    /// the reflection calculus below is only valid for loop-free quivers.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>, QuiverError> {
        self.require_loop_free()?;
        let n = self.vertex_count;
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                cartan[i][j] = if i == j {
                    2
                } else {
                    -i64::from(self.edges_between(i, j))
                };
            }
        }
        Ok(cartan)
    }

    /// Same quiver with every edge orientation flipped.
    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Multiset of unordered endpoint pairs `(i, j)` with `i <= j`, mapped to
    /// multiplicity. This is the data the generating-function sums consume.
    pub fn incidence_pairs(&self) -> BTreeMap<(usize, usize), u32> {
        let mut pairs = BTreeMap::new();
        for &(s, t) in &self.edges {
            let key = (s.min(t), s.max(t));
            *pairs.entry(key).or_insert(0) += 1;
        }
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Quiver {
        Quiver::parse("vertices 2\nedge 1 2\nedge 1 2\n").unwrap()
    }

    #[test]
    fn parse_single_vertex() {
        let q = Quiver::parse("vertices 1\n").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.edges().len(), 0);
    }

    #[test]
    fn parse_kronecker_multiplicity() {
        let q = kronecker();
        assert_eq!(q.edges_between(0, 1), 2);
        assert_eq!(q.edges_between(1, 0), 2);
    }

    #[test]
    fn parse_jordan_loop() {
        let q = Quiver::parse("vertices 1\nedge 1 1\n").unwrap();
        assert_eq!(q.loop_count(0), 1);
        assert!(q.has_loops());
        assert!(q.require_loop_free().is_err());
    }

    #[test]
    fn parse_comments_and_blanks() {
        let q = Quiver::parse("# header\n\nvertices 2 # two\n  edge 1 2\n").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edges(), &[(0, 1)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Quiver::parse("vertices 2\nedge 1 3\n") {
            Err(QuiverError::VertexOutOfRange { line, index, count }) => {
                assert_eq!((line, index, count), (2, 3, 2));
            }
            other => panic!("unexpected: {other:?}"),
        }
        match Quiver::parse("vertices 2\nedg 1 2\n") {
            Err(QuiverError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected: {other:?}"),
        }
        assert!(Quiver::parse("edge 1 2\n").is_err());
        assert!(Quiver::parse("vertices 0\n").is_err());
    }

    #[test]
    fn parse_serialize_roundtrip() {
        for text in [
            "vertices 1\n",
            "vertices 2\nedge 1 2\nedge 1 2\n",
            "vertices 3\nedge 1 2\nedge 2 3\nedge 3 1\n",
            "vertices 1\nedge 1 1\n",
        ] {
            let q = Quiver::parse(text).unwrap();
            let q2 = Quiver::parse(&q.to_text()).unwrap();
            assert_eq!(q, q2);
        }
    }

    #[test]
    fn half_dimension_examples() {
        let single = Quiver::parse("vertices 1\n").unwrap();
        assert_eq!(
            single
                .half_dimension(&DimVector::new(vec![1]), &DimVector::new(vec![2]))
                .unwrap(),
            1
        );
        assert_eq!(
            single
                .half_dimension(&DimVector::new(vec![0]), &DimVector::new(vec![5]))
                .unwrap(),
            0
        );
        let k = kronecker();
        assert_eq!(
            k.half_dimension(&DimVector::new(vec![1, 1]), &DimVector::new(vec![0, 0]))
                .unwrap(),
            0
        );
    }

    #[test]
    fn half_dimension_orientation_invariant() {
        let q = Quiver::parse("vertices 3\nedge 1 2\nedge 2 3\nedge 3 1\nedge 1 3\n").unwrap();
        let r = q.reversed();
        let v = DimVector::new(vec![2, 1, 3]);
        let w = DimVector::new(vec![1, 0, 2]);
        assert_eq!(q.half_dimension(&v, &w).unwrap(), r.half_dimension(&v, &w).unwrap());
    }

    #[test]
    fn half_dimension_matches_rep_space_minus_group() {
        let quivers = [
            Quiver::parse("vertices 1\n").unwrap(),
            kronecker(),
            Quiver::parse("vertices 3\nedge 1 2\nedge 2 3\nedge 3 1\n").unwrap(),
        ];
        for q in &quivers {
            let n = q.vertex_count();
            for v in DimVector::new(vec![2; n]).box_vectors() {
                for w in DimVector::new(vec![2; n]).box_vectors() {
                    let lhs = q.half_dimension(&v, &w).unwrap();
                    let group: i64 = v.as_slice().iter().map(|&c| i64::from(c).pow(2)).sum();
                    let rhs = q.rep_space_dim(&v, &w).unwrap() as i64 - group;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn cartan_examples() {
        let single = Quiver::parse("vertices 1\n").unwrap();
        assert_eq!(single.cartan_matrix().unwrap(), vec![vec![2]]);
        let a2 = Quiver::parse("vertices 2\nedge 1 2\n").unwrap();
        assert_eq!(a2.cartan_matrix().unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(
            kronecker().cartan_matrix().unwrap(),
            vec![vec![2, -2], vec![-2, 2]]
        );
        let jordan = Quiver::parse("vertices 1\nedge 1 1\n").unwrap();
        assert!(matches!(
            jordan.cartan_matrix(),
            Err(QuiverError::LoopNotAllowed { vertex: 1 })
        ));
    }

    #[test]
    fn cartan_symmetric_diagonal_two() {
        let q = Quiver::parse("vertices 3\nedge 1 2\nedge 1 2\nedge 2 3\n").unwrap();
        let c = q.cartan_matrix().unwrap();
        for i in 0..3 {
            assert_eq!(c[i][i], 2);
            for j in 0..3 {
                assert_eq!(c[i][j], c[j][i]);
            }
        }
    }

    #[test]
    fn box_vector_enumeration() {
        let b = DimVector::new(vec![1, 2]);
        let all = b.box_vectors();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], DimVector::zeros(2));
        // graded order: totals weakly increase
        for pair in all.windows(2) {
            assert!(pair[0].total() <= pair[1].total());
        }
    }

    #[test]
    fn dimvector_parse_and_display() {
        let v = DimVector::parse_csv("1, 2,1").unwrap();
        assert_eq!(v, DimVector::new(vec![1, 2, 1]));
        assert_eq!(v.to_string(), "(1,2,1)");
        assert!(DimVector::parse_csv("1,-2").is_err());
        assert!(DimVector::parse_csv("").is_err());
    }

    #[test]
    fn dimvector_division_and_gcd() {
        let v = DimVector::new(vec![4, 2, 0]);
        assert_eq!(v.component_gcd(), 2);
        assert_eq!(v.checked_div(2), Some(DimVector::new(vec![2, 1, 0])));
        assert_eq!(v.checked_div(3), None);
    }
}
