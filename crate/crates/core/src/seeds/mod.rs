//! Seeds, mutation, cluster and X-coordinate transformations, σ-periods and
//! amalgamation.

mod amalgamation;
mod period;
mod point;

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, int, parse_rational, AlgebraError, Rational};
use crate::matrix::RatMatrix;

pub use amalgamation::{AmalgamationMap, AmalgamationViolation};
pub use period::{check_sigma_period, cluster_automorphism, IndexPermutation, MutationSequence};
pub use point::{Flavor, SymbolicTorusPoint, TorusPoint};

/// Index labels are integers and may be negative.
pub type Label = i64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeedError {
    #[error("unknown index {0}")]
    UnknownIndex(Label),
    #[error("index {0} is frozen")]
    Frozen(Label),
    #[error("duplicate index {0}")]
    DuplicateIndex(Label),
    #[error("exchange matrix is {rows}x{cols}, expected {n}x{n}")]
    Dimension { rows: usize, cols: usize, n: usize },
    #[error("B[{i}][{j}] = {value} must be an integer")]
    NonIntegral { i: Label, j: Label, value: String },
    #[error("B[{i}][{j}]·d[{j}] != -B[{j}][{i}]·d[{i}]")]
    NotSkewSymmetrizable { i: Label, j: Label },
    #[error("skew-symmetrizer for index {0} must be positive")]
    NonPositiveSymmetrizer(Label),
    #[error("row {row} has a non-integral entry, so the monomial map is undefined")]
    NonIntegralRow { row: Label },
    #[error("point flavor {found:?} where {expected:?} is required")]
    WrongFlavor { expected: Flavor, found: Flavor },
    #[error("point labels do not match the seed")]
    LabelMismatch,
    #[error("not a σ-period: {0}")]
    NotAPeriod(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("amalgamation violates condition {}", .0.condition())]
    InvalidAmalgamation(AmalgamationViolation),
    #[error("hypothesis fails on the {which} seed: {violation}")]
    AmalgamationHypothesis { which: &'static str, violation: AmalgamationViolation },
    #[error("malformed seed document: {0}")]
    Document(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An index set with frozen subset, exchange matrix over ℚ and skew-symmetrizers.
///
/// `b` is stored in the order of `indices`. Equality compares label-wise, so two
/// seeds listing the same indices in different orders are equal.
#[derive(Clone, Debug)]
pub struct Seed {
    indices: Vec<Label>,
    frozen: BTreeSet<Label>,
    b: RatMatrix,
    d: Vec<i64>,
}

impl Seed {
    /// B_ij must be integral unless both i and j are frozen, and
    /// B_ij d_j = -B_ji d_i.
    pub fn new(
        indices: Vec<Label>,
        frozen: impl IntoIterator<Item = Label>,
        b: RatMatrix,
        d: Vec<i64>,
    ) -> Result<Self, SeedError> {
        let n = indices.len();
        let mut seen = BTreeSet::new();
        for &i in &indices {
            if !seen.insert(i) {
                return Err(SeedError::DuplicateIndex(i));
            }
        }
        let frozen: BTreeSet<Label> = frozen.into_iter().collect();
        if let Some(&f) = frozen.iter().find(|f| !seen.contains(f)) {
            return Err(SeedError::UnknownIndex(f));
        }
        if b.rows() != n || b.cols() != n || d.len() != n {
            return Err(SeedError::Dimension { rows: b.rows(), cols: b.cols(), n });
        }
        for (p, &i) in indices.iter().enumerate() {
            if d[p] <= 0 {
                return Err(SeedError::NonPositiveSymmetrizer(i));
            }
        }
        for (p, &i) in indices.iter().enumerate() {
            for (q, &j) in indices.iter().enumerate() {
                let v = b.get(p, q);
                if !v.is_integer() && !(frozen.contains(&i) && frozen.contains(&j)) {
                    return Err(SeedError::NonIntegral { i, j, value: format_rational(v) });
                }
                if v * int(d[q]) != -(b.get(q, p) * int(d[p])) {
                    return Err(SeedError::NotSkewSymmetrizable { i, j });
                }
            }
        }
        Ok(Seed { indices, frozen, b, d })
    }

    pub fn indices(&self) -> &[Label] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn frozen(&self) -> &BTreeSet<Label> {
        &self.frozen
    }

    pub fn is_frozen(&self, i: Label) -> bool {
        self.frozen.contains(&i)
    }

    /// Unfrozen labels in index order.
    pub fn unfrozen(&self) -> Vec<Label> {
        self.indices.iter().copied().filter(|i| !self.frozen.contains(i)).collect()
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn position(&self, i: Label) -> Result<usize, SeedError> {
        self.indices.iter().position(|&x| x == i).ok_or(SeedError::UnknownIndex(i))
    }

    /// `B_ij` by label.
    pub fn entry(&self, i: Label, j: Label) -> Result<&Rational, SeedError> {
        Ok(self.b.get(self.position(i)?, self.position(j)?))
    }

    pub fn symmetrizer(&self, i: Label) -> Result<i64, SeedError> {
        Ok(self.d[self.position(i)?])
    }

    fn check_mutable(&self, k: Label) -> Result<usize, SeedError> {
        let p = self.position(k)?;
        if self.frozen.contains(&k) {
            return Err(SeedError::Frozen(k));
        }
        Ok(p)
    }

    /// Mutation of the exchange matrix at the unfrozen index `k`.
    pub fn mutate(&self, k: Label) -> Result<Seed, SeedError> {
        let kp = self.check_mutable(k)?;
        let b = &self.b;
        let two = int(2);
        let nb = RatMatrix::from_fn(self.len(), self.len(), |i, j| {
            if i == kp || j == kp {
                -b.get(i, j)
            } else {
                let (bik, bkj) = (b.get(i, kp), b.get(kp, j));
                b.get(i, j) + (bik.abs() * bkj + bik * bkj.abs()) / &two
            }
        });
        Ok(Seed { indices: self.indices.clone(), frozen: self.frozen.clone(), b: nb, d: self.d.clone() })
    }

    /// Applies the steps left to right.
    pub fn mutate_sequence(&self, seq: &MutationSequence) -> Result<Seed, SeedError> {
        seq.steps().iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// `P_ij = B_ij d_j`, the log-canonical bracket `{X_i, X_j} = P_ij X_i X_j`.
    pub fn poisson_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.len(), self.len(), |i, j| self.b.get(i, j) * int(self.d[j]))
    }

    /// True when the two seeds agree up to reordering of their common labels.
    pub fn same_as(&self, other: &Seed) -> bool {
        if self.len() != other.len() || self.frozen != other.frozen {
            return false;
        }
        let Ok(map) = self
            .indices
            .iter()
            .map(|&i| other.position(i))
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        (0..self.len()).all(|p| {
            self.d[p] == other.d[map[p]]
                && (0..self.len()).all(|q| self.b.get(p, q) == other.b.get(map[p], map[q]))
        })
    }

    /// The same seed with labels renamed by `f` (order preserved).
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Result<Seed, SeedError> {
        Seed::new(
            self.indices.iter().map(|&i| f(i)).collect(),
            self.frozen.iter().map(|&i| f(i)),
            self.b.clone(),
            self.d.clone(),
        )
    }

    /// Reorders the indices; `order` must be a permutation of the labels.
    pub fn reorder(&self, order: &[Label]) -> Result<Seed, SeedError> {
        let pos: Vec<usize> = order.iter().map(|&i| self.position(i)).collect::<Result<_, _>>()?;
        if pos.len() != self.len() {
            return Err(SeedError::Dimension { rows: pos.len(), cols: pos.len(), n: self.len() });
        }
        Seed::new(
            order.to_vec(),
            self.frozen.iter().copied(),
            self.b.submatrix(&pos, &pos),
            pos.iter().map(|&p| self.d[p]).collect(),
        )
    }

    pub fn to_document(&self) -> SeedDocument {
        SeedDocument {
            indices: self.indices.clone(),
            frozen: self.frozen.iter().copied().collect(),
            b: self.b.to_strings(),
            d: self.d.clone(),
        }
    }

    pub fn from_document(doc: &SeedDocument) -> Result<Seed, SeedError> {
        let rows = doc
            .b
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(SeedError::Document("B must be square".into()));
        }
        let b = if rows.is_empty() { RatMatrix::zeros(0, 0) } else { RatMatrix::from_rows(rows) };
        Seed::new(doc.indices.clone(), doc.frozen.iter().copied(), b, doc.d.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Seed, SeedError> {
        let doc: SeedDocument =
            serde_json::from_str(s).map_err(|e| SeedError::Document(e.to_string()))?;
        Seed::from_document(&doc)
    }

    pub fn is_integral(&self) -> bool {
        self.b.is_integral()
    }
}

impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// Serialized form: `B` holds exact `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDocument {
    pub indices: Vec<Label>,
    pub frozen: Vec<Label>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub d: Vec<i64>,
}
