//! Type tags and the Cartan-matrix catalog.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CartanError;
use crate::algebra::{int, Rational};
use crate::matrix::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite type `X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteType {
    pub family: Family,
    pub rank: usize,
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Result<Self, CartanError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(FiniteType { family, rank })
        } else {
            Err(CartanError::UnknownType(format!("{family}{rank}")))
        }
    }

    /// Every finite type of rank at most `max_rank`, in catalog order.
    pub fn all_up_to(max_rank: usize) -> Vec<FiniteType> {
        use Family::*;
        let mut out = Vec::new();
        for family in [A, B, C, D, E, F, G] {
            for rank in 1..=max_rank {
                if let Ok(t) = FiniteType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A finite, untwisted affine `X_N^(1)` or twisted affine `X_N^(κ)` type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeTag {
    Finite(FiniteType),
    Untwisted(FiniteType),
    Twisted { base: FiniteType, kappa: u8 },
}

impl TypeTag {
    pub fn is_affine(&self) -> bool {
        !matches!(self, TypeTag::Finite(_))
    }

    /// The finite type `Y_M` whose Cartan matrix enters `Σ_C` for the Q-system of
    /// this affine type: `X_N` itself when untwisted, the folded type when twisted.
    pub fn folded(&self) -> FiniteType {
        match *self {
            TypeTag::Finite(t) | TypeTag::Untwisted(t) => t,
            TypeTag::Twisted { base, kappa } => {
                let (family, rank) = match (base.family, kappa) {
                    (Family::A, 2) => (Family::C, base.rank.div_ceil(2)),
                    (Family::D, 2) => (Family::B, base.rank - 1),
                    (Family::E, 2) => (Family::F, 4),
                    (Family::D, 3) => (Family::G, 2),
                    _ => unreachable!("validated at parse time"),
                };
                FiniteType { family, rank }
            }
        }
    }

    /// Every untwisted affine type `X_N^(1)` with `N ≤ max_rank`.
    pub fn all_untwisted_up_to(max_rank: usize) -> Vec<TypeTag> {
        FiniteType::all_up_to(max_rank)
            .into_iter()
            .filter(|t| !(t.family == Family::B && t.rank < 3))
            .map(TypeTag::Untwisted)
            .collect()
    }

    /// Every supported twisted affine type whose folded rank is at most `max_rank`.
    pub fn all_twisted_up_to(max_rank: usize) -> Vec<TypeTag> {
        let mut out = Vec::new();
        for r in 2..=max_rank {
            out.push(TypeTag::Twisted { base: FiniteType { family: Family::A, rank: 2 * r - 1 }, kappa: 2 });
        }
        for r in 2..=max_rank {
            out.push(TypeTag::Twisted { base: FiniteType { family: Family::D, rank: r + 1 }, kappa: 2 });
        }
        if max_rank >= 4 {
            out.push(TypeTag::Twisted { base: FiniteType { family: Family::E, rank: 6 }, kappa: 2 });
        }
        if max_rank >= 2 {
            out.push(TypeTag::Twisted { base: FiniteType { family: Family::D, rank: 4 }, kappa: 3 });
        }
        out
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Finite(t) => write!(f, "{t}"),
            TypeTag::Untwisted(t) => write!(f, "{t}~"),
            TypeTag::Twisted { base, kappa } => write!(f, "{base}({kappa})"),
        }
    }
}

impl FromStr for TypeTag {
    type Err = CartanError;

    /// Accepts `A3`, `A1~`, `A1(1)`, `A5(2)`, `D3(2)`, `D5(2)`, `E6(2)`, `D4(3)`.
    fn from_str(s: &str) -> Result<Self, CartanError> {
        let unknown = || CartanError::UnknownType(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_char).ok_or_else(unknown)?;
        let rest = chars.as_str();
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let rank: usize = digits.parse().map_err(|_| unknown())?;
        let suffix = &rest[digits.len()..];
        // D_3^(2) folds to B_2; its base is the rank-3 D diagram, which equals A_3.
        let base = match FiniteType::new(family, rank) {
            Ok(t) => t,
            Err(_) if family == Family::D && rank == 3 && suffix == "(2)" => FiniteType { family, rank },
            Err(_) => return Err(unknown()),
        };
        let kappa = match suffix {
            "" => return Ok(TypeTag::Finite(base)),
            "~" | "(1)" => 1,
            "(2)" => 2,
            "(3)" => 3,
            _ => return Err(unknown()),
        };
        match (family, kappa) {
            (Family::B, 1) if rank < 3 => Err(unknown()),
            (_, 1) => Ok(TypeTag::Untwisted(base)),
            (Family::A, 2) if rank.is_multiple_of(2) => Err(CartanError::Unsupported(format!(
                "{s}: the twisted type A_2n^(2) has a relation with the same variable on both sides, \
                 which cannot be rearranged into an exchange relation"
            ))),
            (Family::A, 2) if rank >= 3 => Ok(TypeTag::Twisted { base, kappa }),
            (Family::D, 2) => Ok(TypeTag::Twisted { base, kappa }),
            (Family::E, 2) if rank == 6 => Ok(TypeTag::Twisted { base, kappa }),
            (Family::D, 3) if rank == 4 => Ok(TypeTag::Twisted { base, kappa }),
            _ => Err(unknown()),
        }
    }
}

/// A symmetrizable generalized Cartan matrix with its minimal symmetrizers.
///
/// `c[i][j] = ⟨α_i^∨ | α_j⟩` on positions `0..rank`. For affine tags position 0
/// is the affine node; `node_labels` records the diagram enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    tag: Option<TypeTag>,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    node_labels: Vec<i64>,
}

impl CartanData {
    /// Validates `C_ii = 2`, `C_ij ≤ 0`, `C_ij = 0 ⇔ C_ji = 0` and computes the
    /// minimal positive integral `d'` with `d'_i C_ij = d'_j C_ji`.
    pub fn new(tag: Option<TypeTag>, c: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = c.len();
        if n == 0 || c.iter().any(|row| row.len() != n) {
            return Err(CartanError::Invalid("matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if c[i][i] != 2 {
                return Err(CartanError::Invalid(format!("C[{i}][{i}] = {} != 2", c[i][i])));
            }
            for j in 0..n {
                if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                    return Err(CartanError::Invalid(format!("bad off-diagonal pair at ({i},{j})")));
                }
            }
        }
        let d = symmetrizers(&c)?;
        let node_labels = match tag {
            Some(t) if t.is_affine() => (0..n as i64).collect(),
            _ => (1..=n as i64).collect(),
        };
        Ok(CartanData { tag, c, d, node_labels })
    }

    pub fn tag(&self) -> Option<TypeTag> {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    /// Entry at 1-based positions.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.c[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_i64(&self.c)
    }

    pub fn transpose_matrix(&self) -> RatMatrix {
        self.matrix().transpose()
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn node_labels(&self) -> &[i64] {
        &self.node_labels
    }

    /// Nonsingular over ℚ.
    pub fn is_finite_type(&self) -> bool {
        !self.matrix().det().is_zero()
    }

    /// The inverse Cartan matrix; `(C^{-1})_{ba} = ⟨ω_a | ω_b^∨⟩`.
    pub fn inverse(&self) -> Result<RatMatrix, CartanError> {
        self.matrix().inverse().map_err(|_| CartanError::Singular)
    }

    /// The Cartan matrix of the folded finite type for Q-system constructions.
    pub fn folded(&self) -> Result<CartanData, CartanError> {
        match self.tag {
            Some(t) => catalog(TypeTag::Finite(t.folded())),
            None => Err(CartanError::Invalid("untagged matrix has no folding".into())),
        }
    }
}

fn symmetrizers(c: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = c.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited");
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                // d_i C_ij = d_j C_ji
                let dj = &di * int(c[i][j]) / int(c[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(CartanError::Invalid("matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("all visited")).collect();
    let lcm = d.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = d.iter().map(|x| (x * Rational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).abs().to_i64().ok_or_else(|| CartanError::Invalid("symmetrizer overflow".into())))
        .collect()
}

fn finite_matrix(t: FiniteType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i - 1][j - 1] = cij;
        c[j - 1][i - 1] = cji;
    };
    match t.family {
        Family::A => (1..r).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B => {
            (1..r - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(r - 1, r, -1, -2);
        }
        Family::C => {
            (1..r - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(r - 1, r, -2, -1);
        }
        Family::D => {
            (1..r - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(r - 2, r, -1, -1);
        }
        Family::E => {
            link(1, 3, -1, -1);
            link(2, 4, -1, -1);
            (3..r).for_each(|i| link(i, i + 1, -1, -1));
        }
        Family::F => {
            link(1, 2, -1, -1);
            link(2, 3, -2, -1);
            link(3, 4, -1, -1);
        }
        Family::G => link(1, 2, -3, -1),
    }
    c
}

/// Prepends an affine node 0 with the given `(node, C_0j, C_j0)` attachments.
fn extend(finite: Vec<Vec<i64>>, links: &[(usize, i64, i64)]) -> Vec<Vec<i64>> {
    let r = finite.len();
    let mut c = vec![vec![0i64; r + 1]; r + 1];
    c[0][0] = 2;
    for i in 0..r {
        for j in 0..r {
            c[i + 1][j + 1] = finite[i][j];
        }
    }
    for &(j, c0j, cj0) in links {
        c[0][j] += c0j;
        c[j][0] += cj0;
    }
    c
}

fn untwisted_matrix(t: FiniteType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let links: Vec<(usize, i64, i64)> = match t.family {
        Family::A if r == 1 => vec![(1, -2, -2)],
        Family::A => vec![(1, -1, -1), (r, -1, -1)],
        Family::B | Family::D => vec![(2, -1, -1)],
        Family::C => vec![(1, -1, -2)],
        Family::E => vec![(match r {
            6 => 2,
            7 => 1,
            _ => 8,
        }, -1, -1)],
        Family::F => vec![(4, -1, -1)],
        Family::G => vec![(2, -1, -1)],
    };
    extend(finite_matrix(t), &links)
}

fn twisted_matrix(folded: FiniteType) -> Vec<Vec<i64>> {
    let fin = finite_matrix(folded);
    match folded.family {
        // A_{2r-1}^(2): node 0 is a second copy of node 1.
        Family::C => {
            let links: Vec<(usize, i64, i64)> =
                (2..=folded.rank).map(|j| (j, fin[0][j - 1], fin[j - 1][0])).collect();
            extend(fin, &links)
        }
        // D_{r+1}^(2): a short node 0 doubly bonded to node 1.
        Family::B => extend(fin, &[(1, -2, -1)]),
        _ => extend(fin, &[(1, -1, -1)]),
    }
}

/// The Cartan data of `tag`. Orientations follow the Q-system relation lists:
/// `G2 = [[2,-3],[-1,2]]`, `B_r` with `C_{r,r-1} = -2`, `C_r` with `C_{r-1,r} = -2`,
/// `F4` with `C_23 = -2`.
pub fn catalog(tag: TypeTag) -> Result<CartanData, CartanError> {
    let c = match tag {
        TypeTag::Finite(t) => finite_matrix(t),
        TypeTag::Untwisted(t) => untwisted_matrix(t),
        TypeTag::Twisted { .. } => twisted_matrix(tag.folded()),
    };
    CartanData::new(Some(tag), c)
}

/// Parses and looks up a tag string.
pub fn catalog_str(s: &str) -> Result<CartanData, CartanError> {
    catalog(s.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn null_vector_positive(c: &[Vec<i64>]) -> bool {
        // Affine: corank one with a strictly positive kernel vector.
        let m = RatMatrix::from_i64(c);
        if !m.det().is_zero() {
            return false;
        }
        let n = c.len();
        let minor = m.submatrix(&(1..n).collect::<Vec<_>>(), &(1..n).collect::<Vec<_>>());
        let Ok(inv) = minor.inverse() else { return false };
        // Solve for v with v_0 = 1.
        let rhs: Vec<Rational> = (1..n).map(|i| -int(c[i][0])).collect();
        let v: Vec<Rational> =
            (0..n - 1).map(|i| (0..n - 1).map(|j| inv.get(i, j) * &rhs[j]).sum()).collect();
        v.iter().all(|x| x.is_positive())
    }

    #[test]
    fn small_catalog_entries() {
        let a2 = catalog_str("A2").unwrap();
        assert_eq!(a2.rows(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.symmetrizers(), &[1, 1]);
        let g2 = catalog_str("G2").unwrap();
        assert_eq!(g2.rows(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.symmetrizers(), &[1, 3]);
        assert_eq!(catalog_str("B2").unwrap().symmetrizers(), &[2, 1]);
        assert_eq!(catalog_str("C3").unwrap().symmetrizers(), &[1, 1, 2]);
        assert_eq!(catalog_str("F4").unwrap().symmetrizers(), &[1, 1, 2, 2]);
        assert_eq!(catalog_str("A1~").unwrap().rows(), &[vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn tag_parsing() {
        for s in ["A3", "A1~", "E8~", "A5(2)", "D5(2)", "E6(2)", "D4(3)"] {
            let t: TypeTag = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert_eq!("A1(1)".parse::<TypeTag>().unwrap().to_string(), "A1~");
        assert!(matches!("A2(2)".parse::<TypeTag>(), Err(CartanError::Unsupported(_))));
        assert!(matches!("A4(2)".parse::<TypeTag>(), Err(CartanError::Unsupported(_))));
        for bad in ["", "H3", "E9", "D4(4)", "B2~", "A3x"] {
            assert!(bad.parse::<TypeTag>().is_err(), "{bad}");
        }
    }

    #[test]
    fn folding_table() {
        let f = |s: &str| s.parse::<TypeTag>().unwrap().folded().to_string();
        assert_eq!(f("A5(2)"), "C3");
        assert_eq!(f("D5(2)"), "B4");
        assert_eq!(f("E6(2)"), "F4");
        assert_eq!(f("D4(3)"), "G2");
        assert_eq!(f("D4~"), "D4");
    }

    #[test]
    fn finite_types_are_nonsingular_and_symmetrizable() {
        for t in FiniteType::all_up_to(8) {
            let cd = catalog(TypeTag::Finite(t)).unwrap();
            assert!(cd.is_finite_type(), "{t}");
            let d = cd.symmetrizers();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    assert_eq!(d[i] * cd.rows()[i][j], d[j] * cd.rows()[j][i]);
                }
            }
        }
    }

    #[test]
    fn affine_types_have_corank_one() {
        let mut tags = TypeTag::all_untwisted_up_to(8);
        tags.extend(TypeTag::all_twisted_up_to(8));
        for t in tags {
            let cd = catalog(t).unwrap();
            assert!(null_vector_positive(cd.rows()), "{t}");
            // The subdiagram on nodes 1..r is the folded type.
            let fin = catalog(TypeTag::Finite(t.folded())).unwrap();
            let r = fin.rank();
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(cd.rows()[i + 1][j + 1], fin.rows()[i][j], "{t}");
                }
            }
        }
    }

    #[test]
    fn a3_twisted_rank_two_extension() {
        let cd = catalog_str("A3(2)").unwrap();
        assert_eq!(cd.rows(), &[vec![2, 0, -2], vec![0, 2, -2], vec![-1, -1, 2]]);
    }
}
