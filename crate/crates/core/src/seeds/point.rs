use std::fmt;

use num_traits::Signed;

use super::{Label, Seed, SeedError};
use crate::algebra::{
    as_i64, AlgebraError, Rational, RationalFunction, Scalar, VariableAssignment, Variables,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Cluster variables `A_i`.
    A,
    /// X-coordinates `X_i`.
    X,
}

/// Coordinates of a point of `𝒜_Σ` or `𝒳_Σ`, listed in the seed's index order.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint<F> {
    flavor: Flavor,
    labels: Vec<Label>,
    values: Vec<F>,
}

pub type SymbolicTorusPoint = TorusPoint<RationalFunction>;

/// Variable name for a label: `A3`, and `Am2` for label −2.
pub fn variable_name(prefix: &str, i: Label) -> String {
    if i < 0 {
        format!("{prefix}m{}", -i)
    } else {
        format!("{prefix}{i}")
    }
}

fn bounded_mul<F: Scalar>(a: &F, b: &F, admit: &mut impl FnMut(&F, &F) -> bool) -> Option<F> {
    if a.is_one() {
        return Some(b.clone());
    }
    admit(a, b).then(|| a.mul(b))
}

/// `v^e` for `e ≥ 1` by repeated squaring, asking `admit` before each product.
fn bounded_pow<F: Scalar>(v: &F, mut e: u64, admit: &mut impl FnMut(&F, &F) -> bool) -> Option<F> {
    let mut acc: Option<F> = None;
    let mut base = v.clone();
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => bounded_mul(&a, &base, admit)?,
            });
        }
        e >>= 1;
        if e == 0 {
            return acc;
        }
        base = bounded_mul(&base, &base, admit)?;
    }
}

impl<F: Scalar> TorusPoint<F> {
    /// Every value must be nonzero.
    pub fn new(flavor: Flavor, labels: Vec<Label>, values: Vec<F>) -> Result<Self, SeedError> {
        if labels.len() != values.len() {
            return Err(SeedError::LabelMismatch);
        }
        if let Some(p) = values.iter().position(Scalar::is_zero) {
            return Err(AlgebraError::DivisionByZero(format!(
                "coordinate {} vanishes",
                labels[p]
            ))
            .into());
        }
        Ok(TorusPoint { flavor, labels, values })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn get(&self, i: Label) -> Option<&F> {
        self.labels.iter().position(|&x| x == i).map(|p| &self.values[p])
    }

    fn check(&self, seed: &Seed, flavor: Flavor) -> Result<(), SeedError> {
        if self.flavor != flavor {
            return Err(SeedError::WrongFlavor { expected: flavor, found: self.flavor });
        }
        if self.labels != seed.indices() {
            return Err(SeedError::LabelMismatch);
        }
        Ok(())
    }

    /// `A'_k = A_k^{-1}(∏_{B_kj>0} A_j^{B_kj} + ∏_{B_kj<0} A_j^{-B_kj})`.
    pub fn mutate_a(&self, seed: &Seed, k: Label) -> Result<Self, SeedError> {
        Ok(self.mutate_a_bounded(seed, k, |_, _| true)?.expect("unbounded mutation always admits"))
    }

    /// A-mutation in which every product and the final division first ask
    /// `admit(a, b)`; `Ok(None)` as soon as it refuses. Exchange monomials on
    /// symbolic points can grow doubly exponentially with the sequence length.
    pub fn mutate_a_bounded(
        &self,
        seed: &Seed,
        k: Label,
        mut admit: impl FnMut(&F, &F) -> bool,
    ) -> Result<Option<Self>, SeedError> {
        self.check(seed, Flavor::A)?;
        let kp = seed.check_mutable(k)?;
        let one = self.values[kp].one_like();
        let (mut pos, mut neg) = (one.clone(), one);
        for (j, v) in self.values.iter().enumerate() {
            let b = seed.b().get(kp, j);
            if b.is_zero() {
                continue;
            }
            let e = as_i64(b).expect("row of an unfrozen index is integral");
            let side = if e > 0 { &mut pos } else { &mut neg };
            let Some(f) = bounded_pow(v, e.unsigned_abs(), &mut admit) else { return Ok(None) };
            let Some(next) = bounded_mul(side, &f, &mut admit) else { return Ok(None) };
            *side = next;
        }
        let sum = pos.add(&neg);
        if !admit(&sum, &self.values[kp]) {
            return Ok(None);
        }
        let mut values = self.values.clone();
        values[kp] = sum.checked_div(&self.values[kp])?;
        Ok(Some(TorusPoint::new(Flavor::A, self.labels.clone(), values)?))
    }

    /// `X'_k = X_k^{-1}`, `X'_i = X_i X_k^{[B_ik]_+} (1 + X_k)^{-B_ik}`.
    pub fn mutate_x(&self, seed: &Seed, k: Label) -> Result<Self, SeedError> {
        self.check(seed, Flavor::X)?;
        let kp = seed.check_mutable(k)?;
        let xk = &self.values[kp];
        let one_plus = xk.add(&xk.one_like());
        let mut values = Vec::with_capacity(self.values.len());
        for (i, v) in self.values.iter().enumerate() {
            if i == kp {
                values.push(xk.inv()?);
                continue;
            }
            let b = seed.b().get(i, kp);
            if b.is_zero() {
                values.push(v.clone());
                continue;
            }
            let e = as_i64(b).expect("column of an unfrozen index is integral");
            let mut w = v.clone();
            if e > 0 {
                w = w.mul(&xk.powi(e)?);
            }
            w = w.mul(&one_plus.powi(-e)?);
            values.push(w);
        }
        TorusPoint::new(Flavor::X, self.labels.clone(), values)
    }

    /// `X_i = ∏_j A_j^{B_ij}`; fails if a row used has a non-integral entry.
    pub fn p_map(&self, seed: &Seed) -> Result<Self, SeedError> {
        self.check(seed, Flavor::A)?;
        let mut values = Vec::with_capacity(self.values.len());
        for (i, &label) in seed.indices().iter().enumerate() {
            let mut x = self.values[i].one_like();
            for (j, a) in self.values.iter().enumerate() {
                let b = seed.b().get(i, j);
                if b.is_zero() {
                    continue;
                }
                let e = as_i64(b).ok_or(SeedError::NonIntegralRow { row: label })?;
                x = x.mul(&a.powi(e)?);
            }
            values.push(x);
        }
        TorusPoint::new(Flavor::X, self.labels.clone(), values)
    }

    /// Same coordinates listed under a permuted label assignment:
    /// `out[i] = self[sigma_inv(i)]`.
    pub(crate) fn pull_by(&self, sigma_inv: impl Fn(Label) -> Label) -> Result<Self, SeedError> {
        let values = self
            .labels
            .iter()
            .map(|&i| self.get(sigma_inv(i)).cloned().ok_or(SeedError::UnknownIndex(sigma_inv(i))))
            .collect::<Result<Vec<_>, _>>()?;
        TorusPoint::new(self.flavor, self.labels.clone(), values)
    }
}

impl SymbolicTorusPoint {
    /// The initial cluster: coordinate `i` is the variable `A{i}` (or `X{i}`).
    pub fn initial(seed: &Seed, flavor: Flavor) -> Self {
        let prefix = match flavor {
            Flavor::A => "A",
            Flavor::X => "X",
        };
        let vars = Variables::new(seed.indices().iter().map(|&i| variable_name(prefix, i)));
        Self::initial_over(seed, flavor, &vars)
    }

    /// Initial cluster over a caller-supplied alphabet, one variable per index.
    pub fn initial_over(seed: &Seed, flavor: Flavor, vars: &Variables) -> Self {
        assert_eq!(vars.len(), seed.len(), "one variable per index");
        let values = (0..seed.len()).map(|p| RationalFunction::var(vars, p)).collect();
        TorusPoint { flavor, labels: seed.indices().to_vec(), values }
    }

    /// Evaluates every coordinate at `point`.
    pub fn evaluate(&self, point: &VariableAssignment) -> Result<TorusPoint<Rational>, SeedError> {
        let values = self.values.iter().map(|f| f.evaluate(point)).collect::<Result<Vec<_>, _>>()?;
        TorusPoint::new(self.flavor, self.labels.clone(), values)
    }
}

impl TorusPoint<Rational> {
    pub fn all_positive(&self) -> bool {
        self.values.iter().all(Signed::is_positive)
    }
}

impl<F: Scalar> fmt::Display for TorusPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.flavor {
            Flavor::A => "A",
            Flavor::X => "X",
        };
        for (k, (l, v)) in self.labels.iter().zip(&self.values).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{} = {v}", variable_name(prefix, *l))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, LaurentPolynomial};
    use crate::matrix::RatMatrix;
    use crate::seeds::tests::rank_one_sigma_c;

    fn parse(s: &str, p: &SymbolicTorusPoint) -> RationalFunction {
        RationalFunction::parse(s, p.values()[0].variables()).unwrap()
    }

    #[test]
    fn rank_one_a_mutation() {
        let s = rank_one_sigma_c();
        let a = SymbolicTorusPoint::initial(&s, Flavor::A);
        let m = a.mutate_a(&s, 1).unwrap();
        assert_eq!(m.values()[0], parse("(A2^2 + 1)/(A1)", &a));
        assert_eq!(m.values()[0].to_string(), "A1^-1*A2^2 + A1^-1");
        assert_eq!(m.values()[1], a.values()[1]);
        let back = m.mutate_a(&s.mutate(1).unwrap(), 1).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rank_one_x_mutation() {
        // B_21 = 2 here, so X'_2 = X_2 X_1^2 (1 + X_1)^{-2}.
        let s = rank_one_sigma_c();
        let x = SymbolicTorusPoint::initial(&s, Flavor::X);
        let m = x.mutate_x(&s, 1).unwrap();
        assert_eq!(m.values()[0], parse("X1^-1", &x));
        assert_eq!(m.values()[1], parse("(X1^2*X2)/(X1^2 + 2*X1 + 1)", &x));
        assert!(m.values()[0].try_mul(&x.values()[0]).unwrap().is_one());
        assert_eq!(m.mutate_x(&s.mutate(1).unwrap(), 1).unwrap(), x);
        assert!(x.mutate_a(&s, 1).is_err());
    }

    #[test]
    fn p_map_rows() {
        let s = rank_one_sigma_c();
        let a = SymbolicTorusPoint::initial(&s, Flavor::A);
        let x = a.p_map(&s).unwrap();
        assert_eq!(x.values()[0], parse("A2^-2", &a));
        assert_eq!(x.values()[1], parse("A1^2", &a));
        let z = Seed::new(vec![1, 2], [], RatMatrix::zeros(2, 2), vec![1, 1]).unwrap();
        let ones = SymbolicTorusPoint::initial(&z, Flavor::A).p_map(&z).unwrap();
        assert!(ones.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn p_map_rejects_half_integers() {
        let b = RatMatrix::from_rows(vec![
            vec![int(0), crate::algebra::rat(1, 2)],
            vec![crate::algebra::rat(-1, 2), int(0)],
        ]);
        let s = Seed::new(vec![1, 2], [1, 2], b, vec![1, 1]).unwrap();
        let a = SymbolicTorusPoint::initial(&s, Flavor::A);
        assert!(matches!(a.p_map(&s), Err(SeedError::NonIntegralRow { row: 1 })));
    }

    #[test]
    fn numeric_points() {
        let s = rank_one_sigma_c();
        let x = TorusPoint::new(Flavor::X, vec![1, 2], vec![int(1), int(3)]).unwrap();
        let m = x.mutate_x(&s, 1).unwrap();
        assert_eq!(m.values(), &[int(1), crate::algebra::rat(3, 4)]);
        assert!(TorusPoint::new(Flavor::X, vec![1, 2], vec![int(0), int(3)]).is_err());
        let _ = LaurentPolynomial::zero(&Variables::numbered("A", 1));
    }
}
