//! Picard lattices of weak del Pezzo surfaces.
//!
//! Degrees 1..=7 use the blow-up basis `(l, e_1, ..., e_{9-d})` with Gram
//! matrix `diag(1, -1, ..., -1)` and `K = -3l + sum e_i`. Degree 8 is the
//! Hirzebruch surface F_2 with basis `(M, F)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};

/// Integral divisor class, coefficients in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

/// Rational divisor class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QDivisor(pub Vec<Q>);

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_q(&self) -> QDivisor {
        QDivisor(self.0.iter().map(|&x| q(x)).collect())
    }

    /// `sum c_i * D_i` over integer coefficients.
    pub fn combination(rank: usize, terms: &[(i64, &DivisorClass)]) -> Self {
        let mut out = vec![0; rank];
        for (c, d) in terms {
            for (o, x) in out.iter_mut().zip(&d.0) {
                *o += c * x;
            }
        }
        DivisorClass(out)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl QDivisor {
    pub fn zero(rank: usize) -> Self {
        QDivisor(vec![Q::zero(); rank])
    }

    pub fn scale(&self, k: &Q) -> Self {
        QDivisor(self.0.iter().map(|x| x * k).collect())
    }

    /// `sum c_i * D_i` with rational coefficients.
    pub fn combination(rank: usize, terms: &[(Q, &DivisorClass)]) -> Self {
        let mut out = vec![Q::zero(); rank];
        for (c, d) in terms {
            for (o, &x) in out.iter_mut().zip(&d.0) {
                *o += c * q(x);
            }
        }
        QDivisor(out)
    }

    pub fn to_class(&self) -> Option<DivisorClass> {
        linalg::to_i64_vec(&self.0).map(DivisorClass)
    }
}

impl Add for &QDivisor {
    type Output = QDivisor;
    fn add(self, o: &QDivisor) -> QDivisor {
        QDivisor(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QDivisor {
    type Output = QDivisor;
    fn sub(self, o: &QDivisor) -> QDivisor {
        QDivisor(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

/// Which basis convention a form uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// `(l, e_1, ..., e_{9-d})`
    BlowUp,
    /// `(M, F)` on F_2
    Hirzebruch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    model: Model,
    degree: i64,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

/// Blow-up model of P^2 at `9 - d` points.
pub fn standard_lattice(d: i64) -> Result<IntersectionForm> {
    if !(1..=7).contains(&d) {
        return Err(Error::DegreeOutOfRange(d));
    }
    let rank = (10 - d) as usize;
    let gram = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match (i == j, i) {
                    (false, _) => 0,
                    (true, 0) => 1,
                    (true, _) => -1,
                })
                .collect()
        })
        .collect();
    let mut k = vec![1; rank];
    k[0] = -3;
    Ok(IntersectionForm {
        model: Model::BlowUp,
        degree: d,
        gram,
        canonical: DivisorClass(k),
    })
}

/// F_2 with its negative section M and fibre F.
pub fn hirzebruch_lattice() -> IntersectionForm {
    IntersectionForm {
        model: Model::Hirzebruch,
        degree: 8,
        gram: vec![vec![-2, 1], vec![1, 0]],
        canonical: DivisorClass(vec![-2, -4]),
    }
}

/// Lattice for any degree 1..=8.
pub fn lattice_for_degree(d: i64) -> Result<IntersectionForm> {
    match d {
        8 => Ok(hirzebruch_lattice()),
        _ => standard_lattice(d),
    }
}

impl IntersectionForm {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn anticanonical(&self) -> DivisorClass {
        -&self.canonical
    }

    /// Number of blown-up points (zero for F_2).
    pub fn num_points(&self) -> usize {
        match self.model {
            Model::BlowUp => self.rank() - 1,
            Model::Hirzebruch => 0,
        }
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if n == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: n,
            })
        }
    }

    /// Integer pairing. Callers guarantee matching lengths.
    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        debug_assert_eq!(a.len(), self.rank());
        debug_assert_eq!(b.len(), self.rank());
        match self.model {
            Model::BlowUp => {
                a.0[0] * b.0[0] - a.0[1..].iter().zip(&b.0[1..]).map(|(x, y)| x * y).sum::<i64>()
            }
            Model::Hirzebruch => {
                -2 * a.0[0] * b.0[0] + a.0[0] * b.0[1] + a.0[1] * b.0[0]
            }
        }
    }

    pub fn pair_classes(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        Ok(self.dot(a, b))
    }

    /// Exact bilinear pairing `a^T G b`.
    pub fn pair(&self, a: &QDivisor, b: &QDivisor) -> Result<Q> {
        self.check_len(a.0.len())?;
        self.check_len(b.0.len())?;
        let mut s = Q::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if a.0[i].is_zero() {
                continue;
            }
            for (j, &g) in row.iter().enumerate() {
                if g != 0 && !b.0[j].is_zero() {
                    s += &a.0[i] * &b.0[j] * q(g);
                }
            }
        }
        Ok(s)
    }

    pub fn self_pair(&self, a: &QDivisor) -> Result<Q> {
        self.pair(a, a)
    }

    pub fn dot_k(&self, a: &DivisorClass) -> i64 {
        self.dot(a, &self.canonical)
    }

    pub fn is_root(&self, d: &DivisorClass) -> bool {
        d.len() == self.rank() && self.dot(d, d) == -2 && self.dot_k(d) == 0
    }

    pub fn is_line(&self, d: &DivisorClass) -> bool {
        d.len() == self.rank() && self.dot(d, d) == -1 && self.dot_k(d) == -1
    }

    /// Gram matrix of a list of classes.
    pub fn gram_of(&self, classes: &[DivisorClass]) -> Vec<Vec<i64>> {
        classes
            .iter()
            .map(|a| classes.iter().map(|b| self.dot(a, b)).collect())
            .collect()
    }

    /// Does `g` (acting on column vectors) preserve this form?
    pub fn preserves(&self, g: &[Vec<i64>]) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let gi = DivisorClass((0..n).map(|r| g[r][i]).collect());
                let gj = DivisorClass((0..n).map(|r| g[r][j]).collect());
                self.dot(&gi, &gj) == self.gram[i][j]
            })
        })
    }
}

/// Applies an integer matrix to a class viewed as a column vector.
pub fn apply(g: &[Vec<i64>], d: &DivisorClass) -> DivisorClass {
    DivisorClass(
        g.iter()
            .map(|row| row.iter().zip(&d.0).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// True iff the restriction of the form to `basis` is negative definite.
pub fn is_negative_definite(form: &IntersectionForm, basis: &[DivisorClass]) -> bool {
    if basis.is_empty() || basis.iter().any(|b| b.len() != form.rank()) {
        return false;
    }
    linalg::is_negative_definite_matrix(&form.gram_of(basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_degree() {
        for d in 1..=7 {
            let f = standard_lattice(d).unwrap();
            assert_eq!(f.rank() as i64, 10 - d);
            assert_eq!(f.dot(f.canonical(), f.canonical()), d);
        }
        let h = hirzebruch_lattice();
        assert_eq!(h.dot(h.canonical(), h.canonical()), 8);
        assert_eq!(h.dot_k(&DivisorClass(vec![1, 0])), 0);
        assert_eq!(h.dot_k(&DivisorClass(vec![0, 1])), -2);
        assert!(standard_lattice(0).is_err());
        assert!(standard_lattice(8).is_err());
    }

    #[test]
    fn basic_pairings() {
        let f = standard_lattice(7).unwrap();
        assert_eq!(f.canonical().0, vec![-3, 1, 1]);
        let f3 = standard_lattice(3).unwrap();
        let ell = DivisorClass::unit(7, 0);
        assert_eq!(f3.dot(&ell, &ell), 1);
        for i in 1..7 {
            assert_eq!(f3.dot(&f3.anticanonical(), &DivisorClass::unit(7, i)), 1);
        }
        let f1 = standard_lattice(1).unwrap();
        assert_eq!(f1.dot(&DivisorClass::unit(9, 2), &DivisorClass::unit(9, 2)), -1);
        assert_eq!(f1.dot(&DivisorClass::unit(9, 2), &DivisorClass::unit(9, 3)), 0);
        assert!(f1.pair(&DivisorClass::unit(8, 0).to_q(), &DivisorClass::unit(9, 0).to_q()).is_err());
    }

    #[test]
    fn definiteness() {
        let f3 = standard_lattice(3).unwrap();
        let e1 = DivisorClass::unit(7, 1);
        let e2 = DivisorClass::unit(7, 2);
        assert!(is_negative_definite(&f3, &[e1.clone(), e2.clone()]));
        assert!(!is_negative_definite(&f3, &[DivisorClass::unit(7, 0)]));
        let a2 = [&e1 - &e2, &e2 - &DivisorClass::unit(7, 3)];
        assert!(is_negative_definite(&f3, &a2));
    }
}
