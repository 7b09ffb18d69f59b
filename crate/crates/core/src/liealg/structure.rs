use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{LieAlgebra, LieError, Subspace};
use crate::linalg::Matrix;
use crate::Rational;

/// Kernel of `x -> ad_x`.
pub fn center(g: &LieAlgebra) -> Subspace {
    let k = g.dim();
    if k == 0 {
        return Subspace::zero(0);
    }
    // unknowns x_a; equations sum_a x_a c[a][b][d] = 0 for every (b, d)
    let mut m = Matrix::zeros(k * k, k);
    for b in 0..k {
        for d in 0..k {
            for a in 0..k {
                m.set(b * k + d, a, g.structure_constant(a, b, d).clone());
            }
        }
    }
    Subspace::span(k, m.nullspace())
}

/// Span of all basis brackets.
pub fn derived_ideal(g: &LieAlgebra) -> Subspace {
    let k = g.dim();
    let mut rows = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let v: Vec<Rational> = (0..k).map(|d| g.structure_constant(a, b, d).clone()).collect();
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
    }
    Subspace::span(k, rows)
}

/// Gram matrix `kappa_ab = tr(ad_a ad_b)`.
pub fn killing_form(g: &LieAlgebra) -> Matrix {
    let k = g.dim();
    let ads: Vec<Matrix> = (0..k).map(|a| g.ad(&g.basis_vector(a))).collect();
    let mut m = Matrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let t = ads[a].mul(&ads[b]).trace();
            m.set(a, b, t.clone());
            m.set(b, a, t);
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillingReport {
    pub gram: Matrix,
    pub determinant: Rational,
    pub semisimple: bool,
}

/// Cartan's criterion: semisimple iff the Killing form is nondegenerate.
///
/// The zero algebra counts as semisimple.
pub fn killing_semisimple(g: &LieAlgebra) -> KillingReport {
    let gram = killing_form(g);
    let determinant = gram.determinant();
    KillingReport {
        semisimple: !determinant.is_zero(),
        gram,
        determinant,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotReductiveReason {
    /// `dim(Z + [g,g]) < dim g` or `Z` meets `[g,g]`.
    SumNotDirect { center_dim: usize, derived_dim: usize, sum_dim: usize },
    /// The Killing form restricted to `[g,g]` is degenerate.
    DerivedNotSemisimple,
}

impl fmt::Display for NotReductiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotReductiveReason::SumNotDirect {
                center_dim,
                derived_dim,
                sum_dim,
            } => write!(
                f,
                "center (dim {center_dim}) and derived ideal (dim {derived_dim}) span only dimension {sum_dim}"
            ),
            NotReductiveReason::DerivedNotSemisimple => f.write_str("derived ideal is not semisimple"),
        }
    }
}

/// `g = Z (+) S` with `Z` the center and `S = [g,g]` semisimple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductiveSplit {
    pub center: Subspace,
    pub derived: Subspace,
    /// Columns: center basis, then derived basis.
    pub change_of_basis: Matrix,
    /// Inverse of `change_of_basis`: maps `g` coordinates to (center, derived) coordinates.
    pub inverse: Matrix,
}

impl ReductiveSplit {
    pub fn center_dim(&self) -> usize {
        self.center.dim()
    }

    pub fn derived_dim(&self) -> usize {
        self.derived.dim()
    }

    /// Coordinates of `x` along the center basis and along the derived basis.
    pub fn split(&self, x: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut coords = self.inverse.mul_vec(x);
        let s = coords.split_off(self.center.dim());
        (coords, s)
    }

    /// Center coordinates of `x`.
    pub fn center_coords(&self, x: &[Rational]) -> Vec<Rational> {
        self.split(x).0
    }

    /// Derived coordinates of `x`.
    pub fn derived_coords(&self, x: &[Rational]) -> Vec<Rational> {
        self.split(x).1
    }

    /// `sum z_i c_i + sum s_j d_j` in `g` coordinates.
    pub fn join(&self, z: &[Rational], s: &[Rational]) -> Vec<Rational> {
        let mut coords = z.to_vec();
        coords.extend_from_slice(s);
        self.change_of_basis.mul_vec(&coords)
    }

    /// Matrix taking `g` coordinates to center coordinates.
    pub fn center_projection(&self) -> Matrix {
        let rows = (0..self.center.dim()).map(|i| self.inverse.row(i).to_vec()).collect();
        Matrix::from_rows_or_empty(rows, self.inverse.cols())
    }

    /// Matrix taking `g` coordinates to derived coordinates.
    pub fn derived_projection(&self) -> Matrix {
        let z = self.center.dim();
        let rows = (z..self.inverse.rows()).map(|i| self.inverse.row(i).to_vec()).collect();
        Matrix::from_rows_or_empty(rows, self.inverse.cols())
    }
}

impl Matrix {
    pub(crate) fn from_rows_or_empty(rows: Vec<Vec<Rational>>, cols: usize) -> Matrix {
        if rows.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(rows)
        }
    }
}

pub fn reductive_decomposition(g: &LieAlgebra) -> Result<ReductiveSplit, LieError> {
    let k = g.dim();
    let z = center(g);
    let s = derived_ideal(g);
    let sum = z.sum(&s);
    if z.dim() + s.dim() != k || sum.dim() != k {
        return Err(LieError::NotReductive(NotReductiveReason::SumNotDirect {
            center_dim: z.dim(),
            derived_dim: s.dim(),
            sum_dim: sum.dim(),
        }));
    }
    // kappa_g restricted to S is the Killing form of S since ad_s kills Z
    let kappa = killing_form(g);
    let sb = Matrix::from_rows_or_empty(s.basis().to_vec(), k);
    let restricted = sb.mul(&kappa).mul(&sb.transpose());
    if restricted.determinant().is_zero() {
        return Err(LieError::NotReductive(NotReductiveReason::DerivedNotSemisimple));
    }
    let mut cols = z.basis().to_vec();
    cols.extend(s.basis().iter().cloned());
    let change_of_basis = Matrix::from_columns(k, &cols);
    let inverse = change_of_basis.inverse().expect("direct sum has full rank");
    Ok(ReductiveSplit {
        center: z,
        derived: s,
        change_of_basis,
        inverse,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub simples: Vec<Subspace>,
    pub maximals: Vec<Subspace>,
}

/// Splits a semisimple ideal into simple ideals.
///
/// Candidates for a proper sub-ideal are the ideals generated by each
/// basis vector and by each pairwise bracket, lowest index first. A proper
/// candidate `J` splits `I = J (+) (J^perp cap I)` with respect to the
/// Killing form, and both halves are split again.
fn split_simple(g: &LieAlgebra, kappa: &Matrix, ideal: Subspace, out: &mut Vec<Subspace>) {
    if ideal.is_zero() {
        return;
    }
    let basis = ideal.basis().to_vec();
    let mut candidates: Vec<Vec<Rational>> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(g.bracket(&basis[i], &basis[j]));
        }
    }
    for v in candidates {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let j = Subspace::span(g.dim(), alloc::vec![v]).ideal_closure(g);
        if j.dim() < ideal.dim() {
            let rest = ideal.orthogonal_within(&j, kappa);
            split_simple(g, kappa, j, out);
            split_simple(g, kappa, rest, out);
            return;
        }
    }
    out.push(ideal);
}

/// Simple ideals of a semisimple algebra (sorted by their canonical bases)
/// and the maximal ideals, one per simple ideal: the sum of all others.
pub fn simple_and_maximal_ideals(g: &LieAlgebra) -> Result<IdealDecomposition, LieError> {
    let report = killing_semisimple(g);
    if !report.semisimple {
        return Err(LieError::NotSemisimple);
    }
    let mut simples = Vec::new();
    split_simple(g, &report.gram, Subspace::full(g.dim()), &mut simples);
    simples.sort_by(|a, b| b.basis().cmp(a.basis()));
    let maximals = (0..simples.len())
        .map(|i| {
            simples
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Subspace::zero(g.dim()), |acc, (_, s)| acc.sum(s))
        })
        .collect();
    Ok(IdealDecomposition { simples, maximals })
}

/// `g / Z(g)` realized on the derived ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAlgebra {
    pub algebra: LieAlgebra,
    pub split: ReductiveSplit,
}

pub fn quotient_by_center(g: &LieAlgebra) -> Result<QuotientAlgebra, LieError> {
    let split = reductive_decomposition(g)?;
    let basis = split.derived.basis().to_vec();
    let m = basis.len();
    let mut c = alloc::vec![alloc::vec![alloc::vec![Rational::zero(); m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            let br = g.bracket(&basis[a], &basis[b]);
            let coords = split
                .derived
                .coordinates(&br)
                .expect("[g,g] is closed under the bracket");
            c[a][b] = coords;
        }
    }
    let names: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            match support.as_slice() {
                [i] if v[*i] == crate::int(1) => g.names()[*i].clone(),
                _ => format!("s{}", j + 1),
            }
        })
        .collect();
    let algebra = LieAlgebra::new(names, c)?;
    Ok(QuotientAlgebra { algebra, split })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use crate::liealg::catalog;
    use alloc::vec;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sl2_killing_matrix() {
        let r = killing_semisimple(&catalog("sl2").unwrap());
        let expected = Matrix::from_rows(vec![v(&[8, 0, 0]), v(&[0, 0, 4]), v(&[0, 4, 0])]);
        assert_eq!(r.gram, expected);
        assert_eq!(r.determinant, int(-128));
        assert!(r.semisimple);
    }

    #[test]
    fn abelian_and_gl2_are_not_semisimple() {
        assert!(!killing_semisimple(&catalog("abelian:2").unwrap()).semisimple);
        assert!(!killing_semisimple(&catalog("gl2").unwrap()).semisimple);
    }

    #[test]
    fn centers() {
        assert!(center(&catalog("sl2").unwrap()).is_zero());
        assert!(center(&catalog("abelian:2").unwrap()).is_full());
        assert_eq!(center(&catalog("gl2").unwrap()), Subspace::span(4, vec![v(&[0, 0, 0, 1])]));
    }

    #[test]
    fn derived_ideals() {
        assert!(derived_ideal(&catalog("sl2").unwrap()).is_full());
        assert!(derived_ideal(&catalog("abelian:3").unwrap()).is_zero());
        let sl2_in_gl2 = Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        assert_eq!(derived_ideal(&catalog("gl2").unwrap()), sl2_in_gl2);
    }

    #[test]
    fn reductive_examples() {
        let split = reductive_decomposition(&catalog("gl2").unwrap()).unwrap();
        assert_eq!((split.center_dim(), split.derived_dim()), (1, 3));
        let split = reductive_decomposition(&catalog("sl2").unwrap()).unwrap();
        assert_eq!((split.center_dim(), split.derived_dim()), (0, 3));
        assert!(matches!(
            reductive_decomposition(&catalog("heisenberg3").unwrap()),
            Err(LieError::NotReductive(NotReductiveReason::SumNotDirect { .. }))
        ));
    }

    #[test]
    fn split_and_join_are_inverse() {
        let split = reductive_decomposition(&catalog("gl2").unwrap()).unwrap();
        let x = v(&[3, -1, 2, 5]);
        let (z, s) = split.split(&x);
        assert_eq!(z, v(&[5]));
        assert_eq!(split.join(&z, &s), x);
    }

    #[test]
    fn simple_ideals_of_sums() {
        let d = simple_and_maximal_ideals(&catalog("sl2").unwrap()).unwrap();
        assert_eq!(d.simples.len(), 1);
        assert_eq!(d.maximals, vec![Subspace::zero(3)]);

        let d = simple_and_maximal_ideals(&catalog("sl2+sl2+sl2").unwrap()).unwrap();
        assert_eq!(d.maximals.len(), 3);
        assert!(d.maximals.iter().all(|m| m.dim() == 6));

        assert_eq!(
            simple_and_maximal_ideals(&catalog("gl2").unwrap()),
            Err(LieError::NotSemisimple)
        );
    }

    #[test]
    fn quotients() {
        let q = quotient_by_center(&catalog("gl2").unwrap()).unwrap();
        assert_eq!(q.algebra, catalog("sl2").unwrap());
        let q = quotient_by_center(&catalog("sl2").unwrap()).unwrap();
        assert_eq!(q.algebra, catalog("sl2").unwrap());
        let q = quotient_by_center(&catalog("abelian:3").unwrap()).unwrap();
        assert_eq!(q.algebra.dim(), 0);
    }
}
