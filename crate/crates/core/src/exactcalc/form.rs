use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{CalcError, MultiPoly, PolyVectorField};

/// Differential `q`-form on an `n`-chart with values in `Q^rank`.
///
/// Stored as `sum_I omega_I dx_I` over strictly increasing index tuples `I`
/// (0-based). Entries whose value vector is identically zero are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyForm {
    degree: usize,
    nvars: usize,
    rank: usize,
    coeffs: BTreeMap<Vec<usize>, Vec<MultiPoly>>,
}

/// Sorts an index tuple, returning the permutation sign, or `None` when an index repeats.
fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    // insertion sort counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, negative))
    }
}

/// Determinant of a small matrix of polynomials by Laplace expansion.
fn poly_det(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(nvars),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MultiPoly::zero(nvars);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &poly_det(&minor, nvars);
                if col % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

impl PolyForm {
    pub fn zero(nvars: usize, degree: usize, rank: usize) -> Self {
        PolyForm {
            degree,
            nvars,
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    /// Scalar function as a 0-form.
    pub fn function(f: MultiPoly) -> Self {
        let mut w = Self::zero(f.nvars(), 0, 1);
        w.coeffs.insert(Vec::new(), vec![f]);
        w.prune();
        w
    }

    /// `dx_i` as a scalar 1-form.
    pub fn dx(nvars: usize, i: usize) -> Self {
        let mut w = Self::zero(nvars, 1, 1);
        w.add_term(&[i], vec![MultiPoly::one(nvars)]).expect("valid index");
        w
    }

    /// `dx_1 ^ ... ^ dx_n`.
    pub fn volume(nvars: usize) -> Self {
        let idx: Vec<usize> = (0..nvars).collect();
        let mut w = Self::zero(nvars, nvars, 1);
        w.add_term(&idx, vec![MultiPoly::one(nvars)]).expect("valid index");
        w
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms keyed by increasing index tuple.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<MultiPoly>)> {
        self.coeffs.iter()
    }

    /// Coefficient vector of `dx_idx`; `idx` may be unsorted (the sign is applied).
    pub fn coefficient(&self, idx: &[usize]) -> Vec<MultiPoly> {
        let zero = || vec![MultiPoly::zero(self.nvars); self.rank];
        match sort_with_sign(idx) {
            None => zero(),
            Some((sorted, negative)) => match self.coeffs.get(&sorted) {
                None => zero(),
                Some(v) if negative => v.iter().map(|p| -p).collect(),
                Some(v) => v.clone(),
            },
        }
    }

    /// Adds `value * dx_idx`. The tuple may be unsorted; repeated indices contribute zero.
    pub fn add_term(&mut self, idx: &[usize], value: Vec<MultiPoly>) -> Result<(), CalcError> {
        if idx.len() != self.degree || idx.iter().any(|&i| i >= self.nvars) {
            return Err(CalcError::InvalidIndex { index: idx.to_vec() });
        }
        if value.len() != self.rank {
            return Err(CalcError::DimensionMismatch {
                expected: self.rank,
                found: value.len(),
            });
        }
        if let Some(bad) = value.iter().find(|p| p.nvars() != self.nvars) {
            return Err(CalcError::DimensionMismatch {
                expected: self.nvars,
                found: bad.nvars(),
            });
        }
        let Some((sorted, negative)) = sort_with_sign(idx) else {
            return Ok(());
        };
        let entry = self
            .coeffs
            .entry(sorted.clone())
            .or_insert_with(|| vec![MultiPoly::zero(self.nvars); self.rank]);
        for (slot, p) in entry.iter_mut().zip(value) {
            if negative {
                *slot -= &p;
            } else {
                *slot += &p;
            }
        }
        if entry.iter().all(MultiPoly::is_zero) {
            self.coeffs.remove(&sorted);
        }
        Ok(())
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, v| v.iter().any(|p| !p.is_zero()));
    }

    fn check_compatible(&self, other: &PolyForm) -> Result<(), CalcError> {
        for (a, b) in [
            (self.nvars, other.nvars),
            (self.degree, other.degree),
            (self.rank, other.rank),
        ] {
            if a != b {
                return Err(CalcError::DimensionMismatch { expected: a, found: b });
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, CalcError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, v) in &other.coeffs {
            out.add_term(idx, v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, CalcError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        PolyForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|p| -p).collect()))
                .collect(),
            ..self.clone()
        }
    }

    /// `f * omega`.
    pub fn mul_fn(&self, f: &MultiPoly) -> Result<PolyForm, CalcError> {
        if f.nvars() != self.nvars {
            return Err(CalcError::DimensionMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        let mut out = PolyForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|p| f * p).collect()))
                .collect(),
            ..self.clone()
        };
        out.prune();
        Ok(out)
    }

    /// Scalar component `j` of a vector-valued form.
    pub fn component(&self, j: usize) -> PolyForm {
        assert!(j < self.rank);
        let mut out = PolyForm::zero(self.nvars, self.degree, 1);
        for (idx, v) in &self.coeffs {
            out.coeffs.insert(idx.clone(), vec![v[j].clone()]);
        }
        out.prune();
        out
    }

    /// Assembles a vector-valued form from scalar components of equal degree.
    pub fn from_components(nvars: usize, degree: usize, parts: &[PolyForm]) -> Result<PolyForm, CalcError> {
        let rank = parts.len();
        let mut out = PolyForm::zero(nvars, degree, rank);
        for (j, part) in parts.iter().enumerate() {
            if part.rank != 1 || part.degree != degree || part.nvars != nvars {
                return Err(CalcError::DimensionMismatch {
                    expected: degree,
                    found: part.degree,
                });
            }
            for (idx, v) in &part.coeffs {
                let mut value = vec![MultiPoly::zero(nvars); rank];
                value[j] = v[0].clone();
                out.add_term(idx, value)?;
            }
        }
        Ok(out)
    }

    /// Applies a constant linear map `matrix` (rows x rank) to the values.
    pub fn map_values(&self, matrix: &crate::linalg::Matrix) -> Result<PolyForm, CalcError> {
        if matrix.cols() != self.rank {
            return Err(CalcError::DimensionMismatch {
                expected: self.rank,
                found: matrix.cols(),
            });
        }
        let mut out = PolyForm::zero(self.nvars, self.degree, matrix.rows());
        for (idx, v) in &self.coeffs {
            let value = (0..matrix.rows())
                .map(|i| {
                    let mut acc = MultiPoly::zero(self.nvars);
                    for (j, p) in v.iter().enumerate() {
                        acc += &p.scale(matrix.get(i, j));
                    }
                    acc
                })
                .collect();
            out.add_term(idx, value)?;
        }
        Ok(out)
    }

    /// de Rham differential; a form already of top degree has no successor.
    pub fn d(&self) -> Result<PolyForm, CalcError> {
        if self.degree >= self.nvars {
            return Err(CalcError::TopDegree {
                degree: self.degree,
                nvars: self.nvars,
            });
        }
        let mut out = PolyForm::zero(self.nvars, self.degree + 1, self.rank);
        for (idx, v) in &self.coeffs {
            for j in 0..self.nvars {
                if idx.contains(&j) {
                    continue;
                }
                let value = v.iter().map(|p| p.partial(j)).collect::<Result<Vec<_>, _>>()?;
                if value.iter().all(MultiPoly::is_zero) {
                    continue;
                }
                let mut new_idx = Vec::with_capacity(idx.len() + 1);
                new_idx.push(j);
                new_idx.extend_from_slice(idx);
                out.add_term(&new_idx, value)?;
            }
        }
        Ok(out)
    }

    /// Closed means `d omega = 0`; top-degree forms are closed.
    pub fn is_closed(&self) -> Result<bool, CalcError> {
        if self.degree >= self.nvars {
            return Ok(true);
        }
        Ok(self.d()?.is_zero())
    }

    /// `self ^ other` where `self` is scalar-valued.
    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, CalcError> {
        if self.rank != 1 {
            return Err(CalcError::DimensionMismatch {
                expected: 1,
                found: self.rank,
            });
        }
        if self.nvars != other.nvars {
            return Err(CalcError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let degree = self.degree + other.degree;
        let mut out = PolyForm::zero(self.nvars, degree, other.rank);
        if degree > self.nvars {
            return Ok(out);
        }
        for (i1, v1) in &self.coeffs {
            for (i2, v2) in &other.coeffs {
                let mut idx = i1.clone();
                idx.extend_from_slice(i2);
                let value = v2.iter().map(|p| &v1[0] * p).collect();
                out.add_term(&idx, value)?;
            }
        }
        Ok(out)
    }

    /// `omega(X_1, ..., X_q)` as a vector of polynomials.
    pub fn contract(&self, fields: &[&PolyVectorField]) -> Result<Vec<MultiPoly>, CalcError> {
        if fields.len() != self.degree {
            return Err(CalcError::DimensionMismatch {
                expected: self.degree,
                found: fields.len(),
            });
        }
        if let Some(bad) = fields.iter().find(|f| f.dim() != self.nvars) {
            return Err(CalcError::DimensionMismatch {
                expected: self.nvars,
                found: bad.dim(),
            });
        }
        let mut out = vec![MultiPoly::zero(self.nvars); self.rank];
        for (idx, v) in &self.coeffs {
            let m: Vec<Vec<MultiPoly>> = idx
                .iter()
                .map(|&i| fields.iter().map(|f| f.component(i).clone()).collect())
                .collect();
            let det = poly_det(&m, self.nvars);
            if det.is_zero() {
                continue;
            }
            for (slot, p) in out.iter_mut().zip(v) {
                *slot += &(&det * p);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, v)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            f.write_str("[")?;
            for (j, p) in v.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
            for (j, i) in idx.iter().enumerate() {
                f.write_str(if j == 0 { " " } else { "^" })?;
                write!(f, "dx{}", i + 1)?;
            }
        }
        Ok(())
    }
}
