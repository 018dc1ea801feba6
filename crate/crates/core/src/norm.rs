//! Positive-definite quadratic forms on `Λ ⊗ ℝ` and the quotient norm
//! `‖[E]‖_q = inf { ‖E + F‖ : F ∈ K }`.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{CategoryModel, Class, Quotient, ThickSubcategory};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    dim: usize,
    /// Row-major symmetric matrix.
    matrix: Vec<f64>,
}

impl QuadraticForm {
    pub fn new(dim: usize, matrix: Vec<f64>) -> Result<Self> {
        if matrix.len() != dim * dim || matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateNorm);
        }
        for i in 0..dim {
            for j in 0..i {
                let (a, b) = (matrix[i * dim + j], matrix[j * dim + i]);
                if (a - b).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
                    return Err(Error::DegenerateNorm);
                }
            }
        }
        cholesky(dim, &matrix).ok_or(Error::DegenerateNorm)?;
        Ok(QuadraticForm { dim, matrix })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DegenerateNorm);
        }
        Self::new(dim, rows.iter().flatten().copied().collect())
    }

    pub fn euclidean(dim: usize) -> Self {
        let mut matrix = vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        QuadraticForm { dim, matrix }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.chunks(self.dim.max(1)).take(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.dim + j]
    }

    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += u[i] * self.entry(i, j) * v[j];
            }
        }
        s
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        libm::sqrt(self.inner(v, v).max(0.0))
    }

    pub fn norm_class(&self, c: &Class) -> f64 {
        self.norm(&c.as_f64())
    }

    /// Distance from `v` to the real span of `basis`: the residual of the
    /// orthogonal projection in this form.
    pub fn residual(&self, v: &[f64], basis: &[Vec<f64>]) -> f64 {
        self.norm(&project_out(self, v, basis))
    }
}

/// Lower-triangular Cholesky factor, or `None` if not positive-definite.
fn cholesky(n: usize, a: &[f64]) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i * n + k] * l[j * n + k]).sum();
            if i == j {
                let d = a[i * n + i] - s;
                if !(d > 1e-14) {
                    return None;
                }
                l[i * n + i] = libm::sqrt(d);
            } else {
                l[i * n + j] = (a[i * n + j] - s) / l[j * n + j];
            }
        }
    }
    Some(l)
}

fn cholesky_solve(n: usize, l: &[f64], b: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for i in 0..n {
        let s: f64 = (0..i).map(|k| l[i * n + k] * y[k]).sum();
        y[i] = (b[i] - s) / l[i * n + i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| l[k * n + i] * x[k]).sum();
        x[i] = (y[i] - s) / l[i * n + i];
    }
    x
}

/// Linearly independent classes spanning `Λ_K ⊗ ℝ`.
fn kernel_basis(model: &CategoryModel, k: ThickSubcategory) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let euclid = QuadraticForm::euclidean(model.rank());
    for x in k.members() {
        let v = model.class_of_indec(x).as_f64();
        if euclid.residual(&v, &basis) > 1e-9 {
            basis.push(v);
        }
    }
    basis
}

/// `‖[E]‖_q`: distance in `form` from `class` to the real span of the classes
/// of `k`.
pub fn quotient_norm(
    model: &CategoryModel,
    k: ThickSubcategory,
    form: &QuadraticForm,
    class: &Class,
) -> Result<f64> {
    if !model.thick_lattice().contains(&k) {
        return Err(Error::NotInLattice);
    }
    if form.dim() != model.rank() {
        return Err(Error::DegenerateNorm);
    }
    Ok(form.residual(&class.as_f64(), &kernel_basis(model, k)))
}

/// The quotient norm as a quadratic form on the quotient lattice, in the
/// quotient's basis.
pub fn quotient_form(
    model: &CategoryModel,
    quotient: &Quotient,
    form: &QuadraticForm,
) -> Result<QuadraticForm> {
    let rank_q = quotient.model.rank();
    if rank_q == 0 {
        return Ok(QuadraticForm::euclidean(0));
    }
    let lifts = quotient.basis_lifts(model);
    let basis = kernel_basis(model, quotient.kernel);
    // Residual vectors of the lifts; their Gram matrix is the quotient form.
    let resid: Vec<Vec<f64>> = lifts
        .iter()
        .map(|c| project_out(form, &c.as_f64(), &basis))
        .collect();
    let mut m = vec![0.0; rank_q * rank_q];
    for i in 0..rank_q {
        for j in 0..rank_q {
            m[i * rank_q + j] = form.inner(&resid[i], &resid[j]);
        }
    }
    QuadraticForm::new(rank_q, m)
}

fn project_out(form: &QuadraticForm, v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let m = basis.len();
    if m == 0 {
        return v.to_vec();
    }
    let mut gram = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            gram[i * m + j] = form.inner(&basis[i], &basis[j]);
        }
    }
    let rhs: Vec<f64> = basis.iter().map(|b| form.inner(b, v)).collect();
    let l = cholesky(m, &gram).expect("kernel basis is independent");
    let coef = cholesky_solve(m, &l, &rhs);
    let mut r = v.to_vec();
    for (c, b) in coef.iter().zip(basis) {
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri -= c * bi;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Indec, ModelId};

    #[test]
    fn rejects_degenerate_matrices() {
        assert!(QuadraticForm::new(2, vec![1.0, 0.0, 0.0, 0.0]).is_err());
        assert!(QuadraticForm::new(2, vec![1.0, 2.0, 0.0, 1.0]).is_err());
        assert!(QuadraticForm::new(2, vec![1.0, 2.0, 2.0, 1.0]).is_err());
        assert!(QuadraticForm::new(2, vec![2.0, 1.0, 1.0, 2.0]).is_ok());
    }

    #[test]
    fn quotient_norm_examples() {
        let m = CategoryModel::load(ModelId::A2Path).unwrap();
        let k = m.thick_from_indecs([Indec(0)]);
        let e = QuadraticForm::euclidean(2);
        assert!((quotient_norm(&m, k, &e, &Class(vec![1, 1])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(quotient_norm(&m, k, &e, &Class(vec![0, 0])).unwrap(), 0.0);
        assert!((quotient_norm(&m, k, &e, &Class(vec![3, 4])).unwrap() - 4.0).abs() < 1e-15);
        let d = m.whole();
        assert!(quotient_norm(&m, d, &e, &Class(vec![3, 4])).unwrap() < 1e-12);
    }

    #[test]
    fn quotient_form_matches_residuals() {
        let m = CategoryModel::load(ModelId::A2Path).unwrap();
        let form = QuadraticForm::new(2, vec![2.0, 0.5, 0.5, 1.0]).unwrap();
        for mask in [0b001u8, 0b010, 0b100] {
            let k = crate::ThickSubcategory::from_mask(mask);
            let q = m.quotient(k).unwrap();
            let qf = quotient_form(&m, &q, &form).unwrap();
            for c in [Class(vec![1, 0]), Class(vec![2, -1]), Class(vec![1, 1])] {
                let direct = quotient_norm(&m, k, &form, &c).unwrap();
                let via = qf.norm_class(&q.project(&c));
                assert!((direct - via).abs() < 1e-12, "{mask:b} {c:?}: {direct} vs {via}");
            }
        }
    }
}
