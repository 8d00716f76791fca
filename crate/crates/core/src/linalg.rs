//! Small dense complex matrices and the handful of numerical routines the
//! simulator needs (products, unitarity defect, Hermitian eigenvalues,
//! orthonormal completion). Dimensions stay ≤ 2¹⁰ so plain O(n³) loops are
//! plenty.

use crate::error::{Error, Result};
use crate::float::{czero, real, Real};
use num_complex::Complex;

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![czero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix rows must be square");
            data.extend(row);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex<T>]) {
        for i in 0..self.dim {
            self[(i, j)] = col[i];
        }
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == czero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![czero(); self.dim];
        for i in 0..self.dim {
            let mut acc = czero();
            for j in 0..self.dim {
                acc = acc + self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product, `self` on the most significant side.
    pub fn kron(&self, rhs: &Self) -> Self {
        let n = self.dim * rhs.dim;
        let mut out = Self::zeros(n);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self[(i1, j1)];
                if a == czero() {
                    continue;
                }
                for i2 in 0..rhs.dim {
                    for j2 in 0..rhs.dim {
                        out[(i1 * rhs.dim + i2, j1 * rhs.dim + j2)] = a * rhs[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    /// max |(U†U − I)_{ij}|.
    pub fn unitarity_defect(&self) -> T {
        let prod = self.dagger().mul(self);
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expect = if i == j {
                    Complex::new(T::one(), T::zero())
                } else {
                    czero()
                };
                let d = (prod[(i, j)] - expect).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn ensure_unitary(&self, tol: T) -> Result<()> {
        let defect = self.unitarity_defect();
        if defect > tol {
            return Err(Error::NotUnitary {
                dim: self.dim,
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// True when every nonzero entry connects basis states of equal popcount,
    /// i.e. the matrix never moves amplitude between proton-number sectors.
    pub fn is_number_conserving(&self, tol: T) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self[(i, j)].norm() > tol && i.count_ones() != j.count_ones() {
                    return false;
                }
            }
        }
        true
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(czero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
}

/// Extend a set of orthonormal vectors to a full orthonormal basis of the
/// space, deterministically: standard basis vectors are orthogonalized in
/// index order and kept when their residual survives. Re-orthogonalizes once
/// to keep the defect near machine precision.
pub fn complete_orthonormal<T: Real>(
    prescribed: &[Vec<Complex<T>>],
    dim: usize,
) -> Vec<Vec<Complex<T>>> {
    let mut basis: Vec<Vec<Complex<T>>> = prescribed.to_vec();
    let keep_tol: T = real(1e-6);
    for j in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut cand = vec![czero(); dim];
        cand[j] = Complex::new(T::one(), T::zero());
        for _ in 0..2 {
            for b in &basis {
                let overlap = inner(b, &cand);
                for (c, bv) in cand.iter_mut().zip(b) {
                    *c = *c - overlap * *bv;
                }
            }
        }
        let n = vec_norm(&cand);
        if n > keep_tol {
            for c in cand.iter_mut() {
                *c = *c / Complex::new(n, T::zero());
            }
            basis.push(cand);
        }
    }
    assert_eq!(basis.len(), dim, "orthonormal completion fell short");
    basis
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Works on the real symmetric embedding [[Re, −Im], [Im, Re]], whose spectrum
/// is the Hermitian spectrum doubled, and halves the multiplicities.
pub fn hermitian_eigenvalues<T: Real>(h: &DenseMatrix<T>) -> Vec<T> {
    let d = h.dim();
    let n = 2 * d;
    let mut m = vec![T::zero(); n * n];
    for i in 0..d {
        for j in 0..d {
            let z = h[(i, j)];
            m[i * n + j] = z.re;
            m[(i + d) * n + (j + d)] = z.re;
            m[i * n + (j + d)] = -z.im;
            m[(i + d) * n + j] = z.im;
        }
    }
    let mut eig = jacobi_symmetric(&mut m, n);
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Spectrum is exactly doubled; take every other value.
    eig.into_iter().step_by(2).collect()
}

/// Cyclic Jacobi for a real symmetric matrix stored row-major; returns the
/// eigenvalues (diagonal after convergence).
fn jacobi_symmetric<T: Real>(m: &mut [T], n: usize) -> Vec<T> {
    let tol = T::epsilon() * real::<T>(n as f64);
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + m[p * n + q] * m[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= T::epsilon() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (real::<T>(2.0) * apq);
                let t = {
                    let s = if theta >= T::zero() { T::one() } else { -T::one() };
                    s / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn identity_is_unitary() {
        let m = DenseMatrix::<f64>::identity(8);
        assert!(m.unitarity_defect() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_match_known_spectrum() {
        // Pauli-Y has eigenvalues ±1.
        let y = DenseMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ]);
        let eig = hermitian_eigenvalues(&y);
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigenvalues_of_projector_mixture() {
        // diag(0.25, 0.75) rotated by a complex unitary keeps its spectrum.
        let u = DenseMatrix::from_rows(vec![
            vec![c(0.6, 0.0), c(0.0, 0.8)],
            vec![c(0.0, 0.8), c(0.6, 0.0)],
        ]);
        let d = DenseMatrix::from_rows(vec![
            vec![c(0.25, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.75, 0.0)],
        ]);
        let h = u.mul(&d).mul(&u.dagger());
        let eig = hermitian_eigenvalues(&h);
        assert!((eig[0] - 0.25).abs() < 1e-12);
        assert!((eig[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn completion_produces_full_orthonormal_basis() {
        let v = vec![
            vec![c(0.5_f64.sqrt(), 0.0), c(0.0, 0.5_f64.sqrt()), c(0.0, 0.0)],
        ];
        let basis = complete_orthonormal(&v, 3);
        assert_eq!(basis.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let ip = inner(&basis[i], &basis[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip.norm() - expect).abs() < 1e-12);
            }
        }
    }
}
