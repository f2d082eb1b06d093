//! Cyclic Jacobi eigensolver for dense hermitian matrices.

use crate::error::{Error, Result};
use crate::numkit::{Basis, Eigenvalue, Matrix, Spectrum};
use crate::scalar::{creal, Real, C};

/// Largest dimension accepted by the dense eigensolver unless a cap is given.
pub const DENSE_EIG_CAP: usize = 512;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition `M = V Λ V†` of a hermitian matrix.
///
/// Eigenvalues come back real, sorted descending (ties keep their original
/// diagonal order), with the matching orthonormal eigenvectors as the columns
/// of the dense basis.
pub fn hermitian_eig<T: Real>(m: &Matrix<T>) -> Result<Spectrum<T>> {
    hermitian_eig_with_cap(m, DENSE_EIG_CAP)
}

pub fn hermitian_eig_with_cap<T: Real>(m: &Matrix<T>, cap: usize) -> Result<Spectrum<T>> {
    let n = m.require_square()?;
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let scale = m.frobenius_norm();
    let residual = m.hermitian_residual();
    let tolerance = T::lit(T::HERMITIAN_TOL) * scale;
    if residual > tolerance {
        return Err(Error::NotHermitian {
            residual: residual.to_f64().unwrap_or(f64::INFINITY),
            tolerance: tolerance.to_f64().unwrap_or(0.0),
        });
    }

    let mut a = m.clone();
    let mut v = Matrix::<T>::identity(n);
    jacobi_sweeps(&mut a, &mut v, scale);

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal));

    let eigenvalues = order.iter().map(|&i| Eigenvalue { value: creal(diag[i]), multiplicity: 1 }).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Spectrum::new(eigenvalues, Basis::Dense(vectors)))
}

fn off_diagonal_sq<T: Real>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi_sweeps<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, scale: T) {
    let n = a.rows();
    let eps = T::epsilon();
    let target = (eps * scale) * (eps * scale);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(a, v, p, q, eps * scale);
            }
        }
    }
    for i in 0..n {
        a[(i, i)] = creal(a[(i, i)].re);
    }
}

/// Annihilates `a[p][q]` with a phase fix followed by a real plane rotation.
fn rotate<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize, floor: T) {
    let n = a.rows();
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= floor * T::lit(1e-3) {
        return;
    }
    // Scale row/column q so the pivot becomes the real number |a_pq|.
    let phase = apq / mag;
    let conj_phase = phase.conj();
    for k in 0..n {
        a[(k, q)] *= conj_phase;
        a[(q, k)] *= phase;
        v[(k, q)] *= conj_phase;
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let t = {
        let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * s;
        let new_kq = akp * s + akq * c;
        a[(k, p)] = new_kp;
        a[(k, q)] = new_kq;
        a[(p, k)] = new_kp.conj();
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = creal(app - t * mag);
    a[(q, q)] = creal(aqq + t * mag);
    a[(p, q)] = C::new(T::zero(), T::zero());
    a[(q, p)] = C::new(T::zero(), T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
}
