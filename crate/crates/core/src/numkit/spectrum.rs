use crate::error::{Error, Result, Warning};
use crate::numkit::transform::{dft_in_place, wht_in_place, Direction};
use crate::numkit::Matrix;
use crate::scalar::{cone, creal, czero, Real, C};

/// Where the eigenvectors of a spectrum live.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis<T> {
    /// `M = F† diag(λ) F`, eigenvalue `j` belongs to Fourier mode `j`.
    Dft,
    /// `M = H diag(λ) H`, eigenvalue `c` belongs to Walsh mode `c`.
    Wht,
    /// `M = V diag(λ) V†` with orthonormal columns.
    Dense(Matrix<T>),
    /// Closed-form values with multiplicities; no eigenvectors attached.
    ValuesOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue<T> {
    pub value: C<T>,
    pub multiplicity: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<Eigenvalue<T>>,
    basis: Basis<T>,
}

/// Scalar functions that can be pushed through a spectral decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralFn {
    Identity,
    Abs,
    /// `λ/|λ|`; eigenvalues inside the zero band map to `+1`.
    Sign,
    SqrtPsd,
    /// `λ^{-1/2}` on a positive definite spectrum.
    InvSqrtPsd,
}

impl<T: Real> Spectrum<T> {
    pub fn new(eigenvalues: Vec<Eigenvalue<T>>, basis: Basis<T>) -> Self {
        Self { eigenvalues, basis }
    }

    /// Spectrum with simple eigenvalues listed in basis order.
    pub fn simple(values: Vec<C<T>>, basis: Basis<T>) -> Self {
        let eigenvalues = values.into_iter().map(|value| Eigenvalue { value, multiplicity: 1 }).collect();
        Self { eigenvalues, basis }
    }

    pub fn eigenvalues(&self) -> &[Eigenvalue<T>] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &Basis<T> {
        &self.basis
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> u128 {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    fn dense_dimension(&self) -> Result<usize> {
        let dim = self.dimension();
        usize::try_from(dim).map_err(|_| Error::DimensionCap { dim: usize::MAX, cap: usize::MAX })
    }

    /// Largest imaginary part over all eigenvalues.
    pub fn max_imag(&self) -> T {
        self.eigenvalues.iter().map(|e| e.value.im.abs()).fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.eigenvalues.iter().map(|e| e.value.norm()).fold(T::zero(), T::max)
    }

    /// Every eigenvalue repeated by multiplicity, in stored order.
    pub fn expanded(&self) -> Result<Vec<C<T>>> {
        let n = self.dense_dimension()?;
        let mut out = Vec::with_capacity(n);
        for e in &self.eigenvalues {
            for _ in 0..e.multiplicity {
                out.push(e.value);
            }
        }
        Ok(out)
    }

    /// Real parts, expanded and sorted descending. Handy for multiset comparison.
    pub fn sorted_real(&self) -> Result<Vec<T>> {
        let mut v: Vec<T> = self.expanded()?.into_iter().map(|z| z.re).collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        Ok(v)
    }

    /// `(1/N) Σ multiplicity · |λ|`.
    pub fn mean_abs(&self) -> T {
        let n = self.dimension();
        if n == 0 {
            return T::zero();
        }
        let total = self
            .eigenvalues
            .iter()
            .map(|e| e.value.norm() * T::from_u128(e.multiplicity).unwrap_or_else(T::infinity))
            .sum::<T>();
        total / T::from_u128(n).unwrap_or_else(T::infinity)
    }

    /// Applies `f` to every eigenvalue, returning the mapped values in stored order.
    pub fn map_values(&self, f: SpectralFn) -> Result<(Vec<C<T>>, Vec<Warning>)> {
        let band = T::lit(T::ZERO_BAND) * self.max_abs();
        let mut zero_band = 0usize;
        let mut out = Vec::with_capacity(self.eigenvalues.len());
        for e in &self.eigenvalues {
            let z = e.value;
            let mapped = match f {
                SpectralFn::Identity => z,
                SpectralFn::Abs => creal(z.norm()),
                SpectralFn::Sign => {
                    if z.norm() <= band {
                        zero_band += 1;
                        cone()
                    } else {
                        z / z.norm()
                    }
                }
                SpectralFn::SqrtPsd => {
                    if z.re < -T::lit(1e-10) {
                        return Err(Error::NegativeEigenvalue(z.re.to_f64().unwrap_or(f64::NAN)));
                    }
                    creal(z.re.max(T::zero()).sqrt())
                }
                SpectralFn::InvSqrtPsd => {
                    if z.re <= band {
                        return Err(Error::SingularQueryMatrix(z.re.to_f64().unwrap_or(f64::NAN)));
                    }
                    creal(T::one() / z.re.sqrt())
                }
            };
            out.push(mapped);
        }
        let warnings = if zero_band > 0 { vec![Warning::ZeroBand { count: zero_band }] } else { Vec::new() };
        Ok((out, warnings))
    }

    /// Matrix-free `f(M) v`.
    pub fn apply(&self, f: SpectralFn, v: &[C<T>]) -> Result<Vec<C<T>>> {
        let (d, _) = self.map_values(f)?;
        self.apply_diagonal(&d, v)
    }

    /// Matrix-free `f(M)† v`.
    pub fn apply_adjoint(&self, f: SpectralFn, v: &[C<T>]) -> Result<Vec<C<T>>> {
        let (d, _) = self.map_values(f)?;
        let d: Vec<C<T>> = d.into_iter().map(|z| z.conj()).collect();
        self.apply_diagonal(&d, v)
    }

    /// Applies the operator with eigenvalues `d` in this spectrum's basis.
    pub fn apply_diagonal(&self, d: &[C<T>], v: &[C<T>]) -> Result<Vec<C<T>>> {
        let n = self.dense_dimension()?;
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        if d.len() != self.eigenvalues.len() {
            return Err(Error::DimensionMismatch { expected: self.eigenvalues.len(), got: d.len() });
        }
        match &self.basis {
            Basis::Dft => {
                let mut w = v.to_vec();
                dft_in_place(&mut w, Direction::Forward)?;
                for (x, &k) in w.iter_mut().zip(d) {
                    *x *= k;
                }
                dft_in_place(&mut w, Direction::Inverse)?;
                Ok(w)
            }
            Basis::Wht => {
                let mut w = v.to_vec();
                wht_in_place::<T, C<T>>(&mut w)?;
                for (x, &k) in w.iter_mut().zip(d) {
                    *x *= k;
                }
                wht_in_place::<T, C<T>>(&mut w)?;
                Ok(w)
            }
            Basis::Dense(vecs) => {
                let mut w = vecs.adjoint().matvec(v)?;
                for (x, &k) in w.iter_mut().zip(d) {
                    *x *= k;
                }
                vecs.matvec(&w)
            }
            Basis::ValuesOnly => Err(Error::BadParams("spectrum carries no eigenvectors".into())),
        }
    }

    /// Diagonal of `f(M)` without materializing the matrix.
    pub fn mapped_diagonal(&self, f: SpectralFn) -> Result<Vec<C<T>>> {
        let n = self.dense_dimension()?;
        let (d, _) = self.map_values(f)?;
        match &self.basis {
            // Every Fourier / Walsh mode has |entry|² = 1/N, so the diagonal is the mean.
            Basis::Dft | Basis::Wht => {
                let mean = d.iter().fold(czero(), |a, &b| a + b) / T::from_usize_lossy(n);
                Ok(vec![mean; n])
            }
            Basis::Dense(v) => {
                Ok((0..n).map(|i| (0..n).fold(czero(), |acc, j| acc + d[j] * v[(i, j)].norm_sqr())).collect())
            }
            Basis::ValuesOnly => Err(Error::BadParams("spectrum carries no eigenvectors".into())),
        }
    }

    /// Materializes `f(M)`.
    pub fn to_matrix(&self, f: SpectralFn) -> Result<(Matrix<T>, Vec<Warning>)> {
        let (d, warnings) = self.map_values(f)?;
        Ok((self.materialize(&d)?, warnings))
    }

    /// `V Λ V†` rebuilt from the decomposition.
    pub fn reconstruct(&self) -> Result<Matrix<T>> {
        self.to_matrix(SpectralFn::Identity).map(|(m, _)| m)
    }

    fn materialize(&self, d: &[C<T>]) -> Result<Matrix<T>> {
        let n = self.dense_dimension()?;
        match &self.basis {
            Basis::Dft => {
                // (F† D F)[x][y] = c[(y − x) mod N] with c = F d / √N.
                let mut c = d.to_vec();
                dft_in_place(&mut c, Direction::Forward)?;
                let k = T::one() / T::from_usize_lossy(n).sqrt();
                Ok(Matrix::from_fn(n, n, |x, y| c[(y + n - x) % n] * k))
            }
            Basis::Wht => {
                let mut h = d.to_vec();
                wht_in_place::<T, C<T>>(&mut h)?;
                let k = T::one() / T::from_usize_lossy(n).sqrt();
                Ok(Matrix::from_fn(n, n, |x, y| h[x ^ y] * k))
            }
            Basis::Dense(v) => {
                let scaled = Matrix::from_fn(n, n, |i, j| v[(i, j)] * d[j]);
                scaled.matmul(&v.adjoint())
            }
            Basis::ValuesOnly => Err(Error::BadParams("spectrum carries no eigenvectors".into())),
        }
    }
}

/// `f(M)` for a hermitian matrix via the dense eigensolver.
pub fn spectral_map<T: Real>(m: &Matrix<T>, f: SpectralFn) -> Result<(Matrix<T>, Vec<Warning>)> {
    super::hermitian_eig(m)?.to_matrix(f)
}

/// Diagonal part of a square matrix.
pub fn diag_project<T: Real>(b: &Matrix<T>) -> Result<Matrix<T>> {
    b.require_square()?;
    Ok(Matrix::diagonal(&b.diag()))
}

/// `‖d(B)‖²_F`.
pub fn diag_norm_sq<T: Real>(b: &Matrix<T>) -> Result<T> {
    b.require_square()?;
    Ok(b.diag().iter().map(|z| z.norm_sqr()).sum())
}
