//! Unitary discrete Fourier and Walsh–Hadamard transforms.
//!
//! The DFT uses the kernel `ω^{+jk}` with `ω = e^{2πi/N}` in the forward
//! direction and `1/√N` scaling both ways, so `F L_1 F† = diag(1, ω, ω², …)`
//! for the cyclic shift `L_1|x⟩ = |x+1⟩`.

use std::ops::{Add, Mul, Sub};

use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::numkit::Matrix;
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

/// In-place unitary DFT.
pub fn dft_in_place<T: Real>(v: &mut [C<T>], direction: Direction) -> Result<()> {
    let n = v.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    // rustfft's "inverse" is the e^{+2πi jk/N} kernel.
    let fft_dir = match direction {
        Direction::Forward => FftDirection::Inverse,
        Direction::Inverse => FftDirection::Forward,
    };
    let fft = FftPlanner::<T>::new().plan_fft(n, fft_dir);
    fft.process(v);
    let k = T::one() / T::from_usize_lossy(n).sqrt();
    for z in v.iter_mut() {
        *z *= k;
    }
    Ok(())
}

pub fn apply_dft<T: Real>(v: &[C<T>], direction: Direction) -> Result<Vec<C<T>>> {
    let mut out = v.to_vec();
    dft_in_place(&mut out, direction)?;
    Ok(out)
}

/// Dense unitary DFT matrix, `F[j][k] = ω^{jk}/√N`.
pub fn dft_matrix<T: Real>(n: usize) -> Matrix<T> {
    let scale = T::one() / T::from_usize_lossy(n).sqrt();
    let step = T::TAU() / T::from_usize_lossy(n);
    Matrix::from_fn(n, n, |j, k| {
        let angle = step * T::from_usize_lossy((j * k) % n);
        C::from_polar(scale, angle)
    })
}

/// In-place `H^{⊗n}` with `1/√2` per factor. Works for any element type that
/// can be added, subtracted and scaled by a real.
pub fn wht_in_place<T, S>(v: &mut [S]) -> Result<()>
where
    T: Real,
    S: Copy + Add<Output = S> + Sub<Output = S> + Mul<T, Output = S>,
{
    let n = v.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut h = 1;
    while h < n {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    let k = T::one() / T::from_usize_lossy(n).sqrt();
    for z in v.iter_mut() {
        *z = *z * k;
    }
    Ok(())
}

pub fn apply_wht<T: Real>(v: &[C<T>]) -> Result<Vec<C<T>>> {
    let mut out = v.to_vec();
    wht_in_place::<T, C<T>>(&mut out)?;
    Ok(out)
}

/// Dense `H^{⊗n}` for a length `2^n` domain.
pub fn wht_matrix<T: Real>(len: usize) -> Result<Matrix<T>> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let scale = T::one() / T::from_usize_lossy(len).sqrt();
    Ok(Matrix::from_real_fn(len, len, |i, j| if (i & j).count_ones() % 2 == 0 { scale } else { -scale }))
}
