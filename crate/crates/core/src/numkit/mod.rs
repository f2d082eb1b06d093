//! Dense complex matrix kernels: hermitian eigendecomposition, unitary
//! DFT/WHT, spectral matrix functions and diagonal projection.

mod eig;
mod matrix;
mod spectrum;
mod transform;

pub use eig::{hermitian_eig, hermitian_eig_with_cap, DENSE_EIG_CAP};
pub use matrix::Matrix;
pub use spectrum::{diag_norm_sq, diag_project, spectral_map, Basis, Eigenvalue, SpectralFn, Spectrum};
pub use transform::{apply_dft, apply_wht, dft_in_place, dft_matrix, wht_in_place, wht_matrix, Direction};
