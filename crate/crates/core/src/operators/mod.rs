//! Fourier matrices, Gram matrices, extreme singular values and minimum-norm
//! interpolation.

mod gram;
mod matrix;
mod polynomial;
mod spectrum;

pub use gram::{gram, gram_direct, gram_entry, GramMatrix, GramProvenance};
pub use matrix::{build_matrix, matrix_from_indices, FourierMatrix};
pub use polynomial::TrigPolynomial;
pub use spectrum::{
    measure, min_norm_interpolant, sigma_extremes, sigma_extremes_matrix, sigma_sandwich_check,
    Sandwich, SpectrumMethod, SpectrumReport,
};
