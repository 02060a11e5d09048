//! Special functions: Γ, Bessel `J_ν`, first zeros, the well-separated ball
//! constant `c(α)`, and the Dirichlet/sinc/ball kernels.

mod bessel;
mod calpha;
mod gamma;
mod kernels;

pub use bessel::{bessel_first_zero, bessel_j, bessel_j_scaled, BESSEL_X_MAX};
pub use calpha::{c_alpha, c_alpha_extended, c_alpha_interval, c_alpha_left_limit, c_alpha_ratio};
pub use gamma::{gamma, sphere_area, unit_ball_volume};
pub use kernels::{ball_indicator_ft, dirichlet, sinc};
