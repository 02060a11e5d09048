//! Explicit Lagrange interpolants: quantized plane-wave products, hyperplane
//! interpolants, localization polynomials and the duality lower bound.

mod duality;
mod families;
mod localization;
mod neighbor;
mod product;
mod quantize;

pub use duality::{duality_lower_bound, DualityBound, LAGRANGE_TOL};
pub use families::{hyper_family, min_norm_family, sr_family, LocalizationConstants};
pub use localization::{localization_polynomials, LocalizationPolynomial};
pub use neighbor::{
    local_planes, neighbor_interpolant_continuous, neighbor_interpolant_discrete,
    neighbor_interpolant_integer_hyperplanes, RootClass,
};
pub use product::{ball_overlap, InterpolantProduct, Kernel, PlaneWaveFactor};
pub use quantize::{dual_vector, quantize_direction, Quantized};
