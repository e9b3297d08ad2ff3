//! Double-precision special functions: Gamma, the complete elliptic integral
//! of the first kind, Jacobi elliptic functions and the Gauss hypergeometric
//! function on `[0, 1]`.
//!
//! Everything here is pure and allocation-free.

mod elliptic;
mod gamma;
mod hypergeometric;

pub(crate) use elliptic::AgmLadder;
pub use elliptic::{complete_elliptic_k, jacobi_elliptic, EllipticModulus, JacobiTriple};
pub use gamma::{cospi, gamma, reciprocal_gamma, sinpi};
pub use hypergeometric::{hyp2f1, hyp2f1_reflected, hyp2f1_series};
