//! Floquet analysis of the Lamé equation `X'' + κ² cn²(z, 1/√2) X = 0`.
//!
//! * [`specfun`]: Gamma, `K(k)`, Jacobi elliptic functions, `₂F₁`.
//! * [`closedform`]: the hypergeometric reduction, connection coefficients,
//!   half-period transfer matrix, multipliers, exponents and bands.
//! * [`oracle`]: direct integration of the ODE, monodromy and solution
//!   reconstruction, used to cross-check the closed form.
//! * [`verify`]: the cross-check suite as a callable report.

pub mod closedform;
pub mod error;
pub mod oracle;
pub mod specfun;
pub mod verify;

pub use closedform::{
    AmplificationBand, ConnectionCoefficients, FloquetResult, HypergeometricParams, TransferMatrix,
};
pub use error::{Error, Result};
pub use oracle::{MonodromyMatrix, State};
