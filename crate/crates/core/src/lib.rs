//! Exact computation with the q-Askey scheme of orthogonal polynomials and their
//! infinite-variate symmetric-function limits.
//!
//! Layers, bottom to top:
//! * [`exactnum`]: Gaussian rationals, fixed-precision floats, q-Pochhammer symbols.
//! * [`partition`]: partitions and Young-diagram combinatorics.
//! * [`polyseries`]: univariate polynomials, symmetric polynomials, alternant
//!   quotients and truncated power series in inverse variables.
//! * [`univariate`]: q-Racah, big q-Jacobi, q-Meixner and Al-Salam–Carlitz
//!   polynomials, their operators, grids and weights.
//! * [`multivariate`]: multiparameter Schur polynomials, N-variate families,
//!   configuration measures and Cauchy identities.
//! * [`symfunc`]: truncated symmetric functions, interpolation functions,
//!   the four infinite-variate families and their formal moment functionals.
//! * [`degeneration`]: limit transitions between families and measure experiments.
//! * [`verify`]: named verification suites with JSON reports.

pub mod degeneration;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod multivariate;
pub mod params;
pub mod partition;
pub mod polyseries;
pub mod symfunc;
pub mod univariate;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{qq, Approx, Scalar};
pub use partition::Partition;
