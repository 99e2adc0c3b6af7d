//! Polynomials and truncated series: univariate, symmetric multivariate, dense
//! multivariate, and series in inverse variables.

pub mod alternant;
pub mod dual;
pub mod invseries;
pub mod kostka;
pub mod mpoly;
pub mod multisym;
pub mod nodes;
pub mod unipoly;

pub use alternant::{alternant_quotient, alternant_schur, alternant_schur_series};
pub use dual::{dual_schur, solve_triangular};
pub use invseries::{Coeff, InvSeries, Ring};
pub use mpoly::alternant_quotient_by_division;
pub use multisym::{MultiSymPoly, SchurCoeffs};
pub use nodes::Nodes;
pub use unipoly::UniPoly;
