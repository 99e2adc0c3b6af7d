//! Exact Gaussian-rational scalars, fixed-precision floats and q-Pochhammer symbols.

pub mod approx;
pub mod pochhammer;
pub mod scalar;

pub use approx::{Approx, DEFAULT_PRECISION};
pub use pochhammer::{
    inv_qfact, qfact, qpoch, qpoch_doubled, qpoch_infinite, qpoch_infinite_many, qpoch_many, qpoch_partition, qpoch_partition_many,
    qpoch_signed, InfiniteProduct,
};
pub use scalar::{qq, Scalar};

use crate::error::{Error, Result};

/// Checks that `q` is a real rational in `(0, 1)`.
pub fn validate_q(q: &Scalar) -> Result<()> {
    if q.is_real() && q.is_positive_real() && q.partial_cmp_real(&Scalar::one()) == Some(std::cmp::Ordering::Less) {
        Ok(())
    } else {
        Err(Error::InvalidQ(q.to_string()))
    }
}

/// The default base `q = 1/2`.
pub fn default_q() -> Scalar {
    qq(1, 2)
}

/// Default tolerance `1e-20` for approximate comparisons.
pub fn default_tolerance(prec: u32) -> Approx {
    Approx::from_scalar(&qq(1, 10).pow(20), prec).expect("real")
}
