use super::approx::Approx;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// `(x; q)_n = ∏_{k<n} (1 - x q^k)`.
pub fn qpoch(x: &Scalar, q: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc = &acc * &(Scalar::one() - &t);
        t = &t * q;
    }
    acc
}

/// `(x; q)_n` for any integer `n`, with `(x; q)_{-k} = 1 / ∏_{j=1}^{k} (1 - x q^{-j})`.
pub fn qpoch_signed(x: &Scalar, q: &Scalar, n: i64) -> Result<Scalar> {
    if n >= 0 {
        return Ok(qpoch(x, q, n as usize));
    }
    let qi = q.checked_inv()?;
    let mut den = Scalar::one();
    let mut t = x * &qi;
    for _ in 0..(-n) {
        den = &den * &(Scalar::one() - &t);
        t = &t * &qi;
    }
    den.checked_inv()
        .map_err(|_| Error::SingularParameters(format!("({x}; q)_{n} has a vanishing denominator")))
}

/// `(x1, …, xk; q)_n`.
pub fn qpoch_many(xs: &[Scalar], q: &Scalar, n: usize) -> Scalar {
    xs.iter().map(|x| qpoch(x, q, n)).product()
}

/// `(q; q)_n`.
pub fn qfact(q: &Scalar, n: usize) -> Scalar {
    qpoch(q, q, n)
}

/// `1 / (q; q)_n`, and zero for negative `n`.
pub fn inv_qfact(q: &Scalar, n: i64) -> Scalar {
    if n < 0 {
        Scalar::zero()
    } else {
        qfact(q, n as usize).inv()
    }
}

/// Partition Pochhammer `(x; q)_μ = ∏_i (x q^{1-i}; q)_{μ_i}`.
pub fn qpoch_partition(x: &Scalar, q: &Scalar, mu: &Partition) -> Scalar {
    let qi = q.inv();
    let mut shift = Scalar::one();
    let mut acc = Scalar::one();
    for &m in mu.parts() {
        acc = &acc * &qpoch(&(x * &shift), q, m);
        shift = &shift * &qi;
    }
    acc
}

/// `(x1, …, xk; q)_μ`.
pub fn qpoch_partition_many(xs: &[Scalar], q: &Scalar, mu: &Partition) -> Scalar {
    xs.iter().map(|x| qpoch_partition(x, q, mu)).product()
}

/// `(z; q)_{λ̂} = ∏_i (z q^{1-2i}, z q^{2-2i}; q)_{2λ_i}`, written out directly.
pub fn qpoch_doubled(z: &Scalar, q: &Scalar, lambda: &Partition) -> Scalar {
    let mut acc = Scalar::one();
    for (i, &l) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        let a = z * &q.pow(1 - 2 * i);
        let b = z * &q.pow(2 - 2 * i);
        acc = &acc * &qpoch(&a, q, 2 * l) * qpoch(&b, q, 2 * l);
    }
    acc
}

/// Value of a truncated infinite product together with the number of factors used.
#[derive(Clone, Debug)]
pub struct InfiniteProduct {
    pub value: Approx,
    pub factors: usize,
}

/// `(x; q)_∞` to relative accuracy `tol`.
///
/// Truncates at the first `K` with `|x| q^K ≤ 1/2` and `2|x| q^K / (1-q) < tol`;
/// past that point `|log ∏_{k≥K} (1 - x q^k)|` is bounded by the same quantity.
pub fn qpoch_infinite(x: &Approx, q: &Approx, tol: &Approx) -> Result<InfiniteProduct> {
    let p = x.precision();
    let one = Approx::one(p);
    let zero = Approx::zero(p);
    if !(q > &zero && q < &one) {
        return Err(Error::InvalidQ(q.to_string()));
    }
    let half = &one / &Approx::from_int(2, p);
    let two_over = &Approx::from_int(2, p) / &(&one - q);
    let mut acc = one.clone();
    let mut t = x.clone();
    let mut k = 0usize;
    loop {
        let a = t.abs();
        if a <= half && &(&two_over * &a) < tol {
            break;
        }
        acc = &acc * &(&one - &t);
        t = &t * q;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::InvalidArgument("infinite product did not reach tolerance".into()));
        }
    }
    Ok(InfiniteProduct { value: acc, factors: k })
}

/// `∏_j (x_j; q)_∞` for exact arguments, to relative accuracy `tol`.
///
/// Non-real arguments must come in conjugate pairs; each pair contributes the real
/// factors `1 - 2 Re(x) q^k + |x|^2 q^{2k}`.
pub fn qpoch_infinite_many(xs: &[Scalar], q: &Scalar, tol: &Approx) -> Result<Approx> {
    let p = tol.precision();
    let qa = Approx::from_scalar(q, p)?;
    let each = tol / &Approx::from_int(xs.len().max(1) as i64, p);
    let mut acc = Approx::one(p);
    let mut used = vec![false; xs.len()];
    for i in 0..xs.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let x = &xs[i];
        if x.is_real() {
            acc = &acc * &qpoch_infinite(&Approx::from_scalar(x, p)?, &qa, &each)?.value;
            continue;
        }
        let partner = (i + 1..xs.len()).find(|&j| !used[j] && xs[j] == x.conj());
        let Some(j) = partner else {
            return Err(Error::NotReal(format!("({x}; q)_inf has no conjugate partner")));
        };
        used[j] = true;
        acc = &acc * &conjugate_pair_product(x, &qa, &each)?;
    }
    Ok(acc)
}

fn conjugate_pair_product(x: &Scalar, q: &Approx, tol: &Approx) -> Result<Approx> {
    let p = tol.precision();
    let one = Approx::one(p);
    let re = Approx::from_ratio(x.re(), p);
    let norm = Approx::from_ratio(&x.norm_sqr(), p);
    // |x| ≤ |Re x| + |Im x| keeps the stopping rule rational.
    let size = &re.abs() + &Approx::from_ratio(x.im(), p).abs();
    let half = &one / &Approx::from_int(2, p);
    let four_over = &Approx::from_int(4, p) / &(&one - q);
    let two = Approx::from_int(2, p);
    let mut acc = one.clone();
    let mut qk = one.clone();
    let mut k = 0usize;
    loop {
        let t = &size * &qk;
        if t <= half && &(&four_over * &t) < tol {
            break;
        }
        let f = &(&one - &(&(&two * &re) * &qk)) + &(&norm * &(&qk * &qk));
        acc = &acc * &f;
        qk = &qk * q;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::InvalidArgument("infinite product did not reach tolerance".into()));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::approx::DEFAULT_PRECISION;
    use crate::exactnum::scalar::qq;
    use crate::partition::part;

    #[test]
    fn small_values() {
        let q = qq(1, 2);
        assert_eq!(qpoch(&qq(1, 3), &q, 0), Scalar::one());
        assert_eq!(qpoch(&qq(1, 3), &q, 2), qq(2, 3) * qq(5, 6));
        assert_eq!(qfact(&q, 3), qq(1, 2) * qq(3, 4) * qq(7, 8));
        assert_eq!(qpoch(&Scalar::from_int(4), &q, 3), Scalar::zero());
    }

    #[test]
    fn negative_index_convention() {
        let q = qq(1, 3);
        let x = qq(2, 7);
        for n in 1..5i64 {
            // (x;q)_{-n} (x q^{-n}; q)_n = 1
            let a = qpoch_signed(&x, &q, -n).unwrap();
            let b = qpoch(&(&x * &q.pow(-n)), &q, n as usize);
            assert_eq!(&a * &b, Scalar::one());
        }
        assert!(qpoch_signed(&q.pow(2), &q, -3).is_err());
    }

    #[test]
    fn partition_pochhammer_examples() {
        let q = qq(1, 2);
        let x = qq(3, 5);
        let want = qpoch(&x, &q, 2) * qpoch(&(&x * &q.inv()), &q, 1);
        assert_eq!(qpoch_partition(&x, &q, &part(&[2, 1])), want);
        let z = qq(-7, 3);
        for l in [part(&[]), part(&[1]), part(&[2, 1]), part(&[3, 3, 1])] {
            assert_eq!(qpoch_doubled(&z, &q, &l), qpoch_partition(&z, &q, &l.doubled()));
        }
    }

    #[test]
    fn infinite_product_against_pentagonal_series() {
        let p = DEFAULT_PRECISION;
        let q = Approx::from_scalar(&qq(1, 2), p).unwrap();
        let tol = Approx::from_scalar(&qq(1, 10).pow(30), p).unwrap();
        let got = qpoch_infinite(&q, &q, &tol).unwrap();
        // Euler: (q;q)_∞ = Σ_k (-1)^k q^{k(3k-1)/2}
        let mut series = Scalar::zero();
        for k in -30i64..=30 {
            let term = qq(1, 2).pow(k * (3 * k - 1) / 2);
            series = if k % 2 == 0 { series + term } else { series - term };
        }
        let diff = Scalar::real(got.value.to_ratio()) - series;
        assert!(diff.to_f64().abs() < 1e-29, "{}", diff.to_f64());
        assert!(got.factors > 90);
    }

    #[test]
    fn conjugate_pairs_match_real_expansion() {
        let p = DEFAULT_PRECISION;
        let q = qq(1, 3);
        let tol = Approx::from_scalar(&qq(1, 10).pow(30), p).unwrap();
        let z = Scalar::complex(qq(1, 2).re().clone(), qq(3, 4).re().clone());
        let got = qpoch_infinite_many(&[z.clone(), qq(1, 5), z.conj()], &q, &tol).unwrap();
        // (z, z̄; q)_∞ = ∏ (1 - 2 Re z q^k + |z|^2 q^{2k}), expanded by hand to 40 factors.
        let mut want = Scalar::one();
        for k in 0..40 {
            let qk = q.pow(k);
            want = want * (Scalar::one() - qq(1, 1) * &qk + qq(13, 16) * &qk * &qk) * (Scalar::one() - qq(1, 5) * &qk);
        }
        let diff = Scalar::real(got.to_ratio()) - want;
        assert!(diff.to_f64().abs() < 1e-18);
        assert!(qpoch_infinite_many(&[z], &q, &tol).is_err());
    }

    #[test]
    fn infinite_product_at_zero_factor() {
        let p = DEFAULT_PRECISION;
        let q = Approx::from_scalar(&qq(1, 2), p).unwrap();
        let x = Approx::from_int(4, p);
        let tol = Approx::from_scalar(&qq(1, 10).pow(20), p).unwrap();
        assert!(qpoch_infinite(&x, &q, &tol).unwrap().value.is_zero());
    }
}
