//! Alternant quotients `det[p_i(x_j)] / V(x)` via Cauchy–Binet.
//!
//! Writing `p_i = Σ_k a_{ik} x^k`, the quotient is `Σ_ν det[a_{i, ν_l + n - l}] s_ν(x)`,
//! so it comes out directly in the Schur basis with no polynomial division.

use super::multisym::{MultiSymPoly, SchurCoeffs};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::linalg::det;
use crate::partition::{sub_partitions, super_partitions, Partition};

/// Schur coefficients of `det[p_i(x_j)]_{i,j ≤ n} / ∏_{i<j}(x_i - x_j)`, `n = rows.len()`.
///
/// Rows must have pairwise distinct degrees; their order fixes the sign.
/// Terms of degree above `max_degree` are dropped when a bound is given.
pub fn alternant_schur(rows: &[UniPoly], max_degree: Option<usize>) -> Result<SchurCoeffs> {
    let n = rows.len();
    if rows.iter().any(|r| r.is_zero()) {
        return Ok(SchurCoeffs::new());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(rows[i].degree().unwrap()));
    let degs: Vec<usize> = order.iter().map(|&i| rows[i].degree().unwrap()).collect();
    if degs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedDegree);
    }
    let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| order[i] > order[j]).count();
    let sign = if inversions % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
    // A minor with column k_l > deg(row l) has a zero block, so ν_l ≤ deg_l - (n-1-l).
    let bound = Partition::new((0..n).map(|l| degs[l] + l + 1 - n).collect())?;
    let sorted: Vec<&UniPoly> = order.iter().map(|&i| &rows[i]).collect();
    let mut out = SchurCoeffs::new();
    for nu in sub_partitions(&bound) {
        if max_degree.is_some_and(|d| nu.size() > d) {
            continue;
        }
        let cols: Vec<usize> = (0..n).map(|l| nu.part(l) + n - 1 - l).collect();
        let m: Vec<Vec<Scalar>> = sorted.iter().map(|r| cols.iter().map(|&k| r.coeff(k)).collect()).collect();
        let d = det(m);
        if !d.is_zero() {
            out.insert(nu, &d * &sign);
        }
    }
    Ok(out)
}

/// The same quotient in the monomial symmetric basis.
pub fn alternant_quotient(rows: &[UniPoly]) -> Result<MultiSymPoly> {
    Ok(MultiSymPoly::from_schur(&alternant_schur(rows, None)?, rows.len()))
}

/// Alternant quotient for rows that are power series: row `i` is
/// `Σ_{k ≥ orders[i]} entry(i, k) u^k` with `orders` strictly decreasing.
/// Returns Schur coefficients in `n = orders.len()` variables up to total degree `max_degree`.
pub fn alternant_schur_series(
    orders: &[usize],
    entry: impl Fn(usize, usize) -> Scalar,
    max_degree: usize,
) -> Result<SchurCoeffs> {
    let n = orders.len();
    if orders.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::RepeatedDegree);
    }
    // Lowest possible columns give the minimal shape μ_l = orders_l - (n-1-l).
    let base = Partition::new((0..n).map(|l| orders[l] + l + 1 - n).collect())?;
    let mut out = SchurCoeffs::new();
    for nu in super_partitions(&base, max_degree, n) {
        let cols: Vec<usize> = (0..n).map(|l| nu.part(l) + n - 1 - l).collect();
        let m: Vec<Vec<Scalar>> = (0..n).map(|i| cols.iter().map(|&k| entry(i, k)).collect()).collect();
        let d = det(m);
        if !d.is_zero() {
            out.insert(nu, d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;
    use crate::partition::part;
    use crate::polyseries::mpoly::alternant_quotient_by_division;

    fn sample_rows() -> Vec<UniPoly> {
        vec![
            UniPoly::from_coeffs(vec![qq(1, 2), qq(-1, 1), qq(0, 1), qq(2, 3), qq(1, 1)]),
            UniPoly::from_coeffs(vec![qq(3, 1), qq(1, 5), qq(1, 1)]),
            UniPoly::from_coeffs(vec![qq(-2, 7), qq(1, 1)]),
        ]
    }

    #[test]
    fn minors_agree_with_division() {
        let rows = sample_rows();
        assert_eq!(alternant_quotient(&rows).unwrap(), alternant_quotient_by_division(&rows).unwrap());
        let mut swapped = rows.clone();
        swapped.swap(0, 2);
        assert_eq!(
            alternant_quotient(&swapped).unwrap(),
            alternant_quotient_by_division(&swapped).unwrap()
        );
    }

    #[test]
    fn monomial_rows_give_schur_polynomials() {
        let lambda = part(&[2, 1]);
        let n = 3;
        let rows: Vec<UniPoly> =
            (0..n).map(|i| UniPoly::monomial(Scalar::one(), lambda.part(i) + n - 1 - i)).collect();
        let s = alternant_schur(&rows, None).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[&lambda], Scalar::one());
    }

    #[test]
    fn repeated_degree_rejected() {
        let rows = vec![UniPoly::x(), UniPoly::linear(&qq(1, 1))];
        assert_eq!(alternant_schur(&rows, None), Err(Error::RepeatedDegree));
    }
}
