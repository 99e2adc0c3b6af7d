//! Dual Schur functions in `u_j = 1/y_j` and inversion of Cauchy-type sums.

use std::collections::BTreeMap;

use super::alternant::alternant_schur_series;
use super::invseries::{Coeff, InvSeries};
use super::kostka::kostka;
use super::nodes::Nodes;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::partition::{partitions_of, Partition};

/// `h_r(d_0, …, d_{m-1})` for `r = 0..=max_r`.
fn complete_in(d: &[Scalar], max_r: usize) -> Vec<Scalar> {
    let mut h = vec![Scalar::zero(); max_r + 1];
    h[0] = Scalar::one();
    // Multiply Σ h_r t^r by 1/(1 - d t) one node at a time.
    for x in d {
        for r in 1..=max_r {
            let add = &h[r - 1] * x;
            h[r] += &add;
        }
    }
    h
}

/// Schur coefficients in `u` of the alternant with rows `1/(y|d)^{m_i}`.
fn inverse_newton_alternant(orders: &[usize], nodes: &Nodes, max_degree: usize) -> Result<super::SchurCoeffs> {
    let k = orders.len();
    let max_col = max_degree + k;
    let rows: Vec<Vec<Scalar>> = orders
        .iter()
        .map(|&m| Ok(complete_in(&nodes.take(m)?, max_col)))
        .collect::<Result<_>>()?;
    // 1/(y|d)^m = u^m ∏_{j<m} 1/(1 - d_j u) = Σ_k h_{k-m}(d_0..d_{m-1}) u^k.
    alternant_schur_series(
        orders,
        |i, col| if col < orders[i] { Scalar::zero() } else { rows[i][col - orders[i]].clone() },
        max_degree,
    )
}

/// `σ_{μ|K}(y | d) = det[1/(y_j|d)^{μ_i+K-i}] / det[1/(y_j|d)^{K-i}]` as a series in
/// `u_j = 1/y_j` up to total degree `max_degree`. Zero when `ℓ(μ) > K`.
pub fn dual_schur(mu: &Partition, k: usize, nodes: &Nodes, max_degree: usize) -> Result<InvSeries<Scalar>> {
    if mu.len() > k {
        return Ok(InvSeries::zero(k, max_degree));
    }
    let orders = |shape: &Partition| -> Vec<usize> { (0..k).map(|i| shape.part(i) + k - 1 - i).collect() };
    let num = inverse_newton_alternant(&orders(mu), nodes, max_degree)?;
    let den = inverse_newton_alternant(&orders(&Partition::empty()), nodes, max_degree)?;
    let num = InvSeries::from_schur(&num, k, max_degree);
    let den = InvSeries::from_schur(&den, k, max_degree);
    Ok(num.mul(&den.inverse()?))
}

/// `Σ_e c_e b u^e` for a scalar series `Σ c_e u^e` and a coefficient `b`.
fn tensor<C: Coeff>(s: &InvSeries<Scalar>, b: &C, max_degree: usize) -> InvSeries<C> {
    let mut out = InvSeries::zero(s.n_vars(), max_degree);
    for (e, c) in s.terms() {
        out.add_term(e.clone(), b.scale(c));
    }
    out
}

/// Solves `Σ_μ I_μ · basis[μ] = rhs` for the coefficients `I_μ`.
///
/// Each `basis[μ]` must be a symmetric series equal to `s_μ(u)` plus terms of higher
/// degree, so the system is unitriangular degree by degree. The number of variables
/// must be at least the truncation degree so that every Schur function of that
/// degree is visible.
pub fn solve_triangular<C: Coeff>(
    rhs: &InvSeries<C>,
    basis: &BTreeMap<Partition, InvSeries<Scalar>>,
) -> Result<BTreeMap<Partition, C>> {
    let (k, dmax) = (rhs.n_vars(), rhs.max_degree());
    if k < dmax {
        return Err(Error::TooFewVariables { needed: dmax, degree: dmax, have: k });
    }
    let mut residual = rhs.clone();
    let mut out = BTreeMap::new();
    for d in 0..=dmax {
        let mono: BTreeMap<Partition, C> =
            residual.symmetric_coeffs().into_iter().filter(|(p, _)| p.size() == d).collect();
        if mono.is_empty() {
            continue;
        }
        // Monomial to Schur: a_ν = Σ_{λ ≥ ν} b_λ K_{λν}, peeled in decreasing lex order.
        let mut shapes = partitions_of(d, Some(k), None);
        shapes.sort();
        shapes.reverse();
        let mut schur: Vec<(Partition, C)> = Vec::new();
        for nu in &shapes {
            let mut b: Option<C> = mono.get(nu).cloned();
            for (lam, bl) in &schur {
                let kk = kostka(lam, nu.parts());
                if kk > 0 {
                    let t = bl.scale(&Scalar::from_int(-(kk as i64)));
                    b = Some(match b {
                        Some(x) => x.add(&t),
                        None => t,
                    });
                }
            }
            if let Some(b) = b.filter(|b| !b.is_zero()) {
                schur.push((nu.clone(), b));
            }
        }
        for (lam, b) in schur {
            let s = basis.get(&lam).ok_or_else(|| Error::InconsistentSystem(format!("no basis element for {lam}")))?;
            residual = residual.sub(&tensor(s, &b, dmax));
            out.insert(lam, b);
        }
    }
    if let Some((e, _)) = residual.terms().iter().next() {
        return Err(Error::InconsistentSystem(format!("residual term at exponent {e:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;
    use crate::partition::{enumerate_box, part};

    fn sample_nodes() -> Nodes {
        Nodes::explicit(vec![qq(1, 2), qq(-2, 3), qq(3, 1), qq(1, 5), qq(-1, 1), qq(2, 7), qq(5, 3), qq(-3, 4)])
    }

    #[test]
    fn zero_nodes_give_schur_polynomials() {
        let zero = Nodes::rule(|_| Scalar::zero());
        for mu in [part(&[1]), part(&[2, 1]), part(&[1, 1, 1]), part(&[3])] {
            let s = dual_schur(&mu, 3, &zero, 4).unwrap();
            let mut expect = super::super::SchurCoeffs::new();
            expect.insert(mu.clone(), Scalar::one());
            assert_eq!(s, InvSeries::from_schur(&expect, 3, 4), "μ = {mu}");
        }
    }

    #[test]
    fn empty_shape_is_one_and_long_shapes_vanish() {
        let s = dual_schur(&Partition::empty(), 3, &sample_nodes(), 4).unwrap();
        assert_eq!(s, InvSeries::one(3, 4));
        assert!(dual_schur(&part(&[1, 1, 1]), 2, &sample_nodes(), 4).unwrap().is_zero());
    }

    #[test]
    fn leading_term_is_schur() {
        let nodes = sample_nodes();
        for k in 1..=3 {
            for mu in enumerate_box(Some(k), None, 3) {
                let s = dual_schur(&mu, k, &nodes, 4).unwrap();
                let mut lead = super::super::SchurCoeffs::new();
                lead.insert(mu.clone(), Scalar::one());
                let diff = s.sub(&InvSeries::from_schur(&lead, k, 4));
                assert!(diff.terms().keys().all(|e| e.iter().sum::<u32>() as usize > mu.size()), "μ = {mu}, K = {k}");
            }
        }
    }

    #[test]
    fn one_variable_matches_geometric_expansion() {
        // σ_{(m)|1}(y | d) = 1/(y|d)^m.
        let nodes = sample_nodes();
        let s = dual_schur(&part(&[2]), 1, &nodes, 5).unwrap();
        let (a, b) = (qq(1, 2), qq(-2, 3));
        // u^2/((1 - a u)(1 - b u)) = u^2 + (a+b) u^3 + (a²+ab+b²) u^4 + …
        assert_eq!(s.coeff(&[2]), Some(&Scalar::one()));
        assert_eq!(s.coeff(&[3]), Some(&(&a + &b)));
        assert_eq!(s.coeff(&[4]), Some(&(&a * &a + &a * &b + &b * &b)));
        assert!(s.coeff(&[1]).is_none());
    }

    #[test]
    fn solve_recovers_combination() {
        let nodes = sample_nodes();
        let k = 3;
        let d = 3;
        let basis: BTreeMap<_, _> =
            enumerate_box(Some(k), None, d).into_iter().map(|mu| (mu.clone(), dual_schur(&mu, k, &nodes, d).unwrap())).collect();
        let mut want = BTreeMap::new();
        want.insert(Partition::empty(), qq(2, 1));
        want.insert(part(&[1]), qq(-1, 3));
        want.insert(part(&[2, 1]), qq(5, 7));
        want.insert(part(&[1, 1, 1]), qq(1, 1));
        let mut rhs = InvSeries::zero(k, d);
        for (mu, c) in &want {
            rhs = rhs.add(&basis[mu].scale(c));
        }
        assert_eq!(solve_triangular(&rhs, &basis).unwrap(), want);
        let one = InvSeries::one(k, d);
        let got = solve_triangular(&one, &basis).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[&Partition::empty()], Scalar::one());
    }

    #[test]
    fn non_symmetric_rhs_is_inconsistent() {
        let nodes = sample_nodes();
        let basis: BTreeMap<_, _> =
            enumerate_box(Some(2), None, 2).into_iter().map(|mu| (mu.clone(), dual_schur(&mu, 2, &nodes, 2).unwrap())).collect();
        let mut rhs = InvSeries::zero(2, 2);
        rhs.add_term(vec![1, 0], Scalar::one());
        assert!(matches!(solve_triangular(&rhs, &basis), Err(Error::InconsistentSystem(_))));
    }
}
