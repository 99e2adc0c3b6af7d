//! Dense multivariate polynomials. Used for the determinant-then-divide route to
//! alternant quotients, which cross-checks the minor expansion.

use std::collections::BTreeMap;

use super::multisym::MultiSymPoly;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::partition::Partition;

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(n_vars: usize) -> Self {
        MPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        let mut p = MPoly::zero(n_vars);
        p.add_term(vec![0; n_vars], Scalar::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// `p(x_var)` as a polynomial in all variables.
    pub fn from_univariate(p: &UniPoly, var: usize, n_vars: usize) -> Self {
        let mut out = MPoly::zero(n_vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; n_vars];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = MPoly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Exact division by `x_i - x_j`; errors if a remainder is left.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        // Group by the power of x_i, then run synthetic division with root x_j.
        let mut by_pow: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[i];
            rest[i] = 0;
            by_pow.entry(k).or_insert_with(|| MPoly::zero(self.n_vars)).add_term(rest, c.clone());
        }
        let Some(&top) = by_pow.keys().next_back() else {
            return Ok(self.clone());
        };
        let xj = {
            let mut e = vec![0; self.n_vars];
            e[j] = 1;
            let mut p = MPoly::zero(self.n_vars);
            p.add_term(e, Scalar::one());
            p
        };
        let mut quotient = MPoly::zero(self.n_vars);
        let mut carry = MPoly::zero(self.n_vars);
        for k in (0..=top).rev() {
            let pk = by_pow.remove(&k).unwrap_or_else(|| MPoly::zero(self.n_vars));
            let cur = pk.add(&carry);
            if k == 0 {
                if !cur.is_zero() {
                    return Err(Error::NonExactDivision);
                }
                break;
            }
            for (e, c) in &cur.terms {
                let mut e2 = e.clone();
                e2[i] = k - 1;
                quotient.add_term(e2, c.clone());
            }
            carry = cur.mul(&xj);
        }
        Ok(quotient)
    }

    /// Reads off the monomial symmetric coefficients; errors if not symmetric.
    pub fn to_symmetric(&self) -> Result<MultiSymPoly> {
        let mut out = MultiSymPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            let sorted = Partition::from_unsorted(e.iter().map(|&x| x as usize).collect());
            if e.windows(2).all(|w| w[0] >= w[1]) {
                out.add_term(sorted, c.clone());
            }
        }
        // Every monomial must carry the coefficient of its sorted representative.
        for (e, c) in &self.terms {
            let sorted = Partition::from_unsorted(e.iter().map(|&x| x as usize).collect());
            if &out.coeff(&sorted) != c {
                return Err(Error::InvalidArgument("polynomial is not symmetric".into()));
            }
        }
        Ok(out)
    }
}

/// `det[p_i(x_j)] / ∏_{i<j} (x_i - x_j)` by Leibniz expansion and repeated exact
/// division. Exponential in the number of rows; meant for small cross-checks.
pub fn alternant_quotient_by_division(rows: &[UniPoly]) -> Result<MultiSymPoly> {
    let n = rows.len();
    let entries: Vec<Vec<MPoly>> =
        rows.iter().map(|p| (0..n).map(|j| MPoly::from_univariate(p, j, n)).collect()).collect();
    let mut det = MPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p: &[usize]| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut t = MPoly::one(n);
        for (i, &pi) in p.iter().enumerate() {
            t = t.mul(&entries[i][pi]);
        }
        det = if inversions % 2 == 0 { det.add(&t) } else { det.sub(&t) };
    });
    for i in 0..n {
        for j in i + 1..n {
            det = det.divide_by_difference(i, j)?;
        }
    }
    det.to_symmetric()
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;

    #[test]
    fn vandermonde_quotient_is_one() {
        let rows: Vec<UniPoly> = (0..3).rev().map(|k| UniPoly::monomial(Scalar::one(), k)).collect();
        let q = alternant_quotient_by_division(&rows).unwrap();
        assert_eq!(q, MultiSymPoly::constant(3, Scalar::one()));
    }

    #[test]
    fn remainder_is_detected() {
        let x0 = MPoly::from_univariate(&UniPoly::x(), 0, 2);
        let p = x0.add(&MPoly::one(2).mul(&MPoly::from_univariate(&UniPoly::constant(qq(1, 2)), 1, 2)));
        assert_eq!(p.divide_by_difference(0, 1), Err(Error::NonExactDivision));
    }
}
