//! Truncated power series in `u_j = 1/y_j`, with coefficients in a module over the scalars.

use std::collections::BTreeMap;
use std::fmt::Debug;

use super::kostka::schur_to_monomials;
use super::multisym::{MultiSymPoly, SchurCoeffs};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::partition::{distinct_permutations, Partition};

/// Coefficient module: addition and scaling by exact scalars.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }
}

/// Coefficient ring.
pub trait Ring: Coeff {
    fn mul(&self, o: &Self) -> Self;
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl Ring for Scalar {
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coeff for MultiSymPoly {
    fn is_zero(&self) -> bool {
        MultiSymPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        MultiSymPoly::add(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        MultiSymPoly::scale(self, s)
    }
}

impl Ring for MultiSymPoly {
    fn mul(&self, o: &Self) -> Self {
        MultiSymPoly::mul(self, o)
    }
}

/// Series `Σ_α c_α u^α` over exponent vectors with `|α| ≤ max_degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct InvSeries<C> {
    n_vars: usize,
    max_degree: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

fn deg(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl<C: Coeff> InvSeries<C> {
    pub fn zero(n_vars: usize, max_degree: usize) -> Self {
        InvSeries { n_vars, max_degree, terms: BTreeMap::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&C> {
        self.terms.get(e)
    }

    /// Adds `c u^e`; terms beyond the truncation degree are dropped.
    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        assert_eq!(e.len(), self.n_vars);
        if deg(&e) > self.max_degree || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n_vars, o.n_vars, "series in different numbers of variables");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = self.clone();
        out.max_degree = self.max_degree.min(o.max_degree);
        out.terms.retain(|e, _| deg(e) <= out.max_degree);
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = InvSeries::zero(self.n_vars, self.max_degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(s));
        }
        out
    }

    /// Product with a scalar series.
    pub fn act(&self, s: &InvSeries<Scalar>) -> Self {
        assert_eq!(self.n_vars, s.n_vars);
        let d = self.max_degree.min(s.max_degree);
        let mut out = InvSeries::zero(self.n_vars, d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &s.terms {
                if deg(ea) + deg(eb) <= d {
                    out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca.scale(cb));
                }
            }
        }
        out
    }

    /// Coefficients at nonincreasing exponents: the monomial symmetric expansion
    /// when the series is symmetric.
    pub fn symmetric_coeffs(&self) -> BTreeMap<Partition, C> {
        self.terms
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (Partition::from_unsorted(e.iter().map(|&x| x as usize).collect()), c.clone()))
            .collect()
    }

    /// Symmetric series from monomial symmetric coefficients.
    pub fn from_monomial_symmetric(coeffs: &BTreeMap<Partition, C>, n_vars: usize, max_degree: usize) -> Self {
        let mut out = InvSeries::zero(n_vars, max_degree);
        for (lambda, c) in coeffs {
            if lambda.len() > n_vars || lambda.size() > max_degree {
                continue;
            }
            for alpha in distinct_permutations(&lambda.padded(n_vars)) {
                out.add_term(alpha.iter().map(|&a| a as u32).collect(), c.clone());
            }
        }
        out
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut out = InvSeries::zero(self.n_vars, max_degree.min(self.max_degree));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Ring> InvSeries<C> {
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.max_degree.min(o.max_degree);
        let mut out = InvSeries::zero(self.n_vars, d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                if deg(ea) + deg(eb) <= d {
                    out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca.mul(cb));
                }
            }
        }
        out
    }

    /// `∏_j f(u_j)` for a univariate series `f = Σ_k f[k] u^k`.
    ///
    /// The product is symmetric, so only nonincreasing exponents are multiplied out.
    pub fn product_of_univariate(f: &[C], one: &C, n_vars: usize, max_degree: usize) -> Self {
        let mut sym = BTreeMap::new();
        for d in 0..=max_degree {
            for lambda in crate::partition::partitions_of(d, Some(n_vars), None) {
                let padded = lambda.padded(n_vars);
                let mut acc = one.clone();
                let mut ok = true;
                for &a in &padded {
                    match f.get(a) {
                        Some(fa) => acc = acc.mul(fa),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    sym.insert(lambda, acc);
                }
            }
        }
        InvSeries::from_monomial_symmetric(&sym, n_vars, max_degree)
    }
}

impl InvSeries<Scalar> {
    pub fn one(n_vars: usize, max_degree: usize) -> Self {
        let mut s = InvSeries::zero(n_vars, max_degree);
        s.add_term(vec![0; n_vars], Scalar::one());
        s
    }

    /// `Σ_λ a_λ s_λ(u_1, …, u_n)` truncated at `max_degree`.
    pub fn from_schur(coeffs: &SchurCoeffs, n_vars: usize, max_degree: usize) -> Self {
        let mut mono: BTreeMap<Partition, Scalar> = BTreeMap::new();
        for (lambda, a) in coeffs {
            if lambda.size() > max_degree {
                continue;
            }
            for (mu, k) in schur_to_monomials(lambda, n_vars) {
                let e = mono.entry(mu).or_insert_with(Scalar::zero);
                *e += a * &Scalar::from_int(k as i64);
            }
        }
        mono.retain(|_, v| !v.is_zero());
        InvSeries::from_monomial_symmetric(&mono, n_vars, max_degree)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let zero_e = vec![0u32; self.n_vars];
        let c0 = self.coeff(&zero_e).cloned().ok_or(Error::DivisionByZero)?;
        let c0i = c0.inv();
        // g = c0^{-1} Σ_k (1 - f/c0)^k, a nilpotent geometric series up to max_degree.
        let t = InvSeries::one(self.n_vars, self.max_degree).sub(&self.scale(&c0i));
        let mut acc = InvSeries::one(self.n_vars, self.max_degree);
        let mut pw = InvSeries::one(self.n_vars, self.max_degree);
        for _ in 0..self.max_degree {
            pw = pw.mul(&t);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&c0i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;

    #[test]
    fn inverse_of_scalar_series() {
        let mut f = InvSeries::one(2, 4);
        f.add_term(vec![1, 0], qq(1, 2));
        f.add_term(vec![0, 1], qq(-1, 3));
        f.add_term(vec![1, 1], qq(2, 1));
        let g = f.inverse().unwrap();
        assert_eq!(f.mul(&g), InvSeries::one(2, 4));
    }

    #[test]
    fn product_of_univariate_matches_direct() {
        let f = vec![qq(1, 1), qq(1, 2), qq(1, 4), qq(1, 8)];
        let p = InvSeries::product_of_univariate(&f, &Scalar::one(), 3, 3);
        let mut direct = InvSeries::one(3, 3);
        for j in 0..3 {
            let mut fj = InvSeries::zero(3, 3);
            for (k, c) in f.iter().enumerate() {
                let mut e = vec![0; 3];
                e[j] = k as u32;
                fj.add_term(e, c.clone());
            }
            direct = direct.mul(&fj);
        }
        assert_eq!(p, direct);
    }
}
