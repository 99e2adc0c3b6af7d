use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::kostka::schur_to_monomials;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::partition::{distinct_permutations, partitions_of, Partition};

/// Symmetric polynomial in `n_vars` variables, stored in the monomial symmetric basis.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct MultiSymPoly {
    n_vars: usize,
    terms: BTreeMap<Partition, Scalar>,
}

/// Coefficients of a symmetric function in the Schur basis.
pub type SchurCoeffs = BTreeMap<Partition, Scalar>;

impl MultiSymPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiSymPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Scalar) -> Self {
        let mut p = MultiSymPoly::zero(n_vars);
        p.add_term(Partition::empty(), c);
        p
    }

    /// `c * m_λ`; zero if `λ` has more than `n_vars` parts.
    pub fn monomial(n_vars: usize, lambda: Partition, c: Scalar) -> Self {
        let mut p = MultiSymPoly::zero(n_vars);
        if lambda.len() <= n_vars {
            p.add_term(lambda, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Scalar {
        self.terms.get(lambda).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, c: Scalar) {
        assert!(lambda.len() <= self.n_vars, "monomial {lambda} needs more than {} variables", self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&lambda) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                self.terms.insert(lambda, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.size()).max()
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        MultiSymPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().filter(|(k, _)| k.size() == d).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn top_homogeneous(&self) -> Self {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return MultiSymPoly::zero(self.n_vars);
        }
        MultiSymPoly { n_vars: self.n_vars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    fn same_vars(&self, other: &Self) {
        assert_eq!(self.n_vars, other.n_vars, "symmetric polynomials in different numbers of variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_vars(other);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Product, computed coefficientwise: the coefficient of `m_ν` in `F G` is the
    /// sum over exponent vectors `α` of `F`'s monomials with `ν - α` a monomial of `G`.
    pub fn mul(&self, other: &Self) -> Self {
        self.same_vars(other);
        let n = self.n_vars;
        let mut out = MultiSymPoly::zero(n);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let degs_f: BTreeSet<usize> = self.terms.keys().map(|k| k.size()).collect();
        let degs_g: BTreeSet<usize> = other.terms.keys().map(|k| k.size()).collect();
        let perms: Vec<(usize, Vec<Vec<usize>>, &Scalar)> =
            self.terms.iter().map(|(k, v)| (k.size(), distinct_permutations(&k.padded(n)), v)).collect();
        let degs: BTreeSet<usize> = degs_f.iter().flat_map(|a| degs_g.iter().map(move |b| a + b)).collect();
        for d in degs {
            for nu in partitions_of(d, Some(n), None) {
                let nv = nu.padded(n);
                let mut acc = Scalar::zero();
                for (sz, ps, fv) in &perms {
                    if *sz > d || !degs_g.contains(&(d - sz)) {
                        continue;
                    }
                    for alpha in ps {
                        if alpha.iter().zip(&nv).any(|(a, b)| a > b) {
                            continue;
                        }
                        let beta = Partition::from_unsorted(nv.iter().zip(alpha).map(|(b, a)| b - a).collect());
                        if let Some(gv) = other.terms.get(&beta) {
                            acc += *fv * gv;
                        }
                    }
                }
                out.add_term(nu, acc);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.n_vars, "evaluation point has wrong dimension");
        let max_deg = self.terms.keys().map(|k| k.first()).max().unwrap_or(0);
        let powers: Vec<Vec<Scalar>> =
            x.iter().map(|xi| (0..=max_deg).scan(Scalar::one(), |p, _| { let cur = p.clone(); *p = &*p * xi; Some(cur) }).collect()).collect();
        let mut total = Scalar::zero();
        for (lambda, c) in &self.terms {
            let mut s = Scalar::zero();
            for alpha in distinct_permutations(&lambda.padded(self.n_vars)) {
                let mut t = Scalar::one();
                for (i, &a) in alpha.iter().enumerate() {
                    if a > 0 {
                        t = &t * &powers[i][a];
                    }
                }
                s += t;
            }
            total += &s * c;
        }
        total
    }

    /// Sets the last variable to `c`, giving a polynomial in `n_vars - 1` variables.
    pub fn substitute_last(&self, c: &Scalar) -> Self {
        assert!(self.n_vars > 0);
        let n = self.n_vars;
        let mut out = MultiSymPoly::zero(n - 1);
        for (lambda, coef) in &self.terms {
            let padded = lambda.padded(n);
            let values: BTreeSet<usize> = padded.iter().copied().collect();
            for v in values {
                let mut rest = padded.clone();
                let pos = rest.iter().position(|&p| p == v).unwrap();
                rest.remove(pos);
                out.add_term(Partition::from_unsorted(rest), coef * &c.pow(v as i64));
            }
        }
        out
    }

    /// Expands `Σ a_λ s_λ(x_1, …, x_n)`; terms with more than `n` parts vanish.
    pub fn from_schur(coeffs: &SchurCoeffs, n_vars: usize) -> Self {
        let mut out = MultiSymPoly::zero(n_vars);
        for (lambda, a) in coeffs {
            for (mu, k) in schur_to_monomials(lambda, n_vars) {
                out.add_term(mu, a * &Scalar::from_int(k as i64));
            }
        }
        out
    }

    /// Schur coefficients, by peeling off the lexicographically largest monomial.
    pub fn to_schur(&self) -> SchurCoeffs {
        let mut rest = self.clone();
        let mut out = SchurCoeffs::new();
        while let Some((lambda, a)) = rest.terms.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            for (mu, k) in schur_to_monomials(&lambda, self.n_vars) {
                rest.add_term(mu, -(&a * &Scalar::from_int(k as i64)));
            }
            out.insert(lambda, a);
        }
        out
    }

    /// Complete homogeneous `h_k(x_1, …, x_n)`.
    pub fn complete(n_vars: usize, k: usize) -> Self {
        let mut p = MultiSymPoly::zero(n_vars);
        for mu in partitions_of(k, Some(n_vars), None) {
            p.add_term(mu, Scalar::one());
        }
        p
    }

    /// Elementary `e_k(x_1, …, x_n)`.
    pub fn elementary(n_vars: usize, k: usize) -> Self {
        MultiSymPoly::monomial(n_vars, Partition::from_unsorted(vec![1; k]), Scalar::one())
    }

    /// Jacobi–Trudi `det[h_{λ_i - i + j}]`, an independent route to Schur polynomials.
    pub fn jacobi_trudi(lambda: &Partition, n_vars: usize) -> Self {
        let l = lambda.len();
        let h = |k: i64| -> MultiSymPoly {
            if k < 0 {
                MultiSymPoly::zero(n_vars)
            } else {
                MultiSymPoly::complete(n_vars, k as usize)
            }
        };
        let m: Vec<Vec<MultiSymPoly>> = (0..l)
            .map(|i| (0..l).map(|j| h(lambda.part(i) as i64 - i as i64 + j as i64)).collect())
            .collect();
        det_laplace(&m, n_vars)
    }

    pub fn check_vars(&self, n: usize) -> Result<()> {
        if self.n_vars == n {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("expected {n} variables, found {}", self.n_vars)))
        }
    }
}

fn det_laplace(m: &[Vec<MultiSymPoly>], n_vars: usize) -> MultiSymPoly {
    let l = m.len();
    if l == 0 {
        return MultiSymPoly::constant(n_vars, Scalar::one());
    }
    let mut total = MultiSymPoly::zero(n_vars);
    for j in 0..l {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiSymPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
        let t = m[0][j].mul(&det_laplace(&minor, n_vars));
        total = if j % 2 == 0 { total.add(&t) } else { total.sub(&t) };
    }
    total
}

impl fmt::Debug for MultiSymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|(k, v)| format!("({v})m{k}")).collect();
        write!(f, "MultiSymPoly<{}>[{}]", self.n_vars, terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;
    use crate::partition::{enumerate_box, part};

    fn pt(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn product_matches_pointwise_evaluation() {
        let n = 3;
        let mut f = MultiSymPoly::zero(n);
        f.add_term(part(&[1]), qq(2, 1));
        f.add_term(part(&[1, 1]), qq(-1, 3));
        f.add_term(part(&[]), qq(1, 2));
        let mut g = MultiSymPoly::zero(n);
        g.add_term(part(&[2]), qq(1, 1));
        g.add_term(part(&[1, 1, 1]), qq(5, 1));
        let fg = f.mul(&g);
        for x in [pt(&[1, 2, 3]), pt(&[-1, 0, 4]), vec![qq(1, 2), qq(-3, 5), qq(7, 3)]] {
            assert_eq!(fg.eval(&x), f.eval(&x) * g.eval(&x));
        }
    }

    #[test]
    fn schur_roundtrip_and_jacobi_trudi() {
        for n in 1..=4 {
            for lambda in enumerate_box(Some(n), None, 5) {
                let s = MultiSymPoly::from_schur(&[(lambda.clone(), Scalar::one())].into_iter().collect(), n);
                assert_eq!(s, MultiSymPoly::jacobi_trudi(&lambda, n), "{lambda} n={n}");
                let back = s.to_schur();
                assert_eq!(back.len(), 1);
                assert_eq!(back[&lambda], Scalar::one());
            }
        }
    }

    #[test]
    fn substitution() {
        let mut f = MultiSymPoly::zero(3);
        f.add_term(part(&[2, 1]), qq(1, 1));
        f.add_term(part(&[1]), qq(3, 1));
        let c = qq(2, 3);
        let g = f.substitute_last(&c);
        let x = vec![qq(1, 5), qq(-2, 1)];
        let full = vec![x[0].clone(), x[1].clone(), c];
        assert_eq!(g.eval(&x), f.eval(&full));
    }
}
