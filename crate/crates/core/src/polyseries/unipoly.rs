use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::nodes::Nodes;
use crate::error::Result;
use crate::exactnum::Scalar;

/// Dense univariate polynomial; `coeffs[k]` multiplies `x^k`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        UniPoly::from_coeffs(v)
    }

    /// `x - a`.
    pub fn linear(a: &Scalar) -> Self {
        UniPoly::from_coeffs(vec![-a, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(r x)`.
    pub fn rescale_var(&self, r: &Scalar) -> Self {
        let mut pw = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw = &pw * r;
        }
        UniPoly::from_coeffs(out)
    }

    /// Newton power `(x | c)^m = ∏_{i<m} (x - c_i)`.
    pub fn newton_power(nodes: &Nodes, m: usize) -> Result<Self> {
        let mut p = UniPoly::one();
        for i in 0..m {
            p = &p * &UniPoly::linear(&nodes.get(i)?);
        }
        Ok(p)
    }

    /// `Σ_m a_m (x | c)^m`.
    pub fn from_newton(a: &[Scalar], nodes: &Nodes) -> Result<Self> {
        let mut acc = UniPoly::zero();
        let mut basis = UniPoly::one();
        for (m, am) in a.iter().enumerate() {
            if !am.is_zero() {
                acc = &acc + &basis.scale(am);
            }
            if m + 1 < a.len() {
                basis = &basis * &UniPoly::linear(&nodes.get(m)?);
            }
        }
        Ok(acc)
    }

    /// Largest absolute coefficient difference, as `f64`, for reporting.
    pub fn max_coeff_diff(&self, other: &UniPoly) -> Scalar {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut best = Scalar::zero();
        for k in 0..n {
            let d = (self.coeff(k) - other.coeff(k)).abs_real().unwrap_or_else(|_| Scalar::zero());
            if d.partial_cmp_real(&best) == Some(std::cmp::Ordering::Greater) {
                best = d;
            }
        }
        best
    }
}

fn add_impl(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    UniPoly::from_coeffs((0..n).map(|k| a.coeff(k) + b.coeff(k)).collect())
}

fn sub_impl(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    UniPoly::from_coeffs((0..n).map(|k| a.coeff(k) - b.coeff(k)).collect())
}

fn mul_impl(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![Scalar::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    UniPoly::from_coeffs(out)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        add_impl(self, rhs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        sub_impl(self, rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        mul_impl(self, rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add<&UniPoly> for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        add_impl(&self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;

    #[test]
    fn arithmetic_and_eval() {
        let p = UniPoly::from_coeffs(vec![qq(1, 2), qq(-1, 1), qq(3, 1)]);
        let q = UniPoly::linear(&qq(2, 3));
        let pq = &p * &q;
        let x = qq(5, 7);
        assert_eq!(pq.eval(&x), p.eval(&x) * q.eval(&x));
        assert_eq!((&pq - &pq).degree(), None);
        assert_eq!(p.rescale_var(&qq(2, 1)).eval(&x), p.eval(&(qq(2, 1) * x)));
    }

    #[test]
    fn newton_basis_roundtrip() {
        let nodes = Nodes::explicit(vec![qq(1, 1), qq(1, 2), qq(1, 4)]);
        let p = UniPoly::from_newton(&[qq(2, 1), qq(0, 1), qq(-1, 3), qq(1, 1)], &nodes).unwrap();
        let direct = UniPoly::constant(qq(2, 1))
            + &(UniPoly::newton_power(&nodes, 2).unwrap().scale(&qq(-1, 3)))
            + &UniPoly::newton_power(&nodes, 3).unwrap();
        assert_eq!(p, direct);
        assert!(UniPoly::newton_power(&nodes, 4).is_err());
    }
}
