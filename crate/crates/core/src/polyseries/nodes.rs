use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// Interpolation node sequence `c_0, c_1, …`, either listed or given by a rule.
#[derive(Clone)]
pub enum Nodes {
    Explicit(Vec<Scalar>),
    Rule(Arc<dyn Fn(usize) -> Scalar + Send + Sync>),
}

impl Nodes {
    pub fn explicit(v: Vec<Scalar>) -> Self {
        Nodes::Explicit(v)
    }

    pub fn rule(f: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> Self {
        Nodes::Rule(Arc::new(f))
    }

    pub fn get(&self, i: usize) -> Result<Scalar> {
        match self {
            Nodes::Explicit(v) => v.get(i).cloned().ok_or(Error::TooFewNodes { needed: i + 1, available: v.len() }),
            Nodes::Rule(f) => Ok(f(i)),
        }
    }

    /// `c_k, c_{k+1}, …`.
    pub fn shifted(&self, k: usize) -> Nodes {
        match self {
            Nodes::Explicit(v) => Nodes::Explicit(v.iter().skip(k).cloned().collect()),
            Nodes::Rule(f) => {
                let f = f.clone();
                Nodes::rule(move |i| f(i + k))
            }
        }
    }

    /// `c_i * s`.
    pub fn scaled(&self, s: &Scalar) -> Nodes {
        match self {
            Nodes::Explicit(v) => Nodes::Explicit(v.iter().map(|c| c * s).collect()),
            Nodes::Rule(f) => {
                let (f, s) = (f.clone(), s.clone());
                Nodes::rule(move |i| f(i) * &s)
            }
        }
    }

    pub fn take(&self, n: usize) -> Result<Vec<Scalar>> {
        (0..n).map(|i| self.get(i)).collect()
    }

    /// Type A nodes `c_i = q^{N-i-1}` for all `i ≥ 0`.
    pub fn type_a(q: &Scalar, n: usize) -> Nodes {
        let q = q.clone();
        Nodes::rule(move |i| q.pow(n as i64 - i as i64 - 1))
    }

    /// Type BC nodes `c_i = s q^i + s^{-1} q^{N-i-1}` for all `i ≥ 0`.
    pub fn type_bc(q: &Scalar, s: &Scalar, n: usize) -> Nodes {
        Nodes::two_sided(q, s, &s.inv(), n)
    }

    /// `c_i = s q^i + t q^{N-i-1}`; type A is `(s, t) = (0, 1)`.
    pub fn two_sided(q: &Scalar, s: &Scalar, t: &Scalar, n: usize) -> Nodes {
        let (q, s, t) = (q.clone(), s.clone(), t.clone());
        Nodes::rule(move |i| &s * &q.pow(i as i64) + &t * &q.pow(n as i64 - i as i64 - 1))
    }

    /// Nodes `t q^{K-2-i}` of the dual functions in the Cauchy identity of a
    /// two-sided scheme (`t = s^{-1}` for type BC, `t = 1` for type A).
    pub fn dual_geometric(q: &Scalar, t: &Scalar, k: usize) -> Nodes {
        let (q, t) = (q.clone(), t.clone());
        Nodes::rule(move |i| &t * &q.pow(k as i64 - 2 - i as i64))
    }
}

impl fmt::Debug for Nodes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = (0..4).filter_map(|i| self.get(i).ok()).map(|c| c.to_string()).collect();
        write!(f, "Nodes[{}, …]", shown.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;

    #[test]
    fn type_a_and_bc_rules() {
        let q = qq(1, 2);
        let a = Nodes::type_a(&q, 3);
        assert_eq!(a.take(5).unwrap(), vec![qq(1, 4), qq(1, 2), qq(1, 1), qq(2, 1), qq(4, 1)]);
        let s = qq(3, 1);
        let bc = Nodes::type_bc(&q, &s, 2);
        assert_eq!(bc.get(0).unwrap(), qq(3, 1) + qq(1, 6));
        assert_eq!(bc.get(1).unwrap(), qq(3, 2) + qq(1, 3));
        assert_eq!(bc.get(2).unwrap(), qq(3, 4) + qq(2, 3));
        assert_eq!(bc.shifted(2).get(0).unwrap(), qq(17, 12));
        assert_eq!(Nodes::two_sided(&q, &Scalar::zero(), &Scalar::one(), 3).take(4).unwrap(), a.take(4).unwrap());
    }
}
