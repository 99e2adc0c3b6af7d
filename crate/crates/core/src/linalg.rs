//! Exact determinants over the Gaussian rationals.

use crate::exactnum::Scalar;

/// Determinant by Gaussian elimination with nonzero pivoting.
pub fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign_flip = false;
    let mut acc = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            m.swap(p, col);
            sign_flip = !sign_flip;
        }
        let pivot = m[col][col].clone();
        let inv = pivot.inv();
        acc = &acc * &pivot;
        let (top, below) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in below {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (x, p) in row[col + 1..n].iter_mut().zip(&prow[col + 1..n]) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            row[col] = Scalar::zero();
        }
    }
    if sign_flip {
        -acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qq;

    fn leibniz(m: &[Vec<Scalar>]) -> Scalar {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Scalar::zero();
        fn heap(k: usize, perm: &mut Vec<usize>, m: &[Vec<Scalar>], total: &mut Scalar) {
            if k == 1 {
                let inv = (0..perm.len())
                    .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                let prod: Scalar = perm.iter().enumerate().map(|(i, &p)| m[i][p].clone()).product();
                if inv % 2 == 0 {
                    *total += prod
                } else {
                    *total -= prod
                }
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, m, total);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1)
                } else {
                    perm.swap(0, k - 1)
                }
            }
        }
        heap(n, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn matches_leibniz_expansion() {
        let m: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| qq(((i * 7 + j * 3) % 5) as i64 - 2, (i + j + 1) as i64)).collect())
            .collect();
        assert_eq!(det(m.clone()), leibniz(&m));
        let mut sing = m.clone();
        sing[3] = sing[1].clone();
        assert!(det(sing).is_zero());
        let z: Scalar = "1/2+1*i".parse().unwrap();
        let c = vec![vec![z.clone(), qq(1, 3)], vec![qq(2, 1), z.conj()]];
        assert_eq!(det(c.clone()), leibniz(&c));
    }
}
