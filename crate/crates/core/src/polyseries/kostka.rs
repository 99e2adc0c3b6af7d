//! Kostka numbers: the monomial expansion `s_λ = Σ_μ K_{λμ} m_μ`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::partition::{horizontal_strips_removed, partitions_of, Partition};

type Key = (Partition, Vec<usize>);

fn cache() -> &'static Mutex<HashMap<Key, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of semistandard tableaux of shape `lambda` and content `content`.
pub fn kostka(lambda: &Partition, content: &[usize]) -> u64 {
    let content: Vec<usize> = content.iter().copied().filter(|&c| c > 0).collect();
    if lambda.size() != content.iter().sum::<usize>() {
        return 0;
    }
    kostka_rec(lambda, &content)
}

fn kostka_rec(lambda: &Partition, content: &[usize]) -> u64 {
    if content.is_empty() {
        return u64::from(lambda.is_empty());
    }
    if lambda.len() > content.len() {
        return 0;
    }
    let key = (lambda.clone(), content.to_vec());
    if let Some(&v) = cache().lock().unwrap().get(&key) {
        return v;
    }
    // The largest entry fills a horizontal strip; strip it and recurse.
    let (&last, rest) = content.split_last().unwrap();
    let v = horizontal_strips_removed(lambda, last).iter().map(|nu| kostka_rec(nu, rest)).sum();
    cache().lock().unwrap().insert(key, v);
    v
}

/// Nonzero terms of `s_λ(x_1, …, x_n)` in the monomial symmetric basis.
pub fn schur_to_monomials(lambda: &Partition, n_vars: usize) -> Vec<(Partition, u64)> {
    if lambda.len() > n_vars {
        return Vec::new();
    }
    partitions_of(lambda.size(), Some(n_vars), None)
        .into_iter()
        .filter(|mu| lambda.dominates(mu))
        .filter_map(|mu| {
            let k = kostka(lambda, mu.parts());
            (k > 0).then_some((mu, k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;

    #[test]
    fn known_values() {
        assert_eq!(kostka(&part(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&part(&[3, 2]), &[2, 2, 1]), 2);
        assert_eq!(kostka(&part(&[2, 2]), &[1, 1, 1, 1]), 2);
        assert_eq!(kostka(&part(&[3, 1, 1]), &[1; 5]), 6);
        assert_eq!(kostka(&part(&[2, 1]), &[3]), 0);
        // content order is irrelevant
        assert_eq!(kostka(&part(&[3, 1]), &[1, 2, 1]), kostka(&part(&[3, 1]), &[2, 1, 1]));
    }

    #[test]
    fn hook_length_check() {
        // K_{λ,1^n} is the number of standard tableaux
        let f: Vec<u64> = partitions_of(5, None, None).iter().map(|l| kostka(l, &[1; 5])).collect();
        let sq: u64 = f.iter().map(|x| x * x).sum();
        assert_eq!(sq, 120);
    }
}
