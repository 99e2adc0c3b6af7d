//! Integer partitions and the combinatorics built on them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Nonincreasing sequence of positive integers, stored without trailing zeros.
///
/// Ordered graded-lexicographically: first by size, then by parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not nonincreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(k: usize) -> Self {
        Partition::from_unsorted(vec![k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_{i+1}` (0-based index), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n).map(|i| self.part(i)).collect()
    }

    pub fn conjugate(&self) -> Self {
        let w = self.first();
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `self ⊇ other` as Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n(&self) -> usize {
        self.0.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// `n(λ') = Σ C(λ_i, 2)`.
    pub fn n_conj(&self) -> usize {
        self.0.iter().map(|p| p * p.saturating_sub(1) / 2).sum()
    }

    /// Each part doubled and repeated twice: `(2λ1, 2λ1, 2λ2, 2λ2, …)`.
    pub fn doubled(&self) -> Self {
        Partition(self.0.iter().flat_map(|&p| [2 * p, 2 * p]).collect())
    }

    pub fn fits_box(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    /// Dominance order `self ≥ other` for partitions of equal size.
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<&[usize]> for Partition {
    type Error = Error;
    fn try_from(v: &[usize]) -> Result<Self> {
        Partition::new(v.to_vec())
    }
}

/// Literal partition, panicking on bad input. Meant for tests and fixtures.
pub fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).expect("literal partition")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Accepts `2,1`, `(2,1)`, `[2,1]`, and `[]` or `∅` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Partitions of `n` with at most `max_len` parts, each at most `max_part`,
/// in increasing lexicographic order.
pub fn partitions_of(n: usize, max_len: Option<usize>, max_part: Option<usize>) -> Vec<Partition> {
    fn rec(n: usize, cap: usize, len_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if len_left == 0 {
            return;
        }
        for p in (1..=cap.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part.unwrap_or(n), max_len.unwrap_or(n), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Partitions with at most `rows` parts, first part at most `cols` and size at most `d_max`,
/// in graded lexicographic order.
pub fn enumerate_box(rows: Option<usize>, cols: Option<usize>, d_max: usize) -> Vec<Partition> {
    (0..=d_max).flat_map(|d| partitions_of(d, rows, cols)).collect()
}

/// All `ν ⊆ λ`, graded lexicographic.
pub fn sub_partitions(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(l: &Partition, i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == l.len() {
            out.push(Partition::new(cur.clone()).unwrap());
            return;
        }
        for p in 0..=cap.min(l.part(i)) {
            cur.push(p);
            rec(l, i + 1, p, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 0, lambda.first(), &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// All `ν ⊇ μ` with `|ν| ≤ max_size` and at most `max_len` parts.
pub fn super_partitions(mu: &Partition, max_size: usize, max_len: usize) -> Vec<Partition> {
    enumerate_box(Some(max_len), None, max_size).into_iter().filter(|nu| nu.contains(mu)).collect()
}

/// All `ν ⊆ λ` such that `λ/ν` is a horizontal strip with `k` boxes.
pub fn horizontal_strips_removed(lambda: &Partition, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(lam: &Partition, i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let l = lam.len();
        if i == l {
            if left == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
            }
            return;
        }
        let hi = lam.part(i);
        let lo = lam.part(i + 1);
        for v in (lo..=hi).rev() {
            let take = hi - v;
            if take > left {
                break;
            }
            cur.push(v);
            rec(lam, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part(&[2, 1]));
        assert_eq!("(3,1,1)".parse::<Partition>().unwrap(), part(&[3, 1, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,x".parse::<Partition>().is_err());
    }

    #[test]
    fn statistics() {
        let l = part(&[3, 1]);
        assert_eq!(l.conjugate(), part(&[2, 1, 1]));
        assert_eq!(l.n(), 1);
        assert_eq!(l.n_conj(), 3);
        assert_eq!(l.conjugate().n(), l.n_conj());
        assert_eq!(l.doubled(), part(&[6, 6, 2, 2]));
    }

    #[test]
    fn box_enumeration_matches_hand_list() {
        let got = enumerate_box(Some(2), Some(2), 4);
        let want: Vec<Partition> =
            [&[][..], &[1], &[1, 1], &[2], &[2, 1], &[2, 2]].iter().map(|p| part(p)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions_of(n, None, None).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        // Partitions in an a-by-b box are counted by binomial(a+b, a).
        assert_eq!(enumerate_box(Some(3), Some(2), 100).len(), 10);
        assert_eq!(enumerate_box(Some(4), Some(3), 100).len(), 35);
    }

    #[test]
    fn strips_and_permutations() {
        let got = horizontal_strips_removed(&part(&[2, 1]), 1);
        assert_eq!(got, vec![part(&[2]), part(&[1, 1])]);
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 1, 0]).len(), 12);
        assert_eq!(sub_partitions(&part(&[2, 1])).len(), 5);
    }

    #[test]
    fn dominance() {
        assert!(part(&[3]).dominates(&part(&[2, 1])));
        assert!(!part(&[2, 2]).dominates(&part(&[3, 1])));
    }
}
