use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Non-increasing tuple of non-negative integers of fixed length;
/// trailing zeros are kept. Indexing through [`Partition::part`] is
/// 1-based to match the usual notation, with `part(n + 1) = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    pub fn zeros(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    /// Sorts arbitrary entries into non-increasing order.
    pub fn sorted(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: entries }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `lambda_i` for `i >= 1`; zero beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1, "parts are indexed from 1");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Componentwise `self <= other` for partitions of equal length.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        self.len() == other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn dual(&self) -> Partition {
        dual_partition(self)
    }

    /// Number of parts `>= k`, i.e. `lambda'_k`; zero for `k = 0` is
    /// never asked for.
    pub fn dual_part(&self, k: u32) -> u32 {
        self.parts.iter().filter(|&&x| x >= k).count() as u32
    }

    /// `{ j in [n-1] : lambda_j > lambda_{j+1} }`.
    pub fn drop_set(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&j| self.part(j) > self.part(j + 1))
            .collect()
    }
}

/// `lambda'_i = #{ j : lambda_j >= i }`, without trailing zeros.
pub fn dual_partition(lambda: &Partition) -> Partition {
    let parts = (1..=lambda.largest()).map(|k| lambda.dual_part(k)).collect();
    Partition { parts }
}

/// All partitions `mu` of the same length with `mu <= lambda`.
pub fn partitions_below(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.len());
    fn rec(lambda: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let i = cur.len();
        if i == lambda.len() {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let cap = lambda.parts[i].min(cur.last().copied().unwrap_or(u32::MAX));
        for x in 0..=cap {
            cur.push(x);
            rec(lambda, cur, out);
            cur.pop();
        }
    }
    rec(lambda, &mut cur, &mut out);
    out
}

/// Partitions below `lambda` with a prescribed size.
pub fn partitions_below_of_size(lambda: &Partition, size: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.len());
    fn rec(lambda: &Partition, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let i = cur.len();
        if i == lambda.len() {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
            }
            return;
        }
        let cap = lambda.parts[i]
            .min(cur.last().copied().unwrap_or(u32::MAX))
            .min(left.min(u32::MAX as u64) as u32);
        let rest = (lambda.len() - i) as u64;
        for x in (0..=cap).rev() {
            if (x as u64) * rest < left {
                break;
            }
            cur.push(x);
            rec(lambda, left - x as u64, cur, out);
            cur.pop();
        }
    }
    rec(lambda, size, &mut cur, &mut out);
    out.reverse();
    out
}

/// All partitions with `n` parts each at most `max_part`.
pub fn partitions_in_box(n: usize, max_part: u32) -> Vec<Partition> {
    partitions_below(&Partition {
        parts: vec![max_part; n],
    })
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(part(&[2, 2, 1]).dual(), part(&[3, 2]));
        assert_eq!(part(&[0, 0, 0]).dual(), part(&[]));
        assert_eq!(part(&[4]).dual(), part(&[1, 1, 1, 1]));
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // partitions in a 2 x 3 box: C(5,2) = 10
        assert_eq!(partitions_in_box(2, 3).len(), 10);
        let lam = part(&[3, 2, 1]);
        let all = partitions_below(&lam);
        for s in 0..=6 {
            let by_size: Vec<_> = all.iter().filter(|m| m.size() == s).cloned().collect();
            let mut direct = partitions_below_of_size(&lam, s);
            direct.sort();
            let mut by_size_sorted = by_size.clone();
            by_size_sorted.sort();
            assert_eq!(direct, by_size_sorted);
        }
        assert!(all.iter().all(|m| m.dominated_by(&lam)));
    }
}
