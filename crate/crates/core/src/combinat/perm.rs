use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Permutation of `[h]` in one-line notation with values `1..=h`.
pub type Perm = Vec<usize>;

/// A set of positive integers.
pub type Subset = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermStats {
    pub descents: Subset,
    pub length: usize,
    pub maj: usize,
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma.iter().all(|&x| {
        if x == 0 || x > sigma.len() || seen[x - 1] {
            false
        } else {
            seen[x - 1] = true;
            true
        }
    })
}

pub fn descents(sigma: &[usize]) -> Subset {
    (1..sigma.len()).filter(|&i| sigma[i - 1] > sigma[i]).collect()
}

pub fn permutation_stats(sigma: &[usize]) -> PermStats {
    let d = descents(sigma);
    let mut length = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                length += 1;
            }
        }
    }
    let maj = d.iter().sum();
    PermStats {
        descents: d,
        length,
        maj,
    }
}

/// All permutations of `[h]` in lexicographic order.
pub fn permutations(h: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (1..=h).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..h).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..h).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A pair `(sigma, J)` with `Des(sigma) ⊆ J ⊆ [h-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeakOrdering {
    pub sigma: Perm,
    pub j: Subset,
}

impl WeakOrdering {
    pub fn new(sigma: Perm, j: Subset) -> Result<Self> {
        if !is_permutation(&sigma) {
            return Err(invalid(format!("{sigma:?} is not a permutation")));
        }
        if j.iter().any(|&x| x == 0 || x >= sigma.len()) {
            return Err(invalid(format!("{j:?} is not a subset of [h-1]")));
        }
        if !descents(&sigma).is_subset(&j) {
            return Err(invalid(format!("descents of {sigma:?} not contained in {j:?}")));
        }
        Ok(WeakOrdering { sigma, j })
    }

    pub fn identity(h: usize) -> Self {
        WeakOrdering {
            sigma: (1..=h).collect(),
            j: Subset::new(),
        }
    }

    pub fn h(&self) -> usize {
        self.sigma.len()
    }

    /// The ranked blocks `{sigma(t_{k-1}+1), ..., sigma(t_k)}` cut at `J`.
    pub fn blocks(&self) -> Vec<Subset> {
        let mut cuts: Vec<usize> = self.j.iter().copied().collect();
        cuts.push(self.h());
        let mut prev = 0;
        cuts.iter()
            .map(|&c| {
                let b = self.sigma[prev..c].iter().copied().collect();
                prev = c;
                b
            })
            .collect()
    }
}

fn subsets_of(items: &[usize]) -> Vec<Subset> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// `WO_h`, ordered by permutation then by the free positions of `J`.
pub fn weak_orderings(h: usize) -> Vec<WeakOrdering> {
    let mut out = Vec::new();
    for sigma in permutations(h) {
        let d = descents(&sigma);
        let free: Vec<usize> = (1..h).filter(|i| !d.contains(i)).collect();
        for extra in subsets_of(&free) {
            let j = d.union(&extra).copied().collect();
            out.push(WeakOrdering {
                sigma: sigma.clone(),
                j,
            });
        }
    }
    out
}

/// A strictly increasing chain of non-empty proper subsets of `[h]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Chain {
    pub subsets: Vec<Subset>,
}

impl Chain {
    pub fn new(h: usize, subsets: Vec<Subset>) -> Result<Self> {
        let ok = subsets
            .iter()
            .all(|s| !s.is_empty() && s.len() < h && s.iter().all(|&x| x >= 1 && x <= h))
            && subsets
                .windows(2)
                .all(|w| w[0].len() < w[1].len() && w[0].is_subset(&w[1]));
        if !ok {
            return Err(invalid(format!("{subsets:?} is not a chain in [{h}]")));
        }
        Ok(Chain { subsets })
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }
}

/// The poset `P_h` of chains, by depth-first extension.
pub fn chains(h: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    let full: u64 = (1 << h) - 1;
    let to_set = |mask: u64| -> Subset { (1..=h).filter(|i| mask >> (i - 1) & 1 == 1).collect() };
    fn rec(full: u64, last: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        let rest = full & !last;
        // proper supersets of `last`, excluding the full set
        let mut sub = rest;
        while sub != 0 {
            let next = last | sub;
            if next != full {
                cur.push(next);
                rec(full, next, cur, out);
                cur.pop();
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut raw = Vec::new();
    if h >= 1 {
        rec(full, 0, &mut Vec::new(), &mut raw);
    }
    for c in raw {
        out.push(Chain {
            subsets: c.into_iter().map(to_set).collect(),
        });
    }
    out.sort();
    out
}

/// `(sigma, J) -> ({sigma(1..j)})_{j in J}`.
pub fn phi(v: &WeakOrdering) -> Chain {
    Chain {
        subsets: v
            .j
            .iter()
            .map(|&j| v.sigma[..j].iter().copied().collect())
            .collect(),
    }
}

/// Inverse of [`phi`].
pub fn phi_inverse(h: usize, c: &Chain) -> WeakOrdering {
    let mut sigma = Vec::with_capacity(h);
    let mut prev = Subset::new();
    let mut j = Subset::new();
    let full: Subset = (1..=h).collect();
    for s in c.subsets.iter().chain(std::iter::once(&full)) {
        sigma.extend(s.difference(&prev).copied());
        if s.len() < h {
            j.insert(s.len());
        }
        prev = s.clone();
    }
    WeakOrdering { sigma, j }
}
