use serde::Serialize;

use super::dyck::{block_decomposition, DyckWord};
use super::perm::{Subset, WeakOrdering};
use crate::error::{invalid, Result};

/// Ordered tuple of disjoint non-empty blocks covering `[g]`; each block
/// is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderedSetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(g: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; g];
        for b in blocks.iter_mut() {
            b.sort_unstable();
            if b.is_empty() {
                return Err(invalid("empty block"));
            }
            for &x in b.iter() {
                if x == 0 || x > g || seen[x - 1] {
                    return Err(invalid(format!("bad or repeated element {x}")));
                }
                seen[x - 1] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("blocks do not cover [g]"));
        }
        Ok(OrderedSetPartition { blocks })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i - 1]
    }
}

/// A decomposition type: ramification indices `e` and inertia degrees
/// `f` of the primes above `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DecompType {
    e: Vec<u32>,
    f: Vec<u32>,
}

impl DecompType {
    pub fn new(e: Vec<u32>, f: Vec<u32>) -> Result<Self> {
        if e.is_empty() || e.len() != f.len() || e.iter().chain(&f).any(|&x| x == 0) {
            return Err(invalid(format!("invalid decomposition type e={e:?}, f={f:?}")));
        }
        Ok(DecompType { e, f })
    }

    pub fn unramified(f: Vec<u32>) -> Result<Self> {
        DecompType::new(vec![1; f.len()], f)
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn f(&self) -> &[u32] {
        &self.f
    }

    pub fn g(&self) -> usize {
        self.f.len()
    }

    pub fn n(&self) -> usize {
        self.c(self.g())
    }

    /// `C_i = sum_{j <= i} e_j f_j`, with `C_0 = 0`.
    pub fn c(&self, i: usize) -> usize {
        self.e[..i]
            .iter()
            .zip(&self.f)
            .map(|(&a, &b)| (a * b) as usize)
            .sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.e.iter().all(|&x| x == 1)
    }
}

/// All compositions of `n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=left {
            cur.push(k as u32);
            rec(left - k, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

fn weight(f: &[u32], block: &[usize]) -> usize {
    block.iter().map(|&j| f[j - 1] as usize).sum()
}

/// Ordered set partitions `(A_1, ..., A_r)` of `[g]` with
/// `sum_{j in A_i} f_j = L_i - L_{i-1}`.
pub fn compatible_partitions(w: &DyckWord, f: &[u32]) -> Vec<OrderedSetPartition> {
    let bd = block_decomposition(w);
    let g = f.len();
    let targets: Vec<usize> = (1..=bd.r()).map(|i| bd.L(i) - bd.L(i - 1)).collect();
    if f.iter().map(|&x| x as usize).sum::<usize>() != bd.n() {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(
        f: &[u32],
        targets: &[usize],
        free: u64,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<OrderedSetPartition>,
    ) {
        let i = cur.len();
        if i == targets.len() {
            if free == 0 {
                out.push(OrderedSetPartition {
                    blocks: cur.clone(),
                });
            }
            return;
        }
        let mut sub = free;
        let mut options = Vec::new();
        while sub != 0 {
            let block: Vec<usize> = (1..=f.len()).filter(|j| sub >> (j - 1) & 1 == 1).collect();
            if weight(f, &block) == targets[i] {
                options.push((sub, block));
            }
            sub = (sub - 1) & free;
        }
        options.sort_by(|a, b| a.1.cmp(&b.1));
        for (mask, block) in options {
            cur.push(block);
            rec(f, targets, free & !mask, cur, out);
            cur.pop();
        }
    }
    rec(f, &targets, (1u64 << g) - 1, &mut Vec::new(), &mut out);
    out
}

/// `phi_A(v_1, ..., v_r)`: concatenates the orderings of the blocks,
/// relabelled through the sorted elements of each `A_i`.
pub fn phi_a(a: &OrderedSetPartition, vs: &[WeakOrdering]) -> Result<WeakOrdering> {
    if a.len() != vs.len() || a.blocks.iter().zip(vs).any(|(b, v)| b.len() != v.h()) {
        return Err(invalid("weak orderings do not match block sizes"));
    }
    let mut sigma = Vec::new();
    let mut j = Subset::new();
    let mut t = 0;
    for (i, (block, v)) in a.blocks.iter().zip(vs).enumerate() {
        if i > 0 {
            j.insert(t);
        }
        sigma.extend(v.sigma.iter().map(|&s| block[s - 1]));
        j.extend(v.j.iter().map(|&x| t + x));
        t += block.len();
    }
    WeakOrdering::new(sigma, j)
}

/// `A(w, v)`: the partition cut from `v` at the positions `t_i` with
/// `C^v_{t_i} = L_i`, provided every such `t_i` lies in `J_v`.
pub fn partition_of(w: &DyckWord, f: &[u32], v: &WeakOrdering) -> Option<OrderedSetPartition> {
    let bd = block_decomposition(w);
    let g = f.len();
    if v.h() != g {
        return None;
    }
    let mut cum = vec![0usize; g + 1];
    for k in 1..=g {
        cum[k] = cum[k - 1] + f[v.sigma[k - 1] - 1] as usize;
    }
    if cum[g] != bd.n() {
        return None;
    }
    let mut ts = vec![0];
    for i in 1..bd.r() {
        let t = (1..g).find(|&k| cum[k] == bd.L(i))?;
        if !v.j.contains(&t) {
            return None;
        }
        ts.push(t);
    }
    ts.push(g);
    let blocks = ts
        .windows(2)
        .map(|w| {
            let mut b = v.sigma[w[0]..w[1]].to_vec();
            b.sort_unstable();
            b
        })
        .collect();
    Some(OrderedSetPartition { blocks })
}

/// Inverse of [`phi_a`] on its image.
pub fn split_by_partition(a: &OrderedSetPartition, v: &WeakOrdering) -> Option<Vec<WeakOrdering>> {
    let mut out = Vec::new();
    let mut t = 0;
    for (i, block) in a.blocks.iter().enumerate() {
        let h = block.len();
        if t + h > v.h() || (i > 0 && !v.j.contains(&t)) {
            return None;
        }
        let sigma: Option<Vec<usize>> = v.sigma[t..t + h]
            .iter()
            .map(|x| block.iter().position(|b| b == x).map(|k| k + 1))
            .collect();
        let j = v.j.iter().filter(|&&x| x > t && x < t + h).map(|&x| x - t).collect();
        out.push(WeakOrdering::new(sigma?, j).ok()?);
        t += h;
    }
    (t == v.h()).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::perm::weak_orderings;

    fn w(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    #[test]
    fn compatible_examples() {
        assert_eq!(compatible_partitions(&w("00110011"), &[1, 1, 1, 1]).len(), 6);
        let a = compatible_partitions(&w("00001111"), &[2, 2]);
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].blocks, vec![vec![1, 2]]);
        // n = 4, L = (3, 4)
        let b = compatible_partitions(&w("00010111"), &[3, 1]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].blocks, vec![vec![1], vec![2]]);
    }

    #[test]
    fn decomposition_type() {
        let d = DecompType::new(vec![2, 1], vec![1, 3]).unwrap();
        assert_eq!((d.g(), d.n(), d.c(1)), (2, 5, 2));
        assert!(!d.is_unramified());
        assert_eq!(compositions(4).len(), 8);
    }

    #[test]
    fn phi_a_image_is_fibre_of_partition_map() {
        for f in [vec![1, 1, 1], vec![1, 2], vec![2, 1, 1]] {
            let n: usize = f.iter().map(|&x| x as usize).sum();
            for word in crate::combinat::dyck::dyck_words(n) {
                for a in compatible_partitions(&word, &f) {
                    let lists: Vec<Vec<WeakOrdering>> =
                        a.blocks.iter().map(|b| weak_orderings(b.len())).collect();
                    let mut image = Vec::new();
                    let mut idx = vec![0; lists.len()];
                    'outer: loop {
                        let vs: Vec<WeakOrdering> =
                            idx.iter().zip(&lists).map(|(&k, l)| l[k].clone()).collect();
                        let v = phi_a(&a, &vs).unwrap();
                        assert_eq!(split_by_partition(&a, &v).unwrap(), vs);
                        image.push(v);
                        for k in (0..idx.len()).rev() {
                            idx[k] += 1;
                            if idx[k] < lists[k].len() {
                                continue 'outer;
                            }
                            idx[k] = 0;
                        }
                        break;
                    }
                    let mut fibre: Vec<WeakOrdering> = weak_orderings(f.len())
                        .into_iter()
                        .filter(|v| partition_of(&word, &f, v).as_ref() == Some(&a))
                        .collect();
                    let before = image.len();
                    image.sort();
                    image.dedup();
                    assert_eq!(image.len(), before);
                    fibre.sort();
                    assert_eq!(image, fibre);
                }
            }
        }
    }
}
