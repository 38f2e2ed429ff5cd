use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use crate::error::{invalid, Error, Result};

/// Balanced word over {0, 1}: `n` zeros, `n` ones, and no prefix with
/// more ones than zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord {
    letters: Vec<u8>,
}

impl DyckWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let mut depth: i64 = 0;
        for &c in &letters {
            match c {
                0 => depth += 1,
                1 => depth -= 1,
                _ => return Err(invalid("Dyck letters are 0 and 1")),
            }
            if depth < 0 {
                return Err(invalid("prefix with more ones than zeros"));
            }
        }
        if depth != 0 || letters.is_empty() {
            return Err(invalid("unbalanced or empty word"));
        }
        Ok(DyckWord { letters })
    }

    /// `0^n 1^n`.
    pub fn trivial(n: usize) -> Self {
        let mut letters = vec![0; n];
        letters.extend(vec![1; n]);
        DyckWord { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Half the length.
    pub fn n(&self) -> usize {
        self.letters.len() / 2
    }
}

impl FromStr for DyckWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(invalid(format!("bad Dyck letter {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        DyckWord::new(letters)
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for DyckWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All Dyck words of length `2n` in lexicographic order.
pub fn dyck_words(n: usize) -> Vec<DyckWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(2 * n);
    fn rec(n: usize, zeros: usize, ones: usize, cur: &mut Vec<u8>, out: &mut Vec<DyckWord>) {
        if zeros == n && ones == n {
            out.push(DyckWord {
                letters: cur.clone(),
            });
            return;
        }
        if zeros < n {
            cur.push(0);
            rec(n, zeros + 1, ones, cur, out);
            cur.pop();
        }
        if ones < zeros {
            cur.push(1);
            rec(n, zeros, ones + 1, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, 0, 0, &mut cur, &mut out);
    }
    out
}

/// The integers `L_1 < ... < L_r = n` and `M_1 < ... < M_r = n` of a
/// Dyck word `prod 0^{L_i - L_{i-1}} 1^{M_i - M_{i-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlockDecomposition {
    l: Vec<usize>,
    m: Vec<usize>,
}

impl BlockDecomposition {
    pub fn new(l: Vec<usize>, m: Vec<usize>) -> Result<Self> {
        let ok = !l.is_empty()
            && l.len() == m.len()
            && l.windows(2).all(|w| w[0] < w[1])
            && m.windows(2).all(|w| w[0] < w[1])
            && l.last() == m.last()
            && l[0] > 0
            && m[0] > 0
            && l.iter().zip(&m).all(|(a, b)| a >= b);
        if !ok {
            return Err(invalid(format!("invalid block data L={l:?}, M={m:?}")));
        }
        Ok(BlockDecomposition { l, m })
    }

    pub fn r(&self) -> usize {
        self.l.len()
    }

    pub fn n(&self) -> usize {
        *self.l.last().unwrap()
    }

    /// `L_i` for `i` in `0..=r`.
    #[allow(non_snake_case)]
    pub fn L(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.l[i - 1]
        }
    }

    /// `M_i` for `i` in `0..=r`.
    #[allow(non_snake_case)]
    pub fn M(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.m[i - 1]
        }
    }

    pub fn l_list(&self) -> &[usize] {
        &self.l
    }

    pub fn m_list(&self) -> &[usize] {
        &self.m
    }

    /// `{L_1, ..., L_{r-1}}`.
    pub fn l_set(&self) -> Vec<usize> {
        self.l[..self.l.len() - 1].to_vec()
    }

    pub fn word(&self) -> DyckWord {
        let mut letters = Vec::with_capacity(2 * self.n());
        for i in 1..=self.r() {
            letters.extend(std::iter::repeat_n(0, self.L(i) - self.L(i - 1)));
            letters.extend(std::iter::repeat_n(1, self.M(i) - self.M(i - 1)));
        }
        DyckWord { letters }
    }
}

pub fn block_decomposition(w: &DyckWord) -> BlockDecomposition {
    let (mut l, mut m) = (Vec::new(), Vec::new());
    let (mut zeros, mut ones) = (0, 0);
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        while i < letters.len() && letters[i] == 0 {
            zeros += 1;
            i += 1;
        }
        while i < letters.len() && letters[i] == 1 {
            ones += 1;
            i += 1;
        }
        l.push(zeros);
        m.push(ones);
    }
    BlockDecomposition { l, m }
}

/// The decomposition data of a dominated pair `mu <= lambda`, found
/// greedily: `L_i` is the largest index with `lambda_{L_i} >=
/// mu_{M_{i-1}+1}`, and `M_i` the largest with `mu_{M_i} > lambda_{L_i+1}`.
pub fn pair_decomposition(mu: &Partition, lambda: &Partition) -> Result<BlockDecomposition> {
    let n = lambda.len();
    if !mu.dominated_by(lambda) || n == 0 {
        return Err(invalid(format!("{mu} is not dominated by {lambda}")));
    }
    let (mut l, mut m) = (Vec::new(), Vec::new());
    let mut m_prev = 0;
    loop {
        let target = mu.part(m_prev + 1);
        let li = (1..=n).rev().find(|&j| lambda.part(j) >= target).unwrap_or(0);
        if li == n {
            l.push(n);
            m.push(n);
            break;
        }
        let next = lambda.part(li + 1);
        let mi = (1..=n).rev().find(|&j| mu.part(j) > next).unwrap_or(0);
        if li == 0 || mi <= m_prev || mi > li {
            return Err(invalid(format!("{mu} is not dominated by {lambda}")));
        }
        l.push(li);
        m.push(mi);
        m_prev = mi;
    }
    BlockDecomposition::new(l, m)
}

pub fn dyck_of_pair(mu: &Partition, lambda: &Partition) -> Result<DyckWord> {
    Ok(pair_decomposition(mu, lambda)?.word())
}

/// Whether `bd` satisfies the interleaving chain for `(mu, lambda)`:
/// `lambda_1 >= .. >= lambda_{L_1} >= mu_1 >= .. >= mu_{M_1} >
/// lambda_{L_1+1} >= ..`. Used to validate the greedy decomposition.
pub fn satisfies_chain(mu: &Partition, lambda: &Partition, bd: &BlockDecomposition) -> bool {
    if bd.n() != lambda.len() || mu.len() != lambda.len() {
        return false;
    }
    // (value, strict-before) sequence
    let mut seq: Vec<(u32, bool)> = Vec::new();
    for i in 1..=bd.r() {
        for j in bd.L(i - 1) + 1..=bd.L(i) {
            seq.push((lambda.part(j), j == bd.L(i - 1) + 1 && i > 1));
        }
        for j in bd.M(i - 1) + 1..=bd.M(i) {
            seq.push((mu.part(j), false));
        }
    }
    seq.windows(2).all(|w| {
        let (a, _) = w[0];
        let (b, strict) = w[1];
        if strict {
            a > b
        } else {
            a >= b
        }
    })
}

/// `(r_j)` and `(s_j)` for `j = 1..n`, stored 0-based.
pub fn successive_differences(
    mu: &Partition,
    lambda: &Partition,
    bd: &BlockDecomposition,
) -> (Vec<u32>, Vec<u32>) {
    let n = bd.n();
    let mut r = vec![0; n];
    let mut s = vec![0; n];
    for j in 1..=n {
        r[j - 1] = match (1..=bd.r()).find(|&i| bd.M(i) == j) {
            Some(i) => mu.part(j) - lambda.part(bd.L(i) + 1),
            None => mu.part(j) - mu.part(j + 1),
        };
        s[j - 1] = match (1..=bd.r()).find(|&i| bd.L(i) == j) {
            Some(i) => lambda.part(j) - mu.part(bd.M(i - 1) + 1),
            None => lambda.part(j) - lambda.part(j + 1),
        };
    }
    (r, s)
}

/// `(J^mu_i)_i` and `(J^lambda_i)_i` for `i = 1..r`.
pub fn jump_sets(
    mu: &Partition,
    lambda: &Partition,
    bd: &BlockDecomposition,
) -> (Vec<BTreeSet<usize>>, Vec<BTreeSet<usize>>) {
    let mut jm = Vec::new();
    let mut jl = Vec::new();
    for i in 1..=bd.r() {
        let (mi, mp) = (bd.M(i), bd.M(i - 1));
        jm.push(
            (1..(mi - mp))
                .filter(|&j| mu.part(mi - j) > mu.part(mi - j + 1))
                .collect(),
        );
        let (li, lp) = (bd.L(i), bd.L(i - 1));
        jl.push(
            (1..(li - lp))
                .filter(|&j| lambda.part(li - j) > lambda.part(li - j + 1))
                .collect(),
        );
    }
    (jm, jl)
}

/// `{ j in [M_i - M_{i-1} - 1] : v_{M_{i-1}+j} > 0 }` for a 0-based
/// vector `v` and block bounds `lo = M_{i-1}`, `hi = M_i`.
pub fn support_in_block(v: &[u32], lo: usize, hi: usize) -> BTreeSet<usize> {
    (1..(hi - lo)).filter(|&j| v[lo + j - 1] > 0).collect()
}
