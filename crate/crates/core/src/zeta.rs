//! Local normal zeta functions of Heisenberg Lie rings at unramified
//! primes, assembled from Dyck-word summands, and the direct series
//! evaluator for arbitrary decomposition types.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{
    block_decomposition, compatible_partitions, dyck_words, gaussian_binomial_at, multinomial_count,
    partition_of, partitions_below, phi, split_by_partition, weak_orderings, BlockDecomposition,
    DecompType, DyckWord, OrderedSetPartition, Partition, Subset, WeakOrdering, YSpec,
};
use crate::counting::alpha;
use crate::error::{invalid, Error, Result};
use crate::igusa::{igusa_i, igusa_i_circ, igusa_wo, subset_args_from, SubsetArgs};
use crate::ratfunc::{Coeff, LaurentPoly, Monomial, RatFunc, TruncatedSeries};

/// An `n`-tuple admissible for a decomposition type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleTuple {
    pub ell: Vec<u32>,
    pub decomp: DecompType,
}

/// Whether every block `]C_{i-1}, C_i]` of `ell` reads
/// `(b+1)^{delta_i f_i} b^{(e_i - delta_i) f_i}` for some `b` and
/// `delta_i in [0, e_i - 1]`.
pub fn is_admissible(ell: &[u32], decomp: &DecompType) -> bool {
    if ell.len() != decomp.n() {
        return false;
    }
    (1..=decomp.g()).all(|i| {
        let block = &ell[decomp.c(i - 1)..decomp.c(i)];
        let f = decomp.f()[i - 1] as usize;
        let e = decomp.e()[i - 1] as usize;
        let b = *block.last().unwrap();
        (0..e).any(|delta| {
            block[..delta * f].iter().all(|&x| x == b + 1) && block[delta * f..].iter().all(|&x| x == b)
        })
    })
}

/// All admissible tuples with `sum ell <= bound`.
pub fn adm_enumerate(decomp: &DecompType, bound: u64) -> Vec<AdmissibleTuple> {
    let mut out = Vec::new();
    fn rec(decomp: &DecompType, i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<AdmissibleTuple>) {
        if i == decomp.g() {
            out.push(AdmissibleTuple {
                ell: cur.clone(),
                decomp: decomp.clone(),
            });
            return;
        }
        let f = decomp.f()[i] as usize;
        let e = decomp.e()[i] as usize;
        let len = (e * f) as u64;
        for b in 0u64.. {
            if b * len > left {
                break;
            }
            for delta in 0..e {
                let cost = b * len + (delta * f) as u64;
                if cost > left {
                    break;
                }
                let start = cur.len();
                cur.extend(std::iter::repeat_n(b as u32 + 1, delta * f));
                cur.extend(std::iter::repeat_n(b as u32, (e - delta) * f));
                rec(decomp, i + 1, left - cost, cur, out);
                cur.truncate(start);
            }
        }
    }
    rec(decomp, 0, bound, &mut Vec::new(), &mut out);
    out
}

/// `lambda(ell)`: the components of `ell` in non-increasing order.
pub fn lambda_of(ell: &[u32]) -> Partition {
    Partition::sorted(ell.to_vec())
}

/// `lambda(ell)` together with the weak ordering `v_ell` of the block
/// values `(ell_{C_1}, ..., ell_{C_g})`: `sigma` lists the blocks by
/// non-increasing value, ties in increasing index order, and `J` marks
/// the positions of strict drops.
pub fn lambda_of_ell(ell: &[u32], decomp: &DecompType) -> Result<(Partition, WeakOrdering)> {
    if !decomp.is_unramified() {
        return Err(Error::Unsupported(
            "weak orderings of admissible tuples are defined for unramified types".into(),
        ));
    }
    if !is_admissible(ell, decomp) {
        return Err(invalid(format!("{ell:?} is not admissible")));
    }
    let g = decomp.g();
    let psi: Vec<u32> = (1..=g).map(|i| ell[decomp.c(i) - 1]).collect();
    let mut sigma: Vec<usize> = (1..=g).collect();
    sigma.sort_by(|&a, &b| psi[b - 1].cmp(&psi[a - 1]).then(a.cmp(&b)));
    let j: Subset = (1..g)
        .filter(|&k| psi[sigma[k - 1] - 1] > psi[sigma[k] - 1])
        .collect();
    Ok((lambda_of(ell), WeakOrdering::new(sigma, j)?))
}

/// `x_j = p^{j(2n + L_i - j)} t^{2 L_i + j}` for `j in ]M_{i-1}, M_i]`.
pub fn x_data(bd: &BlockDecomposition) -> Vec<Monomial> {
    let n = bd.n() as i64;
    let mut x = Vec::with_capacity(bd.n());
    for i in 1..=bd.r() {
        let li = bd.L(i) as i64;
        for j in bd.M(i - 1) + 1..=bd.M(i) {
            let j = j as i64;
            x.push(Monomial::pt(j * (2 * n + li - j), 2 * li + j));
        }
    }
    x
}

/// `y_j = p^{(2n - M_{i-1} + j) M_{i-1}} t^{2j + M_{i-1}}` for `j in ]L_{i-1}, L_i]`.
pub fn y_data_split(bd: &BlockDecomposition) -> Vec<Monomial> {
    let n = bd.n() as i64;
    let mut y = Vec::with_capacity(bd.n());
    for i in 1..=bd.r() {
        let mp = bd.M(i - 1) as i64;
        for j in bd.L(i - 1) + 1..=bd.L(i) {
            let j = j as i64;
            y.push(Monomial::pt((2 * n - mp + j) * mp, 2 * j + mp));
        }
    }
    y
}

fn y_monomial(n: usize, mp: usize, eps: usize) -> Monomial {
    let (n, mp, eps) = (n as i64, mp as i64, eps as i64);
    Monomial::pt((2 * n - mp + eps) * mp, 2 * eps + mp)
}

/// `y^{(i)}_I` for non-empty `I ⊆ [|A_i|]`, with
/// `eps(I) = L_{i-1} + sum_{j in I} f_{a_j}` over the sorted elements of `A_i`.
pub fn y_data(bd: &BlockDecomposition, f: &[u32], a: &OrderedSetPartition, i: usize) -> SubsetArgs {
    let block = a.block(i);
    let (lp, mp) = (bd.L(i - 1), bd.M(i - 1));
    subset_args_from(block.len(), |s| {
        let eps = lp + s.iter().map(|&j| f[block[j - 1] - 1] as usize).sum::<usize>();
        y_monomial(bd.n(), mp, eps)
    })
}

/// `prod_i binom(L_i - M_{i-1}, L_i - M_i)_{p^{-1}}`.
fn binomial_prefactor(bd: &BlockDecomposition) -> LaurentPoly {
    (1..=bd.r()).fold(LaurentPoly::one(), |acc, i| {
        let b = gaussian_binomial_at(bd.L(i) - bd.M(i - 1), bd.L(i) - bd.M(i), YSpec::PInverse)
            .expect("L_i >= M_i");
        acc.mul(&b)
    })
}

/// `prod_{i<r} I°_{M_i - M_{i-1}}(p^{-1}; x) * I_{n - M_{r-1}}(p^{-1}; x)`.
fn x_factor(bd: &BlockDecomposition) -> RatFunc {
    let x = x_data(bd);
    let r = bd.r();
    let mut acc = RatFunc::one();
    for i in 1..r {
        let xs = &x[bd.M(i - 1)..bd.M(i)];
        acc = acc.mul(&igusa_i_circ(xs.len(), YSpec::PInverse, xs).expect("block arguments"));
    }
    let xs = &x[bd.M(r - 1)..];
    acc.mul(&igusa_i(xs.len(), YSpec::PInverse, xs).expect("block arguments"))
}

/// `D^1_w` for totally split primes, from the closed form with a
/// multinomial prefactor and standard Igusa functions.
pub fn d_w_totally_split(n: usize, w: &DyckWord) -> Result<RatFunc> {
    if w.n() != n {
        return Err(invalid(format!("{w} is not a Dyck word of length {}", 2 * n)));
    }
    let bd = block_decomposition(w);
    let count = multinomial_count(n, &bd.l_set());
    let y = y_data_split(&bd);
    let mut acc = RatFunc::from_poly(binomial_prefactor(&bd).scale(&Coeff::from_integer(count)));
    for i in 1..=bd.r() {
        let ys = &y[bd.L(i - 1)..bd.L(i)];
        acc = acc.mul(&igusa_i(ys.len(), YSpec::One, ys)?);
    }
    Ok(acc.mul(&x_factor(&bd)))
}

fn check_word(f: &[u32], w: &DyckWord) -> Result<usize> {
    let n: usize = f.iter().map(|&x| x as usize).sum();
    if f.is_empty() || f.contains(&0) {
        return Err(invalid(format!("{f:?} is not a composition")));
    }
    if w.n() != n {
        return Err(invalid(format!("{w} is not a Dyck word of length {}", 2 * n)));
    }
    Ok(n)
}

/// `D^f_{w,A}` from generalized Igusa functions on the `y`-data.
pub fn d_w_a(f: &[u32], w: &DyckWord, a: &OrderedSetPartition) -> Result<RatFunc> {
    check_word(f, w)?;
    let bd = block_decomposition(w);
    let compatible = a.len() == bd.r()
        && OrderedSetPartition::new(f.len(), a.blocks.clone()).is_ok()
        && (1..=bd.r()).all(|i| {
            a.block(i).iter().map(|&j| f[j - 1] as usize).sum::<usize>() == bd.L(i) - bd.L(i - 1)
        });
    if !compatible {
        return Err(invalid(format!("{:?} is not compatible with {w}", a.blocks)));
    }
    let mut acc = RatFunc::from_poly(binomial_prefactor(&bd));
    for i in 1..=bd.r() {
        acc = acc.mul(&igusa_wo(a.block(i).len(), &y_data(&bd, f, a, i))?);
    }
    Ok(acc.mul(&x_factor(&bd)))
}

/// `D^f_{w,v}` for a weak ordering compatible with `w`, from the chain
/// `phi(v_i)` of each block.
pub fn d_w_v(f: &[u32], w: &DyckWord, v: &WeakOrdering) -> Result<RatFunc> {
    check_word(f, w)?;
    let a = partition_of(w, f, v).ok_or_else(|| invalid(format!("{v:?} is not compatible with {w}")))?;
    let vs = split_by_partition(&a, v).expect("v lies in the image of phi_A");
    let bd = block_decomposition(w);
    let mut acc = RatFunc::from_poly(binomial_prefactor(&bd));
    for i in 1..=bd.r() {
        let y = y_data(&bd, f, &a, i);
        let full: Subset = (1..=a.block(i).len()).collect();
        acc = acc.mul(&RatFunc::geom(&y[&full]));
        for s in phi(&vs[i - 1]).subsets {
            acc = acc.mul(&RatFunc::gp(&y[&s]));
        }
    }
    Ok(acc.mul(&x_factor(&bd)))
}

/// Weak orderings `v` with `A(w, v) = A`.
pub fn orderings_of(f: &[u32], w: &DyckWord, a: &OrderedSetPartition) -> Vec<WeakOrdering> {
    weak_orderings(f.len())
        .into_iter()
        .filter(|v| partition_of(w, f, v).as_ref() == Some(a))
        .collect()
}

/// `D^f_{w,A}` depends on `A` only through the multisets of `f`-values
/// of its blocks.
fn class_key(f: &[u32], a: &OrderedSetPartition) -> Vec<Vec<u32>> {
    a.blocks
        .iter()
        .map(|b| {
            let mut v: Vec<u32> = b.iter().map(|&j| f[j - 1]).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// `D^f_w = sum_{A in P_w} D^f_{w,A}`, evaluating one representative per
/// class of partitions with equal block multisets.
pub fn d_w(f: &[u32], w: &DyckWord) -> Result<RatFunc> {
    check_word(f, w)?;
    let mut classes: BTreeMap<Vec<Vec<u32>>, (OrderedSetPartition, i64)> = BTreeMap::new();
    for a in compatible_partitions(w, f) {
        classes
            .entry(class_key(f, &a))
            .and_modify(|e| e.1 += 1)
            .or_insert((a, 1));
    }
    let terms: Result<Vec<RatFunc>> = classes
        .into_values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(a, k)| Ok(d_w_a(f, w, a)?.scale_int(*k)))
        .collect();
    Ok(RatFunc::sum(terms?))
}

/// `zeta_{Z_p^d}(s) = prod_{i=0}^{d-1} 1/(1 - p^i t)`.
pub fn zeta_ab(d: usize) -> RatFunc {
    RatFunc::new(
        LaurentPoly::one(),
        (0..d as i64).map(|i| (Monomial::pt(i, 1), 1)).collect(),
    )
}

/// `prod_i (1 - t^{2 f_i})`.
pub fn t_prefactor(f: &[u32]) -> LaurentPoly {
    f.iter().fold(LaurentPoly::one(), |acc, &fi| {
        acc.mul_one_minus(&Monomial::pt(0, 2 * fi as i64))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Sum over Dyck words and compatible set partitions.
    DyckPartitionSum,
    /// Closed form for totally split primes.
    TotallySplit,
    /// Closed form for inert primes.
    Inert,
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub w: RatFunc,
    pub n: usize,
    pub f: Vec<u32>,
    pub provenance: Provenance,
}

fn composition_n(f: &[u32]) -> Result<usize> {
    if f.is_empty() || f.contains(&0) {
        return Err(invalid(format!("{f:?} is not a composition")));
    }
    Ok(f.iter().map(|&x| x as usize).sum())
}

/// `sum_w D^f_w` over all Dyck words of length `2n`.
pub fn dyck_sum(f: &[u32]) -> Result<RatFunc> {
    let n = composition_n(f)?;
    let terms: Result<Vec<RatFunc>> = dyck_words(n).par_iter().map(|w| d_w(f, w)).collect();
    Ok(RatFunc::sum(terms?))
}

/// `W = prod (1 - t^{2 f_i}) * zeta_{Z_p^{2n}} * sum_w sum_A D^f_{w,A}`.
pub fn zeta_unramified(f: &[u32]) -> Result<ZetaResult> {
    let n = composition_n(f)?;
    let w = dyck_sum(f)?.mul(&zeta_ab(2 * n)).mul_poly(&t_prefactor(f));
    Ok(ZetaResult {
        w,
        n,
        f: f.to_vec(),
        provenance: Provenance::DyckPartitionSum,
    })
}

/// The totally split case through the closed form for `D^1_w`.
pub fn zeta_totally_split(n: usize) -> Result<ZetaResult> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let terms: Result<Vec<RatFunc>> = dyck_words(n)
        .par_iter()
        .map(|w| d_w_totally_split(n, w))
        .collect();
    let f = vec![1; n];
    let w = RatFunc::sum(terms?).mul(&zeta_ab(2 * n)).mul_poly(&t_prefactor(&f));
    Ok(ZetaResult {
        w,
        n,
        f,
        provenance: Provenance::TotallySplit,
    })
}

/// `zeta_{Z_p^{2n}} I_n(p^{-1}; x)` with `x_j = p^{j(3n - j)} t^{2n + j}`.
pub fn zeta_inert(n: usize) -> Result<ZetaResult> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let ni = n as i64;
    let x: Vec<Monomial> = (1..=ni).map(|j| Monomial::pt(j * (3 * ni - j), 2 * ni + j)).collect();
    let w = zeta_ab(2 * n).mul(&igusa_i(n, YSpec::PInverse, &x)?);
    Ok(ZetaResult {
        w,
        n,
        f: vec![n as u32],
        provenance: Provenance::Inert,
    })
}

/// Closed forms exist only for unramified types.
pub fn zeta_closed_form(decomp: &DecompType) -> Result<ZetaResult> {
    if !decomp.is_unramified() {
        return Err(Error::Unsupported(
            "no closed form for ramified decomposition types; use the direct series".into(),
        ));
    }
    zeta_unramified(decomp.f())
}

type AlphaCache = Mutex<HashMap<(Partition, Partition), LaurentPoly>>;

fn cached_alpha(cache: &AlphaCache, lambda: &Partition, mu: &Partition) -> LaurentPoly {
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = alpha(lambda, mu).expect("mu <= lambda");
    cache.lock().unwrap().insert(key, v.clone());
    v
}

/// `D^{e,f}(p, t)` truncated after `t^order`, summed directly over
/// admissible `ell` and partitions `mu <= lambda(ell)`.
pub fn d_series(decomp: &DecompType, order: usize) -> TruncatedSeries {
    let n = decomp.n() as i64;
    let tuples = adm_enumerate(decomp, (order / 2) as u64);
    let cache: AlphaCache = Mutex::new(HashMap::new());
    let parts: Vec<Vec<(usize, LaurentPoly)>> = tuples
        .par_iter()
        .map(|adm| {
            let base: usize = 2 * adm.ell.iter().map(|&x| x as usize).sum::<usize>();
            let lambda = lambda_of(&adm.ell);
            let mut out = Vec::new();
            for mu in partitions_below(&lambda) {
                let size = mu.size() as usize;
                if base + size > order {
                    continue;
                }
                let a = cached_alpha(&cache, &lambda, &mu);
                out.push((base + size, a.mul_monomial(&Monomial::pt(2 * n * size as i64, 0))));
            }
            out
        })
        .collect();
    let mut s = TruncatedSeries::zero(order);
    for list in parts {
        for (k, c) in list {
            s.add_to(k, &c);
        }
    }
    s
}

/// Series of `prod (1 - t^{2 f_i}) zeta_{Z_p^{2n}} D^{e,f}` for any type.
pub fn zeta_series(decomp: &DecompType, order: usize) -> Result<TruncatedSeries> {
    let n = decomp.n();
    let pre = RatFunc::from_poly(t_prefactor(decomp.f())).mul(&zeta_ab(2 * n));
    Ok(pre.series(order)?.mul(&d_series(decomp, order)))
}

/// The series coefficient list at a fixed integer `p`.
pub fn series_at(s: &TruncatedSeries, prime: i64) -> Vec<num_bigint::BigInt> {
    s.eval_int(prime).expect("integer coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn admissible_sets() {
        let d = DecompType::unramified(vec![1, 1]).unwrap();
        assert_eq!(adm_enumerate(&d, 2).len(), 6);
        let inert = DecompType::unramified(vec![3]).unwrap();
        let a = adm_enumerate(&inert, 6);
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|t| t.ell.iter().all(|&x| x == t.ell[0])));
        let d = DecompType::unramified(vec![2, 2]).unwrap();
        assert!(adm_enumerate(&d, 8)
            .iter()
            .all(|t| t.ell[0] == t.ell[1] && t.ell[2] == t.ell[3]));
        let ram = DecompType::new(vec![2], vec![1]).unwrap();
        let ells: Vec<Vec<u32>> = adm_enumerate(&ram, 3).into_iter().map(|t| t.ell).collect();
        assert_eq!(ells, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn weak_ordering_of_tuples() {
        let d = DecompType::unramified(vec![2, 2]).unwrap();
        let (lam, v) = lambda_of_ell(&[1, 1, 3, 3], &d).unwrap();
        assert_eq!(lam.parts(), &[3, 3, 1, 1]);
        assert_eq!(v.sigma, vec![2, 1]);
        assert_eq!(v.j, [1].into_iter().collect());
        let d = DecompType::unramified(vec![1, 1]).unwrap();
        let (_, v) = lambda_of_ell(&[2, 2], &d).unwrap();
        assert_eq!(v.sigma, vec![1, 2]);
        assert!(v.j.is_empty());
    }

    #[test]
    fn n_one() {
        let w: DyckWord = "01".parse().unwrap();
        assert_eq!(d_w_totally_split(1, &w).unwrap(), rf("1/((1-t^2)(1-p^2t^3))"));
        assert_eq!(zeta_inert(1).unwrap().w, rf("1/((1-t)(1-p t)(1-p^2t^3))"));
        assert_eq!(zeta_unramified(&[1]).unwrap().w, zeta_inert(1).unwrap().w);
    }

    #[test]
    fn abelian_series() {
        let s = zeta_ab(2).series(3).unwrap();
        let want = ["1", "p + 1", "p^2 + p + 1", "p^3 + p^2 + p + 1"];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(s.coeff(k).to_string(), *w);
        }
    }

    #[test]
    fn closed_form_matches_direct_sum_small() {
        for f in [vec![1], vec![2], vec![1, 1]] {
            let d = DecompType::unramified(f.clone()).unwrap();
            let closed = dyck_sum(&f).unwrap().series(8).unwrap();
            assert_eq!(closed, d_series(&d, 8), "f = {f:?}");
        }
    }
}
