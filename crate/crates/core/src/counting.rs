//! Subgroup counts in finite abelian p-groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{
    gaussian_binomial_at, gaussian_multinomial_at, jump_sets, pair_decomposition,
    successive_differences, Partition, YSpec,
};
use crate::error::{invalid, Error, Result};
use crate::ratfunc::{LaurentPoly, Monomial};

fn p_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Monomial::pt(e, 0))
}

/// `p^{mu'_k (lambda'_k - mu'_k)} binom(lambda'_k - mu'_{k+1}, lambda'_k - mu'_k)_{p^{-1}}`.
pub fn birkhoff_factor(lambda: &Partition, mu: &Partition, k: u32) -> LaurentPoly {
    let (lk, mk, mk1) = (
        lambda.dual_part(k) as usize,
        mu.dual_part(k) as usize,
        mu.dual_part(k + 1) as usize,
    );
    let b = gaussian_binomial_at(lk - mk1, lk - mk, YSpec::PInverse).expect("mu <= lambda");
    b.mul(&p_pow((mk * (lk - mk)) as i64))
}

/// Number of subgroups of type `mu` in an abelian p-group of type
/// `lambda`, as a polynomial in `p`.
pub fn alpha(lambda: &Partition, mu: &Partition) -> Result<LaurentPoly> {
    if !mu.dominated_by(lambda) {
        return Err(invalid(format!("{mu} is not dominated by {lambda}")));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=lambda.largest() {
        acc = acc.mul(&birkhoff_factor(lambda, mu, k));
    }
    if !acc.is_polynomial() || !acc.is_integral() {
        return Err(Error::Unsupported(format!(
            "alpha({lambda}, {mu}) did not clear to an integer polynomial: {acc}"
        )));
    }
    Ok(acc)
}

/// Product of Birkhoff factors over `k in ]lo, hi]`.
fn birkhoff_range(lambda: &Partition, mu: &Partition, lo: u32, hi: u32) -> LaurentPoly {
    (lo + 1..=hi).fold(LaurentPoly::one(), |acc, k| acc.mul(&birkhoff_factor(lambda, mu, k)))
}

/// Right-hand side of the regrouping of the Birkhoff factors with
/// `k in ]lambda_{L_i+1}, mu_{M_{i-1}+1}]`.
pub fn mu_split_rhs(lambda: &Partition, mu: &Partition, i: usize) -> Result<LaurentPoly> {
    let bd = pair_decomposition(mu, lambda)?;
    if i == 0 || i > bd.r() {
        return Err(invalid(format!("block index {i} out of range")));
    }
    let (r, _) = successive_differences(mu, lambda, &bd);
    let (jm, _) = jump_sets(mu, lambda, &bd);
    let (li, mi, mp) = (bd.L(i), bd.M(i), bd.M(i - 1));
    let mut e = 0i64;
    for j in 1..=(mi - mp) {
        e += ((mp + j) * (li - mp - j)) as i64 * r[mp + j - 1] as i64;
    }
    let set: Vec<usize> = jm[i - 1].iter().copied().collect();
    let a = gaussian_multinomial_at(mi - mp, &set, YSpec::PInverse)?;
    let b = gaussian_binomial_at(li - mp, li - mi, YSpec::PInverse)?;
    Ok(p_pow(e).mul(&a).mul(&b))
}

/// Right-hand side for the factors with `k in ]mu_{M_{i-1}+1}, lambda_{L_{i-1}+1}]`.
pub fn lambda_split_rhs(lambda: &Partition, mu: &Partition, i: usize) -> Result<LaurentPoly> {
    let bd = pair_decomposition(mu, lambda)?;
    if i == 0 || i > bd.r() {
        return Err(invalid(format!("block index {i} out of range")));
    }
    let (_, s) = successive_differences(mu, lambda, &bd);
    let (li, lp, mp) = (bd.L(i), bd.L(i - 1), bd.M(i - 1));
    let mut e = 0i64;
    for j in 1..=(li - lp) {
        e += (mp * (lp - mp + j)) as i64 * s[lp + j - 1] as i64;
    }
    Ok(p_pow(e))
}

pub fn check_mu_split(lambda: &Partition, mu: &Partition, i: usize) -> bool {
    let Ok(bd) = pair_decomposition(mu, lambda) else {
        return false;
    };
    let Ok(rhs) = mu_split_rhs(lambda, mu, i) else {
        return false;
    };
    let lo = lambda.part(bd.L(i) + 1);
    let hi = mu.part(bd.M(i - 1) + 1);
    birkhoff_range(lambda, mu, lo, hi) == rhs
}

pub fn check_lambda_split(lambda: &Partition, mu: &Partition, i: usize) -> bool {
    let Ok(bd) = pair_decomposition(mu, lambda) else {
        return false;
    };
    let Ok(rhs) = lambda_split_rhs(lambda, mu, i) else {
        return false;
    };
    let lo = mu.part(bd.M(i - 1) + 1);
    let hi = lambda.part(bd.L(i - 1) + 1);
    birkhoff_range(lambda, mu, lo, hi) == rhs
}

fn valuation(mut x: i128, p: i128) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    // extended Euclid; a is a unit mod m
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}

/// Exponents of the elementary divisors of an integer matrix over
/// `Z_(p)`, computed modulo `p^prec`. Divisors that vanish modulo
/// `p^prec` are reported as `prec`. Sorted in non-increasing order.
pub fn p_local_smith(matrix: &[Vec<i128>], p: i128, prec: u32) -> Vec<u32> {
    let modulus = p.pow(prec);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|x| x.rem_euclid(modulus)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut live_rows: Vec<usize> = (0..rows).collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    while !live_rows.is_empty() && !live_cols.is_empty() {
        let mut best: Option<(u32, usize, usize)> = None;
        for (ri, &r) in live_rows.iter().enumerate() {
            for (ci, &c) in live_cols.iter().enumerate() {
                let v = valuation(a[r][c], p);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, ri, ci));
                }
            }
        }
        let (v, ri, ci) = best.unwrap();
        if v == u32::MAX || v >= prec {
            break;
        }
        let (pr, pc) = (live_rows[ri], live_cols[ci]);
        let pv = p.pow(v);
        let unit_inv = mod_inverse(a[pr][pc] / pv, modulus);
        // clear the pivot column
        for &r in &live_rows {
            if r == pr || a[r][pc] == 0 {
                continue;
            }
            let f = (a[r][pc] / pv) % modulus * unit_inv % modulus;
            for &c in &live_cols {
                a[r][c] = (a[r][c] - f * a[pr][c] % modulus).rem_euclid(modulus);
            }
        }
        out.push(v);
        live_rows.remove(ri);
        live_cols.remove(ci);
    }
    let full = rows.min(cols);
    while out.len() < full {
        out.push(prec);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// Visits every upper-triangular column Hermite form `B` with
/// `p^lambda Z^n ⊆ B Z^n ⊆ Z^n`, passing `B` and the coordinates `X`
/// of `p^lambda` in the basis `B` (so `B X = diag(p^lambda)`).
fn for_each_superlattice<F: FnMut(&[Vec<i128>], &[Vec<i128>])>(
    lambda: &[u32],
    p: i128,
    limit: u128,
    visit: &mut F,
) -> Result<()> {
    let n = lambda.len();
    let mut b = vec![vec![0i128; n]; n];
    let mut x = vec![vec![0i128; n]; n];
    let mut nodes: u128 = 0;
    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[Vec<i128>], &[Vec<i128>])>(
        k: usize,
        lambda: &[u32],
        p: i128,
        b: &mut Vec<Vec<i128>>,
        x: &mut Vec<Vec<i128>>,
        nodes: &mut u128,
        limit: u128,
        visit: &mut F,
    ) -> Result<()> {
        let n = lambda.len();
        if k == n {
            visit(b, x);
            return Ok(());
        }
        for a in 0..=lambda[k] {
            b[k][k] = p.pow(a);
            // off-diagonal entries b[i][k], i < k, reduced mod b[i][i]
            let ranges: Vec<i128> = (0..k).map(|i| b[i][i]).collect();
            let total: u128 = ranges.iter().map(|&r| r as u128).product();
            *nodes += total;
            if *nodes > limit {
                return Err(Error::ResourceLimit {
                    estimate: *nodes,
                    limit,
                });
            }
            let mut idx = vec![0i128; k];
            loop {
                for i in 0..k {
                    b[i][k] = idx[i];
                }
                // solve B x = p^{lambda_k} e_k by back substitution
                let mut ok = true;
                for row in x.iter_mut() {
                    row[k] = 0;
                }
                x[k][k] = p.pow(lambda[k] - a);
                for i in (0..k).rev() {
                    let s: i128 = (i + 1..=k).map(|j| b[i][j] * x[j][k]).sum();
                    if s % b[i][i] != 0 {
                        ok = false;
                        break;
                    }
                    x[i][k] = -s / b[i][i];
                }
                if ok {
                    rec(k + 1, lambda, p, b, x, nodes, limit, visit)?;
                }
                // next index tuple
                let mut pos = 0;
                while pos < k {
                    idx[pos] += 1;
                    if idx[pos] < ranges[pos] {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
            for i in 0..k {
                b[i][k] = 0;
            }
        }
        Ok(())
    }
    rec(0, lambda, p, &mut b, &mut x, &mut nodes, limit, visit)
}

/// Default cap on the number of Hermite-form candidates examined.
pub const DEFAULT_LIMIT: u128 = 100_000_000;

/// Histogram of subgroup types of `⊕ Z/p^{lambda_i}`, by enumeration.
pub fn subgroup_type_counts(lambda: &Partition, prime: u64) -> Result<BTreeMap<Partition, BigInt>> {
    if prime < 2 {
        return Err(invalid("prime must be at least 2"));
    }
    let p = prime as i128;
    let prec = lambda.largest() + 1;
    let mut counts: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for_each_superlattice(lambda.parts(), p, DEFAULT_LIMIT, &mut |_b, x| {
        // H = L / Lambda ≅ Z^n / X Z^n
        let ty = Partition::sorted(p_local_smith(x, p, prec));
        *counts.entry(ty).or_insert_with(BigInt::zero) += 1;
    })?;
    Ok(counts)
}

/// Brute-force count of subgroups of type `mu` in `⊕ Z/p^{lambda_i}`.
pub fn alpha_bruteforce(lambda: &Partition, mu: &Partition, prime: u64) -> Result<BigInt> {
    if mu.len() != lambda.len() {
        return Err(invalid("mu and lambda must have the same length"));
    }
    if !mu.dominated_by(lambda) {
        return Ok(BigInt::zero());
    }
    Ok(subgroup_type_counts(lambda, prime)?
        .remove(mu)
        .unwrap_or_else(BigInt::zero))
}

/// Evaluates an integer polynomial in `p` at a prime.
pub fn eval_at_prime(poly: &LaurentPoly, prime: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for (m, c) in poly.terms() {
        let e = m.exp(crate::ratfunc::Var::P);
        let mut v = c.to_integer();
        if e >= 0 {
            v *= BigInt::from(prime).pow(e as u32);
        } else {
            v /= BigInt::from(prime).pow((-e) as u32);
        }
        acc += v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_poly;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&part(&[1, 1]), &part(&[1, 0])).unwrap(), parse_poly("p + 1").unwrap());
        assert!(alpha(&part(&[2, 1]), &part(&[1, 1])).unwrap().is_one());
        assert!(alpha(&part(&[2, 1]), &part(&[2, 1])).unwrap().is_one());
        assert!(alpha(&part(&[1, 0]), &part(&[1, 1])).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(alpha_bruteforce(&part(&[1, 1]), &part(&[1, 0]), 3).unwrap(), 4.into());
        assert_eq!(alpha_bruteforce(&part(&[2]), &part(&[1]), 2).unwrap(), 1.into());
        let a = alpha(&part(&[2, 2]), &part(&[1, 1])).unwrap();
        assert_eq!(
            alpha_bruteforce(&part(&[2, 2]), &part(&[1, 1]), 2).unwrap(),
            eval_at_prime(&a, 2)
        );
    }

    #[test]
    fn smith_form() {
        let m = vec![vec![2, 0], vec![0, 4]];
        assert_eq!(p_local_smith(&m, 2, 5), vec![2, 1]);
        let m = vec![vec![3, 1], vec![0, 3]];
        assert_eq!(p_local_smith(&m, 3, 4), vec![2, 0]);
    }

    #[test]
    fn split_lemmas_small() {
        let (mu, lam) = (part(&[2, 1, 0]), part(&[2, 2, 1]));
        for i in 1..=2 {
            assert!(check_mu_split(&lam, &mu, i));
            assert!(check_lambda_split(&lam, &mu, i));
        }
    }
}
