//! Brute-force ideal counts for `L(R_p)` over finite quotients of `R_p`,
//! and explicit-lattice checks of the lattice-type lemmas.
//!
//! Coordinates of `L` are ordered `z_1..z_n, x_1, y_1, ..., x_n, y_n`, so
//! that the last `2n` coordinates are those of `L / L'` in the order used
//! by the lattice matrices `B`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;

use crate::combinat::{DecompType, Partition};
use crate::counting::{subgroup_type_counts, DEFAULT_LIMIT};
use crate::error::{invalid, Error, Result};
use crate::ratfunc::RatFunc;
use crate::zeta::{series_at, t_prefactor, zeta_ab, AdmissibleTuple};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Polynomials over `Z/p` as coefficient vectors, lowest degree first.
fn poly_rem_mod(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    // b monic
    let mut r: Vec<i64> = a.iter().map(|c| c.rem_euclid(p)).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] - lead * c).rem_euclid(p);
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn monic_polys(p: i64, d: usize) -> impl Iterator<Item = Vec<i64>> {
    let total = (p as u64).pow(d as u32);
    (0..total).map(move |mut code| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((code % p as u64) as i64);
            code /= p as u64;
        }
        c.push(1);
        c
    })
}

pub fn is_irreducible_mod(poly: &[i64], p: i64) -> bool {
    let f = poly.len() - 1;
    if f == 0 || poly[f].rem_euclid(p) != 1 {
        return false;
    }
    (1..=f / 2).all(|d| monic_polys(p, d).all(|q| !poly_rem_mod(poly, &q, p).is_empty()))
}

/// Monic irreducible polynomials of degree `f` over `F_p`, least first,
/// comparing coefficients from `x^{f-1}` down to `x^0`.
pub fn irreducible_polys(p: u64, f: u32) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = monic_polys(p as i64, f as usize)
        .filter(|q| is_irreducible_mod(q, p as i64))
        .collect();
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// `R / p^m R` for `R = prod_i Z_p[x]/(F_i)[y]/(y^{e_i} - p)`, with
/// structure constants in the basis `alpha_{C_{i-1} + s f_i + j} =
/// x^{j-1} y^s`.
#[derive(Clone, Debug, Serialize)]
pub struct RingModel {
    pub p: u64,
    pub m: u32,
    pub decomp: DecompType,
    pub polys: Vec<Vec<i64>>,
    /// `c[(k * n + l) * n + u]`, zero-based, reduced into `[0, p^m)`.
    c: Vec<i64>,
}

pub fn build_ring_model(p: u64, m: u32, decomp: &DecompType) -> Result<RingModel> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let polys = decomp
        .f()
        .iter()
        .map(|&f| irreducible_polys(p, f).swap_remove(0))
        .collect();
    build_ring_model_with(p, m, decomp, polys)
}

pub fn build_ring_model_with(p: u64, m: u32, decomp: &DecompType, polys: Vec<Vec<i64>>) -> Result<RingModel> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(invalid("precision must be at least 1"));
    }
    if polys.len() != decomp.g() {
        return Err(invalid("one polynomial per prime factor is required"));
    }
    for (q, &f) in polys.iter().zip(decomp.f()) {
        if q.len() != f as usize + 1 || !is_irreducible_mod(q, p as i64) {
            return Err(invalid(format!("{q:?} is not a monic irreducible of degree {f} mod {p}")));
        }
    }
    let n = decomp.n();
    let modulus = (p as i64).pow(m);
    let mut c = vec![0i64; n * n * n];
    for i in 0..decomp.g() {
        let (e, f) = (decomp.e()[i] as usize, decomp.f()[i] as usize);
        let base = decomp.c(i);
        let q = &polys[i];
        for a in 0..e * f {
            for b in 0..e * f {
                let (s1, j1) = (a / f, a % f);
                let (s2, j2) = (b / f, b % f);
                let mut xpow = vec![0i64; j1 + j2 + 1];
                xpow[j1 + j2] = 1;
                let r = poly_rem_exact(&xpow, q);
                let (mut s, mut scale) = (s1 + s2, 1i64);
                if s >= e {
                    s -= e;
                    scale = p as i64;
                }
                for (j, &coef) in r.iter().enumerate() {
                    let u = base + s * f + j;
                    let k = base + a;
                    let l = base + b;
                    c[(k * n + l) * n + u] = (coef * scale).rem_euclid(modulus);
                }
            }
        }
    }
    Ok(RingModel {
        p,
        m,
        decomp: decomp.clone(),
        polys,
        c,
    })
}

/// Remainder of `a` modulo the monic `b` over `Z`, padded to `deg b`.
fn poly_rem_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let lead = r.pop().unwrap();
        let shift = r.len() - db;
        for (i, &c) in b[..db].iter().enumerate() {
            r[shift + i] -= lead * c;
        }
    }
    r.resize(db, 0);
    r
}

impl RingModel {
    pub fn n(&self) -> usize {
        self.decomp.n()
    }

    pub fn modulus(&self) -> i64 {
        (self.p as i64).pow(self.m)
    }

    /// `c^{km}_u` with 1-based indices.
    pub fn constant(&self, k: usize, l: usize, u: usize) -> i64 {
        let n = self.n();
        self.c[((k - 1) * n + (l - 1)) * n + (u - 1)]
    }

    fn c0(&self, k: usize, l: usize, u: usize) -> i64 {
        let n = self.n();
        self.c[(k * n + l) * n + u]
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.n();
        let md = self.modulus();
        let mut out = vec![0i64; n];
        for k in 0..n {
            if a[k] == 0 {
                continue;
            }
            for l in 0..n {
                if b[l] == 0 {
                    continue;
                }
                let ab = a[k] * b[l] % md;
                for (u, o) in out.iter_mut().enumerate() {
                    *o = (*o + ab * self.c0(k, l, u)) % md;
                }
            }
        }
        out
    }

    fn block_of(&self, k: usize) -> usize {
        (1..=self.decomp.g()).find(|&i| k < self.decomp.c(i)).unwrap()
    }

    /// `c^{km}_u = 0` unless `k` and `m` lie in the same block.
    pub fn check_block_vanishing(&self) -> bool {
        let n = self.n();
        (0..n).all(|k| {
            (0..n).all(|l| self.block_of(k) == self.block_of(l) || (0..n).all(|u| self.c0(k, l, u) == 0))
        })
    }

    pub fn check_commutative(&self) -> bool {
        let n = self.n();
        (0..n).all(|k| (0..n).all(|l| (0..n).all(|u| self.c0(k, l, u) == self.c0(l, k, u))))
    }

    pub fn check_associative(&self) -> bool {
        let n = self.n();
        let e = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.mul(&self.mul(&e(a), &e(b)), &e(c)) == self.mul(&e(a), &self.mul(&e(b), &e(c)))
                })
            })
        })
    }
}

/// The Heisenberg Lie ring over a ring model.
#[derive(Clone, Debug)]
pub struct HeisenbergModel {
    pub ring: RingModel,
}

impl HeisenbergModel {
    pub fn new(ring: RingModel) -> Self {
        HeisenbergModel { ring }
    }

    pub fn build(p: u64, m: u32, decomp: &DecompType) -> Result<Self> {
        Ok(HeisenbergModel::new(build_ring_model(p, m, decomp)?))
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn dim(&self) -> usize {
        3 * self.n()
    }

    pub fn x(&self, k: usize) -> usize {
        self.n() + 2 * (k - 1)
    }

    pub fn y(&self, k: usize) -> usize {
        self.n() + 2 * (k - 1) + 1
    }

    pub fn z(&self, k: usize) -> usize {
        k - 1
    }

    /// `[u, v]` for `u, v` given by their `L / L'` coordinates; the
    /// result is the `z`-coordinate vector.
    pub fn bracket_bar(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.n();
        let md = self.ring.modulus();
        let mut out = vec![0i64; n];
        for k in 0..n {
            for l in 0..n {
                let w = (u[2 * k] * v[2 * l + 1] - u[2 * l + 1] * v[2 * k]) % md;
                if w == 0 {
                    continue;
                }
                for (s, o) in out.iter_mut().enumerate() {
                    *o = (*o + w * self.ring.c0(k, l, s)) % md;
                }
            }
        }
        out.iter_mut().for_each(|x| *x = x.rem_euclid(md));
        out
    }

    /// `[u, v]` in full coordinates.
    pub fn bracket(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.n();
        let mut out = vec![0i64; 3 * n];
        out[..n].copy_from_slice(&self.bracket_bar(&u[n..], &v[n..]));
        out
    }

    fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.dim()];
        v[i] = 1;
        v
    }

    pub fn check_antisymmetry(&self) -> bool {
        let md = self.ring.modulus();
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                let (x, y) = (self.bracket(&self.basis(a), &self.basis(b)), self.bracket(&self.basis(b), &self.basis(a)));
                x.iter().zip(&y).all(|(s, t)| (s + t).rem_euclid(md) == 0)
            })
        })
    }

    /// The bracket lands in the `z`-span, and the `z`-span is central.
    pub fn check_centrality(&self) -> bool {
        let n = self.n();
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                let v = self.bracket(&self.basis(a), &self.basis(b));
                v[n..].iter().all(|&x| x == 0) && (a >= n && b >= n || v.iter().all(|&x| x == 0))
            })
        })
    }
}

/// Number of upper-triangular column Hermite forms of determinant `p^k`
/// in dimension `d`, i.e. of sublattices of `Z_p^d` of index `p^k`.
pub fn hnf_count(d: usize, k: u32, p: u64) -> u128 {
    let mut total = 0u128;
    for a in diagonals(d, k) {
        let mut c = 1u128;
        for (i, &ai) in a.iter().enumerate() {
            let f = (p as u128).saturating_pow(ai * (d - 1 - i) as u32);
            c = c.saturating_mul(f);
        }
        total = total.saturating_add(c);
    }
    total
}

fn diagonals(d: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == d {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(d, left - a, cur, out);
            cur.pop();
        }
    }
    if d > 0 {
        rec(d, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A lattice in column Hermite form: `b[i * d + j]` is row `i`, column `j`.
pub struct Hnf<'a> {
    pub d: usize,
    pub p: i64,
    pub modulus: i64,
    pub diag: &'a [u32],
    pub b: &'a [i64],
}

impl Hnf<'_> {
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.d + j]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.d).map(|i| self.entry(i, j)).collect()
    }

    /// Whether `v` lies in the span of columns `0..=upto`, modulo `p^m`.
    /// Entries of `v` below row `upto` must vanish.
    pub fn contains(&self, upto: usize, v: &[i64]) -> bool {
        if v[upto + 1..].iter().any(|x| x.rem_euclid(self.modulus) != 0) {
            return false;
        }
        let mut r: Vec<i64> = v[..=upto].iter().map(|x| x.rem_euclid(self.modulus)).collect();
        for i in (0..=upto).rev() {
            let piv = self.p.pow(self.diag[i]);
            if r[i] % piv != 0 {
                return false;
            }
            let q = r[i] / piv;
            if q == 0 {
                continue;
            }
            for (row, ri) in r.iter_mut().enumerate().take(i + 1) {
                *ri = (*ri - q * self.entry(row, i)).rem_euclid(self.modulus);
            }
        }
        true
    }
}

/// Folds `leaf` over all Hermite forms of index `p^k` in dimension `d`
/// whose every column passes `check`, which sees columns `0..=j`.
/// Diagonal types are processed in parallel and merged with `merge`.
#[allow(clippy::too_many_arguments)]
fn hnf_fold<T, C, L, I, M>(d: usize, k: u32, p: u64, modulus: i64, check: &C, init: &I, leaf: &L, merge: M) -> T
where
    T: Send,
    C: Fn(usize, &Hnf) -> bool + Sync,
    L: Fn(&Hnf, &mut T) + Sync,
    I: Fn() -> T + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let p = p as i64;
    diagonals(d, k)
        .into_par_iter()
        .map(|diag| {
            let mut b = vec![0i64; d * d];
            let mut acc = init();
            rec(0, d, p, modulus, &diag, &mut b, check, leaf, &mut acc);
            acc
        })
        .reduce(init, merge)
}

fn hnf_sum<C, L>(d: usize, k: u32, p: u64, modulus: i64, check: &C, leaf: &L) -> u128
where
    C: Fn(usize, &Hnf) -> bool + Sync,
    L: Fn(&Hnf) -> u128 + Sync,
{
    hnf_fold(d, k, p, modulus, check, &|| 0u128, &|h: &Hnf, acc: &mut u128| *acc += leaf(h), |a, b| a + b)
}

#[allow(clippy::too_many_arguments)]
fn rec<T, C, L>(j: usize, d: usize, p: i64, modulus: i64, diag: &[u32], b: &mut Vec<i64>, check: &C, leaf: &L, acc: &mut T)
where
    C: Fn(usize, &Hnf) -> bool + Sync,
    L: Fn(&Hnf, &mut T) + Sync,
{
    if j == d {
        leaf(&Hnf { d, p, modulus, diag, b }, acc);
        return;
    }
    b[j * d + j] = p.pow(diag[j]);
    let ranges: Vec<i64> = (0..j).map(|i| p.pow(diag[i])).collect();
    for i in 0..j {
        b[i * d + j] = 0;
    }
    loop {
        if check(j, &Hnf { d, p, modulus, diag, b }) {
            rec(j + 1, d, p, modulus, diag, b, check, leaf, acc);
        }
        let mut pos = 0;
        while pos < j {
            b[pos * d + j] += 1;
            if b[pos * d + j] < ranges[pos] {
                break;
            }
            b[pos * d + j] = 0;
            pos += 1;
        }
        if pos == j {
            break;
        }
    }
    b[j * d + j] = 0;
}

fn guard(estimate: u128, limit: u128) -> Result<()> {
    if estimate > limit {
        Err(Error::ResourceLimit { estimate, limit })
    } else {
        Ok(())
    }
}

fn check_precision(model: &HeisenbergModel, k: u32) -> Result<()> {
    if k >= model.ring.m {
        return Err(invalid(format!(
            "index p^{k} needs precision above {k}, model has {}",
            model.ring.m
        )));
    }
    Ok(())
}

/// Number of ideals of index `p^k`, by enumerating every sublattice of
/// `L` in Hermite form and testing closure under brackets with `L`.
pub fn count_ideals(model: &HeisenbergModel, k: u32) -> Result<BigInt> {
    count_ideals_with_limit(model, k, DEFAULT_LIMIT)
}

pub fn count_ideals_with_limit(model: &HeisenbergModel, k: u32, limit: u128) -> Result<BigInt> {
    check_precision(model, k)?;
    let d = model.dim();
    let p = model.ring.p;
    guard(hnf_count(d, k, p), limit)?;
    let basis: Vec<Vec<i64>> = (0..d).map(|i| model.basis(i)).collect();
    let check = |j: usize, h: &Hnf| {
        let col = h.column(j);
        basis.iter().all(|e| h.contains(j, &model.bracket(&col, e)))
    };
    Ok(hnf_sum(d, k, p, model.ring.modulus(), &check, &|_| 1).into())
}

/// Brackets `[e_r, e_l]` of basis vectors of `L / L'`, used to form the
/// generators of `[Lambda_bar, L]` without allocating per lattice.
struct CommutatorTable {
    n: usize,
    p: i64,
    m: u32,
    md: i64,
    /// `kb[(r * 2n + l) * n + u]`
    kb: Vec<i64>,
}

impl CommutatorTable {
    fn new(model: &HeisenbergModel) -> Self {
        let n = model.n();
        let d2 = 2 * n;
        let mut kb = vec![0i64; d2 * d2 * n];
        for r in 0..d2 {
            for l in 0..d2 {
                let (mut a, mut b) = (vec![0i64; d2], vec![0i64; d2]);
                a[r] = 1;
                b[l] = 1;
                for (u, z) in model.bracket_bar(&a, &b).into_iter().enumerate() {
                    kb[(r * d2 + l) * n + u] = z;
                }
            }
        }
        CommutatorTable {
            n,
            p: model.ring.p as i64,
            m: model.ring.m,
            md: model.ring.modulus(),
            kb,
        }
    }

    /// Exponents of the elementary divisors of `L' / [Lambda_bar, L]`
    /// where `entry(r, j)` is row `r`, column `j` of the lattice matrix.
    fn exponents<F: Fn(usize, usize) -> i64>(&self, entry: F, buf: &mut Vec<i64>) -> SmallVec<[u32; 8]> {
        let (n, d2) = (self.n, 2 * self.n);
        let g = d2 * d2;
        buf.clear();
        buf.resize(n * g, 0);
        for j in 0..d2 {
            for r in 0..d2 {
                let v = entry(r, j) % self.md;
                if v == 0 {
                    continue;
                }
                for l in 0..d2 {
                    let base = (r * d2 + l) * n;
                    for u in 0..n {
                        let c = self.kb[base + u];
                        if c != 0 {
                            let slot = &mut buf[u * g + j * d2 + l];
                            *slot = (*slot + v * c) % self.md;
                        }
                    }
                }
            }
        }
        smith_exponents(buf, n, g, self.p, self.m)
    }
}

/// p-local Smith form of an `rows x cols` matrix stored row-major in
/// `a` with entries taken modulo `p^m`; destroys `a`. Divisors that
/// vanish modulo `p^m` are reported as `m`. Non-increasing.
fn smith_exponents(a: &mut [i64], rows: usize, cols: usize, p: i64, m: u32) -> SmallVec<[u32; 8]> {
    let md = p.pow(m);
    for x in a.iter_mut() {
        *x = x.rem_euclid(md);
    }
    let mut out: SmallVec<[u32; 8]> = SmallVec::new();
    let mut live: Vec<usize> = (0..rows).collect();
    while !live.is_empty() {
        let mut best = (m, 0usize, 0usize);
        'scan: for (li, &r) in live.iter().enumerate() {
            for c in 0..cols {
                let v = valuation(a[r * cols + c], p, m);
                if v < best.0 {
                    best = (v, li, c);
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let (v, li, pc) = best;
        if v >= m {
            break;
        }
        let pr = live.swap_remove(li);
        let pv = p.pow(v);
        let unit = a[pr * cols + pc] / pv;
        for &r in &live {
            let q = a[r * cols + pc] / pv;
            if a[r * cols + pc] == 0 {
                continue;
            }
            for c in 0..cols {
                let x = a[r * cols + c] * unit - q * a[pr * cols + c];
                a[r * cols + c] = x.rem_euclid(md);
            }
        }
        out.push(v);
    }
    while out.len() < rows.min(cols) {
        out.push(m);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// Elementary divisor exponents of `L' / [Lambda_bar, L]`, for the
/// columns of a matrix in `L / L'` coordinates. Non-increasing.
pub fn commutator_type(model: &HeisenbergModel, columns: &[Vec<i64>]) -> Vec<u32> {
    let table = CommutatorTable::new(model);
    table.exponents(|r, j| columns[j][r], &mut Vec::new()).into_vec()
}

/// Number of ideals of index `p^k` via the abelianization: a sum over
/// sublattices `Lambda_bar` of `L / L'` and intermediate `M` between
/// `[Lambda_bar, L]` and `L'`, each pair contributing `|L' : M|^{2n}`.
pub fn count_ideals_layered(model: &HeisenbergModel, k: u32) -> Result<BigInt> {
    Ok(layered_counts(model, k)?.swap_remove(k as usize))
}

pub fn count_ideals_layered_with_limit(model: &HeisenbergModel, k: u32, limit: u128) -> Result<BigInt> {
    Ok(layered_counts_with_limit(model, k, limit)?.swap_remove(k as usize))
}

/// Layered counts for every index `p^0, ..., p^max_k` from one
/// enumeration of the sublattices of `L / L'`.
pub fn layered_counts(model: &HeisenbergModel, max_k: u32) -> Result<Vec<BigInt>> {
    layered_counts_with_limit(model, max_k, DEFAULT_LIMIT)
}

pub fn layered_counts_with_limit(model: &HeisenbergModel, max_k: u32, limit: u128) -> Result<Vec<BigInt>> {
    check_precision(model, max_k)?;
    let n = model.n();
    let p = model.ring.p;
    let estimate = (0..=max_k).map(|k1| hnf_count(2 * n, k1, p)).fold(0u128, u128::saturating_add);
    guard(estimate, limit)?;
    let table = CommutatorTable::new(model);
    // subgroup counts of the group of a given type, by index
    let cache: RwLock<HashMap<SmallVec<[u32; 8]>, Vec<u128>>> = RwLock::new(HashMap::new());
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let histogram = |lambda: &SmallVec<[u32; 8]>| -> Option<Vec<u128>> {
        let part = Partition::sorted(lambda.to_vec());
        let size = part.size();
        let mut hist = vec![0u128; size as usize + 1];
        match subgroup_type_counts(&part, p) {
            Ok(counts) => {
                for (mu, c) in counts {
                    hist[(size - mu.size()) as usize] += u128::try_from(c).expect("count fits in u128");
                }
                Some(hist)
            }
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                None
            }
        }
    };
    let mut totals = vec![0u128; max_k as usize + 1];
    for k1 in 0..=max_k {
        let room = (max_k - k1) as usize;
        let leaf = |h: &Hnf, acc: &mut (Vec<u128>, Vec<i64>)| {
            let (sums, buf) = acc;
            let lambda = table.exponents(|r, j| h.entry(r, j), buf);
            if let Some(hist) = cache.read().unwrap().get(&lambda) {
                for (s, c) in sums.iter_mut().zip(hist) {
                    *s += c;
                }
                return;
            }
            if let Some(hist) = histogram(&lambda) {
                for (s, c) in sums.iter_mut().zip(&hist) {
                    *s += c;
                }
                cache.write().unwrap().insert(lambda, hist);
            }
        };
        let init = || (vec![0u128; room + 1], Vec::new());
        let (sums, _) = hnf_fold(2 * n, k1, p, model.ring.modulus(), &|_, _| true, &init, &leaf, |mut a, b| {
            for (x, y) in a.0.iter_mut().zip(b.0) {
                *x += y;
            }
            a
        });
        for (k2, c) in sums.into_iter().enumerate() {
            let weight = (p as u128).pow(2 * n as u32 * k2 as u32);
            totals[k1 as usize + k2] += c * weight;
        }
    }
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(totals.into_iter().map(BigInt::from).collect())
}

fn valuation(x: i64, p: i64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let (mut x, mut v) = (x, 0);
    while x % p == 0 && v < cap {
        x /= p;
        v += 1;
    }
    v
}

/// `ell(Lambda_bar)` from the row-block minimal valuations `eps_i` and
/// offsets `delta_i` of a `2n x 2n` matrix `b` (rows of `b` are rows of
/// the matrix; columns generate the lattice).
pub fn ell_of_lattice(model: &HeisenbergModel, b: &[Vec<i64>]) -> Result<AdmissibleTuple> {
    let decomp = &model.ring.decomp;
    let n = decomp.n();
    if b.len() != 2 * n || b.iter().any(|r| r.len() != 2 * n) {
        return Err(invalid(format!("expected a {0} x {0} matrix", 2 * n)));
    }
    let p = model.ring.p as i64;
    let m = model.ring.m;
    let md = model.ring.modulus();
    let val = |i: usize, j: usize| valuation(b[i][j].rem_euclid(md), p, m);
    let mut ell = Vec::with_capacity(n);
    for i in 1..=decomp.g() {
        let (lo, hi) = (2 * decomp.c(i - 1), 2 * decomp.c(i));
        let f = decomp.f()[i - 1] as usize;
        let eps = (lo..hi).flat_map(|r| (0..2 * n).map(move |c| (r, c))).map(|(r, c)| val(r, c)).min().unwrap();
        if eps >= m {
            return Err(invalid(format!("block {i} vanishes modulo p^{m}")));
        }
        let delta = (0..decomp.e()[i - 1] as usize)
            .find(|&dd| {
                (lo + 2 * dd * f..lo + 2 * (dd + 1) * f).any(|r| (0..2 * n).any(|c| val(r, c) == eps))
            })
            .unwrap();
        let len = hi / 2 - lo / 2;
        ell.extend((0..len).map(|j| if j < delta * f { eps + 1 } else { eps }));
    }
    Ok(AdmissibleTuple {
        ell,
        decomp: decomp.clone(),
    })
}

/// Whether the elementary divisors of `L' / [Lambda_bar, L]` are the
/// `p^{ell_j}` for the lattice spanned by the columns of `b`.
pub fn gentype_check(model: &HeisenbergModel, b: &[Vec<i64>]) -> Result<bool> {
    let ell = ell_of_lattice(model, b)?;
    let m = model.ring.m;
    let mut flat: Vec<i64> = b.iter().flatten().copied().collect();
    let index: u32 = smith_exponents(&mut flat, b.len(), b.len(), model.ring.p as i64, m).iter().sum();
    if index + ell.ell.iter().max().copied().unwrap_or(0) >= m {
        return Err(invalid(format!("lattice index is not faithful modulo p^{m}")));
    }
    let cols: Vec<Vec<i64>> = (0..b.len()).map(|j| b.iter().map(|r| r[j]).collect()).collect();
    let got = commutator_type(model, &cols);
    let mut want = ell.ell.clone();
    want.sort_unstable_by(|a, b| b.cmp(a));
    Ok(got == want)
}

/// Both sides of the lattice-count identity for a fixed `ell`, as
/// integer coefficients of `t^0, ..., t^N` at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSumCounts {
    pub lattices: Vec<BigInt>,
    pub formula: Vec<BigInt>,
}

impl LatticeSumCounts {
    pub fn agrees(&self) -> bool {
        self.lattices == self.formula
    }
}

pub fn lattice_sum_counts(decomp: &DecompType, ell: &[u32], big_n: u32, p: u64) -> Result<LatticeSumCounts> {
    lattice_sum_counts_with_limit(decomp, ell, big_n, p, DEFAULT_LIMIT)
}

pub fn lattice_sum_counts_with_limit(
    decomp: &DecompType,
    ell: &[u32],
    big_n: u32,
    p: u64,
    limit: u128,
) -> Result<LatticeSumCounts> {
    let n = decomp.n();
    if !crate::zeta::is_admissible(ell, decomp) {
        return Err(invalid(format!("{ell:?} is not admissible")));
    }
    let estimate = (0..=big_n).map(|k| hnf_count(2 * n, k, p)).fold(0u128, u128::saturating_add);
    guard(estimate, limit)?;
    let model = HeisenbergModel::build(p, big_n + 1, decomp)?;
    let mut lattices = Vec::with_capacity(big_n as usize + 1);
    for k in 0..=big_n {
        let leaf = |h: &Hnf| -> u128 {
            let rows: Vec<Vec<i64>> = (0..2 * n).map(|i| (0..2 * n).map(|j| h.entry(i, j)).collect()).collect();
            match ell_of_lattice(&model, &rows) {
                Ok(t) if t.ell == ell => 1,
                _ => 0,
            }
        };
        lattices.push(BigInt::from(hnf_sum(2 * n, k, p, model.ring.modulus(), &|_, _| true, &leaf)));
    }
    let shift: u32 = 2 * ell.iter().sum::<u32>();
    let f = RatFunc::from_poly(t_prefactor(decomp.f()))
        .mul(&zeta_ab(2 * n))
        .mul_monomial(&crate::ratfunc::Monomial::pt(0, shift as i64));
    let formula = series_at(&f.series(big_n as usize)?, p as i64);
    Ok(LatticeSumCounts { lattices, formula })
}

pub fn lemma_l_check(decomp: &DecompType, ell: &[u32], big_n: u32, p: u64) -> Result<bool> {
    Ok(lattice_sum_counts(decomp, ell, big_n, p)?.agrees())
}

/// `(k, count)` pairs for `k = 0..=max_k`.
pub fn ideal_counts(model: &HeisenbergModel, max_k: u32, layered: bool) -> Result<BTreeMap<u32, BigInt>> {
    ideal_counts_with_limit(model, max_k, layered, DEFAULT_LIMIT)
}

pub fn ideal_counts_with_limit(
    model: &HeisenbergModel,
    max_k: u32,
    layered: bool,
    limit: u128,
) -> Result<BTreeMap<u32, BigInt>> {
    if layered {
        let counts = layered_counts_with_limit(model, max_k, limit)?;
        return Ok((0..).zip(counts).collect());
    }
    (0..=max_k)
        .map(|k| Ok((k, count_ideals_with_limit(model, k, limit)?)))
        .collect()
}
