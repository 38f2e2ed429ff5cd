//! Igusa functions `I_h`, `I°_h` and the generalized function `I^wo_h`
//! summed over the chain poset.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::combinat::{chains, gaussian_multinomial_at, Subset, YSpec};
use crate::error::{invalid, Result};
use crate::ratfunc::{coeff, LaurentPoly, Monomial, RatFunc, Var};

fn subsets_of_range(h: usize) -> Vec<Vec<usize>> {
    let m = h.saturating_sub(1);
    (0u64..1 << m)
        .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// `sum_{I ⊆ [h-1]} binom(h, I)_Y prod_{i in I} X_i / (1 - X_i)`.
fn igusa_core(h: usize, y: YSpec, x: &[Monomial]) -> Result<RatFunc> {
    if h == 0 || x.len() != h {
        return Err(invalid(format!("need h >= 1 and {h} arguments, got {}", x.len())));
    }
    let terms: Vec<RatFunc> = subsets_of_range(h)
        .into_par_iter()
        .map(|set| {
            let coeff = gaussian_multinomial_at(h, &set, y).expect("subset of [h-1]");
            set.iter()
                .fold(RatFunc::from_poly(coeff), |acc, &i| acc.mul(&RatFunc::gp(&x[i - 1])))
        })
        .collect();
    Ok(RatFunc::sum(terms))
}

/// `I_h(Y; X) = 1/(1 - X_h) * igusa_core`.
pub fn igusa_i(h: usize, y: YSpec, x: &[Monomial]) -> Result<RatFunc> {
    Ok(igusa_core(h, y, x)?.mul(&RatFunc::geom(&x[h - 1])))
}

/// `I°_h(Y; X) = X_h/(1 - X_h) * igusa_core`.
pub fn igusa_i_circ(h: usize, y: YSpec, x: &[Monomial]) -> Result<RatFunc> {
    Ok(igusa_core(h, y, x)?.mul(&RatFunc::gp(&x[h - 1])))
}

/// Subset-indexed arguments of `I^wo_h`.
pub type SubsetArgs = BTreeMap<Subset, Monomial>;

/// `I^wo_h(X) = 1/(1 - X_[h]) sum_{y in P_h} prod_{I in y} X_I/(1 - X_I)`.
pub fn igusa_wo(h: usize, x: &SubsetArgs) -> Result<RatFunc> {
    if h == 0 {
        return Err(invalid("h must be positive"));
    }
    let full: Subset = (1..=h).collect();
    let top = x
        .get(&full)
        .ok_or_else(|| invalid("missing argument for the full set"))?;
    let all = chains(h);
    let gps: BTreeMap<&Subset, RatFunc> = x.iter().map(|(s, m)| (s, RatFunc::gp(m))).collect();
    let terms: Result<Vec<RatFunc>> = all
        .par_iter()
        .map(|c| {
            c.subsets.iter().try_fold(RatFunc::one(), |acc, s| {
                let g = gps
                    .get(s)
                    .ok_or_else(|| invalid(format!("missing argument for {s:?}")))?;
                Ok(acc.mul(g))
            })
        })
        .collect();
    Ok(RatFunc::sum(terms?).mul(&RatFunc::geom(top)))
}

/// `X_1, ..., X_h` as fresh variables.
pub fn symbolic_args(family: &str, h: usize) -> Vec<Monomial> {
    (1..=h).map(|i| Monomial::var(Var::indexed(family, i))).collect()
}

/// `X_I` for every non-empty `I ⊆ [h]` as fresh variables.
pub fn symbolic_subset_args(family: &str, h: usize) -> SubsetArgs {
    (1u64..1 << h)
        .map(|mask| {
            let s: Vec<usize> = (1..=h).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let m = Monomial::var(Var::subset(family, &s));
            (s.into_iter().collect(), m)
        })
        .collect()
}

/// Arguments `X_I = f(I)` for every non-empty `I ⊆ [h]`.
pub fn subset_args_from<F: FnMut(&Subset) -> Monomial>(h: usize, mut f: F) -> SubsetArgs {
    (1u64..1 << h)
        .map(|mask| {
            let s: Subset = (1..=h).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let m = f(&s);
            (s, m)
        })
        .collect()
}

fn signed(h: usize, m: Monomial) -> LaurentPoly {
    LaurentPoly::term(m, coeff(if h.is_multiple_of(2) { 1 } else { -1 }))
}

/// `I_h(1; X, X^2, ..., X^h) = 1/(1 - X)^h`.
pub fn check_powers_identity(h: usize) -> bool {
    let x = Monomial::var(Var::named("X"));
    let args: Vec<Monomial> = (1..=h as i64).map(|k| x.pow(k)).collect();
    igusa_i(h, YSpec::One, &args)
        .map(|f| f.equals(&RatFunc::geom(&x).pow(h as u32)))
        .unwrap_or(false)
}

/// `X_I -> Z_{|I|}` maps `I^wo_h(X)` to `I_h(1; Z)`.
pub fn check_wo_specializes(h: usize) -> bool {
    let z = symbolic_args("Z", h);
    let x = subset_args_from(h, |s| z[s.len() - 1].clone());
    match (igusa_wo(h, &x), igusa_i(h, YSpec::One, &z)) {
        (Ok(a), Ok(b)) => a.equals(&b),
        _ => false,
    }
}

/// `I^wo_h(X^{-1}) = (-1)^h X_[h] I^wo_h(X)` for the given arguments.
pub fn check_wo_funceq(h: usize, x: &SubsetArgs) -> bool {
    let full: Subset = (1..=h).collect();
    let inv: SubsetArgs = x.iter().map(|(s, m)| (s.clone(), m.inv())).collect();
    match (igusa_wo(h, &inv), igusa_wo(h, x)) {
        (Ok(a), Ok(b)) => a.equals(&b.mul_poly(&signed(h, x[&full].clone()))),
        _ => false,
    }
}

/// Both inversion identities for `I_h` and `I°_h` with symbolic `X`.
/// With `YSpec::PInverse` the inversion `Y -> Y^{-1}` becomes `p -> p^{-1}`.
pub fn check_igusa_funceq(h: usize, y: YSpec) -> bool {
    let x = symbolic_args("X", h);
    let mut vars: Vec<Var> = x.iter().flat_map(|m| m.vars()).collect();
    let yv = match y {
        YSpec::Symbolic => Var::Y,
        YSpec::PInverse => Var::P,
        YSpec::One => return false,
    };
    vars.push(yv);
    let ypow = y.monomial().pow(-((h * (h - 1) / 2) as i64));
    let xh = x[h - 1].clone();
    let (Ok(i), Ok(ic)) = (igusa_i(h, y, &x), igusa_i_circ(h, y, &x)) else {
        return false;
    };
    i.invert_vars(&vars).equals(&i.mul_poly(&signed(h, xh.mul(&ypow))))
        && ic.invert_vars(&vars).equals(&ic.mul_poly(&signed(h, xh.inv().mul(&ypow))))
}
