use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::ratfunc::{LaurentPoly, Monomial, Var};

/// Value substituted for the Gaussian parameter `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YSpec {
    Symbolic,
    One,
    PInverse,
}

impl YSpec {
    pub fn apply(self, poly: &LaurentPoly) -> LaurentPoly {
        match self {
            YSpec::Symbolic => poly.clone(),
            YSpec::One => poly.substitute_monomial(Var::Y, &Monomial::one()),
            YSpec::PInverse => poly.substitute_monomial(Var::Y, &Monomial::pt(-1, 0)),
        }
    }

    /// The monomial `Y` stands for, when it is one.
    pub fn monomial(self) -> Monomial {
        match self {
            YSpec::Symbolic => Monomial::var(Var::Y),
            YSpec::One => Monomial::one(),
            YSpec::PInverse => Monomial::pt(-1, 0),
        }
    }
}

/// Coefficients of `binom(a, b)_Y` by the q-Pascal rule.
pub fn gaussian_binomial_coeffs(a: usize, b: usize) -> Result<Vec<BigInt>> {
    if b > a {
        return Err(invalid(format!("binomial ({a} choose {b}) with b > a")));
    }
    // row[k] = binom(m, k) for the current m
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=a {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m.min(b) {
            // binom(m,k) = binom(m-1,k-1) + Y^k binom(m-1,k)
            let mut c: Vec<BigInt> = Vec::new();
            if k >= 1 {
                c = row[k - 1].clone();
            }
            if k < m {
                let prev = &row[k];
                if c.len() < prev.len() + k {
                    c.resize(prev.len() + k, BigInt::zero());
                }
                for (i, x) in prev.iter().enumerate() {
                    c[i + k] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    Ok(row.swap_remove(b))
}

pub fn gaussian_binomial(a: usize, b: usize) -> Result<LaurentPoly> {
    Ok(LaurentPoly::univariate(Var::Y, &gaussian_binomial_coeffs(a, b)?))
}

pub fn gaussian_binomial_at(a: usize, b: usize, y: YSpec) -> Result<LaurentPoly> {
    Ok(y.apply(&gaussian_binomial(a, b)?))
}

/// `binom(n, I)_Y` for `I` a subset of `[n-1]`, as the telescoping
/// product over the sorted elements of `I`.
pub fn gaussian_multinomial(n: usize, subset: &[usize]) -> Result<LaurentPoly> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.iter().any(|&i| i == 0 || i >= n) {
        return Err(invalid(format!("{subset:?} is not a subset of [{}]", n.saturating_sub(1))));
    }
    let mut acc = LaurentPoly::one();
    let mut top = n;
    for &i in s.iter().rev() {
        acc = acc.mul(&gaussian_binomial(top, i)?);
        top = i;
    }
    Ok(acc)
}

pub fn gaussian_multinomial_at(n: usize, subset: &[usize], y: YSpec) -> Result<LaurentPoly> {
    Ok(y.apply(&gaussian_multinomial(n, subset)?))
}

/// Integer multinomial `n! / prod (i_k - i_{k-1})!`.
pub fn multinomial_count(n: usize, subset: &[usize]) -> BigInt {
    gaussian_multinomial_at(n, subset, YSpec::One)
        .expect("valid subset")
        .as_constant()
        .map(|c| c.to_integer())
        .unwrap_or_else(BigInt::zero)
}

/// `h - J = { h - j : j in J }`.
pub fn reflect_subset(h: usize, subset: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = subset.iter().map(|&j| h - j).collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_poly;

    #[test]
    fn small_binomials() {
        assert_eq!(gaussian_binomial(2, 1).unwrap(), parse_poly("1 + Y").unwrap());
        assert_eq!(
            gaussian_binomial(4, 2).unwrap(),
            parse_poly("1 + Y + 2Y^2 + Y^3 + Y^4").unwrap()
        );
        for n in 0..=8 {
            assert!(gaussian_binomial(n, 0).unwrap().is_one());
            assert!(gaussian_binomial(n, n).unwrap().is_one());
        }
        assert!(gaussian_binomial(1, 2).is_err());
    }

    #[test]
    fn multinomials_at_one() {
        assert_eq!(multinomial_count(3, &[1, 2]), 6.into());
        assert_eq!(multinomial_count(3, &[2]), 3.into());
        assert_eq!(multinomial_count(5, &[]), 1.into());
        assert_eq!(multinomial_count(4, &[2]), 6.into());
    }

    #[test]
    fn p_inverse_specialization() {
        let b = gaussian_binomial_at(2, 1, YSpec::PInverse).unwrap();
        assert_eq!(b, parse_poly("1 + p^{-1}").unwrap());
    }
}
