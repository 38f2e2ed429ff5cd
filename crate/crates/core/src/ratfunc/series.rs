use num_bigint::BigInt;

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::rational::RatFunc;
use super::var::Var;
use super::Coeff;
use crate::error::{Error, Result};

/// Power series in `t` truncated after `t^order`, with coefficients
/// Laurent polynomials in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn add_to(&mut self, k: usize, p: &LaurentPoly) {
        if k < self.coeffs.len() {
            self.coeffs[k] = self.coeffs[k].add(p);
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        let mut out = vec![LaurentPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Coefficients evaluated at `p = prime`.
    pub fn eval_at(&self, prime: i64) -> Vec<Coeff> {
        let mut point = std::collections::HashMap::new();
        point.insert(Var::P, Coeff::from_integer(prime.into()));
        self.coeffs.iter().map(|c| c.eval(&point)).collect()
    }

    /// Integer coefficients at `p = prime`; `None` if some value is not
    /// an integer.
    pub fn eval_int(&self, prime: i64) -> Option<Vec<BigInt>> {
        self.eval_at(prime)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Each coefficient is a polynomial in `p` with non-negative integer
    /// coefficients.
    pub fn is_counting_series(&self) -> bool {
        self.coeffs.iter().all(|c| {
            c.is_polynomial()
                && c.is_integral()
                && !c.has_negative_coeff()
                && c.vars().iter().all(|v| *v == Var::P)
        })
    }
}

/// Expands `a` as a power series in `t` up to `t^order`.
pub fn rf_series(a: &RatFunc, order: usize) -> Result<TruncatedSeries> {
    for v in a.vars() {
        if v != Var::P && v != Var::T {
            return Err(Error::NotExpandable(format!("variable {v} is not p or t")));
        }
    }
    let shift = a.denominator_monomial();
    if shift.exp(Var::T) != 0 {
        return Err(Error::NotExpandable(format!(
            "denominator monomial {shift} involves t"
        )));
    }
    for (m, _) in a.factors() {
        if m.exp(Var::T) <= 0 {
            return Err(Error::NotExpandable(format!(
                "factor (1 - {m}) has no positive power of t"
            )));
        }
    }
    let mut coeffs = vec![LaurentPoly::zero(); order + 1];
    let unshift = shift.inv();
    for (e, part) in a.numerator().split_by(Var::T) {
        if e < 0 {
            return Err(Error::NotExpandable("numerator has negative powers of t".into()));
        }
        if (e as usize) <= order {
            coeffs[e as usize] = part.mul_monomial(&unshift);
        }
    }
    for (m, k) in a.factors() {
        let b = m.exp(Var::T) as usize;
        let pa = Monomial::from_pairs([(Var::P, m.exp(Var::P))]);
        for _ in 0..k {
            for i in b..=order {
                if coeffs[i - b].is_zero() {
                    continue;
                }
                let add = coeffs[i - b].mul_monomial(&pa);
                coeffs[i] = coeffs[i].add(&add);
            }
        }
    }
    Ok(TruncatedSeries { coeffs })
}

impl RatFunc {
    pub fn series(&self, order: usize) -> Result<TruncatedSeries> {
        rf_series(self, order)
    }
}

pub fn is_zero_series(s: &TruncatedSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse::parse_ratfunc;
    use num_traits::Zero;

    fn series(s: &str, n: usize) -> Vec<String> {
        rf_series(&parse_ratfunc(s).unwrap(), n)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    #[test]
    fn geometric() {
        assert_eq!(series("1/(1-t)", 3), ["1", "1", "1", "1"]);
        assert_eq!(series("1/((1-t)*(1-p*t))", 2), ["1", "p + 1", "p^2 + p + 1"]);
    }

    #[test]
    fn rejects_non_expandable() {
        assert!(rf_series(&parse_ratfunc("1/(1-p)").unwrap(), 3).is_err());
        assert!(rf_series(&parse_ratfunc("1/t").unwrap(), 3).is_err());
        assert!(rf_series(&parse_ratfunc("1/(1-Y*t)").unwrap(), 3).is_err());
    }

    #[test]
    fn negative_p_shift_is_allowed() {
        let s = rf_series(&parse_ratfunc("p^-1/(1-p*t)").unwrap(), 2).unwrap();
        assert_eq!(s.eval_int(2), None);
        assert!(s.coeff(2).terms()[0].1 == Coeff::from_integer(1.into()));
        assert!(!s.coeff(0).is_polynomial());
    }

    #[test]
    fn series_ring_ops() {
        let a = rf_series(&parse_ratfunc("1/(1-t)").unwrap(), 4).unwrap();
        let b = rf_series(&parse_ratfunc("1/(1-p*t)").unwrap(), 4).unwrap();
        let ab = rf_series(&parse_ratfunc("1/((1-t)*(1-p*t))").unwrap(), 4).unwrap();
        assert_eq!(a.mul(&b), ab);
        assert!(!is_zero_series(&a));
        assert_eq!(a.eval_int(3).unwrap(), vec![BigInt::from(1); 5]);
        assert!(ab.is_counting_series());
        assert!(Coeff::zero().is_zero());
    }
}
