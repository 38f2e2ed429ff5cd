use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::var::Var;
use super::Coeff;

/// Exact Laurent polynomial, stored as terms sorted ascending in the
/// monomial order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Coeff)>,
}

fn merge_add(a: &[(Monomial, Coeff)], b: &[(Monomial, Coeff)]) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        LaurentPoly::constant(Coeff::from_integer(BigInt::from(c)))
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: vec![(m, c)] }
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(m, Coeff::one())
    }

    pub fn var(v: Var) -> Self {
        LaurentPoly::monomial(Monomial::var(v))
    }

    /// Sums arbitrary terms, combining repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut v: Vec<(Monomial, Coeff)> = terms.into_iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        LaurentPoly { terms: out }
    }

    /// Integer polynomial in one variable from its coefficient list.
    pub fn univariate(v: Var, coeffs: &[BigInt]) -> Self {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| {
            (
                Monomial::from_pairs([(v, i as i64)]),
                Coeff::from_integer(c.clone()),
            )
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }

    /// The single monomial of a one-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.last()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: merge_add(&self.terms, &other.terms),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> LaurentPoly {
        self.scale(&Coeff::from_integer(BigInt::from(c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() <= 4 {
            let mut acc = LaurentPoly::zero();
            for (m, c) in &small.terms {
                acc = acc.add(&big.mul_monomial(m).scale(c));
            }
            return acc;
        }
        let mut prod = Vec::with_capacity(self.len() * other.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                prod.push((m.mul(n), c * d));
            }
        }
        LaurentPoly::from_terms(prod)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self * (1 - m)`.
    pub fn mul_one_minus(&self, m: &Monomial) -> LaurentPoly {
        let shifted: Vec<(Monomial, Coeff)> =
            self.terms.iter().map(|(x, c)| (x.mul(m), -c)).collect();
        LaurentPoly {
            terms: merge_add(&self.terms, &shifted),
        }
    }

    /// Exact quotient by `(1 - m)`, or `None` when it does not divide.
    pub fn div_one_minus(&self, m: &Monomial) -> Option<LaurentPoly> {
        let (pivot, d) = m.leading()?;
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Pick the orientation with positive pivot exponent; for the
        // other one the quotient is -m^{-1} times this one.
        let (m_pos, flip) = if d > 0 { (m.clone(), false) } else { (m.inv(), true) };
        let d = d.abs();
        let mut cosets: HashMap<Monomial, Vec<(i64, Coeff)>> = HashMap::new();
        for (e, c) in &self.terms {
            let k = e.exp(pivot).div_euclid(d);
            let rep = e.mul(&m_pos.pow(-k));
            cosets.entry(rep).or_default().push((k, c.clone()));
        }
        let mut quotient = Vec::new();
        for (rep, mut chain) in cosets {
            chain.sort_unstable_by_key(|(k, _)| *k);
            let mut acc = Coeff::zero();
            let mut idx = 0;
            let mut k = chain[0].0;
            let last = chain[chain.len() - 1].0;
            while k <= last {
                if idx < chain.len() && chain[idx].0 == k {
                    acc += &chain[idx].1;
                    idx += 1;
                }
                if k == last {
                    break;
                }
                if !acc.is_zero() {
                    quotient.push((rep.mul(&m_pos.pow(k)), acc.clone()));
                    k += 1;
                } else {
                    // jump to the next populated exponent
                    k = chain[idx].0;
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
        let q = LaurentPoly::from_terms(quotient);
        if flip {
            Some(q.mul_monomial(&m_pos).neg())
        } else {
            Some(q)
        }
    }

    pub fn divides_one_minus(&self, m: &Monomial) -> bool {
        self.div_one_minus(m).is_some()
    }

    /// Monomial whose exponent in each occurring variable is the minimum
    /// over all terms (absent counts as 0).
    pub fn min_exponents(&self) -> Monomial {
        Monomial::from_pairs(
            self.vars()
                .into_iter()
                .map(|v| (v, self.min_degree(v).unwrap_or(0))),
        )
    }

    /// Exact minimum of each variable's exponent, including positive
    /// minima (a variable missing from some term has minimum <= 0).
    pub fn min_degree(&self, v: Var) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn max_degree(&self, v: Var) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    pub fn invert_vars(&self, vars: &[Var]) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.invert_vars(vars), c.clone())),
        )
    }

    /// Substitutes `v -> m` for a monomial `m`.
    pub fn substitute_monomial(&self, v: Var, m: &Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(x, c)| (x.substitute(v, m), c.clone())),
        )
    }

    /// Substitutes `v -> q` for an arbitrary polynomial `q`; negative
    /// powers of `v` require `q` to be a monomial.
    pub fn substitute(&self, v: Var, q: &LaurentPoly) -> LaurentPoly {
        if let Some(m) = q.as_monomial() {
            return self.substitute_monomial(v, m);
        }
        let mut by_power: BTreeMap<i64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (x, c) in &self.terms {
            let e = x.exp(v);
            let rest = x.substitute(v, &Monomial::one());
            by_power.entry(e).or_default().push((rest, c.clone()));
        }
        let mut acc = LaurentPoly::zero();
        for (e, rest) in by_power {
            if e < 0 {
                panic!("negative power substitution needs a monomial");
            }
            acc = acc.add(&LaurentPoly::from_terms(rest).mul(&q.pow(e as u32)));
        }
        acc
    }

    /// Evaluates at a point; every variable present must be assigned
    /// and nonzero where it occurs with a negative exponent.
    pub fn eval(&self, point: &HashMap<Var, Coeff>) -> Coeff {
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.pairs() {
                let x = point
                    .get(&v)
                    .unwrap_or_else(|| panic!("no value for variable {v}"));
                term *= pow_signed(x, e);
            }
            acc += term;
        }
        acc
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let d = f(c);
                    (!d.is_zero()).then(|| (m.clone(), d))
                })
                .collect(),
        }
    }

    /// Groups terms by their exponent of `v`.
    pub fn split_by(&self, v: Var) -> BTreeMap<i64, LaurentPoly> {
        let mut groups: BTreeMap<i64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            groups
                .entry(e)
                .or_default()
                .push((m.substitute(v, &Monomial::one()), c.clone()));
        }
        groups
            .into_iter()
            .map(|(e, t)| (e, LaurentPoly::from_terms(t)))
            .collect()
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.terms.iter().any(|(_, c)| c.is_negative())
    }
}

pub(crate) fn pow_signed(x: &Coeff, e: i64) -> Coeff {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::poly_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse::parse_poly;

    fn lp(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn from_terms_combines_and_cancels() {
        let p = LaurentPoly::from_terms([
            (Monomial::pt(1, 0), Coeff::one()),
            (Monomial::pt(1, 0), -Coeff::one()),
            (Monomial::pt(0, 1), Coeff::one()),
        ]);
        assert_eq!(p, lp("t"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(lp("1+t").mul(&lp("1-t")), lp("1-t^2"));
        assert_eq!(lp("p+t").pow(2), lp("p^2+2*p*t+t^2"));
        let a = lp("1+p+t+p*t^2+p^-1+t^3+p^2*t^-1");
        let b = lp("2-p*t+t^5+p^3+p^-2*t");
        let naive = LaurentPoly::from_terms(a.terms().iter().flat_map(|(m, c)| {
            b.terms().iter().map(move |(n, d)| (m.mul(n), c * d))
        }));
        assert_eq!(a.mul(&b), naive);
    }

    #[test]
    fn division_by_one_minus() {
        let m = Monomial::pt(1, 1);
        let n = lp("1+p^3+t^-2").mul_one_minus(&m);
        assert_eq!(n.div_one_minus(&m), Some(lp("1+p^3+t^-2")));
        assert_eq!(lp("1-p^3*t^3").div_one_minus(&m), Some(lp("1+p*t+p^2*t^2")));
        assert_eq!(lp("1+p*t").div_one_minus(&m), None);
        let inv = m.inv();
        assert_eq!(
            lp("1-p^2*t^2").div_one_minus(&inv).unwrap().mul_one_minus(&inv),
            lp("1-p^2*t^2")
        );
        assert_eq!(lp("1-t^4").div_one_minus(&Monomial::pt(0, 2)), Some(lp("1+t^2")));
        assert_eq!(lp("1-t^3").div_one_minus(&Monomial::pt(0, 2)), None);
    }

    #[test]
    fn substitution_and_eval() {
        let y = Var::Y;
        let q = lp("1+Y+Y^2");
        let at = q.substitute_monomial(y, &Monomial::pt(-1, 0));
        assert_eq!(at, lp("1+p^-1+p^-2"));
        let s = q.substitute(y, &lp("1+p"));
        assert_eq!(s, lp("3+3*p+p^2"));
        let mut pt = HashMap::new();
        pt.insert(Var::P, Coeff::from_integer(2.into()));
        assert_eq!(at.eval(&pt), Coeff::new(7.into(), 4.into()));
    }
}
