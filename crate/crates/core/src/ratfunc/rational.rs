use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::var::Var;
use super::Coeff;
use crate::error::{Error, Result};

/// Exact rational function `numerator / (monomial * prod (1 - m)^k)`.
///
/// Canonical form (established by every constructor and operation):
/// every base `m` has positive leading exponent; no factor `(1 - m)`
/// divides the numerator; a factor `(1 - u^d)` is lowered to
/// `(1 - u^e)` with `e | d` whenever the numerator absorbs the
/// quotient; and the denominator monomial has exactly the exponents
/// needed to make the numerator a polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den_mono: Monomial,
    factors: BTreeMap<Monomial, u32>,
}

fn divisors_below(d: i64) -> Vec<i64> {
    (1..d).filter(|e| d % e == 0).collect()
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den_mono: Monomial::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn int(c: i64) -> Self {
        RatFunc::from_poly(LaurentPoly::int(c))
    }

    pub fn constant(c: Coeff) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc::build(p, Monomial::one(), Vec::new())
    }

    pub fn monomial(m: Monomial) -> Self {
        RatFunc::from_poly(LaurentPoly::monomial(m))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::monomial(Monomial::var(v))
    }

    /// `1 / (1 - m)`, written `<m>_0` in the LaTeX output.
    pub fn geom(m: &Monomial) -> Self {
        RatFunc::build(LaurentPoly::one(), Monomial::one(), vec![(m.clone(), 1)])
    }

    /// `m / (1 - m)`.
    pub fn gp(m: &Monomial) -> Self {
        RatFunc::build(LaurentPoly::monomial(m.clone()), Monomial::one(), vec![(m.clone(), 1)])
    }

    /// `numerator / prod (1 - m)^k`. Panics if some `m` is the unit
    /// monomial.
    pub fn new(numerator: LaurentPoly, factors: Vec<(Monomial, u32)>) -> Self {
        RatFunc::build(numerator, Monomial::one(), factors)
    }

    /// General constructor including a denominator monomial.
    pub fn with_monomial(
        numerator: LaurentPoly,
        den_mono: Monomial,
        factors: Vec<(Monomial, u32)>,
    ) -> Self {
        RatFunc::build(numerator, den_mono, factors)
    }

    fn build(num: LaurentPoly, den_mono: Monomial, factors: Vec<(Monomial, u32)>) -> Self {
        let mut num = num.mul_monomial(&den_mono.inv());
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, k) in factors {
            assert!(!m.is_one(), "denominator factor (1 - 1) is zero");
            if k == 0 {
                continue;
            }
            let (base, flip) = if m.is_oriented() { (m, false) } else { (m.inv(), true) };
            if flip {
                // 1/(1-m) = -m^{-1}/(1-m^{-1}), and m^{-1} = base
                let unit = LaurentPoly::monomial(base.pow(k as i64));
                num = num.mul(&unit);
                if k % 2 == 1 {
                    num = num.neg();
                }
            }
            *map.entry(base).or_insert(0) += k;
        }
        let mut rf = RatFunc {
            num,
            den_mono: Monomial::one(),
            factors: map,
        };
        rf.reduce();
        rf
    }

    /// Cancels and root-reduces factors until nothing changes, then
    /// clears negative exponents into the denominator monomial.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.factors.clear();
            self.den_mono = Monomial::one();
            return;
        }
        loop {
            let mut changed = false;
            let bases: Vec<Monomial> = self.factors.keys().cloned().collect();
            for m in &bases {
                while let Some(k) = self.factors.get(m).copied() {
                    match self.num.div_one_minus(m) {
                        Some(q) => {
                            self.num = q;
                            changed = true;
                            if k == 1 {
                                self.factors.remove(m);
                            } else {
                                self.factors.insert(m.clone(), k - 1);
                            }
                        }
                        None => break,
                    }
                }
            }
            let bases: Vec<Monomial> = self.factors.keys().cloned().collect();
            for m in &bases {
                let d = m.content();
                if d <= 1 {
                    continue;
                }
                let u = Monomial::from_pairs(m.pairs().map(|(v, e)| (v, e / d)));
                for e in divisors_below(d) {
                    let ue = u.pow(e);
                    if let Some(q) = self.num.mul_one_minus(&ue).div_one_minus(m) {
                        self.num = q;
                        let k = self.factors[m];
                        if k == 1 {
                            self.factors.remove(m);
                        } else {
                            self.factors.insert(m.clone(), k - 1);
                        }
                        *self.factors.entry(ue).or_insert(0) += 1;
                        changed = true;
                        break;
                    }
                }
                if changed {
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        let mins = self.num.min_exponents();
        let shift = Monomial::from_pairs(mins.pairs().filter(|(_, e)| *e < 0).map(|(v, e)| (v, -e)));
        self.num = self.num.mul_monomial(&shift);
        self.den_mono = shift;
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_monomial(&self) -> &Monomial {
        &self.den_mono
    }

    /// Denominator factors `(m, k)` meaning `(1 - m)^k`, ascending in `m`.
    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.factors.iter().map(|(m, k)| (m, *k))
    }

    pub fn factor_list(&self) -> Vec<(Monomial, u32)> {
        self.factors.iter().map(|(m, k)| (m.clone(), *k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(poly)` when the denominator is trivial.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.factors.is_empty() {
            Some(self.num.mul_monomial(&self.den_mono.inv()))
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den_mono.vars());
        for m in self.factors.keys() {
            vs.extend(m.vars());
        }
        vs
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den_mono: self.den_mono.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den_mono: self.den_mono.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn scale_int(&self, c: i64) -> RatFunc {
        self.scale(&Coeff::from_integer(c.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> RatFunc {
        RatFunc::build(
            self.num.mul_monomial(m),
            self.den_mono.clone(),
            self.factor_list(),
        )
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        RatFunc::build(self.num.mul(p), self.den_mono.clone(), self.factor_list())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut factors = self.factor_list();
        factors.extend(other.factor_list());
        RatFunc::build(
            self.num.mul(&other.num),
            self.den_mono.mul(&other.den_mono),
            factors,
        )
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::sum([self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    /// Sum over a common denominator, reduced once at the end. The
    /// numerator products are formed in parallel; the result does not
    /// depend on scheduling because all arithmetic is exact.
    pub fn sum<I: IntoIterator<Item = RatFunc>>(items: I) -> RatFunc {
        // terms with identical denominators are added directly first
        let mut grouped: BTreeMap<(Monomial, Vec<(Monomial, u32)>), LaurentPoly> = BTreeMap::new();
        for r in items.into_iter().filter(|r| !r.is_zero()) {
            let key = (r.den_mono.clone(), r.factor_list());
            match grouped.get_mut(&key) {
                Some(n) => *n = n.add(&r.num),
                None => {
                    grouped.insert(key, r.num);
                }
            }
        }
        let items: Vec<RatFunc> = grouped
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .map(|((d, f), n)| RatFunc {
                num: n,
                den_mono: d,
                factors: f.into_iter().collect(),
            })
            .collect();
        match items.len() {
            0 => return RatFunc::zero(),
            1 => {
                let r = items.into_iter().next().unwrap();
                let factors = r.factor_list();
                return RatFunc::build(r.num, r.den_mono, factors);
            }
            _ => {}
        }
        let (lcm_mono, lcm) = common_denominator(items.iter());
        let nums: Vec<LaurentPoly> = items
            .par_iter()
            .map(|r| r.numerator_over_common(&lcm_mono, &lcm))
            .collect();
        let num = nums
            .into_iter()
            .reduce(|a, b| a.add(&b))
            .unwrap_or_default();
        RatFunc::build(num, lcm_mono, lcm.into_iter().collect())
    }

    /// Numerator of `self` rewritten over a denominator that is a
    /// multiple of its own.
    fn numerator_over_common(&self, mono: &Monomial, factors: &BTreeMap<Monomial, u32>) -> LaurentPoly {
        let mut n = self.num.mul_monomial(&mono.div(&self.den_mono));
        for (m, &k) in factors {
            let own = self.factors.get(m).copied().unwrap_or(0);
            for _ in own..k {
                n = n.mul_one_minus(m);
            }
        }
        n
    }

    /// Exact equality of rational functions.
    pub fn equals(&self, other: &RatFunc) -> bool {
        if self == other {
            return true;
        }
        let (mono, lcm) = common_denominator([self, other].into_iter());
        self.numerator_over_common(&mono, &lcm) == other.numerator_over_common(&mono, &lcm)
    }

    /// `self * prod (1 - m)^k` as a Laurent polynomial, if it is one.
    pub fn numerator_over(&self, factors: &[(Monomial, u32)]) -> Option<LaurentPoly> {
        let mut n = self.num.clone();
        for (m, k) in factors {
            for _ in 0..*k {
                n = n.mul_one_minus(m);
            }
        }
        RatFunc::build(n, self.den_mono.clone(), self.factor_list()).as_poly()
    }

    /// Replaces each listed variable `v` by `v^{-1}`.
    pub fn invert_vars(&self, vars: &[Var]) -> RatFunc {
        let factors = self
            .factors
            .iter()
            .map(|(m, k)| (m.invert_vars(vars), *k))
            .collect();
        RatFunc::build(
            self.num.invert_vars(vars),
            self.den_mono.invert_vars(vars),
            factors,
        )
    }

    /// Substitutes `v -> m`; fails if a denominator factor becomes zero.
    pub fn substitute_monomial(&self, v: Var, m: &Monomial) -> Result<RatFunc> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for (b, k) in &self.factors {
            let nb = b.substitute(v, m);
            if nb.is_one() {
                return Err(Error::Pole(format!("(1 - {b}) vanishes under {v} -> {m}")));
            }
            factors.push((nb, *k));
        }
        Ok(RatFunc::build(
            self.num.substitute_monomial(v, m),
            self.den_mono.substitute(v, m),
            factors,
        ))
    }

    /// Substitutes several variables simultaneously by monomials.
    pub fn substitute_all(&self, map: &HashMap<Var, Monomial>) -> Result<RatFunc> {
        let sub = |x: &Monomial| -> Monomial {
            let mut out = Monomial::one();
            for (v, e) in x.pairs() {
                match map.get(&v) {
                    Some(m) => out = out.mul(&m.pow(e)),
                    None => out = out.mul(&Monomial::from_pairs([(v, e)])),
                }
            }
            out
        };
        let mut factors = Vec::with_capacity(self.factors.len());
        for (b, k) in &self.factors {
            let nb = sub(b);
            if nb.is_one() {
                return Err(Error::Pole(format!("(1 - {b}) vanishes under substitution")));
            }
            factors.push((nb, *k));
        }
        let num = LaurentPoly::from_terms(self.num.terms().iter().map(|(x, c)| (sub(x), c.clone())));
        Ok(RatFunc::build(num, sub(&self.den_mono), factors))
    }

    /// Evaluates at a point; `None` at a pole.
    pub fn eval(&self, point: &HashMap<Var, Coeff>) -> Option<Coeff> {
        let one = LaurentPoly::one();
        let mut den = LaurentPoly::monomial(self.den_mono.clone()).eval(point);
        for (m, k) in &self.factors {
            let f = one.sub(&LaurentPoly::monomial(m.clone())).eval(point);
            den *= super::poly::pow_signed(&f, *k as i64);
        }
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / den)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.den_mono.is_one() && self.num.is_one()
    }
}

/// Least common multiple of the denominators, factor by factor.
fn common_denominator<'a, I: Iterator<Item = &'a RatFunc>>(
    items: I,
) -> (Monomial, BTreeMap<Monomial, u32>) {
    let mut mono = Monomial::one();
    let mut lcm: BTreeMap<Monomial, u32> = BTreeMap::new();
    for r in items {
        let pairs: Vec<(Var, i64)> = r
            .den_mono
            .pairs()
            .filter(|(v, e)| *e > mono.exp(*v))
            .map(|(v, e)| (v, e - mono.exp(v)))
            .collect();
        mono = mono.mul(&Monomial::from_pairs(pairs));
        for (m, &k) in &r.factors {
            let e = lcm.entry(m.clone()).or_insert(0);
            *e = (*e).max(k);
        }
    }
    (mono, lcm)
}

pub fn rf_add(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.add(b)
}

pub fn rf_mul(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.mul(b)
}

pub fn rf_sum<I: IntoIterator<Item = RatFunc>>(items: I) -> RatFunc {
    RatFunc::sum(items)
}

pub fn rf_equal(a: &RatFunc, b: &RatFunc) -> bool {
    a.equals(b)
}

pub fn rf_invert_vars(a: &RatFunc, vars: &[Var]) -> RatFunc {
    a.invert_vars(vars)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::ratfunc_text(self))
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Monomial> for RatFunc {
    fn from(m: Monomial) -> Self {
        RatFunc::monomial(m)
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |a, b| a.mul(&b))
    }
}
