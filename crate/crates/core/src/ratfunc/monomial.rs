use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::var::Var;

/// A Laurent monomial: sorted `(variable, exponent)` pairs with no zero
/// exponents.
///
/// `Ord` is the lexicographic order on dense exponent vectors, with `p`
/// most significant. It is translation invariant, so multiplying every
/// term of a sorted polynomial by one monomial keeps it sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[(Var, i64); 3]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::from_pairs([(v, 1)])
    }

    /// `p^a t^b`, the shape of nearly every monomial in the zeta pipeline.
    pub fn pt(a: i64, b: i64) -> Self {
        Monomial::from_pairs([(Var::P, a), (Var::T, b)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, i64)>>(pairs: I) -> Self {
        let mut exps: SmallVec<[(Var, i64); 3]> = SmallVec::new();
        for (v, e) in pairs {
            match exps.binary_search_by(|(w, _)| w.cmp(&v)) {
                Ok(i) => exps[i].1 += e,
                Err(i) => exps.insert(i, (v, e)),
            }
        }
        exps.retain(|(_, e)| *e != 0);
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, v: Var) -> i64 {
        match self.exps.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|(v, _)| *v)
    }

    /// First nonzero exponent in variable order.
    pub fn leading(&self) -> Option<(Var, i64)> {
        self.exps.first().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out: SmallVec<[(Var, i64); 3]> = SmallVec::new();
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        let exps = if k == 0 {
            SmallVec::new()
        } else {
            self.exps.iter().map(|&(v, e)| (v, e * k)).collect()
        };
        Monomial { exps }
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Replaces each listed variable `v` by `v^{-1}`.
    pub fn invert_vars(&self, vars: &[Var]) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&(v, e)| if vars.contains(&v) { (v, -e) } else { (v, e) })
            .collect();
        Monomial { exps }
    }

    /// Substitutes `v -> m`.
    pub fn substitute(&self, v: Var, m: &Monomial) -> Monomial {
        let e = self.exp(v);
        if e == 0 {
            return self.clone();
        }
        let rest = Monomial::from_pairs(self.exps.iter().copied().filter(|(w, _)| *w != v));
        rest.mul(&m.pow(e))
    }

    /// Componentwise minimum, treating absent variables as exponent 0.
    pub fn gcd_floor(&self, other: &Monomial) -> Monomial {
        let mut pairs: Vec<(Var, i64)> = Vec::new();
        for (v, e) in self.pairs() {
            pairs.push((v, e.min(other.exp(v))));
        }
        for (v, e) in other.pairs() {
            if self.exp(v) == 0 {
                pairs.push((v, e.min(0)));
            }
        }
        Monomial::from_pairs(pairs)
    }

    /// Degree in every variable is at least zero.
    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|(_, e)| *e >= 0)
    }

    /// gcd of the exponents (0 for the unit monomial).
    pub fn content(&self) -> i64 {
        self.exps.iter().fold(0i64, |g, (_, e)| num_integer::gcd(g, *e))
    }

    /// Writes `(1 - self)` factors in the stored orientation: leading
    /// exponent positive.
    pub fn is_oriented(&self) -> bool {
        matches!(self.leading(), Some((_, e)) if e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.pairs() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
