//! Functional equations under `(p, t) -> (p^{-1}, t^{-1})`.

use serde::Serialize;

use crate::ratfunc::{coeff, LaurentPoly, Monomial, RatFunc, Var};

/// The claim `F(p^{-1}, t^{-1}) = (-1)^a p^b t^c F(p, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymmetryData {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl SymmetryData {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        SymmetryData { a, b, c }
    }

    /// Symmetry of a product is the sum of the symmetries.
    pub fn compose(self, other: SymmetryData) -> SymmetryData {
        SymmetryData::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    pub fn factor(self) -> LaurentPoly {
        let sign = if self.a.rem_euclid(2) == 0 { 1 } else { -1 };
        LaurentPoly::term(Monomial::pt(self.b, self.c), coeff(sign))
    }
}

pub fn invert_pt(f: &RatFunc) -> RatFunc {
    f.invert_vars(&[Var::P, Var::T])
}

pub fn check_funceq(f: &RatFunc, sym: SymmetryData) -> bool {
    invert_pt(f).equals(&f.mul_poly(&sym.factor()))
}

/// Generic check for an arbitrary set of inverted variables and an
/// arbitrary claimed factor.
pub fn check_funceq_with(f: &RatFunc, vars: &[Var], factor: &LaurentPoly) -> bool {
    f.invert_vars(vars).equals(&f.mul_poly(factor))
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `(3n, C(3n, 2), 5n)`.
pub fn expected_symmetry_unramified(n: usize) -> SymmetryData {
    let n = n as i64;
    SymmetryData::new(3 * n, binom2(3 * n), 5 * n)
}

/// `(g + n, (5n^2 - n)/2, 5n)`.
pub fn expected_symmetry_dwa(n: usize, g: usize) -> SymmetryData {
    let (n, g) = (n as i64, g as i64);
    SymmetryData::new(g + n, (5 * n * n - n) / 2, 5 * n)
}

/// `prod (1 - t^{2 f_i})`: `(g, 0, -2n)`.
pub fn symmetry_t_prefactor(n: usize, g: usize) -> SymmetryData {
    SymmetryData::new(g as i64, 0, -2 * n as i64)
}

/// `zeta_{Z_p^d}`: `(d, C(d, 2), d)`.
pub fn symmetry_abelian(d: usize) -> SymmetryData {
    let d = d as i64;
    SymmetryData::new(d, binom2(d), d)
}

/// Parity-aware equality of symmetry data.
pub fn same_symmetry(x: SymmetryData, y: SymmetryData) -> bool {
    (x.a - y.a).rem_euclid(2) == 0 && x.b == y.b && x.c == y.c
}
