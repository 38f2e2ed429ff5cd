//! Hand-entered closed forms shared by the fixture and acceptance suites.

#![allow(dead_code)]

use hzeta::combinat::{gaussian_binomial_at, gaussian_multinomial_at, DyckWord, YSpec};
use hzeta::igusa::{igusa_i, igusa_i_circ};
use hzeta::ratfunc::{parse_monomial, Monomial, RatFunc};

pub fn m(s: &str) -> Monomial {
    parse_monomial(s).unwrap()
}

/// `x/(1-x)`
pub fn gp(s: &str) -> RatFunc {
    RatFunc::gp(&m(s))
}

/// `1/(1-x)`
pub fn gz(s: &str) -> RatFunc {
    RatFunc::geom(&m(s))
}

pub fn c(k: i64) -> RatFunc {
    RatFunc::int(k)
}

pub fn qb(a: usize, b: usize) -> RatFunc {
    RatFunc::from_poly(gaussian_binomial_at(a, b, YSpec::PInverse).unwrap())
}

pub fn qm(n: usize, set: &[usize]) -> RatFunc {
    RatFunc::from_poly(gaussian_multinomial_at(n, set, YSpec::PInverse).unwrap())
}

pub fn args(xs: &[&str]) -> Vec<Monomial> {
    xs.iter().map(|s| m(s)).collect()
}

pub fn i_p(xs: &[&str]) -> RatFunc {
    igusa_i(xs.len(), YSpec::PInverse, &args(xs)).unwrap()
}

pub fn ic_p(xs: &[&str]) -> RatFunc {
    igusa_i_circ(xs.len(), YSpec::PInverse, &args(xs)).unwrap()
}

pub fn i_1(xs: &[&str]) -> RatFunc {
    igusa_i(xs.len(), YSpec::One, &args(xs)).unwrap()
}

pub fn inv_t2(k: u32) -> RatFunc {
    gz("t^2").pow(k)
}

pub fn prod(fs: &[RatFunc]) -> RatFunc {
    fs.iter().fold(RatFunc::one(), |a, b| a.mul(b))
}

pub fn w(s: &str) -> DyckWord {
    s.parse().unwrap()
}

pub fn n3_rows() -> Vec<(&'static str, RatFunc)> {
    vec![
        (
            "000111",
            prod(&[
                gz("p^18t^9"),
                RatFunc::sum([
                    c(1),
                    qb(3, 1).mul(&gp("p^14t^8").add(&gp("p^8t^7"))),
                    prod(&[qm(3, &[1, 2]), gp("p^14t^8"), gp("p^8t^7")]),
                ]),
                inv_t2(3),
            ]),
        ),
        (
            "001011",
            prod(&[
                c(3),
                gz("p^18t^9"),
                c(1).add(&qb(2, 1).mul(&gp("p^14t^8"))),
                gz("p^8t^7"),
                qb(2, 1),
                gp("p^7t^5"),
                inv_t2(2),
            ]),
        ),
        (
            "001101",
            prod(&[
                c(3),
                gz("p^18t^9"),
                gz("p^14t^8"),
                gp("p^12t^6"),
                c(1).add(&qb(2, 1).mul(&gp("p^7t^5"))),
                inv_t2(2),
            ]),
        ),
        (
            "010011",
            prod(&[
                c(3),
                gz("p^18t^9"),
                c(1).add(&qb(2, 1).mul(&gp("p^14t^8"))),
                gz("p^8t^7"),
                c(1).add(&gp("p^7t^5").scale_int(2)),
                gp("p^6t^3"),
                inv_t2(1),
            ]),
        ),
        (
            "010101",
            prod(&[
                c(6),
                gz("p^18t^9"),
                gz("p^14t^8"),
                gp("p^12t^6"),
                gz("p^7t^5"),
                gp("p^6t^3"),
                inv_t2(1),
            ]),
        ),
    ]
}

pub fn n4_rows() -> Vec<(&'static str, RatFunc)> {
    let x4 = ["p^11t^9", "p^20t^10", "p^27t^11", "p^32t^12"];
    let x3 = ["p^20t^10", "p^27t^11", "p^32t^12"];
    let x2 = ["p^27t^11", "p^32t^12"];
    vec![
        ("00001111", prod(&[inv_t2(4), i_p(&x4)])),
        (
            "00010111",
            prod(&[c(4), inv_t2(3), qb(3, 2), gp("p^10t^7"), gz("p^11t^9"), i_p(&x3)]),
        ),
        (
            "00011011",
            prod(&[c(4), inv_t2(3), qb(3, 1), ic_p(&["p^10t^7", "p^18t^8"]), gz("p^20t^10"), i_p(&x2)]),
        ),
        (
            "00011101",
            prod(&[
                c(4),
                inv_t2(3),
                ic_p(&["p^10t^7", "p^18t^8", "p^24t^9"]),
                gz("p^27t^11"),
                gz("p^32t^12"),
            ]),
        ),
        (
            "00100111",
            prod(&[c(6), inv_t2(2), qb(2, 1), gp("p^9t^5"), i_1(&["p^10t^7", "p^11t^9"]), i_p(&x3)]),
        ),
        (
            "00101011",
            prod(&[
                c(12),
                inv_t2(2),
                qb(2, 1).pow(2),
                gp("p^9t^5"),
                gz("p^10t^7"),
                gp("p^18t^8"),
                gz("p^20t^10"),
                i_p(&x2),
            ]),
        ),
        (
            "00101101",
            prod(&[
                c(12),
                inv_t2(2),
                qb(2, 1),
                gp("p^9t^5"),
                gz("p^10t^7"),
                ic_p(&["p^18t^8", "p^24t^9"]),
                gz("p^27t^11"),
                gz("p^32t^12"),
            ]),
        ),
        (
            "00110011",
            prod(&[
                c(6),
                inv_t2(2),
                ic_p(&["p^9t^5", "p^16t^6"]),
                i_1(&["p^18t^8", "p^20t^10"]),
                i_p(&x2),
            ]),
        ),
        (
            "00110101",
            prod(&[
                c(12),
                inv_t2(2),
                ic_p(&["p^9t^5", "p^16t^6"]),
                gz("p^18t^8"),
                gp("p^24t^9"),
                gz("p^27t^11"),
                gz("p^32t^12"),
            ]),
        ),
        (
            "01000111",
            prod(&[c(4), inv_t2(1), gp("p^8t^3"), i_1(&["p^9t^5", "p^10t^7", "p^11t^9"]), i_p(&x3)]),
        ),
        (
            "01001011",
            prod(&[
                c(12),
                inv_t2(1),
                qb(2, 1),
                gp("p^8t^3"),
                i_1(&["p^9t^5", "p^10t^7"]),
                gp("p^18t^8"),
                gz("p^20t^10"),
                i_p(&x2),
            ]),
        ),
        (
            "01001101",
            prod(&[
                c(12),
                inv_t2(1),
                gp("p^8t^3"),
                i_1(&["p^9t^5", "p^10t^7"]),
                ic_p(&["p^18t^8", "p^24t^9"]),
                gz("p^27t^11"),
                gz("p^32t^12"),
            ]),
        ),
        (
            "01010011",
            prod(&[
                c(12),
                inv_t2(1),
                gp("p^8t^3"),
                gz("p^9t^5"),
                gp("p^16t^6"),
                i_1(&["p^18t^8", "p^20t^10"]),
                i_p(&x2),
            ]),
        ),
        (
            "01010101",
            prod(&[
                c(24),
                inv_t2(1),
                gp("p^8t^3"),
                gz("p^9t^5"),
                gp("p^16t^6"),
                gz("p^18t^8"),
                gp("p^24t^9"),
                gz("p^27t^11"),
                gz("p^32t^12"),
            ]),
        ),
    ]
}

pub const P_22: &str = "p^61t^35 + 2p^53t^30 - p^53t^26 + p^52t^30 - p^52t^26 + p^51t^26 - \
    p^45t^25 + p^44t^25 - p^44t^21 + 2p^43t^25 - p^43t^21 + p^42t^25 - \
    p^42t^21 - p^37t^24 - p^36t^24 + p^36t^20 + p^35t^24 - p^35t^20 - \
    p^35t^16 - p^34t^16 + p^33t^20 - p^33t^16 - p^28t^19 + p^28t^15 - \
    p^27t^19 - p^26t^19 - p^26t^15 + p^26t^11 + p^25t^15 - p^25t^11 - \
    p^24t^11 - p^19t^14 + p^19t^10 - p^18t^14 + 2p^18t^10 - p^17t^14 + \
    p^17t^10 - p^16t^10 + p^10t^9 - p^9t^9 + p^9t^5 - p^8t^9 + 2p^8t^5 + 1";

/// `zeta_{Z_p^8} zeta_p(11s-27) zeta_p(10s-20) zeta_p(9s-11) zeta_p(5s-9) zeta_p(6s-16)^2`
pub fn denominator_22() -> Vec<(Monomial, u32)> {
    let mut d: Vec<(Monomial, u32)> = (0..8).map(|i| (Monomial::pt(i, 1), 1)).collect();
    for (a, b, k) in [(27, 11, 1), (20, 10, 1), (11, 9, 1), (9, 5, 1), (16, 6, 2)] {
        d.push((Monomial::pt(a, b), k));
    }
    d
}

