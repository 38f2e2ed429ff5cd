//! Text, LaTeX and JSON renderings. Terms are listed in descending
//! monomial order, so `p^61 t^35` comes before `p^53 t^30`.

use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::rational::RatFunc;
use super::Coeff;

fn coeff_text(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `2*p^53*t^30 - p^53*t^26 + 1`; accepted back by the parser.
pub fn poly_text(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&coeff_text(&a));
        } else if a.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format!("{}*{}", coeff_text(&a), m));
        }
    }
    out
}

fn denominator_text(r: &RatFunc) -> Vec<String> {
    let mut parts = Vec::new();
    if !r.denominator_monomial().is_one() {
        parts.push(r.denominator_monomial().to_string());
    }
    for (m, k) in r.factors() {
        if k == 1 {
            parts.push(format!("(1 - {m})"));
        } else {
            parts.push(format!("(1 - {m})^{k}"));
        }
    }
    parts
}

pub fn ratfunc_text(r: &RatFunc) -> String {
    let den = denominator_text(r);
    if den.is_empty() {
        return poly_text(r.numerator());
    }
    format!("({})/({})", poly_text(r.numerator()), den.join("*"))
}

pub fn monomial_latex(m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let parts: Vec<String> = m
        .pairs()
        .map(|(v, e)| {
            if e == 1 {
                v.name()
            } else {
                format!("{}^{{{}}}", v.name(), e)
            }
        })
        .collect();
    parts.join(" ")
}

fn coeff_latex(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn poly_latex(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&coeff_latex(&a));
        } else if a.is_one() {
            out.push_str(&monomial_latex(m));
        } else {
            out.push_str(&format!("{} {}", coeff_latex(&a), monomial_latex(m)));
        }
    }
    out
}

fn denominator_latex(r: &RatFunc) -> Vec<String> {
    let mut parts = Vec::new();
    if !r.denominator_monomial().is_one() {
        parts.push(monomial_latex(r.denominator_monomial()));
    }
    for (m, k) in r.factors() {
        if k == 1 {
            parts.push(format!("(1 - {})", monomial_latex(m)));
        } else {
            parts.push(format!("(1 - {})^{{{}}}", monomial_latex(m), k));
        }
    }
    parts
}

/// `\frac{numerator}{denominator}`.
pub fn ratfunc_latex(r: &RatFunc) -> String {
    let den = denominator_latex(r);
    if den.is_empty() {
        return poly_latex(r.numerator());
    }
    format!("\\frac{{{}}}{{{}}}", poly_latex(r.numerator()), den.join(""))
}

/// Numerator times `\langle m\rangle_0 = 1/(1-m)` brackets.
pub fn ratfunc_latex_brackets(r: &RatFunc) -> String {
    let mut parts = Vec::new();
    let num = poly_latex(r.numerator());
    if r.numerator().len() > 1 {
        parts.push(format!("\\left({num}\\right)"));
    } else {
        parts.push(num);
    }
    if !r.denominator_monomial().is_one() {
        parts.push(format!(
            "\\frac{{1}}{{{}}}",
            monomial_latex(r.denominator_monomial())
        ));
    }
    for (m, k) in r.factors() {
        let b = format!("\\langle {} \\rangle_0", monomial_latex(m));
        if k == 1 {
            parts.push(b);
        } else {
            parts.push(format!("{b}^{{{k}}}"));
        }
    }
    parts.join(" ")
}

fn monomial_json(m: &Monomial) -> Value {
    let mut obj = Map::new();
    for (v, e) in m.pairs() {
        obj.insert(v.name(), json!(e));
    }
    Value::Object(obj)
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .rev()
            .map(|(m, c)| json!([c.numer().to_string(), c.denom().to_string(), monomial_json(m)]))
            .collect(),
    )
}

/// `{"numerator": [[num, den, {var: exp}], ...], "denominator": [[{var: exp}, k], ...]}`,
/// with `"denominator_monomial"` added when that monomial is not 1.
pub fn ratfunc_json(r: &RatFunc) -> Value {
    let mut obj = Map::new();
    obj.insert("numerator".into(), poly_json(r.numerator()));
    obj.insert(
        "denominator".into(),
        Value::Array(
            r.factors()
                .map(|(m, k)| json!([monomial_json(m), k]))
                .collect(),
        ),
    );
    if !r.denominator_monomial().is_one() {
        obj.insert(
            "denominator_monomial".into(),
            monomial_json(r.denominator_monomial()),
        );
    }
    Value::Object(obj)
}

impl RatFunc {
    pub fn to_latex(&self) -> String {
        ratfunc_latex(self)
    }

    pub fn to_latex_brackets(&self) -> String {
        ratfunc_latex_brackets(self)
    }

    pub fn to_json(&self) -> Value {
        ratfunc_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse::{parse_poly, parse_ratfunc};

    #[test]
    fn text_round_trips_through_parser() {
        let r = parse_ratfunc("(2 - t - p*t)/((1-p*t)*(1-t)^2) + p^-3").unwrap();
        let back = parse_ratfunc(&r.to_string()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn descending_term_order() {
        let p = parse_poly("1 + 2*p^53*t^30 + p^61*t^35 - p^53*t^26").unwrap();
        assert_eq!(poly_text(&p), "p^61*t^35 + 2*p^53*t^30 - p^53*t^26 + 1");
        assert_eq!(poly_latex(&p), "p^{61} t^{35} + 2 p^{53} t^{30} - p^{53} t^{26} + 1");
    }

    #[test]
    fn json_shape() {
        let r = parse_ratfunc("1/(2*(1-t)*p)").unwrap();
        let j = r.to_json();
        assert_eq!(j["numerator"], json!([["1", "2", {}]]));
        assert_eq!(j["denominator"], json!([[{"t": 1}, 1]]));
        assert_eq!(j["denominator_monomial"], json!({"p": 1}));
    }

    #[test]
    fn latex_forms() {
        let r = parse_ratfunc("1/((1-t^2)*(1-p^2*t^3))").unwrap();
        assert_eq!(r.to_latex(), "\\frac{1}{(1 - t^{2})(1 - p^{2} t^{3})}");
        assert_eq!(
            r.to_latex_brackets(),
            "1 \\langle t^{2} \\rangle_0 \\langle p^{2} t^{3} \\rangle_0"
        );
    }
}
