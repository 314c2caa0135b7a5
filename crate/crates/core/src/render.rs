//! Text rendering in canonical PBW notation.
//!
//! Elements print as `−2·I(0) + 2·C_L`, tensors as `1⊗I(1) + (I(1)·L(0))⊗1`
//! (legs parenthesized when they are products or powers), and series as
//! `x₀ + (x₁)t + (x₂)t^2`. Terms appear in ascending monomial order, so equal
//! values print identically.

use std::fmt;

use num_traits::{One, Signed};

use crate::combination::{Basis, Combination, Monomial};
use crate::scalar::Scalar;
use crate::series::Series;

pub const MINUS: char = '\u{2212}';

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (n, (g, k)) in self.factors().iter().enumerate() {
            if n > 0 {
                write!(f, "·")?;
            }
            if *k == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{k}")?;
            }
        }
        Ok(())
    }
}

fn is_atomic(m: &Monomial) -> bool {
    m.is_one() || matches!(m.factors(), [(_, 1)])
}

/// A basis key: a bare monomial, or legs joined by `⊗`.
pub fn key_string<K: Basis>(key: &K) -> String {
    let legs = key.legs();
    if legs.len() == 1 {
        return legs[0].to_string();
    }
    legs.iter()
        .map(|m| {
            if is_atomic(m) {
                m.to_string()
            } else {
                format!("({m})")
            }
        })
        .collect::<Vec<_>>()
        .join("⊗")
}

/// Renders a magnitude with ASCII `/`, e.g. `3/2`.
fn magnitude(c: &Scalar) -> String {
    c.abs().to_string()
}

/// Appends `± [|c|·]body` to `out`; `body == None` means the unit key.
fn push_term(out: &mut String, first: bool, c: &Scalar, body: Option<&str>) {
    let negative = c.is_negative();
    if first {
        if negative {
            out.push(MINUS);
        }
    } else {
        out.push_str(if negative { " \u{2212} " } else { " + " });
    }
    match body {
        None => out.push_str(&magnitude(c)),
        Some(b) if c.abs().is_one() => out.push_str(b),
        Some(b) => {
            out.push_str(&magnitude(c));
            out.push('·');
            out.push_str(b);
        }
    }
}

impl<K: Basis> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, (k, c)) in self.iter().enumerate() {
            let unit = k.legs().iter().all(Monomial::is_one) && K::LEGS == 1;
            let body = key_string(k);
            push_term(&mut out, n == 0, c, if unit { None } else { Some(&body) });
        }
        f.write_str(&out)
    }
}

impl<K: Basis> fmt::Display for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (r, coeff) in self.coeffs().iter().enumerate() {
            for (k, c) in coeff.iter() {
                let unit = K::LEGS == 1 && k.legs()[0].is_one();
                let key = key_string(k);
                let body = match (r, unit) {
                    (0, true) => None,
                    (0, false) => Some(key),
                    (1, true) => Some("t".to_string()),
                    (_, true) => Some(format!("t^{r}")),
                    (1, false) => Some(format!("({key})t")),
                    (_, false) => Some(format!("({key})t^{r}")),
                };
                push_term(&mut out, first, c, body.as_deref());
                first = false;
            }
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::combination::{tensor2, Element, Tensor2};
    use crate::scalar::{int, rat};

    #[test]
    fn element_rendering() {
        let x = Element::generator(Generator::i(0)).scale(&int(-2))
            + Element::generator(Generator::CL).scale(&int(2));
        assert_eq!(x.to_string(), "−2·I(0) + 2·C_L");
        let y = Element::monomial(
            Monomial::from_sorted(vec![(Generator::i(1), 1), (Generator::L(rat(-1, 2)), 2)]).unwrap(),
        )
        .scale(&rat(-3, 2))
            + Element::scalar(int(4));
        assert_eq!(y.to_string(), "4 − 3/2·I(1)·L(-1/2)^2");
        assert_eq!(Element::zero().to_string(), "0");
        assert_eq!((-Element::one()).to_string(), "−1");
    }

    #[test]
    fn tensor_series_rendering() {
        let e = Element::generator(Generator::i(1));
        let one = Element::one();
        let head = tensor2(&one, &e) + tensor2(&e, &one);
        let s = Series::from_coeffs(vec![head, -tensor2(&e, &e)], 3);
        assert_eq!(s.to_string(), "1⊗I(1) + I(1)⊗1 − (I(1)⊗I(1))t");
        let ee = Element::monomial(Monomial::power(Generator::i(1), 2));
        let t: Tensor2 = tensor2(&ee, &one).scale(&int(2));
        assert_eq!(t.to_string(), "2·(I(1)^2)⊗1");
        let es = Series::from_coeffs(vec![Element::zero(), Element::one(), ee], 2);
        assert_eq!(es.to_string(), "t + (I(1)^2)t^2");
    }
}
