//! The automorphism `σ_t` (`x -> x`, `y -> t x + y`) and the linear map
//! `S_t(w a) = σ_t(w) a`, `S_t(1) = 1`.
//!
//! Both are implemented for an arbitrary parameter polynomial so that numeric
//! specializations `S_s` for `s ∈ Q` share the same code path.

use crate::arith::{Rational, TPoly};
use crate::word::{Element, Letter, Word};

/// Expands `σ_param` over `letters`, accumulating `coeff * σ(letters) * suffix` into `out`.
fn expand_sigma(letters: &[Letter], suffix: &[Letter], coeff: &TPoly, param: &TPoly, out: &mut Element) {
    // Each y contributes a binary choice: keep y (factor 1) or replace by x (factor param).
    let y_positions: Vec<usize> =
        letters.iter().enumerate().filter(|(_, &l)| l == Letter::Y).map(|(i, _)| i).collect();
    let choices = 1u64 << y_positions.len();
    let mut buf: Vec<Letter> = Vec::with_capacity(letters.len() + suffix.len());
    for mask in 0..choices {
        buf.clear();
        buf.extend_from_slice(letters);
        let replaced = mask.count_ones();
        for (bit, &pos) in y_positions.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                buf[pos] = Letter::X;
            }
        }
        buf.extend_from_slice(suffix);
        let c = if replaced == 0 { coeff.clone() } else { coeff.mul(&param.pow(replaced)) };
        out.add_term(Word::from_letters(buf.clone()), c);
    }
}

/// `σ_param` extended multiplicatively to words and linearly to elements.
pub fn sigma(a: &Element, param: &TPoly) -> Element {
    let mut out = Element::zero();
    for (w, c) in a.iter() {
        expand_sigma(w.letters(), &[], c, param, &mut out);
    }
    out
}

/// `σ_t`
pub fn sigma_t(a: &Element) -> Element {
    sigma(a, &TPoly::t())
}

/// `S_param`: `σ_param` on all letters but the last, which stays fixed.
pub fn s_map(a: &Element, param: &TPoly) -> Element {
    let mut out = Element::zero();
    for (w, c) in a.iter() {
        match w.letters().split_last() {
            None => out.add_term(Word::empty(), c.clone()),
            Some((last, prefix)) => expand_sigma(prefix, std::slice::from_ref(last), c, param, &mut out),
        }
    }
    out
}

/// `S_t`
pub fn s_t(a: &Element) -> Element {
    s_map(a, &TPoly::t())
}

/// `S_s` for a numeric parameter `s`.
pub fn s_at(a: &Element, s: &Rational) -> Element {
    s_map(a, &TPoly::constant(s.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        Element::from_word(s.parse().unwrap())
    }

    #[test]
    fn sigma_on_letters() {
        let mut expected = Element::term("x".parse().unwrap(), TPoly::t());
        expected.add_term("y".parse().unwrap(), TPoly::one());
        assert_eq!(sigma_t(&el("y")), expected);
        assert_eq!(sigma_t(&el("x")), el("x"));
        let mut expected = Element::term("xx".parse().unwrap(), TPoly::t());
        expected.add_term("xy".parse().unwrap(), TPoly::one());
        assert_eq!(sigma_t(&el("xy")), expected);
    }

    #[test]
    fn s_t_examples() {
        assert_eq!(s_t(&el("xy")), el("xy"));
        let mut expected = Element::term("xxy".parse().unwrap(), TPoly::t());
        expected.add_term("xyy".parse().unwrap(), TPoly::one());
        assert_eq!(s_t(&el("xyy")), expected);
        assert_eq!(s_t(&Element::one()), Element::one());
        assert_eq!(s_t(&el("y")), el("y"));
        assert_eq!(s_t(&el("x")), el("x"));
    }

    #[test]
    fn s_t_at_zero_is_identity() {
        let e = el("xyyxy").add(&el("yxy"));
        assert_eq!(s_at(&e, &Rational::zero()), e);
    }

    #[test]
    fn s_t_of_z2z1z1() {
        // S_t(z2 z1 z1) = z2 z1 z1 + t z3 z1 + t z2 z2 + t^2 z4
        let e = s_t(&el("xyyy"));
        assert_eq!(e.len(), 4);
        assert_eq!(e.coeff(&"xxxy".parse().unwrap()), TPoly::t().pow(2));
        assert_eq!(e.coeff(&"xyxy".parse().unwrap()), TPoly::t());
    }
}
