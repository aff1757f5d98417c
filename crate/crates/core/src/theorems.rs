//! Right-hand-side builders for the t-stuffle decomposition identities and
//! checkers comparing them against the product engine or numeric `Z^t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{binom, factorial, GaussianRational, Rational, TPoly};
use crate::error::Error;
use crate::stuffle::{stuffle_classical, stuffle_combinatorial, stuffle_o_index, stuffle_t_index};
use crate::word::{Element, Index, Word};
use crate::zeta::{EvalConfig, Evaluator};

/// Tolerance for decomposition identities evaluated at a common cutoff.
pub const THM3_TOLERANCE: f64 = 1e-3;
/// Tolerance for the alternating `ζ({p}^m) ζ({p}^n)` sums.
pub const ALTERNATING_TOLERANCE: f64 = 1e-4;
pub const THM3_DEFAULT_CUTOFF: usize = 100_000;
pub const ALTERNATING_DEFAULT_CUTOFF: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Statement {
    #[serde(rename = "thm1")]
    Thm1,
    #[serde(rename = "thm2")]
    Thm2,
    #[serde(rename = "thm3")]
    Thm3,
    #[serde(rename = "lemma23")]
    Lemma23,
    #[serde(rename = "lemma24")]
    Lemma24,
    #[serde(rename = "prop31")]
    Prop31,
    #[serde(rename = "prop41")]
    Prop41,
    #[serde(rename = "cor42")]
    Cor42,
    #[serde(rename = "combinatorial")]
    Combinatorial,
    #[serde(rename = "t0")]
    T0Reduction,
    #[serde(rename = "eq31")]
    Eq31,
    #[serde(rename = "zeta8")]
    Zeta8,
}

impl Statement {
    pub const ALL: [Statement; 12] = [
        Statement::Thm1,
        Statement::Thm2,
        Statement::Thm3,
        Statement::Lemma23,
        Statement::Lemma24,
        Statement::Prop31,
        Statement::Prop41,
        Statement::Cor42,
        Statement::Combinatorial,
        Statement::T0Reduction,
        Statement::Eq31,
        Statement::Zeta8,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::Thm1 => "thm1",
            Statement::Thm2 => "thm2",
            Statement::Thm3 => "thm3",
            Statement::Lemma23 => "lemma23",
            Statement::Lemma24 => "lemma24",
            Statement::Prop31 => "prop31",
            Statement::Prop41 => "prop41",
            Statement::Cor42 => "cor42",
            Statement::Combinatorial => "combinatorial",
            Statement::T0Reduction => "t0",
            Statement::Eq31 => "eq31",
            Statement::Zeta8 => "zeta8",
        }
    }

    /// Whether checking requires floating-point evaluation.
    pub fn is_numeric(self) -> bool {
        matches!(self, Statement::Thm3 | Statement::Cor42)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Statement::ALL
            .into_iter()
            .find(|st| st.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown statement {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Symbolic { lhs: Element, rhs: Element },
    Numeric { lhs: f64, rhs: f64, diff: f64 },
    Exact { lhs: String, rhs: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub statement: Statement,
    pub params: BTreeMap<String, i64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Structural comparison; the witness is attached only on failure.
    fn symbolic(statement: Statement, params: BTreeMap<String, i64>, lhs: Element, rhs: Element) -> Self {
        if lhs == rhs {
            VerifyReport { statement, params, verdict: Verdict::Pass, witness: None }
        } else {
            VerifyReport { statement, params, verdict: Verdict::Fail, witness: Some(Witness::Symbolic { lhs, rhs }) }
        }
    }

    fn numeric(statement: Statement, params: BTreeMap<String, i64>, lhs: f64, rhs: f64, diff: f64, tol: f64) -> Self {
        let verdict = if diff <= tol { Verdict::Pass } else { Verdict::Fail };
        VerifyReport { statement, params, verdict, witness: Some(Witness::Numeric { lhs, rhs, diff }) }
    }

    fn exact(statement: Statement, params: BTreeMap<String, i64>, ok: bool, lhs: String, rhs: String) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        VerifyReport { statement, params, verdict, witness: Some(Witness::Exact { lhs, rhs }) }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} [{}]", self.statement, params.join(" "))?;
        match &self.witness {
            Some(Witness::Numeric { lhs, rhs, diff }) => write!(f, " lhs={lhs:.12e} rhs={rhs:.12e} diff={diff:.3e}"),
            Some(Witness::Exact { lhs, rhs }) => write!(f, " lhs={lhs} rhs={rhs}"),
            Some(Witness::Symbolic { lhs, rhs }) if !self.passed() => {
                write!(f, "\n  lhs = {lhs}\n  rhs = {rhs}\n  lhs - rhs = {}", lhs.sub(rhs))
            }
            _ => Ok(()),
        }
    }
}

fn params_of(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn require(cond: bool, what: &str) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadParams(what.to_string()))
    }
}

fn zp_power(p: u32, reps: u32) -> Index {
    Index::repeated(p, reps as usize)
}

fn head_tail(head: u32, p: u32, reps: u32) -> Index {
    Index::head_with_tail(head, p, reps as usize)
}

fn t2_minus_t() -> TPoly {
    TPoly::t_squared_minus_t()
}

fn one_minus_2t() -> TPoly {
    TPoly::one_minus_two_t()
}

fn weight_coeff(b: Rational, i: u32, j: u32) -> TPoly {
    TPoly::constant(b).mul(&t2_minus_t().pow(i)).mul(&one_minus_2t().pow(j))
}

/// Compositions of `weight` into `len` positive multiples of `p`, exactly
/// `even` of which are even multiples. `len = 0` yields the empty composition
/// iff `weight = 0`.
pub fn multiple_compositions(weight: u32, len: usize, p: u32, even: usize) -> Vec<Vec<u32>> {
    fn go(units: u32, len: usize, even: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if units == 0 && even == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if even > len || (units as usize) < len {
            return;
        }
        for r in 1..=units - (len as u32 - 1) {
            let is_even = r % 2 == 0;
            if is_even && even == 0 {
                continue;
            }
            cur.push(r);
            go(units - r, len - 1, even - usize::from(is_even), cur, out);
            cur.pop();
        }
    }
    if p == 0 || !weight.is_multiple_of(p) {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(weight / p, len, even, &mut Vec::new(), &mut out);
    for c in &mut out {
        for a in c.iter_mut() {
            *a *= p;
        }
    }
    out
}

/// Sum of the words `z_{a_1}...z_{a_L}` over [`multiple_compositions`];
/// zero when `len` is negative.
fn composition_sum(weight: u32, len: i64, p: u32, even: u32) -> Element {
    let mut out = Element::zero();
    if len < 0 {
        return out;
    }
    for c in multiple_compositions(weight, len as usize, p, even as usize) {
        out.add_term(Index::new(c).expect("positive parts").to_word(), TPoly::one());
    }
    out
}

/// `prefix {z_p^l z_other + (1-2t) z_p^{l-1} z_{other+p} + [guard](t^2-t) z_p^{l-1} x^{other+p}}`,
/// with `z_p^{-1} = 0` for `l = 0`.
fn bracket(prefix: &Word, p: u32, l: u32, other: u32, guard: bool) -> Element {
    let zp = |reps: u32| zp_power(p, reps).to_word();
    let mut out = Element::from_word(prefix.concat(&zp(l)).concat(&Word::z(other)));
    if l >= 1 {
        let base = prefix.concat(&zp(l - 1));
        out.add_term(base.concat(&Word::z(other + p)), one_minus_2t());
        if guard {
            out.add_term(base.concat(&Word::x_pow(other + p)), t2_minus_t());
        }
    }
    out
}

/// `{z_a z_b + z_b z_a + (1-2t) z_{a+b} + [guard](t^2-t) x^{a+b}}`
fn swap_bracket(a: u32, b: u32, guard: bool) -> Element {
    let mut out = Element::from_word(Word::z(a).concat(&Word::z(b)));
    out.add_term(Word::z(b).concat(&Word::z(a)), TPoly::one());
    out.add_term(Word::z(a + b), one_minus_2t());
    if guard {
        out.add_term(Word::x_pow(a + b), t2_minus_t());
    }
    out
}

/// Closed form for `z_p^m ⊛ z_p^n`.
pub fn lemma2_rhs(m: u32, n: u32, p: u32) -> Result<Element, Error> {
    require(p >= 1, "p must be at least 1")?;
    let mut out = Element::zero();
    for k in 0..=m.min(n) {
        let b = binom(i64::from(m + n - 2 * k), i64::from(m - k));
        for i in 0..=k {
            let j = k - i;
            let len = i64::from(n + m) - i64::from(i + k);
            let tail = composition_sum((n + m) * p, len, p, j);
            out.add_assign(&tail.scale(&weight_coeff(b.clone(), i, j)));
        }
    }
    Ok(out)
}

/// Closed-form expansion of `z_m z_p^n ⊛ z_u z_p^v` for `m, u >= 2`.
pub fn thm1_rhs(m: u32, u: u32, p: u32, n: u32, v: u32) -> Result<Element, Error> {
    require(m >= 2 && u >= 2, "m and u must be at least 2")?;
    require(p >= 1, "p must be at least 1")?;
    let mut out = Element::zero();
    // Leading run taken from one side: (head, own tail length, other head, other tail length)
    for (head, own, other, other_len) in [(m, n, u, v), (u, v, m, n)] {
        for l in 1..=own {
            let guard = !(other_len == 0 && own == l);
            let br = bracket(&Word::z(head), p, l, other, guard);
            for k in 0..=other_len.min(own - l) {
                let b = binom(i64::from(other_len + own - l - 2 * k), i64::from(other_len - k));
                for i in 0..=k {
                    let j = k - i;
                    let len = i64::from(other_len + own - l) - i64::from(i + k);
                    let tail = composition_sum((own + other_len - l) * p, len, p, j);
                    if tail.is_zero() {
                        continue;
                    }
                    out.add_assign(&br.concat(&tail).scale(&weight_coeff(b.clone(), i, j)));
                }
            }
        }
    }
    let br = swap_bracket(m, u, !(n == 0 && v == 0));
    for k in 0..=n.min(v) {
        let b = binom(i64::from(v + n - 2 * k), i64::from(n - k));
        for i in 0..=k {
            let j = k - i;
            let len = i64::from(v + n) - i64::from(i + k);
            let tail = composition_sum((n + v) * p, len, p, j);
            if tail.is_zero() {
                continue;
            }
            out.add_assign(&br.concat(&tail).scale(&weight_coeff(b.clone(), i, j)));
        }
    }
    Ok(out)
}

/// Recursive expansion of `z_m z_p^n ⊛ z_u z_p^v` for `m, u, p >= 1`.
pub fn thm2_rhs(m: u32, u: u32, p: u32, n: u32, v: u32) -> Result<Element, Error> {
    require(m >= 1 && u >= 1 && p >= 1, "m, u and p must be at least 1")?;
    let mut out = Element::zero();
    for (head, own, other, other_len) in [(m, n, u, v), (u, v, m, n)] {
        for i in 1..=own {
            let guard = !(other_len == 0 && own == i);
            let inner = stuffle_t_index(&zp_power(p, other_len), &zp_power(p, own - i));
            out.add_assign(&bracket(&Word::z(head), p, i, other, guard).concat(&inner));
        }
    }
    let inner = stuffle_t_index(&zp_power(p, n), &zp_power(p, v));
    out.add_assign(&swap_bracket(m, u, !(n == 0 && v == 0)).concat(&inner));
    Ok(out)
}

/// Expansion of `z_n z_p^k ⊛ z_p^m` for `n >= 2`.
pub fn lemma3_rhs(n: u32, p: u32, k: u32, m: u32) -> Result<Element, Error> {
    require(n >= 2, "n must be at least 2")?;
    require(p >= 1, "p must be at least 1")?;
    let mut out = Element::zero();
    for l in 0..=m {
        let guard = !(k == 0 && m == l);
        let inner = stuffle_t_index(&zp_power(p, k), &zp_power(p, m - l));
        out.add_assign(&bracket(&Word::empty(), p, l, n, guard).concat(&inner));
    }
    Ok(out)
}

/// Expansion of `idx1 ⊛ idx2` around the `j`-th part of `idx1` (1-based),
/// using `⊛_o` on the prefixes.
pub fn prop31_rhs(idx1: &Index, idx2: &Index, j: usize) -> Result<Element, Error> {
    let m = idx1.depth();
    let n = idx2.depth();
    require(m >= 1, "first index must be nonempty")?;
    require((1..=m).contains(&j), "j must satisfy 1 <= j <= depth of the first index")?;
    let prefix1 = idx1.slice(0, j - 1);
    let kj = idx1.parts()[j - 1];
    let suffix1 = idx1.slice(j, m);
    let mut out = Element::zero();
    for i in 0..=n {
        let mut head = stuffle_o_index(&prefix1, &idx2.slice(0, i)).concat_word(&Word::z(kj));
        if i >= 1 {
            let li = idx2.parts()[i - 1];
            let mut merge = Element::term(Word::z(kj + li), one_minus_2t());
            if !(i == n && j == m) {
                merge.add_term(Word::x_pow(kj + li), t2_minus_t());
            }
            head.add_assign(&stuffle_o_index(&prefix1, &idx2.slice(0, i - 1)).concat(&merge));
        }
        out.add_assign(&head.concat(&stuffle_t_index(&suffix1, &idx2.slice(i, n))));
    }
    Ok(out)
}

/// `Σ_{m+n=k} (-1)^m z_p^m ⊛ z_p^n`
pub fn alternating_sum(p: u32, k: u32) -> Element {
    let mut out = Element::zero();
    for m in 0..=k {
        let term = stuffle_t_index(&zp_power(p, m), &zp_power(p, k - m));
        let sign = if m % 2 == 0 { 1 } else { -1 };
        out.add_assign(&term.scale(&TPoly::from_ints(&[sign])));
    }
    out
}

/// Closed form of [`alternating_sum`]: zero for odd `k`, otherwise a signed
/// sum over words whose entries are all even multiples of `p`.
pub fn prop41_rhs(p: u32, k: u32) -> Element {
    let mut out = Element::zero();
    if k % 2 == 1 {
        return out;
    }
    let half = k / 2;
    for l1 in 0..=half {
        let l2 = half - l1;
        let f = composition_sum(k * p, i64::from(l2), p, l2);
        out.add_assign(&f.scale(&weight_coeff(Rational::one(), l1, l2)));
    }
    let sign = if half.is_multiple_of(2) { 1 } else { -1 };
    out.scale(&TPoly::from_ints(&[sign]))
}

pub fn prop41_check(p: u32, k: u32) -> Result<VerifyReport, Error> {
    require(p >= 1 && k >= 1, "p and k must be at least 1")?;
    let params = params_of(&[("p", p.into()), ("k", k.into())]);
    Ok(VerifyReport::symbolic(Statement::Prop41, params, alternating_sum(p, k), prop41_rhs(p, k)))
}

fn tuple_params(m: u32, u: u32, p: u32, n: u32, v: u32) -> BTreeMap<String, i64> {
    params_of(&[("m", m.into()), ("u", u.into()), ("p", p.into()), ("n", n.into()), ("v", v.into())])
}

fn product_lhs(m: u32, u: u32, p: u32, n: u32, v: u32) -> Element {
    stuffle_t_index(&head_tail(m, p, n), &head_tail(u, p, v))
}

pub fn check_thm1(m: u32, u: u32, p: u32, n: u32, v: u32) -> Result<VerifyReport, Error> {
    let rhs = thm1_rhs(m, u, p, n, v)?;
    Ok(VerifyReport::symbolic(Statement::Thm1, tuple_params(m, u, p, n, v), product_lhs(m, u, p, n, v), rhs))
}

pub fn check_thm2(m: u32, u: u32, p: u32, n: u32, v: u32) -> Result<VerifyReport, Error> {
    let rhs = thm2_rhs(m, u, p, n, v)?;
    Ok(VerifyReport::symbolic(Statement::Thm2, tuple_params(m, u, p, n, v), product_lhs(m, u, p, n, v), rhs))
}

pub fn check_lemma2(m: u32, n: u32, p: u32) -> Result<VerifyReport, Error> {
    let rhs = lemma2_rhs(m, n, p)?;
    let lhs = stuffle_t_index(&zp_power(p, m), &zp_power(p, n));
    let params = params_of(&[("m", m.into()), ("n", n.into()), ("p", p.into())]);
    Ok(VerifyReport::symbolic(Statement::Lemma23, params, lhs, rhs))
}

pub fn check_lemma3(n: u32, p: u32, k: u32, m: u32) -> Result<VerifyReport, Error> {
    let rhs = lemma3_rhs(n, p, k, m)?;
    let lhs = stuffle_t_index(&head_tail(n, p, k), &zp_power(p, m));
    let params = params_of(&[("n", n.into()), ("p", p.into()), ("k", k.into()), ("m", m.into())]);
    Ok(VerifyReport::symbolic(Statement::Lemma24, params, lhs, rhs))
}

fn pair_params(a: &Index, b: &Index) -> Vec<(String, i64)> {
    let left = a.parts().iter().enumerate().map(|(i, &k)| (format!("k{}", i + 1), i64::from(k)));
    let right = b.parts().iter().enumerate().map(|(i, &l)| (format!("l{}", i + 1), i64::from(l)));
    left.chain(right).collect()
}

pub fn check_prop31(idx1: &Index, idx2: &Index, j: usize) -> Result<VerifyReport, Error> {
    let rhs = prop31_rhs(idx1, idx2, j)?;
    let mut params: BTreeMap<String, i64> = pair_params(idx1, idx2).into_iter().collect();
    params.insert("j".into(), j as i64);
    Ok(VerifyReport::symbolic(Statement::Prop31, params, stuffle_t_index(idx1, idx2), rhs))
}

pub fn check_combinatorial(a: &Index, b: &Index) -> Result<VerifyReport, Error> {
    let params = pair_params(a, b).into_iter().collect();
    Ok(VerifyReport::symbolic(Statement::Combinatorial, params, stuffle_t_index(a, b), stuffle_combinatorial(a, b)))
}

pub fn check_t0_reduction(a: &Index, b: &Index) -> Result<VerifyReport, Error> {
    let params = pair_params(a, b).into_iter().collect();
    let lhs = stuffle_t_index(a, b).eval_at_t(&Rational::zero());
    Ok(VerifyReport::symbolic(Statement::T0Reduction, params, lhs, stuffle_classical(a, b)))
}

fn rational_params(params: &mut BTreeMap<String, i64>, t0: &Rational, cutoff: usize) {
    let to_i64 = |x: &num_bigint::BigInt| i64::try_from(x).unwrap_or(i64::MAX);
    params.insert("t_num".into(), to_i64(t0.numer()));
    params.insert("t_den".into(), to_i64(t0.denom()));
    params.insert("cutoff".into(), cutoff as i64);
}

/// Numeric check of the decomposition after applying `Z^t`: the product of the
/// two values, `Z^t` of the exact product, and `Z^t` of [`thm1_rhs`] must agree.
pub fn thm3_numeric_check(m: u32, u: u32, p: u32, n: u32, v: u32, t0: &Rational, cutoff: usize) -> Result<VerifyReport, Error> {
    let rhs_elem = thm1_rhs(m, u, p, n, v)?;
    let mut ev = Evaluator::new(EvalConfig::new(cutoff, t0.to_f64()));
    let left = ev.z_t_eval(&Element::from_index(&head_tail(m, p, n)))?;
    let right = ev.z_t_eval(&Element::from_index(&head_tail(u, p, v)))?;
    let product = ev.z_t_eval(&product_lhs(m, u, p, n, v))?;
    let rhs = ev.z_t_eval(&rhs_elem)?;
    let lhs = left * right;
    let diff = (lhs - rhs).abs().max((product - rhs).abs()).max((lhs - product).abs());
    let mut params = tuple_params(m, u, p, n, v);
    rational_params(&mut params, t0, cutoff);
    Ok(VerifyReport::numeric(Statement::Thm3, params, lhs, rhs, diff, THM3_TOLERANCE))
}

/// At `t0 ∈ {0, 1}`: the closed form collapses to `±z_{2p}^{k/2}` exactly, and
/// numerically `Σ(-1)^m ζ^t({p}^m) ζ^t({p}^n)` matches `ζ({2p}^{k/2})` (sign
/// `(-1)^{k/2}`) at `t0 = 0` or `ζ*({2p}^{k/2})` at `t0 = 1`.
pub fn alternating_numeric_check(p: u32, k: u32, t0: u32, cutoff: usize) -> Result<VerifyReport, Error> {
    require(p >= 2, "p must be at least 2")?;
    require(k >= 1, "k must be at least 1")?;
    require(t0 <= 1, "t must be 0 or 1")?;
    let mut params = params_of(&[("p", p.into()), ("k", k.into())]);
    rational_params(&mut params, &Rational::from_integer(t0.into()), cutoff);

    let tz = Rational::from_integer(t0.into());
    let sign: i64 = if t0 == 1 || (k / 2).is_multiple_of(2) { 1 } else { -1 };
    let expected_elem = if k % 2 == 1 {
        Element::zero()
    } else {
        Element::from_index(&zp_power(2 * p, k / 2)).scale_rational(&Rational::from_integer(sign))
    };
    let collapsed = prop41_rhs(p, k).eval_at_t(&tz);
    if collapsed != expected_elem {
        return Ok(VerifyReport::symbolic(Statement::Cor42, params, collapsed, expected_elem));
    }

    let mut ev = Evaluator::new(EvalConfig::new(cutoff, f64::from(t0)));
    let mut lhs = 0.0;
    for m in 0..=k {
        let a = ev.z_t_eval(&Element::from_index(&zp_power(p, m)))?;
        let b = ev.z_t_eval(&Element::from_index(&zp_power(p, k - m)))?;
        lhs += if m % 2 == 0 { a * b } else { -a * b };
    }
    let rhs = if k % 2 == 1 {
        0.0
    } else if t0 == 0 {
        sign as f64 * ev.mzv(&zp_power(2 * p, k / 2))?
    } else {
        ev.mzv_star(&zp_power(2 * p, k / 2))?
    };
    Ok(VerifyReport::numeric(Statement::Cor42, params, lhs, rhs, (lhs - rhs).abs(), ALTERNATING_TOLERANCE))
}

/// `Σ_{m+n=k} (-1)^m / ((2m+1)!(2n+1)!)` and `(-1)^{k/2} 2^{k+1} / (2k+2)!`.
pub fn eq31_sides(k: u32) -> Result<(Rational, Rational), Error> {
    require(k >= 2 && k.is_multiple_of(2), "k must be even and at least 2")?;
    let mut lhs = Rational::zero();
    for m in 0..=k {
        let term = Rational::one().checked_div(&(&factorial(2 * m + 1) * &factorial(2 * (k - m) + 1)))?;
        lhs += &(if m % 2 == 0 { term } else { -term });
    }
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    let rhs = Rational::from_integer(sign * (1i64 << (k + 1))).checked_div(&factorial(2 * k + 2))?;
    Ok((lhs, rhs))
}

pub fn eq31_check(k: u32) -> Result<VerifyReport, Error> {
    let (lhs, rhs) = eq31_sides(k)?;
    let ok = lhs == rhs;
    Ok(VerifyReport::exact(Statement::Eq31, params_of(&[("k", k.into())]), ok, lhs.to_string(), rhs.to_string()))
}

/// Gaussian-rational left side and rational right side of the `ζ({8}^l)` comparison.
pub fn zeta8_sides(l: u32) -> Result<(GaussianRational, Rational), Error> {
    require(l >= 1, "l must be at least 1")?;
    let total = 4 * l;
    let inv_odd_fact = |n: u32| Rational::one().checked_div(&factorial(2 * n + 1));
    let mut lhs = GaussianRational::real(Rational::zero());
    for n0 in 0..=total {
        for n1 in 0..=total - n0 {
            for n2 in 0..=total - n0 - n1 {
                let n3 = total - n0 - n1 - n2;
                let mag = &(&inv_odd_fact(n0)? * &inv_odd_fact(n1)?) * &(&inv_odd_fact(n2)? * &inv_odd_fact(n3)?);
                lhs = lhs.add(&GaussianRational::i_pow(n1 + 2 * n2 + 3 * n3).scale(&mag));
            }
        }
    }
    let pow2 = Rational::from_integer(2).pow(4 * l + 2);
    let mut rhs = Rational::zero();
    for m in 0..=2 * l {
        let den = &factorial(4 * m + 2) * &factorial(8 * l - 4 * m + 2);
        let term = pow2.checked_div(&den)?;
        rhs += &(if m % 2 == 0 { term } else { -term });
    }
    Ok((lhs, rhs))
}

pub fn zeta8_identity_check(l: u32) -> Result<VerifyReport, Error> {
    let (lhs, rhs) = zeta8_sides(l)?;
    let ok = lhs.im.is_zero() && lhs.re == rhs;
    let lhs_text = format!("{} + {}i", lhs.re, lhs.im);
    Ok(VerifyReport::exact(Statement::Zeta8, params_of(&[("l", l.into())]), ok, lhs_text, rhs.to_string()))
}

/// One parameter tuple of one statement.
#[derive(Clone, Debug, PartialEq)]
pub enum Case {
    Thm1 { m: u32, u: u32, p: u32, n: u32, v: u32 },
    Thm2 { m: u32, u: u32, p: u32, n: u32, v: u32 },
    Thm3 { m: u32, u: u32, p: u32, n: u32, v: u32, t0: Rational, cutoff: usize },
    Lemma23 { m: u32, n: u32, p: u32 },
    Lemma24 { n: u32, p: u32, k: u32, m: u32 },
    Prop31 { idx1: Index, idx2: Index, j: usize },
    Prop41 { p: u32, k: u32 },
    Cor42 { p: u32, k: u32, t0: u32, cutoff: usize },
    Combinatorial { a: Index, b: Index },
    T0Reduction { a: Index, b: Index },
    Eq31 { k: u32 },
    Zeta8 { l: u32 },
}

impl Case {
    pub fn statement(&self) -> Statement {
        match self {
            Case::Thm1 { .. } => Statement::Thm1,
            Case::Thm2 { .. } => Statement::Thm2,
            Case::Thm3 { .. } => Statement::Thm3,
            Case::Lemma23 { .. } => Statement::Lemma23,
            Case::Lemma24 { .. } => Statement::Lemma24,
            Case::Prop31 { .. } => Statement::Prop31,
            Case::Prop41 { .. } => Statement::Prop41,
            Case::Cor42 { .. } => Statement::Cor42,
            Case::Combinatorial { .. } => Statement::Combinatorial,
            Case::T0Reduction { .. } => Statement::T0Reduction,
            Case::Eq31 { .. } => Statement::Eq31,
            Case::Zeta8 { .. } => Statement::Zeta8,
        }
    }

    pub fn run(&self) -> Result<VerifyReport, Error> {
        match self {
            &Case::Thm1 { m, u, p, n, v } => check_thm1(m, u, p, n, v),
            &Case::Thm2 { m, u, p, n, v } => check_thm2(m, u, p, n, v),
            Case::Thm3 { m, u, p, n, v, t0, cutoff } => thm3_numeric_check(*m, *u, *p, *n, *v, t0, *cutoff),
            &Case::Lemma23 { m, n, p } => check_lemma2(m, n, p),
            &Case::Lemma24 { n, p, k, m } => check_lemma3(n, p, k, m),
            Case::Prop31 { idx1, idx2, j } => check_prop31(idx1, idx2, *j),
            &Case::Prop41 { p, k } => prop41_check(p, k),
            &Case::Cor42 { p, k, t0, cutoff } => alternating_numeric_check(p, k, t0, cutoff),
            Case::Combinatorial { a, b } => check_combinatorial(a, b),
            Case::T0Reduction { a, b } => check_t0_reduction(a, b),
            &Case::Eq31 { k } => eq31_check(k),
            &Case::Zeta8 { l } => zeta8_identity_check(l),
        }
    }

    /// Builds a single case from comma-separated integers in the order the
    /// statement lists its parameters. Index pairs use `idx1;idx2` and
    /// `idx1;idx2;j`. `t0` and `cutoff` apply to numeric statements.
    pub fn parse(statement: Statement, params: &str, t0: Option<Rational>, cutoff: Option<usize>) -> Result<Case, Error> {
        let ints = |expected: usize| -> Result<Vec<u32>, Error> {
            let vals = params
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if vals.len() != expected {
                return Err(Error::Parse(format!("{statement} expects {expected} parameters, got {}", vals.len())));
            }
            Ok(vals)
        };
        let pieces: Vec<&str> = params.split(';').collect();
        let pair = |pieces: &[&str]| -> Result<(Index, Index), Error> { Ok((pieces[0].parse()?, pieces[1].parse()?)) };
        Ok(match statement {
            Statement::Thm1 | Statement::Thm2 | Statement::Thm3 => {
                let v = ints(5)?;
                let (m, u, p, n, vv) = (v[0], v[1], v[2], v[3], v[4]);
                match statement {
                    Statement::Thm1 => Case::Thm1 { m, u, p, n, v: vv },
                    Statement::Thm2 => Case::Thm2 { m, u, p, n, v: vv },
                    _ => Case::Thm3 {
                        m,
                        u,
                        p,
                        n,
                        v: vv,
                        t0: t0.unwrap_or_else(Rational::zero),
                        cutoff: cutoff.unwrap_or(THM3_DEFAULT_CUTOFF),
                    },
                }
            }
            Statement::Lemma23 => {
                let v = ints(3)?;
                Case::Lemma23 { m: v[0], n: v[1], p: v[2] }
            }
            Statement::Lemma24 => {
                let v = ints(4)?;
                Case::Lemma24 { n: v[0], p: v[1], k: v[2], m: v[3] }
            }
            Statement::Prop41 => {
                let v = ints(2)?;
                Case::Prop41 { p: v[0], k: v[1] }
            }
            Statement::Cor42 => {
                let v = ints(2)?;
                let t0 = t0.unwrap_or_else(Rational::zero);
                let t0 = if t0.is_zero() {
                    0
                } else if t0.is_one() {
                    1
                } else {
                    return Err(Error::BadParams("t must be 0 or 1".into()));
                };
                Case::Cor42 { p: v[0], k: v[1], t0, cutoff: cutoff.unwrap_or(ALTERNATING_DEFAULT_CUTOFF) }
            }
            Statement::Eq31 => Case::Eq31 { k: ints(1)?[0] },
            Statement::Zeta8 => Case::Zeta8 { l: ints(1)?[0] },
            Statement::Prop31 => {
                if pieces.len() != 3 {
                    return Err(Error::Parse("prop31 expects idx1;idx2;j".into()));
                }
                let (idx1, idx2) = pair(&pieces)?;
                let j = pieces[2].trim().parse().map_err(|e| Error::Parse(format!("j: {e}")))?;
                Case::Prop31 { idx1, idx2, j }
            }
            Statement::Combinatorial | Statement::T0Reduction => {
                if pieces.len() != 2 {
                    return Err(Error::Parse(format!("{statement} expects idx1;idx2")));
                }
                let (a, b) = pair(&pieces)?;
                if statement == Statement::Combinatorial {
                    Case::Combinatorial { a, b }
                } else {
                    Case::T0Reduction { a, b }
                }
            }
        })
    }
}

/// Sweep options. `max` caps the upper end of every parameter range;
/// `cutoff` overrides the truncation used by numeric statements.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SweepOptions {
    pub max: Option<u32>,
    pub cutoff: Option<usize>,
}

impl SweepOptions {
    fn hi(&self, default: u32) -> u32 {
        self.max.map_or(default, |m| m.min(default))
    }
}

/// All indices of depth `0..=max_depth` with parts in `1..=max_part`, shortest first.
pub fn small_indices(max_depth: usize, max_part: u32) -> Vec<Index> {
    let mut out = vec![Index::empty()];
    let mut layer = vec![Vec::<u32>::new()];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for parts in &layer {
            for k in 1..=max_part {
                let mut p = parts.clone();
                p.push(k);
                next.push(p);
            }
        }
        out.extend(next.iter().map(|p| Index::new(p.clone()).expect("positive parts")));
        layer = next;
    }
    out
}

/// The cases of a statement's default sweep, in a fixed order.
pub fn sweep(statement: Statement, opts: &SweepOptions) -> Vec<Case> {
    let mut out = Vec::new();
    match statement {
        Statement::Thm1 | Statement::Thm2 => {
            let (lo_mu, hi_p) = if statement == Statement::Thm1 { (2, 2) } else { (1, 3) };
            for m in lo_mu..=opts.hi(3) {
                for u in lo_mu..=opts.hi(3) {
                    for p in 1..=opts.hi(hi_p) {
                        for n in 0..=opts.hi(3) {
                            for v in 0..=opts.hi(3) {
                                out.push(if statement == Statement::Thm1 {
                                    Case::Thm1 { m, u, p, n, v }
                                } else {
                                    Case::Thm2 { m, u, p, n, v }
                                });
                            }
                        }
                    }
                }
            }
        }
        Statement::Thm3 => {
            let cutoff = opts.cutoff.unwrap_or(THM3_DEFAULT_CUTOFF);
            let ts = [Rational::zero(), Rational::new(1, 2).expect("nonzero denominator"), Rational::one()];
            for m in 2..=opts.hi(3) {
                for u in 2..=opts.hi(3) {
                    for p in 1..=opts.hi(2) {
                        for n in 0..=opts.hi(1) {
                            for v in 0..=opts.hi(1) {
                                for t0 in &ts {
                                    out.push(Case::Thm3 { m, u, p, n, v, t0: t0.clone(), cutoff });
                                }
                            }
                        }
                    }
                }
            }
        }
        Statement::Lemma23 => {
            for p in 1..=opts.hi(3) {
                for m in 0..=opts.hi(8) {
                    for n in 0..=opts.hi(8) {
                        if m + n <= 8 {
                            out.push(Case::Lemma23 { m, n, p });
                        }
                    }
                }
            }
        }
        Statement::Lemma24 => {
            for n in 2..=opts.hi(3) {
                for p in 1..=opts.hi(2) {
                    for k in 0..=opts.hi(2) {
                        for m in 0..=opts.hi(4) {
                            out.push(Case::Lemma24 { n, p, k, m });
                        }
                    }
                }
            }
        }
        Statement::Prop31 => {
            let hi = opts.hi(3);
            let indices = small_indices(hi as usize, hi);
            for idx1 in indices.iter().filter(|i| i.depth() >= 1) {
                for idx2 in &indices {
                    for j in 1..=idx1.depth() {
                        out.push(Case::Prop31 { idx1: idx1.clone(), idx2: idx2.clone(), j });
                    }
                }
            }
        }
        Statement::Prop41 => {
            for p in 1..=opts.hi(2) {
                for k in 1..=opts.hi(8) {
                    out.push(Case::Prop41 { p, k });
                }
            }
        }
        Statement::Cor42 => {
            let cutoff = opts.cutoff.unwrap_or(ALTERNATING_DEFAULT_CUTOFF);
            for p in 2..=opts.hi(3) {
                for k in 1..=opts.hi(6) {
                    for t0 in 0..=1 {
                        out.push(Case::Cor42 { p, k, t0, cutoff });
                    }
                }
            }
        }
        Statement::Combinatorial | Statement::T0Reduction => {
            let hi = opts.hi(3);
            let indices = small_indices(hi as usize, hi);
            for a in &indices {
                for b in &indices {
                    let (a, b) = (a.clone(), b.clone());
                    out.push(if statement == Statement::Combinatorial {
                        Case::Combinatorial { a, b }
                    } else {
                        Case::T0Reduction { a, b }
                    });
                }
            }
        }
        Statement::Eq31 => {
            for k in (2..=opts.hi(12)).step_by(2) {
                out.push(Case::Eq31 { k });
            }
        }
        Statement::Zeta8 => {
            for l in 1..=opts.hi(3) {
                out.push(Case::Zeta8 { l });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stuffle::stuffle_t;

    fn idx(parts: &[u32]) -> Index {
        Index::new(parts.to_vec()).unwrap()
    }

    fn zw(parts: &[u32]) -> Word {
        idx(parts).to_word()
    }

    #[test]
    fn compositions() {
        assert_eq!(multiple_compositions(0, 0, 1, 0), vec![Vec::<u32>::new()]);
        assert!(multiple_compositions(2, 0, 1, 0).is_empty());
        assert_eq!(multiple_compositions(3, 2, 1, 1), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(multiple_compositions(6, 2, 2, 1), vec![vec![2, 4], vec![4, 2]]);
        assert_eq!(multiple_compositions(8, 2, 2, 2), vec![vec![4, 4]]);
        assert!(multiple_compositions(5, 2, 2, 0).is_empty());
    }

    #[test]
    fn closed_form_depth_one() {
        let mut expected = Element::term(zw(&[2, 2]), TPoly::from_ints(&[2]));
        expected.add_term(Word::z(4), TPoly::one_minus_two_t());
        assert_eq!(thm1_rhs(2, 2, 1, 0, 0).unwrap(), expected);
        assert!(matches!(thm1_rhs(1, 2, 1, 0, 0), Err(Error::BadParams(_))));
    }

    #[test]
    fn closed_form_matches_products() {
        assert_eq!(thm1_rhs(2, 2, 1, 1, 0).unwrap(), stuffle_t(&zw(&[2, 1]), &Word::z(2)).unwrap());
        assert_eq!(thm1_rhs(3, 2, 2, 1, 1).unwrap(), stuffle_t(&zw(&[3, 2]), &zw(&[2, 2])).unwrap());
        assert!(check_thm1(2, 2, 1, 2, 1).unwrap().passed());
    }

    #[test]
    fn recursive_decomposition_examples() {
        let mut expected = Element::term(zw(&[1, 1]), TPoly::from_ints(&[2]));
        expected.add_term(Word::z(2), TPoly::one_minus_two_t());
        assert_eq!(thm2_rhs(1, 1, 1, 0, 0).unwrap(), expected);
        assert_eq!(thm2_rhs(2, 2, 1, 1, 0).unwrap(), stuffle_t(&zw(&[2, 1]), &Word::z(2)).unwrap());
        assert!(check_thm2(1, 1, 1, 1, 1).unwrap().passed());
    }

    #[test]
    fn power_product_examples() {
        let mut expected = Element::term(zw(&[1, 1]), TPoly::from_ints(&[2]));
        expected.add_term(Word::z(2), TPoly::one_minus_two_t());
        assert_eq!(lemma2_rhs(1, 1, 1).unwrap(), expected);

        let mut expected = Element::term(zw(&[1, 1, 1]), TPoly::from_ints(&[3]));
        expected.add_term(zw(&[1, 2]), TPoly::one_minus_two_t());
        expected.add_term(zw(&[2, 1]), TPoly::one_minus_two_t());
        expected.add_term(Word::z(3), TPoly::t_squared_minus_t());
        assert_eq!(lemma2_rhs(2, 1, 1).unwrap(), expected);

        assert_eq!(lemma2_rhs(0, 3, 2).unwrap(), Element::from_index(&idx(&[2, 2, 2])));
    }

    #[test]
    fn head_power_product_examples() {
        assert_eq!(lemma3_rhs(2, 1, 0, 0).unwrap(), Element::from_word(Word::z(2)));
        assert_eq!(lemma3_rhs(2, 1, 0, 1).unwrap(), stuffle_t(&Word::z(2), &Word::z(1)).unwrap());
        assert_eq!(lemma3_rhs(2, 1, 1, 1).unwrap(), stuffle_t(&zw(&[2, 1]), &Word::z(1)).unwrap());
    }

    #[test]
    fn split_formula_examples() {
        let mut expected = Element::from_word(zw(&[2, 3]));
        expected.add_term(zw(&[3, 2]), TPoly::one());
        expected.add_term(Word::z(5), TPoly::one_minus_two_t());
        assert_eq!(prop31_rhs(&idx(&[2]), &idx(&[3]), 1).unwrap(), expected);
        assert!(check_prop31(&idx(&[2, 1]), &idx(&[2]), 2).unwrap().passed());
        assert!(check_prop31(&idx(&[1, 1]), &idx(&[1, 1]), 1).unwrap().passed());
        assert!(check_prop31(&idx(&[2, 1]), &idx(&[3]), 1).unwrap().passed());
        assert!(prop31_rhs(&idx(&[2]), &idx(&[3]), 2).is_err());
    }

    #[test]
    fn alternating_sum_examples() {
        assert!(alternating_sum(1, 3).is_zero());
        let expected = Element::term(Word::z(2), TPoly::one_minus_two_t().neg());
        assert_eq!(alternating_sum(1, 2), expected);
        assert_eq!(prop41_rhs(1, 2), expected);
        assert!(prop41_check(2, 4).unwrap().passed());
    }

    #[test]
    fn factorial_identity_small() {
        let (lhs, rhs) = eq31_sides(2).unwrap();
        assert_eq!(lhs, Rational::new(-1, 90).unwrap());
        assert_eq!(rhs, lhs);
        assert!(matches!(eq31_check(3), Err(Error::BadParams(_))));
        assert!(eq31_check(12).unwrap().passed());
    }

    #[test]
    fn gaussian_identity_small() {
        let (lhs, rhs) = zeta8_sides(1).unwrap();
        assert!(lhs.im.is_zero());
        assert_eq!(lhs.re, rhs);
    }

    #[test]
    fn numeric_decomposition_depth_one() {
        let r = thm3_numeric_check(2, 2, 1, 0, 0, &Rational::zero(), 100_000).unwrap();
        match r.witness {
            Some(Witness::Numeric { diff, .. }) => assert!(diff < 1e-6, "{diff}"),
            _ => panic!("numeric witness expected"),
        }
    }

    #[test]
    fn report_json_round_trip() {
        let r = check_thm2(2, 1, 1, 1, 0).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<VerifyReport>(&s).unwrap(), r);
        let failing = VerifyReport::symbolic(
            Statement::Thm1,
            BTreeMap::new(),
            Element::from_word(Word::z(2)),
            Element::zero(),
        );
        assert!(!failing.passed() && failing.witness.is_some());
        let s = serde_json::to_string(&failing).unwrap();
        assert_eq!(serde_json::from_str::<VerifyReport>(&s).unwrap(), failing);
    }

    #[test]
    fn case_parsing() {
        assert_eq!(
            Case::parse(Statement::Thm1, "2,2,1,2,1", None, None).unwrap(),
            Case::Thm1 { m: 2, u: 2, p: 1, n: 2, v: 1 }
        );
        assert_eq!(
            Case::parse(Statement::Prop31, "2,1;3;1", None, None).unwrap(),
            Case::Prop31 { idx1: idx(&[2, 1]), idx2: idx(&[3]), j: 1 }
        );
        assert!(Case::parse(Statement::Thm1, "2,2,1", None, None).is_err());
        assert!(Case::parse(Statement::Cor42, "2,2", Some(Rational::new(1, 2).unwrap()), None).is_err());
        assert_eq!("t0".parse::<Statement>().unwrap(), Statement::T0Reduction);
    }

    #[test]
    fn small_index_enumeration() {
        assert_eq!(small_indices(3, 3).len(), 40);
        assert_eq!(sweep(Statement::Thm2, &SweepOptions::default()).len(), 27 * 16);
    }
}
