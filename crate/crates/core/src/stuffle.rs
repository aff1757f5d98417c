//! The t-stuffle product, the auxiliary product `⊛_o`, the classical stuffle
//! product, and a direct enumeration of t-stuffle merge patterns.
//!
//! The recursive rule is the normative definition:
//!
//! ```text
//! 1 ⊛ w = w ⊛ 1 = w
//! z_k w1 ⊛ z_l w2 = z_k (w1 ⊛ z_l w2) + z_l (z_k w1 ⊛ w2)
//!                 + (1-2t) z_{k+l} (w1 ⊛ w2)
//!                 + [1 - δ(w1)δ(w2)] (t^2-t) x^{k+l} (w1 ⊛ w2)
//! ```
//!
//! `⊛_o` drops the `δ` guard, so its output may contain words ending in `x`.
//! Both are memoized per thread on index pairs, keyed order-independently.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::arith::TPoly;
use crate::error::Error;
use crate::word::{Element, Index, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    /// `⊛`, with the `δ` guard on the trailing `x`-merge.
    Guarded,
    /// `⊛_o`
    Open,
}

type MemoKey = (Kind, Vec<u32>, Vec<u32>);

thread_local! {
    static MEMO: RefCell<HashMap<MemoKey, Arc<Element>>> = RefCell::new(HashMap::new());
}

/// Drops this thread's memoized products.
pub fn clear_cache() {
    MEMO.with(|m| m.borrow_mut().clear());
}

/// Number of memoized products held by this thread.
pub fn cache_len() -> usize {
    MEMO.with(|m| m.borrow().len())
}

fn memo_key(kind: Kind, a: &[u32], b: &[u32]) -> MemoKey {
    if a <= b {
        (kind, a.to_vec(), b.to_vec())
    } else {
        (kind, b.to_vec(), a.to_vec())
    }
}

fn index_element(parts: &[u32]) -> Element {
    Element::from_word(Index::new(parts.to_vec()).expect("parts are positive").to_word())
}

fn product(kind: Kind, a: &[u32], b: &[u32]) -> Arc<Element> {
    if a.is_empty() {
        return Arc::new(index_element(b));
    }
    if b.is_empty() {
        return Arc::new(index_element(a));
    }
    let key = memo_key(kind, a, b);
    if let Some(hit) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }

    let (k, a_tail) = (a[0], &a[1..]);
    let (l, b_tail) = (b[0], &b[1..]);
    let mut out = Element::zero();
    let one = TPoly::one();
    out.add_prefixed(&Word::z(k), &one, &product(kind, a_tail, b));
    out.add_prefixed(&Word::z(l), &one, &product(kind, a, b_tail));
    let rest = product(kind, a_tail, b_tail);
    out.add_prefixed(&Word::z(k + l), &TPoly::one_minus_two_t(), &rest);
    let both_tails_empty = a_tail.is_empty() && b_tail.is_empty();
    if kind == Kind::Open || !both_tails_empty {
        out.add_prefixed(&Word::x_pow(k + l), &TPoly::t_squared_minus_t(), &rest);
    }

    let out = Arc::new(out);
    MEMO.with(|m| m.borrow_mut().insert(key, Arc::clone(&out)));
    out
}

/// `idx1 ⊛ idx2` on the words `z_{k_1}...z_{k_n}`.
pub fn stuffle_t_index(a: &Index, b: &Index) -> Element {
    (*product(Kind::Guarded, a.parts(), b.parts())).clone()
}

/// `idx1 ⊛_o idx2`
pub fn stuffle_o_index(a: &Index, b: &Index) -> Element {
    (*product(Kind::Open, a.parts(), b.parts())).clone()
}

/// t-stuffle product of two words of `H^1`.
pub fn stuffle_t(w1: &Word, w2: &Word) -> Result<Element, Error> {
    Ok(stuffle_t_index(&Index::from_word(w1)?, &Index::from_word(w2)?))
}

/// `⊛_o` of two words of `H^1`.
pub fn stuffle_o(w1: &Word, w2: &Word) -> Result<Element, Error> {
    Ok(stuffle_o_index(&Index::from_word(w1)?, &Index::from_word(w2)?))
}

fn bilinear(kind: Kind, a: &Element, b: &Element) -> Result<Element, Error> {
    let mut out = Element::zero();
    for (u, c) in a.iter() {
        let iu = Index::from_word(u)?;
        for (v, d) in b.iter() {
            let iv = Index::from_word(v)?;
            out.add_prefixed(&Word::empty(), &c.mul(d), &product(kind, iu.parts(), iv.parts()));
        }
    }
    Ok(out)
}

/// `Q[t]`-bilinear extension of `⊛` to elements of `H^1`.
pub fn stuffle_t_elem(a: &Element, b: &Element) -> Result<Element, Error> {
    bilinear(Kind::Guarded, a, b)
}

/// `Q[t]`-bilinear extension of `⊛_o` to elements of `H^1`.
pub fn stuffle_o_elem(a: &Element, b: &Element) -> Result<Element, Error> {
    bilinear(Kind::Open, a, b)
}

/// Classical harmonic product `*` (the `t = 0` product), coded separately
/// from [`stuffle_t_index`] so it can serve as an oracle.
pub fn stuffle_classical(a: &Index, b: &Index) -> Element {
    fn go(a: &[u32], b: &[u32]) -> Vec<(Vec<u32>, i64)> {
        if a.is_empty() {
            return vec![(b.to_vec(), 1)];
        }
        if b.is_empty() {
            return vec![(a.to_vec(), 1)];
        }
        let mut out = Vec::new();
        let mut lead = |head: u32, rest: Vec<(Vec<u32>, i64)>| {
            for (mut tail, c) in rest {
                tail.insert(0, head);
                out.push((tail, c));
            }
        };
        lead(a[0], go(&a[1..], b));
        lead(b[0], go(a, &b[1..]));
        lead(a[0] + b[0], go(&a[1..], &b[1..]));
        out
    }
    let mut e = Element::zero();
    for (parts, c) in go(a.parts(), b.parts()) {
        e.add_term(Index::new(parts).expect("parts are positive").to_word(), TPoly::from_ints(&[c]));
    }
    e
}

/// One block of a merge pattern: `left` consecutive parts of the first index
/// and `right` consecutive parts of the second fuse into a single `z_sum`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub left: usize,
    pub right: usize,
    pub sum: u32,
}

/// A surjection-style merge of two indices, carrying the exponents of
/// `(1-2t)` and `(t^2-t)` it contributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergePattern {
    pub blocks: Vec<Block>,
    pub exp_one_minus_two_t: u32,
    pub exp_t2_minus_t: u32,
}

impl MergePattern {
    pub fn word(&self) -> Word {
        Index::new(self.blocks.iter().map(|b| b.sum).collect()).expect("positive sums").to_word()
    }

    pub fn coefficient(&self) -> TPoly {
        TPoly::one_minus_two_t()
            .pow(self.exp_one_minus_two_t)
            .mul(&TPoly::t_squared_minus_t().pow(self.exp_t2_minus_t))
    }
}

/// Block sizes allowed in a merge: singletons, or blocks drawing from both
/// sources with sizes differing by at most one. Returns the `(1-2t)` and
/// `(t^2-t)` exponents of the block.
fn block_exponents(left: usize, right: usize) -> Option<(u32, u32)> {
    match (left, right) {
        (1, 0) | (0, 1) => Some((0, 0)),
        (u, v) if u >= 1 && v >= 1 && u.abs_diff(v) <= 1 => {
            let balanced = u == v;
            Some((u32::from(balanced), (u.min(v) - usize::from(balanced)) as u32))
        }
        _ => None,
    }
}

/// Block sizes of a weakly increasing map given as sorted block labels.
fn block_sizes(labels: &[usize], blocks: usize) -> Vec<usize> {
    let mut sizes = vec![0; blocks];
    for &r in labels {
        sizes[r] += 1;
    }
    sizes
}

/// Enumerates every merge pattern of `a` with `b` directly: pairs of weakly
/// increasing maps from the two position sets onto `{0, ..., L-1}` whose
/// fibres satisfy the block conditions.
pub fn merge_patterns(a: &Index, b: &Index) -> Vec<MergePattern> {
    let (n, m) = (a.depth(), b.depth());
    if n + m == 0 {
        return vec![MergePattern { blocks: Vec::new(), exp_one_minus_two_t: 0, exp_t2_minus_t: 0 }];
    }
    let mut out = Vec::new();
    for blocks in 1..=n + m {
        for left_labels in (0..blocks).combinations_with_replacement(n) {
            let left_sizes = block_sizes(&left_labels, blocks);
            for right_labels in (0..blocks).combinations_with_replacement(m) {
                let right_sizes = block_sizes(&right_labels, blocks);
                let Some(exps) = left_sizes
                    .iter()
                    .zip(&right_sizes)
                    .map(|(&u, &v)| block_exponents(u, v))
                    .collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                let mut pattern = MergePattern { blocks: Vec::with_capacity(blocks), exp_one_minus_two_t: 0, exp_t2_minus_t: 0 };
                let (mut ia, mut ib) = (0, 0);
                for r in 0..blocks {
                    let (u, v) = (left_sizes[r], right_sizes[r]);
                    let sum = a.parts()[ia..ia + u].iter().sum::<u32>() + b.parts()[ib..ib + v].iter().sum::<u32>();
                    ia += u;
                    ib += v;
                    pattern.blocks.push(Block { left: u, right: v, sum });
                    pattern.exp_one_minus_two_t += exps[r].0;
                    pattern.exp_t2_minus_t += exps[r].1;
                }
                out.push(pattern);
            }
        }
    }
    out
}

/// t-stuffle product computed by summing over [`merge_patterns`].
pub fn stuffle_combinatorial(a: &Index, b: &Index) -> Element {
    let mut grouped: HashMap<(Word, u32, u32), i64> = HashMap::new();
    for p in merge_patterns(a, b) {
        *grouped.entry((p.word(), p.exp_one_minus_two_t, p.exp_t2_minus_t)).or_default() += 1;
    }
    let mut e = Element::zero();
    for ((w, i, j), count) in grouped {
        let coeff = TPoly::one_minus_two_t()
            .pow(i)
            .mul(&TPoly::t_squared_minus_t().pow(j))
            .mul(&TPoly::from_ints(&[count]));
        e.add_term(w, coeff);
    }
    e
}
