//! Words over `{x, y}`, indices, and `Q[t]`-linear combinations of words.
//!
//! Elements are keyed by raw letter words rather than by indices, since the
//! `x^{k+l}` merge terms only become `z`-decomposable after further
//! concatenation.

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, TPoly};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A finite word over `{x, y}`; the empty word is the unit `1`.
///
/// Ordered length-lexicographically with `x < y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `z_k = x^{k-1} y`
    pub fn z(k: u32) -> Self {
        assert!(k >= 1, "z_k requires k >= 1");
        let mut letters = vec![Letter::X; (k - 1) as usize];
        letters.push(Letter::Y);
        Word(letters)
    }

    pub fn x_pow(n: u32) -> Self {
        Word(vec![Letter::X; n as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Empty or ending in `y`.
    pub fn in_h1(&self) -> bool {
        self.last().is_none_or(|l| l == Letter::Y)
    }

    /// Empty, or starting with `x` and ending with `y`.
    pub fn in_h0(&self) -> bool {
        self.is_empty() || (self.first() == Some(Letter::X) && self.last() == Some(Letter::Y))
    }

    pub fn count_y(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    /// `z`-notation (`"z2 z1"`) for words ending in `y`, raw letters otherwise, `"1"` when empty.
    pub fn render(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        match Index::from_word(self) {
            Ok(idx) => idx.parts().iter().map(|k| format!("z{k}")).collect::<Vec<_>>().join(" "),
            Err(_) => self.to_string(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!("letter {other:?} is not in {{x, y}}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// `delta(w) = 1` iff `w` is the empty word.
pub fn delta(w: &Word) -> u8 {
    u8::from(w.is_empty())
}

/// A finite sequence of positive integers `(k_1, ..., k_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("index {parts:?} has a zero part")));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `(head, p, p, ..., p)` with `reps` copies of `p`.
    pub fn head_with_tail(head: u32, p: u32, reps: usize) -> Self {
        let mut parts = vec![head];
        parts.extend(std::iter::repeat_n(p, reps));
        Index(parts)
    }

    /// `(p, ..., p)` with `reps` copies.
    pub fn repeated(p: u32, reps: usize) -> Self {
        Index(vec![p; reps])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.first().is_some_and(|&k| k >= 2)
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &k in &self.0 {
            letters.extend(std::iter::repeat_n(Letter::X, (k - 1) as usize));
            letters.push(Letter::Y);
        }
        Word(letters)
    }

    /// Inverse of [`Index::to_word`], defined on words that are empty or end in `y`.
    pub fn from_word(w: &Word) -> Result<Self, Error> {
        if !w.in_h1() {
            return Err(Error::NotInH1(w.to_string()));
        }
        let mut parts = Vec::new();
        let mut run = 0;
        for &l in w.letters() {
            match l {
                Letter::X => run += 1,
                Letter::Y => {
                    parts.push(run + 1);
                    run = 0;
                }
            }
        }
        Ok(Index(parts))
    }

    pub fn slice(&self, from: usize, to: usize) -> Index {
        Index(self.0[from..to].to_vec())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses comma-separated positive integers; whitespace is ignored and the
/// empty string is the empty index.
impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(Index::empty());
        }
        let parts = cleaned
            .split(',')
            .map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("bad index part {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Index::new(parts)
    }
}

/// Finite `Q[t]`-linear combination of words. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, TPoly>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Element::term(w, TPoly::one())
    }

    pub fn from_index(idx: &Index) -> Self {
        Element::from_word(idx.to_word())
    }

    pub fn term(w: Word, c: TPoly) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (length-lexicographic) order.
    pub fn iter(&self) -> btree_map::Iter<'_, Word, TPoly> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> TPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: TPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    /// Adds `c * prefix * other` to `self`.
    pub fn add_prefixed(&mut self, prefix: &Word, c: &TPoly, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            let coeff = if c.is_one() { d.clone() } else { c.mul(d) };
            self.add_term(prefix.concat(w), coeff);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&TPoly::constant(Rational::from_integer(-1))))
    }

    pub fn scale(&self, c: &TPoly) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> Element {
        self.scale(&TPoly::constant(c.clone()))
    }

    /// Bilinear extension of word concatenation.
    pub fn concat(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    pub fn concat_word(&self, w: &Word) -> Element {
        Element { terms: self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())).collect() }
    }

    /// Specializes every coefficient at `t = t0`; the result has constant coefficients.
    pub fn eval_at_t(&self, t0: &Rational) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), TPoly::constant(c.eval(t0)));
        }
        out
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ElementRepr::from(self)).expect("element serialization")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        let repr: ElementRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Element::try_from(repr)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {}", w.render())).collect();
        f.write_str(&rendered.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    word: String,
    coeff: TPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    terms: Vec<TermRepr>,
}

impl From<&Element> for ElementRepr {
    fn from(e: &Element) -> Self {
        ElementRepr {
            terms: e.terms.iter().map(|(w, c)| TermRepr { word: w.to_string(), coeff: c.clone() }).collect(),
        }
    }
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self, Error> {
        let mut e = Element::zero();
        for t in r.terms {
            e.add_term(t.word.parse()?, t.coeff);
        }
        Ok(e)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ElementRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        Element::try_from(repr).map_err(serde::de::Error::custom)
    }
}
