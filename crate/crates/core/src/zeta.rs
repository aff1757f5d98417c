//! Truncated multiple zeta values, zeta-star values, and interpolated values.
//!
//! Every nested sum is truncated at `m_1 <= M` and evaluated inner-to-outer
//! with running prefix sums, `O(depth * M)` time and `O(M)` space.

use std::collections::HashMap;

use crate::error::Error;
use crate::interp::s_t;
use crate::word::{Element, Index};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    /// Upper bound for the outermost summation variable.
    pub cutoff: usize,
    /// Value substituted for `t`.
    pub t: f64,
}

impl EvalConfig {
    pub fn new(cutoff: usize, t: f64) -> Self {
        EvalConfig { cutoff, t }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn check_admissible(idx: &Index) -> Result<(), Error> {
    if idx.is_admissible() {
        Ok(())
    } else {
        Err(Error::Divergent(idx.parts().to_vec()))
    }
}

/// Nested sum over `M >= m_1 > ... > m_n >= 1` (`strict`) or with `>=`.
fn nested_sum(parts: &[u32], cutoff: usize, strict: bool) -> f64 {
    let inv_pow = |m: usize, k: u32| (m as f64).powi(-(k as i32));
    let (&innermost, outer) = parts.split_last().expect("nonempty index");
    // level[m - 1] holds the value of the partial nested sum with outer variable fixed to m
    let mut level: Vec<f64> = (1..=cutoff).map(|m| inv_pow(m, innermost)).collect();
    for &k in outer.iter().rev() {
        let mut running = CompensatedSum::default();
        for m in 1..=cutoff {
            let below = if strict {
                let prev = running.value();
                running.add(level[m - 1]);
                prev
            } else {
                running.add(level[m - 1]);
                running.value()
            };
            level[m - 1] = inv_pow(m, k) * below;
        }
    }
    let mut total = CompensatedSum::default();
    // smallest terms first
    for v in level.iter().rev() {
        total.add(*v);
    }
    total.value()
}

/// Evaluator holding a cache of truncated MZVs for one configuration.
#[derive(Debug, Clone)]
pub struct Evaluator {
    cfg: EvalConfig,
    cache: HashMap<(Index, bool), f64>,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Self {
        Evaluator { cfg, cache: HashMap::new() }
    }

    pub fn config(&self) -> EvalConfig {
        self.cfg
    }

    fn cached(&mut self, idx: &Index, strict: bool) -> Result<f64, Error> {
        check_admissible(idx)?;
        let cutoff = self.cfg.cutoff;
        Ok(*self
            .cache
            .entry((idx.clone(), strict))
            .or_insert_with(|| nested_sum(idx.parts(), cutoff, strict)))
    }

    pub fn mzv(&mut self, idx: &Index) -> Result<f64, Error> {
        self.cached(idx, true)
    }

    pub fn mzv_star(&mut self, idx: &Index) -> Result<f64, Error> {
        self.cached(idx, false)
    }

    /// Sum over all `2^{n-1}` contractions `p` of the index of `t^{n - dep(p)} ζ(p)`.
    pub fn zeta_t_boxes(&mut self, idx: &Index) -> Result<f64, Error> {
        check_admissible(idx)?;
        let parts = idx.parts();
        let gaps = parts.len() - 1;
        let mut total = CompensatedSum::default();
        for mask in 0u64..(1u64 << gaps) {
            let mut merged = vec![parts[0]];
            for (g, &k) in parts[1..].iter().enumerate() {
                if mask >> g & 1 == 1 {
                    *merged.last_mut().unwrap() += k;
                } else {
                    merged.push(k);
                }
            }
            let weight = self.cfg.t.powi(mask.count_ones() as i32);
            let value = self.mzv(&Index::new(merged)?)?;
            total.add(weight * value);
        }
        Ok(total.value())
    }

    /// `Z^t(a) = Z(S_t(a))` at `t = cfg.t`.
    pub fn z_t_eval(&mut self, a: &Element) -> Result<f64, Error> {
        let image = s_t(a);
        let mut total = CompensatedSum::default();
        for (w, c) in image.iter() {
            let coeff = c.eval_f64(self.cfg.t);
            if w.is_empty() {
                total.add(coeff);
                continue;
            }
            if !w.in_h0() {
                return Err(Error::NotInH0(w.to_string()));
            }
            let value = self.mzv(&Index::from_word(w)?)?;
            total.add(coeff * value);
        }
        Ok(total.value())
    }
}

pub fn mzv(idx: &Index, cfg: EvalConfig) -> Result<f64, Error> {
    Evaluator::new(cfg).mzv(idx)
}

pub fn mzv_star(idx: &Index, cfg: EvalConfig) -> Result<f64, Error> {
    Evaluator::new(cfg).mzv_star(idx)
}

pub fn zeta_t_boxes(idx: &Index, cfg: EvalConfig) -> Result<f64, Error> {
    Evaluator::new(cfg).zeta_t_boxes(idx)
}

pub fn z_t_eval(a: &Element, cfg: EvalConfig) -> Result<f64, Error> {
    Evaluator::new(cfg).z_t_eval(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::TPoly;
    use crate::word::Word;
    use std::f64::consts::PI;

    fn idx(parts: &[u32]) -> Index {
        Index::new(parts.to_vec()).unwrap()
    }

    /// Direct nested loops, for small cutoffs only.
    fn brute(parts: &[u32], cutoff: usize, strict: bool) -> f64 {
        fn go(parts: &[u32], upper: usize, strict: bool) -> f64 {
            match parts.split_first() {
                None => 1.0,
                Some((&k, rest)) => (1..=upper)
                    .map(|m| {
                        let next = if strict { m - 1 } else { m };
                        (m as f64).powi(-(k as i32)) * go(rest, next, strict)
                    })
                    .sum(),
            }
        }
        go(parts, cutoff, strict)
    }

    #[test]
    fn dp_matches_nested_loops() {
        for parts in [&[2u32][..], &[2, 1], &[3, 1, 2], &[2, 2, 2, 1], &[4, 1, 1]] {
            for strict in [true, false] {
                let dp = nested_sum(parts, 40, strict);
                let b = brute(parts, 40, strict);
                assert!((dp - b).abs() < 1e-13, "{parts:?} {strict}: {dp} vs {b}");
            }
        }
    }

    #[test]
    fn classical_values() {
        let cfg = EvalConfig::new(100_000, 0.0);
        assert!((mzv(&idx(&[2]), cfg).unwrap() - PI * PI / 6.0).abs() < 1e-4);
        assert!((mzv(&idx(&[2, 2]), cfg).unwrap() - PI.powi(4) / 120.0).abs() < 1e-4);
        let cfg = EvalConfig::new(10_000, 0.0);
        assert!((mzv(&idx(&[4]), cfg).unwrap() - PI.powi(4) / 90.0).abs() < 1e-8);
    }

    #[test]
    fn star_values() {
        let cfg = EvalConfig::new(2_000, 0.0);
        assert_eq!(mzv_star(&idx(&[2]), cfg).unwrap(), mzv(&idx(&[2]), cfg).unwrap());
        let lhs = mzv_star(&idx(&[2, 1]), cfg).unwrap();
        let rhs = mzv(&idx(&[2, 1]), cfg).unwrap() + mzv(&idx(&[3]), cfg).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        let lhs = mzv_star(&idx(&[2, 2]), cfg).unwrap();
        let rhs = mzv(&idx(&[2, 2]), cfg).unwrap() + mzv(&idx(&[4]), cfg).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn boxes_and_specializations() {
        let cfg = EvalConfig::new(2_000, 0.3);
        let lhs = zeta_t_boxes(&idx(&[2, 1]), cfg).unwrap();
        let rhs = mzv(&idx(&[2, 1]), cfg).unwrap() + 0.3 * mzv(&idx(&[3]), cfg).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        let at0 = EvalConfig::new(2_000, 0.0);
        assert_eq!(zeta_t_boxes(&idx(&[3, 1, 2]), at0).unwrap(), mzv(&idx(&[3, 1, 2]), at0).unwrap());
        let at1 = EvalConfig::new(2_000, 1.0);
        let lhs = zeta_t_boxes(&idx(&[2, 2]), at1).unwrap();
        assert!((lhs - mzv_star(&idx(&[2, 2]), at1).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn z_t_eval_examples() {
        let cfg = EvalConfig::new(2_000, 0.7);
        let lhs = z_t_eval(&Element::from_index(&idx(&[2, 1])), cfg).unwrap();
        assert!((lhs - zeta_t_boxes(&idx(&[2, 1]), cfg).unwrap()).abs() < 1e-10);
        assert_eq!(z_t_eval(&Element::one(), cfg).unwrap(), 1.0);
        let z3 = Element::from_word(Word::z(3));
        assert_eq!(z_t_eval(&z3, cfg).unwrap(), mzv(&idx(&[3]), cfg).unwrap());
        let half_one = Element::one().scale(&TPoly::t());
        assert_eq!(z_t_eval(&half_one, cfg).unwrap(), 0.7);
    }

    #[test]
    fn rejects_divergent_and_non_admissible() {
        let cfg = EvalConfig::new(100, 0.0);
        assert_eq!(mzv(&idx(&[1, 2]), cfg), Err(Error::Divergent(vec![1, 2])));
        assert!(matches!(mzv_star(&Index::empty(), cfg), Err(Error::Divergent(_))));
        assert!(matches!(zeta_t_boxes(&idx(&[1]), cfg), Err(Error::Divergent(_))));
        assert!(matches!(z_t_eval(&Element::from_word(Word::z(1)), cfg), Err(Error::NotInH0(_))));
        assert!(matches!(z_t_eval(&Element::from_word(Word::x_pow(2)), cfg), Err(Error::NotInH0(_))));
    }
}
