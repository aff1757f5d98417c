use proptest::prelude::*;
use tmzv_core::stuffle::{
    stuffle_classical, stuffle_combinatorial, stuffle_o_index, stuffle_t_elem, stuffle_t_index,
};
use tmzv_core::theorems::small_indices;
use tmzv_core::{Element, Index, Rational};

fn index(max_depth: usize, max_part: u32) -> impl Strategy<Value = Index> {
    prop::collection::vec(1..=max_part, 0..=max_depth).prop_map(|p| Index::new(p).unwrap())
}

fn admissible(max_depth: usize, max_part: u32) -> impl Strategy<Value = Index> {
    (2..=max_part, prop::collection::vec(1..=max_part, 0..max_depth)).prop_map(|(h, mut rest)| {
        rest.insert(0, h);
        Index::new(rest).unwrap()
    })
}

#[test]
fn exhaustive_commutativity() {
    let all = small_indices(3, 3);
    for a in &all {
        for b in &all {
            assert_eq!(stuffle_t_index(a, b), stuffle_t_index(b, a), "{a} {b}");
            assert_eq!(stuffle_o_index(a, b), stuffle_o_index(b, a), "{a} {b}");
        }
    }
}

#[test]
fn exhaustive_reduction_and_oracle() {
    let all = small_indices(3, 3);
    for a in &all {
        for b in &all {
            let t = stuffle_t_index(a, b);
            assert_eq!(t.eval_at_t(&Rational::zero()), stuffle_classical(a, b), "{a} {b}");
            assert_eq!(stuffle_combinatorial(a, b), t, "{a} {b}");
        }
    }
}

/// Each part of a classical product is a part of one factor or the sum of one
/// part from each.
#[test]
fn classical_parts_are_pairwise_sums() {
    let all = small_indices(3, 3);
    for a in &all {
        for b in &all {
            for w in stuffle_classical(a, b).words() {
                let idx = Index::from_word(w).unwrap();
                for &part in idx.parts() {
                    let single = a.parts().contains(&part) || b.parts().contains(&part);
                    let pair = a.parts().iter().any(|&k| b.parts().iter().any(|&l| k + l == part));
                    assert!(single || pair, "{a} {b}: part {part} of {idx}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn commutative(a in index(4, 4), b in index(4, 4)) {
        prop_assert_eq!(stuffle_t_index(&a, &b), stuffle_t_index(&b, &a));
    }

    #[test]
    fn preserves_admissibility(a in admissible(3, 4), b in admissible(3, 4)) {
        for w in stuffle_t_index(&a, &b).words() {
            prop_assert!(w.in_h0(), "{} is not admissible", w);
            prop_assert!(Index::from_word(w).unwrap().is_admissible());
        }
    }

    #[test]
    fn weight_homogeneous(a in index(4, 4), b in index(4, 4)) {
        let total = a.weight() + b.weight();
        for w in stuffle_t_index(&a, &b).words() {
            prop_assert_eq!(w.len() as u32, total);
        }
    }

    #[test]
    fn open_product_weight_homogeneous(a in index(3, 4), b in index(3, 4)) {
        let total = a.weight() + b.weight();
        for w in stuffle_o_index(&a, &b).words() {
            prop_assert_eq!(w.len() as u32, total);
        }
    }

    #[test]
    fn associative_on_small_triples(a in index(2, 3), b in index(2, 3), c in index(2, 3)) {
        let (a, b, c) = (Element::from_index(&a), Element::from_index(&b), Element::from_index(&c));
        let left = stuffle_t_elem(&stuffle_t_elem(&a, &b).unwrap(), &c).unwrap();
        let right = stuffle_t_elem(&a, &stuffle_t_elem(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
