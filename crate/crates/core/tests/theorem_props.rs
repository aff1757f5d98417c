use tmzv_core::theorems::{sweep, thm1_rhs, thm2_rhs, Case};
use tmzv_core::{Statement, SweepOptions};

#[test]
fn builders_stay_in_h1() {
    for m in 1..=3 {
        for u in 1..=3 {
            for p in 1..=2 {
                for n in 0..=3 {
                    for v in 0..=3 {
                        let e = thm2_rhs(m, u, p, n, v).unwrap();
                        assert!(e.words().all(|w| w.in_h1()), "thm2 {m} {u} {p} {n} {v}");
                        if m >= 2 && u >= 2 {
                            let e = thm1_rhs(m, u, p, n, v).unwrap();
                            assert!(e.words().all(|w| w.in_h1()), "thm1 {m} {u} {p} {n} {v}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn alternating_sums_collapse_at_zero_and_one() {
    for case in sweep(Statement::Cor42, &SweepOptions { max: None, cutoff: Some(10_000) }) {
        let r = case.run().unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn capped_sweeps_pass() {
    let opts = SweepOptions { max: Some(2), cutoff: Some(2_000) };
    for st in Statement::ALL {
        for case in sweep(st, &opts) {
            let r = case.run().unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(Case::Thm1 { m: 1, u: 2, p: 1, n: 0, v: 0 }.run().is_err());
    assert!(Case::Eq31 { k: 5 }.run().is_err());
    assert!(Case::Zeta8 { l: 0 }.run().is_err());
}
