//! Property tests across purification, reliability and the oracle.

use proptest::prelude::*;
use punctel::oracle::{CodeOracle, DecodeMode};
use punctel::purification::purify;
use punctel::reliability::{branch_success, logical_error};
use punctel::{builtin_registry, BellDiagonalState, Branch, PauliChannel};

fn bell_state() -> impl Strategy<Value = BellDiagonalState> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0).prop_filter_map(
        "nonzero",
        |(a, b, c, d)| {
            let s = a + b + c + d;
            (s > 1e-9)
                .then(|| BellDiagonalState::new(a / s, b / s, c / s, d / s).ok())
                .flatten()
        },
    )
}

proptest! {
    #[test]
    fn rounds_stay_normalized(s in bell_state(), rounds in 1u32..6) {
        let mut s = s;
        for _ in 0..rounds {
            match s.dejmps_round() {
                Ok(next) => s = next,
                Err(_) => return Ok(()),
            }
            let sum: f64 = s.coefficients().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            prop_assert!(s.coefficients().iter().all(|&c| (0.0..=1.0).contains(&c)));
        }
    }

    #[test]
    fn fidelity_grows_above_half(f0 in 0.55f64..0.999, r in 0u32..4) {
        prop_assert!(purify(f0, r + 1).unwrap().fidelity() > purify(f0, r).unwrap().fidelity());
    }

    #[test]
    fn branch_success_monotone(n in 1usize..20, t in 0usize..5, q1 in 0.0f64..0.5, dq in 0.0f64..0.5) {
        let t = t.min(n);
        let a = branch_success(n, t, q1).unwrap();
        let b = branch_success(n, t, q1 + dq).unwrap();
        prop_assert!(b <= a + 1e-15);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn logical_error_is_probability(px in 0.0f64..0.33, py in 0.0f64..0.33, pz in 0.0f64..0.33) {
        let ch = PauliChannel::new(px, py, pz).unwrap();
        for code in builtin_registry() {
            let p = logical_error(code, &ch);
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lookup_never_worse_than_threshold(q in 0.001f64..0.5, which in 0usize..5) {
        let code = &builtin_registry().codes()[which];
        let o = CodeOracle::new(code).unwrap();
        for branch in [Branch::X, Branch::Z] {
            let thr = o.exact_branch_error(branch, q, DecodeMode::Threshold).unwrap();
            let look = o.exact_branch_error(branch, q, DecodeMode::Lookup).unwrap();
            prop_assert!(look <= thr + 1e-15);
        }
    }
}
