use gammafactor::algebra::rational::{int, Rational};
use gammafactor::crystal::*;
use gammafactor::par::Exec;
use proptest::prelude::*;

#[test]
fn relations_hold_on_every_small_shape() {
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let r = verify_weyl_action(m, n, 25, 11, Exec::Parallel).unwrap();
        assert!(r.passed(), "{m}x{n}: {:?}", r.failures.first());
        assert_eq!(r.trials, 25);
        assert!(r.checks.jacobian >= 25);
    }
}

#[test]
fn symbolic_two_by_two() {
    assert!(two_by_two_identity().unwrap());
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let a = verify_weyl_action(3, 2, 10, 3, Exec::Sequential).unwrap();
    let b = verify_weyl_action(3, 2, 10, 3, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

fn point() -> impl Strategy<Value = CrystalPoint<Rational>> {
    prop::collection::vec(1i64..9, 6).prop_map(|v| CrystalPoint::new(2, 3, v.into_iter().map(int).collect()).unwrap())
}

proptest! {
    #[test]
    fn tau_is_an_involution_preserving_the_phase(t in point()) {
        for g in [Generator::Row(1), Generator::Col(1), Generator::Col(2)] {
            let s = apply(&t, g).unwrap();
            prop_assert_eq!(apply(&s, g).unwrap(), t.clone());
            prop_assert_eq!(s.entry_sum(), t.entry_sum());
        }
    }

    #[test]
    fn jacobian_is_minus_one(t in point()) {
        prop_assert_eq!(jacobian_of(&t, &[Generator::Row(1)]).unwrap(), int(-1));
        prop_assert_eq!(jacobian_of(&t, &[Generator::Col(2)]).unwrap(), int(-1));
    }
}
