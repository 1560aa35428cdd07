use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use regorb_core::boundlib::{f_p, g, g_floor, LogBound};

#[test]
fn threshold_doubling_exceeds_next_step() {
    let two = BigRational::from_integer(2.into());
    for n in 15..=200 {
        assert!(&two * f_p(n, 2).unwrap() > f_p(n + 2, 2).unwrap(), "p=2 n={n}");
    }
    for p in [3, 5, 7, 11] {
        for n in 11..=200 {
            assert!(&two * f_p(n, p).unwrap() > f_p(n + 2, p).unwrap(), "p={p} n={n}");
        }
    }
}

#[test]
fn g_grows_with_n_and_shrinks_with_q() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 7..60 {
            assert!(g(q, n).unwrap() < g(q, n + 1).unwrap());
            assert!(g_floor(q, n).unwrap() as f64 <= g(q, n).unwrap());
        }
    }
    for n in 8..60 {
        let vals: Vec<f64> = [2u64, 3, 4, 5, 7, 8, 9, 11].iter().map(|&q| g(q, n).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]), "n={n}");
    }
}

#[test]
fn spin_term_dominates_from_eight_points() {
    // (n(n-1)z)^2 <= 2 n! z, so the second term of the maximum is the larger one.
    for n in 8..40usize {
        for z in 1..=n as u64 {
            let lhs = BigUint::from(n as u64 * (n as u64 - 1) * z).pow(2);
            let rhs = regorb_core::permsym::factorial(n) * 2u32 * z;
            assert!(lhs <= rhs, "n={n} z={z}");
        }
    }
}

proptest! {
    #[test]
    fn exact_floor_brackets_the_value(num in 1u64..40, den in 1u64..4, base in 2u64..20, arg in 1u64..1_000_000) {
        let b = LogBound::new(num, den, base, BigUint::from(arg)).unwrap();
        let k = b.floor();
        let rhs = BigUint::from(arg).pow(num as u32);
        prop_assert!(BigUint::from(base).pow((k * den) as u32) <= rhs);
        prop_assert!(BigUint::from(base).pow(((k + 1) * den) as u32) > rhs);
        prop_assert!((k as f64 - b.value()).abs() < 1.0 + 1e-9);
    }
}
