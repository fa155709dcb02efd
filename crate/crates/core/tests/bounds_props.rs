use charcond::bounds::{
    prop_universal_floor, thm1_average_bound, thm1_per_index_bound, thm2_second_moment_bound,
};
use proptest::prelude::*;

#[test]
fn per_index_average_dominates_average_bound() {
    // The average bound is derived from the per-index one through
    // Σ ln i ≥ n(ln n - 1); by Stirling the gap is ≈ ¼ + ¼ ln(2πn).
    for n in 1..=1000usize {
        let mean = (1..=n)
            .map(|i| thm1_per_index_bound(n, i).unwrap())
            .sum::<f64>()
            / n as f64;
        let gap = mean - thm1_average_bound(n).unwrap();
        let stirling = 0.25 + 0.25 * (2.0 * std::f64::consts::PI * n as f64).ln();
        assert!(gap >= 0.0, "n = {n}: gap {gap}");
        assert!(gap <= stirling + 0.05, "n = {n}: gap {gap} vs {stirling}");
    }
}

#[test]
fn average_bound_increases_from_thirty() {
    let values: Vec<f64> = (30..=5000)
        .map(|n| thm1_average_bound(n).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn second_moment_against_factorial() {
    let mut fact = 1.0f64;
    for n in 1..=20usize {
        let direct = (fact * 2f64.powi(n as i32)).ln();
        assert!(
            (thm2_second_moment_bound(n).unwrap() - direct).abs() <= 1e-12 * direct.abs().max(1.0)
        );
        fact *= n as f64;
    }
}

proptest! {
    #[test]
    fn pure_and_deterministic(n in 1usize..5000, frac in 0.0f64..1.0) {
        let i = 1 + ((n - 1) as f64 * frac) as usize;
        prop_assert_eq!(thm1_per_index_bound(n, i).unwrap(), thm1_per_index_bound(n, i).unwrap());
        prop_assert_eq!(prop_universal_floor(n).unwrap(), -(n as f64).ln());
        prop_assert!(thm2_second_moment_bound(n).unwrap().is_finite());
    }
}
