use nalgebra::DMatrix;
use proptest::prelude::*;

use rmtlab::cli::GridSpec;
use rmtlab::equilibrium::{solve_equilibrium, Potential};
use rmtlab::kernels::{airy_kernel, sine_kernel};
use rmtlab::linalg::{det, pfaffian};
use rmtlab::mc::{sample_gaussian, Beta};
use rmtlab::orthopoly::{cd_kernel, cd_kernel_sum, recurrence_table, WeightSpec};
use rmtlab::quad::composite;
use rmtlab::records::{read_batch, write_batch};

fn beta() -> impl Strategy<Value = Beta> {
    prop_oneof![Just(Beta::One), Just(Beta::Two), Just(Beta::Four)]
}

proptest! {
    #[test]
    fn sine_kernel_is_symmetric_with_unit_diagonal(x in -50.0..50.0f64, y in -50.0..50.0f64) {
        prop_assert!((sine_kernel(x, y) - sine_kernel(y, x)).abs() < 1e-14);
        prop_assert!((sine_kernel(x, x) - 1.0).abs() < 1e-14);
        prop_assert!(sine_kernel(x, y).abs() <= 1.0 + 1e-14);
    }

    #[test]
    fn airy_kernel_is_symmetric(x in -8.0..6.0f64, y in -8.0..6.0f64) {
        let kxy = airy_kernel(x, y).unwrap();
        let kyx = airy_kernel(y, x).unwrap();
        prop_assert!((kxy - kyx).abs() <= 1e-10 * (1.0 + kxy.abs()));
        prop_assert!(airy_kernel(x, x).unwrap() >= 0.0);
    }

    #[test]
    fn pfaffian_squares_to_determinant(k in 1usize..5, entries in prop::collection::vec(-2.0..2.0f64, 64)) {
        let m = 2 * k;
        let mut a = DMatrix::zeros(m, m);
        let mut it = entries.iter();
        for i in 0..m {
            for j in i + 1..m {
                let v = *it.next().unwrap();
                a[(i, j)] = v;
                a[(j, i)] = -v;
            }
        }
        let pf = pfaffian(&a).unwrap();
        let d = det(&a);
        prop_assert!((pf * pf - d).abs() <= 1e-9 * d.abs().max(1.0));
    }

    #[test]
    fn grid_spec_endpoints_and_count(lo in -100.0..100.0f64, len in 0.01..50.0f64, count in 2usize..500) {
        let hi = lo + len;
        let g = GridSpec::parse(&format!("{lo:?}:{hi:?}:{count}")).unwrap();
        let pts = g.points();
        prop_assert_eq!(pts.len(), count);
        prop_assert_eq!(pts[0], lo);
        prop_assert!((pts[count - 1] - hi).abs() <= 1e-12 * (1.0 + hi.abs()));
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn composite_rule_is_exact_for_low_degree(coeffs in prop::collection::vec(-3.0..3.0f64, 1..12),
                                              a in -2.0..0.0f64, b in 0.1..2.0f64) {
        let f = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        let exact: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0))
            .sum();
        let got = composite(a, b, 3, 6, f);
        prop_assert!((got - exact).abs() <= 1e-11 * (1.0 + exact.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadratic_potential_gives_scaled_semicircle(c in 0.1..5.0f64) {
        let v = Potential::new(vec![0.0, 0.0, c], false, 0.0).unwrap();
        let mu = solve_equilibrium(&v).unwrap();
        let r = (2.0 / c).sqrt();
        prop_assert!((mu.support.0 + r).abs() < 1e-9 && (mu.support.1 - r).abs() < 1e-9);
        prop_assert!((mu.mass() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn christoffel_darboux_is_symmetric(n in 1usize..24, x in -2.5..2.5f64, y in -2.5..2.5f64) {
        let w = WeightSpec::new(Potential::gaussian(), n as f64).unwrap();
        let t = recurrence_table(&w, n).unwrap();
        let kxy = cd_kernel(&t, &w, n, x, y);
        prop_assert!((kxy - cd_kernel(&t, &w, n, y, x)).abs() < 1e-10);
        prop_assert!((kxy - cd_kernel_sum(&t, &w, n, x, y)).abs() < 1e-10);
        prop_assert!(cd_kernel(&t, &w, n, x, x) >= 0.0);
    }

    #[test]
    fn gaussian_batches_are_sorted_and_reproducible(b in beta(), n in 1usize..24, count in 1usize..6, seed in any::<u64>()) {
        let first = sample_gaussian(b, n, count, seed).unwrap();
        let again = sample_gaussian(b, n, count, seed).unwrap();
        prop_assert_eq!(&first.eigenvalue_sets, &again.eigenvalue_sets);
        prop_assert_eq!(first.count(), count);
        for set in &first.eigenvalue_sets {
            prop_assert_eq!(set.len(), n);
            prop_assert!(set.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn binary_batch_round_trips(b in beta(), n in 1usize..12, count in 1usize..5, seed in any::<u64>()) {
        let batch = sample_gaussian(b, n, count, seed).unwrap();
        let mut bytes = Vec::new();
        write_batch(&batch, &mut bytes).unwrap();
        let back = read_batch(bytes.as_slice()).unwrap();
        prop_assert_eq!(back.beta, batch.beta);
        prop_assert_eq!(back.n, batch.n);
        prop_assert_eq!(back.seed, batch.seed);
        prop_assert_eq!(back.eigenvalue_sets, batch.eigenvalue_sets);
    }
}
