use std::f64::consts::PI;

use super::*;
use crate::specfun::{airy_real, airy_tail};

#[test]
fn sine_kernel_values() {
    assert_eq!(sine_kernel(0.3, 0.3), 1.0);
    assert!((sine_kernel(0.0, 0.5) - 2.0 / PI).abs() < 1e-15);
    assert!(sine_kernel(0.0, 1.0).abs() < 1e-15);
    // Series branch and quotient agree across the switch.
    assert!((sinc_derivative(1.0001e-3) - sinc_derivative(0.9999e-3)).abs() < 1e-6);
}

#[test]
fn airy_kernel_reference_values() {
    let cases = [
        (0.0, 0.0, 0.066_987_483_779_663_97),
        (1.3, -0.7, 0.023_985_178_663_025_877),
        (5.0, 5.0, 2.521_057_854_006_490_4e-9),
        (-20.0, -19.9, 1.371_606_467_115_160_4),
    ];
    for (x, y, v) in cases {
        let k = airy_kernel(x, y).unwrap();
        assert!(
            (k - v).abs() < 1e-11 * v.abs().max(1e-3),
            "K({x},{y}) = {k}"
        );
    }
    assert_eq!(
        airy_kernel(1.3, -0.7).unwrap(),
        airy_kernel(-0.7, 1.3).unwrap()
    );
    assert!(airy_kernel(5.0, 5.0).unwrap() < 1e-6);
}

#[test]
fn airy_kernel_derivative_identities() {
    for x in [-6.0, -1.5, 0.0, 2.2] {
        let a = airy_real(x).unwrap().value;
        let diag = airy_kernel_dy(x, x).unwrap();
        assert!((diag + 0.5 * a * a).abs() < 1e-12);
        for y in [x + 0.1, x + 0.7, x - 2.0] {
            let ay = airy_real(y).unwrap().value;
            let sum = airy_kernel_dy(x, y).unwrap() + airy_kernel_dy(y, x).unwrap();
            assert!((sum + a * ay).abs() < 1e-11, "({x},{y})");
            let h = 1e-5;
            let fd = (airy_kernel(x, y + h).unwrap() - airy_kernel(x, y - h).unwrap()) / (2.0 * h);
            assert!((fd - airy_kernel_dy(x, y).unwrap()).abs() < 1e-8);
        }
    }
}

#[test]
fn airy_kernel_integral_reference_and_identity() {
    let cases = [
        (0.5, -1.0, 0.056_914_631_632_882_77),
        (-1.0, 0.5, 0.092_803_382_098_143_96),
        (-3.0, 2.0, 0.024_801_386_147_505_964),
    ];
    for (x, y, v) in cases {
        let i = airy_kernel_integral(x, y).unwrap();
        assert!((i - v).abs() < 1e-10, "I({x},{y}) = {i}");
    }
    for (x, y) in [(-12.3, 4.1), (0.0, 0.0), (-25.0, -24.0), (3.0, 13.9)] {
        let lhs = airy_kernel_integral(x, y).unwrap() + airy_kernel_integral(y, x).unwrap();
        assert!(
            (lhs - airy_tail(x) * airy_tail(y)).abs() < 1e-9,
            "({x},{y})"
        );
    }
}

#[test]
fn bessel_kernels() {
    let k = bessel_hard_kernel(0.5, 1.0, 2.5).unwrap();
    assert!((k - 0.093_499_660_642_180_52).abs() < 1e-11);
    assert!((k - bessel_hard_kernel(0.5, 2.5, 1.0).unwrap()).abs() < 1e-15);
    let z = 5.783_185_962_946_784;
    assert!((bessel_hard_kernel(0.0, z, z).unwrap() - 0.067_378_530_985_479_23).abs() < 1e-11);
    let small8 = bessel_hard_kernel(8.0, 0.01, 0.01).unwrap();
    let small0 = bessel_hard_kernel(0.0, 0.01, 0.01).unwrap();
    assert!(small8 < small0);
    assert!((small0 - 0.249_375_780_707_702_55).abs() < 1e-11);
    assert!(matches!(
        bessel_hard_kernel(0.0, 0.0, 1.0),
        Err(Error::Domain(_))
    ));

    let o = bessel_origin_kernel(1.0, 0.4, 2.2).unwrap();
    assert!((o + 0.168_307_189_602_306_53).abs() < 1e-11);
    assert!((o - bessel_origin_kernel(1.0, 2.2, 0.4).unwrap()).abs() < 1e-15);
    let d = bessel_origin_kernel(1.0, 0.05, 0.05).unwrap();
    assert!((d - 0.008_197_659_889_097_769).abs() < 1e-11 && d < 1.0);
    assert!((bessel_origin_kernel(0.0, 0.3, 1.1).unwrap() - sine_kernel(0.3, 1.1)).abs() < 1e-12);
}

#[test]
fn diagonal_switch_is_continuous() {
    let eps = 1e-4;
    for x in [0.3, 2.0, 7.0] {
        for a in [0.0, 1.0, 3.5] {
            let d =
                bessel_hard_kernel(a, x, x).unwrap() - bessel_hard_kernel(a, x, x + eps).unwrap();
            assert!(d.abs() < 10.0 * eps);
        }
        let d = bessel_origin_kernel(1.0, x, x).unwrap()
            - bessel_origin_kernel(1.0, x, x + eps).unwrap();
        assert!(d.abs() < 10.0 * eps);
        let d =
            airy_kernel(x - 3.0, x - 3.0).unwrap() - airy_kernel(x - 3.0, x - 3.0 + eps).unwrap();
        assert!(d.abs() < 10.0 * eps);
    }
}

#[test]
fn bulk_matrix_kernels() {
    let one = matrix_kernel_bulk(Beta::One, 0.4, 0.4);
    assert_eq!(one.entries, [[0.0, 1.0], [-1.0, 0.0]]);
    let four = matrix_kernel_bulk(Beta::Four, 0.4, 0.4);
    assert_eq!(four.entries, [[0.0, 1.0], [-1.0, 0.0]]);
    for beta in [Beta::One, Beta::Four] {
        let a = matrix_kernel_bulk(beta, 0.2, 1.9);
        let b = matrix_kernel_bulk(beta, 1.9, 0.2);
        assert!(a.neg_transpose().max_abs_diff(&b) < 1e-15);
    }
}

#[test]
fn edge_matrix_kernels() {
    for beta in [Beta::One, Beta::Four] {
        let a = matrix_kernel_edge(beta, 0.5, -1.0).unwrap();
        let b = matrix_kernel_edge(beta, -1.0, 0.5).unwrap();
        assert!(a.neg_transpose().max_abs_diff(&b) < 1e-10);
        // K21(x, y) = -K12(y, x).
        assert_eq!(a.entries[1][0], -b.entries[0][1]);
        let d = matrix_kernel_edge(beta, 0.7, 0.7).unwrap();
        assert_eq!(d.entries[1][0], -d.entries[0][1]);
    }
    let far = matrix_kernel_edge(Beta::One, 8.0, 9.0).unwrap().entries;
    assert!(far[0][0].abs() < 1e-6 && far[0][1].abs() < 1e-6 && far[1][0].abs() < 1e-6);
    assert!((far[1][1] - 0.5).abs() < 1e-6);

    let a0 = airy_real(0.0).unwrap().value;
    let h = 1e-5;
    let dy = (airy_kernel(0.0, h).unwrap() - airy_kernel(0.0, -h).unwrap()) / (2.0 * h);
    let k11 = matrix_kernel_edge(Beta::Four, 0.0, 0.0).unwrap().entries[0][0];
    assert!((k11 - (0.5 * dy + 0.25 * a0 * a0)).abs() < 1e-9);
}

#[test]
fn correlation_functions() {
    let sine = KernelHandle::sine();
    assert!((correlation_det(&sine, &[0.0]).unwrap() - 1.0).abs() < 1e-15);
    let two = correlation_det(&sine, &[0.0, 0.5]).unwrap();
    assert!((two - (1.0 - 4.0 / (PI * PI))).abs() < 1e-14);
    assert!(correlation_det(&sine, &[0.0, 1e-3]).unwrap() < 1e-5);

    let b1 = KernelHandle::sine_beta(Beta::One);
    let m = assemble_blocks(&b1, &[0.0, 0.7]).unwrap();
    let pf = correlation_pfaffian(&b1, &[0.0, 0.7]).unwrap();
    assert!((pf * pf - crate::linalg::det(&m)).abs() < 1e-8);
    let b4 = KernelHandle::sine_beta(Beta::Four);
    assert!((correlation_pfaffian(&b4, &[0.0]).unwrap() - 1.0).abs() < 1e-15);

    assert!(correlation_det(&b1, &[0.0]).is_err());
    assert!(correlation_pfaffian(&sine, &[0.0]).is_err());
    assert!(correlation_det(&sine, &[0.0; 13]).is_err());
}

#[test]
fn handle_parameters() {
    assert!(KernelHandle::new(KernelFamily::Sine, Some(1.0), None).is_err());
    assert!(KernelHandle::new(KernelFamily::BesselHard, None, None).is_err());
    assert!(KernelHandle::bessel_origin(-0.5).is_err());
    assert_eq!(KernelFamily::AiryBeta4.arity(), Arity::Matrix2x2);
    assert_eq!(
        "bessel-origin".parse::<KernelFamily>().unwrap(),
        KernelFamily::BesselOrigin
    );
}

#[test]
fn pearcey_contours_agree() {
    let a = pearcey_kernel_on(0.0, 0.0, 0.0, &PearceyContour::STANDARD).unwrap();
    let b = pearcey_kernel_on(0.0, 0.0, 0.0, &PearceyContour::ROTATED).unwrap();
    assert!((a - b).abs() < 1e-8);
    assert!((a - 0.155612323948124).abs() < 1e-9);
    let ode = pearcey_kernel_ode_form(0.7, -0.4, 0.5);
    assert!((ode - pearcey_kernel(0.7, -0.4, 0.5).unwrap()).abs() < 1e-8);
    for (x, s) in [(0.3, 0.5), (-1.0, 1.0), (2.0, -1.0)] {
        assert!(pearcey_p_residual(x, s).abs() < 1e-10);
    }
    // The density grows away from the cusp.
    let far = pearcey_kernel(15.0, 15.0, 0.0).unwrap();
    assert!((far - 0.68237973).abs() < 1e-6 && far > a);
}
