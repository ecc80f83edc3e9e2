use proptest::prelude::*;
use zitter_core::clifford::{from_matrix, matrix_rep, table::GRADES};
use zitter_core::dynamics::{analytic_free_psi, step_rk4, BZState, EMField};
use zitter_core::dynamics::eom_derivatives;
use zitter_core::spinor::{
    psi_to_z, rotor_decompose, rotor_residual, spin_density, spin_tensor, velocity_bilinear, z_to_psi,
};
use zitter_core::{exp_bivector, Bivector, DHSpinor, DiracSpinorZ, Multivector};

fn mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(-2.0..2.0f64).prop_map(Multivector::new)
}

fn bivector(max_norm: f64) -> impl Strategy<Value = Bivector> {
    (prop::array::uniform6(-1.0..1.0f64), 0.0..max_norm).prop_map(|(c, r)| {
        let n = c.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
        Bivector::new(c.map(|x| x * r / n))
    })
}

fn rotor() -> impl Strategy<Value = Multivector> {
    bivector(2.0).prop_map(|b| exp_bivector(&b, 1e-14).unwrap())
}

fn matrix_gap(a: &nalgebra::Matrix4<num_complex::Complex64>, b: &nalgebra::Matrix4<num_complex::Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_matrix_oracle(a in mv(), b in mv()) {
        let lhs = matrix_rep(&a.gp(&b)).0;
        let rhs = matrix_rep(&a).0 * matrix_rep(&b).0;
        prop_assert!(matrix_gap(&lhs, &rhs) <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn product_is_associative(a in mv(), b in mv(), c in mv()) {
        let d = a.gp(&b).gp(&c) - a.gp(&b.gp(&c));
        prop_assert!(d.max_abs() <= 1e-12 * (1.0 + a.norm() * b.norm() * c.norm()));
    }

    #[test]
    fn matrix_round_trip(a in mv()) {
        let back = from_matrix(&matrix_rep(&a)).unwrap();
        prop_assert!((back - a).max_abs() <= 1e-14 * (1.0 + a.norm()));
    }

    #[test]
    fn reverse_is_anti_automorphism(a in mv(), b in mv()) {
        let d = a.gp(&b).reverse() - b.reverse().gp(&a.reverse());
        prop_assert!(d.max_abs() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn reverse_is_involution_with_grade_signs(a in mv()) {
        prop_assert_eq!(a.reverse().reverse(), a);
        for k in 0..=4usize {
            let sign = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(a.grade(k).reverse(), a.grade(k) * sign);
        }
    }

    #[test]
    fn grades_reconstruct(a in mv()) {
        let mut sum = Multivector::ZERO;
        for k in 0..=4 {
            sum += a.grade(k);
        }
        prop_assert_eq!(sum, a);
        prop_assert_eq!(a.grade(5), Multivector::ZERO);
        for (i, c) in a.grade(2).coeffs().iter().enumerate() {
            if GRADES[i] != 2 {
                prop_assert_eq!(*c, 0.0);
            }
        }
    }

    #[test]
    fn bivector_exponential_is_rotor(b in bivector(5.0)) {
        let r = exp_bivector(&b, 1e-14).unwrap();
        prop_assert!(rotor_residual(&r) <= 1e-10, "residual {}", rotor_residual(&r));
        prop_assert_eq!(r, r.even());
    }

    #[test]
    fn bivector_exponential_matches_matrix_exponential(b in bivector(3.0)) {
        let r = exp_bivector(&b, 1e-14).unwrap();
        let oracle = matrix_rep(b.as_multivector()).0.exp();
        let scale = oracle.iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!(matrix_gap(&matrix_rep(&r).0, &oracle) <= 1e-10 * scale);
    }

    #[test]
    fn inverse_is_two_sided(a in mv()) {
        if let Ok(inv) = a.inverse() {
            let cond = a.norm() * inv.norm();
            prop_assume!(cond < 1e6);
            prop_assert!((a.gp(&inv) - Multivector::ONE).max_abs() <= 1e-12 * cond);
            prop_assert!((inv.gp(&a) - Multivector::ONE).max_abs() <= 1e-12 * cond);
        }
    }

    #[test]
    fn column_spinor_round_trip(v in prop::array::uniform8(-1.0..1.0f64)) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        let z = DiracSpinorZ::from_re_im(v);
        let psi = z_to_psi(&z).unwrap();
        prop_assert_eq!(psi, DHSpinor::from_even_part(psi.as_multivector()));
        prop_assert!(psi_to_z(&psi).max_abs_diff(&z) <= 1e-14);
    }

    #[test]
    fn decomposition_recomposes(rho in 0.1..4.0f64, beta in -3.0..3.0f64, r in rotor()) {
        let psi = DHSpinor::from_parts(rho, beta, &r);
        let parts = rotor_decompose(&psi).unwrap();
        prop_assert!((parts.rho - rho).abs() <= 1e-10 * rho);
        prop_assert!((parts.beta - beta).abs() <= 1e-10);
        prop_assert!(rotor_residual(&parts.rotor) <= 1e-10);
        let back = DHSpinor::from_parts(parts.rho, parts.beta, &parts.rotor);
        prop_assert!((*back.as_multivector() - *psi.as_multivector()).max_abs() <= 1e-10 * (1.0 + rho));
    }

    #[test]
    fn velocity_has_norm_rho(rho in 0.1..4.0f64, beta in -3.0..3.0f64, r in rotor()) {
        let psi = DHSpinor::from_parts(rho, beta, &r);
        let v = velocity_bilinear(&psi);
        prop_assert!((v.scalar_product(&v) - rho * rho).abs() <= 1e-9 * rho * rho * (1.0 + v.norm().powi(2)));
        prop_assert!(v.vector_components()[0] > 0.0);
    }

    #[test]
    fn rk4_step_tracks_closed_form(r in rotor(), w in 0.0..1.0f64, m in 0.5..2.0f64) {
        let boost = exp_bivector(&Bivector::new([w, 0.0, 0.0, 0.0, 0.0, 0.0]), 1e-14).unwrap();
        let p = boost.sandwich(&Multivector::gamma(0)).grade(1) * m;
        let psi0 = DHSpinor::from_even_part(&r);
        let s = BZState::new(0.0, Multivector::ZERO, p, psi0);
        let h = 1e-2;
        let next = step_rk4(&s, &EMField::free(), h).unwrap();
        let exact = analytic_free_psi(&psi0, &p, m, h).unwrap();
        let scale = (m * r.norm() * p.norm()).powi(5).max(1.0);
        let err = (*next.psi.as_multivector() - *exact.as_multivector()).max_abs();
        prop_assert!(err <= 1e-10 * scale, "err {err}");
    }

    #[test]
    fn column_spin_tensor_is_minus_clifford_spin(v in prop::array::uniform8(-1.0..1.0f64)) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        let z = DiracSpinorZ::from_re_im(v);
        let col = spin_tensor(&z);
        let cl = spin_density(&z_to_psi(&z).unwrap()).tensor();
        for a in 0..4 {
            for b in 0..4 {
                prop_assert!((col[a][b] + cl[a][b]).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn spin_tensor_equations_of_motion(r in rotor(), w in 0.0..1.0f64) {
        let boost = exp_bivector(&Bivector::new([0.0, w, 0.0, 0.0, 0.0, 0.0]), 1e-14).unwrap();
        let p = boost.sandwich(&Multivector::gamma(0)).grade(1);
        let s = BZState::new(0.0, Multivector::ZERO, p, DHSpinor::from_even_part(&r));
        let d = eom_derivatives(&s, &EMField::free());
        let psi = s.psi.as_multivector();
        // Product rule on S = ½ ψ γ2γ1 ψ̃ and v = ψ γ0 ψ̃.
        let g21 = Multivector::gamma(2).gp(&Multivector::gamma(1));
        let ds = Bivector::project(&((d.dpsi.gp(&g21).gp(&psi.reverse()) + psi.gp(&g21).gp(&d.dpsi.reverse())) * 0.5)).tensor();
        let g0 = Multivector::gamma(0);
        let dv = (d.dpsi.gp(&g0).gp(&psi.reverse()) + psi.gp(&g0).gp(&d.dpsi.reverse())).lower_components();
        let st = spin_density(&s.psi).tensor();
        let (pl, vl) = (p.lower_components(), velocity_bilinear(&s.psi).lower_components());
        let pu = p.vector_components();
        for a in 0..4 {
            let rhs: f64 = (0..4).map(|b| 4.0 * st[a][b] * pu[b]).sum();
            prop_assert!((dv[a] - rhs).abs() <= 1e-12 * (1.0 + r.norm().powi(4)));
            for b in 0..4 {
                let expected = pl[a] * vl[b] - pl[b] * vl[a];
                prop_assert!((ds[a][b] - expected).abs() <= 1e-12 * (1.0 + r.norm().powi(4)));
            }
        }
    }
}
