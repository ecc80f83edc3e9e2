//! Reference values computed outside this crate (numpy/scipy, standard Dirac
//! matrices, `z(τ) = expm(-i p̸ τ) z0`, `v^μ = z̄ 𝛄^μ z`) and frozen here.

use zitter_core::dynamics::{
    analytic_free_psi, analytic_free_velocity, analytic_free_z, free_velocity_data, simulate,
    BZState, EMField,
};
use zitter_core::spinor::{dirac_current, velocity_bilinear, z_to_psi};
use zitter_core::{DiracSpinorZ, Multivector};

fn z0() -> DiracSpinorZ {
    let v = [0.6, 0.1, -0.2, 0.3, 0.2, -0.4, 0.1, 0.05];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    DiracSpinorZ::from_re_im(v.map(|x| x / n))
}

struct Case {
    m: f64,
    p: [f64; 4],
    tau: f64,
    v: [f64; 4],
    z: [f64; 8],
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            m: 1.0,
            p: [1.0, 0.0, 0.0, 0.0],
            tau: 1.7,
            v: [1.0, 0.2865051856171847, -0.16139438022747232, -0.38848249491973913],
            z: [
                0.02589723759527041, -0.7201580234219218, 0.3829752791913784, 0.18917208007304606,
                0.4394008734272056, 0.29602132831499456, -0.07400533207874864, 0.1098502183568014,
            ],
        },
        Case {
            m: 1.0,
            p: [1.0810723718384547, 0.4107523258028155, 0.0, 0.0],
            tau: 2.3,
            v: [1.3651627303304896, 0.6944169698381686, -0.6483998649921197, -0.8620140751107668],
            z: [
                -0.3962393306498785, -0.615680751980898, 0.5895336272754714, 0.02678540512955901,
                0.33301778299206775, 0.5793204000056144, -0.09039913492135235, -0.16168489711221315,
            ],
        },
        Case {
            m: 2.0,
            p: [2.090677028257721, 0.0, 0.0, 0.6090405868942852],
            tau: 0.9,
            v: [0.9486113936909879, 0.34781435605793576, -0.2581143666733152, 0.062192847470449564],
            z: [
                0.09963466074955621, -0.6802643474451283, 0.4332064947033355, 0.12532185655195893,
                0.46370893622865356, 0.1380730939077042, -0.1926166211848714, 0.03687806020319073,
            ],
        },
    ]
}

fn gap(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn closed_form_column_spinor() {
    for c in cases() {
        let z = analytic_free_z(&z0(), &Multivector::vector(c.p), c.m, c.tau).unwrap();
        assert!(z.max_abs_diff(&DiracSpinorZ::from_re_im(c.z)) < 1e-13, "tau {}", c.tau);
        assert!(gap(dirac_current(&z), c.v) < 1e-13);
    }
}

#[test]
fn closed_form_spinor_and_velocity() {
    let psi0 = z_to_psi(&z0()).unwrap();
    for c in cases() {
        let p = Multivector::vector(c.p);
        let psi = analytic_free_psi(&psi0, &p, c.m, c.tau).unwrap();
        assert!(gap(velocity_bilinear(&psi).vector_components(), c.v) < 1e-13);
        let (v0, a0, h) = free_velocity_data(&psi0, &p);
        let v = analytic_free_velocity(&v0, &a0, &p, c.m, h, c.tau);
        assert!(gap(v.vector_components(), c.v) < 1e-13);
    }
}

#[test]
fn integrated_velocity() {
    let psi0 = z_to_psi(&z0()).unwrap();
    for c in cases() {
        let h = c.tau / (c.tau * 1e4).round();
        let s = BZState::new(0.0, Multivector::ZERO, Multivector::vector(c.p), psi0);
        let t = simulate(&s, &EMField::free(), c.m, h, c.tau).unwrap();
        let last = t.samples.last().unwrap();
        assert!((last.state.tau - c.tau).abs() < 1e-12);
        assert!(gap(last.velocity.vector_components(), c.v) < 1e-10, "tau {}", c.tau);
    }
}
