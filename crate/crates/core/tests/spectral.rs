mod common;

use common::{binomial, fourier_coefficient};
use num_complex::Complex64;
use qac_core::circuit::{Circuit, Layout};
use qac_core::sim::{self, CMatrix};
use qac_core::spectral::{
    balanced_assignment_prob, bound_experiment, contiguous_parity_bound, exact_cat_line, gap_suite, majority,
    majority_suite, majority_weight1_closed, missing_cone_family, nekomata_distance, nekomata_suite, parity,
    parity_bound, parity_suite, spectrum, spectrum_of_values, tv_gap, unitary_phase_gap, weight, BoundKind, Target,
};
use qac_core::synth::parity_line;
use qac_core::{CircuitBuilder, Error};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn spectrum_examples() {
    // PARITY_1 is the dictator x_1, so the degree-1 statement starts at n = 2
    for n in 2..=10 {
        let s = spectrum(&parity, n).unwrap();
        let full = (1u64 << n) - 1;
        assert!((s.coefficient(full) - 1.0).abs() < 1e-12);
        assert!(weight(&s, |k| k <= 1) < 1e-12);
    }
    let one = spectrum(&|_| false, 3).unwrap();
    assert!((one.coefficient(0) - 1.0).abs() < 1e-12);
    let maj3 = spectrum(&majority(3), 3).unwrap();
    assert!((weight(&maj3, |k| k == 1) - 0.75).abs() < 1e-12);
    assert!(spectrum(&parity, 17).is_err());
}

#[test]
fn fwht_matches_inner_product() {
    let mut rng = StdRng::seed_from_u64(2);
    for n in 1..=4 {
        for _ in 0..10 {
            let table: Vec<bool> = (0..1 << n).map(|_| rng.random_bool(0.5)).collect();
            let f = |x: u64| table[x as usize];
            let s = spectrum(&f, n).unwrap();
            for sub in 0..1u64 << n {
                assert!((s.coefficient(sub) - fourier_coefficient(&f, n, sub)).abs() < 1e-12);
            }
            assert!((weight(&s, |_| true) - 1.0).abs() < 1e-9);
        }
    }
    let vals: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mean_sq = vals.iter().map(|v| v * v).sum::<f64>() / 16.0;
    assert!((spectrum_of_values(vals).unwrap().total_weight() - mean_sq).abs() < 1e-12);
}

#[test]
fn majority_closed_form() {
    assert!((majority_weight1_closed(3).unwrap() - 0.75).abs() < 1e-15);
    assert!((majority_weight1_closed(5).unwrap() - 720.0 / 1024.0).abs() < 1e-15);
    let mut prev = f64::INFINITY;
    for n in (3..=13).step_by(2) {
        let closed = majority_weight1_closed(n).unwrap();
        let oracle = 4.0 * n as f64 / 4f64.powi(n as i32) * binomial(n as u64 - 1, (n as u64 - 1) / 2).powi(2);
        assert!((closed - oracle).abs() < 1e-12);
        let enumerated = weight(&spectrum(&majority(n), n).unwrap(), |k| k == 1);
        assert!((closed - enumerated).abs() < 1e-10);
        assert!(weight(&spectrum(&majority(n), n).unwrap(), |k| k <= 1) <= 0.75 + 1e-12);
        assert!(closed < prev);
        prev = closed;
    }
    assert!(majority_weight1_closed(4).is_err());
}

#[test]
fn balanced_probability() {
    assert_eq!(balanced_assignment_prob(2).unwrap(), 0.5);
    assert_eq!(balanced_assignment_prob(4).unwrap(), 0.375);
    for m in (2..=20).step_by(2) {
        let p = balanced_assignment_prob(m).unwrap();
        assert!((p - binomial(m as u64, m as u64 / 2) / 2f64.powi(m as i32)).abs() < 1e-14);
        assert!(p >= 0.7 / (m as f64).sqrt());
    }
    assert!(balanced_assignment_prob(3).is_err());
}

#[test]
fn analytic_bounds() {
    let expected = 0.5 + 4.0 * 2f64.sqrt() * 2f64.powf(-64.0 / 6.0);
    assert!((parity_bound(64, 1) - expected).abs() < 1e-15);
    for n in 1..50 {
        for d in 1..5 {
            assert!(parity_bound(n, d) >= 0.5);
            assert!(contiguous_parity_bound(n, d + 1) > contiguous_parity_bound(n, d));
        }
    }
}

#[test]
fn bound_experiment_examples() {
    let c = parity_line(4).unwrap();
    let out = *c.inputs.last().unwrap();
    let r = bound_experiment(&c, out, Target::Parity, BoundKind::Parity, 0).unwrap();
    assert!((r.empirical - 1.0).abs() < 1e-10);
    assert!(r.analytic > 1.0 && r.satisfied);

    for m in missing_cone_family(5, 2, 3, 17).unwrap() {
        let r = bound_experiment(&m.circuit, m.output, Target::Parity, BoundKind::Parity, m.seed).unwrap();
        assert!((r.empirical - 0.5).abs() < 1e-12);
    }
    assert!(bound_experiment(&c, out, Target::Parity, BoundKind::TvGap, 0).is_err());
}

#[test]
fn shipped_suites_satisfied() {
    for r in parity_suite(1).unwrap() {
        assert!(r.satisfied, "{r:?}");
    }
    for r in majority_suite(1).unwrap() {
        assert!(r.satisfied, "{r:?}");
    }
    let gaps = gap_suite(1).unwrap();
    for r in &gaps {
        assert!(r.satisfied, "{r:?}");
        if r.name.ends_with("identical") {
            assert!(r.empirical.abs() < 1e-12);
        }
    }
}

#[test]
fn tv_examples() {
    let id = Circuit {
        inputs: vec![0],
        ..Circuit::new(Layout::Line(1))
    };
    let mut b = CircuitBuilder::new(Layout::Line(1)).inputs(vec![0]);
    b.x(0);
    let flip = b.finish();
    assert!((tv_gap(&id, &flip, &[0], 0.1).unwrap().empirical - 1.0).abs() < 1e-12);
    assert_eq!(tv_gap(&id, &id, &[0], 0.1).unwrap().empirical, 0.0);
    assert!(tv_gap(&id, &flip, &[3], 0.1).is_err());
}

#[test]
fn phase_gap_examples() {
    let mut rng = StdRng::seed_from_u64(4);
    let c = qac_core::families::random_all_to_all(&mut rng, 3, 2);
    let u = sim::circuit_unitary(&c).unwrap();
    let mut v = u.clone();
    for j in 0..8 {
        let ph = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        for i in 0..8 {
            v[(i, j)] = u[(i, j)] * ph;
        }
    }
    assert!(unitary_phase_gap(&u, &v).unwrap().gap < 1e-12);

    let id = CMatrix::identity(2);
    let x = CMatrix::from_rows(vec![vec![0.0.into(), 1.0.into()], vec![1.0.into(), 0.0.into()]]).unwrap();
    let g = unitary_phase_gap(&id, &x).unwrap();
    assert!((g.gap - 2.0).abs() < 1e-12);
    assert_eq!(g.phases, vec![Complex64::new(1.0, 0.0); 2]);

    let bad = CMatrix::from_rows(vec![vec![2.0.into(), 0.0.into()], vec![0.0.into(), 1.0.into()]]).unwrap();
    assert!(matches!(unitary_phase_gap(&bad, &id), Err(Error::NotUnitary)));
}

#[test]
fn exact_cat_line_state() {
    let n = 3;
    let c = exact_cat_line(n).unwrap();
    for x in 0..1u64 << n {
        let bits: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
        let st = sim::run(&c, &bits).unwrap();
        // physical index: ancilla at bit 0, x_i at bit i+1
        let lo = (x << 1) as usize;
        let hi = (((!x) & 0b111) << 1 | 1) as usize;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((st.amps()[lo] - Complex64::new(h, 0.0)).norm() < 1e-12);
        assert!((st.amps()[hi] - Complex64::new(h, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn nekomata_examples() {
    for n in 1..=4 {
        let r = nekomata_distance(&exact_cat_line(n).unwrap(), 0.05).unwrap();
        assert!((r.product_quantity - 0.25).abs() < 1e-10);
    }
    let id = Circuit {
        inputs: (0..4).collect(),
        ..Circuit::new(Layout::Line(4))
    };
    let r = nekomata_distance(&id, 0.05).unwrap();
    assert_eq!(r.product_quantity, 0.0);
    for r in nekomata_suite(3).unwrap() {
        assert!(r.report.satisfied, "{r:?}");
        assert!(r.restricted_t_product <= 4f64.powi(-(r.t.len() as i32)) + 1e-12);
    }
}
