mod common;

use num_complex::Complex64;
use qac_core::circuit::{Circuit, Init, Layout};
use qac_core::sim::{self, bits_of, partial_trace, run, run_sparse, SparseState};
use qac_core::synth::*;
use std::f64::consts::FRAC_1_SQRT_2;

/// The single basis index carrying all the weight, if there is one.
fn basis_output(s: &SparseState) -> Option<u128> {
    s.iter().find(|(_, a)| (a.norm_sqr() - 1.0).abs() < 1e-10).map(|(i, _)| i)
}

/// Checks U_⊕ on every basis input; `clean` also demands untouched ancilla.
fn assert_parity_table(c: &Circuit, clean: bool) {
    let n = c.inputs.len() - 1;
    let target = *c.inputs.last().unwrap();
    for m in 0..1u64 << (n + 1) {
        let bits = bits_of(m, n + 1);
        let parity = bits[..n].iter().fold(false, |acc, &v| acc ^ v);
        let out = basis_output(&run_sparse(c, &bits).unwrap())
            .unwrap_or_else(|| panic!("input {m:b}: output is not a basis state"));
        for (i, &q) in c.inputs[..n].iter().enumerate() {
            assert_eq!((out >> q) & 1 == 1, bits[i], "input {m:b}: x_{i} changed");
        }
        assert_eq!((out >> target) & 1 == 1, bits[n] ^ parity, "input {m:b}: wrong parity");
        if clean {
            for a in &c.ancilla {
                assert_eq!((out >> a.q) & 1 == 1, a.init == Init::One, "input {m:b}: ancilla {} dirty", a.q);
            }
        }
    }
}

#[test]
fn fanout_copies_b() {
    for k in 1..=4 {
        let f = restricted_fanout(k).unwrap();
        assert!(f.validate().is_valid());
        assert_eq!(f.depth(), k);
        for b in [false, true] {
            let s = run(&f, &[b]).unwrap();
            let want = if b { (1usize << (1 << k)) - 1 } else { 0 };
            assert!((s.amps()[want].norm_sqr() - 1.0).abs() < 1e-12, "k={k} b={b}");
        }
    }
}

#[test]
fn cat_states_exact() {
    for k in 1..=4 {
        let n = 1 << k;
        let c = cat_1d(n).unwrap();
        assert_eq!(c.depth(), k);
        assert!(c.validate().is_valid() && c.ancilla.is_empty());
        let s = run(&c, &[]).unwrap();
        let a = s.amps();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-10 && a[0].im.abs() < 1e-10);
        assert!((a[(1 << n) - 1].re - FRAC_1_SQRT_2).abs() < 1e-10);
        for q in 0..n {
            let rho = partial_trace(&s, &[q]).unwrap();
            assert!((rho.matrix[(0, 0)].re - 0.5).abs() < 1e-10);
            assert!(rho.matrix[(0, 1)].norm() < 1e-10);
        }
    }
    assert!(cat_1d(6).is_err());
}

#[test]
fn cat_general_sizes() {
    for n in 1..=13usize {
        let c = cat_1d_general(n).unwrap();
        let expected_depth = if n == 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
        assert_eq!(c.depth(), expected_depth, "n={n}");
        let s = run(&c, &[]).unwrap();
        assert!((s.amps()[0].norm_sqr() - 0.5).abs() < 1e-10);
        assert!((s.amps()[(1 << n) - 1].norm_sqr() - 0.5).abs() < 1e-10);
    }
}

#[test]
fn parity_line_examples() {
    let c = parity_line(3).unwrap();
    // |101, 0⟩ → |101, 0⟩ and |111, 1⟩ → |111, 0⟩
    for (x, b, want) in [([true, false, true], false, false), ([true, true, true], true, false)] {
        let mut bits = x.to_vec();
        bits.push(b);
        let s = run(&c, &bits).unwrap();
        let tq = *c.inputs.last().unwrap();
        assert!((s.prob_one(tq) - f64::from(u8::from(want))).abs() < 1e-12);
    }
}

#[test]
fn parity_line_tables() {
    for n in 1..=8 {
        let c = parity_line(n).unwrap();
        assert!(c.validate().is_valid());
        assert!(c.depth() <= n, "n={n} depth={}", c.depth());
        assert_eq!(c.layout, Layout::Line(n + 1));
        assert_parity_table(&c, true);
    }
}

#[test]
fn parity_width2_tables() {
    for n in 2..=8 {
        let w = parity_width2(n).unwrap();
        assert!(w.circuit.validate().is_valid());
        let d = w.circuit.depth() as f64;
        assert!(d <= w.depth_constant * (n as f64).log2() + 1e-9, "n={n} depth={d}");
        assert_parity_table(&w.circuit, true);
    }
}

#[test]
fn parity_recursive_tables() {
    let base = parity_width2(2).unwrap().circuit;
    let d = base.depth();
    for (n, k) in [(2, 1), (4, 2), (8, 3)] {
        let c = parity_recursive_2d(n, &base).unwrap();
        assert!(c.validate().is_valid());
        assert_eq!(c.depth(), k * d + (k - 1), "n={n}");
        assert_parity_table(&c, false);
    }
    let line_base = parity_line(3).unwrap();
    let c = parity_recursive_2d(9, &line_base).unwrap();
    assert_eq!(c.depth(), 2 * line_base.depth() + 1);
    assert_parity_table(&c, false);
    assert!(parity_recursive_2d(6, &base).is_err());
}

#[test]
fn dense_and_sparse_agree_on_width2() {
    let c = parity_width2(3).unwrap().circuit;
    for m in [0u64, 5, 11] {
        let x = bits_of(m, 4);
        let d = run(&c, &x).unwrap();
        let s = run_sparse(&c, &x).unwrap().to_dense().unwrap();
        assert!((d.inner(&s).unwrap().norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn calibration_example() {
    let cal = amplitude_calibration(0.9, 0.8.into(), 0.8.into()).unwrap();
    assert_eq!(cal.k, 1);
    assert!(!cal.raised());
    assert!((cal.alpha.re - 0.625).abs() < 1e-12 && (cal.beta.re - 0.625).abs() < 1e-12);
    assert!(amplitude_calibration(0.5, 0.8.into(), 0.8.into()).is_err());
    assert!(amplitude_calibration(0.9, 0.1.into(), 0.8.into()).is_err());
}

#[test]
fn c2_flag_zero_branch_is_balanced() {
    let (n_cat, n_anc, amp) = (2, 1, 0.7);
    let c1 = toy_approx_cat(n_cat, n_anc, amp).unwrap();
    let cal = amplitude_calibration(0.9, amp.into(), amp.into()).unwrap();
    let c2 = build_c2(&c1, n_cat, &cal).unwrap();
    let lay = C2Layout::new(n_cat, n_anc);
    let s = run(&c2, &[]).unwrap();
    assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    let zeros = 0usize;
    let ones = ((1 << n_cat) - 1) | (1 << lay.q0) | 1 << lay.q1;
    let sin = cal.theta.sin();
    assert!((s.amps()[zeros] - Complex64::from(sin)).norm() < 1e-9);
    assert!((s.amps()[ones] - Complex64::from(sin)).norm() < 1e-9);
    let flag0: f64 = s
        .amps()
        .iter()
        .enumerate()
        .filter(|(i, _)| i >> lay.flag & 1 == 0)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    assert!((flag0 - 2.0 * sin * sin).abs() < 1e-10);
}

#[test]
fn counterexample_matches_closed_form() {
    let ce = appendix_d_counterexample(CounterexampleSpec { k: 2, delta: 0.5 }).unwrap();
    assert!(ce.d.validate().is_valid());
    assert!((ce.predicted_error - 3f64.sqrt()).abs() < 1e-12);
    for m in 0..16u64 {
        let e = reduced_state_error(&ce, &bits_of(m, 4)).unwrap();
        assert!((e - 3f64.sqrt()).abs() < 1e-8, "x={m:b}: {e}");
    }
    // per-pair state √δ|z⟩|11⟩ + √(1−δ)|z⟩|0⟩|z⟩ checked on one pair
    let one = appendix_d_counterexample(CounterexampleSpec { k: 1, delta: 0.3 }).unwrap();
    let s = sim::run(&one.d_without_cz, &[true, false]).unwrap();
    // a=q0, b=q2, c=q3
    let amp = |i: usize| s.amps()[i].norm_sqr();
    assert!((amp(0b1101) - 0.3).abs() < 1e-12);
    assert!((amp(0b1001) - 0.7).abs() < 1e-12);
}

#[test]
fn toffoli_lowering_matches_matrix() {
    use qac_core::circuit::{toffoli_convert, MultiQubitGate, Toffoli};
    let t = Toffoli::new(vec![0, 1], 2).unwrap();
    let mut c = Circuit::new(Layout::AllToAll(3));
    c.layers = toffoli_convert(&MultiQubitGate::Toffoli(t)).unwrap();
    let u = common::circuit_matrix(&c);
    let mut want = common::identity(8);
    want.swap(3, 7);
    assert!(common::max_diff(&u, &want) < 1e-12);
}
