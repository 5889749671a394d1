mod common;

use common::{circuit_matrix, identity, max_diff};
use itertools::Itertools;
use num_complex::Complex64;
use proptest::prelude::*;
use qac_core::circuit::{toffoli_convert, Circuit, Layer, Layout, MultiCz, MultiQubitGate, Toffoli};
use qac_core::cone::{backward_lightcone, forward_lightcone, independent_set_deg2, Graph};
use qac_core::families::{random_all_to_all, random_circuit, random_line};
use qac_core::sim::{
    self, bits_of, eigvalsh, partial_trace, pure_trace_distance, trace_norm, CMatrix, Register, SparseState,
    StateVector,
};
use qac_core::spectral::{spectrum, weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_state(rng: &mut StdRng, n: usize) -> StateVector {
    let mut v: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    StateVector::from_amps(v).unwrap()
}

fn layout_for(kind: u8, n: usize) -> Layout {
    match kind % 3 {
        0 => Layout::Line(n),
        1 => Layout::AllToAll(n),
        _ => Layout::Lattice { rows: 2, cols: n.div_ceil(2) },
    }
}

fn bits(x: u64, n: usize) -> Vec<bool> {
    bits_of(x, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dense_and_sparse_agree(seed in any::<u64>(), kind in 0u8..3, n in 2usize..7, depth in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, layout_for(kind, n), depth, 3);
        let x = bits(rng.random(), c.inputs.len());
        let d = sim::run(&c, &x).unwrap();
        let s = sim::run_sparse(&c, &x).unwrap().to_dense().unwrap();
        prop_assert!((d.inner(&s).unwrap().norm() - 1.0).abs() < 1e-10);
        prop_assert!((d.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn norm_is_preserved(seed in any::<u64>(), n in 1usize..8, depth in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_all_to_all(&mut rng, n, depth);
        let mut st = random_state(&mut rng, n);
        st.apply_layers(&c.layers);
        prop_assert!((st.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cz_only_touches_all_ones(seed in any::<u64>(), n in 1usize..8, raw in 1u64..255) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mask = (raw & ((1 << n) - 1)).max(1) as u128;
        let before = random_state(&mut rng, n);
        let mut after = before.clone();
        after.apply_cz(mask);
        let mut sparse = SparseState::from_dense(&before);
        sparse.apply_cz(mask);
        for (i, (a, b)) in before.amps().iter().zip(after.amps()).enumerate() {
            let expect = if i as u128 & mask == mask { -a } else { *a };
            prop_assert!((b - expect).norm() < 1e-15);
            prop_assert!((sparse.amplitude(i as u128) - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn inverse_composes_to_identity(seed in any::<u64>(), n in 1usize..5, depth in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_all_to_all(&mut rng, n, depth);
        let id = c.compose(&c.inverse()).unwrap();
        prop_assert!(max_diff(&circuit_matrix(&id), &identity(1 << n)) < 1e-10);
    }

    #[test]
    fn toffoli_lowering_is_exact(n in 2usize..5, target in 0usize..5, raw in 1u64..16) {
        let target = target % n;
        let controls: Vec<usize> = (0..n).filter(|&q| q != target && raw >> q & 1 == 1).collect();
        prop_assume!(!controls.is_empty());
        let t = Toffoli::new(controls.clone(), target).unwrap();
        let mut c = Circuit::new(Layout::AllToAll(n));
        c.inputs = (0..n).collect();
        c.layers = toffoli_convert(&MultiQubitGate::Toffoli(t)).unwrap();
        let u = circuit_matrix(&c);
        for col in 0..1usize << n {
            let fire = controls.iter().all(|&q| col >> q & 1 == 1);
            let row = if fire { col ^ 1 << target } else { col };
            for (r, line) in u.iter().enumerate() {
                let want = if r == row { 1.0 } else { 0.0 };
                prop_assert!((line[col] - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn singles_layers_do_not_change_depth(seed in any::<u64>(), n in 2usize..8, depth in 0usize..4, at in 0usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut c = random_line(&mut rng, n, (0..n).collect(), depth, 3);
        let before = c.depth();
        let at = at.min(c.layers.len());
        c.layers.insert(at, Layer { singles: vec![qac_core::SingleQubitGate::new(0, qac_core::circuit::mat::h())], czs: vec![] });
        prop_assert_eq!(c.depth(), before);
        prop_assert_eq!(c.normalized().depth(), before);
    }

    #[test]
    fn cones_are_monotone_and_dual(seed in any::<u64>(), kind in 0u8..3, n in 2usize..9, depth in 0usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, layout_for(kind, n), depth, 3);
        let nq = c.num_qubits();
        for q in 0..nq {
            for t in 0..c.layers.len() {
                let a = forward_lightcone(&c, q, t).unwrap().mask();
                let b = forward_lightcone(&c, q, t + 1).unwrap().mask();
                prop_assert_eq!(a & !b, 0);
            }
            let f = forward_lightcone(&c, q, c.layers.len()).unwrap();
            prop_assert!(f.contains(q));
            for j in 0..nq {
                prop_assert_eq!(f.contains(j), backward_lightcone(&c, j).unwrap().contains(q));
            }
        }
    }

    #[test]
    fn independent_sets_on_paths(seed in any::<u64>(), n in 1usize..13) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let edges: Vec<(usize, usize)> = order.iter().copied().tuple_windows().filter(|_| rng.random_bool(0.6)).collect();
        let s = independent_set_deg2(&Graph { vertices: (0..n).collect(), edges: edges.clone() }).unwrap();
        prop_assert!(s.len() >= n.div_ceil(2));
        for (a, b) in edges {
            prop_assert!(!(s.contains(&a) && s.contains(&b)));
        }
    }

    #[test]
    fn parseval_holds(seed in any::<u64>(), n in 0usize..11) {
        let mut rng = StdRng::seed_from_u64(seed);
        let table: Vec<bool> = (0..1usize << n).map(|_| rng.random()).collect();
        let s = spectrum(&|x| table[x as usize], n).unwrap();
        prop_assert!((weight(&s, |_| true) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pure_distance_matches_eigensolver(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_state(&mut rng, n);
        let b = random_state(&mut rng, n);
        let diff = CMatrix::outer(a.amps()).sub(&CMatrix::outer(b.amps())).unwrap();
        let via_eig = trace_norm(&diff).unwrap();
        let closed = pure_trace_distance(&a, &b).unwrap();
        prop_assert!((via_eig - closed).abs() < 1e-8);
        // Fuchs–van de Graaf: 1 − √F ≤ ½‖ρ−σ‖₁ ≤ √(1−F)
        let f = sim::fidelity(&a, &b).unwrap();
        prop_assert!(1.0 - f.sqrt() <= via_eig / 2.0 + 1e-9);
        prop_assert!(via_eig / 2.0 <= (1.0 - f).sqrt() + 1e-9);
    }

    #[test]
    fn trace_distance_triangle(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let keep = [0, 1];
        let rs: Vec<CMatrix> = (0..3).map(|_| partial_trace(&random_state(&mut rng, n), &keep).unwrap().matrix).collect();
        let d = |i: usize, j: usize| trace_norm(&rs[i].sub(&rs[j]).unwrap()).unwrap();
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
        prop_assert!(d(0, 1) <= 2.0 + 1e-9);
    }

    // Σ over x_X of Tr_{S_X^c} ρ^x stays below the identity for X-separable sets.
    #[test]
    fn separable_sum_is_below_identity(seed in any::<u64>(), n in 3usize..8, depth in 1usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_line(&mut rng, n, (0..n).collect(), depth, 2);
        let mut set = Vec::new();
        let mut used = 0u128;
        for q in 0..n {
            let m = forward_lightcone(&c, q, c.layers.len()).unwrap().mask();
            if m & used == 0 && set.len() < 3 {
                used |= m;
                set.push(q);
            }
        }
        let region: Vec<usize> = (0..n).filter(|&q| used >> q & 1 == 1).collect();
        prop_assume!(region.len() <= 8);
        let rest: u64 = rng.random();
        let mut sum = CMatrix::zeros(1 << region.len());
        for xs in 0..1u64 << set.len() {
            let mut x = bits(rest, n);
            for (j, &q) in set.iter().enumerate() {
                x[q] = xs >> j & 1 == 1;
            }
            let st = sim::run(&c, &x).unwrap();
            sum = sum.add(&partial_trace(&st, &region).unwrap().matrix).unwrap();
        }
        let top = eigvalsh(&sum).unwrap().into_iter().fold(f64::MIN, f64::max);
        prop_assert!(top <= 1.0 + 1e-9);
    }

    // Erasing a CZ that covers k separable cones costs at most 4·2^{-k/2} for pure states.
    #[test]
    fn erasure_pure_state_bound(seed in any::<u64>(), k in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = 2 * k;
        let mut c = Circuit::new(Layout::Line(n));
        c.inputs = (0..n).step_by(2).collect();
        let mut singles = Vec::new();
        for q in 0..n {
            singles.push(qac_core::SingleQubitGate::new(q, qac_core::circuit::mat::random_su2(&mut rng)));
        }
        let pairs: Vec<MultiCz> = (0..k).map(|i| MultiCz::new(vec![2 * i, 2 * i + 1])).collect();
        c.layers.push(Layer { singles, czs: pairs });
        let mut with = c.clone();
        with.layers.push(Layer { singles: vec![], czs: vec![MultiCz::new((0..n).collect())] });
        let mut total = 0.0;
        for x in 0..1u64 << k {
            let a = sim::run(&c, &bits(x, k)).unwrap();
            let b = sim::run(&with, &bits(x, k)).unwrap();
            total += pure_trace_distance(&a, &b).unwrap();
        }
        let mean = total / (1u64 << k) as f64;
        prop_assert!(mean <= 4.0 * 2f64.powf(-(k as f64) / 2.0) + 1e-9);
    }
}
