//! 2×2 matrices and the gate types of the IR.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Row-major 2×2 complex matrix `[u00, u01, u10, u11]`.
pub type Mat2 = [Complex64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub mod mat {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    pub fn identity() -> Mat2 {
        [ONE, ZERO, ZERO, ONE]
    }

    pub fn h() -> Mat2 {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        [s, s, s, -s]
    }

    pub fn x() -> Mat2 {
        [ZERO, ONE, ONE, ZERO]
    }

    pub fn z() -> Mat2 {
        [ONE, ZERO, ZERO, -ONE]
    }

    pub fn diag(a: Complex64, b: Complex64) -> Mat2 {
        [a, ZERO, ZERO, b]
    }

    /// diag(1, e^{iφ})
    pub fn phase(phi: f64) -> Mat2 {
        diag(ONE, Complex64::from_polar(1.0, phi))
    }

    pub fn t() -> Mat2 {
        phase(std::f64::consts::FRAC_PI_4)
    }

    pub fn tdg() -> Mat2 {
        phase(-std::f64::consts::FRAC_PI_4)
    }

    /// Real rotation `[[cos, -sin], [sin, cos]]` by `theta`; maps |0⟩ to cos|0⟩ + sin|1⟩.
    pub fn ry(theta: f64) -> Mat2 {
        let (s, c) = theta.sin_cos();
        [
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ]
    }

    /// `a · b` (apply `b` first).
    pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
        [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ]
    }

    pub fn dagger(a: &Mat2) -> Mat2 {
        [a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()]
    }

    pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// ‖M†M − I‖_max ≤ tol
    pub fn is_unitary(m: &Mat2, tol: f64) -> bool {
        m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
            && max_abs_diff(&mul(&dagger(m), m), &identity()) <= tol
    }

    pub fn is_identity(m: &Mat2, tol: f64) -> bool {
        max_abs_diff(m, &identity()) <= tol
    }

    /// Haar-random SU(2) element from a normalized Gaussian quaternion.
    pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
        let mut q = [0.0f64; 4];
        loop {
            for v in q.iter_mut() {
                *v = rng.sample(StandardNormal);
            }
            let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 1e-9 {
                q.iter_mut().for_each(|v| *v /= norm);
                break;
            }
        }
        let a = Complex64::new(q[0], q[3]);
        let b = Complex64::new(q[2], q[1]);
        [a, -b.conj(), b, a.conj()]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitGate {
    pub target: usize,
    pub u: Mat2,
}

impl SingleQubitGate {
    pub fn new(target: usize, u: Mat2) -> Self {
        Self { target, u }
    }

    pub fn dagger(&self) -> Self {
        Self::new(self.target, mat::dagger(&self.u))
    }
}

/// Phase flip on the all-ones state of `support` (kept sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiCz {
    pub support: Vec<usize>,
}

impl MultiCz {
    pub fn new(mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        Self { support }
    }

    pub fn mask(&self) -> u128 {
        self.support.iter().fold(0u128, |m, &q| m | (1u128 << q))
    }

    pub fn contains(&self, q: usize) -> bool {
        self.support.binary_search(&q).is_ok()
    }

    /// CZ = H_t · Toffoli(rest → t) · H_t with `t` the last support element.
    /// Returns the Toffoli and the target that carries the Hadamard conjugation.
    pub fn as_toffoli(&self) -> crate::Result<Toffoli> {
        let (&target, controls) = self
            .support
            .split_last()
            .ok_or_else(|| crate::Error::InvalidArgument("empty CZ support".into()))?;
        Toffoli::new(controls.to_vec(), target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Toffoli {
    pub controls: Vec<usize>,
    pub target: usize,
}

impl Toffoli {
    pub fn new(mut controls: Vec<usize>, target: usize) -> crate::Result<Self> {
        controls.sort_unstable();
        controls.dedup();
        if controls.contains(&target) {
            return Err(crate::Error::InvalidArgument(format!(
                "Toffoli target {target} is also a control"
            )));
        }
        Ok(Self { controls, target })
    }

    pub fn cz(&self) -> MultiCz {
        let mut s = self.controls.clone();
        s.push(self.target);
        MultiCz::new(s)
    }

    /// Lowers to `[Layer{H_t, CZ}, Layer{H_t}]`.
    pub fn lower(&self) -> Vec<super::Layer> {
        let h = SingleQubitGate::new(self.target, mat::h());
        vec![
            super::Layer {
                singles: vec![h.clone()],
                czs: vec![self.cz()],
            },
            super::Layer {
                singles: vec![h],
                czs: vec![],
            },
        ]
    }
}

/// Either gate form accepted by [`toffoli_convert`].
#[derive(Clone, Debug, PartialEq)]
pub enum MultiQubitGate {
    Toffoli(Toffoli),
    Cz(MultiCz),
}

/// Lowers a Toffoli to H·CZ·H, or rewrites a CZ as H_t·Toffoli·H_t and lowers that.
/// Either way the result is a CZ-only fragment with the same unitary.
pub fn toffoli_convert(g: &MultiQubitGate) -> crate::Result<Vec<super::Layer>> {
    match g {
        MultiQubitGate::Toffoli(t) => Ok(t.lower()),
        MultiQubitGate::Cz(cz) => {
            let t = cz.as_toffoli()?;
            // H_t (H_t CZ H_t) H_t collapses to the bare CZ.
            Ok(vec![super::Layer {
                singles: vec![],
                czs: vec![t.cz()],
            }])
        }
    }
}
