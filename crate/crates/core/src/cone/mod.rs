//! Light-cones, separability, subset selection and restriction pipelines.

mod restrict;
mod select;

pub use restrict::{
    contiguous_restriction, empirical_error, erase_gate, output_function_distance, restriction_pipeline_1d, ErasedGate,
    RestrictionOutcome, RestrictionReport,
};
pub use select::{
    backward_disjoint_select, independent_set_deg2, structure_select_1d, width2_structure_select, Graph,
    Width2Selection,
};

use crate::circuit::{Circuit, Layer, Layout, MultiCz};
use crate::{Error, Result};
use itertools::Itertools;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LightCone {
    pub origin: usize,
    pub direction: Direction,
    pub members: Vec<usize>,
}

impl LightCone {
    fn from_mask(origin: usize, direction: Direction, mask: u128) -> Self {
        Self {
            origin,
            direction,
            members: mask_members(mask),
        }
    }

    pub fn mask(&self) -> u128 {
        to_mask(&self.members)
    }

    pub fn contains(&self, q: usize) -> bool {
        self.members.binary_search(&q).is_ok()
    }
}

pub(crate) fn to_mask(qs: &[usize]) -> u128 {
    qs.iter().fold(0, |m, &q| m | (1u128 << q))
}

pub(crate) fn mask_members(mask: u128) -> Vec<usize> {
    (0..128).filter(|&q| mask >> q & 1 == 1).collect()
}

fn check_qubit(c: &Circuit, q: usize) -> Result<()> {
    if q < c.num_qubits() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("qubit {q} out of range")))
    }
}

/// Grows `mask` by every CZ support in `layer` that touches it.
pub(crate) fn spread(mask: u128, layer: &Layer) -> u128 {
    layer
        .czs
        .iter()
        .map(MultiCz::mask)
        .filter(|g| g & mask != 0)
        .fold(mask, |m, g| m | g)
}

fn assert_interval(layout: &Layout, mask: u128) {
    if matches!(layout, Layout::Line(_)) && mask != 0 {
        let shifted = mask >> mask.trailing_zeros();
        debug_assert_eq!(shifted & (shifted + 1), 0, "line light-cone is not an interval");
    }
}

/// Forward light-cone of `q` after the first `upto` layers.
pub fn forward_lightcone(c: &Circuit, q: usize, upto: usize) -> Result<LightCone> {
    check_qubit(c, q)?;
    let upto = upto.min(c.layers.len());
    let mask = c.layers[..upto].iter().fold(1u128 << q, spread);
    assert_interval(&c.layout, mask);
    Ok(LightCone::from_mask(q, Direction::Forward, mask))
}

/// Backward light-cone of `q` measured after the whole circuit.
pub fn backward_lightcone(c: &Circuit, q: usize) -> Result<LightCone> {
    check_qubit(c, q)?;
    let mask = c.layers.iter().rev().fold(1u128 << q, spread);
    assert_interval(&c.layout, mask);
    Ok(LightCone::from_mask(q, Direction::Backward, mask))
}

pub(crate) fn forward_masks(c: &Circuit, set: &[usize]) -> Vec<u128> {
    set.iter()
        .map(|&q| c.layers.iter().fold(1u128 << q, spread))
        .collect()
}

/// Number of forward cones of `set` (taken before `layer`) that meet `gate`.
pub fn gate_weight(c: &Circuit, layer: usize, gate: &MultiCz, set: &[usize]) -> Result<usize> {
    let not_found = || Error::GateNotFound {
        layer,
        support: gate.support.clone(),
    };
    c.layers
        .get(layer)
        .and_then(|l| l.find_cz(&gate.support))
        .ok_or_else(not_found)?;
    let g = gate.mask();
    let mut count = 0;
    for &q in set {
        check_qubit(c, q)?;
        let cone = c.layers[..layer].iter().fold(1u128 << q, spread);
        count += usize::from(cone & g != 0);
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Separable,
    Witness(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparabilityCertificate {
    pub inputs: Vec<usize>,
    pub cones: Vec<LightCone>,
    pub verdict: Verdict,
}

impl SeparabilityCertificate {
    pub fn is_separable(&self) -> bool {
        self.verdict == Verdict::Separable
    }
}

/// Separable iff the forward cones of `set` are pairwise disjoint; otherwise
/// the first intersecting pair in `set` order is returned.
pub fn check_separable(c: &Circuit, set: &[usize]) -> Result<SeparabilityCertificate> {
    for &q in set {
        check_qubit(c, q)?;
    }
    let masks = forward_masks(c, set);
    let verdict = set
        .iter()
        .zip(&masks)
        .tuple_combinations()
        .find(|((_, a), (_, b))| *a & *b != 0)
        .map_or(Verdict::Separable, |((&i, _), (&j, _))| Verdict::Witness(i, j));
    Ok(SeparabilityCertificate {
        inputs: set.to_vec(),
        cones: set
            .iter()
            .zip(&masks)
            .map(|(&q, &m)| LightCone::from_mask(q, Direction::Forward, m))
            .collect(),
        verdict,
    })
}
