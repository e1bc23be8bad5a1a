//! Slice deformation of paths on 3D hypergraph-product codes.
//!
//! Qubit block `axis` has the check space of factor `axis` on that axis. Given a
//! codeword `fold` of `δ_axisᵀ` and `alpha` in its support, every state is mapped to the
//! state supported on block `axis` whose slice `alpha` is the sum of the slices listed
//! in `fold`. The syndrome weight never increases under this map.

use crate::barrier::{Energy, PauliPath, SyndromeEnergy};
use crate::css::Kind;
use crate::error::{Error, Result};
use crate::f2::{for_each_span, BitVector};
use crate::hgp::HgpCode;

fn check_code(code: &HgpCode, axis: usize) -> Result<()> {
    if code.dim() != 3 || code.qubit_checks() != 1 {
        return Err(Error::InvalidArgument("slice deformation needs a 3D product".into()));
    }
    if axis >= 3 {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range 0..3")));
    }
    Ok(())
}

/// Image of one state.
pub fn deform_state(code: &HgpCode, state: &BitVector, fold: &BitVector, alpha: usize, axis: usize) -> BitVector {
    let block = &code.css.blocks()[axis];
    let shape = &block.shape;
    let stride: usize = shape[axis + 1..].iter().product();
    let mut out = BitVector::zeros(code.css.n());
    for idx in state.iter_ones() {
        if idx < block.offset || idx >= block.offset + block.len {
            continue;
        }
        let local = idx - block.offset;
        let coord = (local / stride) % shape[axis];
        if fold.get(coord) {
            let moved = local - coord * stride + alpha * stride;
            out.flip(block.offset + moved);
        }
    }
    out
}

/// Deforms every step of `path`, asserting that no step gains energy.
pub fn slice_deform(code: &HgpCode, path: &PauliPath, fold: &BitVector, alpha: usize, axis: usize) -> Result<PauliPath> {
    check_code(code, axis)?;
    path.check()?;
    let delta_t = code.factors[axis].parity().transpose();
    if fold.len() != delta_t.cols() || !delta_t.mat_vec(fold)?.is_zero() {
        return Err(Error::InvalidArgument("fold is not a codeword of the transposed factor".into()));
    }
    if alpha >= fold.len() || !fold.get(alpha) {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} is outside the support of the fold")));
    }
    let energy = SyndromeEnergy::css(&code.css, Kind::Z);
    let mut steps = Vec::with_capacity(path.len());
    for (i, s) in path.steps().iter().enumerate() {
        let d = deform_state(code, s, fold, alpha, axis);
        let (before, after) = (energy.energy(s), energy.energy(&d));
        if after > before {
            return Err(Error::Verification(format!("deformed step {i} has energy {after} > {before}")));
        }
        steps.push(d);
    }
    let out = PauliPath::new(code.css.n(), steps);
    out.check()?;
    Ok(out)
}

pub fn slice_deform_3d(code: &HgpCode, path: &PauliPath, fold: &BitVector, alpha: usize) -> Result<PauliPath> {
    slice_deform(code, path, fold, alpha, 0)
}

/// First codeword of `δ_axisᵀ` (in Gray-code order of its kernel basis) whose deformation
/// of `target` is a nontrivial logical, with `alpha` its lowest support index.
pub fn select_fold(code: &HgpCode, target: &BitVector, axis: usize) -> Result<(BitVector, usize)> {
    check_code(code, axis)?;
    let delta_t = code.factors[axis].parity().transpose();
    let basis = delta_t.kernel_basis();
    let mut found = None;
    let mut failure = None;
    for_each_span(&basis, delta_t.cols(), |_, fold| {
        let alpha = fold.first_one().expect("nonzero span element");
        let end = deform_state(code, target, fold, alpha, axis);
        match code.css.is_nontrivial_logical(Kind::Z, &end) {
            Ok(true) => {
                found = Some((fold.clone(), alpha));
                false
            }
            Ok(false) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    found.ok_or_else(|| Error::Verification(format!("no fold on axis {axis} keeps the endpoint nontrivial")))
}
