//! Classical tensor-product codes `δ_c = [δ_a ⊗ I; I ⊗ δ_b]` on an `n_a x n_b` grid.

use serde::Serialize;

use crate::barrier::{code_barrier_exact, BarrierResult, CodeRef, ExactConfig, PauliPath};
use crate::classical::ClassicalCode;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};

#[derive(Clone, Debug)]
pub struct TensorProductCode {
    pub code: ClassicalCode,
    pub na: usize,
    pub nb: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Rows indexed by the `a` factor; each row receives a full copy of `L_b`.
    Row,
    /// Columns indexed by the `b` factor; each column receives a full copy of `L_a`.
    Column,
}

impl TensorProductCode {
    pub fn build(a: &ClassicalCode, b: &ClassicalCode) -> Result<Self> {
        let (na, nb) = (a.n(), b.n());
        let top = a.parity().kron(&BitMatrix::identity(nb));
        let bottom = BitMatrix::identity(na).kron(b.parity());
        let code = ClassicalCode::from_parity(BitMatrix::vstack(&[&top, &bottom])?)?;
        Ok(TensorProductCode { code, na, nb })
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nb + j
    }

    pub fn coords(&self, bit: usize) -> (usize, usize) {
        (bit / self.nb, bit % self.nb)
    }
}

pub fn product_logical(a: &ClassicalCode, b: &ClassicalCode, la: &BitVector, lb: &BitVector) -> Result<BitVector> {
    if la.is_zero() || !a.is_codeword(la)? {
        return Err(Error::NotACodeword { factor: "a" });
    }
    if lb.is_zero() || !b.is_codeword(lb)? {
        return Err(Error::NotACodeword { factor: "b" });
    }
    Ok(la.kron(lb))
}

/// Path to `L_a ⊗ L_b` built from one path per factor.
///
/// With `Row` orientation, every flip `i` of `path_a` is replaced by the whole flip
/// sequence of `path_b` applied to grid row `i`; `Column` swaps the roles.
pub fn strip_path(path_a: &PauliPath, path_b: &PauliPath, orientation: Orientation) -> Result<PauliPath> {
    path_a.check()?;
    path_b.check()?;
    let (na, nb) = (path_a.n(), path_b.n());
    let (outer, inner) = match orientation {
        Orientation::Row => (path_a.flips(), path_b.flips()),
        Orientation::Column => (path_b.flips(), path_a.flips()),
    };
    let mut flips = Vec::with_capacity(outer.len() * inner.len());
    for &o in &outer {
        for &i in &inner {
            flips.push(match orientation {
                Orientation::Row => o * nb + i,
                Orientation::Column => i * nb + o,
            });
        }
    }
    PauliPath::from_flips(na * nb, &flips)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundLedger {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_a: usize,
    pub d_b: usize,
    pub e_a: usize,
    pub e_b: usize,
    pub lower_energy: usize,
    pub lower_distance: usize,
    pub conjecture: usize,
    pub upper_strip: usize,
    pub measured: Option<BarrierResult>,
    pub warnings: Vec<String>,
}

/// Analytic bounds from the factors' distances and exact barriers, plus the exact barrier
/// of the product when requested and small enough.
///
/// Fails with a verification error when a measured value breaks a proven inequality.
pub fn bound_ledger(a: &ClassicalCode, b: &ClassicalCode, with_measurement: bool, config: &ExactConfig) -> Result<BoundLedger> {
    let (d_a, d_b) = (a.distance()?, b.distance()?);
    let e_a = code_barrier_exact(CodeRef::Classical(a), config)?.value;
    let e_b = code_barrier_exact(CodeRef::Classical(b), config)?.value;
    let product = TensorProductCode::build(a, b)?;
    let mut ledger = BoundLedger {
        n: product.code.n(),
        k: product.code.k(),
        d: product.code.distance().ok(),
        d_a,
        d_b,
        e_a,
        e_b,
        lower_energy: e_a.min(e_b),
        lower_distance: d_a.min(d_b),
        conjecture: (d_a * e_b).min(d_b * e_a),
        upper_strip: (d_b * e_a + e_b).min(d_a * e_b + e_a),
        measured: None,
        warnings: Vec::new(),
    };
    if !(ledger.lower_distance <= ledger.conjecture && ledger.conjecture <= ledger.upper_strip) {
        return Err(Error::Verification(format!(
            "bound ordering violated: {} <= {} <= {}",
            ledger.lower_distance, ledger.conjecture, ledger.upper_strip
        )));
    }
    if !with_measurement {
        return Ok(ledger);
    }
    match code_barrier_exact(CodeRef::Classical(&product.code), config) {
        Ok(m) => {
            let v = m.value;
            if v < ledger.lower_energy {
                return Err(Error::Verification(format!("measured barrier {v} below min(E_a, E_b) = {}", ledger.lower_energy)));
            }
            if v > ledger.upper_strip {
                return Err(Error::Verification(format!("measured barrier {v} above strip bound {}", ledger.upper_strip)));
            }
            if v < ledger.lower_distance {
                if d_a.min(d_b) <= 2 {
                    ledger.warnings.push(format!(
                        "measured barrier {v} below min(d_a, d_b) = {} for factors with d <= 2",
                        ledger.lower_distance
                    ));
                } else {
                    return Err(Error::Verification(format!("measured barrier {v} below min(d_a, d_b) = {}", ledger.lower_distance)));
                }
            }
            ledger.measured = Some(m);
        }
        Err(Error::TooLarge { .. }) => {
            ledger.warnings.push(format!("product n = {} exceeds the exact-search cap; measurement skipped", ledger.n));
        }
        Err(e) => return Err(e),
    }
    Ok(ledger)
}
