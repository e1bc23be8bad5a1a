//! Canonical logical operators of hypergraph-product codes.
//!
//! In a qubit block with pattern `P`, an elementary `Z` logical is a Kronecker product
//! with a unit vector outside `Im δ_f` on every check side and a codeword of `δ_f` on
//! every bit side. `X` logicals swap the roles using the transposed factors.

use itertools::Itertools;
use serde::Serialize;

use crate::css::{select_unit_vectors, Kind};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};
use crate::hgp::{pattern_name, HgpCode, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalOperator {
    /// One-based index of the qubit block that carries the operator.
    pub family: usize,
    /// Per-factor index into the unit-vector or codeword list used on that side.
    pub labels: Vec<usize>,
    #[serde(skip)]
    pub vector: BitVector,
}

impl CanonicalOperator {
    pub fn label_string(&self) -> String {
        format!("{}:{}", self.family, self.labels.iter().join(","))
    }
}

/// Factor data used on one side of one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorChoice {
    pub factor: usize,
    pub side: Side,
    /// `"unit"` or `"codeword"`.
    pub role: &'static str,
    #[serde(serialize_with = "serialize_vectors")]
    pub vectors: Vec<BitVector>,
}

fn serialize_vectors<S: serde::Serializer>(v: &[BitVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalLogicalSet {
    pub kind: Kind,
    pub dim: usize,
    pub operators: Vec<CanonicalOperator>,
    /// Per family, the choices made on each factor side.
    pub choices: Vec<Vec<FactorChoice>>,
}

impl CanonicalLogicalSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn find(&self, family: usize, labels: &[usize]) -> Option<&CanonicalOperator> {
        self.operators.iter().find(|o| o.family == family && o.labels == labels)
    }
}

fn side_vectors(delta: &BitMatrix, side: Side, kind: Kind) -> Result<(Vec<BitVector>, &'static str)> {
    // Z: r-side unit outside Im δ, n-side codeword of δ.
    // X: r-side codeword of δᵀ, n-side unit outside Im δᵀ.
    let (units_of, kernel_of) = match kind {
        Kind::Z => (delta.clone(), delta.clone()),
        Kind::X => (delta.transpose(), delta.transpose()),
    };
    let unit_side = match kind {
        Kind::Z => Side::Check,
        Kind::X => Side::Bit,
    };
    if side == unit_side {
        let count = units_of.rows() - units_of.rank();
        Ok((select_unit_vectors(&units_of, count)?, "unit"))
    } else {
        Ok((kernel_of.kernel_basis(), "codeword"))
    }
}

/// Elementary canonical logicals of every qubit block, verified against the code.
pub fn canonical_logicals(code: &HgpCode, kind: Kind) -> Result<CanonicalLogicalSet> {
    let n = code.css.n();
    let mut operators = Vec::new();
    let mut choices = Vec::new();
    for (bi, (pattern, block)) in code.qubit_patterns.iter().zip(code.css.blocks()).enumerate() {
        let mut family = Vec::new();
        for (f, (&side, factor)) in pattern.iter().zip(&code.factors).enumerate() {
            let (vectors, role) = side_vectors(factor.parity(), side, kind)?;
            family.push(FactorChoice {
                factor: f,
                side,
                role,
                vectors,
            });
        }
        for labels in family.iter().map(|c| 0..c.vectors.len()).multi_cartesian_product() {
            let local = labels
                .iter()
                .zip(&family)
                .fold(BitVector::ones(1), |acc, (&i, c)| acc.kron(&c.vectors[i]));
            let mut vector = BitVector::zeros(n);
            vector.write_at(block.offset, &local);
            operators.push(CanonicalOperator {
                family: bi + 1,
                labels,
                vector,
            });
        }
        choices.push(family);
    }
    let set = CanonicalLogicalSet {
        kind,
        dim: code.dim(),
        operators,
        choices,
    };
    verify_set(code, &set)?;
    Ok(set)
}

/// Each operator is a logical outside the stabilizers, and together they are independent.
pub fn verify_set(code: &HgpCode, set: &CanonicalLogicalSet) -> Result<()> {
    let check = code.css.check(set.kind);
    let stab = code.css.stabilizers(set.kind).row_space();
    let mut span = stab.clone();
    for op in &set.operators {
        let name = op.label_string();
        if !check.mat_vec(&op.vector)?.is_zero() {
            return Err(Error::Verification(format!("operator {name} has a nonzero syndrome")));
        }
        if stab.contains(&op.vector) {
            return Err(Error::Verification(format!("operator {name} is a stabilizer")));
        }
        if !span.insert(op.vector.clone()) {
            return Err(Error::Verification(format!("operator {name} is dependent on earlier operators")));
        }
    }
    Ok(())
}

pub fn canonical_z_3d(code: &HgpCode) -> Result<CanonicalLogicalSet> {
    expect_dim(code, 3)?;
    canonical_logicals(code, Kind::Z)
}

pub fn canonical_x_3d(code: &HgpCode) -> Result<CanonicalLogicalSet> {
    expect_dim(code, 3)?;
    canonical_logicals(code, Kind::X)
}

pub fn canonical_z_4d(code: &HgpCode) -> Result<CanonicalLogicalSet> {
    expect_dim(code, 4)?;
    canonical_logicals(code, Kind::Z)
}

pub fn canonical_x_4d(code: &HgpCode) -> Result<CanonicalLogicalSet> {
    expect_dim(code, 4)?;
    canonical_logicals(code, Kind::X)
}

fn expect_dim(code: &HgpCode, dim: usize) -> Result<()> {
    if code.dim() != dim {
        return Err(Error::InvalidArgument(format!("expected a {dim}D product, got {}D", code.dim())));
    }
    Ok(())
}

/// Block index and, per factor axis, the set of coordinates touched by `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSupport {
    pub block: usize,
    pub name: String,
    pub axes: Vec<Vec<usize>>,
}

/// Support of `v` on each qubit block it touches.
pub fn block_supports(code: &HgpCode, v: &BitVector) -> Vec<BlockSupport> {
    let mut out = Vec::new();
    for (bi, block) in code.css.blocks().iter().enumerate() {
        let local = v.slice(block.offset, block.len);
        if local.is_zero() {
            continue;
        }
        let mut axes = vec![Vec::new(); block.shape.len()];
        for idx in local.iter_ones() {
            let mut rest = idx;
            for (ax, &d) in block.shape.iter().enumerate().rev() {
                axes[ax].push(rest % d);
                rest /= d;
            }
        }
        for a in axes.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        out.push(BlockSupport {
            block: bi,
            name: pattern_name(&code.qubit_patterns[bi]),
            axes,
        });
    }
    out
}

/// True if `v` lies in one qubit block and, on each check axis of that block, touches a
/// single coordinate.
pub fn is_single_slice(code: &HgpCode, v: &BitVector) -> bool {
    let supports = block_supports(code, v);
    let [s] = &supports[..] else {
        return false;
    };
    code.qubit_patterns[s.block]
        .iter()
        .zip(&s.axes)
        .all(|(&side, coords)| side == Side::Bit || coords.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::repetition_code;
    use crate::hgp::{hgp3, hgp4};

    fn cyc2() -> crate::ClassicalCode {
        repetition_code(2, true).unwrap()
    }

    #[test]
    fn toric_3d_sets() {
        let c = hgp3(&cyc2(), &cyc2(), &cyc2()).unwrap();
        let z = canonical_z_3d(&c).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.operators.iter().all(|o| o.vector.weight() == 4));
        assert!(z.operators.iter().all(|o| is_single_slice(&c, &o.vector)));
        let x = canonical_x_3d(&c).unwrap();
        assert_eq!(x.len(), 3);
        assert!(x.operators.iter().all(|o| o.vector.weight() == 2));
        let gram = BitMatrix::from_rows(
            3,
            x.operators
                .iter()
                .map(|xo| BitVector::from_bits(z.operators.iter().map(|zo| xo.vector.dot(&zo.vector) as u8)))
                .collect(),
        )
        .unwrap();
        assert_eq!(gram.rank(), 3);
    }

    #[test]
    fn four_d_sets() {
        let c = hgp4(&cyc2(), &cyc2(), &cyc2(), &cyc2()).unwrap();
        let z = canonical_z_4d(&c).unwrap();
        let x = canonical_x_4d(&c).unwrap();
        assert_eq!((z.len(), x.len()), (6, 6));
        assert!(z.operators.iter().chain(&x.operators).all(|o| o.vector.weight() == 4));
        assert!(canonical_z_3d(&c).is_err());
    }
}
