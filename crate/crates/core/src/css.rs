use serde::{Deserialize, Serialize};

use crate::classical::{check_enum_cap, ClassicalCode, DEFAULT_ENUM_CAP};
use crate::error::{mismatch, Error, Result};
use crate::f2::{for_each_span, BitMatrix, BitVector, XorBasis};

/// Error type. `Z` errors are detected by `H_X`, `X` errors by `H_Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Z,
    X,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Z => "z",
            Kind::X => "x",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Kind::Z),
            "x" => Ok(Kind::X),
            other => Err(Error::InvalidArgument(format!("unknown kind {other:?}, expected z or x"))),
        }
    }
}

/// Contiguous range of qubits that forms one tensor block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitBlock {
    pub name: String,
    pub offset: usize,
    pub len: usize,
    /// Per-factor dimensions; their product is `len`.
    pub shape: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sparsity {
    /// Maximum check weight over `H_X` and `H_Z`.
    pub w_c: usize,
    /// Maximum number of checks acting on a single qubit.
    pub w_q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
    meta_x: Option<BitMatrix>,
    meta_z: Option<BitMatrix>,
    blocks: Vec<QubitBlock>,
}

impl CssCode {
    pub fn new(
        hx: BitMatrix,
        hz: BitMatrix,
        meta_x: Option<BitMatrix>,
        meta_z: Option<BitMatrix>,
        blocks: Vec<QubitBlock>,
    ) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(mismatch("css", format!("H_X with {} columns", hx.cols()), format!("H_Z with {} columns", hz.cols())));
        }
        let n = hx.cols();
        if !hx.mul(&hz.transpose())?.is_zero() {
            return Err(Error::Verification("H_X H_Z^T != 0".into()));
        }
        if let Some(m) = &meta_x {
            if !m.mul(&hx)?.is_zero() {
                return Err(Error::Verification("meta_X H_X != 0".into()));
            }
        }
        if let Some(m) = &meta_z {
            if !m.mul(&hz)?.is_zero() {
                return Err(Error::Verification("meta_Z H_Z != 0".into()));
            }
        }
        let blocks = if blocks.is_empty() {
            vec![QubitBlock {
                name: "q".into(),
                offset: 0,
                len: n,
                shape: vec![n],
            }]
        } else {
            blocks
        };
        let mut offset = 0;
        for b in &blocks {
            if b.offset != offset || b.shape.iter().product::<usize>() != b.len {
                return Err(Error::Verification(format!("inconsistent qubit block {:?}", b.name)));
            }
            offset += b.len;
        }
        if offset != n {
            return Err(Error::Verification(format!("qubit blocks cover {offset} of {n} qubits")));
        }
        Ok(CssCode {
            hx,
            hz,
            meta_x,
            meta_z,
            blocks,
        })
    }

    /// Classical code viewed as a CSS code with `H_X = H` and no `Z` checks.
    pub fn from_classical(code: &ClassicalCode) -> CssCode {
        let n = code.n();
        CssCode::new(code.parity().clone(), BitMatrix::zeros(0, n), None, None, Vec::new())
            .expect("empty H_Z commutes with everything")
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn meta_x(&self) -> Option<&BitMatrix> {
        self.meta_x.as_ref()
    }

    pub fn meta_z(&self) -> Option<&BitMatrix> {
        self.meta_z.as_ref()
    }

    pub fn blocks(&self) -> &[QubitBlock] {
        &self.blocks
    }

    /// Matrix that detects errors of the given kind.
    pub fn check(&self, kind: Kind) -> &BitMatrix {
        match kind {
            Kind::Z => &self.hx,
            Kind::X => &self.hz,
        }
    }

    /// Stabilizers of the same type as the errors of the given kind.
    pub fn stabilizers(&self, kind: Kind) -> &BitMatrix {
        match kind {
            Kind::Z => &self.hz,
            Kind::X => &self.hx,
        }
    }

    pub fn k(&self) -> usize {
        self.n() - self.hx.rank() - self.hz.rank()
    }

    pub fn syndrome(&self, kind: Kind, e: &BitVector) -> Result<BitVector> {
        self.check(kind).mat_vec(e)
    }

    pub fn energy(&self, kind: Kind, e: &BitVector) -> Result<usize> {
        Ok(self.syndrome(kind, e)?.weight())
    }

    pub fn sparsity(&self) -> Sparsity {
        let w_c = self.hx.max_row_weight().max(self.hz.max_row_weight());
        let wx = self.hx.column_weights();
        let wz = self.hz.column_weights();
        let w_q = wx.iter().zip(&wz).map(|(a, b)| a + b).max().unwrap_or(0);
        Sparsity { w_c, w_q }
    }

    /// True if `v` is a logical operator of the given kind that is not a stabilizer.
    pub fn is_nontrivial_logical(&self, kind: Kind, v: &BitVector) -> Result<bool> {
        Ok(self.check(kind).mat_vec(v)?.is_zero() && !self.stabilizers(kind).row_space().contains(v))
    }

    /// Coset representatives of `ker(check) / rowspace(stabilizers)`.
    pub fn logical_space(&self, kind: Kind) -> Vec<BitVector> {
        let mut basis = self.stabilizers(kind).row_space();
        self.check(kind)
            .kernel_basis()
            .into_iter()
            .filter(|v| basis.insert(v.clone()))
            .collect()
    }

    pub fn quantum_distance(&self, kind: Kind) -> Result<usize> {
        self.quantum_distance_with_cap(kind, DEFAULT_ENUM_CAP)
    }

    pub fn quantum_distance_with_cap(&self, kind: Kind, cap: u64) -> Result<usize> {
        let kernel = self.check(kind).kernel_basis();
        let stab = self.stabilizers(kind).row_space();
        if kernel.len() == stab.rank() {
            return Err(Error::NoCodewords);
        }
        check_enum_cap("logical coset enumeration", kernel.len(), cap)?;
        let mut best = usize::MAX;
        for_each_span(&kernel, self.n(), |_, v| {
            let w = v.weight();
            if w < best && !stab.contains(v) {
                best = w;
            }
            true
        });
        Ok(best)
    }
}

/// Greedy lowest-index unit vectors whose classes in `F^rows / Im(delta)` are independent.
pub fn select_unit_vectors(delta: &BitMatrix, count: usize) -> Result<Vec<BitVector>> {
    let rows = delta.rows();
    let mut span: XorBasis = delta.column_space();
    let mut chosen = Vec::with_capacity(count);
    for i in 0..rows {
        if chosen.len() == count {
            break;
        }
        let e = BitVector::unit(rows, i);
        if span.insert(e.clone()) {
            chosen.push(e);
        }
    }
    if chosen.len() < count {
        return Err(Error::InvalidArgument(format!(
            "only {} independent unit classes outside the image, {count} requested",
            chosen.len()
        )));
    }
    Ok(chosen)
}
