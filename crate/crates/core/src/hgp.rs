//! Hypergraph products of classical codes in 2, 3 and 4 dimensions.
//!
//! For `D` factors with checks `δ_f : r_f x n_f`, a block is a pattern assigning each
//! factor either its check space (`r`) or its bit space (`n`). The space `C_k` is the
//! direct sum over patterns with exactly `k` check sides, ordered lexicographically with
//! `r < n`. The coboundary `∂_k : C_k -> C_{k+1}` has a nonzero block only where the row
//! pattern turns one bit side `f` of the column pattern into a check side; that block is
//! `I ⊗ .. ⊗ δ_f ⊗ .. ⊗ I`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::classical::{ClassicalCode, DEFAULT_ENUM_CAP};
use crate::complex::ChainComplex;
use crate::css::{CssCode, QubitBlock};
use crate::error::{Error, Result};
use crate::f2::BitMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "r")]
    Check,
    #[serde(rename = "n")]
    Bit,
}

pub type Pattern = Vec<Side>;

pub fn pattern_name(p: &[Side]) -> String {
    p.iter()
        .map(|s| match s {
            Side::Check => 'r',
            Side::Bit => 'n',
        })
        .collect()
}

/// Patterns with exactly `checks` check sides, in block order.
pub fn level_patterns(dim: usize, checks: usize) -> Vec<Pattern> {
    (0..dim)
        .combinations(checks)
        .map(|pos| {
            let mut p = vec![Side::Bit; dim];
            for f in pos {
                p[f] = Side::Check;
            }
            p
        })
        .collect()
}

fn side_dim(code: &ClassicalCode, side: Side) -> usize {
    match side {
        Side::Check => code.m(),
        Side::Bit => code.n(),
    }
}

pub fn block_shape(factors: &[ClassicalCode], p: &[Side]) -> Vec<usize> {
    factors.iter().zip(p).map(|(c, &s)| side_dim(c, s)).collect()
}

fn level_dim(factors: &[ClassicalCode], patterns: &[Pattern]) -> usize {
    patterns.iter().map(|p| block_shape(factors, p).iter().product::<usize>()).sum()
}

/// `∂_k : C_k -> C_{k+1}`.
pub fn coboundary(factors: &[ClassicalCode], k: usize) -> BitMatrix {
    let dim = factors.len();
    let cols = level_patterns(dim, k);
    let rows = level_patterns(dim, k + 1);
    let mut m = BitMatrix::zeros(level_dim(factors, &rows), level_dim(factors, &cols));
    let mut row_off = 0;
    for rp in &rows {
        let mut col_off = 0;
        for cp in &cols {
            let diff: Vec<usize> = (0..dim).filter(|&f| rp[f] != cp[f]).collect();
            if let [f] = diff[..] {
                if cp[f] == Side::Bit {
                    let parts: Vec<BitMatrix> = (0..dim)
                        .map(|g| {
                            if g == f {
                                factors[g].parity().clone()
                            } else {
                                BitMatrix::identity(side_dim(&factors[g], cp[g]))
                            }
                        })
                        .collect();
                    let refs: Vec<&BitMatrix> = parts.iter().collect();
                    m.place(row_off, col_off, &BitMatrix::kron_all(&refs));
                }
            }
            col_off += block_shape(factors, cp).iter().product::<usize>();
        }
        row_off += block_shape(factors, rp).iter().product::<usize>();
    }
    m
}

fn blocks_for(factors: &[ClassicalCode], patterns: &[Pattern]) -> Vec<QubitBlock> {
    let mut offset = 0;
    patterns
        .iter()
        .map(|p| {
            let shape = block_shape(factors, p);
            let len = shape.iter().product();
            let b = QubitBlock {
                name: pattern_name(p),
                offset,
                len,
                shape,
            };
            offset += len;
            b
        })
        .collect()
}

/// A hypergraph-product code together with the data used to build it.
#[derive(Clone, Debug)]
pub struct HgpCode {
    pub css: CssCode,
    /// For `dim = 2` the second entry is the transpose of the supplied second factor.
    pub factors: Vec<ClassicalCode>,
    /// Patterns of the qubit blocks, in column order.
    pub qubit_patterns: Vec<Pattern>,
    /// Iterated tensor product of the factors' length-2 complexes.
    pub complex: ChainComplex,
    /// Level of `complex` that carries the qubits.
    pub qubit_level: usize,
}

impl HgpCode {
    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    /// Number of check sides in every qubit pattern.
    pub fn qubit_checks(&self) -> usize {
        self.qubit_patterns[0].iter().filter(|&&s| s == Side::Check).count()
    }
}

fn tensor_route(factors: &[ClassicalCode]) -> ChainComplex {
    factors
        .iter()
        .map(|f| ChainComplex::from_parity(f.parity()))
        .reduce(|acc, c| acc.tensor(&c))
        .expect("at least one factor")
}

/// 2D product `H_X = (H_a ⊗ I | I ⊗ H_bᵀ)`, `H_Z = (I ⊗ H_b | H_aᵀ ⊗ I)`.
///
/// Internally this is the pattern product of `(H_a, H_bᵀ)` with qubits at one check
/// side; the block order here puts `n_a n_b` before `r_a r_b`.
pub fn hgp2(a: &ClassicalCode, b: &ClassicalCode) -> Result<HgpCode> {
    let (ha, hb) = (a.parity(), b.parity());
    let (ra, na, rb, nb) = (a.m(), a.n(), b.m(), b.n());
    let id = BitMatrix::identity;
    let hx = BitMatrix::hstack(&[&ha.kron(&id(nb)), &id(ra).kron(&hb.transpose())])?;
    let hz = BitMatrix::hstack(&[&id(na).kron(hb), &ha.transpose().kron(&id(rb))])?;
    let bt = b.transpose()?;
    let factors = vec![a.clone(), bt];
    let qubit_patterns = vec![vec![Side::Bit, Side::Check], vec![Side::Check, Side::Bit]];
    let blocks = blocks_for(&factors, &qubit_patterns);
    let css = CssCode::new(hx, hz, None, None, blocks)?;
    Ok(HgpCode {
        css,
        complex: tensor_route(&factors),
        factors,
        qubit_patterns,
        qubit_level: 1,
    })
}

/// Pattern product with qubits on `C_q`, `H_Z = ∂_{q-1}ᵀ`, `H_X = ∂_q`.
fn hgp_patterns(factors: &[ClassicalCode], q: usize) -> Result<HgpCode> {
    let dim = factors.len();
    let hz = coboundary(factors, q - 1).transpose();
    let hx = coboundary(factors, q);
    let meta_x = (q + 1 < dim).then(|| coboundary(factors, q + 1));
    let meta_z = (q >= 2).then(|| coboundary(factors, q - 2).transpose());
    let qubit_patterns = level_patterns(dim, q);
    let blocks = blocks_for(factors, &qubit_patterns);
    let css = CssCode::new(hx, hz, meta_x, meta_z, blocks)?;
    Ok(HgpCode {
        css,
        factors: factors.to_vec(),
        qubit_patterns,
        complex: tensor_route(factors),
        qubit_level: dim - q,
    })
}

/// 3D product: qubits on `C_1`, `H_Z = ∂_0ᵀ`, `H_X = ∂_1`, `meta_X = ∂_2`.
pub fn hgp3(a: &ClassicalCode, b: &ClassicalCode, c: &ClassicalCode) -> Result<HgpCode> {
    hgp_patterns(&[a.clone(), b.clone(), c.clone()], 1)
}

/// 4D product: qubits on `C_2`, `H_Z = ∂_1ᵀ`, `H_X = ∂_2`, `meta_X = ∂_3`, `meta_Z = ∂_0ᵀ`.
pub fn hgp4(a: &ClassicalCode, b: &ClassicalCode, c: &ClassicalCode, d: &ClassicalCode) -> Result<HgpCode> {
    hgp_patterns(&[a.clone(), b.clone(), c.clone(), d.clone()], 2)
}

pub fn hgp(factors: &[ClassicalCode]) -> Result<HgpCode> {
    match factors {
        [a, b] => hgp2(a, b),
        [a, b, c] => hgp3(a, b, c),
        [a, b, c, d] => hgp4(a, b, c, d),
        _ => Err(Error::InvalidArgument(format!("hypergraph product needs 2, 3 or 4 factors, got {}", factors.len()))),
    }
}

/// Parameters of a factor and of its transpose code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorParams {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub k_t: usize,
    pub d_t: Option<usize>,
}

impl FactorParams {
    /// Distances are left absent when the code has no codewords or enumeration is too large.
    pub fn of(code: &ClassicalCode) -> FactorParams {
        let t = code.transpose().ok();
        FactorParams {
            n: code.n(),
            r: code.m(),
            k: code.k(),
            d: code.distance_with_cap(DEFAULT_ENUM_CAP).ok(),
            k_t: code.k_transpose(),
            d_t: t.and_then(|t| t.distance_with_cap(DEFAULT_ENUM_CAP).ok()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgpPrediction {
    pub n: usize,
    pub k: usize,
    pub d_x: Option<usize>,
    pub d_z: Option<usize>,
}

/// Parameters of the pattern product with qubits on `C_q`.
///
/// Each qubit pattern contributes `Π k(side)` logical qubits, with `k(n) = k_f` and
/// `k(r) = k_fᵀ`. A contributing pattern has `Z` logicals of weight `Π_{n sides} d_f`
/// and `X` logicals of weight `Π_{r sides} d_fᵀ`.
pub fn predict_params(factors: &[FactorParams], q: usize) -> HgpPrediction {
    let mut n = 0;
    let mut k = 0;
    let mut d_x: Option<Option<usize>> = None;
    let mut d_z: Option<Option<usize>> = None;
    let fold = |acc: &mut Option<Option<usize>>, v: Option<usize>| {
        *acc = Some(match (*acc, v) {
            (None, v) => v,
            (Some(Some(a)), Some(b)) => Some(a.min(b)),
            _ => None,
        });
    };
    for p in level_patterns(factors.len(), q) {
        let mut size = 1;
        let mut count = 1;
        let mut wz = Some(1);
        let mut wx = Some(1);
        for (f, &s) in factors.iter().zip(&p) {
            match s {
                Side::Check => {
                    size *= f.r;
                    count *= f.k_t;
                    wx = wx.zip(f.d_t).map(|(a, b)| a * b);
                }
                Side::Bit => {
                    size *= f.n;
                    count *= f.k;
                    wz = wz.zip(f.d).map(|(a, b)| a * b);
                }
            }
        }
        n += size;
        k += count;
        if count > 0 {
            fold(&mut d_z, wz);
            fold(&mut d_x, wx);
        }
    }
    HgpPrediction {
        n,
        k,
        d_x: d_x.flatten(),
        d_z: d_z.flatten(),
    }
}

pub fn predict_params2(a: &ClassicalCode, b: &ClassicalCode) -> Result<HgpPrediction> {
    Ok(predict_params(&[FactorParams::of(a), FactorParams::of(&b.transpose()?)], 1))
}

pub fn predict_params3(a: &ClassicalCode, b: &ClassicalCode, c: &ClassicalCode) -> HgpPrediction {
    predict_params(&[a, b, c].map(FactorParams::of), 1)
}

pub fn predict_params4(a: &ClassicalCode, b: &ClassicalCode, c: &ClassicalCode, d: &ClassicalCode) -> HgpPrediction {
    predict_params(&[a, b, c, d].map(FactorParams::of), 2)
}

pub fn predict(code: &HgpCode) -> HgpPrediction {
    let params: Vec<FactorParams> = code.factors.iter().map(FactorParams::of).collect();
    predict_params(&params, code.qubit_checks())
}
