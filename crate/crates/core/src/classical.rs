use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{for_each_span, BitMatrix, BitVector};

/// Default limit on `2^k` for codeword enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

/// Classical linear code given by a parity-check matrix (m checks by n bits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    h: BitMatrix,
    k: usize,
}

impl ClassicalCode {
    pub fn from_parity(h: BitMatrix) -> Result<Self> {
        if h.cols() == 0 {
            return Err(Error::InvalidArgument("parity-check matrix has no columns".into()));
        }
        let k = h.cols() - h.rank();
        Ok(ClassicalCode { h, k })
    }

    pub fn parity(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The code with parity-check matrix `Hᵀ`, whose parameters are written `[nᵀ, kᵀ, dᵀ]`.
    pub fn transpose(&self) -> Result<ClassicalCode> {
        ClassicalCode::from_parity(self.h.transpose())
    }

    /// `kᵀ = m − rank H`, available even when `m = 0`.
    pub fn k_transpose(&self) -> usize {
        self.m() - (self.n() - self.k)
    }

    pub fn codeword_basis(&self) -> Vec<BitVector> {
        self.h.kernel_basis()
    }

    pub fn is_codeword(&self, x: &BitVector) -> Result<bool> {
        Ok(self.h.mat_vec(x)?.is_zero())
    }

    pub fn syndrome_energy(&self, x: &BitVector) -> Result<usize> {
        Ok(self.h.mat_vec(x)?.weight())
    }

    pub fn distance(&self) -> Result<usize> {
        self.distance_with_cap(DEFAULT_ENUM_CAP)
    }

    pub fn distance_with_cap(&self, cap: u64) -> Result<usize> {
        Ok(self.min_weight_codeword_with_cap(cap)?.weight())
    }

    /// A nonzero codeword of minimum weight (first found in Gray-code order).
    pub fn min_weight_codeword_with_cap(&self, cap: u64) -> Result<BitVector> {
        let basis = self.codeword_basis();
        if basis.is_empty() {
            return Err(Error::NoCodewords);
        }
        check_enum_cap("codeword enumeration", basis.len(), cap)?;
        let mut best: Option<BitVector> = None;
        for_each_span(&basis, self.n(), |_, v| {
            if best.as_ref().is_none_or(|b| v.weight() < b.weight()) {
                best = Some(v.clone());
            }
            true
        });
        Ok(best.expect("nonempty span"))
    }
}

pub(crate) fn check_enum_cap(what: &str, dim: usize, cap: u64) -> Result<()> {
    if dim >= 64 || (1u64 << dim) > cap {
        return Err(Error::TooLarge {
            what: what.into(),
            required: format!("2^{dim}"),
            cap: cap.to_string(),
        });
    }
    Ok(())
}

pub fn repetition_code(len: usize, periodic: bool) -> Result<ClassicalCode> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!("repetition length must be at least 2, got {len}")));
    }
    let rows = if periodic { len } else { len - 1 };
    let mut h = BitMatrix::zeros(rows, len);
    for i in 0..rows {
        h.set(i, i, true);
        let j = (i + 1) % len;
        let cur = h.get(i, j);
        h.set(i, j, !cur);
    }
    ClassicalCode::from_parity(h)
}

/// Cell indices of the composite code: an `L x L` grid followed by an `L²` chain.
#[derive(Clone, Copy, Debug)]
pub struct CompositeLayout {
    pub len: usize,
}

impl CompositeLayout {
    pub fn grid(&self, row: usize, col: usize) -> usize {
        row * self.len + col
    }

    pub fn snake(&self, t: usize) -> usize {
        self.len * self.len + t
    }

    pub fn snake_len(&self) -> usize {
        self.len * self.len
    }

    pub fn n(&self) -> usize {
        2 * self.len * self.len
    }

    /// Index of the bridge check (always the last row).
    pub fn bridge_check(&self) -> usize {
        2 * self.len * (self.len - 1) + self.snake_len() - 1
    }
}

/// Grid region with Ising checks on every nearest-neighbour edge, joined by one bridge
/// check from grid cell `(L−1, 0)` to the first cell of an `L²`-long chain.
///
/// Check order: horizontal grid edges, vertical grid edges, chain edges, bridge.
pub fn composite_repetition(len: usize) -> Result<ClassicalCode> {
    if len < 2 {
        return Err(Error::InvalidArgument(format!("composite length must be at least 2, got {len}")));
    }
    let lay = CompositeLayout { len };
    let mut edges = Vec::new();
    for r in 0..len {
        for c in 0..len - 1 {
            edges.push((lay.grid(r, c), lay.grid(r, c + 1)));
        }
    }
    for r in 0..len - 1 {
        for c in 0..len {
            edges.push((lay.grid(r, c), lay.grid(r + 1, c)));
        }
    }
    for t in 0..lay.snake_len() - 1 {
        edges.push((lay.snake(t), lay.snake(t + 1)));
    }
    edges.push((lay.grid(len - 1, 0), lay.snake(0)));

    let rows = edges
        .iter()
        .map(|&(a, b)| BitVector::from_indices(lay.n(), [a, b]))
        .collect();
    ClassicalCode::from_parity(BitMatrix::from_rows(lay.n(), rows)?)
}

/// Uniform random `m x n` parity-check matrix with each entry set with probability `p`.
pub fn random_parity(m: usize, n: usize, p: f64, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = BitMatrix::zeros(m, n);
    for r in 0..m {
        for c in 0..n {
            if rng.random_bool(p) {
                h.set(r, c, true);
            }
        }
    }
    h
}

/// Random simple biregular Tanner graph: every bit has degree `dv`, every check degree `dc`.
pub fn random_biregular(n: usize, dv: usize, dc: usize, seed: u64) -> Result<ClassicalCode> {
    if dc == 0 || !(n * dv).is_multiple_of(dc) {
        return Err(Error::InvalidArgument(format!("n * dv = {} is not divisible by dc = {dc}", n * dv)));
    }
    let m = n * dv / dc;
    if dv > m || dc > n {
        return Err(Error::InvalidArgument(format!("degrees ({dv}, {dc}) impossible for n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..m).flat_map(|c| std::iter::repeat_n(c, dc)).collect();
    for _ in 0..10_000 {
        stubs.shuffle(&mut rng);
        let mut h = BitMatrix::zeros(m, n);
        let simple = stubs.chunks(dv).enumerate().all(|(bit, checks)| {
            checks.iter().all(|&c| {
                let fresh = !h.get(c, bit);
                h.set(c, bit, true);
                fresh
            })
        });
        if simple {
            return ClassicalCode::from_parity(h);
        }
    }
    Err(Error::InvalidArgument("failed to sample a simple biregular graph".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionPoint {
    pub size: usize,
    pub min_neighbors: usize,
    pub min_unique: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    /// Maximum bit degree in the Tanner graph.
    pub w: usize,
    pub scanned_max_size: usize,
    pub per_size: Vec<ExpansionPoint>,
}

pub const DEFAULT_SUBSET_CAP: u64 = 50_000_000;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Exact minima of `|N(S)|` and `|U(S)|` over all bit subsets of each size up to `max_size`.
pub fn expansion_scan(code: &ClassicalCode, max_size: usize, cap: u64) -> Result<ExpansionReport> {
    let n = code.n();
    if let Some(s) = (1..=max_size.min(n)).find(|&s| binomial(n, s) > cap) {
        return Err(Error::TooLarge {
            what: format!("expansion scan at subset size {s}"),
            required: format!("C({n}, {s}) = {}", binomial(n, s)),
            cap: cap.to_string(),
        });
    }
    let columns = code.parity().columns();
    let w = columns.iter().map(BitVector::weight).max().unwrap_or(0);
    let m = code.m();
    let mut per_size = Vec::new();
    for s in 1..=max_size.min(n) {
        let mut min_n = usize::MAX;
        let mut min_u = usize::MAX;
        for subset in (0..n).combinations(s) {
            // once: checks hit an odd number of times; any: hit at least once
            let mut any = BitVector::zeros(m);
            let mut twice = BitVector::zeros(m);
            for &b in &subset {
                for c in columns[b].iter_ones() {
                    if any.get(c) {
                        twice.set(c, true);
                    } else {
                        any.set(c, true);
                    }
                }
            }
            let nb = any.weight();
            let unique = nb - twice.weight();
            min_n = min_n.min(nb);
            min_u = min_u.min(unique);
        }
        per_size.push(ExpansionPoint {
            size: s,
            min_neighbors: min_n,
            min_unique: min_u,
        });
    }
    Ok(ExpansionReport {
        w,
        scanned_max_size: max_size.min(n),
        per_size,
    })
}

/// Random parity-check matrix with `1..=max_rows` rows and `1..=max_cols` columns.
pub fn random_small_code<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize) -> ClassicalCode {
    let m = rng.random_range(1..=max_rows);
    let n = rng.random_range(1..=max_cols);
    let mut h = BitMatrix::zeros(m, n);
    for r in 0..m {
        for c in 0..n {
            if rng.random_bool(0.5) {
                h.set(r, c, true);
            }
        }
    }
    ClassicalCode::from_parity(h).expect("at least one column")
}
