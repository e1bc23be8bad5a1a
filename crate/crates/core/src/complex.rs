//! Chain complexes over GF(2).
//!
//! A complex with spaces `C_0 .. C_m` stores boundary maps `A_1 .. A_m`, where
//! `A_j : C_j -> C_{j-1}` is an `n_{j-1} x n_j` matrix.

use serde::Serialize;

use crate::classical::{check_enum_cap, DEFAULT_ENUM_CAP};
use crate::error::{mismatch, Error, Result};
use crate::f2::{for_each_span, BitMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    maps: Vec<BitMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    /// The product `A_{j-1} A_j` is nonzero.
    pub j: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ChainComplex {
    /// `maps[j - 1]` is `A_j`. `dims` must have one more entry than `maps`.
    pub fn new(dims: Vec<usize>, maps: Vec<BitMatrix>) -> Result<Self> {
        if dims.len() != maps.len() + 1 {
            return Err(mismatch("chain complex", format!("{} spaces", dims.len()), format!("{} maps", maps.len())));
        }
        for (j, a) in maps.iter().enumerate() {
            if a.shape() != (dims[j], dims[j + 1]) {
                return Err(mismatch(
                    "chain complex",
                    format!("A_{} of shape {}x{}", j + 1, a.rows(), a.cols()),
                    format!("dims {} -> {}", dims[j + 1], dims[j]),
                ));
            }
        }
        Ok(ChainComplex { dims, maps })
    }

    /// Length-2 complex `C_1 --H--> C_0` of a classical code: checks at level 0, bits at level 1.
    pub fn from_parity(h: &BitMatrix) -> Self {
        ChainComplex {
            dims: vec![h.rows(), h.cols()],
            maps: vec![h.clone()],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Highest level `m`.
    pub fn top(&self) -> usize {
        self.maps.len()
    }

    /// `A_j` for `1 <= j <= m`.
    pub fn boundary(&self, j: usize) -> &BitMatrix {
        &self.maps[j - 1]
    }

    pub fn boundary_mut(&mut self, j: usize) -> &mut BitMatrix {
        &mut self.maps[j - 1]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for j in 2..=self.top() {
            let prod = self.boundary(j - 1).mul(self.boundary(j)).expect("shapes checked on construction");
            for (row, r) in prod.row_iter().enumerate() {
                failures.extend(r.iter_ones().map(|col| ValidationFailure { j, row, col }));
            }
        }
        ValidationReport {
            passed: failures.is_empty(),
            failures,
        }
    }

    /// Tensor product. Level `l` is the direct sum of `A_i ⊗ B_{l-i}` by increasing `i`,
    /// with the left factor outermost inside each summand.
    pub fn tensor(&self, other: &ChainComplex) -> ChainComplex {
        let (ma, mb) = (self.top(), other.top());
        let summands = |l: usize| -> Vec<(usize, usize)> {
            (l.saturating_sub(mb)..=l.min(ma)).map(|i| (i, l - i)).collect()
        };
        let offsets = |l: usize| -> Vec<((usize, usize), usize)> {
            let mut off = 0;
            summands(l)
                .into_iter()
                .map(|s| {
                    let here = off;
                    off += self.dims[s.0] * other.dims[s.1];
                    (s, here)
                })
                .collect()
        };
        let dims: Vec<usize> = (0..=ma + mb)
            .map(|l| summands(l).iter().map(|&(i, j)| self.dims[i] * other.dims[j]).sum())
            .collect();
        let mut maps = Vec::with_capacity(ma + mb);
        for l in 1..=ma + mb {
            let rows = offsets(l - 1);
            let mut m = BitMatrix::zeros(dims[l - 1], dims[l]);
            for ((i, j), col_off) in offsets(l) {
                if i >= 1 {
                    let row_off = rows.iter().find(|(s, _)| *s == (i - 1, j)).expect("summand").1;
                    let block = self.boundary(i).kron(&BitMatrix::identity(other.dims[j]));
                    m.place(row_off, col_off, &block);
                }
                if j >= 1 {
                    let row_off = rows.iter().find(|(s, _)| *s == (i, j - 1)).expect("summand").1;
                    let block = BitMatrix::identity(self.dims[i]).kron(other.boundary(j));
                    m.place(row_off, col_off, &block);
                }
            }
            maps.push(m);
        }
        ChainComplex { dims, maps }
    }

    fn rank_of(&self, j: usize) -> usize {
        if j == 0 || j > self.top() {
            0
        } else {
            self.boundary(j).rank()
        }
    }

    pub fn homology_rank(&self, j: usize) -> Result<usize> {
        if j > self.top() {
            return Err(Error::InvalidArgument(format!("level {j} out of range 0..={}", self.top())));
        }
        Ok(self.dims[j] - self.rank_of(j) - self.rank_of(j + 1))
    }

    /// Minimum weight of a cycle at level `j` that is not a boundary.
    pub fn homology_distance(&self, j: usize) -> Result<usize> {
        self.homology_distance_with_cap(j, DEFAULT_ENUM_CAP)
    }

    pub fn homology_distance_with_cap(&self, j: usize, cap: u64) -> Result<usize> {
        if self.homology_rank(j)? == 0 {
            return Err(Error::TrivialHomology { level: j });
        }
        let n = self.dims[j];
        let cycles = if j == 0 {
            BitMatrix::zeros(0, n).kernel_basis()
        } else {
            self.boundary(j).kernel_basis()
        };
        let boundaries = if j < self.top() {
            self.boundary(j + 1).column_space()
        } else {
            BitMatrix::zeros(0, n).row_space()
        };
        check_enum_cap("homology coset enumeration", cycles.len(), cap)?;
        let mut best = usize::MAX;
        for_each_span(&cycles, n, |_, v| {
            let w = v.weight();
            if w < best && !boundaries.contains(v) {
                best = w;
            }
            true
        });
        Ok(best)
    }
}
