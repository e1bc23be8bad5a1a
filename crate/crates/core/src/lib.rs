//! Classical, tensor-product and hypergraph-product codes over GF(2), together with
//! exact and heuristic energy-barrier search and confinement scans.

pub mod barrier;
pub mod classical;
pub mod complex;
pub mod confinement;
pub mod css;
pub mod deform;
pub mod error;
pub mod f2;
pub mod hgp;
pub mod logicals;
pub mod manifest;
pub mod pcm;
pub mod report;
pub mod tensor;

pub use classical::{composite_repetition, repetition_code, ClassicalCode};
pub use complex::ChainComplex;
pub use css::{CssCode, Kind};
pub use error::{Error, Result};
pub use f2::{BitMatrix, BitVector, Tensor3};
pub use hgp::{hgp2, hgp3, hgp4, HgpCode};
