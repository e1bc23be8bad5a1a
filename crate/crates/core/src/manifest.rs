//! The "manifest v1" JSON description of a code stored as "pcm v1" files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalCode;
use crate::css::{CssCode, QubitBlock};
use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::hgp::{hgp, predict, HgpCode, HgpPrediction};
use crate::pcm;

pub const MANIFEST_SCHEMA: &str = "manifest v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifestKind {
    Classical,
    Css,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedParams {
    pub n: usize,
    pub k: usize,
}

/// File paths are relative to the manifest's directory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeManifest {
    pub schema: String,
    pub kind: ManifestKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hx: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hz: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta_x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta_z: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default)]
    pub block_layout: Vec<QubitBlock>,
    pub params: CachedParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<HgpPrediction>,
    pub validated: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub enum LoadedCode {
    Classical(ClassicalCode),
    Css(CssCode),
    Hgp(HgpCode),
}

impl LoadedCode {
    pub fn css(&self) -> Option<&CssCode> {
        match self {
            LoadedCode::Classical(_) => None,
            LoadedCode::Css(c) => Some(c),
            LoadedCode::Hgp(h) => Some(&h.css),
        }
    }
}

/// Writes the matrices of `code` and a manifest into `dir`; returns the manifest path.
pub fn write_hgp(dir: &Path, code: &HgpCode, factors: &[ClassicalCode], command: &str, seed: Option<u64>) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut factor_files = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let name = format!("factor{}.pcm", i + 1);
        pcm::write(dir.join(&name), f.parity())?;
        factor_files.push(name);
    }
    pcm::write(dir.join("hx.pcm"), code.css.hx())?;
    pcm::write(dir.join("hz.pcm"), code.css.hz())?;
    let meta = |m: Option<&BitMatrix>, name: &str| -> Result<Option<String>> {
        m.map(|m| {
            pcm::write(dir.join(name), m)?;
            Ok(name.to_string())
        })
        .transpose()
    };
    let meta_x = meta(code.css.meta_x(), "meta_x.pcm")?;
    let meta_z = meta(code.css.meta_z(), "meta_z.pcm")?;
    let predicted = predict(code);
    let manifest = CodeManifest {
        schema: MANIFEST_SCHEMA.into(),
        kind: ManifestKind::Css,
        h: None,
        hx: Some("hx.pcm".into()),
        hz: Some("hz.pcm".into()),
        meta_x,
        meta_z,
        factors: factor_files,
        dim: Some(code.dim()),
        block_layout: code.css.blocks().to_vec(),
        params: CachedParams {
            n: code.css.n(),
            k: code.css.k(),
        },
        validated: code.complex.validate().passed && predicted.k == code.css.k(),
        predicted: Some(predicted),
        provenance: Provenance {
            command: command.into(),
            seed,
        },
    };
    let path = dir.join("manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(path)
}

/// Loads a manifest, or a bare "pcm v1" file as a classical code.
pub fn load_code(path: &Path) -> Result<LoadedCode> {
    if path.extension().is_some_and(|e| e == "pcm") {
        return Ok(LoadedCode::Classical(ClassicalCode::from_parity(pcm::read(path)?)?));
    }
    let manifest: CodeManifest = serde_json::from_str(&fs::read_to_string(path)?)?;
    if manifest.schema != MANIFEST_SCHEMA {
        return Err(Error::InvalidArgument(format!("unsupported manifest schema {:?}", manifest.schema)));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    let read = |name: &Option<String>, what: &str| -> Result<BitMatrix> {
        let name = name.as_ref().ok_or_else(|| Error::InvalidArgument(format!("manifest is missing {what}")))?;
        pcm::read(base.join(name))
    };
    let loaded = match manifest.kind {
        ManifestKind::Classical => LoadedCode::Classical(ClassicalCode::from_parity(read(&manifest.h, "h")?)?),
        ManifestKind::Css => {
            let hx = read(&manifest.hx, "hx")?;
            let hz = read(&manifest.hz, "hz")?;
            if manifest.factors.is_empty() {
                let meta_x = manifest.meta_x.as_ref().map(|_| read(&manifest.meta_x, "meta_x")).transpose()?;
                let meta_z = manifest.meta_z.as_ref().map(|_| read(&manifest.meta_z, "meta_z")).transpose()?;
                LoadedCode::Css(CssCode::new(hx, hz, meta_x, meta_z, manifest.block_layout.clone())?)
            } else {
                let factors = manifest
                    .factors
                    .iter()
                    .map(|f| ClassicalCode::from_parity(pcm::read(base.join(f))?))
                    .collect::<Result<Vec<_>>>()?;
                let code = hgp(&factors)?;
                if *code.css.hx() != hx || *code.css.hz() != hz {
                    return Err(Error::Verification("stored check matrices differ from the product of the stored factors".into()));
                }
                LoadedCode::Hgp(code)
            }
        }
    };
    let (n, k) = match &loaded {
        LoadedCode::Classical(c) => (c.n(), c.k()),
        other => {
            let css = other.css().expect("css variant");
            (css.n(), css.k())
        }
    };
    if (n, k) != (manifest.params.n, manifest.params.k) {
        return Err(Error::Verification(format!(
            "cached params (n = {}, k = {}) differ from the matrices (n = {n}, k = {k})",
            manifest.params.n, manifest.params.k
        )));
    }
    Ok(loaded)
}
