//! Verification suites and the "report v1" output.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::barrier::{barrier_best_first, code_barrier_exact, random_path_to, BestFirstConfig, CodeRef, ExactConfig, SyndromeEnergy};
use crate::classical::{composite_repetition, expansion_scan, random_biregular, random_small_code, repetition_code, ClassicalCode, CompositeLayout, DEFAULT_SUBSET_CAP};
use crate::complex::ChainComplex;
use crate::confinement::{barrier_bound_from_confinement, confinement_scan, evaluate_error, is_confinement_violation, soundness_scan, ConfinementFn, ScanOptions, DEFAULT_COSET_CAP};
use crate::css::{CssCode, Kind};
use crate::deform::{select_fold, slice_deform};
use crate::error::{Error, Result};
use crate::f2::BitVector;
use crate::hgp::{hgp2, hgp3, hgp4, predict, HgpCode, Side};
use crate::logicals::{canonical_logicals, is_single_slice};
use crate::tensor::{bound_ledger, strip_path, Orientation, TensorProductCode};

pub const REPORT_SCHEMA: &str = "report v1";
pub const SUITES: &[&str] = &["tensor-bounds", "hgp3-bounds", "hgp4-structure", "confinement", "all-desk"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportedOnly,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Status::Pass => "✓",
            Status::Fail => "✗",
            Status::ReportedOnly => "·",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportedOnly => "reported-only",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub inputs: String,
    pub analytic_bound: String,
    pub measured: String,
    pub status: Status,
    /// Wall time of the group of checks that produced this record; not part of the JSON.
    #[serde(skip)]
    pub runtime_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub suite: String,
    pub seed: u64,
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            suite: suite.into(),
            seed,
            claims: Vec::new(),
        }
    }

    /// No pass-level claim failed.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}; expected json, table or csv"))),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_report(report: &VerificationReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => {
            let mut out = String::from("id,status,inputs,analytic_bound,measured\n");
            for c in &report.claims {
                let fields = [c.id.as_str(), c.status.as_str(), &c.inputs, &c.analytic_bound, &c.measured];
                out.push_str(&fields.map(csv_field).join(","));
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let w = |f: fn(&ClaimRecord) -> &str, title: &str| {
                report.claims.iter().map(|c| f(c).chars().count()).chain([title.len()]).max().unwrap_or(0)
            };
            let wi = w(|c| &c.id, "id");
            let wb = w(|c| &c.analytic_bound, "bound");
            let wm = w(|c| &c.measured, "measured");
            let mut out = String::new();
            writeln!(out, "   {:<wi$}  {:<wb$}  {:<wm$}  {:>8}", "id", "bound", "measured", "ms").unwrap();
            for c in &report.claims {
                writeln!(out, "{}  {:<wi$}  {:<wb$}  {:<wm$}  {:>8}", c.status.symbol(), c.id, c.analytic_bound, c.measured, c.runtime_ms).unwrap();
            }
            out
        }
    })
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub exact: ExactConfig,
    pub frontier_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            exact: ExactConfig::default(),
            frontier_cap: 1_000_000,
        }
    }
}

struct Recorder<'a> {
    report: &'a mut VerificationReport,
    started: Instant,
    first: usize,
}

impl<'a> Recorder<'a> {
    fn new(report: &'a mut VerificationReport) -> Self {
        let first = report.claims.len();
        Recorder {
            report,
            started: Instant::now(),
            first,
        }
    }

    fn push(&mut self, id: impl Into<String>, inputs: impl Into<String>, bound: impl Into<String>, measured: impl Into<String>, status: Status) {
        self.report.claims.push(ClaimRecord {
            id: id.into(),
            inputs: inputs.into(),
            analytic_bound: bound.into(),
            measured: measured.into(),
            status,
            runtime_ms: 0,
        });
    }
}

impl Drop for Recorder<'_> {
    fn drop(&mut self) {
        let ms = self.started.elapsed().as_millis();
        for c in &mut self.report.claims[self.first..] {
            c.runtime_ms = ms;
        }
    }
}

fn named_rep(name: &str) -> (String, ClassicalCode) {
    let (periodic, len) = match name {
        "cyc2" => (true, 2),
        "cyc3" => (true, 3),
        "open2" => (false, 2),
        "open3" => (false, 3),
        _ => unreachable!("fixed factor list"),
    };
    (name.to_string(), repetition_code(len, periodic).expect("len >= 2"))
}

pub fn run_verify(suite: &str, config: &VerifyConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(suite, config.seed);
    match suite {
        "tensor-bounds" => tensor_bounds(&mut report, config)?,
        "hgp3-bounds" => hgp3_bounds(&mut report, config)?,
        "hgp4-structure" => hgp4_structure(&mut report, config)?,
        "confinement" => confinement(&mut report, config)?,
        "all-desk" => {
            algebraic_identities(&mut report, config)?;
            kunneth(&mut report, config)?;
            tensor_bounds(&mut report, config)?;
            hgp3_bounds(&mut report, config)?;
            hgp4_structure(&mut report, config)?;
            confinement(&mut report, config)?;
        }
        other => {
            return Err(Error::UnknownSuite {
                name: other.into(),
                valid: SUITES.join(", "),
            })
        }
    }
    Ok(report)
}

fn identities_hold(code: &HgpCode) -> Result<bool> {
    let css = &code.css;
    let mut ok = css.hx().mul(&css.hz().transpose())?.is_zero();
    if let Some(m) = css.meta_x() {
        ok &= m.mul(css.hx())?.is_zero();
    }
    if let Some(m) = css.meta_z() {
        ok &= m.mul(css.hz())?.is_zero();
    }
    Ok(ok && code.complex.validate().passed)
}

fn algebraic_identities(report: &mut VerificationReport, config: &VerifyConfig) -> Result<()> {
    let mut rec = Recorder::new(report);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for dim in 2..=4 {
        let mut ok = 0;
        for _ in 0..20 {
            let factors: Vec<ClassicalCode> = (0..dim).map(|_| random_small_code(&mut rng, 4, 4)).collect();
            let code = match dim {
                2 => hgp2(&factors[0], &factors[1])?,
                3 => hgp3(&factors[0], &factors[1], &factors[2])?,
                _ => hgp4(&factors[0], &factors[1], &factors[2], &factors[3])?,
            };
            ok += identities_hold(&code)? as usize;
        }
        rec.push(format!("hgp{dim}-identities"), "20 random factor tuples, each at most 4x4", "20/20 with all products zero", format!("{ok}/20"), Status::of(ok == 20));
    }
    Ok(())
}

fn kunneth(report: &mut VerificationReport, config: &VerifyConfig) -> Result<()> {
    let mut rec = Recorder::new(report);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x6b75);
    let mut ok = 0;
    for _ in 0..20 {
        let a = ChainComplex::from_parity(random_small_code(&mut rng, 4, 4).parity());
        let b = ChainComplex::from_parity(random_small_code(&mut rng, 4, 4).parity());
        let c = a.tensor(&b);
        let all = (0..=c.top()).all(|l| {
            let conv: usize = (0..=l)
                .filter(|&i| i <= a.top() && l - i <= b.top())
                .map(|i| a.homology_rank(i).unwrap() * b.homology_rank(l - i).unwrap())
                .sum();
            c.homology_rank(l).unwrap() == conv
        });
        ok += all as usize;
    }
    rec.push("kunneth-rank", "20 random pairs of length-2 complexes", "20/20 ranks equal the convolution", format!("{ok}/20"), Status::of(ok == 20));
    Ok(())
}

fn tensor_bounds(report: &mut VerificationReport, config: &VerifyConfig) -> Result<()> {
    let names = ["cyc2", "cyc3", "open2", "open3"];
    {
        let mut rec = Recorder::new(report);
        for na in names {
            for nb in names {
                let (la, a) = named_rep(na);
                let (lb, b) = named_rep(nb);
                let pair = format!("{la}x{lb}");
                let ledger = bound_ledger(&a, &b, true, &config.exact)?;
                let v = ledger.measured.as_ref().expect("products are small").value;
                let inputs = format!("d=({},{}) E=({},{})", ledger.d_a, ledger.d_b, ledger.e_a, ledger.e_b);
                rec.push(format!("tensor-energy-lb[{pair}]"), inputs.clone(), format!(">= {}", ledger.lower_energy), v.to_string(), Status::of(v >= ledger.lower_energy));
                let dist_status = if v >= ledger.lower_distance {
                    Status::Pass
                } else if ledger.d_a.min(ledger.d_b) <= 2 {
                    Status::ReportedOnly
                } else {
                    Status::Fail
                };
                rec.push(format!("tensor-distance-lb[{pair}]"), inputs.clone(), format!(">= {}", ledger.lower_distance), v.to_string(), dist_status);
                rec.push(format!("tensor-strip-ub[{pair}]"), inputs.clone(), format!("<= {}", ledger.upper_strip), v.to_string(), Status::of(v <= ledger.upper_strip));
                rec.push(format!("tensor-conjecture[{pair}]"), inputs.clone(), format!("= {}", ledger.conjecture), v.to_string(), Status::ReportedOnly);

                // strip path built from the factors' optimal witnesses
                let wa = code_barrier_exact(CodeRef::Classical(&a), &config.exact)?;
                let wb = code_barrier_exact(CodeRef::Classical(&b), &config.exact)?;
                let product = TensorProductCode::build(&a, &b)?;
                let energy = SyndromeEnergy::classical(&product.code);
                let target = wa.endpoint().kron(wb.endpoint());
                for (o, bound) in [
                    (Orientation::Row, wb.endpoint().weight() * ledger.e_a + ledger.e_b),
                    (Orientation::Column, wa.endpoint().weight() * ledger.e_b + ledger.e_a),
                ] {
                    let path = strip_path(&wa.witness, &wb.witness, o)?;
                    let peak = path.max_energy(&energy);
                    let tag = match o {
                        Orientation::Row => "row",
                        Orientation::Column => "column",
                    };
                    rec.push(format!("tensor-strip-path-{tag}[{pair}]"), inputs.clone(), format!("<= {bound}"), peak.to_string(), Status::of(path.verify(&target) && peak <= bound));
                }
            }
        }
    }
    let mut rec = Recorder::new(report);
    for len in [3, 4, 5] {
        let code = repetition_code(len, true)?;
        let v = code_barrier_exact(CodeRef::Classical(&code), &config.exact)?.value;
        rec.push(format!("rep1d-barrier[L={len}]"), "cyclic repetition", "= 2", v.to_string(), Status::of(v == 2));
    }
    let mut values = Vec::new();
    for len in [3, 4] {
        let c = repetition_code(len, true)?;
        let t = TensorProductCode::build(&c, &c)?;
        let v = code_barrier_exact(CodeRef::Classical(&t.code), &config.exact)?.value;
        rec.push(format!("rep2d-barrier-lb[L={len}]"), format!("cyclic tensor, n={}", len * len), format!(">= {len}"), v.to_string(), Status::of(v >= len));
        values.push(v);
    }
    rec.push("rep2d-barrier-increasing", "L=3 vs L=4", "V(4) > V(3)", format!("{} -> {}", values[0], values[1]), Status::of(values[1] > values[0]));
    Ok(())
}

fn cyclic_product(dim: usize) -> Result<HgpCode> {
    let c = repetition_code(2, true)?;
    match dim {
        3 => hgp3(&c, &c, &c),
        _ => hgp4(&c, &c, &c, &c),
    }
}

fn hgp3_bounds(report: &mut VerificationReport, config: &VerifyConfig) -> Result<()> {
    let mut rec = Recorder::new(report);
    let code = cyclic_product(3)?;
    let p = predict(&code);
    let dz = code.css.quantum_distance(Kind::Z)?;
    let dx = code.css.quantum_distance(Kind::X)?;
    let measured = format!("n={} k={} dz={dz} dx={dx}", code.css.n(), code.css.k());
    let predicted = format!("n={} k={} dz={:?} dx={:?}", p.n, p.k, p.d_z, p.d_x);
    let ok = (code.css.n(), code.css.k(), Some(dz), Some(dx)) == (p.n, p.k, p.d_z, p.d_x) && (p.n, p.k) == (24, 3);
    rec.push("hgp3-params[toric L=2]", "three cyclic rep L=2", predicted, measured, Status::of(ok));
    let kq = code.complex.homology_rank(code.qubit_level)?;
    rec.push("hgp3-kunneth[toric L=2]", "homology of the tensor complex", format!("= {}", p.k), kq.to_string(), Status::of(kq == p.k));

    let z = canonical_logicals(&code, Kind::Z)?;
    let x = canonical_logicals(&code, Kind::X)?;
    rec.push("hgp3-canonical-z", "toric L=2", format!("{} independent", p.k), z.len().to_string(), Status::of(z.len() == p.k));
    rec.push("hgp3-canonical-x", "toric L=2", format!("{} independent", p.k), x.len().to_string(), Status::of(x.len() == p.k));
    let slices = z.operators.iter().filter(|o| is_single_slice(&code, &o.vector)).count();
    rec.push("hgp3-single-slice", "canonical Z operators", format!("{} in one slice", z.len()), slices.to_string(), Status::of(slices == z.len()));

    // slice deformation of random paths
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x736c);
    let mut good = 0;
    let total = 100;
    for i in 0..total {
        let op = &z.operators[i % z.len()];
        let axis = op.family - 1;
        let path = random_path_to(&op.vector, 6, &mut rng);
        let (fold, alpha) = select_fold(&code, &op.vector, axis)?;
        if let Ok(out) = slice_deform(&code, &path, &fold, alpha, axis) {
            let end = out.endpoint().expect("nonempty");
            if code.css.is_nontrivial_logical(Kind::Z, end)? && is_single_slice(&code, end) {
                good += 1;
            }
        }
    }
    rec.push("hgp3-slice-deform", format!("{total} random paths, 6 detours each"), "energy never increases; nontrivial single-slice endpoint", format!("{good}/{total}"), Status::of(good == total));

    // [[5,1,2]] exact barrier against the smallest factor barrier
    let open = repetition_code(2, false)?;
    let five = hgp2(&open, &open)?;
    let v = code_barrier_exact(CodeRef::Css(&five.css, Kind::Z), &config.exact)?.value;
    let bound = hgp_z_barrier_bound(&five, &config.exact)?;
    rec.push("hgp2-zbarrier-lb[[5,1,2]]", "open rep L=2 squared", format!(">= {bound}"), v.to_string(), Status::of(v >= bound));

    let bound = code.factors.iter().map(|f| f.distance()).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0);
    let energy = SyndromeEnergy::css(&code.css, Kind::Z);
    for op in &z.operators {
        let cfg = BestFirstConfig {
            frontier_cap: config.frontier_cap,
            seed: config.seed,
            ..Default::default()
        };
        let r = barrier_best_first(&energy, &op.vector, &cfg)?;
        let tag = op.label_string();
        rec.push(format!("thm3d-zbarrier-lb[{tag}]"), "best-first estimate", format!(">= {bound}"), r.value.to_string(), Status::ReportedOnly);
        rec.push(format!("thm3d-zbarrier-weight-ub[{tag}]"), "best-first estimate", format!("<= {}", op.vector.weight()), r.value.to_string(), Status::ReportedOnly);
    }
    Ok(())
}

/// Smallest barrier among the classical codes that carry the bit sides of a contributing
/// qubit block, for products with one check side per block.
pub fn hgp_z_barrier_bound(code: &HgpCode, exact: &ExactConfig) -> Result<usize> {
    let mut bound = usize::MAX;
    for p in &code.qubit_patterns {
        let count: usize = p
            .iter()
            .zip(&code.factors)
            .map(|(&s, f)| if s == Side::Bit { f.k() } else { f.k_transpose() })
            .product();
        if count == 0 {
            continue;
        }
        for (&s, f) in p.iter().zip(&code.factors) {
            if s == Side::Bit {
                bound = bound.min(code_barrier_exact(CodeRef::Classical(f), exact)?.value);
            }
        }
    }
    if bound == usize::MAX {
        return Err(Error::NoCodewords);
    }
    Ok(bound)
}

fn hgp4_structure(report: &mut VerificationReport, config: &VerifyConfig) -> Result<()> {
    let mut rec = Recorder::new(report);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x3464);
    let mut ok = 0;
    for _ in 0..20 {
        let f: Vec<ClassicalCode> = (0..4).map(|_| random_small_code(&mut rng, 3, 3)).collect();
        ok += identities_hold(&hgp4(&f[0], &f[1], &f[2], &f[3])?)? as usize;
    }
    rec.push("hgp4-boundaries", "20 random quadruples, each at most 3x3", "20/20 with all products zero", format!("{ok}/20"), Status::of(ok == 20));
    let code = cyclic_product(4)?;
    let p = predict(&code);
    let kq = code.complex.homology_rank(code.qubit_level)?;
    let ok = (code.css.n(), code.css.k(), kq) == (p.n, p.k, p.k) && (p.n, p.k) == (96, 6);
    rec.push("hgp4-params[L=2]", "four cyclic rep L=2", format!("n={} k={}", p.n, p.k), format!("n={} k={} kunneth={kq}", code.css.n(), code.css.k()), Status::of(ok));
    rec.push("hgp4-distances[L=2]", "four cyclic rep L=2", "predicted", format!("dz={:?} dx={:?}", p.d_z, p.d_x), Status::ReportedOnly);
    for kind in [Kind::Z, Kind::X] {
        let set = canonical_logicals(&code, kind)?;
        let weights_ok = set.operators.iter().all(|o| o.vector.weight() == 4);
        rec.push(format!("hgp4-canonical-{}", kind.as_str()), "four cyclic rep L=2", "6 independent, weight 4", format!("{} operators", set.len()), Status::of(set.len() == 6 && weights_ok));
    }
    Ok(())
}

fn confinement(report: &mut VerificationReport, config: &VerifyConfig) -> Result<()> {
    let mut rec = Recorder::new(report);
    let code = cyclic_product(3)?;
    let cube: ConfinementFn = "x^3/4".parse()?;
    let r = confinement_scan(&code.css, Kind::Z, 4, &cube, 2, &ScanOptions::default())?;
    rec.push("confine-3d[toric L=2]", "Z errors up to weight 4, t=2", "0 violations of f(x)=x^3/4", format!("{} violations in {} errors", r.violation_count, r.errors_scanned), Status::of(r.violation_count == 0 && r.complete && r.exhaustive));
    let s = soundness_scan(&code.css, Kind::Z, 2, &cube, 4, &ScanOptions::default())?;
    rec.push("soundness-3d[toric L=2]", "syndromes of weight < 2", "0 violations of f(x)=x^3/4", format!("{} violations", s.violations.len()), Status::of(s.violations.is_empty()));

    for (f, d, expected) in [("x^3/4", 9, 3), ("x^2/4", 9, 4), ("x", 11, 5)] {
        let fun: ConfinementFn = f.parse()?;
        let v = barrier_bound_from_confinement(2, &fun, d)?;
        rec.push(format!("confine-barrier-bound[{f},d={d}]"), format!("f={f}"), format!("= {expected}"), v.to_string(), Status::of(v == expected));
    }

    let comp = composite_repetition(2)?;
    let lay = CompositeLayout { len: 2 };
    let css = CssCode::from_classical(&comp);
    let e = BitVector::from_indices(lay.n(), (0..lay.snake_len()).map(|t| lay.snake(t)));
    let eval = evaluate_error(&css, Kind::Z, &e, DEFAULT_COSET_CAP)?;
    let linear: ConfinementFn = "x".parse()?;
    let violation = is_confinement_violation(&eval, &linear, 4);
    rec.push(
        "composite-counterexample[L=2]",
        "whole chain flipped, f(x)=x, t=4",
        "syndrome <= 2 and reduced weight >= 4",
        format!("syndrome={} reduced={}", eval.syndrome_weight, eval.reduced_weight),
        Status::of(eval.syndrome_weight <= 2 && eval.reduced_weight >= 4 && violation),
    );
    let v = code_barrier_exact(CodeRef::Classical(&comp), &config.exact)?.value;
    rec.push("composite-barrier[L=2]", "exact code barrier", ">= 2", v.to_string(), Status::of(v >= 2));

    let cyc = repetition_code(5, true)?;
    let exp = expansion_scan(&cyc, 2, DEFAULT_SUBSET_CAP)?;
    let got: Vec<(usize, usize)> = exp.per_size.iter().map(|p| (p.min_neighbors, p.min_unique)).collect();
    rec.push("expansion[cyclic L=5]", "subset sizes 1..2", "(N,U) = (2,2), (3,2)", format!("{got:?}"), Status::of(got == [(2, 2), (3, 2)]));
    let g = random_biregular(8, 3, 4, config.seed)?;
    let exp = expansion_scan(&g, 4, DEFAULT_SUBSET_CAP)?;
    let ok = exp.per_size.iter().all(|p| p.min_unique <= p.min_neighbors && p.min_neighbors <= exp.w * p.size);
    rec.push("expansion[biregular 3,4]", "n=8, subset sizes 1..4", "U <= N <= w s", format!("{:?}", exp.per_size.iter().map(|p| (p.min_neighbors, p.min_unique)).collect::<Vec<_>>()), Status::of(ok));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_lists_valid_names() {
        let err = run_verify("nope", &VerifyConfig::default()).unwrap_err();
        let msg = err.to_string();
        assert!(SUITES.iter().all(|s| msg.contains(s)), "{msg}");
    }

    #[test]
    fn empty_and_small_reports() {
        let mut r = VerificationReport::new("x", 1);
        let json: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(json["claims"].as_array().unwrap().len(), 0);
        r.claims.push(ClaimRecord {
            id: "a".into(),
            inputs: "i, j".into(),
            analytic_bound: ">= 1".into(),
            measured: "2".into(),
            status: Status::Pass,
            runtime_ms: 0,
        });
        assert!(emit_report(&r, Format::Table).unwrap().lines().nth(1).unwrap().starts_with('✓'));
        r.claims.push(r.claims[0].clone());
        let csv = emit_report(&r, Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("\"i, j\""));
    }

    #[test]
    fn structure_suite_passes() {
        let r = run_verify("hgp4-structure", &VerifyConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
