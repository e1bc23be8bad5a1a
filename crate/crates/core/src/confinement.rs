//! Reduced weights, confinement and soundness scans.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::Serialize;

use crate::css::{CssCode, Kind};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};

/// Monotone function `f(x) = c * x^p / q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfinementFn {
    pub coef: f64,
    pub power: u32,
    pub divisor: f64,
}

impl ConfinementFn {
    pub fn new(coef: f64, power: u32, divisor: f64) -> Result<Self> {
        if !(coef > 0.0 && divisor > 0.0 && power >= 1) {
            return Err(Error::InvalidArgument("f must be c*x^p/q with c, q > 0 and p >= 1".into()));
        }
        Ok(ConfinementFn { coef, power, divisor })
    }

    pub fn eval(&self, x: usize) -> f64 {
        self.coef * (x as f64).powi(self.power as i32) / self.divisor
    }
}

impl fmt::Display for ConfinementFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef != 1.0 {
            write!(f, "{}*", self.coef)?;
        }
        f.write_str("x")?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        if self.divisor != 1.0 {
            write!(f, "/{}", self.divisor)?;
        }
        Ok(())
    }
}

impl FromStr for ConfinementFn {
    type Err = Error;

    /// Accepts `x`, `x^3/4`, `2*x`, `0.5*x^2`, `x/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse f = {s:?}; expected the form c*x^p/q"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, divisor) = match compact.split_once('/') {
            Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| bad())?),
            None => (compact.clone(), 1.0),
        };
        let (coef, rest) = match num.split_once('*') {
            Some((c, r)) => (c.parse::<f64>().map_err(|_| bad())?, r.to_string()),
            None => (1.0, num),
        };
        let power = match rest.strip_prefix('x').ok_or_else(bad)? {
            "" => 1,
            p => p.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?,
        };
        ConfinementFn::new(coef, power, divisor)
    }
}

/// Least integer `x` with `f(x) >= (d - 1) / 2`.
pub fn barrier_bound_from_confinement(t: usize, f: &ConfinementFn, d: usize) -> Result<usize> {
    if t > d {
        return Err(Error::InvalidArgument(format!("confinement range t = {t} exceeds the distance d = {d}")));
    }
    let w = d.saturating_sub(1) as f64 / 2.0;
    (0..=d.max(1)).find(|&x| f.eval(x) >= w).ok_or_else(|| Error::InvalidArgument(format!("f never reaches {w}")))
}

pub const DEFAULT_COSET_CAP: u64 = 1 << 20;

/// Minimum weight over cosets `e + ker(H)`.
///
/// Exhaustive when `2^dim ker(H)` fits under the cap, otherwise a greedy descent that
/// only gives an upper estimate.
#[derive(Clone, Debug)]
pub struct CosetMinimizer {
    n: usize,
    words: usize,
    basis: Vec<u64>,
    dim: usize,
    exhaustive: bool,
}

impl CosetMinimizer {
    pub fn new(check: &BitMatrix, cap: u64) -> Self {
        let kernel = check.kernel_basis();
        let n = check.cols();
        let words = n.div_ceil(64).max(1);
        let mut basis = Vec::with_capacity(kernel.len() * words);
        for v in &kernel {
            basis.extend_from_slice(v.words());
            basis.resize(basis.len() + words - v.words().len(), 0);
        }
        let dim = kernel.len();
        let exhaustive = dim < 64 && (1u64 << dim) <= cap;
        CosetMinimizer {
            n,
            words,
            basis,
            dim,
            exhaustive,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn kernel_dim(&self) -> usize {
        self.dim
    }

    fn vector(&self, i: usize) -> &[u64] {
        &self.basis[i * self.words..(i + 1) * self.words]
    }

    pub fn minimize(&self, e: &BitVector) -> usize {
        assert_eq!(e.len(), self.n);
        let mut cur: Vec<u64> = e.words().to_vec();
        cur.resize(self.words, 0);
        let weight = |v: &[u64]| v.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        let mut best = weight(&cur);
        if self.exhaustive {
            for i in 1u64..1 << self.dim {
                let b = self.vector(i.trailing_zeros() as usize);
                for (c, x) in cur.iter_mut().zip(b) {
                    *c ^= x;
                }
                best = best.min(weight(&cur));
            }
        } else {
            loop {
                let mut improved = false;
                for i in 0..self.dim {
                    let trial: Vec<u64> = cur.iter().zip(self.vector(i)).map(|(a, b)| a ^ b).collect();
                    let w = weight(&trial);
                    if w < best {
                        best = w;
                        cur = trial;
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
        }
        best
    }
}

/// Exact reduced weight of `e`: the minimum weight of an error with the same syndrome.
pub fn reduced_weight(css: &CssCode, e: &BitVector, kind: Kind) -> Result<usize> {
    reduced_weight_with_cap(css, e, kind, DEFAULT_COSET_CAP)
}

pub fn reduced_weight_with_cap(css: &CssCode, e: &BitVector, kind: Kind, cap: u64) -> Result<usize> {
    if e.len() != css.n() {
        return Err(crate::error::mismatch("reduced_weight", format!("error of length {}", e.len()), format!("n = {}", css.n())));
    }
    let m = CosetMinimizer::new(css.check(kind), cap);
    if !m.is_exhaustive() {
        return Err(Error::TooLarge {
            what: "coset enumeration".into(),
            required: format!("2^{}", m.kernel_dim()),
            cap: cap.to_string(),
        });
    }
    Ok(m.minimize(e))
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub coset_cap: u64,
    pub budget: Option<Duration>,
    /// Upper limit on the number of violations listed individually.
    pub max_listed: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            coset_cap: DEFAULT_COSET_CAP,
            budget: None,
            max_listed: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorEvaluation {
    pub support: Vec<usize>,
    pub weight: usize,
    pub syndrome_weight: usize,
    pub reduced_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfinementPoint {
    pub syndrome_weight: usize,
    pub max_reduced_weight: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfinementReport {
    pub kind: Kind,
    pub w_max: usize,
    pub t: usize,
    pub f: String,
    pub errors_scanned: usize,
    pub points: Vec<ConfinementPoint>,
    pub violation_count: usize,
    pub violations: Vec<ErrorEvaluation>,
    /// Reduced weights were computed by full coset enumeration.
    pub exhaustive: bool,
    /// Every error up to `w_max` was visited within the budget.
    pub complete: bool,
}

/// Violation test for one error: `|e|^red <= t` and `f(|σ(e)|) < |e|^red`.
pub fn is_confinement_violation(eval: &ErrorEvaluation, f: &ConfinementFn, t: usize) -> bool {
    eval.reduced_weight <= t && f.eval(eval.syndrome_weight) < eval.reduced_weight as f64
}

pub fn evaluate_error(css: &CssCode, kind: Kind, e: &BitVector, cap: u64) -> Result<ErrorEvaluation> {
    Ok(ErrorEvaluation {
        support: e.iter_ones().collect(),
        weight: e.weight(),
        syndrome_weight: css.energy(kind, e)?,
        reduced_weight: reduced_weight_with_cap(css, e, kind, cap)?,
    })
}

struct Sweep<'a> {
    css: &'a CssCode,
    kind: Kind,
    minimizer: CosetMinimizer,
    cache: HashMap<BitVector, usize>,
    w_q: usize,
}

impl<'a> Sweep<'a> {
    fn new(css: &'a CssCode, kind: Kind, cap: u64) -> Self {
        Sweep {
            css,
            kind,
            minimizer: CosetMinimizer::new(css.check(kind), cap),
            cache: HashMap::new(),
            w_q: css.check(kind).max_column_weight(),
        }
    }

    /// Visits all errors of weight `1..=w_max` in lexicographic order of supports.
    fn run(
        &mut self,
        w_max: usize,
        budget: Option<Duration>,
        mut visit: impl FnMut(&BitVector, &BitVector, usize),
    ) -> Result<(usize, bool)> {
        let start = Instant::now();
        let n = self.css.n();
        let mut scanned = 0;
        for w in 1..=w_max.min(n) {
            for support in (0..n).combinations(w) {
                if budget.is_some_and(|b| start.elapsed() > b) {
                    return Ok((scanned, false));
                }
                let e = BitVector::from_indices(n, support);
                let s = self.css.syndrome(self.kind, &e)?;
                if s.weight() > self.w_q * w {
                    return Err(Error::Verification(format!("syndrome weight {} exceeds w_q * |e| = {}", s.weight(), self.w_q * w)));
                }
                let red = match self.cache.get(&s) {
                    Some(&r) => r,
                    None => {
                        let r = self.minimizer.minimize(&e);
                        self.cache.insert(s.clone(), r);
                        r
                    }
                };
                if red > w {
                    return Err(Error::Verification("reduced weight exceeds error weight".into()));
                }
                scanned += 1;
                visit(&e, &s, red);
            }
        }
        Ok((scanned, true))
    }
}

/// Exhaustive confinement scan over all errors of weight at most `w_max`.
pub fn confinement_scan(css: &CssCode, kind: Kind, w_max: usize, f: &ConfinementFn, t: usize, opts: &ScanOptions) -> Result<ConfinementReport> {
    let mut sweep = Sweep::new(css, kind, opts.coset_cap);
    let mut points: HashMap<usize, ConfinementPoint> = HashMap::new();
    let mut violations = Vec::new();
    let mut violation_count = 0;
    let (errors_scanned, complete) = sweep.run(w_max, opts.budget, |e, s, red| {
        let sw = s.weight();
        let p = points.entry(sw).or_insert(ConfinementPoint {
            syndrome_weight: sw,
            max_reduced_weight: 0,
            errors: 0,
        });
        p.max_reduced_weight = p.max_reduced_weight.max(red);
        p.errors += 1;
        let eval = ErrorEvaluation {
            support: e.iter_ones().collect(),
            weight: e.weight(),
            syndrome_weight: sw,
            reduced_weight: red,
        };
        if is_confinement_violation(&eval, f, t) {
            violation_count += 1;
            if violations.len() < opts.max_listed {
                violations.push(eval);
            }
        }
    })?;
    let mut points: Vec<_> = points.into_values().collect();
    points.sort_by_key(|p| p.syndrome_weight);
    Ok(ConfinementReport {
        kind,
        w_max,
        t,
        f: f.to_string(),
        errors_scanned,
        points,
        violation_count,
        violations,
        exhaustive: sweep.minimizer.is_exhaustive(),
        complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessPoint {
    pub syndrome_weight: usize,
    /// Largest minimum-weight preimage among the observed syndromes of this weight.
    pub max_min_weight: usize,
    pub syndromes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessViolation {
    pub syndrome: Vec<usize>,
    pub syndrome_weight: usize,
    pub min_weight: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub kind: Kind,
    pub t: usize,
    pub f: String,
    pub w_max: usize,
    pub errors_scanned: usize,
    pub points: Vec<SoundnessPoint>,
    pub violations: Vec<SoundnessViolation>,
    pub exhaustive: bool,
    pub complete: bool,
}

/// Compares, for each syndrome of weight `x < t` produced by an error of weight at most
/// `w_max`, the minimum weight of an error producing it against `f(x)`. The zero syndrome
/// is always included.
pub fn soundness_scan(css: &CssCode, kind: Kind, t: usize, f: &ConfinementFn, w_max: usize, opts: &ScanOptions) -> Result<SoundnessReport> {
    let mut sweep = Sweep::new(css, kind, opts.coset_cap);
    let mut seen: HashMap<BitVector, usize> = HashMap::new();
    if t > 0 {
        seen.insert(BitVector::zeros(css.check(kind).rows()), 0);
    }
    let (errors_scanned, complete) = sweep.run(w_max, opts.budget, |_, s, red| {
        if s.weight() < t {
            seen.entry(s.clone()).or_insert(red);
        }
    })?;
    let mut syndromes: Vec<(BitVector, usize)> = seen.into_iter().collect();
    syndromes.sort_by(|a, b| (a.0.weight(), &a.0).cmp(&(b.0.weight(), &b.0)));
    let mut points: Vec<SoundnessPoint> = Vec::new();
    let mut violations = Vec::new();
    for (s, min_w) in &syndromes {
        let x = s.weight();
        match points.last_mut() {
            Some(p) if p.syndrome_weight == x => {
                p.max_min_weight = p.max_min_weight.max(*min_w);
                p.syndromes += 1;
            }
            _ => points.push(SoundnessPoint {
                syndrome_weight: x,
                max_min_weight: *min_w,
                syndromes: 1,
            }),
        }
        if *min_w as f64 > f.eval(x) && violations.len() < opts.max_listed {
            violations.push(SoundnessViolation {
                syndrome: s.iter_ones().collect(),
                syndrome_weight: x,
                min_weight: *min_w,
            });
        }
    }
    Ok(SoundnessReport {
        kind,
        t,
        f: f.to_string(),
        w_max,
        errors_scanned,
        points,
        violations,
        exhaustive: sweep.minimizer.is_exhaustive(),
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::repetition_code;
    use crate::hgp::hgp3;

    fn toric3d() -> CssCode {
        let c = repetition_code(2, true).unwrap();
        hgp3(&c, &c, &c).unwrap().css
    }

    #[test]
    fn parse_functions() {
        let f: ConfinementFn = "x^3/4".parse().unwrap();
        assert_eq!((f.coef, f.power, f.divisor), (1.0, 3, 4.0));
        assert_eq!(f.to_string(), "x^3/4");
        assert_eq!("x".parse::<ConfinementFn>().unwrap().eval(7), 7.0);
        assert_eq!("2 * x".parse::<ConfinementFn>().unwrap().eval(3), 6.0);
        assert_eq!("0.5*x^2".parse::<ConfinementFn>().unwrap().eval(4), 8.0);
        assert!("y^2".parse::<ConfinementFn>().is_err());
        assert!("x^".parse::<ConfinementFn>().is_err());
    }

    #[test]
    fn bound_arithmetic() {
        let cube: ConfinementFn = "x^3/4".parse().unwrap();
        let square: ConfinementFn = "x^2/4".parse().unwrap();
        let lin: ConfinementFn = "x".parse().unwrap();
        assert_eq!(barrier_bound_from_confinement(2, &cube, 9).unwrap(), 3);
        assert_eq!(barrier_bound_from_confinement(2, &square, 9).unwrap(), 4);
        assert_eq!(barrier_bound_from_confinement(2, &lin, 11).unwrap(), 5);
        assert!(barrier_bound_from_confinement(12, &lin, 11).is_err());
    }

    #[test]
    fn reduced_weights() {
        let css = toric3d();
        let n = css.n();
        assert_eq!(reduced_weight(&css, &BitVector::zeros(n), Kind::Z).unwrap(), 0);
        let stab = css.hz().row(0).clone();
        assert_eq!(reduced_weight(&css, &stab, Kind::Z).unwrap(), 0);
        assert_eq!(reduced_weight(&css, &BitVector::unit(n, 5), Kind::Z).unwrap(), 1);
    }

    #[test]
    fn empty_scan() {
        let css = toric3d();
        let f: ConfinementFn = "x^3/4".parse().unwrap();
        let r = confinement_scan(&css, Kind::Z, 0, &f, 2, &ScanOptions::default()).unwrap();
        assert!(r.points.is_empty() && r.violations.is_empty());
        assert_eq!(r.errors_scanned, 0);
    }

    #[test]
    fn greedy_fallback_is_flagged() {
        let css = toric3d();
        let m = CosetMinimizer::new(css.hx(), 4);
        assert!(!m.is_exhaustive());
        assert!(m.minimize(&BitVector::unit(css.n(), 0)) <= 1);
        assert!(reduced_weight_with_cap(&css, &BitVector::unit(css.n(), 0), Kind::Z, 4).is_err());
    }
}
