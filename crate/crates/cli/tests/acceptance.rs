//! Acceptance criteria, each checked against brute-force oracles written here and not
//! shared with the library. Prints one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use barriers_core::barrier::{barrier_best_first, code_barrier_exact, BestFirstConfig, CodeRef, ExactConfig, PauliPath};
use barriers_core::classical::{expansion_scan, random_biregular, CompositeLayout, DEFAULT_SUBSET_CAP};
use barriers_core::confinement::{barrier_bound_from_confinement, confinement_scan, evaluate_error, is_confinement_violation, ConfinementFn, ScanOptions, DEFAULT_COSET_CAP};
use barriers_core::deform::{select_fold, slice_deform};
use barriers_core::hgp::{predict_params3, predict_params4, Side};
use barriers_core::logicals::canonical_logicals;
use barriers_core::tensor::{bound_ledger, TensorProductCode};
use barriers_core::{composite_repetition, hgp2, hgp3, hgp4, repetition_code, BitMatrix, BitVector, ChainComplex, ClassicalCode, CssCode, HgpCode, Kind};

type Outcome = Result<String, String>;

/// Name, check and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------- dense GF(2) oracle over packed words ----------

type Row = Vec<u64>;

fn pack(len: usize, ones: impl IntoIterator<Item = usize>) -> Row {
    let mut w = vec![0u64; len.div_ceil(64)];
    for i in ones {
        w[i / 64] |= 1 << (i % 64);
    }
    w
}

fn rows_of(m: &BitMatrix) -> Vec<Row> {
    (0..m.rows()).map(|r| pack(m.cols(), (0..m.cols()).filter(|&c| m.get(r, c)))).collect()
}

fn cols_of(m: &BitMatrix) -> Vec<Row> {
    (0..m.cols()).map(|c| pack(m.rows(), (0..m.rows()).filter(|&r| m.get(r, c)))).collect()
}

fn vec_row(v: &BitVector) -> Row {
    pack(v.len(), v.iter_ones())
}

fn dot(a: &Row, b: &Row) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 1
}

fn orthogonal(a: &[Row], b: &[Row]) -> bool {
    a.iter().all(|x| b.iter().all(|y| !dot(x, y)))
}

fn syndrome_weight(h: &[Row], v: &Row) -> usize {
    h.iter().filter(|r| dot(r, v)).count()
}

fn rank(rows: &[Row]) -> usize {
    let mut basis: Vec<(usize, Row)> = Vec::new();
    for r in rows {
        let mut r = r.clone();
        for (p, b) in &basis {
            if r[p / 64] >> (p % 64) & 1 == 1 {
                r.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        if let Some(wi) = r.iter().position(|&x| x != 0) {
            let p = wi * 64 + r[wi].trailing_zeros() as usize;
            basis.push((p, r));
        }
    }
    basis.len()
}

fn nontrivial(check: &[Row], stab: &[Row], v: &Row) -> bool {
    if syndrome_weight(check, v) != 0 {
        return false;
    }
    let mut with = stab.to_vec();
    with.push(v.clone());
    rank(&with) > rank(stab)
}

// ---------- hypercube oracle for n <= 24 ----------

fn col_masks(h: &BitMatrix) -> Vec<u64> {
    assert!(h.rows() <= 64);
    (0..h.cols()).map(|c| (0..h.rows()).filter(|&r| h.get(r, c)).fold(0u64, |m, r| m | 1 << r)).collect()
}

/// Syndrome of every state, indexed by bit mask.
fn syndrome_table(cols: &[u64]) -> Vec<u64> {
    let n = cols.len();
    assert!(n <= 24);
    let mut table = vec![0u64; 1 << n];
    let (mut g, mut s) = (0usize, 0u64);
    for i in 1usize..1 << n {
        let b = i.trailing_zeros() as usize;
        g ^= 1 << b;
        s ^= cols[b];
        table[g] = s;
    }
    table
}

fn energy_table(cols: &[u64]) -> Vec<u8> {
    syndrome_table(cols).into_iter().map(|s| s.count_ones() as u8).collect()
}

/// Min over paths from zero of the max energy en route, for every state.
fn bottleneck_labels(n: usize, energy: &[u8]) -> Vec<u8> {
    let mut label = vec![u8::MAX; 1 << n];
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); 256];
    label[0] = energy[0];
    buckets[energy[0] as usize].push(0);
    for level in 0..256 {
        while let Some(s) = buckets[level].pop() {
            for b in 0..n {
                let t = s ^ (1 << b);
                if label[t as usize] == u8::MAX {
                    let l = (level as u8).max(energy[t as usize]);
                    label[t as usize] = l;
                    buckets[l as usize].push(t);
                }
            }
        }
    }
    label
}

fn mask_basis(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut r = r;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn in_mask_span(basis: &[u64], v: u64) -> bool {
    basis.iter().fold(v, |r, &b| r.min(r ^ b)) == 0
}

fn row_masks(m: &BitMatrix) -> Vec<u64> {
    (0..m.rows()).map(|r| m.row(r).to_mask()).collect()
}

/// Exact barrier of the code: min label over nonzero states with zero syndrome outside
/// the stabilizer span.
fn code_barrier_oracle(check: &BitMatrix, stab: &BitMatrix) -> usize {
    let n = check.cols();
    let energy = energy_table(&col_masks(check));
    let labels = bottleneck_labels(n, &energy);
    let basis = mask_basis(&row_masks(stab));
    (1u64..1 << n)
        .filter(|&v| energy[v as usize] == 0 && !in_mask_span(&basis, v))
        .map(|v| labels[v as usize] as usize)
        .min()
        .expect("code has a nontrivial logical")
}

fn classical_barrier_oracle(h: &BitMatrix) -> usize {
    code_barrier_oracle(h, &BitMatrix::zeros(0, h.cols()))
}

fn classical_distance_oracle(h: &BitMatrix) -> usize {
    let cols = col_masks(h);
    let syn = syndrome_table(&cols);
    (1usize..1 << h.cols()).filter(|&v| syn[v] == 0).map(|v| v.count_ones() as usize).min().expect("k >= 1")
}

/// Smallest weight of a vector with zero `check` syndrome outside the span of `stab`.
fn quantum_distance_oracle(check: &BitMatrix, stab: &BitMatrix) -> usize {
    let n = check.cols();
    let checks = row_masks(check);
    let basis = mask_basis(&row_masks(stab));
    for w in 1..=n {
        for support in (0..n).combinations(w) {
            let v = support.iter().fold(0u64, |m, &i| m | 1 << i);
            if checks.iter().all(|r| (r & v).count_ones() % 2 == 0) && !in_mask_span(&basis, v) {
                return w;
            }
        }
    }
    unreachable!("no nontrivial logical")
}

// ---------- code builders ----------

fn cyc(l: usize) -> ClassicalCode {
    repetition_code(l, true).unwrap()
}

fn open(l: usize) -> ClassicalCode {
    repetition_code(l, false).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(m, n);
    for r in 0..m {
        for c in 0..n {
            h.set(r, c, rng.random_bool(0.5));
        }
    }
    h
}

fn random_factor(rng: &mut ChaCha8Rng) -> ClassicalCode {
    let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
    ClassicalCode::from_parity(random_matrix(rng, m, n)).unwrap()
}

/// Parity checks of the tensor product built row by row: `Ha ⊗ I` then `I ⊗ Hb`.
fn tensor_parity_oracle(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let (na, nb) = (a.cols(), b.cols());
    let mut rows = Vec::new();
    for i in 0..a.rows() {
        for j in 0..nb {
            rows.push(BitVector::from_indices(na * nb, (0..na).filter(|&k| a.get(i, k)).map(|k| k * nb + j)));
        }
    }
    for k in 0..na {
        for l in 0..b.rows() {
            rows.push(BitVector::from_indices(na * nb, (0..nb).filter(|&c| b.get(l, c)).map(|c| k * nb + c)));
        }
    }
    BitMatrix::from_rows(na * nb, rows).unwrap()
}

/// True when `v` sits in one qubit block and is constant along every check axis there.
fn single_slice_oracle(code: &HgpCode, v: &BitVector) -> Option<usize> {
    let blocks = code.css.blocks();
    let touched: Vec<usize> = (0..blocks.len())
        .filter(|&b| v.iter_ones().any(|i| i >= blocks[b].offset && i < blocks[b].offset + blocks[b].len))
        .collect();
    let [b] = touched[..] else { return None };
    let shape = &blocks[b].shape;
    let coords: Vec<Vec<usize>> = v
        .iter_ones()
        .map(|i| {
            let mut rest = i - blocks[b].offset;
            let mut c = vec![0; shape.len()];
            for ax in (0..shape.len()).rev() {
                c[ax] = rest % shape[ax];
                rest /= shape[ax];
            }
            c
        })
        .collect();
    let flat = code.qubit_patterns[b]
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Side::Check)
        .all(|(ax, _)| coords.iter().map(|c| c[ax]).all_equal());
    flat.then_some(b)
}

// ---------- criteria ----------

fn c1_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    for _ in 0..20 {
        let f: Vec<ClassicalCode> = (0..4).map(|_| random_factor(&mut rng)).collect();
        let codes = [
            ok(hgp2(&f[0], &f[1]))?,
            ok(hgp3(&f[0], &f[1], &f[2]))?,
            ok(hgp4(&f[0], &f[1], &f[2], &f[3]))?,
        ];
        for code in &codes {
            let css = &code.css;
            let (hx, hz) = (css.hx(), css.hz());
            ensure!(hx.cols() == hz.cols(), "check widths differ");
            ensure!(orthogonal(&rows_of(hx), &rows_of(hz)), "H_X H_Zᵀ != 0 for a {}D product", code.dim());
            if let Some(m) = css.meta_x() {
                ensure!(orthogonal(&rows_of(m), &cols_of(hx)), "meta_X H_X != 0 for a {}D product", code.dim());
            }
            if let Some(m) = css.meta_z() {
                ensure!(orthogonal(&rows_of(m), &cols_of(hz)), "meta_Z H_Z != 0 for a {}D product", code.dim());
            }
            let cx: &ChainComplex = &code.complex;
            for j in 1..cx.top() {
                ensure!(
                    orthogonal(&rows_of(cx.boundary(j)), &cols_of(cx.boundary(j + 1))),
                    "A_{j} A_{} != 0 for a {}D product",
                    j + 1,
                    code.dim()
                );
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} products"))
}

fn c2_params() -> Outcome {
    let c = cyc(2);
    let code = ok(hgp3(&c, &c, &c))?;
    let css = &code.css;
    let n = css.n();
    let k = n - rank(&rows_of(css.hx())) - rank(&rows_of(css.hz()));
    let dz = quantum_distance_oracle(css.hx(), css.hz());
    let dx = quantum_distance_oracle(css.hz(), css.hx());
    ensure!((n, k, dz, dx) == (24, 3, 4, 2), "3D oracle gives n={n} k={k} dz={dz} dx={dx}");
    let p = predict_params3(&c, &c, &c);
    ensure!((p.n, p.k, p.d_z, p.d_x) == (n, k, Some(dz), Some(dx)), "3D prediction {p:?}");
    ensure!(css.k() == k, "library k = {}", css.k());
    ensure!(ok(css.quantum_distance(Kind::Z))? == dz && ok(css.quantum_distance(Kind::X))? == dx, "library distances differ");

    let code4 = ok(hgp4(&c, &c, &c, &c))?;
    let css4 = &code4.css;
    let n4 = css4.n();
    let k4 = n4 - rank(&rows_of(css4.hx())) - rank(&rows_of(css4.hz()));
    // each factor complex has homology (1, 1); level 2 of the four-fold product picks C(4, 2) terms
    let kunneth = (0..16u32).filter(|m| m.count_ones() == 2).count();
    ensure!((n4, k4, kunneth) == (96, 6, 6), "4D oracle gives n={n4} k={k4} künneth={kunneth}");
    let p4 = predict_params4(&c, &c, &c, &c);
    ensure!((p4.n, p4.k) == (n4, k4), "4D prediction {p4:?}");
    ensure!(ok(code4.complex.homology_rank(code4.qubit_level))? == k4, "4D homology rank differs");
    Ok(format!("[[24,3]] dz={dz} dx={dx}; [[96,6]]"))
}

fn c3_kunneth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for trial in 0..20 {
        let mut ranks = Vec::new();
        let mut complexes = Vec::new();
        for _ in 0..2 {
            let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
            let h = random_matrix(&mut rng, m, n);
            let r = rank(&rows_of(&h));
            ranks.push([m - r, n - r]);
            complexes.push(ChainComplex::from_parity(&h));
        }
        let t = complexes[0].tensor(&complexes[1]);
        for j in 0..=2 {
            let expect: usize = (0..=1)
                .filter(|&a| j >= a && j - a <= 1)
                .map(|a| ranks[0][a] * ranks[1][j - a])
                .sum();
            let got = ok(t.homology_rank(j))?;
            ensure!(got == expect, "pair {trial}, level {j}: homology {got}, convolution {expect}");
        }
    }
    Ok("20 pairs".into())
}

fn c4_tensor_bounds() -> Outcome {
    let family = [("cyc2", cyc(2)), ("cyc3", cyc(3)), ("open2", open(2)), ("open3", open(3))];
    let mut conj = Vec::new();
    for ((na, a), (nb, b)) in family.iter().cartesian_product(family.iter()) {
        if a.n() * b.n() > 16 {
            continue;
        }
        let (d_a, d_b) = (classical_distance_oracle(a.parity()), classical_distance_oracle(b.parity()));
        let (e_a, e_b) = (classical_barrier_oracle(a.parity()), classical_barrier_oracle(b.parity()));
        let v = classical_barrier_oracle(&tensor_parity_oracle(a.parity(), b.parity()));
        let upper = (d_b * e_a + e_b).min(d_a * e_b + e_a);
        ensure!(e_a.min(e_b) <= v, "{na}⊗{nb}: V={v} < min(E_a,E_b)={}", e_a.min(e_b));
        ensure!(d_a.min(d_b) <= v, "{na}⊗{nb}: V={v} < min(d_a,d_b)={}", d_a.min(d_b));
        ensure!(v <= upper, "{na}⊗{nb}: V={v} > strip bound {upper}");
        let ledger = ok(bound_ledger(a, b, true, &ExactConfig::default()))?;
        let measured = ledger.measured.as_ref().map(|m| m.value);
        ensure!(measured == Some(v), "{na}⊗{nb}: library measured {measured:?}, oracle {v}");
        ensure!(
            (ledger.d_a, ledger.d_b, ledger.e_a, ledger.e_b, ledger.upper_strip) == (d_a, d_b, e_a, e_b, upper),
            "{na}⊗{nb}: ledger sides differ from oracle"
        );
        conj.push(format!("{na}⊗{nb}:V={v}/conj={}", (d_a * e_b).min(d_b * e_a)));
    }
    Ok(format!("{} pairs; reported: {}", conj.len(), conj.join(" ")))
}

fn c5_scaling() -> Outcome {
    for l in 3..=5 {
        let v = classical_barrier_oracle(cyc(l).parity());
        ensure!(v == 2, "cyclic L={l}: oracle barrier {v}");
        let lib = ok(code_barrier_exact(CodeRef::Classical(&cyc(l)), &ExactConfig::default()))?.value;
        ensure!(lib == v, "cyclic L={l}: library barrier {lib}");
    }
    let mut vs = Vec::new();
    for l in [3, 4] {
        let v = classical_barrier_oracle(&tensor_parity_oracle(cyc(l).parity(), cyc(l).parity()));
        ensure!(v >= l, "2D L={l}: barrier {v} < {l}");
        let t = ok(TensorProductCode::build(&cyc(l), &cyc(l)))?;
        let lib = ok(code_barrier_exact(CodeRef::Classical(&t.code), &ExactConfig::default()))?.value;
        ensure!(lib == v, "2D L={l}: library barrier {lib}, oracle {v}");
        vs.push(v);
    }
    ensure!(vs[1] > vs[0], "2D barrier not increasing: {vs:?}");
    Ok(format!("1D = 2; 2D L=3 -> {}, L=4 -> {}", vs[0], vs[1]))
}

fn c6_canonical() -> Outcome {
    let c = cyc(2);
    let codes = [ok(hgp3(&c, &c, &c))?, ok(hgp4(&c, &c, &c, &c))?];
    let mut summary = Vec::new();
    for code in &codes {
        let css = &code.css;
        let (hx, hz) = (rows_of(css.hx()), rows_of(css.hz()));
        let k = css.n() - rank(&hx) - rank(&hz);
        for kind in [Kind::Z, Kind::X] {
            let (check, stab) = match kind {
                Kind::Z => (&hx, &hz),
                Kind::X => (&hz, &hx),
            };
            let set = ok(canonical_logicals(code, kind))?;
            ensure!(set.len() == k, "{}D {kind:?}: {} operators, k = {k}", code.dim(), set.len());
            let ops: Vec<Row> = set.operators.iter().map(|o| vec_row(&o.vector)).collect();
            for (o, r) in set.operators.iter().zip(&ops) {
                ensure!(syndrome_weight(check, r) == 0, "{}D {kind:?} {} has a syndrome", code.dim(), o.label_string());
            }
            let mut all = stab.clone();
            all.extend(ops.iter().cloned());
            ensure!(rank(&all) == rank(stab) + k, "{}D {kind:?}: operators dependent modulo stabilizers", code.dim());
            if code.dim() == 3 && kind == Kind::Z {
                for o in &set.operators {
                    ensure!(single_slice_oracle(code, &o.vector).is_some(), "3D Z {} spans several slices", o.label_string());
                }
            }
            summary.push(format!("{}D {}: {k}", code.dim(), kind.as_str()));
        }
    }
    Ok(summary.join(", "))
}

fn random_flips(target: &BitVector, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut flips: Vec<usize> = target.iter_ones().collect();
    flips.shuffle(rng);
    for _ in 0..rng.random_range(0..=6) {
        let q = rng.random_range(0..target.len());
        let i = rng.random_range(0..=flips.len());
        flips.insert(i, q);
        let j = rng.random_range(i + 1..=flips.len());
        flips.insert(j, q);
    }
    flips
}

fn c7_deform() -> Outcome {
    let c = cyc(2);
    let code = ok(hgp3(&c, &c, &c))?;
    let n = code.css.n();
    let (hx, hz) = (rows_of(code.css.hx()), rows_of(code.css.hz()));
    let z = ok(canonical_logicals(&code, Kind::Z))?;
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for i in 0..100 {
        let op = &z.operators[i % z.len()];
        let axis = op.family - 1;
        let path = ok(PauliPath::from_flips(n, &random_flips(&op.vector, &mut rng)))?;
        ensure!(path.verify(&op.vector), "generated path misses its target");
        let (fold, alpha) = ok(select_fold(&code, &op.vector, axis))?;
        let delta = code.factors[axis].parity();
        ensure!(
            (0..delta.cols()).all(|col| (0..delta.rows()).filter(|&r| delta.get(r, col) && fold.get(r)).count() % 2 == 0),
            "fold is not in the kernel of the transposed factor"
        );
        ensure!(fold.get(alpha), "alpha outside the fold");
        let out = ok(slice_deform(&code, &path, &fold, alpha, axis))?;
        ensure!(out.len() == path.len(), "deformed path has a different length");
        for (s, (p, q)) in path.steps().iter().zip(out.steps()).enumerate() {
            let (ep, eq) = (syndrome_weight(&hx, &vec_row(p)), syndrome_weight(&hx, &vec_row(q)));
            ensure!(eq <= ep, "path {i} step {s}: energy {eq} > {ep}");
        }
        for w in out.steps().windows(2) {
            ensure!(w[0].distance(&w[1]) <= 1, "path {i}: deformed steps differ in more than one qubit");
        }
        let end = out.endpoint().expect("nonempty path");
        ensure!(nontrivial(&hx, &hz, &vec_row(end)), "path {i}: deformed endpoint is trivial");
        ensure!(single_slice_oracle(&code, end) == Some(axis), "path {i}: endpoint not a single slice of block {axis}");
    }
    Ok("100 paths".into())
}

fn c8_theorems() -> Outcome {
    let o2 = open(2);
    let five = ok(hgp2(&o2, &o2))?;
    ensure!(five.css.n() == 5 && five.css.k() == 1, "[[5,1,2]] has n={} k={}", five.css.n(), five.css.k());
    let v5 = code_barrier_oracle(five.css.hx(), five.css.hz());
    let lib = ok(code_barrier_exact(CodeRef::Css(&five.css, Kind::Z), &ExactConfig::default()))?.value;
    ensure!(lib == v5, "[[5,1,2]]: library {lib}, oracle {v5}");
    // standard products are bounded by the classical barriers of their factors
    let bound5 = classical_barrier_oracle(o2.parity());
    ensure!(v5 >= bound5, "[[5,1,2]]: barrier {v5} < factor barrier {bound5}");

    let c = cyc(2);
    let code = ok(hgp3(&c, &c, &c))?;
    let bound = code.factors.iter().map(|f| classical_distance_oracle(f.parity())).min().unwrap();
    let energy = energy_table(&col_masks(code.css.hx()));
    let labels = bottleneck_labels(code.css.n(), &energy);
    let z = ok(canonical_logicals(&code, Kind::Z))?;
    let energy_fn = barriers_core::barrier::SyndromeEnergy::css(&code.css, Kind::Z);
    let mut reported = Vec::new();
    for op in &z.operators {
        let exact = labels[op.vector.to_mask() as usize] as usize;
        let est = ok(barrier_best_first(&energy_fn, &op.vector, &BestFirstConfig::default()))?.value;
        ensure!(exact >= bound, "{}: exact barrier {exact} < min d = {bound}", op.label_string());
        ensure!(est >= exact, "{}: best-first {est} below the exact barrier {exact}", op.label_string());
        reported.push(format!("{}:{est}<=w{}", op.label_string(), op.vector.weight()));
    }
    Ok(format!("[[5,1,2]] V={v5}>={bound5}; 3D >= {bound}; reported: {}", reported.join(" ")))
}

fn c9_confinement() -> Outcome {
    let c = cyc(2);
    let code = ok(hgp3(&c, &c, &c))?;
    let css = &code.css;
    let n = css.n();
    let f: ConfinementFn = ok("x^3/4".parse())?;
    let (w_max, t) = (4, 2);
    let report = ok(confinement_scan(css, Kind::Z, w_max, &f, t, &ScanOptions::default()))?;
    ensure!(report.complete && report.exhaustive, "scan incomplete");

    let cols = col_masks(css.hx());
    let syn = syndrome_table(&cols);
    let mut min_w = vec![u8::MAX; 1 << css.hx().rows()];
    for (v, &s) in syn.iter().enumerate() {
        let slot = &mut min_w[s as usize];
        *slot = (*slot).min(v.count_ones() as u8);
    }
    let (mut scanned, mut violations) = (0, 0);
    for w in 1..=w_max {
        for support in (0..n).combinations(w) {
            let v = support.iter().fold(0usize, |m, &i| m | 1 << i);
            let s = syn[v];
            let red = min_w[s as usize] as usize;
            let sw = s.count_ones() as usize;
            scanned += 1;
            if red <= t && ((sw * sw * sw) as f64 / 4.0) < red as f64 {
                violations += 1;
            }
        }
    }
    ensure!(violations == 0, "oracle finds {violations} violations");
    ensure!(report.violation_count == 0, "library reports {} violations", report.violation_count);
    ensure!(report.errors_scanned == scanned, "library scanned {}, oracle {scanned}", report.errors_scanned);

    let cube = barrier_bound_from_confinement(2, &f, 9).map_err(|e| e.to_string())?;
    let square = barrier_bound_from_confinement(2, &ok("x^2/4".parse())?, 9).map_err(|e| e.to_string())?;
    let least = |p: u32| (0usize..).find(|&x| x.pow(p) >= 16).unwrap();
    ensure!((cube, square) == (3, 4) && (least(3), least(2)) == (3, 4), "inverse values {cube}, {square}");
    Ok(format!("{scanned} errors, 0 violations; f⁻¹ at d=9: {cube}, {square}"))
}

fn c10_composite() -> Outcome {
    let code = ok(composite_repetition(2))?;
    let lay = CompositeLayout { len: 2 };
    let h = code.parity();
    let e = BitVector::from_indices(lay.n(), (0..lay.snake_len()).map(|t| lay.snake(t)));
    let syn = syndrome_table(&col_masks(h));
    let s = syn[e.to_mask() as usize];
    let red = (0..syn.len()).filter(|&v| syn[v] == s).map(|v| v.count_ones() as usize).min().unwrap();
    let sw = s.count_ones() as usize;
    ensure!(sw <= 2 && red >= 4, "snake error has syndrome {sw}, reduced weight {red}");

    let css = CssCode::from_classical(&code);
    let eval = ok(evaluate_error(&css, Kind::Z, &e, DEFAULT_COSET_CAP))?;
    ensure!((eval.syndrome_weight, eval.reduced_weight) == (sw, red), "library evaluation {eval:?}");
    let linear: ConfinementFn = ok("x".parse())?;
    ensure!(is_confinement_violation(&eval, &linear, 4), "not recorded as a violation");

    let v = classical_barrier_oracle(h);
    let lib = ok(code_barrier_exact(CodeRef::Classical(&code), &ExactConfig::default()))?.value;
    ensure!(v >= 2 && lib == v, "code barrier: oracle {v}, library {lib}");
    Ok(format!("|σ|={sw}, |e|red={red}, barrier {v}"))
}

fn expansion_oracle(h: &BitMatrix, max_size: usize) -> Vec<(usize, usize, usize)> {
    let n = h.cols();
    let cols: Vec<Vec<usize>> = (0..n).map(|c| (0..h.rows()).filter(|&r| h.get(r, c)).collect()).collect();
    (1..=max_size.min(n))
        .map(|s| {
            let (mut min_n, mut min_u) = (usize::MAX, usize::MAX);
            for set in (0..n).combinations(s) {
                let mut count = vec![0usize; h.rows()];
                for &c in &set {
                    for &r in &cols[c] {
                        count[r] += 1;
                    }
                }
                min_n = min_n.min(count.iter().filter(|&&x| x > 0).count());
                min_u = min_u.min(count.iter().filter(|&&x| x == 1).count());
            }
            (s, min_n, min_u)
        })
        .collect()
}

fn c11_expansion() -> Outcome {
    let rep = cyc(5);
    let report = ok(expansion_scan(&rep, 5, DEFAULT_SUBSET_CAP))?;
    let got: Vec<_> = report.per_size.iter().map(|p| (p.size, p.min_neighbors, p.min_unique)).collect();
    ensure!(got == expansion_oracle(rep.parity(), 5), "cyclic L=5 minima {got:?}");
    ensure!(got[0] == (1, 2, 2) && got[1].2 == 2, "cyclic L=5 listed minima {got:?}");
    let listed = got[..2].to_vec();

    let g = ok(random_biregular(8, 3, 4, 7))?;
    let report = ok(expansion_scan(&g, 8, DEFAULT_SUBSET_CAP))?;
    let got: Vec<_> = report.per_size.iter().map(|p| (p.size, p.min_neighbors, p.min_unique)).collect();
    ensure!(got == expansion_oracle(g.parity(), 8), "biregular minima {got:?}");
    ensure!(report.w == 3, "biregular w = {}", report.w);
    for &(s, nb, u) in &got {
        ensure!(u <= nb && nb <= 3 * s, "size {s}: |U|={u} |N|={nb}");
    }
    Ok(format!("L=5 (size, |N|, |U|) {listed:?}; biregular {} sizes", got.len()))
}

fn c12_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_barriers-lab"))
            .args(["verify", "--suite", "all-desk", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure!(a.status.success() && b.status.success(), "verify exited with {:?}", a.status.code());
    ensure!(!a.stdout.is_empty() && a.stdout == b.stdout, "outputs differ");
    let _: serde_json::Value = ok(serde_json::from_slice(&a.stdout))?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("algebraic identities", c1_algebra, 10),
        ("parameter formulas", c2_params, 60),
        ("kunneth", c3_kunneth, 10),
        ("tensor-product bounds", c4_tensor_bounds, 300),
        ("repetition scaling", c5_scaling, 180),
        ("canonical logical sets", c6_canonical, 30),
        ("slice deformation", c7_deform, 120),
        ("barrier lower bounds", c8_theorems, 300),
        ("confinement", c9_confinement, 300),
        ("composite counterexample", c10_composite, 60),
        ("expansion", c11_expansion, 60),
        ("determinism", c12_determinism, 300),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("took {elapsed:.1?}, limit {limit} s")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => {
                failed += 1;
                ("FAIL", e.clone())
            }
        };
        println!("{tag} {:>2} {name} ({:.2} s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
