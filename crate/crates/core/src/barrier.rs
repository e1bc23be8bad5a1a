//! Energy barriers: the minimum over single-flip paths from zero to a target of the
//! maximum energy met along the path.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classical::ClassicalCode;
use crate::css::{CssCode, Kind};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};

/// Sequence of configurations starting at zero; neighbours differ in at most one bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliPath {
    n: usize,
    steps: Vec<BitVector>,
}

impl PauliPath {
    pub fn new(n: usize, steps: Vec<BitVector>) -> Self {
        PauliPath { n, steps }
    }

    pub fn from_flips(n: usize, flips: &[usize]) -> Result<Self> {
        let mut cur = BitVector::zeros(n);
        let mut steps = vec![cur.clone()];
        for &i in flips {
            if i >= n {
                return Err(Error::InvalidPath(format!("flip index {i} out of range for n = {n}")));
            }
            cur.flip(i);
            steps.push(cur.clone());
        }
        Ok(PauliPath { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[BitVector] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn endpoint(&self) -> Option<&BitVector> {
        self.steps.last()
    }

    /// Checks the path invariants alone, without a target.
    pub fn check(&self) -> Result<()> {
        let first = self.steps.first().ok_or_else(|| Error::InvalidPath("path has no steps".into()))?;
        if self.steps.iter().any(|s| s.len() != self.n) {
            return Err(Error::InvalidPath(format!("step length differs from n = {}", self.n)));
        }
        if !first.is_zero() {
            return Err(Error::InvalidPath("path does not start at zero".into()));
        }
        if let Some(i) = self.steps.windows(2).position(|w| w[0].distance(&w[1]) > 1) {
            return Err(Error::InvalidPath(format!("steps {i} and {} differ in more than one bit", i + 1)));
        }
        Ok(())
    }

    pub fn verify(&self, target: &BitVector) -> bool {
        self.check().is_ok() && self.endpoint() == Some(target)
    }

    /// Flipped index of each move; repeated configurations are skipped.
    pub fn flips(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .filter_map(|w| w[0].xor(&w[1]).first_one())
            .collect()
    }

    pub fn max_energy<E: Energy + ?Sized>(&self, energy: &E) -> usize {
        self.steps.iter().map(|s| energy.energy(s)).max().unwrap_or(0)
    }

    pub fn energies<E: Energy + ?Sized>(&self, energy: &E) -> Vec<usize> {
        self.steps.iter().map(|s| energy.energy(s)).collect()
    }
}

pub trait Energy {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn energy(&self, x: &BitVector) -> usize;

    /// Energies of all `2^n` states indexed by bit mask.
    fn energy_table(&self) -> Vec<u32> {
        let n = self.len();
        (0..1u64 << n)
            .map(|m| self.energy(&BitVector::from_mask(n, m)) as u32)
            .collect()
    }
}

/// Syndrome weight `|H x|`.
#[derive(Clone, Debug)]
pub struct SyndromeEnergy {
    h: BitMatrix,
}

impl SyndromeEnergy {
    pub fn new(h: BitMatrix) -> Self {
        SyndromeEnergy { h }
    }

    pub fn classical(code: &ClassicalCode) -> Self {
        SyndromeEnergy::new(code.parity().clone())
    }

    pub fn css(code: &CssCode, kind: Kind) -> Self {
        SyndromeEnergy::new(code.check(kind).clone())
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }
}

impl Energy for SyndromeEnergy {
    fn len(&self) -> usize {
        self.h.cols()
    }

    fn energy(&self, x: &BitVector) -> usize {
        self.h.mat_vec(x).expect("state length matches the check matrix").weight()
    }

    fn energy_table(&self) -> Vec<u32> {
        let n = self.len();
        let cols = self.h.columns();
        let mut table = vec![0u32; 1 << n];
        let mut syndrome = BitVector::zeros(self.h.rows());
        let mut gray = 0usize;
        for i in 1..1usize << n {
            let bit = i.trailing_zeros() as usize;
            syndrome.xor_assign(&cols[bit]);
            gray ^= 1 << bit;
            table[gray] = syndrome.weight() as u32;
        }
        table
    }
}

/// Arbitrary energy function on vectors of length `n`.
pub struct FnEnergy<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&BitVector) -> usize> FnEnergy<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnEnergy { n, f }
    }
}

impl<F: Fn(&BitVector) -> usize> Energy for FnEnergy<F> {
    fn len(&self) -> usize {
        self.n
    }

    fn energy(&self, x: &BitVector) -> usize {
        (self.f)(x)
    }
}

pub enum Target<'a> {
    Vector(BitVector),
    Predicate(Box<dyn Fn(&BitVector) -> bool + 'a>),
}

impl Target<'_> {
    fn describe(&self) -> String {
        match self {
            Target::Vector(v) => format!("vector {v}"),
            Target::Predicate(_) => "code-level minimum".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BarrierResult {
    pub value: usize,
    pub exact: bool,
    pub target: String,
    /// Indices flipped along the witness path, in order.
    pub flips: Vec<usize>,
    #[serde(skip)]
    pub witness: PauliPath,
    /// Number of states settled by the search.
    pub explored: usize,
}

impl BarrierResult {
    pub fn endpoint(&self) -> &BitVector {
        self.witness.endpoint().expect("witness paths are nonempty")
    }
}

pub const DEFAULT_EXACT_CAP: usize = 22;

#[derive(Clone, Debug)]
pub struct ExactConfig {
    pub cap: usize,
    /// States the search may not enter.
    pub forbidden: Vec<BitVector>,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            cap: DEFAULT_EXACT_CAP,
            forbidden: Vec::new(),
        }
    }
}

fn witness_from_parents(n: usize, parent: &[u8], mut state: usize) -> PauliPath {
    let mut flips = Vec::new();
    while state != 0 {
        let bit = parent[state] as usize;
        flips.push(bit);
        state ^= 1 << bit;
    }
    flips.reverse();
    PauliPath::from_flips(n, &flips).expect("flip indices below n")
}

/// Exact bottleneck search over all `2^n` states.
///
/// States are settled in nondecreasing order of their bottleneck label using one FIFO
/// bucket per energy value; neighbours are generated in increasing flip index, so the
/// witness is deterministic.
pub fn barrier_exact<E: Energy + ?Sized>(energy: &E, target: &Target, config: &ExactConfig) -> Result<BarrierResult> {
    let n = energy.len();
    if n > config.cap || n > 32 {
        return Err(Error::TooLarge {
            what: "exact barrier search".into(),
            required: format!("n = {n}"),
            cap: format!("n = {}", config.cap.min(32)),
        });
    }
    if let Target::Vector(v) = target {
        if v.len() != n {
            return Err(crate::error::mismatch("barrier_exact", format!("target of length {}", v.len()), format!("n = {n}")));
        }
    }
    let table = energy.energy_table();
    let size = 1usize << n;
    let max_e = table.iter().copied().max().unwrap_or(0) as usize;

    let mut blocked = vec![false; size];
    for f in &config.forbidden {
        if f.len() == n && !f.is_zero() {
            blocked[f.to_mask() as usize] = true;
        }
    }
    let target_mask = match target {
        Target::Vector(v) => Some(v.to_mask() as usize),
        Target::Predicate(_) => None,
    };
    if target_mask.is_some_and(|t| blocked[t]) {
        return Err(Error::NoTarget);
    }

    let mut label = vec![u32::MAX; size];
    let mut parent = vec![0u8; size];
    let mut done = vec![false; size];
    let mut buckets: Vec<VecDeque<u32>> = vec![VecDeque::new(); max_e + 1];
    label[0] = table[0];
    buckets[table[0] as usize].push_back(0);
    let mut level = table[0] as usize;
    let mut explored = 0;

    while level <= max_e {
        let Some(s) = buckets[level].pop_front() else {
            level += 1;
            continue;
        };
        let s = s as usize;
        if done[s] {
            continue;
        }
        done[s] = true;
        explored += 1;
        let hit = match (target_mask, target) {
            (Some(t), _) => s == t,
            (None, Target::Predicate(p)) => p(&BitVector::from_mask(n, s as u64)),
            _ => unreachable!(),
        };
        if hit {
            let witness = witness_from_parents(n, &parent, s);
            return Ok(BarrierResult {
                value: label[s] as usize,
                exact: true,
                target: target.describe(),
                flips: witness.flips(),
                witness,
                explored,
            });
        }
        for bit in 0..n {
            let nb = s ^ (1 << bit);
            if done[nb] || blocked[nb] {
                continue;
            }
            let cand = (level as u32).max(table[nb]);
            if cand < label[nb] {
                label[nb] = cand;
                parent[nb] = bit as u8;
                buckets[cand as usize].push_back(nb as u32);
            }
        }
    }
    Err(Error::NoTarget)
}

/// The code whose barrier is requested, with the error type for CSS codes.
#[derive(Clone, Copy, Debug)]
pub enum CodeRef<'a> {
    Classical(&'a ClassicalCode),
    Css(&'a CssCode, Kind),
}

impl CodeRef<'_> {
    pub fn energy(&self) -> SyndromeEnergy {
        match *self {
            CodeRef::Classical(c) => SyndromeEnergy::classical(c),
            CodeRef::Css(c, kind) => SyndromeEnergy::css(c, kind),
        }
    }

    /// True for nonzero codewords, or logicals outside the stabilizer group.
    pub fn nontrivial_predicate(&self) -> Box<dyn Fn(&BitVector) -> bool + '_> {
        match *self {
            CodeRef::Classical(c) => Box::new(move |x: &BitVector| !x.is_zero() && c.is_codeword(x).unwrap_or(false)),
            CodeRef::Css(c, kind) => {
                let stab = c.stabilizers(kind).row_space();
                let check = c.check(kind);
                Box::new(move |x: &BitVector| {
                    !x.is_zero() && check.mat_vec(x).map(|s| s.is_zero()).unwrap_or(false) && !stab.contains(x)
                })
            }
        }
    }
}

/// Minimum barrier over all nontrivial logicals, found in one sweep.
pub fn code_barrier_exact(code: CodeRef, config: &ExactConfig) -> Result<BarrierResult> {
    let energy = code.energy();
    let pred = code.nontrivial_predicate();
    barrier_exact(&energy, &Target::Predicate(pred), config)
}

/// Random single-flip path ending at `target`: the target's support in random order,
/// interleaved with `detours` bits that are flipped and later flipped back.
pub fn random_path_to<R: Rng>(target: &BitVector, detours: usize, rng: &mut R) -> PauliPath {
    let n = target.len();
    let mut flips: Vec<usize> = target.iter_ones().collect();
    flips.shuffle(rng);
    for _ in 0..detours {
        if n == 0 {
            break;
        }
        let bit = rng.random_range(0..n);
        let first = rng.random_range(0..=flips.len());
        flips.insert(first, bit);
        let second = rng.random_range(first + 1..=flips.len());
        flips.insert(second, bit);
    }
    PauliPath::from_flips(n, &flips).expect("indices below n")
}

#[derive(Clone, Debug)]
pub struct BestFirstConfig {
    pub frontier_cap: usize,
    pub seed: u64,
    /// Weight of the Hamming distance to the target in the priority.
    pub heuristic_weight: usize,
    /// Only flip bits inside the target's support.
    pub restrict_to_support: bool,
}

impl Default for BestFirstConfig {
    fn default() -> Self {
        BestFirstConfig {
            frontier_cap: 1_000_000,
            seed: 0,
            heuristic_weight: 0,
            restrict_to_support: true,
        }
    }
}

struct Node {
    state: BitVector,
    label: usize,
    parent: Option<(usize, usize)>,
    closed: bool,
}

// (priority, energy, tie key, node, label at push time)
type HeapEntry = (usize, usize, u64, usize, usize);

/// Heuristic search for a low-barrier path to `target`.
///
/// Priority is the running maximum energy plus `heuristic_weight` times the Hamming
/// distance to the target; ties go to lower current energy, then to a seeded random key.
/// The value is an upper estimate of the barrier and is never flagged exact.
pub fn barrier_best_first<E: Energy + ?Sized>(energy: &E, target: &BitVector, config: &BestFirstConfig) -> Result<BarrierResult> {
    let n = energy.len();
    if target.len() != n {
        return Err(crate::error::mismatch("barrier_best_first", format!("target of length {}", target.len()), format!("n = {n}")));
    }
    let moves: Vec<usize> = if config.restrict_to_support {
        target.iter_ones().collect()
    } else {
        (0..n).collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<BitVector, usize> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<HeapEntry>> = BinaryHeap::new();

    let start = BitVector::zeros(n);
    let e0 = energy.energy(&start);
    nodes.push(Node {
        state: start.clone(),
        label: e0,
        parent: None,
        closed: false,
    });
    index.insert(start.clone(), 0);
    heap.push(Reverse((e0 + config.heuristic_weight * start.distance(target), e0, rng.random(), 0, e0)));
    let mut explored = 0;

    while let Some(Reverse((_, _, _, id, pushed_label))) = heap.pop() {
        if nodes[id].closed || nodes[id].label != pushed_label {
            continue;
        }
        nodes[id].closed = true;
        explored += 1;
        if nodes[id].state == *target {
            let mut flips = Vec::new();
            let mut cur = id;
            while let Some((p, bit)) = nodes[cur].parent {
                flips.push(bit);
                cur = p;
            }
            flips.reverse();
            let witness = PauliPath::from_flips(n, &flips)?;
            return Ok(BarrierResult {
                value: nodes[id].label,
                exact: false,
                target: format!("vector {target}"),
                flips,
                witness,
                explored,
            });
        }
        if nodes.len() > config.frontier_cap {
            return Err(Error::FrontierExhausted {
                explored,
                cap: config.frontier_cap,
            });
        }
        let label = nodes[id].label;
        for &bit in &moves {
            let mut next = nodes[id].state.clone();
            next.flip(bit);
            let e = energy.energy(&next);
            let cand = label.max(e);
            let nid = match index.get(&next) {
                Some(&nid) => {
                    if nodes[nid].closed || nodes[nid].label <= cand {
                        continue;
                    }
                    nodes[nid].label = cand;
                    nodes[nid].parent = Some((id, bit));
                    nid
                }
                None => {
                    let nid = nodes.len();
                    nodes.push(Node {
                        state: next.clone(),
                        label: cand,
                        parent: Some((id, bit)),
                        closed: false,
                    });
                    index.insert(next.clone(), nid);
                    nid
                }
            };
            let prio = cand + config.heuristic_weight * next.distance(target);
            heap.push(Reverse((prio, e, rng.random(), nid, cand)));
        }
    }
    Err(Error::FrontierExhausted {
        explored,
        cap: config.frontier_cap,
    })
}
