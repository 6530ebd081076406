//! Exact counting by deterministic, parallel search over independent sets.
//!
//! The search tree has one node per independent set; children extend a set by one
//! larger element, so elements are tried in ascending order and every dependent
//! prefix is pruned. The tree is cut at a fixed depth into subtree jobs (one per
//! include/exclude pattern of the first elements). Jobs run on a rayon pool and their
//! results are combined in job order by exact addition or concatenation, so neither
//! the output nor its order depends on the worker count.
//!
//! Bases come out in lexicographic order of their sorted element lists.

use std::sync::mpsc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::arith::{count_to_rational, lcm_of_denominators, parse_rational, BigCount, BigRational};
use crate::error::{Error, Result};
use crate::matroid::{ElementId, IndependenceState, Matroid};
use crate::subset::SubsetMask;

/// Largest ground set accepted by exhaustive enumeration.
pub const MAX_ENUMERATION: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    /// Number of leading elements whose include/exclude choices define the jobs.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            split_depth: 2,
        }
    }
}

impl SearchOptions {
    /// `workers` threads with enough jobs (about four per thread) to balance them.
    pub fn with_workers(workers: usize) -> Self {
        let workers = workers.max(1);
        let depth = (usize::BITS - (workers - 1).leading_zeros()) as usize + 2;
        SearchOptions {
            workers,
            split_depth: depth.max(Self::default().split_depth),
        }
    }

    /// Maps jobs to results in job order, on `workers` threads.
    pub(crate) fn map_ordered<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        if self.workers <= 1 || items.len() <= 1 {
            return items.into_iter().map(f).collect();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
            Err(_) => items.into_iter().map(f).collect(),
        }
    }
}

pub fn check_capacity(m: &Matroid) -> Result<()> {
    if m.ground_size() > MAX_ENUMERATION {
        return Err(Error::Capacity {
            what: "ground set size for exhaustive enumeration",
            got: m.ground_size(),
            limit: MAX_ENUMERATION,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Visit bases only.
    Bases,
    /// Visit every independent set of size at least `min_size`.
    Independent { min_size: usize },
}

trait Visitor: Send {
    fn visit(&mut self, set: SubsetMask, size: usize);
}

struct Job<V> {
    visitor: V,
    nodes: u64,
}

fn run<V, F>(m: &Matroid, opts: &SearchOptions, mode: Mode, make: F) -> Result<Vec<Job<V>>>
where
    V: Visitor,
    F: Fn() -> V + Sync + Send,
{
    check_capacity(m)?;
    let n = m.ground_size();
    let split = opts.split_depth.min(n);
    let jobs: Vec<u64> = (0..1u64 << split).collect();
    Ok(opts.map_ordered(jobs, |t| {
        let mut job = Job {
            visitor: make(),
            nodes: 0,
        };
        let mut st = m.independence_state();
        let mut prefix = SubsetMask::EMPTY;
        for k in 0..split {
            if (t >> (split - 1 - k)) & 1 == 0 {
                if !st.try_push(k) {
                    return job;
                }
                prefix.insert(k);
            }
        }
        let mut walker = Walker {
            st: st.as_mut(),
            n,
            d: m.full_rank(),
            mode,
            visitor: &mut job.visitor,
            nodes: 0,
        };
        walker.dfs(split, prefix);
        job.nodes = walker.nodes;
        job
    }))
}

struct Walker<'s, 'v, V> {
    st: &'s mut dyn IndependenceState,
    n: usize,
    d: usize,
    mode: Mode,
    visitor: &'v mut V,
    nodes: u64,
}

impl<V: Visitor> Walker<'_, '_, V> {
    fn dfs(&mut self, start: usize, set: SubsetMask) {
        self.nodes += 1;
        let size = self.st.len();
        match self.mode {
            Mode::Bases => {
                if size == self.d {
                    self.visitor.visit(set, size);
                    return;
                }
            }
            Mode::Independent { min_size } => {
                if size >= min_size {
                    self.visitor.visit(set, size);
                }
                if size == self.d {
                    return;
                }
            }
        }
        for e in start..self.n {
            if self.mode == Mode::Bases && size + (self.n - e) < self.d {
                break;
            }
            if self.st.try_push(e) {
                self.dfs(e + 1, set.with(e));
                self.st.pop();
            }
        }
    }
}

struct Collect(Vec<SubsetMask>);

impl Visitor for Collect {
    fn visit(&mut self, set: SubsetMask, _size: usize) {
        self.0.push(set);
    }
}

struct SizeCounts(Vec<u64>);

impl Visitor for SizeCounts {
    fn visit(&mut self, _set: SubsetMask, size: usize) {
        self.0[size] += 1;
    }
}

/// Every basis, each exactly once, in lexicographic order.
pub fn enumerate_bases(m: &Matroid, opts: &SearchOptions) -> Result<Vec<SubsetMask>> {
    let jobs = run(m, opts, Mode::Bases, || Collect(Vec::new()))?;
    Ok(jobs.into_iter().flat_map(|j| j.visitor.0).collect())
}

/// Delivers bases to `sink`. With `ordered` the order is the lexicographic order of
/// [`enumerate_bases`]; otherwise whole subtrees arrive as their jobs finish.
pub fn stream_bases(
    m: &Matroid,
    opts: &SearchOptions,
    ordered: bool,
    mut sink: impl FnMut(SubsetMask),
) -> Result<()> {
    if ordered {
        for b in enumerate_bases(m, opts)? {
            sink(b);
        }
        return Ok(());
    }
    check_capacity(m)?;
    let n = m.ground_size();
    let split = opts.split_depth.min(n);
    let (tx, rx) = mpsc::channel::<Vec<SubsetMask>>();
    std::thread::scope(|scope| {
        scope.spawn(move || {
            let single = SearchOptions {
                workers: 1,
                split_depth: 0,
            };
            let prefixes: Vec<u64> = (0..1u64 << split).collect();
            opts.map_ordered(prefixes, |t| {
                let keep: SubsetMask = (0..split)
                    .filter(|&k| (t >> (split - 1 - k)) & 1 == 0)
                    .collect();
                let drop = SubsetMask::range(0, split).difference(keep);
                let bases = subtree_bases(m, keep, drop, &single);
                let _ = tx.send(bases);
            });
        });
        for chunk in rx {
            for b in chunk {
                sink(b);
            }
        }
    });
    Ok(())
}

fn subtree_bases(
    m: &Matroid,
    keep: SubsetMask,
    drop: SubsetMask,
    opts: &SearchOptions,
) -> Vec<SubsetMask> {
    let mut st = m.independence_state();
    for e in keep.iter() {
        if !st.try_push(e) {
            return Vec::new();
        }
    }
    let mut out = Collect(Vec::new());
    let mut walker = Walker {
        st: st.as_mut(),
        n: m.ground_size(),
        d: m.full_rank(),
        mode: Mode::Bases,
        visitor: &mut out,
        nodes: 0,
    };
    let start = keep.union(drop).span();
    walker.dfs(start, keep);
    let _ = opts;
    out.0
}

/// Exact counts `I_0, …, I_d` of independent sets by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceProfile {
    pub d: usize,
    pub counts: Vec<BigCount>,
}

impl IndependenceProfile {
    pub fn new(counts: Vec<BigCount>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::input("a profile needs at least I_0"));
        }
        Ok(IndependenceProfile {
            d: counts.len() - 1,
            counts,
        })
    }

    /// Binomial profile of the boolean matroid `B_d`, which has every subset independent.
    pub fn boolean(d: usize) -> Self {
        let counts = (0..=d)
            .map(|k| crate::arith::binomial(d as u64, k as u64))
            .collect();
        IndependenceProfile { d, counts }
    }

    pub fn total(&self) -> BigCount {
        self.counts.iter().sum()
    }

    pub fn get(&self, k: usize) -> BigCount {
        self.counts.get(k).cloned().unwrap_or_default()
    }
}

pub fn independence_profile(m: &Matroid, opts: &SearchOptions) -> Result<IndependenceProfile> {
    Ok(independence_profile_with_nodes(m, opts)?.0)
}

/// The profile together with the number of search nodes visited.
pub fn independence_profile_with_nodes(
    m: &Matroid,
    opts: &SearchOptions,
) -> Result<(IndependenceProfile, u64)> {
    let d = m.full_rank();
    let jobs = run(m, opts, Mode::Independent { min_size: 0 }, || {
        SizeCounts(vec![0; d + 1])
    })?;
    let mut counts = vec![0u64; d + 1];
    let mut nodes = 0;
    for j in jobs {
        nodes += j.nodes;
        for (c, x) in counts.iter_mut().zip(j.visitor.0) {
            *c += x;
        }
    }
    let counts = counts.into_iter().map(BigUint::from).collect();
    Ok((IndependenceProfile { d, counts }, nodes))
}

/// All independent sets of size at least `min_size`, in search order.
pub fn independent_sets(
    m: &Matroid,
    min_size: usize,
    opts: &SearchOptions,
) -> Result<Vec<SubsetMask>> {
    let jobs = run(m, opts, Mode::Independent { min_size }, || {
        Collect(Vec::new())
    })?;
    Ok(jobs.into_iter().flat_map(|j| j.visitor.0).collect())
}

/// Positive weights on the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    values: Vec<BigRational>,
}

impl Weights {
    pub fn unit(n: usize) -> Self {
        Weights {
            values: vec![BigRational::one(); n],
        }
    }

    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if let Some(k) = values.iter().position(|w| *w <= BigRational::zero()) {
            return Err(Error::input(format!(
                "weight of element {k} is {}, weights must be positive",
                values[k]
            )));
        }
        Ok(Weights { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Weight file: a JSON array of integers or `"p/q"` strings, one per element.
    pub fn from_json(text: &str, n: usize) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Int(i64),
            Text(String),
        }
        let entries: Vec<Entry> =
            serde_json::from_str(text).map_err(|e| Error::input(format!("weight JSON: {e}")))?;
        if entries.len() != n {
            return Err(Error::input(format!(
                "weight file has {} entries, the matroid has {n} elements",
                entries.len()
            )));
        }
        let values = entries
            .into_iter()
            .map(|e| match e {
                Entry::Int(v) => Ok(BigRational::from_integer(BigInt::from(v))),
                Entry::Text(s) => parse_rational(&s),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    /// Numerators and denominators drawn uniformly from `1..=64`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let values = (0..n)
            .map(|_| {
                let p: i64 = rng.gen_range(1..=64);
                let q: i64 = rng.gen_range(1..=64);
                BigRational::new(BigInt::from(p), BigInt::from(q))
            })
            .collect();
        Weights { values }
    }

    /// [`Weights::random`] driven by a ChaCha8 stream seeded with `seed`.
    pub fn seeded(n: usize, seed: u64) -> Self {
        Self::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(|w| w.is_one())
    }

    /// Weights over a common denominator: `w_e = numerators[e] / denominator`.
    pub fn scaled(&self) -> (Vec<BigUint>, BigUint) {
        let den = lcm_of_denominators(&self.values);
        let den_int = BigInt::from(den.clone());
        let nums = self
            .values
            .iter()
            .map(|w| {
                (w.numer() * (&den_int / w.denom()))
                    .to_biguint()
                    .expect("weights are positive")
            })
            .collect();
        (nums, den)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::input(format!(
                "{} weights given for {n} elements",
                self.values.len()
            )));
        }
        Ok(())
    }
}

/// The four basis classes for a pair `(i, j)`: both, `i` only, `j` only, neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPartitionCounts {
    pub i: ElementId,
    pub j: ElementId,
    pub d: usize,
    pub s_both: BigCount,
    pub s_i_only: BigCount,
    pub s_j_only: BigCount,
    pub s_neither: BigCount,
}

impl BasisPartitionCounts {
    pub fn from_u64(i: usize, j: usize, d: usize, c: [u64; 4]) -> Self {
        BasisPartitionCounts {
            i,
            j,
            d,
            s_both: c[0].into(),
            s_i_only: c[1].into(),
            s_j_only: c[2].into(),
            s_neither: c[3].into(),
        }
    }

    pub fn total(&self) -> BigCount {
        &self.s_both + &self.s_i_only + &self.s_j_only + &self.s_neither
    }

    pub fn as_array(&self) -> [&BigCount; 4] {
        [
            &self.s_both,
            &self.s_i_only,
            &self.s_j_only,
            &self.s_neither,
        ]
    }

    pub fn to_sums(&self) -> WeightedPartitionSums {
        WeightedPartitionSums {
            i: self.i,
            j: self.j,
            d: self.d,
            s_both: count_to_rational(&self.s_both),
            s_i_only: count_to_rational(&self.s_i_only),
            s_j_only: count_to_rational(&self.s_j_only),
            s_neither: count_to_rational(&self.s_neither),
        }
    }
}

/// Weighted version of [`BasisPartitionCounts`]: `Σ_B Π_{e∈B} w_e` per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPartitionSums {
    pub i: ElementId,
    pub j: ElementId,
    pub d: usize,
    pub s_both: BigRational,
    pub s_i_only: BigRational,
    pub s_j_only: BigRational,
    pub s_neither: BigRational,
}

impl WeightedPartitionSums {
    pub fn total(&self) -> BigRational {
        &self.s_both + &self.s_i_only + &self.s_j_only + &self.s_neither
    }

    pub fn as_array(&self) -> [&BigRational; 4] {
        [
            &self.s_both,
            &self.s_i_only,
            &self.s_j_only,
            &self.s_neither,
        ]
    }
}

fn check_pair(m: &Matroid, i: ElementId, j: ElementId) -> Result<()> {
    let n = m.ground_size();
    if i >= n || j >= n {
        return Err(Error::input(format!(
            "pair ({i}, {j}) outside the ground set 0..{n}"
        )));
    }
    if i == j {
        return Err(Error::input(format!(
            "pair elements must differ, got {i} twice"
        )));
    }
    Ok(())
}

fn class_of(b: SubsetMask, i: usize, j: usize) -> usize {
    match (b.contains(i), b.contains(j)) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    }
}

struct PairCounter {
    i: usize,
    j: usize,
    c: [u64; 4],
}

impl Visitor for PairCounter {
    fn visit(&mut self, set: SubsetMask, _size: usize) {
        self.c[class_of(set, self.i, self.j)] += 1;
    }
}

pub fn basis_partition(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    opts: &SearchOptions,
) -> Result<BasisPartitionCounts> {
    check_pair(m, i, j)?;
    let jobs = run(m, opts, Mode::Bases, || PairCounter { i, j, c: [0; 4] })?;
    let mut c = [0u64; 4];
    for job in jobs {
        for (a, b) in c.iter_mut().zip(job.visitor.c) {
            *a += b;
        }
    }
    Ok(BasisPartitionCounts::from_u64(i, j, m.full_rank(), c))
}

struct WeightedPairSum<'w> {
    i: usize,
    j: usize,
    nums: &'w [BigUint],
    s: [BigUint; 4],
}

impl Visitor for WeightedPairSum<'_> {
    fn visit(&mut self, set: SubsetMask, _size: usize) {
        let w = product(self.nums, set);
        self.s[class_of(set, self.i, self.j)] += w;
    }
}

fn product(nums: &[BigUint], set: SubsetMask) -> BigUint {
    set.iter().fold(BigUint::one(), |acc, e| acc * &nums[e])
}

fn over_power(num: BigUint, den: &BigUint, exp: usize) -> BigRational {
    let den = num_traits::pow(den.clone(), exp);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn weighted_partition(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<WeightedPartitionSums> {
    check_pair(m, i, j)?;
    w.check_len(m.ground_size())?;
    let (nums, den) = w.scaled();
    let jobs = run(m, opts, Mode::Bases, || WeightedPairSum {
        i,
        j,
        nums: &nums,
        s: Default::default(),
    })?;
    let mut s: [BigUint; 4] = Default::default();
    for job in jobs {
        for (a, b) in s.iter_mut().zip(job.visitor.s) {
            *a += b;
        }
    }
    let d = m.full_rank();
    let [b, io, jo, ne] = s;
    Ok(WeightedPartitionSums {
        i,
        j,
        d,
        s_both: over_power(b, &den, d),
        s_i_only: over_power(io, &den, d),
        s_j_only: over_power(jo, &den, d),
        s_neither: over_power(ne, &den, d),
    })
}

/// Weighted independent-set sums `W_0, …, W_d` with `W_m = Σ_{|I|=m} Π_{e∈I} w_e`.
pub fn weighted_profile(
    m: &Matroid,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<Vec<BigRational>> {
    w.check_len(m.ground_size())?;
    let sets = IndependentSets::collect(m, 0, opts)?;
    Ok(sets.weighted_sums(w, opts))
}

/// Cached bases of a matroid, for repeated weighted passes over all pairs at once.
#[derive(Clone, Debug)]
pub struct BasisTable {
    n: usize,
    d: usize,
    bases: Vec<SubsetMask>,
}

/// Per-element and per-pair basis sums: `total = Σ_B w(B)`, `single[e] = Σ_{B∋e}`,
/// `pair[i][j] = Σ_{B∋i,j}`; every pair partition follows by inclusion–exclusion.
#[derive(Clone, Debug)]
pub struct PairTable {
    n: usize,
    d: usize,
    total: BigRational,
    single: Vec<BigRational>,
    pair: Vec<BigRational>,
}

impl BasisTable {
    pub fn new(m: &Matroid, opts: &SearchOptions) -> Result<Self> {
        Ok(BasisTable {
            n: m.ground_size(),
            d: m.full_rank(),
            bases: enumerate_bases(m, opts)?,
        })
    }

    pub fn bases(&self) -> &[SubsetMask] {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Unit-weight counts for one pair.
    pub fn counts(&self, i: ElementId, j: ElementId) -> BasisPartitionCounts {
        let mut c = [0u64; 4];
        for &b in &self.bases {
            c[class_of(b, i, j)] += 1;
        }
        BasisPartitionCounts::from_u64(i, j, self.d, c)
    }

    /// Exact weighted partition for one pair, straight from the cached bases.
    pub fn partition(
        &self,
        i: ElementId,
        j: ElementId,
        w: &Weights,
    ) -> Result<WeightedPartitionSums> {
        w.check_len(self.n)?;
        let (nums, den) = w.scaled();
        let mut s: [BigUint; 4] = Default::default();
        for &b in &self.bases {
            s[class_of(b, i, j)] += product(&nums, b);
        }
        let d = self.d;
        let [both, io, jo, ne] = s;
        Ok(WeightedPartitionSums {
            i,
            j,
            d,
            s_both: over_power(both, &den, d),
            s_i_only: over_power(io, &den, d),
            s_j_only: over_power(jo, &den, d),
            s_neither: over_power(ne, &den, d),
        })
    }

    /// Floating-point class sums for one pair, for numerical search only.
    pub fn partition_f64(&self, i: ElementId, j: ElementId, w: &[f64]) -> [f64; 4] {
        let mut s = [0.0; 4];
        for &b in &self.bases {
            s[class_of(b, i, j)] += b.iter().map(|e| w[e]).product::<f64>();
        }
        s
    }

    pub fn pair_table(&self, w: &Weights, opts: &SearchOptions) -> Result<PairTable> {
        w.check_len(self.n)?;
        let n = self.n;
        let chunks: Vec<&[SubsetMask]> = self.bases.chunks(4096).collect();
        if w.is_unit() {
            let parts = opts.map_ordered(chunks, |chunk| {
                let mut single = vec![0u64; n];
                let mut pair = vec![0u64; n * n];
                for &b in chunk {
                    let elems: Vec<usize> = b.iter().collect();
                    for (x, &a) in elems.iter().enumerate() {
                        single[a] += 1;
                        for &c in &elems[x + 1..] {
                            pair[a * n + c] += 1;
                        }
                    }
                }
                (chunk.len() as u64, single, pair)
            });
            let mut total = 0u64;
            let mut single = vec![0u64; n];
            let mut pair = vec![0u64; n * n];
            for (t, s, p) in parts {
                total += t;
                single.iter_mut().zip(s).for_each(|(a, b)| *a += b);
                pair.iter_mut().zip(p).for_each(|(a, b)| *a += b);
            }
            let q = |v: u64| BigRational::from_integer(BigInt::from(v));
            return Ok(PairTable {
                n,
                d: self.d,
                total: q(total),
                single: single.into_iter().map(q).collect(),
                pair: pair.into_iter().map(q).collect(),
            });
        }
        let (nums, den) = w.scaled();
        let parts = opts.map_ordered(chunks, |chunk| {
            let mut total = BigUint::zero();
            let mut single = vec![BigUint::zero(); n];
            let mut pair = vec![BigUint::zero(); n * n];
            for &b in chunk {
                let wb = product(&nums, b);
                let elems: Vec<usize> = b.iter().collect();
                for (x, &a) in elems.iter().enumerate() {
                    single[a] += &wb;
                    for &c in &elems[x + 1..] {
                        pair[a * n + c] += &wb;
                    }
                }
                total += wb;
            }
            (total, single, pair)
        });
        let mut total = BigUint::zero();
        let mut single = vec![BigUint::zero(); n];
        let mut pair = vec![BigUint::zero(); n * n];
        for (t, s, p) in parts {
            total += t;
            single.iter_mut().zip(s).for_each(|(a, b)| *a += b);
            pair.iter_mut().zip(p).for_each(|(a, b)| *a += b);
        }
        let d = self.d;
        Ok(PairTable {
            n,
            d,
            total: over_power(total, &den, d),
            single: single.into_iter().map(|v| over_power(v, &den, d)).collect(),
            pair: pair.into_iter().map(|v| over_power(v, &den, d)).collect(),
        })
    }
}

impl PairTable {
    pub fn total(&self) -> &BigRational {
        &self.total
    }

    pub fn partition(&self, i: ElementId, j: ElementId) -> WeightedPartitionSums {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let both = self.pair[a * self.n + b].clone();
        let si = &self.single[i];
        let sj = &self.single[j];
        WeightedPartitionSums {
            i,
            j,
            d: self.d,
            s_i_only: si - &both,
            s_j_only: sj - &both,
            s_neither: &self.total - si - sj + &both,
            s_both: both,
        }
    }
}

/// Cached independent sets (of size at least some minimum) for weighted profile passes.
#[derive(Clone, Debug)]
pub struct IndependentSets {
    d: usize,
    min_size: usize,
    sets: Vec<SubsetMask>,
}

impl IndependentSets {
    pub fn collect(m: &Matroid, min_size: usize, opts: &SearchOptions) -> Result<Self> {
        Ok(IndependentSets {
            d: m.full_rank(),
            min_size,
            sets: independent_sets(m, min_size, opts)?,
        })
    }

    /// `W_0, …, W_d`; entries below the collection's minimum size are zero.
    pub fn weighted_sums(&self, w: &Weights, opts: &SearchOptions) -> Vec<BigRational> {
        let d = self.d;
        let chunks: Vec<&[SubsetMask]> = self.sets.chunks(4096).collect();
        let (nums, den) = w.scaled();
        let parts = opts.map_ordered(chunks, |chunk| {
            let mut acc = vec![BigUint::zero(); d + 1];
            for &s in chunk {
                acc[s.len()] += product(&nums, s);
            }
            acc
        });
        let mut acc = vec![BigUint::zero(); d + 1];
        for p in parts {
            acc.iter_mut().zip(p).for_each(|(a, b)| *a += b);
        }
        acc.into_iter()
            .enumerate()
            .map(|(k, v)| {
                if k < self.min_size {
                    BigRational::zero()
                } else {
                    over_power(v, &den, k)
                }
            })
            .collect()
    }
}
