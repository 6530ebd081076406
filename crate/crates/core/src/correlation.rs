//! Correlation ratios, the two correlation bounds, the weighted log-concavity bound on
//! independent-set sums, and certified lower bounds for the correlation constant.
//!
//! Everything is decided by exact cross-multiplication; floating point appears only
//! inside the numerical weight search, whose final witness is re-evaluated exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{int_rational, BigRational};
use crate::enumerate::{
    weighted_partition, weighted_profile, BasisTable, IndependenceProfile, SearchOptions,
    WeightedPartitionSums, Weights,
};
use crate::error::{Error, Result};
use crate::matroid::{ElementId, ElementStatus, Matroid};
use crate::subset::SubsetMask;

/// A correlation ratio, or the flag for `s_i_only·s_j_only = 0` (which forces a zero
/// numerator as well).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    Value(BigRational),
    ZeroDenominator,
}

impl Ratio {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Ratio::Value(v) => Some(v),
            Ratio::ZeroDenominator => None,
        }
    }
}

/// `s_both·s_neither / (s_i_only·s_j_only)`.
pub fn ratio_of(s: &WeightedPartitionSums) -> Result<Ratio> {
    let num = &s.s_both * &s.s_neither;
    let den = &s.s_i_only * &s.s_j_only;
    if den.is_zero() {
        if !num.is_zero() {
            return Err(Error::Certificate(format!(
                "pair ({}, {}): s_i_only·s_j_only = 0 but s_both·s_neither = {num}",
                s.i, s.j
            )));
        }
        return Ok(Ratio::ZeroDenominator);
    }
    Ok(Ratio::Value(num / den))
}

/// Rejects loops and coloops, naming the offending element.
pub fn check_eligible(m: &Matroid, e: ElementId) -> Result<()> {
    let n = m.ground_size();
    if e >= n {
        return Err(Error::input(format!(
            "element {e} outside the ground set 0..{n}"
        )));
    }
    if m.rank(SubsetMask::singleton(e))? == 0 {
        return Err(Error::domain(format!("element {e} is a loop")));
    }
    if m.rank(m.ground().without(e))? + 1 == m.full_rank() {
        return Err(Error::domain(format!("element {e} is a coloop")));
    }
    Ok(())
}

/// Elements that are neither loops nor coloops.
pub fn eligible_elements(m: &Matroid) -> Vec<ElementId> {
    (0..m.ground_size())
        .filter(|&e| check_eligible(m, e).is_ok())
        .collect()
}

/// Eligible pairs `i < j` in lexicographic order.
pub fn eligible_pairs(m: &Matroid) -> Vec<(ElementId, ElementId)> {
    let el = eligible_elements(m);
    el.iter()
        .enumerate()
        .flat_map(|(x, &i)| el[x + 1..].iter().map(move |&j| (i, j)))
        .collect()
}

fn check_pair(m: &Matroid, i: ElementId, j: ElementId) -> Result<()> {
    if i == j {
        return Err(Error::input(format!(
            "pair elements must differ, got {i} twice"
        )));
    }
    check_eligible(m, i)?;
    check_eligible(m, j)
}

pub fn correlation_ratio(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<Ratio> {
    check_pair(m, i, j)?;
    ratio_of(&weighted_partition(m, i, j, w, opts)?)
}

/// `2(1 − 1/d)`.
pub fn theorem1_bound(d: usize) -> BigRational {
    int_rational(2) * theorem2_bound(d)
}

/// `1 − 1/d`.
pub fn theorem2_bound(d: usize) -> BigRational {
    let d = BigInt::from(d);
    BigRational::new(&d - 1, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationReport {
    pub i: ElementId,
    pub j: ElementId,
    pub d: usize,
    pub sums: WeightedPartitionSums,
    pub ratio: Ratio,
    pub bound: BigRational,
    pub satisfied: bool,
    pub free_pair: bool,
}

impl CorrelationReport {
    /// Judges `s_both·s_neither ≤ bound·s_i_only·s_j_only` exactly.
    pub fn from_sums(
        sums: WeightedPartitionSums,
        bound: BigRational,
        free_pair: bool,
    ) -> Result<Self> {
        let lhs = &sums.s_both * &sums.s_neither;
        let rhs = &bound * &sums.s_i_only * &sums.s_j_only;
        Ok(CorrelationReport {
            i: sums.i,
            j: sums.j,
            d: sums.d,
            ratio: ratio_of(&sums)?,
            satisfied: lhs <= rhs,
            bound,
            free_pair,
            sums,
        })
    }
}

fn is_free(m: &Matroid, e: ElementId) -> Result<bool> {
    Ok(m.element_status(e)? == ElementStatus::Free)
}

fn require_rank(m: &Matroid) -> Result<usize> {
    match m.full_rank() {
        0 => Err(Error::domain("the bounds need a matroid of positive rank")),
        d => Ok(d),
    }
}

pub fn check_theorem1(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<CorrelationReport> {
    check_pair(m, i, j)?;
    let d = require_rank(m)?;
    let sums = weighted_partition(m, i, j, w, opts)?;
    let free_pair = is_free(m, i)? && is_free(m, j)?;
    CorrelationReport::from_sums(sums, theorem1_bound(d), free_pair)
}

pub fn check_theorem2(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<CorrelationReport> {
    check_pair(m, i, j)?;
    let d = require_rank(m)?;
    for e in [i, j] {
        let status = m.element_status(e)?;
        if status != ElementStatus::Free {
            return Err(Error::domain(format!("element {e} is {status}, not free")));
        }
    }
    let sums = weighted_partition(m, i, j, w, opts)?;
    CorrelationReport::from_sums(sums, theorem2_bound(d), true)
}

/// `2(1−1/d)` reports for every pair in `pairs`, from one pass over the bases.
pub fn theorem1_sweep(
    table: &BasisTable,
    pairs: &[(ElementId, ElementId)],
    w: &Weights,
    opts: &SearchOptions,
) -> Result<Vec<CorrelationReport>> {
    let pt = table.pair_table(w, opts)?;
    let bound = theorem1_bound(table.rank());
    pairs
        .iter()
        .map(|&(i, j)| CorrelationReport::from_sums(pt.partition(i, j), bound.clone(), false))
        .collect()
}

/// `W_{d−1}² ≥ d/(d−1)·W_{d−2}·W_d` on weighted independent-set sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop41Report {
    pub d: usize,
    pub w_d_minus_2: BigRational,
    pub w_d_minus_1: BigRational,
    pub w_d: BigRational,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub satisfied: bool,
}

/// Checks the inequality on sums `W_0, …, W_d` (a profile for unit weights).
pub fn check_prop41_sums(sums: &[BigRational]) -> Result<Prop41Report> {
    if sums.len() < 3 {
        return Err(Error::input(format!(
            "the bound needs rank d ≥ 2, got d = {}",
            sums.len().saturating_sub(1)
        )));
    }
    let d = sums.len() - 1;
    let (a, b, c) = (&sums[d - 2], &sums[d - 1], &sums[d]);
    let lhs = b * b;
    let rhs = BigRational::new(BigInt::from(d), BigInt::from(d - 1)) * a * c;
    Ok(Prop41Report {
        d,
        w_d_minus_2: a.clone(),
        w_d_minus_1: b.clone(),
        w_d: c.clone(),
        satisfied: lhs >= rhs,
        lhs,
        rhs,
    })
}

pub fn check_prop41_profile(profile: &IndependenceProfile) -> Result<Prop41Report> {
    let sums: Vec<BigRational> = profile
        .counts
        .iter()
        .map(crate::arith::count_to_rational)
        .collect();
    check_prop41_sums(&sums)
}

pub fn check_prop41(m: &Matroid, w: &Weights, opts: &SearchOptions) -> Result<Prop41Report> {
    if m.full_rank() < 2 {
        return Err(Error::input(format!(
            "the bound needs rank d ≥ 2, got d = {}",
            m.full_rank()
        )));
    }
    check_prop41_sums(&weighted_profile(m, w, opts)?)
}

/// Weight-search strategies for [`alpha_lower_bound`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Strategy {
    /// Unit weights on every eligible pair.
    Unit,
    /// Coordinate sweeps over the integer ladder `1, 2, 4, …, 2^levels`.
    Grid { levels: u32 },
    /// Per-coordinate golden-section search on log-weights.
    Ascent { tol: f64, max_iter: usize },
}

impl Strategy {
    pub fn describe(&self) -> String {
        match self {
            Strategy::Unit => "unit".into(),
            Strategy::Grid { levels } => format!("grid(levels={levels})"),
            Strategy::Ascent { tol, max_iter } => {
                format!("ascent(tol={tol:e}, max_iter={max_iter})")
            }
        }
    }
}

/// A certified lower bound on the correlation constant of a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaEstimate {
    pub best_ratio: BigRational,
    pub weights: Weights,
    pub i: ElementId,
    pub j: ElementId,
    pub strategy: String,
}

/// Sweeps per grid pair are capped; each sweep changes at least one weight.
const MAX_GRID_ROUNDS: usize = 16;
const GOLDEN_STEPS: usize = 48;
/// Log-weight search interval, `[−LOG_SPAN, LOG_SPAN]`.
const LOG_SPAN: f64 = 8.0;
const CERTIFY_DENOMINATOR: f64 = 1e6;

struct Candidate {
    ratio: BigRational,
    weights: Weights,
    i: ElementId,
    j: ElementId,
}

fn exact_ratio(table: &BasisTable, i: usize, j: usize, w: &Weights) -> Result<BigRational> {
    Ok(match ratio_of(&table.partition(i, j, w)?)? {
        Ratio::Value(v) => v,
        Ratio::ZeroDenominator => BigRational::zero(),
    })
}

fn float_ratio(table: &BasisTable, i: usize, j: usize, w: &[f64]) -> f64 {
    let [b, io, jo, ne] = table.partition_f64(i, j, w);
    if io * jo == 0.0 {
        0.0
    } else {
        b * ne / (io * jo)
    }
}

fn grid_search(table: &BasisTable, i: usize, j: usize, levels: u32) -> Result<Candidate> {
    let n = table.ground_size();
    let ladder: Vec<i64> = (0..=levels).map(|k| 1i64 << k).collect();
    let mut ints = vec![1i64; n];
    let mut best = exact_ratio(table, i, j, &Weights::from_integers(&ints)?)?;
    for _ in 0..MAX_GRID_ROUNDS {
        let mut changed = false;
        for e in 0..n {
            let current = ints[e];
            let mut pick = current;
            for &v in ladder.iter().filter(|&&v| v != current) {
                ints[e] = v;
                let r = exact_ratio(table, i, j, &Weights::from_integers(&ints)?)?;
                if r > best {
                    best = r;
                    pick = v;
                }
            }
            ints[e] = pick;
            changed |= pick != current;
        }
        if !changed {
            break;
        }
    }
    Ok(Candidate {
        ratio: best,
        weights: Weights::from_integers(&ints)?,
        i,
        j,
    })
}

/// Maximizes `f` on `[lo, hi]` by golden-section search, returning the best point seen.
fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_STEPS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn to_rational(x: f64) -> BigRational {
    let num = (x * CERTIFY_DENOMINATOR).round().max(1.0) as i64;
    BigRational::new(BigInt::from(num), BigInt::from(CERTIFY_DENOMINATOR as i64))
}

fn ascent_search(
    table: &BasisTable,
    i: usize,
    j: usize,
    tol: f64,
    max_iter: usize,
) -> Result<Candidate> {
    let n = table.ground_size();
    let mut logw = vec![0.0f64; n];
    let weights_of = |logw: &[f64]| logw.iter().map(|x| x.exp()).collect::<Vec<f64>>();
    let mut current = float_ratio(table, i, j, &weights_of(&logw));
    for _ in 0..max_iter {
        let before = current;
        for e in 0..n {
            let (x, fx) = golden_max(
                |x| {
                    let mut w = weights_of(&logw);
                    w[e] = x.exp();
                    float_ratio(table, i, j, &w)
                },
                -LOG_SPAN,
                LOG_SPAN,
            );
            if fx > current {
                logw[e] = x;
                current = fx;
            }
        }
        if current - before <= tol * before.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    let weights = Weights::new(weights_of(&logw).into_iter().map(to_rational).collect())?;
    let ratio = exact_ratio(table, i, j, &weights)?;
    Ok(Candidate {
        ratio,
        weights,
        i,
        j,
    })
}

/// Certified lower bound: the returned ratio is exactly realized by the witness weights.
/// Pairs are scanned in lexicographic order and ties keep the earliest pair.
pub fn alpha_lower_bound(
    m: &Matroid,
    strategy: Strategy,
    opts: &SearchOptions,
) -> Result<AlphaEstimate> {
    let pairs = eligible_pairs(m);
    if pairs.is_empty() {
        return Err(Error::domain(
            "the matroid has fewer than two elements that are neither loops nor coloops",
        ));
    }
    let table = BasisTable::new(m, opts)?;
    let n = m.ground_size();
    let unit = Weights::unit(n);
    let pt = table.pair_table(&unit, opts)?;
    let mut candidates: Vec<Candidate> = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let ratio = match ratio_of(&pt.partition(i, j))? {
            Ratio::Value(v) => v,
            Ratio::ZeroDenominator => BigRational::zero(),
        };
        candidates.push(Candidate {
            ratio,
            weights: unit.clone(),
            i,
            j,
        });
    }
    let searched: Vec<Result<Candidate>> = match strategy {
        Strategy::Unit => Vec::new(),
        Strategy::Grid { levels } => {
            opts.map_ordered(pairs.clone(), |(i, j)| grid_search(&table, i, j, levels))
        }
        Strategy::Ascent { tol, max_iter } => opts.map_ordered(pairs.clone(), |(i, j)| {
            ascent_search(&table, i, j, tol, max_iter)
        }),
    };
    for (slot, found) in candidates.iter_mut().zip(searched) {
        let found = found?;
        if found.ratio > slot.ratio {
            *slot = found;
        }
    }
    let best = candidates
        .into_iter()
        .reduce(|a, b| match b.ratio.cmp(&a.ratio) {
            Ordering::Greater => b,
            _ => a,
        })
        .expect("at least one pair");
    Ok(AlphaEstimate {
        best_ratio: best.ratio,
        weights: best.weights,
        i: best.i,
        j: best.j,
        strategy: strategy.describe(),
    })
}

/// Numerical helper for reports: the ratio as `f64` (0 for a zero denominator).
pub fn ratio_to_f64(r: &Ratio) -> f64 {
    match r {
        Ratio::Value(v) => crate::arith::rational_to_f64(v),
        Ratio::ZeroDenominator => 0.0,
    }
}
