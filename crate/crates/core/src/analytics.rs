//! Log-concavity checks on independence profiles and entropy of the size of a uniformly
//! random independent set.
//!
//! Log-concavity forms for `1 ≤ k ≤ d−1`, all decided on cross-multiplied integers:
//! 1. `I_k² ≥ I_{k−1}·I_{k+1}`
//! 2. `k·I_k² ≥ (k+1)·I_{k−1}·I_{k+1}`
//! 3. `k(n−k)·I_k² ≥ (k+1)(n−k+1)·I_{k−1}·I_{k+1}`
//!
//! Entropies are in bits.

use std::f64::consts::{E, PI};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{rational_to_f64, BigCount, BigRational};
use crate::enumerate::{independence_profile, IndependenceProfile, SearchOptions};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Slack for floating comparisons against analytic bounds.
pub const FLOAT_SLACK: f64 = 1.0 / (1u64 << 20) as f64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasonRecord {
    pub k: usize,
    pub holds_1: bool,
    pub holds_2: bool,
    pub holds_3: bool,
    /// `k·I_k² − (k+1)·I_{k−1}·I_{k+1}`.
    pub margin_2: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasonReport {
    pub n: usize,
    pub d: usize,
    pub records: Vec<MasonRecord>,
}

impl MasonReport {
    pub fn all_hold_2(&self) -> bool {
        self.records.iter().all(|r| r.holds_2)
    }
}

pub fn mason_check(profile: &IndependenceProfile, n: usize) -> Result<MasonReport> {
    let d = profile.d;
    if n < d {
        return Err(Error::input(format!(
            "ground size {n} is smaller than the profile's rank {d}"
        )));
    }
    let big = |v: &BigUint| BigInt::from(v.clone());
    let records = (1..d)
        .map(|k| {
            let sq = big(&profile.counts[k]) * big(&profile.counts[k]);
            let side = big(&profile.counts[k - 1]) * big(&profile.counts[k + 1]);
            let kb = BigInt::from(k);
            let k1 = BigInt::from(k + 1);
            let nk = BigInt::from(n - k);
            let nk1 = BigInt::from(n - k + 1);
            let margin_2 = &kb * &sq - &k1 * &side;
            MasonRecord {
                k,
                holds_1: sq >= side,
                holds_2: margin_2 >= BigInt::zero(),
                holds_3: &kb * &nk * &sq >= &k1 * &nk1 * &side,
                margin_2,
            }
        })
        .collect();
    Ok(MasonReport { n, d, records })
}

/// Entropy in bits of a Poisson law with mean `lambda`, summed until the remaining tail
/// mass is below `2^-60`.
pub fn poisson_entropy(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::input(format!(
            "Poisson mean must be positive and finite, got {lambda}"
        )));
    }
    let ln_lambda = lambda.ln();
    let tail_target = (-60.0f64).exp2();
    let mut h = 0.0;
    let mut ln_fact = 0.0;
    let mut k = 0u64;
    loop {
        if k > 0 {
            ln_fact += (k as f64).ln();
        }
        let ln_p = -lambda + k as f64 * ln_lambda - ln_fact;
        let p = ln_p.exp();
        h -= p * ln_p;
        // For k + 2 > λ the tail beyond k is dominated by a geometric series.
        let next = k as f64 + 1.0;
        if next + 1.0 > lambda {
            let ln_next = ln_p + ln_lambda - next.ln();
            let tail = ln_next.exp() / (1.0 - lambda / (next + 1.0));
            if tail < tail_target {
                break;
            }
        }
        k += 1;
    }
    Ok(h / std::f64::consts::LN_2)
}

/// `½·log2(2πe(x + 1/12))`.
pub fn gaussian_bound(x: f64) -> f64 {
    0.5 * (2.0 * PI * E * (x + 1.0 / 12.0)).log2()
}

/// `½·log2(πd/2)`, the lower estimate for boolean matroids.
pub fn boolean_lower_bound(d: usize) -> f64 {
    0.5 * (PI * d as f64 / 2.0).log2()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    pub d: usize,
    pub distribution: Vec<f64>,
    pub entropy: f64,
    pub lambda: f64,
    pub poisson_entropy_at_lambda: f64,
    pub upper_bound: f64,
    /// Present only when the profile is the boolean one.
    pub lower_chain: Option<f64>,
    pub argmax: usize,
    pub max_prob: f64,
    pub concentration_threshold: f64,
    /// Exact `25·d·p_k² > 1` at the argmax.
    pub concentrated: bool,
    /// `H ≤ H(Poisson(λ)) + slack`.
    pub poisson_comparison: bool,
    /// `H(Poisson(λ)) ≤ upper_bound + slack`.
    pub within_upper_bound: bool,
    /// `max_prob ≥ 2^(−H)` up to rounding.
    pub max_prob_consistent: bool,
}

impl EntropyReport {
    pub fn passed(&self) -> bool {
        self.concentrated
            && self.poisson_comparison
            && self.within_upper_bound
            && self.max_prob_consistent
            && self
                .lower_chain
                .is_none_or(|lb| lb <= self.entropy + FLOAT_SLACK)
    }
}

/// Index of the largest count (first on ties) and whether `25·d·I_k² > (ΣI)²`.
pub fn concentration_check(profile: &IndependenceProfile) -> Result<(usize, bool)> {
    if profile.d == 0 {
        return Err(Error::input("concentration needs rank d ≥ 1"));
    }
    let (k, top) =
        profile
            .counts
            .iter()
            .enumerate()
            .fold((0, &profile.counts[0]), |best, (k, c)| {
                if c > best.1 {
                    (k, c)
                } else {
                    best
                }
            });
    let total = profile.total();
    let lhs = BigCount::from(25u32) * BigCount::from(profile.d) * top * top;
    Ok((k, lhs > &total * &total))
}

pub fn entropy_from_profile(profile: &IndependenceProfile) -> Result<EntropyReport> {
    let d = profile.d;
    let total = BigInt::from(profile.total());
    let distribution: Vec<f64> = profile
        .counts
        .iter()
        .map(|c| rational_to_f64(&BigRational::new(BigInt::from(c.clone()), total.clone())))
        .collect();
    let entropy: f64 = distribution
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    let mean_exact: BigRational = profile
        .counts
        .iter()
        .enumerate()
        .map(|(k, c)| BigRational::new(BigInt::from(c.clone()) * BigInt::from(k), total.clone()))
        .sum();
    let lambda = rational_to_f64(&mean_exact);
    let poisson = if lambda > 0.0 {
        poisson_entropy(lambda)?
    } else {
        0.0
    };
    let upper_bound = gaussian_bound(d as f64);
    let lower_chain = (*profile == IndependenceProfile::boolean(d)).then(|| boolean_lower_bound(d));
    let (argmax, concentrated) = concentration_check(profile)?;
    let max_prob = distribution[argmax];
    Ok(EntropyReport {
        d,
        entropy,
        lambda,
        poisson_entropy_at_lambda: poisson,
        upper_bound,
        lower_chain,
        argmax,
        max_prob,
        concentration_threshold: 1.0 / (5.0 * (d as f64).sqrt()),
        concentrated,
        poisson_comparison: entropy <= poisson + FLOAT_SLACK,
        within_upper_bound: poisson <= upper_bound + FLOAT_SLACK,
        max_prob_consistent: max_prob * (1.0 + 1e-12) >= (-entropy).exp2(),
        distribution,
    })
}

pub fn entropy_report(m: &Matroid, opts: &SearchOptions) -> Result<EntropyReport> {
    entropy_from_profile(&independence_profile(m, opts)?)
}
