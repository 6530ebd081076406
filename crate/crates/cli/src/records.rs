//! Flat output records, one type per command.
//!
//! Exact values (counts, rationals) are strings, rationals always as `"p/q"`; floats
//! appear only in the `*_approx` and entropy columns. List- and matrix-valued fields are
//! space-separated, with `"; "` between matrix rows, so every record is one CSV row.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleRecord {
    pub name: String,
    pub provenance: String,
    pub i: usize,
    pub j: usize,
    pub d: usize,
    pub expected_both: String,
    pub expected_i_only: String,
    pub expected_j_only: String,
    pub expected_neither: String,
    pub expected_total: String,
    pub s_both: String,
    pub s_i_only: String,
    pub s_j_only: String,
    pub s_neither: String,
    pub total: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRecord {
    pub matroid: String,
    pub weights: String,
    pub i: usize,
    pub j: usize,
    pub d: usize,
    pub s_both: String,
    pub s_i_only: String,
    pub s_j_only: String,
    pub s_neither: String,
    pub total: String,
    /// `"p/q"`, or `"undefined"` when `s_i_only·s_j_only = 0`.
    pub ratio: String,
    pub ratio_approx: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremRecord {
    pub matroid: String,
    pub weights: String,
    pub theorem: u8,
    pub i: usize,
    pub j: usize,
    pub d: usize,
    pub s_both: String,
    pub s_i_only: String,
    pub s_j_only: String,
    pub s_neither: String,
    pub ratio: String,
    pub ratio_approx: Option<f64>,
    pub bound: String,
    pub satisfied: bool,
    pub free_pair: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MasonRow {
    pub matroid: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub i_prev: String,
    pub i_k: String,
    pub i_next: String,
    /// `k·I_k² − (k+1)·I_{k−1}·I_{k+1}`.
    pub margin_2: String,
    pub holds_1: bool,
    pub holds_2: bool,
    /// Reported, never asserted.
    pub holds_3: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HodgeRecord {
    pub matroid: String,
    pub weights: String,
    pub i: usize,
    pub j: usize,
    pub d: usize,
    pub hij: String,
    pub hij_plus: usize,
    pub hij_minus: usize,
    pub hij_zero: usize,
    pub hij_det: String,
    pub hij_det_formula: String,
    pub h0: String,
    pub h0_plus: usize,
    pub h0_minus: usize,
    pub h0_zero: usize,
    pub h0_det: String,
    pub h0_det_formula: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub matroid: String,
    pub d: usize,
    /// `I_0 … I_d`.
    pub profile: String,
    /// Exact mean size `Σ k·I_k / Σ I_k`.
    pub mean: String,
    pub mean_approx: f64,
    pub entropy: f64,
    pub poisson_entropy: f64,
    pub upper_bound: f64,
    pub lower_chain: Option<f64>,
    pub argmax: usize,
    pub max_prob: f64,
    pub concentration_threshold: f64,
    pub concentrated: bool,
    pub poisson_comparison: bool,
    pub within_upper_bound: bool,
    pub max_prob_consistent: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpikeRecord {
    /// `spike` or `transversal`.
    pub family: String,
    /// Points per leg.
    pub p: u64,
    pub d: usize,
    /// `closed-form` or `enumeration`.
    pub source: String,
    pub s_both: String,
    pub s_i_only: String,
    pub s_j_only: String,
    pub s_neither: String,
    pub total: String,
    pub ratio: String,
    /// `(d²−2d+1)/(d²−3d+4)` for spikes over a prime field.
    pub ratio_formula: Option<String>,
    /// With `--compare`: closed form and enumeration agree on all four counts.
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRecord {
    pub matroid: String,
    pub strategy: String,
    pub i: usize,
    pub j: usize,
    pub best_ratio: String,
    pub best_ratio_approx: f64,
    pub weights: String,
    pub positively_correlated: bool,
}
