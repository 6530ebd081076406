//! Certificate matrices built from counting data alone, with exact eigenvalue signatures.
//!
//! `H_ij = [[0, A, B], [A, 0, C], [B, C, D]]` with `A = (d−2)!·S_both`,
//! `B = (d−1)!·S_i_only`, `C = (d−1)!·S_j_only`, `D = d!·S_neither`, and
//! `H_0 = [[(d−2)!·W_{d−2}, (d−1)!·W_{d−1}], [(d−1)!·W_{d−1}, d!·W_d]]`.
//!
//! Signatures come from Descartes' rule on the characteristic polynomial: a symmetric
//! matrix has only real eigenvalues, so the sign-change count is exact.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{count_to_rational, factorial, format_rational, int_rational, BigRational};
use crate::correlation::check_eligible;
use crate::enumerate::{
    weighted_partition, weighted_profile, SearchOptions, WeightedPartitionSums, Weights,
};
use crate::error::{Error, Result};
use crate::matroid::{ElementId, Matroid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    Hij,
    H0,
}

/// Eigenvalue counts `(n_plus, n_minus, n_zero)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateMatrix {
    pub kind: CertificateKind,
    pub d: usize,
    pub entries: Vec<Vec<BigRational>>,
    pub signature: Signature,
    pub det: BigRational,
}

impl CertificateMatrix {
    fn new(kind: CertificateKind, d: usize, entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let signature = eigen_signature(&entries)?;
        let det = determinant(&entries);
        Ok(CertificateMatrix {
            kind,
            d,
            entries,
            signature,
            det,
        })
    }

    /// Entries as `"p/q"` strings, row by row.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect()
    }
}

#[allow(clippy::needless_range_loop)]
fn check_symmetric(m: &[Vec<BigRational>]) -> Result<usize> {
    let n = m.len();
    if !(2..=3).contains(&n) || m.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!(
            "signature needs a square matrix of dimension 2 or 3, got {n} rows"
        )));
    }
    for r in 0..n {
        for c in r + 1..n {
            if m[r][c] != m[c][r] {
                return Err(Error::input(format!(
                    "matrix is not symmetric at ({r}, {c})"
                )));
            }
        }
    }
    Ok(n)
}

fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    match m.len() {
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        3 => {
            let minor =
                |a: usize, b: usize, c: usize, d: usize| &m[1][a] * &m[2][b] - &m[1][c] * &m[2][d];
            &m[0][0] * minor(1, 2, 2, 1) - &m[0][1] * minor(0, 2, 2, 0)
                + &m[0][2] * minor(0, 1, 1, 0)
        }
        _ => unreachable!("dimension checked by caller"),
    }
}

/// Coefficients of `det(λI − M)` from the leading one down to the constant term.
pub fn characteristic_polynomial(m: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let n = check_symmetric(m)?;
    let trace: BigRational = (0..n).map(|k| m[k][k].clone()).sum();
    let det = determinant(m);
    Ok(match n {
        2 => vec![int_rational(1), -trace, det],
        _ => {
            let m2 = (0..3)
                .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                .map(|(a, b)| &m[a][a] * &m[b][b] - &m[a][b] * &m[b][a])
                .sum::<BigRational>();
            vec![int_rational(1), -trace, m2, -det]
        }
    })
}

/// Exact `(n_plus, n_minus, n_zero)` of a symmetric 2×2 or 3×3 rational matrix.
pub fn eigen_signature(m: &[Vec<BigRational>]) -> Result<Signature> {
    let coeffs = characteristic_polynomial(m)?;
    let n = coeffs.len() - 1;
    let zero = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    let plus = signs.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(Signature {
        plus,
        minus: n - plus - zero,
        zero,
    })
}

fn factorial_q(n: usize) -> BigRational {
    count_to_rational(&factorial(n))
}

/// `H_ij` from partition sums; requires `d ≥ 2` and nonempty both/neither classes.
pub fn hij_from_sums(s: &WeightedPartitionSums) -> Result<CertificateMatrix> {
    let d = s.d;
    if d < 2 {
        return Err(Error::input(format!("H_ij needs rank d ≥ 2, got {d}")));
    }
    if !s.s_both.is_positive() || !s.s_neither.is_positive() {
        return Err(Error::domain(format!(
            "H_ij for pair ({}, {}) needs bases containing both and bases containing neither",
            s.i, s.j
        )));
    }
    let a = factorial_q(d - 2) * &s.s_both;
    let b = factorial_q(d - 1) * &s.s_i_only;
    let c = factorial_q(d - 1) * &s.s_j_only;
    let dd = factorial_q(d) * &s.s_neither;
    let z = BigRational::zero();
    CertificateMatrix::new(
        CertificateKind::Hij,
        d,
        vec![
            vec![z.clone(), a.clone(), b.clone()],
            vec![a, z, c.clone()],
            vec![b, c, dd],
        ],
    )
}

/// `H_0` from weighted independent-set sums `W_0, …, W_d`.
pub fn h0_from_sums(w: &[BigRational]) -> Result<CertificateMatrix> {
    if w.len() < 3 {
        return Err(Error::input(format!(
            "H_0 needs rank d ≥ 2, got d = {}",
            w.len().saturating_sub(1)
        )));
    }
    let d = w.len() - 1;
    let off = factorial_q(d - 1) * &w[d - 1];
    CertificateMatrix::new(
        CertificateKind::H0,
        d,
        vec![
            vec![factorial_q(d - 2) * &w[d - 2], off.clone()],
            vec![off, factorial_q(d) * &w[d]],
        ],
    )
}

pub fn hij_matrix(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<CertificateMatrix> {
    if i == j {
        return Err(Error::input(format!(
            "pair elements must differ, got {i} twice"
        )));
    }
    check_eligible(m, i)?;
    check_eligible(m, j)?;
    hij_from_sums(&weighted_partition(m, i, j, w, opts)?)
}

pub fn h0_matrix(m: &Matroid, w: &Weights, opts: &SearchOptions) -> Result<CertificateMatrix> {
    if m.full_rank() < 2 {
        return Err(Error::input(format!(
            "H_0 needs rank d ≥ 2, got d = {}",
            m.full_rank()
        )));
    }
    h0_from_sums(&weighted_profile(m, w, opts)?)
}

/// `((d−2)!)²·d!·S_both·(2(1−1/d)·S_i·S_j − S_both·S_neither)`.
pub fn hij_det_formula(s: &WeightedPartitionSums) -> BigRational {
    let d = s.d;
    let f = factorial_q(d - 2);
    let bound = crate::correlation::theorem1_bound(d);
    &f * &f
        * factorial_q(d)
        * &s.s_both
        * (bound * &s.s_i_only * &s.s_j_only - &s.s_both * &s.s_neither)
}

/// `(d−2)!·d!·(W_{d−2}·W_d − (1−1/d)·W_{d−1}²)`.
pub fn h0_det_formula(w: &[BigRational]) -> BigRational {
    let d = w.len() - 1;
    let bound = crate::correlation::theorem2_bound(d);
    factorial_q(d - 2) * factorial_q(d) * (&w[d - 2] * &w[d] - bound * &w[d - 1] * &w[d - 1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub hij: CertificateMatrix,
    pub h0: CertificateMatrix,
    pub hij_one_positive: bool,
    pub hij_zero_diagonal: bool,
    pub hij_det_identity: bool,
    pub h0_one_positive: bool,
    pub h0_det_identity: bool,
    pub h0_det_nonpositive: bool,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.hij_one_positive
            && self.hij_zero_diagonal
            && self.hij_det_identity
            && self.h0_one_positive
            && self.h0_det_identity
            && self.h0_det_nonpositive
    }
}

/// Evaluates every certificate assertion without failing on a violation.
pub fn evaluate(
    pair: &WeightedPartitionSums,
    profile: &[BigRational],
) -> Result<CertificateReport> {
    let hij = hij_from_sums(pair)?;
    let h0 = h0_from_sums(profile)?;
    Ok(CertificateReport {
        hij_one_positive: hij.signature.plus == 1,
        hij_zero_diagonal: hij.entries[0][0].is_zero() && hij.entries[1][1].is_zero(),
        hij_det_identity: hij.det == hij_det_formula(pair),
        h0_one_positive: h0.signature.plus == 1,
        h0_det_identity: h0.det == h0_det_formula(profile),
        h0_det_nonpositive: !h0.det.is_positive(),
        hij,
        h0,
    })
}

/// Like [`evaluate`], but any failed assertion is a certificate error carrying the matrices.
pub fn certify_sums(
    pair: &WeightedPartitionSums,
    profile: &[BigRational],
) -> Result<CertificateReport> {
    let report = evaluate(pair, profile)?;
    if !report.passed() {
        return Err(Error::Certificate(format!(
            "pair ({}, {}): H_ij = {:?} (signature {:?}, det {}), H_0 = {:?} (signature {:?}, det {})",
            pair.i,
            pair.j,
            report.hij.entry_strings(),
            report.hij.signature,
            format_rational(&report.hij.det),
            report.h0.entry_strings(),
            report.h0.signature,
            format_rational(&report.h0.det),
        )));
    }
    Ok(report)
}

pub fn certify(
    m: &Matroid,
    i: ElementId,
    j: ElementId,
    w: &Weights,
    opts: &SearchOptions,
) -> Result<CertificateReport> {
    if m.full_rank() < 2 {
        return Err(Error::input(format!(
            "certificates need rank d ≥ 2, got d = {}",
            m.full_rank()
        )));
    }
    if i == j {
        return Err(Error::input(format!(
            "pair elements must differ, got {i} twice"
        )));
    }
    check_eligible(m, i)?;
    check_eligible(m, j)?;
    let pair = weighted_partition(m, i, j, w, opts)?;
    let profile = weighted_profile(m, w, opts)?;
    certify_sums(&pair, &profile)
}
