//! One function per subcommand. Each writes its records and reports whether every
//! checked statement held.

use std::io::Write;
use std::path::Path;

use matcorr::analytics::{entropy_from_profile, mason_check};
use matcorr::arith::{format_rational, rational_to_f64, BigRational};
use matcorr::certificates::{evaluate, h0_det_formula, hij_det_formula, CertificateMatrix};
use matcorr::constructions::{catalog_entry, spike, spike_ratio, transversal_family, CatalogEntry};
use matcorr::correlation::{
    alpha_lower_bound, check_eligible, check_theorem1, check_theorem2, eligible_pairs, ratio_of,
    theorem1_bound, theorem2_bound, CorrelationReport, Ratio, Strategy,
};
use matcorr::enumerate::{
    basis_partition, independence_profile, weighted_partition, weighted_profile,
    BasisPartitionCounts, BasisTable, IndependenceProfile, SearchOptions, WeightedPartitionSums,
    Weights,
};
use matcorr::{ElementId, ElementStatus, Error, Matroid};
use num_bigint::BigInt;

use crate::config::{AlphaArgs, Command, PairArgs, RunConfig, SourceArgs, SpikeArgs, StrategyName};
use crate::error::CliError;
use crate::output::write_records;
use crate::records::{
    AlphaRecord, EntropyRecord, ExampleRecord, HodgeRecord, MasonRow, RatioRecord, SpikeRecord,
    TheoremRecord,
};

/// The published examples checked by `verify-examples`.
pub const EXAMPLES: [&str; 4] = ["simplicial", "graphic", "transversal", "steiner"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Mismatch,
}

impl Status {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Mismatch
        }
    }
}

/// Output streams: records go to `out`, human-readable summaries to `err`.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

pub fn dispatch(command: &Command, cfg: &RunConfig, io: &mut Io<'_>) -> Result<Status, CliError> {
    match command {
        Command::VerifyExamples { only, corrupt } => {
            verify_examples(cfg, only.as_deref(), *corrupt, io)
        }
        Command::Ratio(a) => ratio(cfg, a, io),
        Command::Theorem1(a) => theorem(cfg, a, 1, io),
        Command::Theorem2(a) => theorem(cfg, a, 2, io),
        Command::Mason(a) => mason(cfg, a, io),
        Command::Hodge(a) => hodge(cfg, a, io),
        Command::Entropy(a) => entropy(cfg, a, io),
        Command::Spike(a) => spike_cmd(cfg, a, io),
        Command::Alpha(a) => alpha(cfg, a, io),
    }
}

fn opts(cfg: &RunConfig) -> SearchOptions {
    SearchOptions::with_workers(cfg.workers)
}

fn input(msg: String) -> CliError {
    CliError::Core(Error::Input(msg))
}

struct Source {
    label: String,
    matroid: Matroid,
    pair: Option<(ElementId, ElementId)>,
}

fn read_file(path: &Path, what: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {what} file {}: {e}", path.display())))
}

fn load_source(args: &SourceArgs) -> Result<Source, CliError> {
    match (&args.catalog, &args.matroid) {
        (Some(name), _) => {
            let e = catalog_entry(name)?;
            Ok(Source {
                label: name.clone(),
                pair: Some((e.i, e.j)),
                matroid: e.matroid,
            })
        }
        (None, Some(path)) => Ok(Source {
            label: path.display().to_string(),
            matroid: Matroid::from_json(&read_file(path, "matroid")?)?,
            pair: None,
        }),
        (None, None) => Err(CliError::Usage(
            "one of --matroid or --catalog is required".into(),
        )),
    }
}

fn load_weights(spec: &str, n: usize, seed: u64) -> Result<(Weights, String), CliError> {
    match spec {
        "unit" => Ok((Weights::unit(n), "unit".into())),
        "random" => Ok((Weights::seeded(n, seed), format!("random(seed={seed:#x})"))),
        path => Ok((
            Weights::from_json(&read_file(Path::new(path), "weights")?, n)?,
            path.to_string(),
        )),
    }
}

/// A single pair checked for eligibility, or a sweep sharing one pass over the bases.
enum Pairs {
    Single(ElementId, ElementId),
    Sweep(Vec<(ElementId, ElementId)>),
}

fn select_pairs(
    src: &Source,
    args: &PairArgs,
    candidates: impl FnOnce() -> Vec<(ElementId, ElementId)>,
) -> Result<Pairs, CliError> {
    if let (Some(i), Some(j)) = (args.i, args.j) {
        return Ok(Pairs::Single(i, j));
    }
    match src.pair {
        Some((i, j)) if !args.all_pairs => Ok(Pairs::Single(i, j)),
        _ => {
            let pairs = candidates();
            if pairs.is_empty() {
                return Err(CliError::Core(Error::Domain(format!(
                    "{} has no pair of elements the statement applies to",
                    src.label
                ))));
            }
            Ok(Pairs::Sweep(pairs))
        }
    }
}

fn check_pair(m: &Matroid, i: ElementId, j: ElementId) -> Result<(), CliError> {
    if i == j {
        return Err(input(format!("pair elements must differ, got {i} twice")));
    }
    check_eligible(m, i)?;
    check_eligible(m, j)?;
    Ok(())
}

fn sweep_sums(
    m: &Matroid,
    pairs: &[(ElementId, ElementId)],
    w: &Weights,
    o: &SearchOptions,
) -> Result<Vec<WeightedPartitionSums>, CliError> {
    let table = BasisTable::new(m, o)?;
    let pt = table.pair_table(w, o)?;
    Ok(pairs.iter().map(|&(i, j)| pt.partition(i, j)).collect())
}

fn pair_sums(
    m: &Matroid,
    pairs: &Pairs,
    w: &Weights,
    o: &SearchOptions,
) -> Result<Vec<WeightedPartitionSums>, CliError> {
    match pairs {
        Pairs::Single(i, j) => {
            check_pair(m, *i, *j)?;
            Ok(vec![weighted_partition(m, *i, *j, w, o)?])
        }
        Pairs::Sweep(list) => sweep_sums(m, list, w, o),
    }
}

fn q(r: &BigRational) -> String {
    format_rational(r)
}

fn ratio_fields(r: &Ratio) -> (String, Option<f64>) {
    match r {
        Ratio::Value(v) => (q(v), Some(rational_to_f64(v))),
        Ratio::ZeroDenominator => ("undefined".into(), None),
    }
}

fn matrix_string(m: &CertificateMatrix) -> String {
    m.entry_strings()
        .iter()
        .map(|row| row.join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn verify_examples(
    cfg: &RunConfig,
    only: Option<&str>,
    corrupt: bool,
    io: &mut Io<'_>,
) -> Result<Status, CliError> {
    let names: Vec<&str> = match only {
        Some(name) => vec![name],
        None => EXAMPLES.to_vec(),
    };
    let o = opts(cfg);
    let mut records = Vec::new();
    for (k, name) in names.iter().enumerate() {
        let entry: CatalogEntry = catalog_entry(name)?;
        let Some(expected) = entry.expected.clone() else {
            return Err(input(format!(
                "catalog entry '{name}' has no embedded expectation"
            )));
        };
        let mut want = expected.counts;
        if corrupt && k == 0 {
            want.s_both += 1u32;
        }
        let got = basis_partition(&entry.matroid, entry.i, entry.j, &o)?;
        let [wb, wi, wj, wn] = want.as_array().map(ToString::to_string);
        let [gb, gi, gj, gn] = got.as_array().map(ToString::to_string);
        records.push(ExampleRecord {
            name: name.to_string(),
            provenance: expected.provenance.as_str().into(),
            i: entry.i,
            j: entry.j,
            d: got.d,
            expected_both: wb,
            expected_i_only: wi,
            expected_j_only: wj,
            expected_neither: wn,
            expected_total: want.total().to_string(),
            s_both: gb,
            s_i_only: gi,
            s_j_only: gj,
            s_neither: gn,
            total: got.total().to_string(),
            matches: got.as_array() == want.as_array(),
        });
    }
    write_records(cfg.format, &records, io.out)?;
    let passed = records.iter().filter(|r| r.matches).count();
    for r in &records {
        writeln!(
            io.err,
            "{:<12} {} {} {} {}  total {:>7}  {}",
            r.name,
            r.s_both,
            r.s_i_only,
            r.s_j_only,
            r.s_neither,
            r.total,
            if r.matches { "PASS" } else { "FAIL" }
        )?;
        if !r.matches {
            let fields = [
                ("s_both", &r.expected_both, &r.s_both),
                ("s_i_only", &r.expected_i_only, &r.s_i_only),
                ("s_j_only", &r.expected_j_only, &r.s_j_only),
                ("s_neither", &r.expected_neither, &r.s_neither),
            ];
            for (field, want, got) in fields {
                if want != got {
                    writeln!(
                        io.err,
                        "  {field:<10} expected {want:>8}  computed {got:>8}"
                    )?;
                }
            }
        }
    }
    writeln!(io.err, "{passed}/{} PASS", records.len())?;
    Ok(Status::from_ok(passed == records.len()))
}

fn ratio(cfg: &RunConfig, a: &PairArgs, io: &mut Io<'_>) -> Result<Status, CliError> {
    let src = load_source(&a.source)?;
    let m = &src.matroid;
    let (w, wl) = load_weights(&a.weights, m.ground_size(), cfg.seed)?;
    let pairs = select_pairs(&src, a, || eligible_pairs(m))?;
    let mut records = Vec::new();
    for s in pair_sums(m, &pairs, &w, &opts(cfg))? {
        let (ratio, ratio_approx) = ratio_fields(&ratio_of(&s)?);
        records.push(RatioRecord {
            matroid: src.label.clone(),
            weights: wl.clone(),
            i: s.i,
            j: s.j,
            d: s.d,
            s_both: q(&s.s_both),
            s_i_only: q(&s.s_i_only),
            s_j_only: q(&s.s_j_only),
            s_neither: q(&s.s_neither),
            total: q(&s.total()),
            ratio,
            ratio_approx,
        });
    }
    write_records(cfg.format, &records, io.out)?;
    Ok(Status::Pass)
}

fn statuses(m: &Matroid) -> Result<Vec<ElementStatus>, CliError> {
    Ok((0..m.ground_size())
        .map(|e| m.element_status(e))
        .collect::<matcorr::Result<_>>()?)
}

fn theorem_record(label: &str, wl: &str, theorem: u8, r: &CorrelationReport) -> TheoremRecord {
    let (ratio, ratio_approx) = ratio_fields(&r.ratio);
    TheoremRecord {
        matroid: label.into(),
        weights: wl.into(),
        theorem,
        i: r.i,
        j: r.j,
        d: r.d,
        s_both: q(&r.sums.s_both),
        s_i_only: q(&r.sums.s_i_only),
        s_j_only: q(&r.sums.s_j_only),
        s_neither: q(&r.sums.s_neither),
        ratio,
        ratio_approx,
        bound: q(&r.bound),
        satisfied: r.satisfied,
        free_pair: r.free_pair,
    }
}

fn theorem(cfg: &RunConfig, a: &PairArgs, which: u8, io: &mut Io<'_>) -> Result<Status, CliError> {
    let src = load_source(&a.source)?;
    let m = &src.matroid;
    let o = opts(cfg);
    let (w, wl) = load_weights(&a.weights, m.ground_size(), cfg.seed)?;
    let status = statuses(m)?;
    let free = |e: ElementId| status[e] == ElementStatus::Free;
    let pairs = select_pairs(&src, a, || {
        let all = eligible_pairs(m);
        if which == 1 {
            all
        } else {
            all.into_iter()
                .filter(|&(i, j)| free(i) && free(j))
                .collect()
        }
    })?;
    let reports: Vec<CorrelationReport> = match &pairs {
        Pairs::Single(i, j) if which == 1 => vec![check_theorem1(m, *i, *j, &w, &o)?],
        Pairs::Single(i, j) => vec![check_theorem2(m, *i, *j, &w, &o)?],
        Pairs::Sweep(list) => {
            let d = m.full_rank();
            let bound = if which == 1 {
                theorem1_bound(d)
            } else {
                theorem2_bound(d)
            };
            sweep_sums(m, list, &w, &o)?
                .into_iter()
                .map(|s| {
                    let fp = free(s.i) && free(s.j);
                    CorrelationReport::from_sums(s, bound.clone(), fp)
                })
                .collect::<matcorr::Result<_>>()?
        }
    };
    let records: Vec<TheoremRecord> = reports
        .iter()
        .map(|r| theorem_record(&src.label, &wl, which, r))
        .collect();
    write_records(cfg.format, &records, io.out)?;
    let violations = records.iter().filter(|r| !r.satisfied).count();
    if violations > 0 {
        writeln!(
            io.err,
            "{violations} of {} pairs violate the bound",
            records.len()
        )?;
    }
    Ok(Status::from_ok(violations == 0))
}

fn mason(cfg: &RunConfig, a: &SourceArgs, io: &mut Io<'_>) -> Result<Status, CliError> {
    let src = load_source(a)?;
    let n = src.matroid.ground_size();
    let profile = independence_profile(&src.matroid, &opts(cfg))?;
    let report = mason_check(&profile, n)?;
    let records: Vec<MasonRow> = report
        .records
        .iter()
        .map(|r| MasonRow {
            matroid: src.label.clone(),
            n,
            d: report.d,
            k: r.k,
            i_prev: profile.counts[r.k - 1].to_string(),
            i_k: profile.counts[r.k].to_string(),
            i_next: profile.counts[r.k + 1].to_string(),
            margin_2: r.margin_2.to_string(),
            holds_1: r.holds_1,
            holds_2: r.holds_2,
            holds_3: r.holds_3,
        })
        .collect();
    write_records(cfg.format, &records, io.out)?;
    Ok(Status::from_ok(report.all_hold_2()))
}

fn hodge(cfg: &RunConfig, a: &PairArgs, io: &mut Io<'_>) -> Result<Status, CliError> {
    let src = load_source(&a.source)?;
    let m = &src.matroid;
    let d = m.full_rank();
    if d < 2 {
        return Err(input(format!("certificates need rank d ≥ 2, got d = {d}")));
    }
    let o = opts(cfg);
    let (w, wl) = load_weights(&a.weights, m.ground_size(), cfg.seed)?;
    let pairs = select_pairs(&src, a, || eligible_pairs(m))?;
    let profile = weighted_profile(m, &w, &o)?;
    let mut records = Vec::new();
    for s in pair_sums(m, &pairs, &w, &o)? {
        let r = evaluate(&s, &profile)?;
        records.push(HodgeRecord {
            matroid: src.label.clone(),
            weights: wl.clone(),
            i: s.i,
            j: s.j,
            d,
            hij: matrix_string(&r.hij),
            hij_plus: r.hij.signature.plus,
            hij_minus: r.hij.signature.minus,
            hij_zero: r.hij.signature.zero,
            hij_det: q(&r.hij.det),
            hij_det_formula: q(&hij_det_formula(&s)),
            h0: matrix_string(&r.h0),
            h0_plus: r.h0.signature.plus,
            h0_minus: r.h0.signature.minus,
            h0_zero: r.h0.signature.zero,
            h0_det: q(&r.h0.det),
            h0_det_formula: q(&h0_det_formula(&profile)),
            passed: r.passed(),
        });
    }
    write_records(cfg.format, &records, io.out)?;
    Ok(Status::from_ok(records.iter().all(|r| r.passed)))
}

/// `Σ k·I_k / Σ I_k`.
pub fn exact_mean(profile: &IndependenceProfile) -> BigRational {
    let weighted: BigInt = profile
        .counts
        .iter()
        .enumerate()
        .map(|(k, c)| BigInt::from(c.clone()) * BigInt::from(k))
        .sum();
    BigRational::new(weighted, BigInt::from(profile.total()))
}

fn entropy(cfg: &RunConfig, a: &SourceArgs, io: &mut Io<'_>) -> Result<Status, CliError> {
    let src = load_source(a)?;
    let profile = independence_profile(&src.matroid, &opts(cfg))?;
    let r = entropy_from_profile(&profile)?;
    let mean = exact_mean(&profile);
    let record = EntropyRecord {
        matroid: src.label,
        d: r.d,
        profile: join(&profile.counts),
        mean: q(&mean),
        mean_approx: r.lambda,
        entropy: r.entropy,
        poisson_entropy: r.poisson_entropy_at_lambda,
        upper_bound: r.upper_bound,
        lower_chain: r.lower_chain,
        argmax: r.argmax,
        max_prob: r.max_prob,
        concentration_threshold: r.concentration_threshold,
        concentrated: r.concentrated,
        poisson_comparison: r.poisson_comparison,
        within_upper_bound: r.within_upper_bound,
        max_prob_consistent: r.max_prob_consistent,
        passed: r.passed(),
    };
    write_records(cfg.format, &[record], io.out)?;
    Ok(Status::from_ok(r.passed()))
}

fn spike_record(
    family: &str,
    p: u64,
    source: &str,
    c: &BasisPartitionCounts,
    formula: Option<&BigRational>,
    matches: Option<bool>,
) -> Result<SpikeRecord, CliError> {
    let ratio = ratio_fields(&ratio_of(&c.to_sums())?).0;
    Ok(SpikeRecord {
        family: family.into(),
        p,
        d: c.d,
        source: source.into(),
        s_both: c.s_both.to_string(),
        s_i_only: c.s_i_only.to_string(),
        s_j_only: c.s_j_only.to_string(),
        s_neither: c.s_neither.to_string(),
        total: c.total().to_string(),
        ratio,
        ratio_formula: formula.map(q),
        matches,
    })
}

fn spike_cmd(cfg: &RunConfig, a: &SpikeArgs, io: &mut Io<'_>) -> Result<Status, CliError> {
    let (family, p, entry) = match (a.p, a.m) {
        (Some(p), _) => ("spike", p, spike(p, a.d)?),
        (None, Some(m)) => ("transversal", m, transversal_family(m, a.d)?),
        (None, None) => return Err(CliError::Usage("one of --p or --m is required".into())),
    };
    let neither_flag = !a.closed_form && !a.enumerate;
    let want_closed = a.closed_form || a.compare || neither_flag;
    let want_enum = a.enumerate || a.compare || neither_flag;
    let closed = entry
        .expected
        .as_ref()
        .map(|e| e.counts.clone())
        .ok_or_else(|| input(format!("{} has no closed form", entry.name)))?;
    // Over a prime field the spike's unit ratio does not depend on p.
    let formula = (family == "spike" && matcorr::linalg::is_prime(p)).then(|| spike_ratio(a.d));
    let enumerated = if want_enum {
        Some(basis_partition(
            &entry.matroid,
            entry.i,
            entry.j,
            &opts(cfg),
        )?)
    } else {
        None
    };
    let matches = enumerated
        .as_ref()
        .filter(|_| a.compare)
        .map(|e| e.as_array() == closed.as_array());
    let mut records = Vec::new();
    if want_closed {
        records.push(spike_record(
            family,
            p,
            "closed-form",
            &closed,
            formula.as_ref(),
            matches,
        )?);
    }
    if let Some(e) = &enumerated {
        records.push(spike_record(
            family,
            p,
            "enumeration",
            e,
            formula.as_ref(),
            matches,
        )?);
    }
    write_records(cfg.format, &records, io.out)?;
    let formula_ok = match &formula {
        Some(f) => records.iter().all(|r| r.ratio == q(f)),
        None => true,
    };
    let ok = matches.unwrap_or(true) && formula_ok;
    if a.compare {
        writeln!(io.err, "ratio = {}, match = {ok}", records[0].ratio)?;
    }
    Ok(Status::from_ok(ok))
}

fn alpha(cfg: &RunConfig, a: &AlphaArgs, io: &mut Io<'_>) -> Result<Status, CliError> {
    let src = load_source(&a.source)?;
    let strategy = match a.strategy {
        StrategyName::Unit => Strategy::Unit,
        StrategyName::Grid => Strategy::Grid { levels: a.levels },
        StrategyName::Ascent => Strategy::Ascent {
            tol: a.tol,
            max_iter: a.max_iter,
        },
    };
    let est = alpha_lower_bound(&src.matroid, strategy, &opts(cfg))?;
    let one = BigRational::from_integer(1.into());
    let record = AlphaRecord {
        matroid: src.label,
        strategy: est.strategy.clone(),
        i: est.i,
        j: est.j,
        best_ratio: q(&est.best_ratio),
        best_ratio_approx: rational_to_f64(&est.best_ratio),
        weights: join(&est.weights.values().iter().map(q).collect::<Vec<_>>()),
        positively_correlated: est.best_ratio > one,
    };
    write_records(cfg.format, &[record], io.out)?;
    Ok(Status::Pass)
}
