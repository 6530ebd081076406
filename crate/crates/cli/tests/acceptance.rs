//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the verdict lines are always printed.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use matcorr::analytics::{boolean_lower_bound, entropy_from_profile, entropy_report, mason_check};
use matcorr::arith::format_rational;
use matcorr::certificates::evaluate;
use matcorr::constructions::{
    catalog, catalog_entry, golay_octads, s8, spike, spike_closed_form, spike_ratio, steiner_blocks,
};
use matcorr::correlation::{check_theorem2, eligible_pairs, ratio_of, theorem1_sweep, Ratio};
use matcorr::enumerate::{
    basis_partition, independence_profile, weighted_partition, weighted_profile, BasisTable,
    IndependenceProfile, SearchOptions, Weights,
};
use matcorr::linalg::PrimeFieldMatrix;
use matcorr::{BigRational, Derivation, Matroid, SubsetMask};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0xC0FFEE;
const BIN: &str = env!("CARGO_BIN_EXE_matcorr");

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn opts() -> SearchOptions {
    SearchOptions::with_workers(4)
}

fn weight_vectors(n: usize) -> Vec<(String, Weights)> {
    std::iter::once(("unit".to_string(), Weights::unit(n)))
        .chain((0..20u64).map(|k| {
            (
                format!("seed {:#x}", SEED + k),
                Weights::seeded(n, SEED + k),
            )
        }))
        .collect()
}

fn random_gf2(rng: &mut ChaCha8Rng, n: usize, rows: usize) -> Matroid {
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..rows).map(|_| rng.gen_range(0..2)).collect())
        .collect();
    Matroid::linear_gfp(PrimeFieldMatrix::new(2, rows, &cols).unwrap()).unwrap()
}

/// 50 random GF(2) matroids of rank ≥ 1 with two free elements appended.
fn free_double_extensions() -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    while out.len() < 50 {
        let n = rng.gen_range(3..=10);
        let rows = rng.gen_range(2..=5);
        let base = random_gf2(&mut rng, n, rows);
        if base.full_rank() >= 1 {
            out.push(base.derive(Derivation::FreeExtend(2)).unwrap());
        }
    }
    out
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, budget {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let want: [(&str, [u64; 4], u64); 4] = [
        ("simplicial", [11664, 11640, 11640, 11664], 46608),
        ("graphic", [80, 32, 192, 80], 384),
        ("transversal", [33, 36, 114, 126], 309),
        ("steiner", [7315, 22638, 22638, 72149], 124740),
    ];
    let mut totals = Vec::new();
    for (name, counts, total) in want {
        let e = catalog_entry(name).map_err(|e| e.to_string())?;
        let got = basis_partition(&e.matroid, e.i, e.j, &opts()).map_err(|e| e.to_string())?;
        let got_counts = got.as_array().map(|c| u64::try_from(c).unwrap_or(u64::MAX));
        ensure(got_counts == counts && got.total() == total.into(), || {
            format!("{name}: got {got_counts:?}, expected {counts:?}")
        })?;
        totals.push(total.to_string());
    }
    let (code, _, err) = run_cli(&["verify-examples", "--workers", "2"]);
    ensure(code == 0 && err.contains("4/4 PASS"), || {
        format!("verify-examples exit {code}: {err}")
    })?;
    let (code, _, _) = run_cli(&["verify-examples", "--only", "simplicial", "--corrupt"]);
    ensure(code == 1, || {
        format!("corrupted expectation exited {code}, expected 1")
    })?;
    Ok(format!(
        "totals {} ({})",
        totals.join(", "),
        within(Duration::from_secs(60), start)?
    ))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    for p in [2u64, 3] {
        for d in 2..=5 {
            let e = spike(p, d).map_err(|e| e.to_string())?;
            let got = basis_partition(&e.matroid, e.i, e.j, &opts()).map_err(|e| e.to_string())?;
            let closed = spike_closed_form(p, d).map_err(|e| e.to_string())?;
            ensure(got == closed, || {
                format!("p = {p}, d = {d}: enumeration {got:?} vs closed form {closed:?}")
            })?;
            let ratio = ratio_of(&got.to_sums()).map_err(|e| e.to_string())?;
            let dd = d as i64;
            let formula = q(dd * dd - 2 * dd + 1, dd * dd - 3 * dd + 4);
            ensure(ratio == Ratio::Value(formula.clone()), || {
                format!(
                    "p = {p}, d = {d}: ratio {ratio:?} vs {}",
                    format_rational(&formula)
                )
            })?;
        }
    }
    let (best_d, best) = (2..=100).fold((0, q(0, 1)), |acc, d| {
        let r = spike_ratio(d);
        if r > acc.1 {
            (d, r)
        } else {
            acc
        }
    });
    ensure(best_d == 5 && best == q(8, 7), || {
        format!("max at d = {best_d}: {best}")
    })?;
    Ok(format!(
        "16 partitions exact, max ratio 8/7 at d = 5 ({})",
        within(Duration::from_secs(30), start)?
    ))
}

/// The 2(1−1/d) sweep plus certificates over the same (matroid, pair, weights) triples.
struct Sweep {
    checks: usize,
    violations: Vec<String>,
    certificates: usize,
    certificate_failures: Vec<String>,
}

fn catalog_sweep() -> Result<Sweep, String> {
    let mut s = Sweep {
        checks: 0,
        violations: Vec::new(),
        certificates: 0,
        certificate_failures: Vec::new(),
    };
    for e in catalog().map_err(|e| e.to_string())? {
        let m = &e.matroid;
        let table = BasisTable::new(m, &opts()).map_err(|e| e.to_string())?;
        let pairs = eligible_pairs(m);
        for (label, w) in weight_vectors(m.ground_size()) {
            let profile = weighted_profile(m, &w, &opts()).map_err(|e| e.to_string())?;
            for r in theorem1_sweep(&table, &pairs, &w, &opts()).map_err(|e| e.to_string())? {
                s.checks += 1;
                if !r.satisfied {
                    s.violations
                        .push(format!("{} ({}, {}) {label}", e.name, r.i, r.j));
                }
                s.certificates += 1;
                match evaluate(&r.sums, &profile) {
                    Ok(c) if c.passed() => {}
                    other => s
                        .certificate_failures
                        .push(format!("{} ({}, {}) {label}: {other:?}", e.name, r.i, r.j)),
                }
            }
        }
    }
    for m in free_double_extensions() {
        let n = m.ground_size();
        if m.full_rank() < 2 {
            continue;
        }
        let profile =
            weighted_profile(&m, &Weights::unit(n), &opts()).map_err(|e| e.to_string())?;
        let sums = weighted_partition(&m, n - 2, n - 1, &Weights::unit(n), &opts())
            .map_err(|e| e.to_string())?;
        s.certificates += 1;
        match evaluate(&sums, &profile) {
            Ok(c) if c.passed() => {}
            other => s
                .certificate_failures
                .push(format!("free extension on {n} elements: {other:?}")),
        }
    }
    Ok(s)
}

fn criterion_3(sweep: &Sweep) -> Verdict {
    ensure(sweep.violations.is_empty(), || {
        format!(
            "{} violations of the 2(1−1/d) bound, first: {}",
            sweep.violations.len(),
            sweep.violations[0]
        )
    })?;
    let mut theorem2 = 0;
    for (k, m) in free_double_extensions().into_iter().enumerate() {
        let n = m.ground_size();
        for w in [Weights::unit(n), Weights::seeded(n, SEED + k as u64)] {
            let r = check_theorem2(&m, n - 2, n - 1, &w, &opts()).map_err(|e| e.to_string())?;
            ensure(r.satisfied, || {
                format!("(1−1/d) bound violated on extension {k}: {:?}", r.sums)
            })?;
            theorem2 += 1;
        }
    }
    Ok(format!(
        "{} 2(1−1/d) checks (unit + 20 seeded weights), {theorem2} free-pair (1−1/d) checks on 50 free double extensions, 0 violations",
        sweep.checks
    ))
}

fn criterion_4(sweep: &Sweep) -> Verdict {
    ensure(sweep.certificate_failures.is_empty(), || {
        format!(
            "{} certificate failures, first: {}",
            sweep.certificate_failures.len(),
            sweep.certificate_failures[0]
        )
    })?;
    Ok(format!(
        "{} H_ij/H_0 pairs certified exactly",
        sweep.certificates
    ))
}

fn criterion_5() -> Verdict {
    let octads = golay_octads().map_err(|e| e.to_string())?;
    ensure(octads.len() == 759, || format!("{} octads", octads.len()))?;
    for p in 0..24 {
        let through = octads.iter().filter(|o| o.contains(p)).count();
        ensure(through == 253, || {
            format!("{through} octads through point {p}")
        })?;
        for r in p + 1..24 {
            let c = octads
                .iter()
                .filter(|o| o.contains(p) && o.contains(r))
                .count();
            ensure(c == 77, || format!("{c} octads through ({p}, {r})"))?;
        }
    }
    let v = steiner_blocks(0, 1).map_err(|e| e.to_string())?.len();
    ensure(v == 352, || format!("|V| = {v}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let s = sample(&mut rng, 24, 5)
            .into_iter()
            .fold(SubsetMask::EMPTY, |acc, e| acc.with(e));
        let c = octads.iter().filter(|o| s.is_subset(**o)).count();
        ensure(c == 1, || format!("5-subset {s:?} lies in {c} octads"))?;
    }
    for (k, a) in octads.iter().enumerate() {
        for b in &octads[k + 1..] {
            let meet = a.intersection(*b).len();
            ensure(matches!(meet, 0 | 2 | 4), || {
                format!("octads meet in {meet} points")
            })?;
        }
    }
    Ok(
        "759 octads, 253 per point, 77 per pair, |V| = 352, 10000 random 5-subsets covered once"
            .into(),
    )
}

fn criterion_6() -> Verdict {
    let mut checked = 0;
    for e in catalog().map_err(|e| e.to_string())? {
        let p = independence_profile(&e.matroid, &opts()).map_err(|e| e.to_string())?;
        let r = mason_check(&p, e.matroid.ground_size()).map_err(|e| e.to_string())?;
        ensure(r.all_hold_2(), || format!("{}: {:?}", e.name, r.records))?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for k in 0..100 {
        let n = rng.gen_range(3..=12);
        let rows = rng.gen_range(2..=6);
        let m = random_gf2(&mut rng, n, rows);
        let p = independence_profile(&m, &opts()).map_err(|e| e.to_string())?;
        let r = mason_check(&p, n).map_err(|e| e.to_string())?;
        ensure(r.all_hold_2(), || {
            format!("random matroid {k}: {:?}", p.counts)
        })?;
        checked += 1;
    }
    Ok(format!(
        "form (2) exact on {checked} profiles, 0 violations"
    ))
}

fn criterion_7() -> Verdict {
    let mut n = 0;
    for e in catalog().map_err(|e| e.to_string())? {
        let r = entropy_report(&e.matroid, &opts()).map_err(|e| e.to_string())?;
        ensure(r.poisson_comparison && r.within_upper_bound, || {
            format!(
                "{}: H = {}, H(Poisson) = {}, bound = {}",
                e.name, r.entropy, r.poisson_entropy_at_lambda, r.upper_bound
            )
        })?;
        ensure(r.concentrated, || {
            format!("{}: max_k p_k = {} not above 1/(5√d)", e.name, r.max_prob)
        })?;
        ensure(r.passed(), || format!("{}: {r:?}", e.name))?;
        n += 1;
    }
    for d in 2..=64 {
        let r =
            entropy_from_profile(&IndependenceProfile::boolean(d)).map_err(|e| e.to_string())?;
        ensure(boolean_lower_bound(d) <= r.entropy, || {
            format!(
                "B_{d}: lower bound {} exceeds H = {}",
                boolean_lower_bound(d),
                r.entropy
            )
        })?;
    }
    Ok(format!(
        "{n} catalog profiles within the Poisson and Gaussian bounds and concentrated; boolean chain holds for d = 2..64 (the limit 1/2 is bracketed, not asserted)"
    ))
}

fn criterion_8() -> Verdict {
    let e = s8().map_err(|e| e.to_string())?;
    let n = e.matroid.ground_size();
    let sums = weighted_partition(&e.matroid, e.i, e.j, &Weights::unit(n), &opts())
        .map_err(|e| e.to_string())?;
    let ratio = ratio_of(&sums).map_err(|e| e.to_string())?;
    let spike_closed = ratio_of(
        &spike_closed_form(2, 4)
            .map_err(|e| e.to_string())?
            .to_sums(),
    )
    .map_err(|e| e.to_string())?;
    ensure(ratio == Ratio::Value(q(9, 8)), || {
        format!("S_8 ratio {ratio:?}")
    })?;
    ensure(ratio == spike_closed, || {
        format!("spike(2,4) closed-form ratio {spike_closed:?}")
    })?;
    Ok(format!(
        "S_8 pair ({}, {}) has ratio 9/8 > 1, equal to spike(2,4)",
        e.i, e.j
    ))
}

fn free_extension_file() -> Result<PathBuf, String> {
    let m = free_double_extensions().swap_remove(0);
    let path = std::env::temp_dir().join(format!("matcorr-acceptance-{}.json", std::process::id()));
    let text = serde_json::to_string(&m.to_doc()).map_err(|e| e.to_string())?;
    std::fs::write(&path, text).map_err(|e| e.to_string())?;
    Ok(path)
}

fn criterion_9() -> Verdict {
    let file = free_extension_file()?;
    let file = file
        .to_str()
        .ok_or("temporary path is not UTF-8")?
        .to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["verify-examples"],
        vec![
            "ratio",
            "--catalog",
            "steiner",
            "--all-pairs",
            "--weights",
            "random",
        ],
        vec![
            "theorem1",
            "--catalog",
            "simplicial",
            "--all-pairs",
            "--weights",
            "random",
        ],
        vec!["theorem2", "--matroid", &file, "--weights", "random"],
        vec!["mason", "--catalog", "steiner"],
        vec![
            "hodge",
            "--catalog",
            "transversal",
            "--all-pairs",
            "--weights",
            "random",
        ],
        vec!["entropy", "--catalog", "simplicial"],
        vec!["spike", "--p", "3", "--d", "5", "--compare"],
        vec![
            "alpha",
            "--catalog",
            "s8",
            "--strategy",
            "grid",
            "--levels",
            "4",
        ],
        vec![
            "alpha",
            "--catalog",
            "spike-2-4",
            "--strategy",
            "ascent",
            "--max-iter",
            "4",
        ],
    ];
    let mut runs = 0;
    for cmd in &commands {
        for format in ["json", "csv"] {
            let mut outputs = Vec::new();
            for workers in ["1", "2", "8"] {
                let mut args = cmd.clone();
                args.extend(["--format", format, "--workers", workers]);
                let (code, out, err) = run_cli(&args);
                ensure(code == 0, || format!("{args:?} exited {code}: {err}"))?;
                ensure(!out.is_empty(), || format!("{args:?} printed nothing"))?;
                outputs.push(out);
                runs += 1;
            }
            ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
                format!(
                    "{} --format {format} differs across worker counts",
                    cmd.join(" ")
                )
            })?;
        }
    }
    let _ = std::fs::remove_file(&file);
    Ok(format!(
        "{} commands × 2 formats byte-identical across 1, 2, 8 workers ({runs} runs)",
        commands.len()
    ))
}

fn main() {
    let start = Instant::now();
    let sweep = catalog_sweep();
    let results: Vec<(u32, &str, Verdict)> = vec![
        (1, "example reproduction", criterion_1()),
        (2, "spike closed forms", criterion_2()),
        (
            3,
            "correlation bound sweeps",
            sweep.as_ref().map_err(Clone::clone).and_then(criterion_3),
        ),
        (
            4,
            "certificate suite",
            sweep.as_ref().map_err(Clone::clone).and_then(criterion_4),
        ),
        (5, "Golay/Steiner self-check", criterion_5()),
        (6, "Mason form (2)", criterion_6()),
        (7, "entropy suite", criterion_7()),
        (8, "S_8 positive correlation", criterion_8()),
        (9, "determinism", criterion_9()),
    ];
    let mut failed = 0;
    for (k, name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("criterion {k} [{name}]: PASS — {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k} [{name}]: FAIL — {why}");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
