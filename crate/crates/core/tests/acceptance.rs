//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Criterion 7 needs the Calgary corpus; point `SUCCESSION_CORPUS_DIR` at it.
//! Without it the criterion prints SKIP and does not fail the run.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use succession::codec::{
    evaluate_laws, evaluate_stream, synthesize_sunrise, SymbolStream, LAPLACE_SUNRISE_DAYS,
    SUNRISE_DAYS,
};
use succession::corpus::{self, CALGARY_TOTALS, CORPUS_DIR_ENV, FILE_TOLERANCE, TOTAL_TOLERANCE};
use succession::exact::{self, Rational};
use succession::laws::TABLE1_LAWS;
use succession::oracle::{self, SuiteResult};
use succession::priors::{self, string_logprob, SubsetScenario};
use succession::{FrequencyVector, SuccessionLaw, Symbol};

enum Verdict {
    Pass,
    Fail,
    Skip,
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn report(&mut self, id: u32, name: &str, verdict: Verdict, detail: String) {
        let tag = match verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                self.failures += 1;
                "FAIL"
            }
            Verdict::Skip => "SKIP",
        };
        println!("{tag} [{id}] {name}: {detail}");
    }

    fn check(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        self.report(
            id,
            name,
            if ok { Verdict::Pass } else { Verdict::Fail },
            detail,
        );
    }
}

fn suite_detail(suites: &[&SuiteResult], elapsed: Duration, budget: Duration) -> (bool, String) {
    let ok = suites.iter().all(|s| s.passed()) && elapsed < budget;
    let mut parts: Vec<String> = suites.iter().map(|s| s.to_string()).collect();
    parts.push(format!(
        "{:.2}s of {}s",
        elapsed.as_secs_f64(),
        budget.as_secs()
    ));
    for s in suites {
        parts.extend(s.failures.iter().take(3).cloned());
    }
    (ok, parts.join("; "))
}

fn random_vectors(rng: &mut ChaCha8Rng, count: usize) -> Vec<FrequencyVector> {
    let ks = [2usize, 3, 5, 256];
    (0..count)
        .map(|i| {
            let k = ks[i % ks.len()];
            let n: u64 = rng.gen_range(0..=10_000);
            // a random sub-alphabet keeps q spread out rather than pinned at k
            let support = rng.gen_range(1..=k);
            let mut counts = vec![0u64; k];
            for _ in 0..n {
                counts[rng.gen_range(0..support)] += 1;
            }
            FrequencyVector::from_counts(k, &counts).unwrap()
        })
        .collect()
}

fn criterion_1(g: &mut Gate, rng: &mut ChaCha8Rng) {
    let t = Instant::now();
    let exhaustive = oracle::normalization(6, 10).unwrap();
    let random = oracle::normalization_of(&random_vectors(rng, 1000)).unwrap();
    let (ok, detail) = suite_detail(
        &[&exhaustive, &random],
        t.elapsed(),
        Duration::from_secs(10),
    );
    g.check(1, "normalization", ok, detail);
}

fn criterion_2(g: &mut Gate) {
    let t = Instant::now();
    let s = oracle::oracle_equivalence(6, 10).unwrap();
    let (ok, detail) = suite_detail(&[&s], t.elapsed(), Duration::from_secs(30));
    g.check(2, "oracle equivalence", ok, detail);
}

fn criterion_3(g: &mut Gate) {
    let t = Instant::now();
    let s = oracle::reduction_and_escape(6, 10).unwrap();
    // the natural escape mass on large histories, across alphabet sizes
    let mut spread = true;
    for (n, q) in [(1_000u64, 17usize), (123_456, 200), (10, 10)] {
        let mut counts = vec![1u64; q];
        counts[0] = n - (q as u64 - 1);
        let base = FrequencyVector::from_counts(q + 1, &counts).unwrap();
        let m = SuccessionLaw::Natural.escape_mass(&base).value();
        for k in [1_000usize, 1_000_000] {
            let fv = FrequencyVector::from_counts(k, &counts).unwrap();
            spread &= SuccessionLaw::Natural.escape_mass(&fv).value().to_bits() == m.to_bits();
        }
    }
    let (ok, detail) = suite_detail(&[&s], t.elapsed(), Duration::from_secs(60));
    g.check(
        3,
        "reduction and escape identities",
        ok && spread,
        format!("{detail}; natural escape identical for large k: {spread}"),
    );
}

fn random_string(rng: &mut ChaCha8Rng, k: usize, n: usize, last_from_all: bool) -> Vec<usize> {
    let support = if last_from_all && k > 1 {
        rng.gen_range(1..k)
    } else {
        rng.gen_range(1..=k)
    };
    let mut s: Vec<usize> = (0..n).map(|_| rng.gen_range(0..support)).collect();
    if last_from_all && n > 0 {
        s[n - 1] = rng.gen_range(0..k);
    }
    s
}

fn criterion_4(g: &mut Gate, rng: &mut ChaCha8Rng) {
    let mut laws = vec![SuccessionLaw::Laplace];
    for l in [0.25, 0.5, 1.0, 2.0] {
        laws.push(SuccessionLaw::lidstone(l).unwrap());
    }
    let discounts: Vec<SuccessionLaw> = [0.25, 0.5, 0.75]
        .iter()
        .map(|&d| SuccessionLaw::absolute_discount(d).unwrap())
        .collect();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..500 {
        let k = rng.gen_range(1..=8);
        let n = rng.gen_range(1..=200);
        // Discounting hands the escape mass to all k symbols once q = k, so
        // only strings that complete the alphabet on the last symbol, or
        // never, follow the closed form. With k = 1 that is impossible.
        for (group, last_from_all) in [(&laws, false), (&discounts, true)] {
            let k = if last_from_all { k.max(2) } else { k };
            let s = random_string(rng, k, n, last_from_all);
            let stream = SymbolStream::new(k, s.iter().map(|&x| x as u32).collect()).unwrap();
            let fv = stream.frequencies();
            for (law, r) in group.iter().zip(evaluate_laws(&stream, group).unwrap()) {
                let closed = string_logprob(&fv, law).unwrap().bits();
                // compare probabilities: |2^-a / 2^-b - 1|
                let rel = ((closed - r.bits) * std::f64::consts::LN_2).exp_m1().abs();
                worst = worst.max(rel);
                cases += 1;
            }
        }
    }
    let telescopes = worst <= 1e-7;

    // prior-derived laws: "11" is not a witness, "111" is
    let witness = |s: &[usize], law: &SuccessionLaw| {
        let fv = FrequencyVector::from_symbols(2, s.iter().copied()).unwrap();
        let seq = exact::sequential_probability(2, s, law).unwrap();
        let prior = exact::string_probability(&fv, law).unwrap();
        (seq, prior)
    };
    let mut lines = Vec::new();
    let mut counterexample = true;
    for law in [SuccessionLaw::UniformSubsets, SuccessionLaw::Natural] {
        let (s2, p2) = witness(&[1, 1], &law);
        let (s3, p3) = witness(&[1, 1, 1], &law);
        counterexample &= s3 != p3;
        lines.push(format!(
            "{law}: \"11\" sequential {s2} vs prior {p2} ({}), \"111\" sequential {s3} vs prior {p3}",
            if s2 == p2 { "equal" } else { "differ" }
        ));
    }
    g.check(
        4,
        "telescoping",
        telescopes && counterexample,
        format!(
            "{cases} closed-form comparisons, worst relative error {worst:.2e} (limit 1e-7); {}",
            lines.join("; ")
        ),
    );
}

fn criterion_5(g: &mut Gate) {
    let t = Instant::now();
    let s = oracle::totality(4, 8).unwrap();
    let (ok, detail) = suite_detail(&[&s], t.elapsed(), Duration::from_secs(60));
    g.check(5, "brute-force totality", ok, detail);
}

fn criterion_6(g: &mut Gate) {
    let t = Instant::now();
    let jp = SuccessionLaw::jeffreys_perks();
    let expected = [
        (100u64, SuccessionLaw::Laplace, 301.0),
        (SUNRISE_DAYS, SuccessionLaw::Laplace, 3644.0),
        (100, jp, 225.0),
        (SUNRISE_DAYS, jp, 1952.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (days, law, want) in expected {
        let bits = evaluate_stream(&synthesize_sunrise(days), &law)
            .unwrap()
            .bits;
        let hit = (bits - want).abs() <= 1.0 && bits.ceil() == want;
        ok &= hit;
        parts.push(format!(
            "{law} {days} days {bits:.3} bits (ceil {}, expected {want})",
            bits.ceil()
        ));
    }
    let fv = FrequencyVector::from_counts(2, &[0, LAPLACE_SUNRISE_DAYS]).unwrap();
    let p = exact::conditional(&fv, Symbol(1), &SuccessionLaw::Laplace).unwrap();
    let want = Rational::from_integer(1.into()) - Rational::new(1.into(), 1_826_215.into());
    ok &= p == want;
    parts.push(format!(
        "laplace k=2 after {LAPLACE_SUNRISE_DAYS} days = {p}"
    ));
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    parts.push(format!("{:.2}s of 5s", elapsed.as_secs_f64()));
    g.check(6, "sunrise reproduction", ok, parts.join("; "));
}

fn corpus_dir() -> Option<PathBuf> {
    std::env::var_os(CORPUS_DIR_ENV)
        .map(PathBuf::from)
        .or_else(|| Some(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/calgary")))
        .filter(|p| p.is_dir())
}

fn criterion_7(g: &mut Gate) {
    let Some(dir) = corpus_dir() else {
        eprintln!("warning: Calgary corpus not found; set {CORPUS_DIR_ENV} to run criterion 7");
        g.report(
            7,
            "Calgary table",
            Verdict::Skip,
            "corpus directory absent".into(),
        );
        return;
    };
    let manifest = corpus::calgary_manifest();
    let t = Instant::now();
    let run = corpus::run_corpus(&manifest, &dir, &TABLE1_LAWS).unwrap();
    let elapsed = t.elapsed();
    let mut parts = vec![format!(
        "{} files evaluated, {} skipped",
        run.files.len(),
        run.skipped.len()
    )];
    let mut ok = run.skipped.is_empty() && elapsed < Duration::from_secs(60);
    for f in &run.files {
        let entry = manifest.entries.iter().find(|e| e.name == f.name).unwrap();
        let scores: Vec<i64> = f.reports.iter().map(|r| r.score_bytes).collect();
        let want = entry.expected_scores.unwrap();
        let off: Vec<i64> = scores.iter().zip(want).map(|(s, w)| s - w).collect();
        let file_ok =
            off.iter().all(|d| d.abs() <= FILE_TOLERANCE) && Some(f.q) == entry.expected_q;
        ok &= file_ok;
        if !file_ok {
            parts.push(format!(
                "{} q={} scores {scores:?} expected {want:?}",
                f.name, f.q
            ));
        }
    }
    if run.skipped.is_empty() {
        let off: Vec<i64> = run
            .totals
            .iter()
            .zip(CALGARY_TOTALS)
            .map(|(t, w)| t - w)
            .collect();
        ok &= off.iter().all(|d| d.abs() <= TOTAL_TOLERANCE);
        parts.push(format!("totals {:?} (deviation {off:?})", run.totals));
    } else {
        parts.push(format!("skipped: {:?}", run.skipped));
    }
    parts.push(format!("{:.2}s of 60s", elapsed.as_secs_f64()));
    g.check(7, "Calgary table", ok, parts.join("; "));
}

fn skewed(k: usize, q: usize, n: u64) -> FrequencyVector {
    let mut counts = vec![1u64; q];
    counts[0] = n - (q as u64 - 1);
    FrequencyVector::from_counts(k, &counts).unwrap()
}

fn criterion_8(g: &mut Gate) {
    let mut parts = Vec::new();
    let mut ok = true;

    let mut bound_ok = true;
    for b in [2u64, 66, 128] {
        for n in [256u64, 1_000, 10_000] {
            let s = SubsetScenario::new(256, b, n, SuccessionLaw::Laplace).unwrap();
            let total = priors::possible_set_logprob(&s).unwrap().total.log2();
            bound_ok &= total < priors::laplace_possible_set_bound(256, b, n);
        }
    }
    ok &= bound_ok;
    parts.push(format!(
        "laplace possible-set bound holds on 9 points: {bound_ok}"
    ));

    // brute force: strings over {0,1} in a 4-symbol alphabet that use both
    let mut constant = true;
    let stratum = Rational::new(1.into(), 24.into());
    for n in 4..=10u32 {
        let mut total = Rational::zero();
        for mask in 0u32..(1 << n) {
            let ones = mask.count_ones() as u64;
            if ones == 0 || ones == n as u64 {
                continue;
            }
            let fv = FrequencyVector::from_counts(4, &[n as u64 - ones, ones]).unwrap();
            total += exact::string_probability(&fv, &SuccessionLaw::Natural).unwrap();
        }
        let s = SubsetScenario::new(4, 2, n as u64, SuccessionLaw::Natural).unwrap();
        let closed = priors::possible_set_logprob(&s)
            .unwrap()
            .full_stratum
            .unwrap()
            .log2();
        constant &= total == stratum && (closed - (1.0f64 / 24.0).log2()).abs() < 1e-12;
    }
    ok &= constant;
    parts.push(format!(
        "natural q=b stratum for k=4, b=2 is 1/24 for n=4..10 by brute force: {constant}"
    ));

    for q in [1usize, 66] {
        let k = 256usize;
        let ns: Vec<u64> = (0..=30)
            .map(|i| (1e3 * 1e3f64.powf(i as f64 / 30.0)).round() as u64)
            .collect();
        let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).log2()).collect();
        let ys: Vec<f64> = ns
            .iter()
            .map(|&n| {
                priors::log_ratio(
                    &skewed(k, q, n),
                    &SuccessionLaw::Natural,
                    &SuccessionLaw::Laplace,
                )
                .unwrap()
            })
            .collect();
        let slope = priors::fitted_slope(&xs, &ys);
        let target = (k - q) as f64;
        let hit = (slope / target - 1.0).abs() <= 0.05;
        ok &= hit;
        parts.push(format!(
            "natural/laplace log-ratio slope, q={q}: {slope:.2} vs k-q={target}"
        ));
    }
    g.check(8, "possible-set analysis", ok, parts.join("; "));
}

fn criterion_9(g: &mut Gate) {
    let mut parts = Vec::new();
    let (k, q) = (8usize, 4usize);
    let abs = SuccessionLaw::absolute_discount(0.5).unwrap();
    let lin = SuccessionLaw::linear_discount(0.5).unwrap();
    let ns: Vec<u64> = (50..=200).step_by(10).collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = ns
        .iter()
        .map(|&n| priors::log_ratio(&skewed(k, q, n), &abs, &lin).unwrap())
        .collect();
    let slope = priors::fitted_slope(&xs, &ys);
    let slope_ok = (slope - 1.0).abs() <= 0.05;
    parts.push(format!(
        "log2(p_abs/p_lin) slope {slope:.4} bits per symbol, alpha = delta = 1/2"
    ));

    // Good-Turing: zero deviation exactly when every attested count c has
    // c - 1 realized too
    let cases: [(&[u64], usize, bool); 5] = [
        (&[1, 2], 3, true),
        (&[1, 1, 2, 3], 6, true),
        (&[2], 2, false),
        (&[1, 3], 3, false),
        (&[5, 5], 2, false),
    ];
    let mut gt_ok = true;
    for (counts, k, telescopes) in cases {
        let fv = FrequencyVector::from_counts(k, counts).unwrap();
        let exact_dev = exact::good_turing_mass_deviation(&fv).unwrap();
        let float_dev = succession::laws::good_turing_mass_deviation(&fv);
        gt_ok &= exact_dev.is_zero() == telescopes && (float_dev == 0.0) == telescopes;
        parts.push(format!("GT {counts:?} k={k}: deviation {exact_dev}"));
    }
    g.check(
        9,
        "discounting and Good-Turing",
        slope_ok && gt_ok,
        parts.join("; "),
    );
}

fn main() {
    let mut g = Gate { failures: 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let t = Instant::now();
    criterion_1(&mut g, &mut rng);
    criterion_2(&mut g);
    criterion_3(&mut g);
    criterion_4(&mut g, &mut rng);
    criterion_5(&mut g);
    criterion_6(&mut g);
    criterion_7(&mut g);
    criterion_8(&mut g);
    criterion_9(&mut g);
    // printed for the record; the exact value sits below it
    let bound = -(4.0f64 / 2.0);
    let exact_stratum = (1.0f64 / 24.0).log2();
    println!(
        "INFO unverified printed bound: log2 p(B^n) for k=4, b=2 is {exact_stratum:.3}, below -k/2 = {bound}"
    );
    println!(
        "{} failure(s), {:.1}s",
        g.failures,
        t.elapsed().as_secs_f64()
    );
    if g.failures > 0 {
        std::process::exit(1);
    }
}
