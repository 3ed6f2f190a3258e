//! Exhaustive cross-checks between the laws, their priors and the exact
//! rational implementations.
//!
//! Each suite walks every count vector (or every string) within the given
//! bounds and records the cases that disagree. The bounds are small by
//! design: the exact side uses big rationals.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::exact::{self, Rational};
use crate::freq::{FrequencyVector, Symbol};
use crate::laws::SuccessionLaw;
use crate::priors;
use crate::Result;

/// Relative tolerance for floating-point results against exact ones.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

const MAX_REPORTED: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: u64,
    pub failed: u64,
    /// The first few failures, described.
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{}: {verdict} ({} cases, {} failed)",
            self.name, self.cases, self.failed
        )
    }
}

/// Every count vector over `k` symbols with total at most `max_n`, in
/// lexicographic order.
pub fn count_vectors(k: usize, max_n: u64) -> Vec<Vec<u64>> {
    fn go(k: usize, budget: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=budget {
            prefix.push(c);
            go(k, budget - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, max_n, &mut Vec::with_capacity(k), &mut out);
    out
}

fn vectors(max_k: usize, max_n: u64) -> impl Iterator<Item = FrequencyVector> {
    (1..=max_k).flat_map(move |k| {
        count_vectors(k, max_n)
            .into_iter()
            .map(move |c| FrequencyVector::from_counts(k, &c).expect("valid counts"))
    })
}

pub fn relative_error(approx: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        approx.abs()
    } else {
        ((approx - exact) / exact).abs()
    }
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// One representative symbol per distinct count.
fn class_representatives(fv: &FrequencyVector) -> Vec<Symbol> {
    let mut reps: Vec<Symbol> = fv.first_novel().into_iter().collect();
    let mut seen = Vec::new();
    for (s, c) in fv.attested() {
        if !seen.contains(&c) {
            seen.push(c);
            reps.push(s);
        }
    }
    reps
}

/// Laws whose conditionals should follow from their string probabilities.
pub fn prior_derived_laws() -> Vec<SuccessionLaw> {
    let mut laws = vec![SuccessionLaw::Laplace];
    for l in [0.25, 0.5, 1.0, 2.0] {
        laws.push(SuccessionLaw::lidstone(l).expect("valid lambda"));
    }
    laws.push(SuccessionLaw::UniformSubsets);
    laws.push(SuccessionLaw::Natural);
    laws
}

/// Every normalized law sums to one: exactly in rationals and within
/// [`RELATIVE_TOLERANCE`] in floating point.
pub fn normalization(max_k: usize, max_n: u64) -> Result<SuiteResult> {
    let laws: Vec<_> = SuccessionLaw::catalog()
        .into_iter()
        .filter(SuccessionLaw::is_normalized)
        .collect();
    let mut r = SuiteResult::new("normalization");
    for fv in vectors(max_k, max_n) {
        for law in &laws {
            let total = exact::total_mass(&fv, law)?;
            let float: f64 = (0..fv.k())
                .map(|i| law.conditional(&fv, Symbol(i)).map(|p| p.value()))
                .sum::<Result<f64>>()?;
            r.check(
                total.is_one() && relative_error(float, 1.0) <= RELATIVE_TOLERANCE,
                || {
                    format!(
                        "{law} at {:?}: exact {total}, float {float}",
                        fv.dense_counts()
                    )
                },
            );
        }
    }
    Ok(r)
}

// The f_c symbols with count c share one value.
fn float_mass(fv: &FrequencyVector, law: &SuccessionLaw) -> Result<f64> {
    let mut total = 0.0;
    if fv.novel() > 0 {
        total += fv.novel() as f64 * law.conditional_for_count(fv, 0)?.value();
    }
    for (c, m) in fv.fof_iter() {
        total += m as f64 * law.conditional_for_count(fv, c)?.value();
    }
    Ok(total)
}

/// Floating-point normalization over arbitrary vectors.
pub fn normalization_of<'a, I>(vectors: I) -> Result<SuiteResult>
where
    I: IntoIterator<Item = &'a FrequencyVector>,
{
    let laws: Vec<_> = SuccessionLaw::catalog()
        .into_iter()
        .filter(SuccessionLaw::is_normalized)
        .collect();
    let mut r = SuiteResult::new("normalization (random)");
    for fv in vectors {
        for law in &laws {
            let total = float_mass(fv, law)?;
            r.check(relative_error(total, 1.0) <= RELATIVE_TOLERANCE, || {
                format!("{law} at n={} q={} k={}: {total}", fv.n(), fv.q(), fv.k())
            });
        }
    }
    Ok(r)
}

/// Conditionals recovered from the string probabilities equal the laws,
/// both in rationals and in floating point.
pub fn oracle_equivalence(max_k: usize, max_n: u64) -> Result<SuiteResult> {
    let laws = prior_derived_laws();
    let mut r = SuiteResult::new("oracle equivalence");
    for fv in vectors(max_k, max_n) {
        let reps = class_representatives(&fv);
        for law in &laws {
            let via_prior = exact::conditionals_from_prior(&fv, law)?;
            for &sym in &reps {
                let c = fv.count(sym);
                let prior = &via_prior
                    .iter()
                    .find(|(count, _)| *count == c)
                    .expect("class")
                    .1;
                let direct = exact::conditional(&fv, sym, law)?;
                let float_prior = priors::conditional_from_prior(&fv, sym, law)?.value();
                let float_direct = law.conditional(&fv, sym)?.value();
                r.check(
                    *prior == direct
                        && relative_error(float_prior, float_direct) <= RELATIVE_TOLERANCE,
                    || {
                        format!(
                            "{law} at {:?}, symbol {}: prior {prior} vs law {direct} ({float_prior} vs {float_direct})",
                            fv.dense_counts(),
                            sym.0
                        )
                    },
                );
            }
        }
    }
    Ok(r)
}

/// Reductions and escape identities:
/// both prior-derived laws reduce to Laplace once every symbol is attested;
/// the natural escape mass does not depend on `k`;
/// each law's escape mass equals the sum of its novel conditionals.
pub fn reduction_and_escape(max_k: usize, max_n: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("reduction and escape");
    let laws: Vec<_> = SuccessionLaw::catalog()
        .into_iter()
        .filter(SuccessionLaw::is_normalized)
        .collect();
    for fv in vectors(max_k, max_n) {
        if fv.n() > 0 && fv.novel() == 0 {
            for sym in class_representatives(&fv) {
                let laplace = exact::conditional(&fv, sym, &SuccessionLaw::Laplace)?;
                for law in [SuccessionLaw::Natural, SuccessionLaw::UniformSubsets] {
                    let p = exact::conditional(&fv, sym, &law)?;
                    let bit_identical = law.conditional(&fv, sym)?.value()
                        == SuccessionLaw::Laplace.conditional(&fv, sym)?.value();
                    let ok =
                        p == laplace && (bit_identical || !matches!(law, SuccessionLaw::Natural));
                    r.check(ok, || {
                        format!("{law} at {:?} differs from laplace", fv.dense_counts())
                    });
                }
            }
        }
        if fv.n() > 0 && fv.q() > 0 {
            let base = SuccessionLaw::Natural.escape_mass(&fv).value();
            let q = fv.q();
            for k in [(q + 1).max(fv.counts().len()), 1_000, 1_000_000] {
                let wide = FrequencyVector::from_counts(k, fv.counts())?;
                let m = SuccessionLaw::Natural.escape_mass(&wide).value();
                r.check(m.to_bits() == base.to_bits() || fv.novel() == 0, || {
                    format!(
                        "natural escape at {:?} changes with k={k}: {m} vs {base}",
                        fv.dense_counts()
                    )
                });
            }
        }
        for law in &laws {
            let escape = exact::escape_mass(&fv, law);
            let novel_sum = match fv.first_novel() {
                Some(sym) if fv.n() > 0 => {
                    exact::conditional(&fv, sym, law)? * exact::int(fv.novel() as u64)
                }
                Some(_) => Rational::one(),
                None => num_traits::Zero::zero(),
            };
            let float_escape = law.escape_mass(&fv).value();
            r.check(
                escape == novel_sum
                    && relative_error(float_escape, to_f64(&escape)) <= RELATIVE_TOLERANCE,
                || {
                    format!(
                        "{law} escape at {:?}: {escape} vs novel sum {novel_sum}",
                        fv.dense_counts()
                    )
                },
            );
        }
    }
    Ok(r)
}

/// Summing the string probabilities over all `k^n` strings gives exactly 1,
/// for every `k ≤ max_k` and `n ≤ max_n`.
pub fn totality(max_k: usize, max_n: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("brute-force totality");
    for law in [
        SuccessionLaw::Laplace,
        SuccessionLaw::UniformSubsets,
        SuccessionLaw::Natural,
    ] {
        for k in 1..=max_k {
            for n in 0..=max_n {
                let total = string_total(k, n, &law)?;
                r.check(total.is_one(), || format!("{law}, k={k}, n={n}: {total}"));
            }
        }
    }
    Ok(r)
}

/// `Σ` over every string of length `n` of its exact probability.
pub fn string_total(k: usize, n: u64, law: &SuccessionLaw) -> Result<Rational> {
    let mut memo: HashMap<Vec<u64>, Rational> = HashMap::new();
    let mut total = Rational::from_integer(0.into());
    let mut digits = vec![0usize; n as usize];
    loop {
        let mut counts = vec![0u64; k];
        for &d in &digits {
            counts[d] += 1;
        }
        let p = match memo.get(&counts) {
            Some(p) => p.clone(),
            None => {
                let fv = FrequencyVector::from_counts(k, &counts)?;
                let p = exact::string_probability(&fv, law)?;
                memo.insert(counts, p.clone());
                p
            }
        };
        total += p;
        // odometer increment
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(total);
            }
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All suites at the given bounds; totality is capped at `k ≤ 4`, `n ≤ 8`.
pub fn run_all(max_k: usize, max_n: u64) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        normalization(max_k, max_n)?,
        oracle_equivalence(max_k, max_n)?,
        reduction_and_escape(max_k, max_n)?,
        totality(max_k.min(4), max_n.min(8))?,
    ])
}
