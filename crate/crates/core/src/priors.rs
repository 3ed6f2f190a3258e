//! String probabilities implied by the priors behind the laws, and the
//! analyses built on them.
//!
//! The Laplace, Lidstone and absolute-discounting laws are Kolmogorov
//! compatible: the probability of a string is the product of its sequential
//! conditionals, so their closed forms telescope. The subsets and cardinality
//! priors are not; their laws come from [`conditional_from_prior`], which
//! normalizes the prior probabilities of the `k` possible one-symbol
//! extensions of the history.
//!
//! All values are base-2 logarithms computed through log-gamma.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::freq::{FrequencyVector, Symbol};
use crate::laws::{Probability, SuccessionLaw};
use crate::special::{ln_gamma, log2_binomial, log2_factorial, log2_subset_count, log2_sum_exp2};
use crate::{Error, Result};

/// A probability held as its base-2 logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct LogProbability(f64);

impl LogProbability {
    pub const ONE: LogProbability = LogProbability(0.0);

    /// Wraps a log2 value. Positive inputs within rounding of zero are
    /// clamped; anything larger is rejected.
    pub fn from_log2(log2_value: f64) -> Result<Self> {
        if log2_value.is_nan() || log2_value > 1e-12 * (1.0 + log2_value.abs()) {
            return Err(Error::InvalidParameter {
                name: "log2 probability",
                value: log2_value,
                reason: "must not exceed 0",
            });
        }
        Ok(LogProbability(log2_value.min(0.0)))
    }

    #[inline]
    pub fn log2(self) -> f64 {
        self.0
    }

    /// `-log2 p`.
    #[inline]
    pub fn bits(self) -> f64 {
        -self.0
    }

    #[inline]
    pub fn probability(self) -> f64 {
        self.0.exp2()
    }
}

/// `log2( n! / Π n_i! )`, the number of distinct arrangements of the counts.
pub fn multinomial_log(fv: &FrequencyVector) -> f64 {
    let rest: f64 = fv.attested().map(|(_, c)| log2_factorial(c)).sum();
    (log2_factorial(fv.n()) - rest).max(0.0)
}

fn no_closed_form(law: &SuccessionLaw) -> Error {
    Error::NoClosedForm { law: law.name() }
}

/// Whether [`string_logprob`] supports `law`.
pub fn has_closed_form(law: &SuccessionLaw) -> bool {
    use SuccessionLaw::*;
    matches!(
        law,
        Laplace | Lidstone(_) | UniformSubsets | Natural | AbsoluteDiscount(_) | LinearDiscount(_)
    )
}

/// Log-probability the law's prior assigns to any single string whose
/// counts are `fv`.
///
/// For [`SuccessionLaw::LinearDiscount`] the value is the sequential product
/// for the canonical order in which all `q` distinct symbols appear before
/// any repeat, with `q < k` or `n = q`; the linear model is order dependent
/// and other orders give other values.
pub fn string_logprob(fv: &FrequencyVector, law: &SuccessionLaw) -> Result<LogProbability> {
    if !has_closed_form(law) {
        return Err(no_closed_form(law));
    }
    let n = fv.n();
    if n == 0 {
        return Ok(LogProbability::ONE);
    }
    let k = fv.k() as u64;
    let q = fv.q() as u64;
    let arrangements = multinomial_log(fv);
    use SuccessionLaw::*;
    let log2p = match *law {
        Laplace => -(log2_binomial(n + k - 1, k - 1) + arrangements),
        Lidstone(l) => {
            let l = l.get();
            let lg_l = ln_gamma(l);
            let per_symbol: f64 = fv
                .attested()
                .map(|(_, c)| ln_gamma(c as f64 + l) - lg_l)
                .sum();
            (per_symbol + ln_gamma(k as f64 * l) - ln_gamma(n as f64 + k as f64 * l)) / LN_2
        }
        UniformSubsets => {
            -(log2_subset_count(k, n.min(k)) + log2_binomial(n - 1, q - 1) + arrangements)
        }
        Natural => {
            -((n.min(k) as f64).log2()
                + log2_binomial(k, q)
                + log2_binomial(n - 1, q - 1)
                + arrangements)
        }
        AbsoluteDiscount(d) => {
            let d = d.get();
            let lg_1d = ln_gamma(1.0 - d);
            let repeats: f64 = fv
                .attested()
                .map(|(_, c)| ln_gamma(c as f64 - d) - lg_1d)
                .sum();
            (q - 1) as f64 * d.log2() + log2_factorial(q - 1) + log2_factorial(k - q)
                - log2_factorial(k)
                - log2_factorial(n - 1)
                + repeats / LN_2
        }
        LinearDiscount(a) => {
            let a = a.get();
            let repeats: f64 = fv.attested().map(|(_, c)| log2_factorial(c - 1)).sum();
            (q - 1) as f64 * a.log2()
                + (n - q) as f64 * (1.0 - a).log2()
                + log2_factorial(q - 1)
                + log2_factorial(k - q)
                - log2_factorial(k)
                - log2_factorial(n - 1)
                + repeats
        }
        _ => unreachable!(),
    };
    LogProbability::from_log2(log2p)
}

/// Total log-probability of all strings whose counts are `fv`.
pub fn freqvec_logprob(fv: &FrequencyVector, law: &SuccessionLaw) -> Result<LogProbability> {
    let s = string_logprob(fv, law)?;
    LogProbability::from_log2(s.log2() + multinomial_log(fv))
}

/// Log-probabilities of the one-symbol extensions, one per count class, as
/// `(count, multiplicity, log2 p(x^n i | n+1))`.
fn extension_logprobs(fv: &FrequencyVector, law: &SuccessionLaw) -> Result<Vec<(u64, usize, f64)>> {
    let mut out = Vec::new();
    if let Some(sym) = fv.first_novel() {
        let mut ext = fv.clone();
        ext.observe(sym)?;
        out.push((0, fv.novel(), string_logprob(&ext, law)?.log2()));
    }
    for (count, mult) in fv.fof_iter() {
        let (sym, _) = fv
            .attested()
            .find(|&(_, c)| c == count)
            .expect("count class has a member");
        let mut ext = fv.clone();
        ext.observe(sym)?;
        out.push((count, mult, string_logprob(&ext, law)?.log2()));
    }
    Ok(out)
}

/// `p(i | x^n) = p(x^n i | n+1) / Σ_j p(x^n j | n+1)`, computed from the
/// law's string probabilities alone.
pub fn conditional_from_prior(
    fv: &FrequencyVector,
    sym: Symbol,
    law: &SuccessionLaw,
) -> Result<Probability> {
    fv.check(sym)?;
    if !has_closed_form(law) {
        return Err(no_closed_form(law));
    }
    let classes = extension_logprobs(fv, law)?;
    let log_total = log2_sum_exp2(
        classes
            .iter()
            .map(|&(_, mult, lp)| lp + (mult as f64).log2()),
    );
    let c = fv.count(sym);
    let lp = classes
        .iter()
        .find(|&&(count, _, _)| count == c)
        .map(|&(_, _, lp)| lp)
        .expect("symbol belongs to a count class");
    Probability::new((lp - log_total).exp2().min(1.0))
}

/// Strings of length `n` over a sub-alphabet of size `b` within an alphabet
/// of size `k`, scored under `law`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetScenario {
    k: u64,
    b: u64,
    n: u64,
    law: SuccessionLaw,
}

impl SubsetScenario {
    pub fn new(k: u64, b: u64, n: u64, law: SuccessionLaw) -> Result<Self> {
        if b == 0 || b > k {
            return Err(Error::InvalidScenario(format!(
                "need 1 <= b <= k, got b={b}, k={k}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidScenario(
                "string length must be at least 1".into(),
            ));
        }
        use SuccessionLaw::*;
        if !matches!(law, Laplace | Lidstone(_) | Natural | UniformSubsets) {
            return Err(Error::UnsupportedLaw {
                law: law.name(),
                operation: "possible-set analysis",
            });
        }
        Ok(SubsetScenario { k, b, n, law })
    }

    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn law(&self) -> SuccessionLaw {
        self.law
    }
}

/// Probability a law assigns to the set `B^n` of strings that use only the
/// symbols of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PossibleSet {
    /// Total over all strings in `B^n`.
    pub total: LogProbability,
    /// For the prior-derived laws: the part contributed by strings that use
    /// every symbol of `B` (present once `n >= b`).
    pub full_stratum: Option<LogProbability>,
}

pub fn possible_set_logprob(s: &SubsetScenario) -> Result<PossibleSet> {
    let SubsetScenario { k, b, n, law } = *s;
    use SuccessionLaw::*;
    match law {
        Laplace => Ok(PossibleSet {
            total: LogProbability::from_log2(
                log2_binomial(n + b - 1, b - 1) - log2_binomial(n + k - 1, k - 1),
            )?,
            full_stratum: None,
        }),
        Lidstone(l) => {
            let l = l.get();
            let (bl, kl, nf) = (b as f64 * l, k as f64 * l, n as f64);
            let v = (ln_gamma(nf + bl) - ln_gamma(bl) - ln_gamma(nf + kl) + ln_gamma(kl)) / LN_2;
            Ok(PossibleSet {
                total: LogProbability::from_log2(v)?,
                full_stratum: None,
            })
        }
        Natural => {
            // Each string in stratum q has probability
            // 1/(min(k,n) C(k,q) C(n-1,q-1) multinomial); summing over the
            // C(b,q) subsets, the C(n-1,q-1) compositions and all
            // arrangements leaves C(b,q) / (min(k,n) C(k,q)).
            let log_m = (n.min(k) as f64).log2();
            let stratum = |q: u64| log2_binomial(b, q) - log_m - log2_binomial(k, q);
            let top = b.min(n);
            let total = log2_sum_exp2((1..=top).map(stratum));
            Ok(PossibleSet {
                total: LogProbability::from_log2(total)?,
                full_stratum: if n >= b {
                    Some(LogProbability::from_log2(stratum(b))?)
                } else {
                    None
                },
            })
        }
        UniformSubsets => {
            // Every admissible subset of B receives 1/S(k, min(k,n)).
            let log_s = log2_subset_count(k, n.min(k));
            let total = log2_subset_count(b, n.min(b)) - log_s;
            Ok(PossibleSet {
                total: LogProbability::from_log2(total)?,
                full_stratum: if n >= b {
                    Some(LogProbability::from_log2(-log_s)?)
                } else {
                    None
                },
            })
        }
        _ => unreachable!("rejected by SubsetScenario::new"),
    }
}

/// `log2 ((k-1)/(n+k-1))^(k-b)`, the bound Laplace's possible-set total
/// stays under.
pub fn laplace_possible_set_bound(k: u64, b: u64, n: u64) -> f64 {
    (k - b) as f64 * ((k - 1) as f64 / (n + k - 1) as f64).log2()
}

/// Stirling-style estimate of Lidstone's possible-set total,
/// `Γ(kλ)/Γ(bλ) · (n-1)^(-λ(k-b))`, for comparison with the exact value.
pub fn lidstone_possible_set_estimate(k: u64, b: u64, n: u64, lambda: f64) -> f64 {
    let (kl, bl) = (k as f64 * lambda, b as f64 * lambda);
    (ln_gamma(kl) - ln_gamma(bl)) / LN_2 - lambda * (k - b) as f64 * ((n - 1) as f64).log2()
}

/// `log2 p_a(x^n) - log2 p_b(x^n)` in bits.
pub fn log_ratio(fv: &FrequencyVector, a: &SuccessionLaw, b: &SuccessionLaw) -> Result<f64> {
    let pa = string_logprob(fv, a)?;
    let pb = string_logprob(fv, b)?;
    Ok(pa.log2() - pb.log2())
}

/// Least-squares slope of `ys` against `xs`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
