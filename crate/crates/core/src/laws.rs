//! Laws of succession: conditional next-symbol probabilities and escape
//! masses computed from a [`FrequencyVector`].
//!
//! Every law is a function of the counts only. With no observations
//! (`n = 0`) every law predicts the uniform `1/k`; the sharpened laws are
//! undefined there when called directly through [`sharpened_conditional`],
//! but [`SuccessionLaw::conditional`] falls back to the uniform prediction.
//!
//! A few laws leave probability unassigned once every symbol is attested
//! (`q = k`): methods A, C and D and both discounting models reserve an escape
//! mass for novel symbols that no longer exist. That mass is spread uniformly
//! over all `k` symbols. Method B with every symbol seen at least twice gets
//! the same treatment. Good-Turing is exposed verbatim and is not normalized;
//! see [`good_turing_mass_deviation`].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::freq::{FrequencyVector, Symbol};
use crate::{Error, Result};

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::InvalidParameter {
                name: "probability",
                value,
                reason: "must lie in [0, 1]",
            })
        }
    }

    // Formulas here are exact rationals in [0,1]; rounding can overshoot 1 by an ulp.
    #[inline]
    fn from_formula(value: f64) -> Self {
        debug_assert!((0.0..=1.0 + 1e-12).contains(&value), "{value}");
        Probability(value.min(1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Codelength `-log2 p` in bits.
    #[inline]
    pub fn bits(self) -> f64 {
        -self.0.log2()
    }
}

/// Lidstone's flattening parameter `λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Flattening(f64);

impl Flattening {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda > 0.0 && lambda.is_finite() {
            Ok(Flattening(lambda))
        } else {
            Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be positive and finite",
            })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Discounting parameter (`δ` or `α`) in the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Discount(f64);

impl Discount {
    pub fn new(value: f64) -> Result<Self> {
        Self::named(value, "discount")
    }

    fn named(value: f64, name: &'static str) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Discount(value))
        } else {
            Err(Error::InvalidParameter {
                name,
                value,
                reason: "must lie strictly between 0 and 1",
            })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// The estimation rules, with their parameters where they take one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuccessionLaw {
    /// `(n_i + 1) / (n + k)`.
    Laplace,
    /// `(n_i + λ) / (n + kλ)`; `λ = 1/2` is Jeffreys-Perks.
    Lidstone(Flattening),
    /// Derived from a uniform prior over nonempty subsets of the alphabet.
    UniformSubsets,
    /// The natural law, derived from a uniform prior over subset cardinalities.
    Natural,
    /// Uniform-subsets law pulled toward the maximum-likelihood estimate.
    SharpenedSubsets,
    /// Natural law pulled toward the maximum-likelihood estimate.
    SharpenedNatural,
    MethodA,
    MethodB,
    MethodC,
    MethodD,
    GoodTuring,
    AbsoluteDiscount(Discount),
    LinearDiscount(Discount),
}

/// Laws in the column order of the Calgary comparison table.
pub const TABLE1_LAWS: [SuccessionLaw; 8] = [
    SuccessionLaw::Natural,
    SuccessionLaw::UniformSubsets,
    SuccessionLaw::Laplace,
    SuccessionLaw::Lidstone(Flattening(0.5)),
    SuccessionLaw::MethodA,
    SuccessionLaw::MethodB,
    SuccessionLaw::MethodC,
    SuccessionLaw::MethodD,
];

/// Which flattened law a sharpened estimate is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sharpened {
    Subsets,
    Cardinality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpmMethod {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscountModel {
    Absolute(f64),
    Linear(f64),
}

impl SuccessionLaw {
    pub fn lidstone(lambda: f64) -> Result<Self> {
        Ok(SuccessionLaw::Lidstone(Flattening::new(lambda)?))
    }

    pub fn jeffreys_perks() -> Self {
        SuccessionLaw::Lidstone(Flattening(0.5))
    }

    pub fn absolute_discount(delta: f64) -> Result<Self> {
        Ok(SuccessionLaw::AbsoluteDiscount(Discount::named(
            delta, "delta",
        )?))
    }

    pub fn linear_discount(alpha: f64) -> Result<Self> {
        Ok(SuccessionLaw::LinearDiscount(Discount::named(
            alpha, "alpha",
        )?))
    }

    /// Every law, with representative parameters for the parameterized ones.
    pub fn catalog() -> Vec<SuccessionLaw> {
        use SuccessionLaw::*;
        vec![
            Laplace,
            Lidstone(Flattening(0.25)),
            Lidstone(Flattening(0.5)),
            Lidstone(Flattening(2.0)),
            UniformSubsets,
            Natural,
            SharpenedSubsets,
            SharpenedNatural,
            MethodA,
            MethodB,
            MethodC,
            MethodD,
            GoodTuring,
            AbsoluteDiscount(Discount(0.5)),
            LinearDiscount(Discount(0.3)),
        ]
    }

    /// Whether the per-symbol probabilities always sum to one.
    pub fn is_normalized(&self) -> bool {
        !matches!(self, SuccessionLaw::GoodTuring)
    }

    /// Probability that the next symbol is `sym`.
    pub fn conditional(&self, fv: &FrequencyVector, sym: Symbol) -> Result<Probability> {
        fv.check(sym)?;
        self.prob_of_count(fv, fv.count(sym))
    }

    /// Probability of any one symbol whose current count is `count`.
    ///
    /// Fails when no symbol has that count, which is how Good-Turing's
    /// undefined `f_0 = 0` case surfaces.
    pub fn conditional_for_count(&self, fv: &FrequencyVector, count: u64) -> Result<Probability> {
        if fv.fof(count) == 0 {
            return Err(Error::UnrealizedCount { count });
        }
        self.prob_of_count(fv, count)
    }

    pub(crate) fn prob_of_count(&self, fv: &FrequencyVector, c: u64) -> Result<Probability> {
        let k = fv.k() as f64;
        if fv.n() == 0 {
            return Ok(Probability::from_formula(1.0 / k));
        }
        let n = fv.n() as f64;
        let q = fv.q() as f64;
        let novel = fv.novel();
        let cf = c as f64;
        use SuccessionLaw::*;
        let p = match *self {
            Laplace => laplace(cf, n, k),
            Lidstone(l) => (cf + l.0) / (n + k * l.0),
            UniformSubsets => {
                let d = subsets_denominator(n, q, k);
                if c > 0 {
                    (cf + 1.0) * (n + 1.0 - q) / d
                } else {
                    q / d
                }
            }
            Natural => {
                if novel == 0 {
                    laplace(cf, n, k)
                } else if c > 0 {
                    (cf + 1.0) * (n + 1.0 - q) / cardinality_denominator(n, q)
                } else {
                    natural_novel(n, q, k)
                }
            }
            SharpenedSubsets => {
                let d = subsets_denominator(n, q, k);
                if c > 0 {
                    (cf / n) * ((n + q) * (n + 1.0 - q) / d)
                } else {
                    q / d
                }
            }
            SharpenedNatural => {
                if novel == 0 {
                    cf / n
                } else if c > 0 {
                    (cf / n) * ((n * (n + 1.0) + q * (1.0 - q)) / cardinality_denominator(n, q))
                } else {
                    natural_novel(n, q, k)
                }
            }
            MethodA => escape_method(c, novel, k, cf / (n + 1.0), 1.0 / (n + 1.0)),
            MethodB => {
                let qp = fv.q_prime();
                if qp == fv.k() {
                    cf / n
                } else if c >= 2 {
                    (cf - 1.0) / n
                } else {
                    q / (n * (fv.k() - qp) as f64)
                }
            }
            MethodC => escape_method(c, novel, k, cf / (n + q), q / (n + q)),
            MethodD => escape_method(c, novel, k, (cf - 0.5) / n, q / (2.0 * n)),
            GoodTuring => {
                let fc = fv.fof(c);
                if fc == 0 {
                    return Err(Error::UnrealizedCount { count: c });
                }
                ((cf + 1.0) / n) * (fv.fof(c + 1) as f64 / fc as f64)
            }
            AbsoluteDiscount(d) => {
                let d = d.0;
                escape_method(c, novel, k, (cf - d) / n, q * d / n)
            }
            LinearDiscount(a) => {
                let a = a.0;
                escape_method(c, novel, k, (1.0 - a) * cf / n, a)
            }
        };
        Ok(Probability::from_formula(p))
    }

    /// Total probability assigned to novel symbols.
    ///
    /// Zero once every symbol is attested, except for Good-Turing, which
    /// reports `f_1 / n` regardless.
    pub fn escape_mass(&self, fv: &FrequencyVector) -> Probability {
        if fv.n() == 0 {
            return Probability(1.0);
        }
        let n = fv.n() as f64;
        let q = fv.q() as f64;
        let k = fv.k() as f64;
        use SuccessionLaw::*;
        if let GoodTuring = self {
            return Probability::from_formula(fv.fof(1) as f64 / n);
        }
        if fv.novel() == 0 {
            return Probability(0.0);
        }
        let p = match *self {
            Laplace => (k - q) / (n + k),
            Lidstone(l) => (k - q) * l.0 / (n + k * l.0),
            UniformSubsets | SharpenedSubsets => q * (k - q) / subsets_denominator(n, q, k),
            Natural | SharpenedNatural => natural_escape(n, q),
            MethodA => 1.0 / (n + 1.0),
            MethodB => (k - q) * q / ((k - fv.q_prime() as f64) * n),
            MethodC => q / (n + q),
            MethodD => q / (2.0 * n),
            AbsoluteDiscount(d) => q * d.0 / n,
            LinearDiscount(a) => a.0,
            GoodTuring => unreachable!(),
        };
        Probability::from_formula(p)
    }

    /// Short name used on the command line and in reports.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

#[inline]
fn laplace(c: f64, n: f64, k: f64) -> f64 {
    (c + 1.0) / (n + k)
}

#[inline]
fn subsets_denominator(n: f64, q: f64, k: f64) -> f64 {
    (n + q) * (n + 1.0 - q) + q * (k - q)
}

#[inline]
fn cardinality_denominator(n: f64, q: f64) -> f64 {
    n * n + n + 2.0 * q
}

#[inline]
fn natural_escape(n: f64, q: f64) -> f64 {
    q * (q + 1.0) / cardinality_denominator(n, q)
}

#[inline]
fn natural_novel(n: f64, q: f64, k: f64) -> f64 {
    q * (q + 1.0) / ((k - q) * cardinality_denominator(n, q))
}

// Attested symbols get `attested`; the escape mass goes to novel symbols, or
// uniformly to all k symbols when there are none.
#[inline]
fn escape_method(c: u64, novel: usize, k: f64, attested: f64, escape: f64) -> f64 {
    if novel == 0 {
        attested + escape / k
    } else if c == 0 {
        escape / novel as f64
    } else {
        attested
    }
}

/// Laplace's law, `(n_i + 1)/(n + k)`.
pub fn laplace_conditional(fv: &FrequencyVector, sym: Symbol) -> Result<Probability> {
    SuccessionLaw::Laplace.conditional(fv, sym)
}

/// Lidstone's law, `(n_i + λ)/(n + kλ)`.
pub fn lidstone_conditional(fv: &FrequencyVector, sym: Symbol, lambda: f64) -> Result<Probability> {
    SuccessionLaw::lidstone(lambda)?.conditional(fv, sym)
}

pub fn subsets_conditional(fv: &FrequencyVector, sym: Symbol) -> Result<Probability> {
    SuccessionLaw::UniformSubsets.conditional(fv, sym)
}

pub fn natural_conditional(fv: &FrequencyVector, sym: Symbol) -> Result<Probability> {
    SuccessionLaw::Natural.conditional(fv, sym)
}

/// Sharpened subsets or cardinality law. Undefined when `n = 0`.
pub fn sharpened_conditional(
    fv: &FrequencyVector,
    sym: Symbol,
    variant: Sharpened,
) -> Result<Probability> {
    let law = match variant {
        Sharpened::Subsets => SuccessionLaw::SharpenedSubsets,
        Sharpened::Cardinality => SuccessionLaw::SharpenedNatural,
    };
    if fv.n() == 0 {
        return Err(Error::EmptyHistory(law.name()));
    }
    law.conditional(fv, sym)
}

pub fn ppm_method_conditional(
    fv: &FrequencyVector,
    sym: Symbol,
    method: PpmMethod,
) -> Result<Probability> {
    let law = match method {
        PpmMethod::A => SuccessionLaw::MethodA,
        PpmMethod::B => SuccessionLaw::MethodB,
        PpmMethod::C => SuccessionLaw::MethodC,
        PpmMethod::D => SuccessionLaw::MethodD,
    };
    law.conditional(fv, sym)
}

/// Good-Turing, `((n_i + 1)/n) · f_{n_i+1}/f_{n_i}`, unnormalized.
pub fn good_turing_conditional(fv: &FrequencyVector, sym: Symbol) -> Result<Probability> {
    SuccessionLaw::GoodTuring.conditional(fv, sym)
}

pub fn discount_conditional(
    fv: &FrequencyVector,
    sym: Symbol,
    model: DiscountModel,
) -> Result<Probability> {
    let law = match model {
        DiscountModel::Absolute(d) => SuccessionLaw::absolute_discount(d)?,
        DiscountModel::Linear(a) => SuccessionLaw::linear_discount(a)?,
    };
    law.conditional(fv, sym)
}

pub fn escape_mass(fv: &FrequencyVector, law: &SuccessionLaw) -> Probability {
    law.escape_mass(fv)
}

/// `|1 - Σ_i p_GT(i)|`.
///
/// Summing class by class, the total is `Σ (j · f_j)/n` over those `j ≥ 1`
/// whose predecessor class `f_{j-1}` is nonempty, so the deviation vanishes
/// exactly when the occupied classes form an unbroken run starting at
/// `f_0 = k - q` (or at `f_1` once every symbol is attested).
pub fn good_turing_mass_deviation(fv: &FrequencyVector) -> f64 {
    if fv.n() == 0 {
        return 0.0;
    }
    let n = fv.n() as f64;
    let mut classes: Vec<(u64, usize)> = Vec::new();
    if fv.novel() > 0 {
        classes.push((0, fv.novel()));
    }
    classes.extend(fv.fof_iter());
    let total: f64 = classes
        .iter()
        .map(|&(c, fc)| {
            let p = ((c as f64 + 1.0) / n) * (fv.fof(c + 1) as f64 / fc as f64);
            fc as f64 * p
        })
        .sum();
    (1.0 - total).abs()
}

impl fmt::Display for SuccessionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SuccessionLaw::*;
        match self {
            Laplace => f.write_str("laplace"),
            Lidstone(l) if l.0 == 0.5 => f.write_str("jp"),
            Lidstone(l) => write!(f, "lidstone:{}", l.0),
            UniformSubsets => f.write_str("subsets"),
            Natural => f.write_str("natural"),
            SharpenedSubsets => f.write_str("sharp-subsets"),
            SharpenedNatural => f.write_str("sharp-natural"),
            MethodA => f.write_str("a"),
            MethodB => f.write_str("b"),
            MethodC => f.write_str("c"),
            MethodD => f.write_str("d"),
            GoodTuring => f.write_str("gt"),
            AbsoluteDiscount(d) => write!(f, "abs:{}", d.0),
            LinearDiscount(a) => write!(f, "lin:{}", a.0),
        }
    }
}

impl FromStr for SuccessionLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (head, param) = match lower.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (lower.as_str(), None),
        };
        let parse_param = |p: &str| -> Result<f64> {
            p.parse::<f64>()
                .map_err(|_| Error::UnknownLaw(s.to_string()))
        };
        use SuccessionLaw::*;
        let law = match (head, param) {
            ("laplace", None) => Laplace,
            ("lidstone", None) | ("jp", None) => SuccessionLaw::jeffreys_perks(),
            ("lidstone", Some(p)) => SuccessionLaw::lidstone(parse_param(p)?)?,
            ("subsets", None) => UniformSubsets,
            ("natural", None) => Natural,
            ("sharp-subsets", None) => SharpenedSubsets,
            ("sharp-natural", None) => SharpenedNatural,
            ("a", None) => MethodA,
            ("b", None) => MethodB,
            ("c", None) => MethodC,
            ("d", None) => MethodD,
            ("gt", None) => GoodTuring,
            ("abs", Some(p)) => SuccessionLaw::absolute_discount(parse_param(p)?)?,
            ("lin", Some(p)) => SuccessionLaw::linear_discount(parse_param(p)?)?,
            _ => return Err(Error::UnknownLaw(s.to_string())),
        };
        Ok(law)
    }
}

impl Serialize for SuccessionLaw {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(k: usize, c: &[u64]) -> FrequencyVector {
        FrequencyVector::from_counts(k, c).unwrap()
    }

    fn probs(law: SuccessionLaw, v: &FrequencyVector) -> Vec<f64> {
        (0..v.k())
            .map(|i| law.conditional(v, Symbol(i)).unwrap().value())
            .collect()
    }

    fn assert_probs(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!(
                (a - e).abs() <= 1e-15 * e.abs().max(1.0),
                "{actual:?} vs {expected:?}"
            );
        }
    }

    #[test]
    fn laplace_examples() {
        let v = fv(2, &[1_826_213, 0]);
        let p = laplace_conditional(&v, Symbol(0)).unwrap().value();
        assert_eq!(p, 1_826_214.0 / 1_826_215.0);
        assert_eq!(
            laplace_conditional(&fv(5, &[]), Symbol(3)).unwrap().value(),
            0.2
        );
        let mut c = vec![0; 256];
        c[7] = 100;
        assert_eq!(
            laplace_conditional(&fv(256, &c), Symbol(7))
                .unwrap()
                .value(),
            101.0 / 356.0
        );
    }

    #[test]
    fn lidstone_examples() {
        assert_eq!(
            lidstone_conditional(&fv(2, &[]), Symbol(0), 0.5)
                .unwrap()
                .value(),
            0.5
        );
        let v = fv(2, &[1, 1]);
        let p = lidstone_conditional(&v, Symbol(0), 1.0).unwrap().value();
        let mu = 2.0 / (2.0 + 2.0);
        assert_eq!(p, 0.5);
        assert_eq!(mu * 0.5 + (1.0 - mu) * 0.5, p);
        let mut c = vec![0; 256];
        c[0] = 100;
        let p = lidstone_conditional(&fv(256, &c), Symbol(0), 0.5)
            .unwrap()
            .value();
        assert_eq!(p, 100.5 / 228.0);
        assert!(lidstone_conditional(&v, Symbol(0), 0.0).is_err());
        assert!(lidstone_conditional(&v, Symbol(0), -1.0).is_err());
    }

    #[test]
    fn subsets_examples() {
        let v = fv(3, &[2, 1, 0]);
        assert_probs(
            &probs(SuccessionLaw::UniformSubsets, &v),
            &[0.5, 1.0 / 3.0, 1.0 / 6.0],
        );
        assert_probs(
            &probs(SuccessionLaw::UniformSubsets, &fv(2, &[1, 1])),
            &[0.5, 0.5],
        );
        assert_probs(
            &probs(SuccessionLaw::UniformSubsets, &fv(4, &[])),
            &[0.25; 4],
        );
    }

    #[test]
    fn natural_examples() {
        let v = fv(3, &[2, 1, 0]);
        assert_probs(
            &probs(SuccessionLaw::Natural, &v),
            &[6.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0],
        );
        let mut c = vec![0; 256];
        c[b'1' as usize] = 9;
        let p = natural_conditional(&fv(256, &c), Symbol(b'1' as usize))
            .unwrap()
            .value();
        assert!((p - 45.0 / 46.0).abs() < 1e-15);
        assert_probs(&probs(SuccessionLaw::Natural, &fv(2, &[1, 1])), &[0.5, 0.5]);
    }

    #[test]
    fn natural_equals_laplace_when_all_attested() {
        let v = fv(3, &[4, 1, 7]);
        for i in 0..3 {
            let a = natural_conditional(&v, Symbol(i)).unwrap().value();
            let b = laplace_conditional(&v, Symbol(i)).unwrap().value();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn sharpened_examples() {
        let v = fv(3, &[2, 1, 0]);
        let card: Vec<f64> = (0..3)
            .map(|i| {
                sharpened_conditional(&v, Symbol(i), Sharpened::Cardinality)
                    .unwrap()
                    .value()
            })
            .collect();
        assert_probs(&card, &[5.0 / 12.0, 5.0 / 24.0, 3.0 / 8.0]);
        let sub: Vec<f64> = (0..3)
            .map(|i| {
                sharpened_conditional(&v, Symbol(i), Sharpened::Subsets)
                    .unwrap()
                    .value()
            })
            .collect();
        assert_probs(&sub, &[5.0 / 9.0, 5.0 / 18.0, 1.0 / 6.0]);
        let p = sharpened_conditional(&fv(2, &[1, 1]), Symbol(0), Sharpened::Cardinality).unwrap();
        assert_eq!(p.value(), 0.5);
        assert!(matches!(
            sharpened_conditional(&fv(2, &[]), Symbol(0), Sharpened::Subsets),
            Err(Error::EmptyHistory(_))
        ));
        // the generic entry point falls back to uniform
        let p = SuccessionLaw::SharpenedNatural
            .conditional(&fv(4, &[]), Symbol(0))
            .unwrap();
        assert_eq!(p.value(), 0.25);
    }

    #[test]
    fn ppm_method_examples() {
        let v = fv(3, &[2, 1, 0]);
        assert_probs(&probs(SuccessionLaw::MethodC, &v), &[0.4, 0.2, 0.4]);
        assert_probs(
            &probs(SuccessionLaw::MethodD, &v),
            &[0.5, 1.0 / 6.0, 1.0 / 3.0],
        );
        assert_probs(&probs(SuccessionLaw::MethodB, &v), &[1.0 / 3.0; 3]);
        assert!((SuccessionLaw::MethodB.escape_mass(&v).value() - 1.0 / 3.0).abs() < 1e-15);
        assert_probs(&probs(SuccessionLaw::MethodA, &v), &[0.5, 0.25, 0.25]);
    }

    #[test]
    fn method_b_all_repeated() {
        let v = fv(2, &[3, 2]);
        assert_probs(&probs(SuccessionLaw::MethodB, &v), &[0.6, 0.4]);
    }

    #[test]
    fn escape_methods_with_full_alphabet_redistribute() {
        let v = fv(2, &[2, 1]);
        // A: attested c/(n+1), leftover 1/(n+1) split over both symbols
        assert_probs(
            &probs(SuccessionLaw::MethodA, &v),
            &[2.0 / 4.0 + 1.0 / 8.0, 1.0 / 4.0 + 1.0 / 8.0],
        );
        // C: q/(n+q) split
        assert_probs(&probs(SuccessionLaw::MethodC, &v), &[0.4 + 0.2, 0.2 + 0.2]);
        // D: q/2n split
        assert_probs(
            &probs(SuccessionLaw::MethodD, &v),
            &[0.5 + 1.0 / 6.0, 1.0 / 6.0 + 1.0 / 6.0],
        );
        assert_eq!(SuccessionLaw::MethodD.escape_mass(&v).value(), 0.0);
    }

    #[test]
    fn good_turing_examples() {
        let v = fv(4, &[1, 1, 0, 0]);
        assert_eq!(good_turing_conditional(&v, Symbol(0)).unwrap().value(), 0.0);
        assert_eq!(good_turing_conditional(&v, Symbol(3)).unwrap().value(), 0.5);

        let v = fv(4, &[2, 1, 1, 0]);
        assert_eq!(
            good_turing_conditional(&v, Symbol(1)).unwrap().value(),
            0.25
        );
        assert_eq!(good_turing_conditional(&v, Symbol(0)).unwrap().value(), 0.0);
        assert_eq!(good_turing_conditional(&v, Symbol(3)).unwrap().value(), 0.5);
        assert_eq!(SuccessionLaw::GoodTuring.escape_mass(&v).value(), 0.5);
    }

    #[test]
    fn good_turing_rejects_empty_novel_class() {
        let v = fv(2, &[1, 2]);
        assert!(matches!(
            SuccessionLaw::GoodTuring.conditional_for_count(&v, 0),
            Err(Error::UnrealizedCount { count: 0 })
        ));
    }

    #[test]
    fn good_turing_deviation() {
        // f_0 = 2, f_1 = 2: contiguous, but the top class sends mass nowhere
        let v = fv(4, &[1, 1, 0, 0]);
        let sum: f64 = probs(SuccessionLaw::GoodTuring, &v).iter().sum();
        assert!((good_turing_mass_deviation(&v) - (1.0 - sum).abs()).abs() < 1e-15);
        // f_0 = 1, f_1 = 2, f_2 = 1: the unbroken run telescopes to one
        let v = fv(4, &[2, 1, 1, 0]);
        assert!(good_turing_mass_deviation(&v) < 1e-15);
        // gap at f_2
        let v = fv(4, &[3, 1, 0, 0]);
        assert!(good_turing_mass_deviation(&v) > 0.5);
    }

    #[test]
    fn discount_examples() {
        let v = fv(3, &[2, 1, 0]);
        let abs: Vec<f64> = (0..3)
            .map(|i| {
                discount_conditional(&v, Symbol(i), DiscountModel::Absolute(0.5))
                    .unwrap()
                    .value()
            })
            .collect();
        assert_probs(&abs, &[0.5, 1.0 / 6.0, 1.0 / 3.0]);
        let lin: Vec<f64> = (0..3)
            .map(|i| {
                discount_conditional(&v, Symbol(i), DiscountModel::Linear(0.3))
                    .unwrap()
                    .value()
            })
            .collect();
        assert_probs(&lin, &[7.0 / 15.0, 7.0 / 30.0, 0.3]);
        for m in [DiscountModel::Absolute(0.2), DiscountModel::Linear(0.7)] {
            assert_eq!(
                discount_conditional(&fv(5, &[]), Symbol(1), m)
                    .unwrap()
                    .value(),
                0.2
            );
        }
        for bad in [0.0, 1.0, -0.1, 1.5] {
            assert!(discount_conditional(&v, Symbol(0), DiscountModel::Absolute(bad)).is_err());
            assert!(discount_conditional(&v, Symbol(0), DiscountModel::Linear(bad)).is_err());
        }
    }

    #[test]
    fn escape_mass_examples() {
        for k in [256, 1_000_000] {
            let mut c = vec![0u64; 4];
            c[0] = 2;
            c[3] = 1;
            let v = fv(k, &c);
            assert_eq!(SuccessionLaw::Natural.escape_mass(&v).value(), 6.0 / 16.0);
        }
        let mut c = vec![0; 256];
        c[0] = 100;
        assert_eq!(
            SuccessionLaw::Laplace.escape_mass(&fv(256, &c)).value(),
            255.0 / 356.0
        );
        let v = fv(3, &[2, 1, 0]);
        assert!((SuccessionLaw::MethodD.escape_mass(&v).value() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "laplace",
            "lidstone:0.25",
            "jp",
            "subsets",
            "natural",
            "sharp-subsets",
            "sharp-natural",
            "a",
            "b",
            "c",
            "d",
            "gt",
            "abs:0.5",
            "lin:0.3",
        ] {
            let law: SuccessionLaw = s.parse().unwrap();
            assert_eq!(law.to_string(), s);
        }
        assert_eq!(
            "lidstone".parse::<SuccessionLaw>().unwrap(),
            SuccessionLaw::jeffreys_perks()
        );
        assert_eq!(
            "Lidstone:0.5".parse::<SuccessionLaw>().unwrap().to_string(),
            "jp"
        );
        assert!("abs".parse::<SuccessionLaw>().is_err());
        assert!("abs:1.5".parse::<SuccessionLaw>().is_err());
        assert!("lidstone:x".parse::<SuccessionLaw>().is_err());
        assert!("e".parse::<SuccessionLaw>().is_err());
    }
}
