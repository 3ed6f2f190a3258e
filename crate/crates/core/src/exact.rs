//! Exact rational arithmetic for the laws and their priors.
//!
//! Every law here is a rational function of the counts, and every closed-form
//! string probability is a ratio of factorials and rising products, so with
//! parameters taken as the exact binary value of their `f64` everything is
//! computed without rounding. These routines back the oracle suites; they
//! are meant for small alphabets and short histories (roughly `k <= 16`,
//! `n <= 100`), where big-integer cost stays modest.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::freq::{FrequencyVector, Symbol};
use crate::laws::SuccessionLaw;
use crate::priors::has_closed_form;
use crate::{Error, Result};

pub type Rational = BigRational;

#[inline]
pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The exact value of a finite `f64`.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite parameter")
}

fn frac(num: Rational, den: Rational) -> Rational {
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Π_{j=0}^{m-1} (x + j)`.
fn rising(x: &Rational, m: u64) -> Rational {
    (0..m).fold(Rational::one(), |acc, j| acc * (x + int(j)))
}

fn multinomial(fv: &FrequencyVector) -> BigInt {
    let denom = fv
        .attested()
        .fold(BigInt::one(), |acc, (_, c)| acc * factorial(c));
    factorial(fv.n()) / denom
}

/// Exact conditional probability of `sym` under `law`.
pub fn conditional(fv: &FrequencyVector, sym: Symbol, law: &SuccessionLaw) -> Result<Rational> {
    fv.check(sym)?;
    conditional_for_count(fv, fv.count(sym), law)
}

pub fn conditional_for_count(
    fv: &FrequencyVector,
    c: u64,
    law: &SuccessionLaw,
) -> Result<Rational> {
    let k = int(fv.k() as u64);
    if fv.n() == 0 {
        return Ok(Rational::one() / k);
    }
    let n = int(fv.n());
    let q = int(fv.q() as u64);
    let one = Rational::one();
    let ci = int(c);
    let all_attested = fv.novel() == 0;
    let novel = int(fv.novel() as u64);
    let card_den = &n * &n + &n + int(2) * &q;
    let sub_den = (&n + &q) * (&n + &one - &q) + &q * (&k - &q);
    // escape-style laws: attested value and escape mass
    let split = |attested: Rational, escape: Rational| -> Rational {
        if all_attested {
            attested + escape / &k
        } else if c == 0 {
            escape / &novel
        } else {
            attested
        }
    };
    use SuccessionLaw::*;
    let p = match *law {
        Laplace => frac(&ci + &one, &n + &k),
        Lidstone(l) => {
            let l = from_f64(l.get());
            frac(&ci + &l, &n + &k * &l)
        }
        UniformSubsets => {
            if c > 0 {
                frac((&ci + &one) * (&n + &one - &q), sub_den)
            } else {
                frac(q, sub_den)
            }
        }
        Natural => {
            if all_attested {
                frac(&ci + &one, &n + &k)
            } else if c > 0 {
                frac((&ci + &one) * (&n + &one - &q), card_den)
            } else {
                frac(&q * (&q + &one), (&k - &q) * card_den)
            }
        }
        SharpenedSubsets => {
            if c > 0 {
                frac(&ci * (&n + &q) * (&n + &one - &q), &n * sub_den)
            } else {
                frac(q, sub_den)
            }
        }
        SharpenedNatural => {
            if all_attested {
                frac(ci, n)
            } else if c > 0 {
                frac(&ci * (&n * (&n + &one) + &q * (&one - &q)), &n * card_den)
            } else {
                frac(&q * (&q + &one), (&k - &q) * card_den)
            }
        }
        MethodA => split(frac(ci, &n + &one), frac(one.clone(), &n + &one)),
        MethodB => {
            let qp = int(fv.q_prime() as u64);
            if fv.q_prime() == fv.k() {
                frac(ci, n)
            } else if c >= 2 {
                frac(&ci - &one, n)
            } else {
                frac(q, &n * (&k - &qp))
            }
        }
        MethodC => split(frac(ci, &n + &q), frac(q.clone(), &n + &q)),
        MethodD => split(
            frac(&ci - from_f64(0.5), n.clone()),
            frac(q.clone(), int(2) * &n),
        ),
        GoodTuring => {
            let fc = fv.fof(c);
            if fc == 0 {
                return Err(Error::UnrealizedCount { count: c });
            }
            frac(
                (&ci + &one) * int(fv.fof(c + 1) as u64),
                &n * int(fc as u64),
            )
        }
        AbsoluteDiscount(d) => {
            let d = from_f64(d.get());
            split(frac(&ci - &d, n.clone()), frac(&q * &d, n.clone()))
        }
        LinearDiscount(a) => {
            let a = from_f64(a.get());
            split(frac((&one - &a) * &ci, n.clone()), a)
        }
    };
    Ok(p)
}

/// Exact escape mass, defined as the sum of the novel-symbol conditionals
/// (Good-Turing: `f_1 / n`).
pub fn escape_mass(fv: &FrequencyVector, law: &SuccessionLaw) -> Rational {
    if fv.n() == 0 {
        return Rational::one();
    }
    let n = int(fv.n());
    let q = int(fv.q() as u64);
    let k = int(fv.k() as u64);
    use SuccessionLaw::*;
    if let GoodTuring = law {
        return frac(int(fv.fof(1) as u64), n);
    }
    if fv.novel() == 0 {
        return Rational::zero();
    }
    let one = Rational::one();
    match *law {
        Laplace => frac(&k - &q, &n + &k),
        Lidstone(l) => {
            let l = from_f64(l.get());
            frac((&k - &q) * &l, &n + &k * &l)
        }
        UniformSubsets | SharpenedSubsets => frac(
            &q * (&k - &q),
            (&n + &q) * (&n + &one - &q) + &q * (&k - &q),
        ),
        Natural | SharpenedNatural => frac(&q * (&q + &one), &n * &n + &n + int(2) * &q),
        MethodA => frac(one.clone(), &n + &one),
        MethodB => frac((&k - &q) * &q, (&k - int(fv.q_prime() as u64)) * &n),
        MethodC => frac(q.clone(), &n + &q),
        MethodD => frac(q, int(2) * n),
        AbsoluteDiscount(d) => frac(&q * from_f64(d.get()), n),
        LinearDiscount(a) => from_f64(a.get()),
        GoodTuring => unreachable!(),
    }
}

/// Exact probability of one string realizing `fv` under the law's prior.
pub fn string_probability(fv: &FrequencyVector, law: &SuccessionLaw) -> Result<Rational> {
    if !has_closed_form(law) {
        return Err(Error::NoClosedForm { law: law.name() });
    }
    let n = fv.n();
    if n == 0 {
        return Ok(Rational::one());
    }
    let k = fv.k() as u64;
    let q = fv.q() as u64;
    let arrangements = multinomial(fv);
    let one = Rational::one();
    use SuccessionLaw::*;
    let p = match *law {
        Laplace => one / Rational::from_integer(binomial(n + k - 1, k - 1) * arrangements),
        Lidstone(l) => {
            let l = from_f64(l.get());
            let num = fv
                .attested()
                .fold(Rational::one(), |acc, (_, c)| acc * rising(&l, c));
            num / rising(&(int(k) * &l), n)
        }
        UniformSubsets => {
            let subsets: BigInt = (1..=n.min(k)).map(|i| binomial(k, i)).sum();
            one / Rational::from_integer(subsets * binomial(n - 1, q - 1) * arrangements)
        }
        Natural => {
            let den =
                BigInt::from(n.min(k)) * binomial(k, q) * binomial(n - 1, q - 1) * arrangements;
            one / Rational::from_integer(den)
        }
        AbsoluteDiscount(d) => {
            let d = from_f64(d.get());
            // Γ(c - δ)/Γ(1 - δ) = Π_{j=1}^{c-1} (j - δ)
            let repeats = fv.attested().fold(Rational::one(), |acc, (_, c)| {
                acc * rising(&(&one - &d), c - 1)
            });
            let num = Rational::from_integer(factorial(q - 1) * factorial(k - q));
            let den = Rational::from_integer(factorial(k) * factorial(n - 1));
            pow(&d, q - 1) * num / den * repeats
        }
        LinearDiscount(a) => {
            let a = from_f64(a.get());
            let repeats = fv
                .attested()
                .fold(BigInt::one(), |acc, (_, c)| acc * factorial(c - 1));
            let num = Rational::from_integer(factorial(q - 1) * factorial(k - q) * repeats);
            let den = Rational::from_integer(factorial(k) * factorial(n - 1));
            pow(&a, q - 1) * pow(&(&one - &a), n - q) * num / den
        }
        _ => unreachable!(),
    };
    Ok(p)
}

fn pow(x: &Rational, e: u64) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// Exact `p(x^n i | n+1) / Σ_j p(x^n j | n+1)`.
pub fn conditional_from_prior(
    fv: &FrequencyVector,
    sym: Symbol,
    law: &SuccessionLaw,
) -> Result<Rational> {
    fv.check(sym)?;
    let c = fv.count(sym);
    let classes = conditionals_from_prior(fv, law)?;
    Ok(classes
        .into_iter()
        .find(|(count, _)| *count == c)
        .map(|(_, p)| p)
        .expect("symbol belongs to a count class"))
}

/// [`conditional_from_prior`] for every count class at once, as
/// `(count, probability)` pairs; count 0 stands for the novel symbols.
pub fn conditionals_from_prior(
    fv: &FrequencyVector,
    law: &SuccessionLaw,
) -> Result<Vec<(u64, Rational)>> {
    let mut classes: Vec<(u64, usize, Rational)> = Vec::new();
    if let Some(sym) = fv.first_novel() {
        let mut ext = fv.clone();
        ext.observe(sym)?;
        classes.push((0, fv.novel(), string_probability(&ext, law)?));
    }
    for (count, mult) in fv.fof_iter() {
        let (sym, _) = fv
            .attested()
            .find(|&(_, c)| c == count)
            .expect("count class has a member");
        let mut ext = fv.clone();
        ext.observe(sym)?;
        classes.push((count, mult, string_probability(&ext, law)?));
    }
    let total: Rational = classes.iter().map(|(_, m, p)| p * int(*m as u64)).sum();
    Ok(classes
        .into_iter()
        .map(|(c, _, p)| (c, p / &total))
        .collect())
}

/// Product of the exact sequential conditionals along `symbols`.
pub fn sequential_probability(
    k: usize,
    symbols: &[usize],
    law: &SuccessionLaw,
) -> Result<Rational> {
    let mut fv = FrequencyVector::new(k)?;
    let mut p = Rational::one();
    for &s in symbols {
        p *= conditional(&fv, Symbol(s), law)?;
        fv.observe(Symbol(s))?;
    }
    Ok(p)
}

/// `|1 - Σ_i p_GT(i)|` in exact arithmetic.
pub fn good_turing_mass_deviation(fv: &FrequencyVector) -> Result<Rational> {
    let mut total = Rational::zero();
    for i in 0..fv.k() {
        total += conditional(fv, Symbol(i), &SuccessionLaw::GoodTuring)?;
    }
    Ok((Rational::one() - total).abs())
}

/// Sum of the exact conditionals over the whole alphabet.
pub fn total_mass(fv: &FrequencyVector, law: &SuccessionLaw) -> Result<Rational> {
    let mut total = Rational::zero();
    if fv.novel() > 0 {
        total += conditional_for_count(fv, 0, law)? * int(fv.novel() as u64);
    }
    for (c, m) in fv.fof_iter() {
        total += conditional_for_count(fv, c, law)? * int(m as u64);
    }
    Ok(total)
}

/// The natural law's probability for one novel symbol, from the summary
/// statistics alone: `q(q+1) / ((k-q)(n²+n+2q))`. Requires `q < k`.
pub fn natural_novel_probability(n: u64, q: u64, k: u64) -> Rational {
    let (n, q, k) = (
        Rational::from_integer(BigInt::from(n)),
        Rational::from_integer(BigInt::from(q)),
        Rational::from_integer(BigInt::from(k)),
    );
    let one = Rational::one();
    (&q * (&q + &one)) / ((&k - &q) * (&n * &n + &n + Rational::from_integer(BigInt::from(2)) * &q))
}
