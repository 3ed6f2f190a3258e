//! Log-domain combinatorics in base 2.

use std::f64::consts::LN_2;

#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `log2 Γ(x)`.
#[inline]
pub fn log2_gamma(x: f64) -> f64 {
    ln_gamma(x) / LN_2
}

/// `log2 n!`.
#[inline]
pub fn log2_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else {
        log2_gamma(n as f64 + 1.0)
    }
}

/// `log2 C(n, r)`; `-inf` when `r > n`.
pub fn log2_binomial(n: u64, r: u64) -> f64 {
    if r > n {
        return f64::NEG_INFINITY;
    }
    if r == 0 || r == n {
        return 0.0;
    }
    let (n, r) = (n as f64, r as f64);
    (ln_gamma(n + 1.0) - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0)) / LN_2
}

/// `log2 Σ 2^x_i`, stable for widely spread exponents.
pub fn log2_sum_exp2<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let s: f64 = xs.iter().map(|&x| (x - max).exp2()).sum();
    max + s.log2()
}

/// `log2 Σ_{i=1}^{m} C(k, i)`, the number of nonempty subsets of size at most
/// `m` of a `k`-set.
pub fn log2_subset_count(k: u64, m: u64) -> f64 {
    let m = m.min(k);
    if m == k {
        // 2^k - 1
        let k = k as f64;
        return k + (-(-k).exp2()).ln_1p() / LN_2;
    }
    log2_sum_exp2((1..=m).map(|i| log2_binomial(k, i)))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
