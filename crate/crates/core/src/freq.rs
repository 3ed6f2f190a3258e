//! Frequency statistics of an observed symbol stream.
//!
//! A [`FrequencyVector`] keeps the per-symbol counts together with every
//! derived quantity the estimation laws consume: the total `n`, the number of
//! attested symbols `q`, the number of symbols seen at least twice `q'`, and
//! the frequency-of-frequencies table `f_j`. All of them are maintained
//! incrementally by [`FrequencyVector::observe`].

use std::collections::BTreeMap;

use crate::{Error, Result};

/// Index of a symbol in an alphabet of size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub usize);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Symbol {
    fn from(i: usize) -> Self {
        Symbol(i)
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol(b as usize)
    }
}

/// Sufficient statistics for every law of succession in this crate.
///
/// Counts are stored positionally. Trailing zero counts are implicit, so an
/// alphabet of size 2^32 costs nothing until symbols near the top of the
/// range are observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyVector {
    k: usize,
    counts: Vec<u64>,
    n: u64,
    q: usize,
    q_prime: usize,
    // f_j for j >= 1, only nonzero entries. f_0 is k - q.
    fof: BTreeMap<u64, usize>,
}

impl FrequencyVector {
    /// The empty vector over an alphabet of `k` symbols.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(FrequencyVector {
            k,
            counts: Vec::new(),
            n: 0,
            q: 0,
            q_prime: 0,
            fof: BTreeMap::new(),
        })
    }

    pub fn from_counts(k: usize, counts: &[u64]) -> Result<Self> {
        if counts.len() > k {
            return Err(Error::CountsTooLong {
                len: counts.len(),
                k,
            });
        }
        let mut fv = Self::new(k)?;
        fv.counts = counts.to_vec();
        fv.recompute();
        Ok(fv)
    }

    /// Builds a vector by observing every symbol of `symbols` in order.
    pub fn from_symbols<I>(k: usize, symbols: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Symbol>,
    {
        let mut fv = Self::new(k)?;
        for s in symbols {
            fv.observe(s.into())?;
        }
        Ok(fv)
    }

    fn recompute(&mut self) {
        while self.counts.last() == Some(&0) {
            self.counts.pop();
        }
        self.n = 0;
        self.q = 0;
        self.q_prime = 0;
        self.fof.clear();
        for &c in &self.counts {
            self.n += c;
            if c > 0 {
                self.q += 1;
                *self.fof.entry(c).or_insert(0) += 1;
            }
            if c > 1 {
                self.q_prime += 1;
            }
        }
    }

    /// Records one more occurrence of `sym`.
    pub fn observe(&mut self, sym: Symbol) -> Result<()> {
        let i = self.check(sym)?;
        if i >= self.counts.len() {
            self.counts.resize(i + 1, 0);
        }
        let old = self.counts[i];
        let new = old + 1;
        self.counts[i] = new;
        self.n += 1;
        if old == 0 {
            self.q += 1;
        } else {
            if old == 1 {
                self.q_prime += 1;
            }
            match self.fof.get_mut(&old) {
                Some(f) if *f > 1 => *f -= 1,
                _ => {
                    self.fof.remove(&old);
                }
            }
        }
        *self.fof.entry(new).or_insert(0) += 1;
        Ok(())
    }

    #[inline]
    pub(crate) fn check(&self, sym: Symbol) -> Result<usize> {
        if sym.0 < self.k {
            Ok(sym.0)
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: sym.0,
                k: self.k,
            })
        }
    }

    /// Alphabet size.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Total number of observations.
    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of attested symbols, `|{i : n_i > 0}|`.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of symbols seen at least twice, `|{i : n_i > 1}|`.
    #[inline]
    pub fn q_prime(&self) -> usize {
        self.q_prime
    }

    /// Number of novel (unattested) symbols, `k - q`.
    #[inline]
    pub fn novel(&self) -> usize {
        self.k - self.q
    }

    /// Count of symbol `i`; zero for any index past the stored prefix.
    #[inline]
    pub fn count(&self, sym: Symbol) -> u64 {
        self.counts.get(sym.0).copied().unwrap_or(0)
    }

    /// The stored count prefix. Indices past its end have count zero.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Dense counts padded with zeros to length `k`.
    pub fn dense_counts(&self) -> Vec<u64> {
        let mut v = self.counts.clone();
        v.resize(self.k, 0);
        v
    }

    /// Frequency of frequencies `f_j`: the number of symbols seen exactly `j`
    /// times. `f_0 = k - q`.
    pub fn fof(&self, j: u64) -> usize {
        if j == 0 {
            self.k - self.q
        } else {
            self.fof.get(&j).copied().unwrap_or(0)
        }
    }

    /// Nonzero `f_j` for `j >= 1`, in increasing `j`.
    pub fn fof_iter(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.fof.iter().map(|(&j, &f)| (j, f))
    }

    /// Iterator over attested symbols and their counts.
    pub fn attested(&self) -> impl Iterator<Item = (Symbol, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (Symbol(i), c))
    }

    /// Some symbol with count zero, if one exists.
    pub fn first_novel(&self) -> Option<Symbol> {
        if self.q == self.k {
            return None;
        }
        let i = self
            .counts
            .iter()
            .position(|&c| c == 0)
            .unwrap_or(self.counts.len());
        Some(Symbol(i))
    }

    /// Empirical self-information `n·H({n_i/n}) = Σ n_i log2(n/n_i)` in bits.
    pub fn empirical_entropy_bits(&self) -> f64 {
        if self.n == 0 || self.q == 1 {
            return 0.0;
        }
        let n = self.n as f64;
        self.counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let c = c as f64;
                c * (n / c).log2()
            })
            .sum()
    }
}
