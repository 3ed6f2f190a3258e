//! Sequential order-0 codelengths.
//!
//! A stream is coded symbol by symbol: each symbol costs `-log2 p` under the
//! law's conditional given the counts of everything before it. No entropy
//! coder is run; the totals are the analytic sums, and whole-byte figures
//! round up.

use serde::Serialize;

use crate::freq::{FrequencyVector, Symbol};
use crate::laws::SuccessionLaw;
use crate::special::CompensatedSum;
use crate::{Error, Result};

/// Number of days in the sunrise history (5,220 years).
pub const SUNRISE_DAYS: u64 = 1_906_605;

/// Laplace's own sunrise count, 1,826,213 days.
pub const LAPLACE_SUNRISE_DAYS: u64 = 1_826_213;

/// A finite sequence of symbols over an alphabet of size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    symbols: Vec<u32>,
    k: usize,
}

impl SymbolStream {
    pub fn new(k: usize, symbols: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= k) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                k,
            });
        }
        Ok(SymbolStream { symbols, k })
    }

    /// Bytes as symbols over `k` values; `k` must exceed every byte present.
    pub fn from_bytes(bytes: &[u8], k: usize) -> Result<Self> {
        Self::new(k, bytes.iter().map(|&b| b as u32).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn frequencies(&self) -> FrequencyVector {
        FrequencyVector::from_symbols(self.k, self.symbols.iter().map(|&s| s as usize))
            .expect("stream symbols are in range")
    }
}

/// Codelength totals for one stream under one law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodelengthReport {
    pub law: SuccessionLaw,
    pub bits: f64,
    pub bytes_ceil: u64,
    pub entropy_bits: f64,
    pub entropy_bytes_ceil: u64,
    /// `bytes_ceil - entropy_bytes_ceil`.
    pub score_bytes: i64,
    pub q: usize,
    pub n: u64,
}

impl CodelengthReport {
    fn new(law: SuccessionLaw, bits: f64, fv: &FrequencyVector) -> Self {
        let entropy_bits = fv.empirical_entropy_bits();
        let bytes_ceil = whole_bytes(bits);
        let entropy_bytes_ceil = whole_bytes(entropy_bits);
        CodelengthReport {
            law,
            bits,
            bytes_ceil,
            entropy_bits,
            entropy_bytes_ceil,
            score_bytes: bytes_ceil as i64 - entropy_bytes_ceil as i64,
            q: fv.q(),
            n: fv.n(),
        }
    }
}

// Tolerates accumulated rounding just above a byte boundary.
fn whole_bytes(bits: f64) -> u64 {
    let bytes = bits / 8.0;
    let nearest = bytes.round();
    if (bytes - nearest).abs() < 1e-9 * nearest.max(1.0) {
        nearest as u64
    } else {
        bytes.ceil() as u64
    }
}

/// Cumulative codelength after the first `t` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: u64,
    pub bits: f64,
    /// `bits` less the empirical entropy of the first `t` symbols.
    pub excess_bits: f64,
}

fn check_codable(law: &SuccessionLaw) -> Result<()> {
    if law.is_normalized() {
        Ok(())
    } else {
        Err(Error::UnsupportedLaw {
            law: law.name(),
            operation: "sequential coding",
        })
    }
}

/// Runs one pass over `stream`, handing the counts so far and each law's
/// cumulative bits to `sample` before every position and once at the end.
fn run<F>(
    stream: &SymbolStream,
    laws: &[SuccessionLaw],
    mut sample: F,
) -> Result<(Vec<f64>, FrequencyVector)>
where
    F: FnMut(u64, &FrequencyVector, &[CompensatedSum]),
{
    for law in laws {
        check_codable(law)?;
    }
    let mut fv = FrequencyVector::new(stream.k)?;
    let mut sums = vec![CompensatedSum::default(); laws.len()];
    for (t, &s) in stream.symbols.iter().enumerate() {
        sample(t as u64, &fv, &sums);
        let sym = Symbol(s as usize);
        let c = fv.count(sym);
        for (law, sum) in laws.iter().zip(sums.iter_mut()) {
            let bits = law.prob_of_count(&fv, c)?.bits();
            if !bits.is_finite() {
                return Err(Error::NonFiniteCodelength { position: t });
            }
            sum.add(bits);
        }
        fv.observe(sym)?;
    }
    sample(stream.len() as u64, &fv, &sums);
    Ok((sums.iter().map(CompensatedSum::value).collect(), fv))
}

/// Codelength of `stream` under `law`.
pub fn evaluate_stream(stream: &SymbolStream, law: &SuccessionLaw) -> Result<CodelengthReport> {
    Ok(evaluate_laws(stream, std::slice::from_ref(law))?.remove(0))
}

/// Codelengths of `stream` under each law, in one pass.
pub fn evaluate_laws(
    stream: &SymbolStream,
    laws: &[SuccessionLaw],
) -> Result<Vec<CodelengthReport>> {
    let (bits, fv) = run(stream, laws, |_, _, _| {})?;
    Ok(laws
        .iter()
        .zip(bits)
        .map(|(law, b)| CodelengthReport::new(*law, b, &fv))
        .collect())
}

/// Cumulative codelength sampled at every multiple of `stride` and at the end.
pub fn emit_curve(
    stream: &SymbolStream,
    law: &SuccessionLaw,
    stride: u64,
) -> Result<Vec<CurvePoint>> {
    Ok(emit_curves(stream, std::slice::from_ref(law), stride)?.remove(0))
}

/// [`emit_curve`] for several laws over one pass.
pub fn emit_curves(
    stream: &SymbolStream,
    laws: &[SuccessionLaw],
    stride: u64,
) -> Result<Vec<Vec<CurvePoint>>> {
    if stride == 0 {
        return Err(Error::InvalidParameter {
            name: "stride",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let n = stream.len() as u64;
    let mut curves = vec![Vec::new(); laws.len()];
    run(stream, laws, |t, fv, sums| {
        if t > 0 && (t % stride == 0 || t == n) {
            let entropy = fv.empirical_entropy_bits();
            for (curve, s) in curves.iter_mut().zip(sums) {
                let bits = s.value();
                curve.push(CurvePoint {
                    t,
                    bits,
                    excess_bits: bits - entropy,
                });
            }
        }
    })?;
    Ok(curves)
}

/// `days` copies of the byte `'1'`.
pub fn synthesize_sunrise(days: u64) -> SymbolStream {
    SymbolStream {
        symbols: vec![b'1' as u32; days as usize],
        k: 256,
    }
}
