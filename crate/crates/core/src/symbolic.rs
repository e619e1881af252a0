//! PAA, Gaussian-breakpoint SAX words and reconstruction back to the
//! original sampling grid.

use std::fmt;

use serde::{Serialize, Serializer};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::series::{self, Series};

pub const MAX_ALPHABET: usize = 26;

/// Series length `n`, word length `w` and alphabet size `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SaxConfig {
    pub n: usize,
    pub w: usize,
    pub a: usize,
}

impl SaxConfig {
    pub fn new(n: usize, w: usize, a: usize) -> Result<Self> {
        if w == 0 || w > n {
            return Err(Error::param(format!(
                "word length must satisfy 1 <= w <= n (w = {w}, n = {n})"
            )));
        }
        check_alphabet(a)?;
        Ok(SaxConfig { n, w, a })
    }
}

fn check_alphabet(a: usize) -> Result<()> {
    if !(2..=MAX_ALPHABET).contains(&a) {
        return Err(Error::param(format!(
            "alphabet size must be in [2, {MAX_ALPHABET}], got {a}"
        )));
    }
    Ok(())
}

/// Half-open index range `[floor(i*n/w), floor((i+1)*n/w))` of window `i`.
pub fn window_bounds(n: usize, w: usize, i: usize) -> (usize, usize) {
    (i * n / w, (i + 1) * n / w)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PaaValues {
    means: Vec<f64>,
    source_length: usize,
}

impl PaaValues {
    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    pub fn word_length(&self) -> usize {
        self.means.len()
    }
}

pub fn paa(s: &Series, w: usize) -> Result<PaaValues> {
    let n = s.len();
    if w == 0 || w > n {
        return Err(Error::param(format!(
            "PAA word length must satisfy 1 <= w <= n (w = {w}, n = {n})"
        )));
    }
    let values = s.values();
    let means = (0..w)
        .map(|i| {
            let (lo, hi) = window_bounds(n, w, i);
            series::mean(&values[lo..hi])
        })
        .collect();
    Ok(PaaValues {
        means,
        source_length: n,
    })
}

/// Expands one value per window back to `n` samples.
fn expand(levels: impl ExactSizeIterator<Item = f64>, n: usize) -> Vec<f64> {
    let w = levels.len();
    let mut out = Vec::with_capacity(n);
    for (i, level) in levels.enumerate() {
        let (lo, hi) = window_bounds(n, w, i);
        out.extend(std::iter::repeat_n(level, hi - lo));
    }
    out
}

pub fn reconstruct_paa(p: &PaaValues) -> Series {
    Series::from_trusted(expand(p.means.iter().copied(), p.source_length))
}

/// The `a - 1` cut points of equiprobable segments under N(0, 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Breakpoints {
    cuts: Vec<f64>,
}

impl Breakpoints {
    pub fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    pub fn alphabet(&self) -> usize {
        self.cuts.len() + 1
    }

    /// Number of cuts strictly below `value`; a value on a cut takes the
    /// lower segment.
    pub fn segment_of(&self, value: f64) -> usize {
        self.cuts.partition_point(|&c| c < value)
    }
}

pub fn gaussian_breakpoints(a: usize) -> Result<Breakpoints> {
    check_alphabet(a)?;
    let normal = Normal::standard();
    let cuts = (1..a)
        .map(|k| {
            // Mirror the upper half so the table is exactly symmetric.
            if 2 * k == a {
                0.0
            } else if 2 * k < a {
                normal.inverse_cdf(k as f64 / a as f64)
            } else {
                -normal.inverse_cdf((a - k) as f64 / a as f64)
            }
        })
        .collect();
    Ok(Breakpoints { cuts })
}

/// Symbol indices in `[0, a)`; rendered as `'A' + index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaxWord {
    symbols: Vec<u8>,
    alphabet: u8,
}

impl SaxWord {
    pub fn new(symbols: Vec<u8>, alphabet: usize) -> Result<Self> {
        check_alphabet(alphabet)?;
        if symbols.is_empty() {
            return Err(Error::param("SAX word must not be empty"));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet) {
            return Err(Error::param(format!(
                "symbol {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(SaxWord {
            symbols,
            alphabet: alphabet as u8,
        })
    }

    pub fn from_letters(letters: &str, alphabet: usize) -> Result<Self> {
        let symbols = letters
            .bytes()
            .map(|b| match b {
                b'A'..=b'Z' => Ok(b - b'A'),
                _ => Err(Error::param(format!("'{}' is not an A-Z symbol", b as char))),
            })
            .collect::<Result<Vec<_>>>()?;
        SaxWord::new(symbols, alphabet)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet as usize
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol indices as a numeric series (digits 0..25).
    pub fn digits(&self) -> Series {
        Series::from_trusted(self.symbols.iter().map(|&s| f64::from(s)).collect())
    }
}

impl fmt::Display for SaxWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", (b'A' + s) as char)?;
        }
        Ok(())
    }
}

impl Serialize for SaxWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn sax_word(p: &PaaValues, b: &Breakpoints) -> SaxWord {
    SaxWord {
        symbols: p.means.iter().map(|&m| b.segment_of(m) as u8).collect(),
        alphabet: b.alphabet() as u8,
    }
}

/// Digit values of `word` stretched to `n` samples with the PAA window map.
/// The output is not unit-scaled.
pub fn reconstruct_sax(word: &SaxWord, n: usize) -> Result<Series> {
    if n < word.len() {
        return Err(Error::param(format!(
            "cannot stretch a word of length {} to {n} samples",
            word.len()
        )));
    }
    Ok(Series::from_trusted(expand(
        word.symbols.iter().map(|&s| f64::from(s)),
        n,
    )))
}

/// Everything produced by symbolizing one series.
#[derive(Debug, Clone, Serialize)]
pub struct SymbolicResult {
    pub word: SaxWord,
    pub paa: PaaValues,
    /// PAA of the z-normalized series at the original length.
    pub paa_reconstruction: Series,
    /// SAX digits at the original length, before unit scaling.
    pub sax_reconstruction: Series,
}

/// z-normalize, PAA, then map to symbols.
pub fn symbolize(s: &Series, w: usize, breakpoints: &Breakpoints) -> Result<SymbolicResult> {
    let z = series::znormalize(s);
    let p = paa(&z, w)?;
    let word = sax_word(&p, breakpoints);
    let paa_reconstruction = reconstruct_paa(&p);
    let sax_reconstruction = reconstruct_sax(&word, s.len())?;
    Ok(SymbolicResult {
        word,
        paa: p,
        paa_reconstruction,
        sax_reconstruction,
    })
}
