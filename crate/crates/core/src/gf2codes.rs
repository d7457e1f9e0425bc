//! Binary linear codes over GF(2).
//!
//! Codewords are stored as `u64` bit vectors, bit `i` holding coordinate `i`,
//! so the length is capped at 64. All weight statistics come from an
//! exhaustive Gray-code sweep over the `2^k` codewords.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest dimension for which the exhaustive `2^k` sweep is allowed.
pub const MAX_SWEEP_DIMENSION: usize = 28;
pub const MAX_LENGTH: usize = 64;

/// A binary linear `[n, k, d]` code held by a reduced row-echelon generator matrix.
#[derive(Clone)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<u64>,
    d: OnceLock<usize>,
    min_words: OnceLock<Vec<u64>>,
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryCode")
            .field("n", &self.n)
            .field("k", &self.rows.len())
            .field(
                "rows",
                &self.rows.iter().map(|r| bits_to_string(*r, self.n)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialEq for BinaryCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for BinaryCode {}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn weight(word: u64) -> usize {
    word.count_ones() as usize
}

pub fn bits_to_string(word: u64, n: usize) -> String {
    (0..n).map(|i| if word >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a row of `'0'`/`'1'` characters; the first character is coordinate 0.
pub fn parse_bits(s: &str) -> Result<(u64, usize)> {
    let s = s.trim();
    if s.is_empty() || s.len() > MAX_LENGTH {
        return Err(Error::Format(format!("row length {} outside 1..=64", s.len())));
    }
    let mut word = 0u64;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => word |= 1 << i,
            other => return Err(Error::Format(format!("unexpected character {other:?} in row {s:?}"))),
        }
    }
    Ok((word, s.len()))
}

/// Row-reduces `rows` in place and returns the rank. Pivots are taken on
/// ascending coordinates and cleared from every other row.
fn reduce_rows(rows: &mut Vec<u64>, n: usize) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

impl BinaryCode {
    /// Builds the code spanned by `rows`, each of length `n`.
    pub fn from_rows(rows: &[u64], n: usize) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::Format(format!("code length {n} outside 1..=64")));
        }
        if rows.iter().any(|r| r & !mask(n) != 0) {
            return Err(Error::Format(format!("row has bits beyond length {n}")));
        }
        let mut rows = rows.to_vec();
        if reduce_rows(&mut rows, n) == 0 {
            return Err(Error::DegenerateCode);
        }
        Ok(Self {
            n,
            rows,
            d: OnceLock::new(),
            min_words: OnceLock::new(),
        })
    }

    /// Builds a code from textual rows of equal length.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DegenerateCode);
        }
        let mut n = None;
        let mut words = Vec::with_capacity(rows.len());
        for row in rows {
            let (w, len) = parse_bits(row.as_ref())?;
            match n {
                None => n = Some(len),
                Some(m) if m != len => return Err(Error::Format(format!("inconsistent row lengths {m} and {len}"))),
                _ => {}
            }
            words.push(w);
        }
        Self::from_rows(&words, n.unwrap())
    }

    /// Parses the plain-text code format: one row per line, `#` comments allowed.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        Self::from_strings(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Generator rows in reduced row-echelon form.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    fn check_sweep(&self) -> Result<()> {
        if self.k() > MAX_SWEEP_DIMENSION {
            return Err(Error::ResourceLimit {
                what: "codeword sweep dimension",
                reached: self.k() as u128,
                limit: MAX_SWEEP_DIMENSION as u128,
            });
        }
        Ok(())
    }

    /// Visits every codeword (including zero) in Gray-code order.
    pub fn for_each_codeword(&self, mut f: impl FnMut(u64)) -> Result<()> {
        self.check_sweep()?;
        let mut word = 0u64;
        f(word);
        for i in 1u64..(1u64 << self.k()) {
            word ^= self.rows[i.trailing_zeros() as usize];
            f(word);
        }
        Ok(())
    }

    /// All codewords in ascending numeric order.
    pub fn codewords(&self) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(1 << self.k().min(20));
        self.for_each_codeword(|w| out.push(w))?;
        out.sort_unstable();
        Ok(out)
    }

    /// Weight distribution `A_0, …, A_n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n + 1];
        self.for_each_codeword(|w| dist[weight(w)] += 1)?;
        Ok(dist)
    }

    pub fn contains(&self, word: u64) -> bool {
        let mut w = word;
        for &row in &self.rows {
            let lead = row.trailing_zeros();
            if w >> lead & 1 == 1 {
                w ^= row;
            }
        }
        w == 0
    }

    /// Exact minimum distance, cached after the first sweep.
    pub fn min_distance(&self) -> Result<usize> {
        if let Some(&d) = self.d.get() {
            return Ok(d);
        }
        let mut d = usize::MAX;
        self.for_each_codeword(|w| {
            if w != 0 {
                d = d.min(weight(w));
            }
        })?;
        Ok(*self.d.get_or_init(|| d))
    }

    /// The minimum-weight codewords `C_d`, sorted ascending.
    pub fn min_weight_codewords(&self) -> Result<&[u64]> {
        if let Some(words) = self.min_words.get() {
            return Ok(words);
        }
        let d = self.min_distance()?;
        let mut words = Vec::new();
        self.for_each_codeword(|w| {
            if weight(w) == d {
                words.push(w);
            }
        })?;
        words.sort_unstable();
        Ok(self.min_words.get_or_init(|| words))
    }

    /// `A_d = |C_d|`.
    pub fn min_weight_count(&self) -> Result<usize> {
        Ok(self.min_weight_codewords()?.len())
    }

    /// Zero-pads the code into length `n`, placing coordinate `i` at `positions[i]`.
    pub fn lengthen(&self, positions: &[usize], n: usize) -> Result<BinaryCode> {
        if positions.len() != self.n {
            return Err(Error::Format(format!(
                "{} positions given for a code of length {}",
                positions.len(),
                self.n
            )));
        }
        if n > MAX_LENGTH {
            return Err(Error::Format(format!("target length {n} exceeds 64")));
        }
        let mut seen = 0u64;
        for &p in positions {
            if p >= n {
                return Err(Error::Format(format!("position {p} out of range for length {n}")));
            }
            if seen >> p & 1 == 1 {
                return Err(Error::Format(format!("duplicate position {p}")));
            }
            seen |= 1 << p;
        }
        let rows: Vec<u64> = self.rows.iter().map(|&r| embed_word(r, positions)).collect();
        BinaryCode::from_rows(&rows, n)
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|&r| bits_to_string(r, self.n) + "\n").collect()
    }
}

/// Applies the coordinate embedding used by [`BinaryCode::lengthen`] to one word.
pub fn embed_word(word: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .filter(|(i, _)| word >> i & 1 == 1)
        .fold(0u64, |acc, (_, &p)| acc | 1 << p)
}

/// The desk-scale code families with fixed generator matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedCode {
    Repetition(usize),
    Parity(usize),
    Hamming8,
    ReedMuller { r: usize, m: usize },
    Golay24,
}

/// Generator polynomial of the cyclic [23,12,7] Golay code, bit `i` = coefficient of `x^i`.
const GOLAY23_POLY: u64 = 0b1100_0111_0101;

impl NamedCode {
    /// Parses `repetition(4)`, `repetition:4`, `parity(8)`, `hamming8`,
    /// `reed_muller(1,4)`, `rm(1,4)`, `rm:1,4` or `golay24`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        let (head, args) = match name.find(['(', ':']) {
            Some(i) => (&name[..i], name[i + 1..].trim_end_matches(')')),
            None => (name.as_str(), ""),
        };
        let nums = || -> Result<Vec<usize>> {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Format(format!("bad code parameter {a:?} in {name:?}")))
                })
                .collect()
        };
        match (head, args.is_empty()) {
            ("hamming8", true) => Ok(NamedCode::Hamming8),
            ("golay24", true) => Ok(NamedCode::Golay24),
            ("repetition" | "rep", false) => match nums()?.as_slice() {
                [n] => Ok(NamedCode::Repetition(*n)),
                _ => Err(Error::Format(format!("repetition takes one parameter: {name:?}"))),
            },
            ("parity", false) => match nums()?.as_slice() {
                [n] => Ok(NamedCode::Parity(*n)),
                _ => Err(Error::Format(format!("parity takes one parameter: {name:?}"))),
            },
            ("reed_muller" | "rm", false) => match nums()?.as_slice() {
                [r, m] => Ok(NamedCode::ReedMuller { r: *r, m: *m }),
                _ => Err(Error::Format(format!("reed_muller takes (r,m): {name:?}"))),
            },
            _ => Err(Error::Format(format!("unknown code name {name:?}"))),
        }
    }

    pub fn build(self) -> Result<BinaryCode> {
        match self {
            NamedCode::Repetition(n) => {
                check_len(n, 1)?;
                BinaryCode::from_rows(&[mask(n)], n)
            }
            NamedCode::Parity(n) => {
                check_len(n, 2)?;
                let rows: Vec<u64> = (1..n).map(|i| 1 | 1 << i).collect();
                BinaryCode::from_rows(&rows, n)
            }
            NamedCode::Hamming8 => BinaryCode::from_strings(&["11111111", "00001111", "00110011", "01010101"]),
            NamedCode::ReedMuller { r, m } => reed_muller(r, m),
            NamedCode::Golay24 => {
                let rows: Vec<u64> = (0..12)
                    .map(|i| {
                        let w = GOLAY23_POLY << i;
                        w | ((weight(w) as u64 & 1) << 23)
                    })
                    .collect();
                BinaryCode::from_rows(&rows, 24)
            }
        }
    }
}

impl fmt::Display for NamedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedCode::Repetition(n) => write!(f, "repetition({n})"),
            NamedCode::Parity(n) => write!(f, "parity({n})"),
            NamedCode::Hamming8 => write!(f, "hamming8"),
            NamedCode::ReedMuller { r, m } => write!(f, "reed_muller({r},{m})"),
            NamedCode::Golay24 => write!(f, "golay24"),
        }
    }
}

fn check_len(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_LENGTH {
        return Err(Error::Format(format!("length {n} outside {min}..=64")));
    }
    Ok(())
}

/// RM(r, m): evaluations of all monomials of degree at most `r` on `F_2^m`.
fn reed_muller(r: usize, m: usize) -> Result<BinaryCode> {
    if m > 6 || r > m {
        return Err(Error::Format(format!("reed_muller({r},{m}) needs r <= m <= 6")));
    }
    let n = 1usize << m;
    let rows: Vec<u64> = (0u32..(1 << m))
        .filter(|mono| mono.count_ones() as usize <= r)
        .map(|mono| {
            (0..n)
                .filter(|&point| point as u32 & mono == mono)
                .fold(0u64, |acc, point| acc | 1 << point)
        })
        .collect();
    BinaryCode::from_rows(&rows, n)
}

/// Named code or a path to a plain-text generator file.
pub fn named_code(name: &str) -> Result<BinaryCode> {
    NamedCode::parse(name)?.build()
}
