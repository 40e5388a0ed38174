//! The 64-state hexagram space and its canonical orderings.
//!
//! A hexagram is six binary lines read bottom (line 1) to top (line 6).
//! Line 1 is stored in the least-significant bit of the 6-bit code, so
//! `code = Σ line_k · 2^(k-1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LINES: usize = 6;
pub const HEXAGRAM_COUNT: usize = 64;
const MASK: u8 = 0b11_1111;

/// One of the 64 six-line states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Hexagram(u8);

/// Three consecutive lines: lower (1–3) or upper (4–6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Trigram(u8);

impl Hexagram {
    pub const ALL_YANG: Hexagram = Hexagram(63);
    pub const ALL_YIN: Hexagram = Hexagram(0);

    pub fn from_code(code: u8) -> Result<Self> {
        if code > MASK {
            return Err(Error::validation(format!(
                "hexagram code {code} outside 0..=63"
            )));
        }
        Ok(Hexagram(code))
    }

    /// Builds a hexagram from its lines, bottom first.
    pub fn from_lines(lines: &[u8]) -> Result<Self> {
        if lines.len() != LINES {
            return Err(Error::validation(format!(
                "a hexagram has 6 lines, got {}",
                lines.len()
            )));
        }
        let mut code = 0u8;
        for (k, &line) in lines.iter().enumerate() {
            match line {
                0 => {}
                1 => code |= 1 << k,
                other => {
                    return Err(Error::validation(format!(
                        "line {} is {other}, expected 0 or 1",
                        k + 1
                    )))
                }
            }
        }
        Ok(Hexagram(code))
    }

    /// Parses a bottom-to-top line string such as `"101010"`.
    pub fn from_line_str(s: &str) -> Result<Self> {
        let lines = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::validation(format!(
                    "invalid line character {other:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_lines(&lines)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    /// Line `k` (1 = bottom, 6 = top).
    pub fn line(self, k: usize) -> u8 {
        assert!((1..=LINES).contains(&k), "line index {k} outside 1..=6");
        (self.0 >> (k - 1)) & 1
    }

    pub fn lines(self) -> [u8; LINES] {
        std::array::from_fn(|i| (self.0 >> i) & 1)
    }

    /// Bottom-to-top line string, e.g. `"111000"` for code 7.
    pub fn line_string(self) -> String {
        self.lines()
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn yang_count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn complement(self) -> Self {
        Hexagram(!self.0 & MASK)
    }

    /// Turns the figure upside down: line k becomes line 7 − k.
    pub fn reverse(self) -> Self {
        Hexagram(self.0.reverse_bits() >> 2)
    }

    pub fn is_palindrome(self) -> bool {
        self.reverse() == self
    }

    /// (lower, upper) trigrams.
    pub fn trigrams(self) -> (Trigram, Trigram) {
        (Trigram(self.0 & 0b111), Trigram(self.0 >> 3))
    }

    /// Lines 2, 3, 4, 5 in order.
    pub fn nuclear_window(self) -> [u8; 4] {
        std::array::from_fn(|i| (self.0 >> (i + 1)) & 1)
    }

    pub fn all() -> impl Iterator<Item = Hexagram> {
        (0..HEXAGRAM_COUNT as u8).map(Hexagram)
    }
}

impl TryFrom<u8> for Hexagram {
    type Error = Error;

    fn try_from(code: u8) -> Result<Self> {
        Hexagram::from_code(code)
    }
}

impl From<Hexagram> for u8 {
    fn from(h: Hexagram) -> u8 {
        h.0
    }
}

impl fmt::Display for Hexagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Trigram {
    pub fn code(self) -> u8 {
        self.0
    }

    pub fn lines(self) -> [u8; 3] {
        std::array::from_fn(|i| (self.0 >> i) & 1)
    }
}

/// Layout used for the Shao Yong arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShaoYongConvention {
    /// Position i holds the 6-bit reversal of i − 1.
    #[default]
    Reversed,
    /// Position i holds code i − 1.
    Direct,
}

/// King Wen sequence as 6-bit codes, positions 1..=64.
///
/// Built from (upper, lower) trigram pairs with trigram codes
/// Kun 0, Zhen 1, Kan 2, Dui 3, Gen 4, Li 5, Xun 6, Qian 7.
const KING_WEN: [u8; HEXAGRAM_COUNT] = [
    63, 0, 17, 34, 23, 58, 2, 16, 55, 59, 7, 56, 61, 47, 4, 8, //
    25, 38, 3, 48, 41, 37, 32, 1, 57, 39, 33, 30, 18, 45, 28, 14, //
    60, 15, 40, 5, 53, 43, 20, 10, 35, 49, 31, 62, 24, 6, 26, 22, //
    29, 46, 9, 36, 52, 11, 13, 44, 54, 27, 50, 19, 51, 12, 21, 42,
];

/// A named arrangement of all 64 hexagrams.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrdering")]
pub struct Ordering {
    name: String,
    sequence: Vec<Hexagram>,
}

#[derive(Deserialize)]
struct RawOrdering {
    name: String,
    sequence: Vec<Hexagram>,
}

impl TryFrom<RawOrdering> for Ordering {
    type Error = Error;

    fn try_from(raw: RawOrdering) -> Result<Self> {
        Ordering::new(raw.name, raw.sequence)
    }
}

impl Ordering {
    /// Validates that `sequence` visits every hexagram exactly once.
    pub fn new(name: impl Into<String>, sequence: Vec<Hexagram>) -> Result<Self> {
        if sequence.len() != HEXAGRAM_COUNT {
            return Err(Error::validation(format!(
                "an ordering needs 64 entries, got {}",
                sequence.len()
            )));
        }
        let mut seen = [false; HEXAGRAM_COUNT];
        for h in &sequence {
            let slot = &mut seen[h.code() as usize];
            if *slot {
                return Err(Error::validation(format!("hexagram {h} appears twice")));
            }
            *slot = true;
        }
        Ok(Ordering {
            name: name.into(),
            sequence,
        })
    }

    pub fn from_codes(name: impl Into<String>, codes: &[u8]) -> Result<Self> {
        let sequence = codes
            .iter()
            .map(|&c| Hexagram::from_code(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, sequence)
    }

    pub fn king_wen() -> Self {
        Self::from_codes("kingwen", &KING_WEN).expect("King Wen table is a permutation")
    }

    pub fn shao_yong(convention: ShaoYongConvention) -> Self {
        let sequence = Hexagram::all()
            .map(|h| match convention {
                ShaoYongConvention::Direct => h,
                ShaoYongConvention::Reversed => h.reverse(),
            })
            .collect();
        Ordering {
            name: "shaoyong".into(),
            sequence,
        }
    }

    pub fn binary() -> Self {
        Ordering {
            name: "binary".into(),
            sequence: Hexagram::all().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sequence(&self) -> &[Hexagram] {
        &self.sequence
    }

    pub fn codes(&self) -> Vec<u8> {
        self.sequence.iter().map(|h| h.code()).collect()
    }

    /// Hexagram at 1-based `position`.
    pub fn at(&self, position: usize) -> Hexagram {
        self.sequence[position - 1]
    }

    pub fn total_yang(&self) -> u32 {
        self.sequence.iter().map(|h| h.yang_count()).sum()
    }
}
