//! Truth-table representation of Boolean functions.
//!
//! A function of `n` variables is stored as its 2^n-bit string `f_0 f_1 ... f_{2^n-1}`,
//! where `f_i` is the value on the binary representation of `i` with `x_1` as the most
//! significant bit. The first half of the string is therefore the cofactor `x_1 = 0`,
//! which makes concatenation of two `n`-variable tables an `(n+1)`-variable table.
//!
//! Packing: tables of up to 64 bits live in the low `2^n` bits of a single word with
//! `f_0` as the most significant of those bits. Larger tables use `2^(n-6)` words,
//! word `w` holding `f_{64w} .. f_{64w+63}` from bit 63 downwards. With this layout
//! the derived order on words equals the lexicographic order of the bit strings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};
use thiserror::Error;

/// Largest supported variable count.
pub const MAX_VARS: usize = 16;

/// Mask of positions whose bit `k` is clear, for `k < 6`.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFnError {
    #[error("variable count {0} exceeds the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("truth table length {0} is not a power of two")]
    BadLength(usize),
    #[error("invalid truth table text {0:?}")]
    Parse(String),
    #[error("function is not unate")]
    NotUnate,
    #[error("balance is undefined for 0-variable functions")]
    ZeroVariables,
}

type Words = SmallVec<[u64; 2]>;

/// An `n`-variable Boolean function given by its truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    n: u8,
    words: Words,
}

#[inline]
fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the used bits of the (single) word for `n <= 6`.
#[inline]
fn used_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl BoolFn {
    /// The constant function `value` of `n` variables.
    pub fn constant(n: usize, value: bool) -> Result<Self, BoolFnError> {
        check_n(n)?;
        let fill = if value { used_mask(n) } else { 0 };
        Ok(Self { n: n as u8, words: smallvec![fill; word_count(n)] })
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, false).expect("n within range")
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, true).expect("n within range")
    }

    /// Builds a function from its bit string `f_0 .. f_{2^n-1}`.
    pub fn from_bits(bits: &[bool]) -> Result<Self, BoolFnError> {
        let len = bits.len();
        if !len.is_power_of_two() {
            return Err(BoolFnError::BadLength(len));
        }
        let n = len.trailing_zeros() as usize;
        check_n(n)?;
        let mut f = Self::zero(n);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                f.set_bit(i);
            }
        }
        Ok(f)
    }

    /// Builds a function of at most 6 variables from a packed word (low `2^n` bits,
    /// `f_0` most significant).
    pub fn from_word(n: usize, word: u64) -> Result<Self, BoolFnError> {
        if n > 6 {
            return Err(BoolFnError::DimensionMismatch { expected: 6, actual: n });
        }
        Ok(Self { n: n as u8, words: smallvec![word & used_mask(n)] })
    }

    /// Builds a function from packed words in the internal layout.
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self, BoolFnError> {
        check_n(n)?;
        if words.len() != word_count(n) {
            return Err(BoolFnError::DimensionMismatch { expected: word_count(n), actual: words.len() });
        }
        let mut w: Words = words.iter().copied().collect();
        if n < 6 {
            w[0] &= used_mask(n);
        }
        Ok(Self { n: n as u8, words: w })
    }

    /// Decodes an MSB-first byte record (`f_0` is bit 7 of byte 0).
    pub fn from_record_bytes(n: usize, bytes: &[u8]) -> Result<Self, BoolFnError> {
        check_n(n)?;
        let need = record_len(n);
        if bytes.len() != need {
            return Err(BoolFnError::DimensionMismatch { expected: need, actual: bytes.len() });
        }
        if n <= 6 {
            let mut buf = [0u8; 8];
            buf[..need].copy_from_slice(bytes);
            let w = u64::from_be_bytes(buf) >> (64 - (1u32 << n));
            Ok(Self { n: n as u8, words: smallvec![w] })
        } else {
            let words = bytes.chunks_exact(8).map(|c| u64::from_be_bytes(c.try_into().unwrap())).collect();
            Ok(Self { n: n as u8, words })
        }
    }

    /// Encodes as an MSB-first byte record of `ceil(2^n / 8)` bytes.
    pub fn to_record_bytes(&self) -> Vec<u8> {
        let n = self.n();
        if n <= 6 {
            let w = self.words[0] << (64 - (1u32 << n));
            w.to_be_bytes()[..record_len(n)].to_vec()
        } else {
            self.words.iter().flat_map(|w| w.to_be_bytes()).collect()
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Truth-table length `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed table for `n <= 6`.
    #[inline]
    pub fn word(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    /// Bit `f_i` of the table.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        if self.n <= 6 {
            (self.words[0] >> (self.len() - 1 - i)) & 1 == 1
        } else {
            (self.words[i >> 6] >> (63 - (i & 63))) & 1 == 1
        }
    }

    #[inline]
    fn set_bit(&mut self, i: usize) {
        if self.n <= 6 {
            let p = self.len() - 1 - i;
            self.words[0] |= 1 << p;
        } else {
            self.words[i >> 6] |= 1 << (63 - (i & 63));
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.bit(i)).collect()
    }

    /// Evaluates `f(x_1, .., x_n)`.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool, BoolFnError> {
        if x.len() != self.n() {
            return Err(BoolFnError::DimensionMismatch { expected: self.n(), actual: x.len() });
        }
        let i = x.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Ok(self.bit(i))
    }

    /// Size of the support.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn negate(&self) -> Self {
        let mask = used_mask(self.n());
        Self { n: self.n, words: self.words.iter().map(|w| !w & mask).collect() }
    }

    /// The reversed bit string, i.e. `f(!x_1, .., !x_n)`.
    pub fn reverse(&self) -> Self {
        self.shift_index(self.len() - 1)
    }

    /// Negation of the reverse. Maps monotone functions to monotone functions.
    pub fn dual(&self) -> Self {
        self.reverse().negate()
    }

    pub fn is_constant(&self) -> bool {
        let mask = used_mask(self.n());
        self.words.iter().all(|&w| w == 0) || self.words.iter().all(|&w| w == mask)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        let mask = used_mask(self.n());
        self.words.iter().all(|&w| w == mask)
    }

    /// `g || h`: the string of `g` followed by the string of `h`.
    pub fn concat(g: &Self, h: &Self) -> Result<Self, BoolFnError> {
        if g.n != h.n {
            return Err(BoolFnError::DimensionMismatch { expected: g.n(), actual: h.n() });
        }
        check_n(g.n() + 1)?;
        Ok(Self::concat_unchecked(g, h))
    }

    #[inline]
    pub(crate) fn concat_unchecked(g: &Self, h: &Self) -> Self {
        let n = g.n();
        if n < 6 {
            let w = (g.words[0] << (1u32 << n)) | h.words[0];
            Self { n: g.n + 1, words: smallvec![w] }
        } else {
            let mut words = Words::with_capacity(2 * g.words.len());
            words.extend_from_slice(&g.words);
            words.extend_from_slice(&h.words);
            Self { n: g.n + 1, words }
        }
    }

    /// Splits an `(n+1)`-variable table into its `x_1 = 0` and `x_1 = 1` halves.
    pub fn halves(&self) -> Option<(Self, Self)> {
        let n = self.n();
        if n == 0 {
            return None;
        }
        if n <= 6 {
            let half = 1u32 << (n - 1);
            let m = used_mask(n - 1);
            let w = self.words[0];
            Some((
                Self { n: self.n - 1, words: smallvec![(w >> half) & m] },
                Self { n: self.n - 1, words: smallvec![w & m] },
            ))
        } else {
            let (a, b) = self.words.split_at(self.words.len() / 2);
            Some((
                Self { n: self.n - 1, words: a.iter().copied().collect() },
                Self { n: self.n - 1, words: b.iter().copied().collect() },
            ))
        }
    }

    /// `self <= other` pointwise.
    pub fn leq(&self, other: &Self) -> Result<bool, BoolFnError> {
        if self.n != other.n {
            return Err(BoolFnError::DimensionMismatch { expected: self.n(), actual: other.n() });
        }
        Ok(self.leq_unchecked(other))
    }

    #[inline]
    pub(crate) fn leq_unchecked(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Translation `f_alpha(x) = f(x xor alpha)`, with `alpha = (alpha_1, .., alpha_n)`.
    pub fn shift(&self, alpha: &[bool]) -> Result<Self, BoolFnError> {
        if alpha.len() != self.n() {
            return Err(BoolFnError::DimensionMismatch { expected: self.n(), actual: alpha.len() });
        }
        let a = alpha.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Ok(self.shift_index(a))
    }

    /// Translation by the input index `a`: bit `i` of the result is bit `i ^ a`.
    pub fn shift_index(&self, a: usize) -> Self {
        let mut out = self.clone();
        for k in 0..self.n() {
            if (a >> k) & 1 == 1 {
                out.flip_index_bit(k);
            }
        }
        out
    }

    fn flip_index_bit(&mut self, k: usize) {
        if k < 6 {
            let s = 1u32 << k;
            for w in self.words.iter_mut() {
                *w = ((*w & !LOW[k]) >> s) | ((*w & LOW[k]) << s);
            }
        } else {
            let stride = 1 << (k - 6);
            for i in 0..self.words.len() {
                if i & stride == 0 {
                    self.words.swap(i, i | stride);
                }
            }
        }
    }

    /// Direction masks over index bits: bit `k` of `.0` is set iff `f` is increasing in the
    /// variable addressed by index bit `k` (that is `x_{n-k}`), and `.1` likewise for decreasing.
    pub fn direction_masks(&self) -> (u32, u32) {
        let n = self.n();
        let mut inc = 0u32;
        let mut dec = 0u32;
        for k in 0..n {
            let (up, down) = self.stride_directions(k);
            inc |= (up as u32) << k;
            dec |= (down as u32) << k;
        }
        (inc, dec)
    }

    /// Whether `f` is increasing / decreasing along index bit `k`, compared word-parallel.
    #[inline]
    fn stride_directions(&self, k: usize) -> (bool, bool) {
        let mut up = true;
        let mut down = true;
        if k < 6 {
            let s = 1u32 << k;
            for &w in self.words.iter() {
                // positions with bit k set hold the x = 0 values
                let lo = (w & !LOW[k]) >> s;
                let hi = w & LOW[k];
                up &= lo & !hi == 0;
                down &= hi & !lo == 0;
            }
        } else {
            let stride = 1 << (k - 6);
            for i in (0..self.words.len()).filter(|i| i & stride == 0) {
                let lo = self.words[i];
                let hi = self.words[i | stride];
                up &= lo & !hi == 0;
                down &= hi & !lo == 0;
            }
        }
        (up, down)
    }

    /// Per-variable directions, in the order `x_1 .. x_n`.
    pub fn monotone_directions(&self) -> Vec<Direction> {
        let n = self.n();
        (0..n)
            .map(|v| {
                let (increasing, decreasing) = self.stride_directions(n - 1 - v);
                Direction { increasing, decreasing }
            })
            .collect()
    }

    pub fn is_monotone(&self) -> bool {
        (0..self.n()).all(|k| self.stride_directions(k).0)
    }

    pub fn is_unate(&self) -> bool {
        (0..self.n()).all(|k| {
            let (up, down) = self.stride_directions(k);
            up || down
        })
    }

    /// True iff `f` depends on every variable. Both 0-variable constants count as
    /// non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.n()).all(|k| self.stride_directions(k) != (true, true))
    }

    pub fn is_balanced(&self) -> Result<bool, BoolFnError> {
        if self.n == 0 {
            return Err(BoolFnError::ZeroVariables);
        }
        Ok(self.weight() == (self.len() as u64) / 2)
    }

    /// Balanced, with 0-variable functions classified as unbalanced.
    pub fn is_balanced_or_false(&self) -> bool {
        self.is_balanced().unwrap_or(false)
    }

    pub fn signature(&self) -> Result<Signature, BoolFnError> {
        if self.is_zero() {
            return Ok(Signature::Zero);
        }
        if self.is_one() {
            return Ok(Signature::One);
        }
        let (inc, dec) = self.direction_masks();
        let full = full_mask(self.n());
        if (inc | dec) != full {
            return Err(BoolFnError::NotUnate);
        }
        Ok(Signature::Vec(Directions::new(self.n(), inc)))
    }
}

/// Record length in bytes of an `n`-variable table.
pub fn record_len(n: usize) -> usize {
    (1usize << n).div_ceil(8)
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_n(n: usize) -> Result<(), BoolFnError> {
    if n > MAX_VARS {
        Err(BoolFnError::TooManyVariables(n))
    } else {
        Ok(())
    }
}

impl PartialOrd for BoolFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Functions of fewer variables sort first; equal `n` compares the bit strings.
impl Ord for BoolFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.words.as_slice().cmp(other.words.as_slice()))
    }
}

/// Per-variable monotonicity. Both flags are set iff the function ignores the variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Direction {
    pub increasing: bool,
    pub decreasing: bool,
}

/// An `n`-bit direction vector `alpha_1 .. alpha_n`, held as an integer whose most
/// significant of `n` bits is `alpha_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Directions {
    n: u8,
    bits: u32,
}

impl Directions {
    pub fn new(n: usize, bits: u32) -> Self {
        Self { n: n as u8, bits: bits & full_mask(n) }
    }

    pub fn from_bools(alpha: &[bool]) -> Self {
        let bits = alpha.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        Self::new(alpha.len(), bits)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `alpha_i` for `i` in `1..=n`.
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> (self.n as usize - i)) & 1 == 1
    }

    pub fn xor(&self, other: &Directions) -> Directions {
        Directions::new(self.n(), self.bits ^ other.bits)
    }

    /// `b || alpha`, one variable longer.
    pub fn prepend(&self, b: bool) -> Directions {
        Directions::new(self.n() + 1, ((b as u32) << self.n) | self.bits)
    }
}

impl fmt::Display for Directions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Monotone-direction record of a unate function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    /// Constant 0.
    Zero,
    /// Constant 1.
    One,
    /// Non-constant: `alpha_i = 1` iff increasing in `x_i`.
    Vec(Directions),
}

impl Signature {
    pub fn is_constant(&self) -> bool {
        matches!(self, Signature::Zero | Signature::One)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Zero => f.write_str("z"),
            Signature::One => f.write_str("o"),
            Signature::Vec(d) => d.fmt(f),
        }
    }
}

impl fmt::Display for BoolFn {
    /// Bit string for tables of at most 16 bits, `0x`-prefixed hex otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 16 {
            for i in 0..self.len() {
                f.write_str(if self.bit(i) { "1" } else { "0" })?;
            }
            Ok(())
        } else {
            f.write_str("0x")?;
            for b in self.to_record_bytes() {
                write!(f, "{b:02x}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFn({}: {})", self.n, self)
    }
}

impl FromStr for BoolFn {
    type Err = BoolFnError;

    /// Accepts a raw bit string (`"00010111"`) or `0x` hex for `n >= 2`, where the
    /// hex digits spell the bit string four bits at a time.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || BoolFnError::Parse(s.to_string());
        let bits: Vec<bool> = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex.is_empty() {
                return Err(bad());
            }
            let mut bits = Vec::with_capacity(hex.len() * 4);
            for c in hex.chars() {
                let d = c.to_digit(16).ok_or_else(bad)?;
                bits.extend((0..4).rev().map(|k| (d >> k) & 1 == 1));
            }
            bits
        } else {
            if s.is_empty() {
                return Err(bad());
            }
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad()),
                })
                .collect::<Result<_, _>>()?
        };
        BoolFn::from_bits(&bits)
    }
}
