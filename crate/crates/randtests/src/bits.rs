//! Views over raw sample bytes: a bit sequence (most-significant bit of each
//! byte first) and a 32-bit little-endian word sequence.

/// A borrowed byte buffer exposed as an ordered sequence of bits.
///
/// Bit `i` is bit `7 - (i % 8)` of byte `i / 8`: the first bit of the stream
/// is the most significant bit of the first byte.
#[derive(Debug, Clone, Copy)]
pub struct BitStream<'a> {
    bytes: &'a [u8],
    bit_len: usize,
}

impl<'a> BitStream<'a> {
    /// Wraps `bytes`, using every bit (`8 * bytes.len()`).
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, bit_len: bytes.len() * 8 }
    }

    /// Wraps `bytes` but only exposes the first `bit_len` bits.
    ///
    /// # Panics
    /// If `bit_len` exceeds the number of bits available.
    pub fn with_bit_len(bytes: &'a [u8], bit_len: usize) -> Self {
        assert!(
            bit_len <= bytes.len() * 8,
            "bit_len {} exceeds buffer capacity {}",
            bit_len,
            bytes.len() * 8
        );
        Self { bytes, bit_len }
    }

    /// Number of bits in the stream.
    pub fn len(&self) -> usize {
        self.bit_len
    }

    pub fn is_empty(&self) -> bool {
        self.bit_len == 0
    }

    /// Bit `i` as 0 or 1.
    ///
    /// # Panics
    /// If `i >= len()`.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i < self.bit_len, "bit index {i} out of range ({})", self.bit_len);
        (self.bytes[i >> 3] >> (7 - (i & 7))) & 1
    }

    /// Iterates the bits in order.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.bit_len).map(move |i| self.bit(i))
    }

    /// Total number of one bits.
    pub fn count_ones(&self) -> u64 {
        let full_bytes = self.bit_len / 8;
        let mut ones: u64 = self.bytes[..full_bytes].iter().map(|b| b.count_ones() as u64).sum();
        let rem = self.bit_len % 8;
        if rem > 0 {
            // Keep only the top `rem` bits of the trailing partial byte.
            let mask = 0xffu8 << (8 - rem);
            ones += (self.bytes[full_bytes] & mask).count_ones() as u64;
        }
        ones
    }
}

/// A borrowed byte buffer exposed as 32-bit little-endian words.
///
/// Trailing bytes that do not fill a whole word are ignored.
#[derive(Debug, Clone, Copy)]
pub struct WordStream<'a> {
    bytes: &'a [u8],
}

impl<'a> WordStream<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes }
    }

    /// Number of complete 32-bit words.
    pub fn len(&self) -> usize {
        self.bytes.len() / 4
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Word `i`, little-endian.
    ///
    /// # Panics
    /// If `i >= len()`.
    #[inline]
    pub fn word(&self, i: usize) -> u32 {
        let at = i * 4;
        u32::from_le_bytes(self.bytes[at..at + 4].try_into().unwrap())
    }

    /// Iterates the words in order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len()).map(move |i| self.word(i))
    }
}
