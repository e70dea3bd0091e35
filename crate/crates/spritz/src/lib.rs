//! Spritz: a sponge-like stream cipher built around a single evolving
//! permutation of `{0, …, N-1}` (N = 256 in every standard configuration).
//!
//! The crate exposes two layers:
//!
//! * [`SpritzState`] — the raw sponge: absorb, shuffle, squeeze, and the
//!   low-level register operations, for callers that need to compose them
//!   directly. The permutation size is a constructor parameter so small
//!   states can be exercised in tests.
//! * [`modes`] — the standard constructions on top of a 256-entry state:
//!   keyed keystream generation, encryption/decryption (byte-wise addition
//!   mod 256, not XOR), the IV variants, and the variable-length hash.
//!
//! This is a research cipher; don't reach for it when you need a vetted AEAD.

mod state;

pub mod modes;

pub use modes::{
    decrypt, decrypt_with_iv, encrypt, encrypt_with_iv, hash, key_setup, length_encoding,
    Keystream,
};
pub use state::{SpritzState, STATE_FORMAT_VERSION};

/// Errors produced by state construction, absorption, the cipher modes, and
/// state (de)serialization.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpritzError {
    /// Permutation size outside the supported `2..=256` range. Outputs are
    /// bytes, so sizes above 256 cannot be represented.
    #[error("permutation size must be in 2..=256, got {0}")]
    InvalidSize(usize),
    /// Absorption maps nibbles into the upper half of the permutation and
    /// needs `N/2 + 15` to stay in range.
    #[error("absorb requires a permutation of at least 32 entries, state has {0}")]
    AbsorbUnsupported(usize),
    #[error("nibble value must be in 0..=15, got {0}")]
    NibbleOutOfRange(u8),
    #[error("key must not be empty")]
    EmptyKey,
    #[error("hash output length must be at least 1 byte")]
    ZeroHashLength,
    /// A serialized state blob did not start with the expected magic bytes.
    #[error("not a serialized Spritz state (bad magic)")]
    BadMagic,
    #[error("unsupported state format version {0}")]
    UnsupportedVersion(u8),
    #[error("serialized state truncated: need {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    /// The blob parsed but describes an impossible state (register out of
    /// range, S not a permutation, …).
    #[error("invalid state: {0}")]
    InvalidState(&'static str),
}
