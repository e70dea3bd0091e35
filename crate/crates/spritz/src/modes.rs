//! The standard Spritz constructions over a 256-entry state.
//!
//! Encryption is byte-wise **addition** of keystream to plaintext mod 256
//! (and subtraction to decrypt) — not XOR. All functions reject empty keys;
//! an IV may be empty, which is still distinct from supplying no IV at all
//! because of the absorb-stop separator in between.

use crate::{SpritzError, SpritzState};

/// Initialize a standard state and absorb the key.
pub fn key_setup(key: &[u8]) -> Result<SpritzState, SpritzError> {
    if key.is_empty() {
        return Err(SpritzError::EmptyKey);
    }
    let mut st = SpritzState::standard();
    st.absorb(key)?;
    Ok(st)
}

/// A keyed keystream producer. Wraps the sponge so callers can pull bytes in
/// chunks; pulling `a` bytes then `b` bytes equals pulling `a + b` at once.
pub struct Keystream {
    state: SpritzState,
}

impl Keystream {
    pub fn new(key: &[u8]) -> Result<Keystream, SpritzError> {
        Ok(Keystream { state: key_setup(key)? })
    }

    /// Key plus IV, separated by an absorb-stop.
    pub fn with_iv(key: &[u8], iv: &[u8]) -> Result<Keystream, SpritzError> {
        let mut state = key_setup(key)?;
        state.absorb_stop();
        state.absorb(iv)?;
        Ok(Keystream { state })
    }

    /// Resume from a previously serialized state.
    pub fn from_state(state: SpritzState) -> Keystream {
        Keystream { state }
    }

    /// Hand the state back, e.g. to serialize it for later resumption.
    pub fn into_state(self) -> SpritzState {
        self.state
    }

    pub fn fill(&mut self, buf: &mut [u8]) {
        self.state.squeeze_into(buf);
    }

    /// Encrypt a chunk in place: `c = m + keystream (mod 256)`.
    pub fn encrypt_chunk(&mut self, buf: &mut [u8]) {
        self.apply_chunk(buf, Direction::Encrypt);
    }

    /// Decrypt a chunk in place: `m = c - keystream (mod 256)`.
    pub fn decrypt_chunk(&mut self, buf: &mut [u8]) {
        self.apply_chunk(buf, Direction::Decrypt);
    }

    fn apply_chunk(&mut self, buf: &mut [u8], dir: Direction) {
        // Bounded scratch: combining byte-by-byte would also work, but one
        // keystream pull per chunk keeps the shuffle check out of the loop.
        let mut stream = vec![0u8; buf.len()];
        self.state.squeeze_into(&mut stream);
        for (b, s) in buf.iter_mut().zip(stream.iter()) {
            *b = match dir {
                Direction::Encrypt => b.wrapping_add(*s),
                Direction::Decrypt => b.wrapping_sub(*s),
            };
        }
    }
}

/// Encrypt: `C[i] = M[i] + KS[i] (mod 256)`.
pub fn encrypt(key: &[u8], msg: &[u8]) -> Result<Vec<u8>, SpritzError> {
    let mut ks = Keystream::new(key)?;
    Ok(apply(&mut ks, msg, Direction::Encrypt))
}

/// Decrypt: `M[i] = C[i] - KS[i] (mod 256)`.
pub fn decrypt(key: &[u8], ciphertext: &[u8]) -> Result<Vec<u8>, SpritzError> {
    let mut ks = Keystream::new(key)?;
    Ok(apply(&mut ks, ciphertext, Direction::Decrypt))
}

/// Encrypt under key and IV (absorb-stop separated).
pub fn encrypt_with_iv(key: &[u8], iv: &[u8], msg: &[u8]) -> Result<Vec<u8>, SpritzError> {
    let mut ks = Keystream::with_iv(key, iv)?;
    Ok(apply(&mut ks, msg, Direction::Encrypt))
}

/// Decrypt under key and IV (absorb-stop separated).
pub fn decrypt_with_iv(key: &[u8], iv: &[u8], ciphertext: &[u8]) -> Result<Vec<u8>, SpritzError> {
    let mut ks = Keystream::with_iv(key, iv)?;
    Ok(apply(&mut ks, ciphertext, Direction::Decrypt))
}

#[derive(Clone, Copy)]
enum Direction {
    Encrypt,
    Decrypt,
}

fn apply(ks: &mut Keystream, data: &[u8], dir: Direction) -> Vec<u8> {
    let mut out = data.to_vec();
    ks.apply_chunk(&mut out, dir);
    out
}

/// Minimal big-endian encoding of a positive length: no leading zero bytes,
/// so any `r ≤ 255` is the single byte `r`. This is the trailer absorbed by
/// [`hash`] after the stop separator.
pub fn length_encoding(r: usize) -> Vec<u8> {
    debug_assert!(r >= 1);
    let be = (r as u128).to_be_bytes();
    let first = be.iter().position(|&b| b != 0).unwrap_or(be.len() - 1);
    be[first..].to_vec()
}

/// Variable-length hash: absorb the message, a stop separator, and the
/// minimal big-endian encoding of `r`, then squeeze `r` bytes. The length
/// trailer makes `hash(m, r)` and `hash(m, r')` unrelated rather than
/// prefixes of each other.
pub fn hash(msg: &[u8], r: usize) -> Result<Vec<u8>, SpritzError> {
    if r == 0 {
        return Err(SpritzError::ZeroHashLength);
    }
    let mut st = SpritzState::standard();
    st.absorb(msg)?;
    st.absorb_stop();
    st.absorb(&length_encoding(r))?;
    Ok(st.squeeze(r))
}
