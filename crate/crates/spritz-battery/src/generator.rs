//! The generators whose output the battery examines, addressed as a corpus
//! of independent streams readable at arbitrary (stream, offset) positions.

use rand::rngs::OsRng;
use rand::RngCore;
use spritz::{key_setup, length_encoding, Keystream};

use crate::config::{BatteryConfig, GeneratorKind, KeySource};

/// Derives the key for stream `index` from a run seed, with the same
/// domain-separation discipline as the hash mode: seed and index are
/// absorbed as stop-separated strings, then the output length commits
/// the derivation before squeezing.
pub fn derive_key(seed: &[u8], index: u32, key_bytes: usize) -> Vec<u8> {
    let mut state = spritz::SpritzState::standard();
    state.absorb(seed).expect("standard state absorbs any byte string");
    state.absorb_stop();
    state.absorb(&index.to_be_bytes()).expect("standard state absorbs any byte string");
    state.absorb_stop();
    state
        .absorb(&length_encoding(key_bytes))
        .expect("standard state absorbs any byte string");
    state.squeeze(key_bytes)
}

/// A fixed family of `streams` pseudorandom streams, each `stream_bytes`
/// long, readable at any offset. Reads are pure functions of (stream,
/// offset, len), so the corpus can be shared across threads freely.
pub struct StreamCorpus {
    kind: GeneratorKind,
    /// One key per stream; empty for the zero/counter generators.
    keys: Vec<Vec<u8>>,
    streams: usize,
    stream_bytes: u64,
}

impl StreamCorpus {
    /// Builds the corpus for `config`, drawing keys once (from the seed or
    /// from OS entropy) if the generator is keyed.
    pub fn new(config: &BatteryConfig) -> StreamCorpus {
        let keys = match config.generator {
            GeneratorKind::Spritz => match &config.key_source {
                KeySource::Seeded(seed) => (0..config.streams)
                    .map(|i| derive_key(seed, i as u32, config.key_bytes))
                    .collect(),
                KeySource::OsEntropy => (0..config.streams)
                    .map(|_| {
                        let mut key = vec![0u8; config.key_bytes];
                        OsRng.fill_bytes(&mut key);
                        key
                    })
                    .collect(),
            },
            GeneratorKind::Zero | GeneratorKind::Counter => Vec::new(),
        };
        StreamCorpus {
            kind: config.generator,
            keys,
            streams: config.streams,
            stream_bytes: config.stream_bytes(),
        }
    }

    pub fn streams(&self) -> usize {
        self.streams
    }

    /// Bytes `offset .. offset + len` of stream `stream`.
    ///
    /// # Panics
    /// If the range falls outside the stream. The schedule is validated
    /// up front, so an out-of-range read is a bug, not an input error.
    pub fn read_at(&self, stream: usize, offset: u64, len: usize) -> Vec<u8> {
        assert!(stream < self.streams, "stream {stream} out of range");
        assert!(
            offset + len as u64 <= self.stream_bytes,
            "read [{offset}, {offset}+{len}) exceeds stream length {}",
            self.stream_bytes
        );
        match self.kind {
            GeneratorKind::Zero => vec![0u8; len],
            GeneratorKind::Counter => counter_bytes(offset, len),
            GeneratorKind::Spritz => {
                let state =
                    key_setup(&self.keys[stream]).expect("corpus keys are never empty");
                let mut ks = Keystream::from_state(state);
                // Skip to the offset through a bounded scratch buffer; the
                // keystream has no random access, but memory stays constant.
                let mut scratch = [0u8; 8192];
                let mut remaining = offset;
                while remaining > 0 {
                    let take = remaining.min(scratch.len() as u64) as usize;
                    ks.fill(&mut scratch[..take]);
                    remaining -= take as u64;
                }
                let mut out = vec![0u8; len];
                ks.fill(&mut out);
                out
            }
        }
    }
}

/// The counter generator: the stream is the sequence of 32-bit words
/// 0, 1, 2, ... in little-endian bytes, identical across streams.
fn counter_bytes(offset: u64, len: usize) -> Vec<u8> {
    (offset..offset + len as u64)
        .map(|q| ((q / 4) as u32).to_le_bytes()[(q % 4) as usize])
        .collect()
}
