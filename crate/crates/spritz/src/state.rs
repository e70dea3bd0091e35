use crate::SpritzError;

/// Version byte written at the front of serialized states.
pub const STATE_FORMAT_VERSION: u8 = 1;

const STATE_MAGIC: [u8; 4] = *b"SPZS";
const HEADER_LEN: usize = 4 + 1 + 4 + 6 * 4; // magic, version, n, six registers

/// The Spritz sponge state: six registers and a permutation `S` of
/// `{0, …, N-1}`.
///
/// All index arithmetic is reduced mod N at every addition, so the same code
/// path serves every permutation size. `w` is kept coprime with N (that is
/// what makes `update` cycle `i` through all of S), `a` counts absorbed
/// nibbles since the last shuffle, and `z` is the last output byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpritzState {
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    z: usize,
    a: usize,
    w: usize,
    s: Vec<u8>,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl SpritzState {
    /// The standard state: N = 256.
    pub fn standard() -> SpritzState {
        SpritzState::new(256).expect("256 is a supported size")
    }

    /// Fresh state of permutation size `n`: identity permutation, all
    /// registers zero except `w = 1`.
    pub fn new(n: usize) -> Result<SpritzState, SpritzError> {
        if !(2..=256).contains(&n) {
            return Err(SpritzError::InvalidSize(n));
        }
        Ok(SpritzState {
            n,
            i: 0,
            j: 0,
            k: 0,
            z: 0,
            a: 0,
            w: 1,
            s: (0..n).map(|v| v as u8).collect(),
        })
    }

    /// Rebuild a state from raw parts, enforcing every structural invariant:
    /// registers in range, `a ≤ ⌊N/2⌋`, `gcd(w, N) = 1`, and `s` a
    /// permutation of `0..n`.
    pub fn from_parts(
        n: usize,
        regs: (usize, usize, usize, usize, usize, usize),
        s: Vec<u8>,
    ) -> Result<SpritzState, SpritzError> {
        if !(2..=256).contains(&n) {
            return Err(SpritzError::InvalidSize(n));
        }
        let (i, j, k, z, a, w) = regs;
        if i >= n || j >= n || k >= n || z >= n || w >= n {
            return Err(SpritzError::InvalidState("register out of range"));
        }
        if a > n / 2 {
            return Err(SpritzError::InvalidState("nibble counter exceeds N/2"));
        }
        if gcd(w, n) != 1 {
            return Err(SpritzError::InvalidState("w shares a factor with N"));
        }
        if s.len() != n {
            return Err(SpritzError::InvalidState("permutation length != N"));
        }
        let mut seen = [false; 256];
        for &v in &s {
            if (v as usize) >= n || seen[v as usize] {
                return Err(SpritzError::InvalidState("S is not a permutation of 0..N"));
            }
            seen[v as usize] = true;
        }
        Ok(SpritzState { n, i, j, k, z, a, w, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Registers in declaration order: `(i, j, k, z, a, w)`.
    pub fn registers(&self) -> (usize, usize, usize, usize, usize, usize) {
        (self.i, self.j, self.k, self.z, self.a, self.w)
    }

    pub fn permutation(&self) -> &[u8] {
        &self.s
    }

    /// Sum reduced mod N. Callers guarantee both operands are already < N,
    /// so a conditional subtract is enough — no division anywhere on the
    /// hot path.
    #[inline(always)]
    fn add(&self, a: usize, b: usize) -> usize {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline(always)]
    fn at(&self, idx: usize) -> usize {
        self.s[idx] as usize
    }

    /// One step of the register walk: advance `i` by `w`, stir `j` and `k`
    /// through S, swap `S[i]` and `S[j]`.
    #[inline]
    pub fn update(&mut self) {
        self.i = self.add(self.i, self.w);
        let t = self.add(self.j, self.at(self.i));
        self.j = self.add(self.k, self.at(t));
        self.k = self.add(self.add(self.i, self.k), self.at(self.j));
        self.s.swap(self.i, self.j);
    }

    /// Produce one output value and remember it in `z`.
    #[inline]
    pub fn output(&mut self) -> u8 {
        let t1 = self.add(self.z, self.k);
        let t2 = self.add(self.i, self.at(t1));
        let t3 = self.add(self.j, self.at(t2));
        self.z = self.at(t3);
        self.z as u8
    }

    /// `r` updates, then advance `w` (mod N) until it is coprime with N
    /// again. The advance is the do/until loop alone; this reading is pinned
    /// byte-exactly by the published test vectors.
    pub fn whip(&mut self, r: usize) {
        for _ in 0..r {
            self.update();
        }
        loop {
            self.w = self.add(self.w, 1);
            if gcd(self.w, self.n) == 1 {
                break;
            }
        }
    }

    /// Deterministic partial sort: for each mirrored pair, put the smaller
    /// value in the lower half. Idempotent, and intentionally lossy — this
    /// is the one non-invertible step in the sponge.
    pub fn crush(&mut self) {
        for v in 0..self.n / 2 {
            let u = self.n - 1 - v;
            if self.s[v] > self.s[u] {
                self.s.swap(v, u);
            }
        }
    }

    /// Whip–crush–whip–crush–whip, then reset the nibble counter.
    pub fn shuffle(&mut self) {
        self.whip(2 * self.n);
        self.crush();
        self.whip(2 * self.n);
        self.crush();
        self.whip(2 * self.n);
        self.a = 0;
    }

    /// Emit one byte, shuffling first if there is unmixed absorbed input.
    pub fn drip(&mut self) -> u8 {
        if self.a > 0 {
            self.shuffle();
        }
        self.update();
        self.output()
    }

    /// Fill `out` with keystream. Equivalent to (and interchangeable with)
    /// one `drip` per byte; a single conditional shuffle happens up front.
    pub fn squeeze_into(&mut self, out: &mut [u8]) {
        if self.a > 0 {
            self.shuffle();
        }
        for slot in out.iter_mut() {
            self.update();
            *slot = self.output();
        }
    }

    /// Squeeze `r` bytes. `squeeze(a)` followed by `squeeze(b)` yields the
    /// same bytes as one `squeeze(a + b)`. `squeeze(0)` still performs the
    /// conditional shuffle.
    pub fn squeeze(&mut self, r: usize) -> Vec<u8> {
        let mut out = vec![0u8; r];
        self.squeeze_into(&mut out);
        out
    }

    /// Absorb one nibble: swap `S[a]` with the nibble's slot in the upper
    /// half, shuffling first when the lower half is full.
    pub fn absorb_nibble(&mut self, x: u8) -> Result<(), SpritzError> {
        if x > 15 {
            return Err(SpritzError::NibbleOutOfRange(x));
        }
        if self.n < 32 {
            return Err(SpritzError::AbsorbUnsupported(self.n));
        }
        if self.a == self.n / 2 {
            self.shuffle();
        }
        let hi = self.add(self.n / 2, x as usize);
        self.s.swap(self.a, hi);
        self.a += 1;
        Ok(())
    }

    /// Absorb one byte: low nibble first, then high.
    pub fn absorb_byte(&mut self, b: u8) -> Result<(), SpritzError> {
        self.absorb_nibble(b & 0x0f)?;
        self.absorb_nibble(b >> 4)
    }

    /// Absorb a byte string. Empty input is a no-op (but still requires an
    /// absorb-capable state, N ≥ 32).
    pub fn absorb(&mut self, data: &[u8]) -> Result<(), SpritzError> {
        if self.n < 32 {
            return Err(SpritzError::AbsorbUnsupported(self.n));
        }
        for &b in data {
            self.absorb_byte(b)?;
        }
        Ok(())
    }

    /// Domain separator between absorbed inputs: advances `a` exactly like a
    /// nibble would (including the conditional shuffle) without touching S.
    pub fn absorb_stop(&mut self) {
        if self.a == self.n / 2 {
            self.shuffle();
        }
        self.a += 1;
    }

    /// Serialize to the versioned byte layout:
    /// magic `"SPZS"`, version byte, then N, i, j, k, z, a, w as
    /// little-endian u32, then the N permutation bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.n);
        out.extend_from_slice(&STATE_MAGIC);
        out.push(STATE_FORMAT_VERSION);
        for v in [self.n, self.i, self.j, self.k, self.z, self.a, self.w] {
            out.extend_from_slice(&(v as u32).to_le_bytes());
        }
        out.extend_from_slice(&self.s);
        out
    }

    /// Parse a blob produced by [`to_bytes`](Self::to_bytes), validating the
    /// full set of structural invariants before accepting it.
    pub fn from_bytes(bytes: &[u8]) -> Result<SpritzState, SpritzError> {
        if bytes.len() < 5 {
            return Err(SpritzError::Truncated { expected: 5, got: bytes.len() });
        }
        if bytes[..4] != STATE_MAGIC {
            return Err(SpritzError::BadMagic);
        }
        if bytes[4] != STATE_FORMAT_VERSION {
            return Err(SpritzError::UnsupportedVersion(bytes[4]));
        }
        if bytes.len() < HEADER_LEN {
            return Err(SpritzError::Truncated { expected: HEADER_LEN, got: bytes.len() });
        }
        let mut fields = [0usize; 7];
        for (idx, field) in fields.iter_mut().enumerate() {
            let off = 5 + 4 * idx;
            let raw = u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap());
            *field = raw as usize;
        }
        let [n, i, j, k, z, a, w] = fields;
        let expected = HEADER_LEN + n;
        if bytes.len() != expected {
            return Err(SpritzError::Truncated { expected, got: bytes.len() });
        }
        SpritzState::from_parts(n, (i, j, k, z, a, w), bytes[HEADER_LEN..].to_vec())
    }
}
