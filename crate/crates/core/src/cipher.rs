//! User-facing cipher: key setup, IV setup, keystream extraction and XOR
//! processing.

use crate::gf::AlphaTables;
use crate::keystream::{init_from_taps, CoreState};
use crate::serpent::{serpent24_encrypt_taps, KeySchedule, Quartet, SerpentTaps};
use crate::unrolled::{Engine, BLOCK_BYTES};
use crate::Error;

pub const MIN_KEY_LEN: usize = 16;
pub const MAX_KEY_LEN: usize = 32;
pub const IV_LEN: usize = 16;

/// A processed secret key. Independent of any IV; cheap to share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherKey {
    schedule: KeySchedule,
    key_bits: usize,
}

impl CipherKey {
    /// Runs the key schedule. Accepts 16 to 32 bytes.
    pub fn new(key: &[u8]) -> Result<CipherKey, Error> {
        if !(MIN_KEY_LEN..=MAX_KEY_LEN).contains(&key.len()) {
            return Err(Error::InvalidKey { len: key.len() });
        }
        Ok(CipherKey {
            schedule: KeySchedule::expand_unchecked(key),
            key_bits: key.len() * 8,
        })
    }

    /// Keys shorter than 128 bits are outside the supported range but still
    /// have a well-defined SERPENT schedule; published reference vectors use one.
    #[cfg(test)]
    pub(crate) fn new_short_for_tests(key: &[u8]) -> CipherKey {
        CipherKey {
            schedule: KeySchedule::expand_unchecked(key),
            key_bits: key.len() * 8,
        }
    }

    pub fn schedule(&self) -> &KeySchedule {
        &self.schedule
    }

    pub fn key_bits(&self) -> usize {
        self.key_bits
    }
}

/// Same as [`CipherKey::new`].
pub fn key_setup(key: &[u8]) -> Result<CipherKey, Error> {
    CipherKey::new(key)
}

fn parse_iv(iv: &[u8]) -> Result<&[u8; IV_LEN], Error> {
    iv.try_into().map_err(|_| Error::InvalidIv { len: iv.len() })
}

/// Serpent24 taps for an IV: one 24-round encryption of the IV block.
pub fn iv_taps(key: &CipherKey, iv: &[u8]) -> Result<SerpentTaps, Error> {
    let iv = parse_iv(iv)?;
    Ok(serpent24_encrypt_taps(&key.schedule, Quartet::from_le_bytes(iv)))
}

/// Generator state right after IV injection (time zero).
pub fn initial_state(key: &CipherKey, iv: &[u8]) -> Result<CoreState, Error> {
    Ok(init_from_taps(&iv_taps(key, iv)?))
}

/// A keyed, IV-initialized cipher instance.
///
/// Keystream is generated 80 bytes at a time; bytes not yet consumed are held
/// back for the next call, so any split of a request yields the same stream.
#[derive(Clone)]
pub struct Sosemanuk {
    engine: Engine,
    tables: &'static AlphaTables,
    block: [u8; BLOCK_BYTES],
    /// Read offset into `block`; `BLOCK_BYTES` means nothing is pending.
    offset: usize,
    position: u64,
}

impl std::fmt::Debug for Sosemanuk {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Sosemanuk")
            .field("position", &self.position)
            .finish_non_exhaustive()
    }
}

impl Sosemanuk {
    /// IV setup. The IV must be exactly 16 bytes.
    pub fn new(key: &CipherKey, iv: &[u8]) -> Result<Sosemanuk, Error> {
        let state = initial_state(key, iv)?;
        Ok(Sosemanuk {
            engine: Engine::from_state(&state),
            tables: AlphaTables::get(),
            block: [0; BLOCK_BYTES],
            offset: BLOCK_BYTES,
            position: 0,
        })
    }

    /// Convenience: key setup and IV setup in one call.
    pub fn with_key_iv(key: &[u8], iv: &[u8]) -> Result<Sosemanuk, Error> {
        Sosemanuk::new(&CipherKey::new(key)?, iv)
    }

    /// Bytes of keystream handed out so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Bytes generated but not yet handed out.
    pub fn pending(&self) -> usize {
        BLOCK_BYTES - self.offset
    }

    /// Writes the next `out.len()` keystream bytes into `out`.
    pub fn fill(&mut self, out: &mut [u8]) {
        self.run(out, |dst, ks| dst.copy_from_slice(ks));
    }

    /// XORs the next `data.len()` keystream bytes into `data`.
    pub fn apply_keystream(&mut self, data: &mut [u8]) {
        self.run(data, |dst, ks| {
            for (d, k) in dst.iter_mut().zip(ks) {
                *d ^= k;
            }
        });
    }

    pub fn keystream(&mut self, n: usize) -> Vec<u8> {
        let mut out = vec![0u8; n];
        self.fill(&mut out);
        out
    }

    /// Encrypts or decrypts; the two are the same operation.
    pub fn process(&mut self, data: &[u8]) -> Vec<u8> {
        let mut out = data.to_vec();
        self.apply_keystream(&mut out);
        out
    }

    #[inline]
    fn run(&mut self, mut buf: &mut [u8], mut op: impl FnMut(&mut [u8], &[u8])) {
        self.position += buf.len() as u64;
        if self.offset < BLOCK_BYTES {
            let take = buf.len().min(BLOCK_BYTES - self.offset);
            let (head, rest) = buf.split_at_mut(take);
            op(head, &self.block[self.offset..self.offset + take]);
            self.offset += take;
            buf = rest;
        }
        let mut chunks = buf.chunks_exact_mut(BLOCK_BYTES);
        for chunk in &mut chunks {
            let mut ks = [0u8; BLOCK_BYTES];
            self.engine.block(self.tables, &mut ks);
            op(chunk, &ks);
        }
        let tail = chunks.into_remainder();
        if !tail.is_empty() {
            self.engine.block(self.tables, &mut self.block);
            op(tail, &self.block[..tail.len()]);
            self.offset = tail.len();
        }
    }
}

/// Same as [`Sosemanuk::new`].
pub fn iv_setup(key: &CipherKey, iv: &[u8]) -> Result<Sosemanuk, Error> {
    Sosemanuk::new(key, iv)
}
