//! The SERPENT pieces the cipher borrows: bitslice S-boxes, the linear
//! transformation, the key schedule truncated to 25 subkeys, Serpent24 with its
//! three state taps, and Serpent1.
//!
//! Blocks are quartets of words `(y3, y2, y1, y0)`; bit `j` of each word forms
//! the `j`-th 4-bit S-box input, with `y0` holding the least significant bit.

use std::fmt;

use crate::instrument;
use crate::Error;

/// The eight SERPENT S-boxes as lookup tables.
pub const SBOXES: [[u8; 16]; 8] = [
    [3, 8, 15, 1, 10, 6, 5, 11, 14, 13, 4, 2, 7, 0, 9, 12],
    [15, 12, 2, 7, 9, 0, 5, 10, 1, 11, 14, 8, 6, 13, 3, 4],
    [8, 6, 7, 9, 3, 12, 10, 15, 13, 1, 14, 4, 0, 11, 5, 2],
    [0, 15, 11, 8, 12, 9, 6, 3, 13, 1, 2, 4, 10, 7, 5, 14],
    [1, 15, 8, 3, 12, 0, 11, 6, 2, 5, 4, 10, 9, 14, 7, 13],
    [15, 5, 2, 11, 4, 10, 9, 12, 0, 3, 14, 8, 13, 6, 7, 1],
    [7, 2, 12, 5, 8, 4, 6, 11, 14, 9, 1, 15, 13, 3, 10, 0],
    [1, 13, 15, 0, 14, 8, 2, 11, 7, 4, 12, 10, 9, 3, 5, 6],
];

const PHI: u32 = 0x9E37_79B9;

/// Number of subkeys Serpent24 consumes.
pub const SUBKEYS: usize = 25;

/// A 128-bit SERPENT block in bitslice form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Quartet {
    pub y3: u32,
    pub y2: u32,
    pub y1: u32,
    pub y0: u32,
}

impl fmt::Debug for Quartet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:08x}, {:08x}, {:08x}, {:08x})",
            self.y3, self.y2, self.y1, self.y0
        )
    }
}

impl std::ops::BitXor for Quartet {
    type Output = Quartet;
    fn bitxor(self, rhs: Quartet) -> Quartet {
        Quartet {
            y3: self.y3 ^ rhs.y3,
            y2: self.y2 ^ rhs.y2,
            y1: self.y1 ^ rhs.y1,
            y0: self.y0 ^ rhs.y0,
        }
    }
}

impl Quartet {
    pub const fn new(y3: u32, y2: u32, y1: u32, y0: u32) -> Quartet {
        Quartet { y3, y2, y1, y0 }
    }

    /// Words in `[y0, y1, y2, y3]` order.
    pub fn to_words(self) -> [u32; 4] {
        [self.y0, self.y1, self.y2, self.y3]
    }

    pub fn from_words(w: [u32; 4]) -> Quartet {
        Quartet::new(w[3], w[2], w[1], w[0])
    }

    /// SERPENT byte convention: `y0` first, each word little-endian.
    pub fn from_le_bytes(b: &[u8; 16]) -> Quartet {
        let w = |i: usize| u32::from_le_bytes([b[4 * i], b[4 * i + 1], b[4 * i + 2], b[4 * i + 3]]);
        Quartet::new(w(3), w(2), w(1), w(0))
    }

    pub fn to_le_bytes(self) -> [u8; 16] {
        let mut out = [0u8; 16];
        for (chunk, w) in out.chunks_exact_mut(4).zip(self.to_words()) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        out
    }
}

/// One 128-bit round key.
pub type Subkey = Quartet;

/// The first 25 SERPENT round keys.
#[derive(Clone, PartialEq, Eq)]
pub struct KeySchedule {
    subkeys: [Subkey; SUBKEYS],
    padded_key: [u8; 32],
}

impl fmt::Debug for KeySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KeySchedule").finish_non_exhaustive()
    }
}

impl KeySchedule {
    pub fn subkeys(&self) -> &[Subkey; SUBKEYS] {
        &self.subkeys
    }

    /// The key after SERPENT padding to 256 bits, as bytes.
    pub fn padded_key(&self) -> &[u8; 32] {
        &self.padded_key
    }

    /// Runs the schedule for an arbitrary whole-byte key of at most 32 bytes.
    /// The public entry point enforces the 128-bit floor on top of this.
    pub(crate) fn expand_unchecked(key: &[u8]) -> KeySchedule {
        debug_assert!(key.len() <= 32);
        instrument::count_key_schedule();
        let mut padded_key = [0u8; 32];
        padded_key[..key.len()].copy_from_slice(key);
        if key.len() < 32 {
            padded_key[key.len()] = 0x01;
        }
        let subkeys = round_keys::<SUBKEYS>(&padded_key);
        KeySchedule {
            subkeys,
            padded_key,
        }
    }
}

/// Prekey recurrence plus S-box derivation for the first `N` round keys
/// (`N <= 33`).
pub(crate) fn round_keys<const N: usize>(padded_key: &[u8; 32]) -> [Subkey; N] {
    let mut w = [0u32; 8 + 4 * 33];
    for (i, chunk) in padded_key.chunks_exact(4).enumerate() {
        w[i] = u32::from_le_bytes(chunk.try_into().unwrap());
    }
    for i in 0..4 * N {
        let j = i + 8;
        w[j] = (w[j - 8] ^ w[j - 5] ^ w[j - 3] ^ w[j - 1] ^ PHI ^ i as u32).rotate_left(11);
    }
    let mut out = [Quartet::default(); N];
    for (i, k) in out.iter_mut().enumerate() {
        let base = 8 + 4 * i;
        let pre = Quartet::new(w[base + 3], w[base + 2], w[base + 1], w[base]);
        *k = sbox(((35 - i) % 8) as u8, pre);
    }
    out
}

/// Builds the 25-subkey schedule. `key_bits` must equal `8 * key.len()`.
pub fn serpent_key_schedule(key: &[u8], key_bits: usize) -> Result<KeySchedule, Error> {
    if !(128..=256).contains(&key_bits) || !key_bits.is_multiple_of(8) || key.len() * 8 != key_bits {
        return Err(Error::InvalidKey { len: key.len() });
    }
    Ok(KeySchedule::expand_unchecked(key))
}

/// Applies S-box `index` to all 32 nibble slices of `q`.
pub fn sbox_bitslice(index: usize, q: Quartet) -> Result<Quartet, Error> {
    if index > 7 {
        return Err(Error::Domain(format!("S-box index {index} outside 0..=7")));
    }
    Ok(sbox(index as u8, q))
}

#[inline(always)]
pub(crate) fn sbox(index: u8, q: Quartet) -> Quartet {
    match index & 7 {
        0 => s0(q),
        1 => s1(q),
        2 => s2(q),
        3 => s3(q),
        4 => s4(q),
        5 => s5(q),
        6 => s6(q),
        _ => s7(q),
    }
}

// Gate sequences over registers r0..r4 with r0 = y0. Each returns the output
// registers in (y3, y2, y1, y0) order.

#[inline(always)]
fn s0(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    r3 ^= r0;
    let mut r4 = r1;
    r1 &= r3;
    r4 ^= r2;
    r1 ^= r0;
    r0 |= r3;
    r0 ^= r4;
    r4 ^= r3;
    r3 ^= r2;
    r2 |= r1;
    r2 ^= r4;
    r4 = !r4;
    r4 |= r1;
    r1 ^= r3;
    r1 ^= r4;
    r3 |= r0;
    r1 ^= r3;
    r4 ^= r3;
    Quartet::new(r0, r2, r4, r1)
}

#[inline(always)]
fn s1(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    r0 = !r0;
    r2 = !r2;
    let mut r4 = r0;
    r0 &= r1;
    r2 ^= r0;
    r0 |= r3;
    r3 ^= r2;
    r1 ^= r0;
    r0 ^= r4;
    r4 |= r1;
    r1 ^= r3;
    r2 |= r0;
    r2 &= r4;
    r0 ^= r1;
    r1 &= r2;
    r1 ^= r0;
    r0 &= r2;
    r0 ^= r4;
    Quartet::new(r1, r3, r0, r2)
}

#[inline(always)]
fn s2(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    let mut r4 = r0;
    r0 &= r2;
    r0 ^= r3;
    r2 ^= r1;
    r2 ^= r0;
    r3 |= r4;
    r3 ^= r1;
    r4 ^= r2;
    r1 = r3;
    r3 |= r4;
    r3 ^= r0;
    r0 &= r1;
    r4 ^= r0;
    r1 ^= r3;
    r1 ^= r4;
    r4 = !r4;
    Quartet::new(r4, r1, r3, r2)
}

#[inline(always)]
fn s3(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    let mut r4 = r0;
    r0 |= r3;
    r3 ^= r1;
    r1 &= r4;
    r4 ^= r2;
    r2 ^= r3;
    r3 &= r0;
    r4 |= r1;
    r3 ^= r4;
    r0 ^= r1;
    r4 &= r0;
    r1 ^= r3;
    r4 ^= r2;
    r1 |= r0;
    r1 ^= r2;
    r0 ^= r3;
    r2 = r1;
    r1 |= r3;
    r1 ^= r0;
    Quartet::new(r4, r3, r2, r1)
}

#[inline(always)]
fn s4(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    r1 ^= r3;
    r3 = !r3;
    r2 ^= r3;
    r3 ^= r0;
    let mut r4 = r1;
    r1 &= r3;
    r1 ^= r2;
    r4 ^= r3;
    r0 ^= r4;
    r2 &= r4;
    r2 ^= r0;
    r0 &= r1;
    r3 ^= r0;
    r4 |= r1;
    r4 ^= r0;
    r0 |= r3;
    r0 ^= r2;
    r2 &= r3;
    r0 = !r0;
    r4 ^= r2;
    Quartet::new(r3, r0, r4, r1)
}

#[inline(always)]
fn s5(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    r0 ^= r1;
    r1 ^= r3;
    r3 = !r3;
    let mut r4 = r1;
    r1 &= r0;
    r2 ^= r3;
    r1 ^= r2;
    r2 |= r4;
    r4 ^= r3;
    r3 &= r1;
    r3 ^= r0;
    r4 ^= r1;
    r4 ^= r2;
    r2 ^= r0;
    r0 &= r3;
    r2 = !r2;
    r0 ^= r4;
    r4 |= r3;
    r2 ^= r4;
    Quartet::new(r2, r0, r3, r1)
}

#[inline(always)]
fn s6(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    r2 = !r2;
    let mut r4 = r3;
    r3 &= r0;
    r0 ^= r4;
    r3 ^= r2;
    r2 |= r4;
    r1 ^= r3;
    r2 ^= r0;
    r0 |= r1;
    r2 ^= r1;
    r4 ^= r0;
    r0 |= r3;
    r0 ^= r2;
    r4 ^= r3;
    r4 ^= r0;
    r3 = !r3;
    r2 &= r4;
    r2 ^= r3;
    Quartet::new(r2, r4, r1, r0)
}

#[inline(always)]
fn s7(q: Quartet) -> Quartet {
    let (mut r0, mut r1, mut r2, mut r3) = (q.y0, q.y1, q.y2, q.y3);
    let mut r4 = r1;
    r1 |= r2;
    r1 ^= r3;
    r4 ^= r2;
    r2 ^= r1;
    r3 |= r4;
    r3 &= r0;
    r4 ^= r2;
    r3 ^= r1;
    r1 |= r4;
    r1 ^= r0;
    r0 |= r4;
    r0 ^= r2;
    r1 ^= r4;
    r2 ^= r1;
    r1 &= r0;
    r1 ^= r4;
    r2 = !r2;
    r2 |= r0;
    r4 ^= r2;
    Quartet::new(r0, r1, r3, r4)
}

/// The SERPENT linear transformation.
///
/// The two non-rotating steps use logical shifts (`x << 3`, `x << 7`), as in
/// the SERPENT definition and its reference code.
#[inline(always)]
pub fn linear_transform(q: Quartet) -> Quartet {
    let (mut x0, mut x1, mut x2, mut x3) = (q.y0, q.y1, q.y2, q.y3);
    x0 = x0.rotate_left(13);
    x2 = x2.rotate_left(3);
    x1 ^= x0 ^ x2;
    x3 ^= x2 ^ (x0 << 3);
    x1 = x1.rotate_left(1);
    x3 = x3.rotate_left(7);
    x0 ^= x1 ^ x3;
    x2 ^= x3 ^ (x1 << 7);
    x0 = x0.rotate_left(5);
    x2 = x2.rotate_left(22);
    Quartet::new(x3, x2, x1, x0)
}

/// Serpent24 intermediate states used to seed the keystream generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SerpentTaps {
    /// After the linear transformation of round 12.
    pub y12: Quartet,
    /// After the linear transformation of round 18.
    pub y18: Quartet,
    /// After the final subkey addition of round 24.
    pub y24: Quartet,
}

/// Encrypts `block` with 24 SERPENT rounds and returns the three taps.
pub fn serpent24_encrypt_taps(ks: &KeySchedule, block: Quartet) -> SerpentTaps {
    instrument::count_serpent24();
    let k = ks.subkeys();
    let mut x = block;
    // Round i uses S-box i mod 8.
    macro_rules! rounds {
        ($($i:literal => $s:ident),*) => { $( x = linear_transform($s(x ^ k[$i])); )* };
    }
    rounds!(0 => s0, 1 => s1, 2 => s2, 3 => s3, 4 => s4, 5 => s5, 6 => s6, 7 => s7,
            8 => s0, 9 => s1, 10 => s2, 11 => s3);
    let y12 = x;
    rounds!(12 => s4, 13 => s5, 14 => s6, 15 => s7, 16 => s0, 17 => s1);
    let y18 = x;
    rounds!(18 => s2, 19 => s3, 20 => s4, 21 => s5, 22 => s6, 23 => s7);
    SerpentTaps {
        y12,
        y18,
        y24: x ^ k[SUBKEYS - 1],
    }
}

/// The output transformation: S-box 2 in bitslice mode.
#[inline(always)]
pub fn serpent1(q: Quartet) -> Quartet {
    s2(q)
}
