//! A slow, independent transcription of the cipher used as a test oracle.
//! Nothing here calls into the library. Blocks are `[x0, x1, x2, x3]` with
//! `x0` carrying the least significant bit of each S-box nibble.
#![allow(dead_code)]

use std::sync::OnceLock;

pub const SBOX: [[u8; 16]; 8] = [
    [3, 8, 15, 1, 10, 6, 5, 11, 14, 13, 4, 2, 7, 0, 9, 12],
    [15, 12, 2, 7, 9, 0, 5, 10, 1, 11, 14, 8, 6, 13, 3, 4],
    [8, 6, 7, 9, 3, 12, 10, 15, 13, 1, 14, 4, 0, 11, 5, 2],
    [0, 15, 11, 8, 12, 9, 6, 3, 13, 1, 2, 4, 10, 7, 5, 14],
    [1, 15, 8, 3, 12, 0, 11, 6, 2, 5, 4, 10, 9, 14, 7, 13],
    [15, 5, 2, 11, 4, 10, 9, 12, 0, 3, 14, 8, 13, 6, 7, 1],
    [7, 2, 12, 5, 8, 4, 6, 11, 14, 9, 1, 15, 13, 3, 10, 0],
    [1, 13, 15, 0, 14, 8, 2, 11, 7, 4, 12, 10, 9, 3, 5, 6],
];

// ---- GF(2^8), polynomial basis in beta, modulus X^8+X^7+X^5+X^3+1 ----

pub fn gf8_mul(a: u8, b: u8) -> u8 {
    let mut acc: u16 = 0;
    for i in 0..8 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u16) << i;
        }
    }
    for bit in (8..15).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= 0x1A9 << (bit - 8);
        }
    }
    acc as u8
}

pub fn beta_pow(k: u32) -> u8 {
    (0..k).fold(1u8, |acc, _| gf8_mul(acc, 2))
}

// ---- GF(2^32) = GF(2^8)[X]/P(X), element as [c0, c1, c2, c3] ----

pub type Ext = [u8; 4];

/// `alpha^4 = p3 alpha^3 + p2 alpha^2 + p1 alpha + p0`.
pub fn p_low() -> Ext {
    [beta_pow(239), beta_pow(48), beta_pow(245), beta_pow(23)]
}

pub fn ext_mul(a: Ext, b: Ext) -> Ext {
    let mut prod = [0u8; 7];
    for i in 0..4 {
        for j in 0..4 {
            prod[i + j] ^= gf8_mul(a[i], b[j]);
        }
    }
    let p = p_low();
    for d in (4..7).rev() {
        let c = prod[d];
        prod[d] = 0;
        for k in 0..4 {
            prod[d - 4 + k] ^= gf8_mul(c, p[k]);
        }
    }
    [prod[0], prod[1], prod[2], prod[3]]
}

pub fn ext_pow(a: Ext, mut e: u64) -> Ext {
    let (mut base, mut acc) = (a, [1, 0, 0, 0]);
    while e > 0 {
        if e & 1 == 1 {
            acc = ext_mul(acc, base);
        }
        base = ext_mul(base, base);
        e >>= 1;
    }
    acc
}

pub const ALPHA: Ext = [0, 1, 0, 0];

pub fn alpha_inv() -> Ext {
    static INV: OnceLock<Ext> = OnceLock::new();
    *INV.get_or_init(|| ext_pow(ALPHA, (1u64 << 32) - 2))
}

pub fn word_to_ext(z: u32) -> Ext {
    z.to_le_bytes()
}

pub fn ext_to_word(e: Ext) -> u32 {
    u32::from_le_bytes(e)
}

pub fn mul_alpha(z: u32) -> u32 {
    ext_to_word(ext_mul(word_to_ext(z), ALPHA))
}

pub fn div_alpha(z: u32) -> u32 {
    ext_to_word(ext_mul(word_to_ext(z), alpha_inv()))
}

// ---- SERPENT ----

pub fn sbox(index: usize, x: [u32; 4]) -> [u32; 4] {
    let mut y = [0u32; 4];
    for bit in 0..32 {
        let mut nib = 0u8;
        for (k, w) in x.iter().enumerate() {
            nib |= (((w >> bit) & 1) as u8) << k;
        }
        let out = SBOX[index][nib as usize];
        for (k, w) in y.iter_mut().enumerate() {
            *w |= (((out >> k) & 1) as u32) << bit;
        }
    }
    y
}

pub fn lt(x: [u32; 4]) -> [u32; 4] {
    let [mut x0, mut x1, mut x2, mut x3] = x;
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
    [x0, x1, x2, x3]
}

pub fn xor(a: [u32; 4], b: [u32; 4]) -> [u32; 4] {
    [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]]
}

pub fn words_le(b: &[u8]) -> [u32; 4] {
    std::array::from_fn(|i| u32::from_le_bytes(b[4 * i..4 * i + 4].try_into().unwrap()))
}

pub fn bytes_le(x: [u32; 4]) -> [u8; 16] {
    let mut out = [0u8; 16];
    for i in 0..4 {
        out[4 * i..4 * i + 4].copy_from_slice(&x[i].to_le_bytes());
    }
    out
}

/// `n` round keys (at most 33) for a key of at most 32 bytes.
pub fn key_schedule(key: &[u8], n: usize) -> Vec<[u32; 4]> {
    assert!(key.len() <= 32 && n <= 33);
    let mut padded = key.to_vec();
    if padded.len() < 32 {
        padded.push(1);
    }
    padded.resize(32, 0);
    let mut w: Vec<u32> = padded
        .chunks(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    for i in 0..4 * n {
        let v = w[i] ^ w[i + 3] ^ w[i + 5] ^ w[i + 7] ^ 0x9E37_79B9 ^ i as u32;
        w.push(v.rotate_left(11));
    }
    (0..n)
        .map(|i| {
            let pre = [w[8 + 4 * i], w[9 + 4 * i], w[10 + 4 * i], w[11 + 4 * i]];
            sbox((3 + 32 - i) % 8, pre)
        })
        .collect()
}

pub fn serpent32_encrypt(key: &[u8], block: &[u8; 16]) -> [u8; 16] {
    let k = key_schedule(key, 33);
    let mut x = words_le(block);
    for (r, kr) in k.iter().take(32).enumerate() {
        x = sbox(r % 8, xor(x, *kr));
        x = if r < 31 { lt(x) } else { xor(x, k[32]) };
    }
    bytes_le(x)
}

/// Serpent24 states after rounds 12, 18 and 24.
pub fn serpent24_taps(key: &[u8], block: [u32; 4]) -> [[u32; 4]; 3] {
    let k = key_schedule(key, 25);
    let mut x = block;
    let mut taps = [[0u32; 4]; 3];
    for (r, kr) in k.iter().take(24).enumerate() {
        x = lt(sbox(r % 8, xor(x, *kr)));
        match r {
            11 => taps[0] = x,
            17 => taps[1] = x,
            _ => {}
        }
    }
    taps[2] = xor(x, k[24]);
    taps
}

// ---- Keystream ----

pub struct Naive {
    pub s: Vec<u32>,
    pub r1: u32,
    pub r2: u32,
}

impl Naive {
    pub fn new(key: &[u8], iv: &[u8; 16]) -> Naive {
        let [y12, y18, y24] = serpent24_taps(key, words_le(iv));
        Naive {
            s: vec![
                y24[3], y24[2], y24[1], y24[0], y18[1], y18[3], y12[3], y12[2], y12[1], y12[0],
            ],
            r1: y18[0],
            r2: y18[2],
        }
    }

    fn step(&mut self) -> (u32, u32) {
        let chosen = if self.r1 & 1 == 1 { self.s[1] ^ self.s[8] } else { self.s[1] };
        let r1 = self.r2.wrapping_add(chosen);
        let r2 = self.r1.wrapping_mul(0x5465_5307).rotate_left(7);
        self.r1 = r1;
        self.r2 = r2;
        let f = self.s[9].wrapping_add(r1) ^ r2;
        let fresh = self.s[9] ^ div_alpha(self.s[3]) ^ mul_alpha(self.s[0]);
        let dropped = self.s.remove(0);
        self.s.push(fresh);
        (f, dropped)
    }

    pub fn keystream(&mut self, n: usize) -> Vec<u8> {
        let mut out = Vec::new();
        while out.len() < n {
            let mut f = [0u32; 4];
            let mut d = [0u32; 4];
            for i in 0..4 {
                (f[i], d[i]) = self.step();
            }
            out.extend_from_slice(&bytes_le(xor(sbox(2, f), d)));
        }
        out.truncate(n);
        out
    }
}

pub fn naive_keystream(key: &[u8], iv: &[u8; 16], n: usize) -> Vec<u8> {
    Naive::new(key, iv).keystream(n)
}

// ---- GF(2) linear algebra on 128-bit rows ----

pub fn block_to_u128(x: [u32; 4]) -> u128 {
    x.iter().enumerate().fold(0u128, |acc, (i, &w)| acc | (w as u128) << (32 * i))
}

pub fn u128_to_block(v: u128) -> [u32; 4] {
    std::array::from_fn(|i| (v >> (32 * i)) as u32)
}

pub fn rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let Some(p) = (rank..rows.len()).find(|&r| (rows[r] >> bit) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && (*row >> bit) & 1 == 1 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Columns of the LT matrix: image of each unit vector.
pub fn lt_columns() -> Vec<u128> {
    (0..128).map(|i| block_to_u128(lt(u128_to_block(1u128 << i)))).collect()
}

pub fn apply_columns(cols: &[u128], x: u128) -> u128 {
    (0..128).filter(|&i| (x >> i) & 1 == 1).fold(0, |acc, i| acc ^ cols[i])
}
